import json

from permseq.cli import (
    EXIT_BIJECTION_MISMATCH,
    EXIT_GOLDEN_MISMATCH,
    cached_count_table,
    main,
)
from permseq.enumeration import count_table, row_differences
from permseq.perms import parse_basis
from permseq.tableio import (
    diffs_to_csv,
    table_from_csv,
    table_from_json,
    table_to_csv,
    table_to_json,
    table_to_markdown,
)


def test_csv_roundtrip():
    t = count_table(parse_basis("1324,1342"), 8, 8)
    again = table_from_csv(table_to_csv(t), "1324,1342")
    assert again.rows == t.rows
    assert again.basis == t.basis


def test_csv_blank_cells_match_cap():
    t = count_table(parse_basis("132"), 5, 10)
    lines = table_to_csv(t).splitlines()
    row2 = lines[2].split(",")
    assert row2[0] == "2"
    assert row2[1:3] == ["1", "1"]
    assert all(c == "" for c in row2[3:])


def test_json_roundtrip():
    t = count_table(parse_basis("1324,2341"), 7, 7)
    again = table_from_json(table_to_json(t))
    assert again == t


def test_markdown_shape():
    t = count_table(parse_basis("132"), 4, 4)
    md = table_to_markdown(t)
    assert md.startswith("| n\\k | 0 | 1 | 2 | 3 | 4 |")
    assert md.count("\n") == 2 + 4


def test_diffs_csv_shape():
    t = count_table(parse_basis("1324,1243"), 6, 6)
    text = diffs_to_csv(t, row_differences(t))
    lines = text.splitlines()
    assert len(lines) == 1 + 5
    first = lines[1].split(",")
    assert first[1:3] == ["0", "1"]
    assert all(c == "" for c in first[3:])


def test_cache_reuse_and_versioning(tmp_path):
    t1 = cached_count_table("1324,1342", 7, 7, str(tmp_path))
    files = list(tmp_path.glob("table_*.json"))
    assert len(files) == 1
    stamp = files[0].read_bytes()
    t2 = cached_count_table("1324,1342", 7, 7, str(tmp_path))
    assert t2 == t1
    assert files[0].read_bytes() == stamp
    # stale engine version forces a silent recompute
    payload = json.loads(stamp)
    payload["engine_version"] = "0.0.0"
    files[0].write_text(json.dumps(payload))
    t3 = cached_count_table("1324,1342", 7, 7, str(tmp_path))
    assert t3 == t1
    assert json.loads(files[0].read_text())["engine_version"] != "0.0.0"


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("PERMSEQ_CACHE_DIR", str(tmp_path))
    cached_count_table("132", 5, 5, None)
    assert list(tmp_path.glob("table_*.json"))


def test_cmd_table_csv(capsys):
    rc = main(["table", "--basis", "1324,1243", "--n", "4", "--k", "4"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "n\\k,0,1,2,3,4"
    assert out.splitlines()[4].startswith("4,1,1,5,")


def test_cmd_diff(capsys):
    rc = main(["diff", "--basis", "1324,1243", "--n", "4", "--k", "2"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[3].split(",")[:3] == ["3", "0", "-1"]


def test_cmd_monotone(capsys):
    rc = main(["monotone", "--basis", "1324,321", "--n", "11", "--k", "15"])
    assert rc == 0
    assert "violation at n=10, k=15: 60 > 52" in capsys.readouterr().out
    rc = main(["monotone", "--basis", "213", "--n", "9", "--k", "6"])
    assert rc == 0
    assert "no violation" in capsys.readouterr().out
    rc = main(["monotone", "--basis", "1243,2134", "--n", "9", "--k", "4"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "zero-row certificate: av_n^k = 0 for 1 <= k <= 4, n >= k + 4" in out


def test_cmd_limit(capsys):
    rc = main(["limit", "--basis", "1324,4231", "--n", "16", "--k", "9"])
    assert rc == 0
    out = capsys.readouterr().out
    got = [int(line.split("c_k=")[1].split()[0]) for line in out.splitlines() if "c_k=" in line]
    assert got == [1, 2, 5, 10, 20, 34, 59, 96, 151, 230]


def test_cmd_gf_compare(capsys):
    rc = main(["gf", "--name", "1324,1342", "--k", "8", "--compare-table"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "1,2,4,8,14,24,40,64,100"
    assert "matches" in out


def test_cmd_bijection(capsys):
    rc = main(["bijection", "--pattern", "2341", "--k", "5"])
    assert rc == 0
    assert "MISMATCH" not in capsys.readouterr().out
    rc = main(["bijection", "--pattern", "9999", "--k", "3"])
    assert rc == EXIT_BIJECTION_MISMATCH


def test_cmd_inject(capsys):
    rc = main(["inject", "--perm", "12,11,10,9,8,5,3,1,2,4,7,6"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "13,12,11,7,6,5,3,1,2,4,10,8,9"
    assert "branch 3: ell=5 m=2 q=2 r=1" in out


def test_cmd_compat(tmp_path, capsys):
    out_file = tmp_path / "verdicts.json"
    rc = main(["compat", "--length", "4", "--out", str(out_file)])
    assert rc == 0
    printed = capsys.readouterr().out
    assert "1432 4231 4321" in printed
    verdicts = json.loads(out_file.read_text())
    assert len(verdicts) == 23
    by_pattern = {v["pattern"]: v for v in verdicts}
    assert by_pattern["1342"]["verdict"] == "incompatible-by-witness"
    assert "witness" in by_pattern["1342"]


def test_cmd_golden_single(capsys):
    rc = main(["golden", "--partner", "1243"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "PASS 1324,1243 counts" in out
    assert "2/2 tables match" in out


def test_cmd_golden_detects_corruption(capsys, monkeypatch):
    import permseq.golden as gold

    real = gold.load_golden

    def corrupted(partner, kind):
        table = real(partner, kind)
        cells = {n: list(row) for n, row in table.cells.items()}
        cells[5][3] += 1
        return gold.GoldenTable(partner=partner, kind=kind, cells=cells)

    monkeypatch.setattr(gold, "load_golden", corrupted)
    rc = main(["golden", "--partner", "1243"])
    assert rc == EXIT_GOLDEN_MISMATCH
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "(n=5, k=3)" in out
