import pytest

from permseq.enumeration import (
    REPRESENTATIVE_PARTNERS,
    brute_table,
    count_table,
    diagonal_limit,
    generate_avoiders,
    has_limit_sequence,
    limit_report,
    monotonicity_scan,
    row_differences,
    second_differences,
    symmetry_representative,
)
from permseq.perms import (
    Perm,
    all_perms,
    avoids,
    direct_sum,
    identity,
    inv_count,
    inverse,
    parse_basis,
    parse_perm,
    reverse_complement,
)

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
PARTITIONS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


def test_generate_avoiders_examples():
    got = generate_avoiders(parse_basis("132"), 3, 3)
    assert ["".join(map(str, q)) for q in got] == ["123", "213", "231", "312", "321"]
    assert generate_avoiders(parse_basis("1324"), 0, 0) == [Perm(())]
    # a(4,2) = 5 for {1324,1243}; the budget also admits a(4,0)=1, a(4,1)=1
    exact2 = [p for p in generate_avoiders(parse_basis("1324,1243"), 4, 2) if inv_count(p) == 2]
    assert len(exact2) == 5
    assert len(generate_avoiders(parse_basis("1324,1243"), 4, 2)) == 7


def test_generate_avoiders_guards():
    with pytest.raises(ValueError):
        generate_avoiders(parse_basis("21"), 65, 3)
    with pytest.raises(ValueError):
        generate_avoiders(parse_basis("21"), -1, 3)


def test_generate_avoiders_sorted_deterministic():
    out = generate_avoiders(parse_basis("1324,231"), 6, 15)
    assert out == sorted(out)
    assert out == generate_avoiders(parse_basis("1324,231"), 6, 15)


@pytest.mark.parametrize(
    "basis_text",
    ["132", "1324,1243", "1324,1342", "1324,321", "213,231", "1234", "1324,2413"],
)
def test_oracle_equivalence_small(basis_text):
    basis = parse_basis(basis_text)
    for n in range(0, 7):
        kmax = max(0, n * (n - 1) // 2)
        got = generate_avoiders(basis, n, kmax)
        want = sorted(
            p for p in all_perms(n) if avoids(p, basis)
        ) if n else [Perm(())]
        assert got == want


def test_count_table_values():
    t = count_table(parse_basis("1324,1342"), 8, 9)
    assert t.value(5, 3) == 8
    assert t.value(8, 9) == 134
    t2 = count_table(parse_basis("1324,321"), 11, 15)
    assert t2.value(10, 15) == 60
    assert t2.value(11, 15) == 52
    t3 = count_table(parse_basis("1234"), 10, 6)
    for n in range(1, 11):
        for k in range(0, 7):
            if n >= k + 4:
                assert t3.value(n, k) == 0


def test_count_table_row_invariants():
    t = count_table(parse_basis("1324,2341"), 9, 12)
    for n in range(1, 10):
        assert t.value(n, 0) == 1
        for k in range(0, 13):
            if k > n * (n - 1) // 2:
                assert t.value(n, k) == 0


def test_count_table_matches_brute():
    for basis_text in ("1324,4231", "132,3412", "213,2431"):
        basis = parse_basis(basis_text)
        assert count_table(basis, 6, 10).rows == brute_table(basis, 6, 10).rows


def test_catalan_cross_check():
    for q in all_perms(3):
        t = count_table([q], 8, 28)
        for n in range(1, 9):
            assert sum(t.rows[n - 1]) == CATALAN[n], q


def test_threads_match_sequential():
    basis = parse_basis("1324,1243")
    seq = count_table(basis, 9, 10)
    par = count_table(basis, 9, 10, threads=2)
    assert seq.rows == par.rows


def test_row_differences_examples():
    t = count_table(parse_basis("1324,1243"), 8, 8)
    d = row_differences(t)
    assert d[3 - 1][1] == -1
    assert all(d[n][0] == 0 for n in range(len(d)))
    t2 = count_table(parse_basis("1324,1342"), 9, 9)
    assert row_differences(t2)[8 - 1][8] == 6


def test_second_differences_formula():
    t = count_table(parse_basis("1324,2143"), 8, 8)
    b = second_differences(t)
    for n in range(1, 7):
        for k in range(0, 8):
            want = (t.value(n + 2, k + 1) - t.value(n + 1, k + 1)) - (
                t.value(n + 1, k) - t.value(n, k)
            )
            assert b[n - 1][k] == want


def test_second_differences_constant_table():
    from permseq.enumeration import CountTable

    rows = tuple(tuple([3] * 5) for _ in range(6))
    tbl = CountTable(basis=parse_basis("21"), n_max=6, k_max=4, rows=rows)
    assert all(v == 0 for row in second_differences(tbl) for v in row)


def test_tertiary_2143():
    t = count_table(parse_basis("1324,2143"), 15, 15)
    rep = diagonal_limit(second_differences(t))
    assert rep.stabilized_from_first_nonzero()[:5] == [-2, 0, 0, 0, 0]


def test_tertiary_2413():
    t = count_table(parse_basis("1324,2413"), 15, 17)
    rep = diagonal_limit(second_differences(t))
    assert rep.stabilized_from_first_nonzero()[:5] == [3, 6, 15, 30, 60]


def test_monotonicity_scan():
    t = count_table(parse_basis("1324,321"), 11, 15)
    hits = monotonicity_scan(t)
    assert (10, 15, 60, 52) in hits
    t2 = count_table(parse_basis("1324,1243"), 8, 8)
    hits2 = monotonicity_scan(t2)
    assert hits2[0] == (3, 1, 2, 1)
    t3 = count_table(parse_basis("213"), 10, 12)
    assert monotonicity_scan(t3) == []


def test_limit_report_1243():
    t = count_table(parse_basis("1324,1243"), 18, 12)
    rep = limit_report(t)
    assert all(s == "stabilized" for s in rep.status)
    assert list(rep.c) == PARTITIONS[:13]


def test_limit_report_2143():
    t = count_table(parse_basis("1324,2143"), 18, 12)
    rep = limit_report(t)
    assert rep.c[0] == 1
    assert all(rep.c[k] == 2 * PARTITIONS[k] for k in range(1, 13))


def test_limit_report_unstable_without_low_inversion_pattern():
    basis = parse_basis("321")
    assert not has_limit_sequence(basis)
    t = count_table(basis, 12, 3)
    rep = limit_report(t)
    assert rep.status[1] == "unstable-within-range"
    # av_n^1 = n-1 keeps growing
    assert [t.value(n, 1) for n in range(2, 13)] == list(range(1, 12))


def test_has_limit_sequence_criterion():
    assert has_limit_sequence(parse_basis("1324,4321"))
    assert has_limit_sequence(parse_basis("21"))
    assert not has_limit_sequence(parse_basis("321,231"))


def test_secondary_diagonal_1342():
    t = count_table(parse_basis("1324,1342"), 15, 20)
    rep = diagonal_limit(row_differences(t))
    assert rep.stabilized_from_first_nonzero()[:7] == [2, 6, 12, 24, 44, 76, 128]


def test_secondary_diagonal_1324_exists():
    t = count_table(parse_basis("1324"), 15, 16)
    rep = diagonal_limit(row_differences(t))
    got = rep.stabilized_from_first_nonzero()
    # (4 + 2x) P(x)^2: two removal families of degree n-1 and one of degree n
    assert got[:5] == [4, 10, 24, 50, 100]


def test_diagonal_limit_zero_matrix():
    rep = diagonal_limit([[0] * 6 for _ in range(6)])
    vals = rep.stabilized_from_first_nonzero()
    assert vals == []
    assert all(v == 0 for v in rep.values)


def test_prop_identity_flank_zero():
    # av_n^k(id_a + 21, 21 + id_b) = 0 for k >= 1, n >= k + a + b
    for a in range(0, 3):
        for b in range(0, 3):
            left = direct_sum(identity(a), parse_perm("21"))
            right = direct_sum(parse_perm("21"), identity(b))
            t = count_table([left, right], 12, 5)
            for k in range(1, 6):
                for n in range(max(1, k + a + b), 13):
                    assert t.value(n, k) == 0, (a, b, n, k)


def test_remark_1243_2134_zero():
    t = count_table(parse_basis("1243,2134"), 10, 5)
    for k in range(1, 6):
        for n in range(k + 4, 11):
            assert t.value(n, k) == 0


@pytest.mark.parametrize("p_text", ["132", "1324", "1342", "2413"])
def test_inv_wilf_symmetry(p_text):
    p = parse_perm(p_text)
    t = count_table([p], 8, 12)
    for image in (inverse(p), reverse_complement(p)):
        assert count_table([image], 8, 12).rows == t.rows


def test_symmetry_representative_examples():
    pair, how = symmetry_representative(parse_basis("1324,3142"))
    assert pair == parse_basis("1324,2413") and how == "inverse"
    pair, how = symmetry_representative(parse_basis("1324,4312"))
    assert pair == parse_basis("1324,3421") and how == "inverse"
    pair, how = symmetry_representative(parse_basis("1324,2431"))
    assert pair == parse_basis("1324,2431") and how == "identity"


def test_symmetry_representative_covers_s4():
    reps = set()
    for q in all_perms(4):
        if q == parse_perm("1324"):
            continue
        pair, _ = symmetry_representative([parse_perm("1324"), q])
        partner = next(x for x in pair if x != parse_perm("1324"))
        reps.add("".join(map(str, partner)))
    assert reps == set(REPRESENTATIVE_PARTNERS)


@pytest.mark.slow
def test_representative_pairs_have_distinct_limit_sequences():
    seen = {}
    for partner in REPRESENTATIVE_PARTNERS:
        t = count_table(parse_basis(f"1324,{partner}"), 21, 15)
        rep = limit_report(t)
        key = tuple(rep.c)
        assert key not in seen, (partner, seen.get(key))
        seen[key] = partner
