"""Command-line interface: counting tables, golden regression, limit
sequences, compatibility classification, generating functions, bijection
checks and the explicit injection.

Results of table computations are cached as JSON keyed on basis, bounds and
engine version; stale versions are recomputed silently. Cache writes go
through a temp file and an atomic rename.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .enumeration import (
    CountTable,
    count_table,
    diagonal_limit,
    limit_report,
    monotonicity_scan,
    row_differences,
    second_differences,
)
from .perms import format_perm, parse_basis, parse_perm
from .tableio import (
    diffs_to_csv,
    table_from_json,
    table_to_csv,
    table_to_json,
    table_to_markdown,
)

EXIT_GOLDEN_MISMATCH = 2
EXIT_BIJECTION_MISMATCH = 3
EXIT_GF_MISMATCH = 4

CACHE_ENV = "PERMSEQ_CACHE_DIR"


def _cache_path(cache_dir: Path, basis_text: str, n_max: int, k_max: int) -> Path:
    key = basis_text.replace(",", "-")
    return cache_dir / f"table_{key}_n{n_max}_k{k_max}.json"


def cached_count_table(basis_text: str, n_max: int, k_max: int,
                       cache_dir: str | None, threads: int = 1) -> CountTable:
    basis = parse_basis(basis_text)
    canonical = ",".join(sorted(format_perm(p) for p in basis))
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV)
    if cache_dir is None:
        return count_table(basis, n_max, k_max, threads=threads)
    cache = Path(cache_dir)
    cache.mkdir(parents=True, exist_ok=True)
    path = _cache_path(cache, canonical, n_max, k_max)
    if path.exists():
        try:
            payload = json.loads(path.read_text())
            if payload.get("engine_version") == __version__:
                return table_from_json(json.dumps(payload["table"]))
        except (ValueError, KeyError):
            pass  # corrupt or stale cache entry: recompute
    table = count_table(basis, n_max, k_max, threads=threads)
    payload = {
        "engine_version": __version__,
        "basis": canonical,
        "n_max": n_max,
        "k_max": k_max,
        "table": json.loads(table_to_json(table)),
    }
    fd, tmp = tempfile.mkstemp(dir=cache, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
    os.replace(tmp, path)
    return table


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_table(args) -> int:
    table = cached_count_table(args.basis, args.n, args.k, args.cache_dir, args.threads)
    if args.format == "csv":
        _emit(table_to_csv(table), args.out)
    elif args.format == "md":
        _emit(table_to_markdown(table), args.out)
    else:
        _emit(table_to_json(table), args.out)
    return 0


def cmd_diff(args) -> int:
    table = cached_count_table(args.basis, args.n, args.k, args.cache_dir, args.threads)
    diffs = row_differences(table)
    if args.format == "json":
        payload = {"basis": table.basis_text, "rows": diffs}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(diffs_to_csv(table, diffs), args.out)
    return 0


def cmd_golden(args) -> int:
    from .golden import GOLDEN_PARTNERS, check_partner

    partners = GOLDEN_PARTNERS if args.all else [args.partner]
    failures = 0
    for partner in partners:
        for result in check_partner(partner, threads=args.threads):
            if result.ok:
                print(f"PASS 1324,{partner} {result.kind}")
            else:
                failures += 1
                print(f"FAIL 1324,{partner} {result.kind}")
                for n, k, want, got in result.mismatches[:10]:
                    print(f"  cell (n={n}, k={k}): golden {want!r}, computed {got!r}")
    print(f"{len(partners) * 2 - failures}/{len(partners) * 2} tables match")
    return EXIT_GOLDEN_MISMATCH if failures else 0


def cmd_monotone(args) -> int:
    table = cached_count_table(args.basis, args.n, args.k, args.cache_dir, args.threads)
    hits = monotonicity_scan(table)
    if not hits:
        print(f"no violation up to (n={args.n}, k={args.k})")
    for n, k, a, b in hits:
        print(f"violation at n={n}, k={k}: {a} > {b}")
    _zero_row_certificate(table)
    return 0


def _zero_row_certificate(table) -> None:
    """If every positive inversion count dies out, report the observed
    vanishing threshold n >= k + c."""
    shifts = []
    for k in range(1, table.k_max + 1):
        col = [table.rows[n - 1][k] for n in range(1, table.n_max + 1)]
        if col[-1] != 0 or not any(col):
            return
        first_zero = len(col)
        while first_zero > 1 and col[first_zero - 2] == 0:
            first_zero -= 1
        if any(col[:first_zero - 1]) or first_zero == 1:
            shifts.append(first_zero - k)
    if shifts:
        c = max(shifts)
        print(f"zero-row certificate: av_n^k = 0 for 1 <= k <= {table.k_max}, "
              f"n >= k + {c} (within n <= {table.n_max})")


def cmd_limit(args) -> int:
    table = cached_count_table(args.basis, args.n, args.k, args.cache_dir, args.threads)
    report = limit_report(table, tail_window=args.tail_window)
    for k in range(report.k_max + 1):
        if report.status[k] == "stabilized":
            print(f"k={k}: c_k={report.c[k]} from n={report.m[k]}")
        else:
            print(f"k={k}: unstable within range (last value {report.c[k]})")
    if args.secondary:
        rep = diagonal_limit(row_differences(table), tail_window=args.tail_window)
        print("secondary:", " ".join(map(str, rep.stabilized_from_first_nonzero())))
    if args.tertiary:
        rep = diagonal_limit(second_differences(table), tail_window=args.tail_window)
        print("tertiary:", " ".join(map(str, rep.stabilized_from_first_nonzero())))
    return 0


def cmd_compat(args) -> int:
    from .almost_decomp import compat_search, compat_table_row
    from .enumeration import iter_avoiders_upto

    n = args.length
    alternate = args.f_priority == "alternate"
    anchor = parse_perm("1324")
    patterns = [
        p for p, _ in iter_avoiders_upto([anchor], n, n * (n - 1) // 2) if len(p) == n
    ]
    verdicts = []
    for p in patterns:
        v = compat_search(p, alternate_priority=alternate)
        entry = {"pattern": format_perm(p), "verdict": v.verdict}
        if v.witness is not None:
            entry["witness"] = {
                "pi": format_perm(v.witness[0]),
                "image": format_perm(v.witness[1]),
            }
        verdicts.append(entry)
    if args.out:
        Path(args.out).write_text(json.dumps(verdicts, indent=2) + "\n")
    compatible = [e["pattern"] for e in verdicts if e["verdict"].startswith("compatible")]
    print(f"compatible patterns of length {n}: {' '.join(sorted(compatible))}")
    row = compat_table_row(n, alternate_priority=alternate)
    print()
    print("| n | suff. incompatible | CLB | nec. incompatible "
          "| nec. compatible | CUB | suff. compatible |")
    print("|---|---|---|---|---|---|---|")
    print(
        f"| {row.n} | {row.sufficient_incompatible} | {row.witness_incompatible} "
        f"| {row.necessary_incompatible} | {row.necessary_compatible} "
        f"| {row.witness_compatible} | {row.sufficient_compatible} |"
    )
    return 0


def cmd_gf(args) -> int:
    from .series import named_gf

    series = named_gf(args.name, args.k)
    print(",".join(str(c) for c in series.coeffs))
    if not args.compare_table:
        return 0
    try:
        parse_basis(args.name)
    except ValueError:
        print(f"{args.name!r} is not a pattern basis; nothing to compare", file=sys.stderr)
        return 1
    maxlen = max(len(tok) for tok in args.name.split(","))
    n_needed = args.k + 2 + maxlen
    table = cached_count_table(args.name, n_needed, args.k, args.cache_dir, args.threads)
    report = limit_report(table)
    ok = True
    for k in range(args.k + 1):
        if report.status[k] != "stabilized" or report.c[k] != series[k]:
            ok = False
            print(f"MISMATCH at k={k}: series {series[k]}, table {report.c[k]} "
                  f"({report.status[k]})")
    print("series matches stabilized table" if ok else "comparison failed")
    return 0 if ok else EXIT_GF_MISMATCH


def cmd_bijection(args) -> int:
    from .partitions import FAMILY_TESTS, indecomposable_avoiders, lambda_map, partitions_of

    partner = args.pattern
    if partner not in FAMILY_TESTS:
        print(f"no partition family registered for {partner}", file=sys.stderr)
        return EXIT_BIJECTION_MISMATCH
    test = FAMILY_TESTS[partner]
    basis = parse_basis(f"132,{partner}")
    failures = 0
    for k in range(args.k + 1):
        left = {lambda_map(p) for p in indecomposable_avoiders(basis, k)}
        right = {lam for lam in partitions_of(k) if test(lam)}
        extra_left = left - right
        extra_right = right - left
        status = "ok" if not extra_left and not extra_right else "MISMATCH"
        print(f"k={k}: permutation side {len(left)}, partition side {len(right)} [{status}]")
        for lam in sorted(extra_left):
            print(f"  only from permutations: {lam}")
            failures += 1
        for lam in sorted(extra_right):
            print(f"  only from partitions:   {lam}")
            failures += 1
    return EXIT_BIJECTION_MISMATCH if failures else 0


def cmd_inject(args) -> int:
    from .injections import inject_1324_231_full

    basis = parse_basis(args.basis)
    if basis != parse_basis("1324,231"):
        print("only the basis 1324,231 has an explicit injection", file=sys.stderr)
        return 1
    p = parse_perm(args.perm)
    res = inject_1324_231_full(p)
    print(format_perm(res.image))
    if res.data is None:
        print(f"# branch {res.branch}")
    else:
        d = res.data
        print(f"# branch 3: ell={d.ell} m={d.m} q={d.q} r={d.r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permseq",
        description="Pattern-avoiding permutations counted by inversions: "
        "tables, limit sequences, injections and partition bijections.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, basis=True):
        if basis:
            p.add_argument("--basis", required=True,
                           help="comma-separated patterns, e.g. 1324,1342")
        p.add_argument("--cache-dir", default=None,
                       help=f"cache directory (or ${CACHE_ENV})")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--f-priority", choices=("paper", "alternate"), default="paper",
                       help="case priority of the almost-decomposable map")

    p = sub.add_parser("table", help="compute a counting table")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("csv", "md", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("diff", help="row differences of a counting table")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_diff)

    p = sub.add_parser("golden", help="regression against the embedded tables")
    common(p, basis=False)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", action="store_true")
    group.add_argument("--partner", help="companion pattern, e.g. 1342")
    p.set_defaults(fn=cmd_golden)

    p = sub.add_parser("monotone", help="scan a table for monotonicity violations")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=cmd_monotone)

    p = sub.add_parser("limit", help="limit sequence detection")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tail-window", type=int, default=3)
    p.add_argument("--secondary", action="store_true")
    p.add_argument("--tertiary", action="store_true")
    p.set_defaults(fn=cmd_limit)

    p = sub.add_parser("compat", help="compatibility classification of patterns")
    common(p, basis=False)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--out", help="write verdicts as JSON")
    p.set_defaults(fn=cmd_compat)

    p = sub.add_parser("gf", help="limit generating function coefficients")
    common(p, basis=False)
    p.add_argument("--name", required=True, help="catalogue name, e.g. 1324,1342")
    p.add_argument("--k", type=int, default=20)
    p.add_argument("--compare-table", action="store_true")
    p.set_defaults(fn=cmd_gf)

    p = sub.add_parser("bijection", help="partition-family bijection check")
    common(p, basis=False)
    p.add_argument("--pattern", required=True, help="companion of 132, e.g. 2341")
    p.add_argument("--k", type=int, default=12)
    p.set_defaults(fn=cmd_bijection)

    p = sub.add_parser("inject", help="apply the explicit injection to one permutation")
    common(p, basis=False)
    p.add_argument("--basis", default="1324,231")
    p.add_argument("--perm", required=True)
    p.set_defaults(fn=cmd_inject)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
