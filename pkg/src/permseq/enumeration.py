"""Enumeration of pattern avoiders under an inversion budget.

The generator walks the tree whose nodes are exactly the avoiders with at
most k_max inversions: the children of a length-t avoider are obtained by
appending a new last entry of rank r (existing values >= r shift up), which
adds t+1-r inversions. Avoidance only needs to be re-checked against
occurrences using the new last position, and the whole counting table for
all lengths up to n_max falls out of a single walk.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .perms import (
    Perm,
    basis_key,
    contains_ending_at,
    inv_count,
    inverse,
    pattern_basis,
    reverse_complement,
)

MAX_LENGTH = 64
MAX_BUDGET = 200


# -- per-pattern precomputation ------------------------------------------

def _pattern_info(q: Sequence[int]):
    """Shape data steering the bad-rank scan for one forbidden pattern."""
    m = len(q)
    if m == 1:
        return (1, None, None, None, None)
    body = q[:-1]
    increasing = all(body[i] < body[i + 1] for i in range(m - 2))
    if increasing:
        # ranks below the appended role among the body = q[-1] - 1
        return (m, q[-1], None, True, q[-1] - 1)
    alpha = next(i for i in range(m - 2) if body[i] > body[i + 1])
    return (m, q[-1], tuple(q), False, alpha)


def _bad_ranks(tau, inv_pairs, infos, t):
    """Which ranks r in 1..t+1 would complete some forbidden pattern.

    Returns a diff-array accumulated into flags; rank r is bad iff the
    permutation tau + appended rank r contains a pattern occurrence ending
    at the new last position.
    """
    marks = [0] * (t + 3)
    lis_end = lis_from = None
    for m, qlast, q, increasing, extra in infos:
        if m == 1:
            marks[1] += 1
            marks[t + 2] -= 1
            continue
        if m - 1 > t:
            continue
        if increasing:
            if lis_end is None:
                lis_end, lis_from = _lis_tables(tau, t)
            _mark_increasing_body(tau, t, m, extra, lis_end, lis_from, marks)
        else:
            _mark_anchored(tau, t, q, extra, inv_pairs, marks)
    bad = [False] * (t + 2)
    acc = 0
    for r in range(1, t + 2):
        acc += marks[r]
        bad[r] = acc > 0
    return bad


def _lis_tables(tau, t):
    lis_end = [1] * t
    for i in range(t):
        vi = tau[i]
        best = 0
        for j in range(i):
            if tau[j] < vi and lis_end[j] > best:
                best = lis_end[j]
        lis_end[i] = best + 1
    lis_from = [1] * t
    for i in range(t - 1, -1, -1):
        vi = tau[i]
        best = 0
        for j in range(i + 1, t):
            if tau[j] > vi and lis_from[j] > best:
                best = lis_from[j]
        lis_from[i] = best + 1
    return lis_end, lis_from


def _mark_increasing_body(tau, t, m, s, lis_end, lis_from, marks):
    # Body occurrences are increasing (m-1)-subsequences; the appended rank
    # slots between body values v_s and v_{s+1}.
    need = m - 1
    if s == 0:
        best = 0
        for i in range(t):
            if lis_from[i] >= need and tau[i] > best:
                best = tau[i]
        if best:
            marks[1] += 1
            marks[best + 1] -= 1
    elif s == need:
        low = t + 2
        for i in range(t):
            if lis_end[i] >= need and tau[i] < low:
                low = tau[i]
        if low <= t:
            marks[low + 1] += 1
            marks[t + 2] -= 1
    else:
        want = need - s
        # suffix max of tau over positions whose increasing run is long enough
        suf = [0] * (t + 1)
        for i in range(t - 1, -1, -1):
            v = tau[i] if lis_from[i] >= want else 0
            suf[i] = v if v > suf[i + 1] else suf[i + 1]
        for i in range(t):
            if lis_end[i] >= s:
                hi = suf[i + 1]
                if hi > tau[i]:
                    marks[tau[i] + 1] += 1
                    marks[hi + 1] -= 1


def _mark_anchored(tau, t, q, alpha, inv_pairs, marks):
    # Anchor the body's first adjacent descent (roles alpha, alpha+1) on an
    # inversion of tau, then fill the remaining body roles outwards.
    m1 = len(q) - 1
    qlast = q[-1]
    if m1 > t:
        return
    pos = [0] * m1
    val = [0] * m1
    right_total = m1 - alpha - 2

    def fill(left, right):
        if left < 0 and right == m1:
            lo = 0
            hi = t + 1
            for rr in range(m1):
                if q[rr] < qlast:
                    if val[rr] > lo:
                        lo = val[rr]
                elif val[rr] <= hi:
                    hi = val[rr]
            if lo + 1 <= hi:
                marks[lo + 1] += 1
                marks[hi + 1] -= 1
            return
        if left >= 0:
            # left side fills downwards, so roles left+1..alpha+1 are set
            role = left
            qrole = q[role]
            for p in range(pos[role + 1] - 1, role - 1, -1):
                v = tau[p]
                ok = True
                for rr in range(role + 1, alpha + 2):
                    if (v < val[rr]) != (qrole < q[rr]):
                        ok = False
                        break
                if ok:
                    pos[role] = p
                    val[role] = v
                    fill(left - 1, right)
            return
        role = right
        qrole = q[role]
        room = m1 - 1 - role
        for p in range(pos[role - 1] + 1, t - room):
            v = tau[p]
            ok = True
            for rr in range(role):
                if (v < val[rr]) != (qrole < q[rr]):
                    ok = False
                    break
            if ok:
                pos[role] = p
                val[role] = v
                fill(left, right + 1)

    for i, j in inv_pairs:
        if i < alpha or j > t - 1 - right_total:
            continue
        pos[alpha] = i
        val[alpha] = tau[i]
        pos[alpha + 1] = j
        val[alpha + 1] = tau[j]
        fill(alpha - 1, alpha + 2)


def _bad_ranks_brute(tau, patterns, t):
    """Reference implementation of _bad_ranks via contains_ending_at."""
    bad = [False] * (t + 2)
    for r in range(1, t + 2):
        child = [v + 1 if v >= r else v for v in tau] + [r]
        bad[r] = any(contains_ending_at(child, q) for q in patterns)
    return bad


# -- the tree walk --------------------------------------------------------

def _walk(tau, inv, inv_pairs, infos, n_max, k_max, counts, sink_n, sink):
    t = len(tau)
    bad = _bad_ranks(tau, inv_pairs, infos, t)
    lo = t + 1 - (k_max - inv)
    if lo < 1:
        lo = 1
    row = counts[t + 1]
    for r in range(lo, t + 2):
        if bad[r]:
            continue
        added = inv + (t + 1 - r)
        for i in range(t):
            if tau[i] >= r:
                tau[i] += 1
        tau.append(r)
        new_pairs = [(i, t) for i in range(t) if tau[i] > r]
        inv_pairs.extend(new_pairs)
        row[added] += 1
        if sink_n == t + 1:
            sink.append(tuple(tau))
        if t + 1 < n_max:
            _walk(tau, added, inv_pairs, infos, n_max, k_max, counts, sink_n, sink)
        if new_pairs:
            del inv_pairs[-len(new_pairs):]
        tau.pop()
        for i in range(t):
            if tau[i] >= r:
                tau[i] -= 1


def _run_tree(basis, n_max, k_max, sink_n=None):
    infos = [_pattern_info(q) for q in sorted(basis)]
    counts = [[0] * (k_max + 1) for _ in range(n_max + 1)]
    sink: list[tuple[int, ...]] = []
    if n_max >= 1:
        _walk([], 0, [], infos, n_max, k_max, counts, sink_n, sink)
    return counts, sink


def generate_avoiders(basis, n: int, k_max: int) -> list[Perm]:
    """All basis-avoiding permutations of length n with at most k_max inversions.

    Deterministic output: sorted lexicographically by one-line notation.
    """
    basis = pattern_basis(basis)
    if n < 0:
        raise ValueError("length must be nonnegative")
    if n > MAX_LENGTH:
        raise ValueError(f"length {n} exceeds the supported maximum {MAX_LENGTH}")
    if k_max < 0:
        raise ValueError("inversion budget must be nonnegative")
    if n == 0:
        return [Perm()]
    _, sink = _run_tree(basis, n, k_max, sink_n=n)
    return [Perm(vals) for vals in sorted(sink)]


def iter_avoiders_upto(basis, n_max: int, k_max: int):
    """Yield (perm, inv) for every avoider of length 1..n_max with inv <= k_max."""
    basis = pattern_basis(basis)
    out: list[tuple[tuple[int, ...], int]] = []

    def _walk2(tau, inv, inv_pairs, infos):
        t = len(tau)
        bad = _bad_ranks(tau, inv_pairs, infos, t)
        lo = max(1, t + 1 - (k_max - inv))
        for r in range(lo, t + 2):
            if bad[r]:
                continue
            added = inv + (t + 1 - r)
            for i in range(t):
                if tau[i] >= r:
                    tau[i] += 1
            tau.append(r)
            new_pairs = [(i, t) for i in range(t) if tau[i] > r]
            inv_pairs.extend(new_pairs)
            out.append((tuple(tau), added))
            if t + 1 < n_max:
                _walk2(tau, added, inv_pairs, infos)
            if new_pairs:
                del inv_pairs[-len(new_pairs):]
            tau.pop()
            for i in range(t):
                if tau[i] >= r:
                    tau[i] -= 1

    if n_max >= 1:
        _walk2([], 0, [], [_pattern_info(q) for q in sorted(basis)])
    for vals, k in out:
        yield Perm(vals), k


# -- counting tables ------------------------------------------------------

@dataclass(frozen=True)
class CountTable:
    """The matrix a(n, k) = av_n^k(basis) for 1 <= n <= n_max, 0 <= k <= k_max."""

    basis: frozenset[Perm]
    n_max: int
    k_max: int
    rows: tuple[tuple[int, ...], ...]

    def value(self, n: int, k: int) -> int:
        if not (1 <= n <= self.n_max and 0 <= k <= self.k_max):
            raise IndexError(f"cell ({n}, {k}) outside table")
        return self.rows[n - 1][k]

    @property
    def basis_text(self) -> str:
        return basis_key(self.basis)


def _split_nodes(basis, depth, k_max):
    """Valid tree nodes at exactly `depth`, as value tuples, plus shallow counts."""
    infos = [_pattern_info(q) for q in sorted(basis)]
    shallow = [[0] * (k_max + 1) for _ in range(depth + 1)]
    nodes: list[tuple[int, ...]] = []

    def _walk3(tau, inv, inv_pairs):
        t = len(tau)
        bad = _bad_ranks(tau, inv_pairs, infos, t)
        lo = max(1, t + 1 - (k_max - inv))
        for r in range(lo, t + 2):
            if bad[r]:
                continue
            added = inv + (t + 1 - r)
            for i in range(t):
                if tau[i] >= r:
                    tau[i] += 1
            tau.append(r)
            new_pairs = [(i, t) for i in range(t) if tau[i] > r]
            inv_pairs.extend(new_pairs)
            shallow[t + 1][added] += 1
            if t + 1 == depth:
                nodes.append(tuple(tau))
            else:
                _walk3(tau, added, inv_pairs)
            if new_pairs:
                del inv_pairs[-len(new_pairs):]
            tau.pop()
            for i in range(t):
                if tau[i] >= r:
                    tau[i] -= 1

    _walk3([], 0, [])
    return shallow, nodes


def _count_subtree(args):
    basis_text, start, n_max, k_max = args
    from .perms import parse_basis

    basis = parse_basis(basis_text)
    infos = [_pattern_info(q) for q in sorted(basis)]
    tau = list(start)
    t = len(tau)
    inv_pairs = [
        (i, j) for j in range(t) for i in range(j) if tau[i] > tau[j]
    ]
    inv = len(inv_pairs)
    counts = [[0] * (k_max + 1) for _ in range(n_max + 1)]
    _walk(tau, inv, inv_pairs, infos, n_max, k_max, counts, None, [])
    return counts


def count_table(basis, n_max: int, k_max: int, threads: int = 1) -> CountTable:
    """Exact table of av_n^k(basis) for n <= n_max, k <= k_max."""
    basis = pattern_basis(basis)
    if not 1 <= n_max <= MAX_LENGTH:
        raise ValueError(f"n_max must be in 1..{MAX_LENGTH}")
    if not 0 <= k_max <= MAX_BUDGET:
        raise ValueError(f"k_max must be in 0..{MAX_BUDGET}")
    if threads <= 1 or n_max <= 4:
        counts, _ = _run_tree(basis, n_max, k_max)
    else:
        depth = 4
        shallow, nodes = _split_nodes(basis, depth, k_max)
        counts = [[0] * (k_max + 1) for _ in range(n_max + 1)]
        for t in range(1, depth + 1):
            for k in range(k_max + 1):
                counts[t][k] += shallow[t][k]
        key = basis_key(basis)
        jobs = [(key, node, n_max, k_max) for node in nodes]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_count_subtree, jobs, chunksize=1):
                for t in range(n_max + 1):
                    for k in range(k_max + 1):
                        counts[t][k] += part[t][k]
    rows = tuple(tuple(counts[n]) for n in range(1, n_max + 1))
    return CountTable(basis=basis, n_max=n_max, k_max=k_max, rows=rows)


def brute_table(basis, n_max: int, k_max: int) -> CountTable:
    """Oracle table built by filtering all of S_n; for cross-checks only."""
    from .perms import all_perms, avoids

    basis = pattern_basis(basis)
    rows = []
    for n in range(1, n_max + 1):
        row = [0] * (k_max + 1)
        for p in all_perms(n):
            k = inv_count(p)
            if k <= k_max and avoids(p, basis):
                row[k] += 1
        rows.append(tuple(row))
    return CountTable(basis=basis, n_max=n_max, k_max=k_max, rows=tuple(rows))


def row_differences(table: CountTable) -> list[list[int]]:
    """d(n, k) = a(n+1, k) - a(n, k) for 1 <= n <= n_max - 1 (signed)."""
    return [
        [table.rows[n][k] - table.rows[n - 1][k] for k in range(table.k_max + 1)]
        for n in range(1, table.n_max)
    ]


def second_differences(table: CountTable) -> list[list[int]]:
    """b(n, k) = (a(n+2, k+1) - a(n+1, k+1)) - (a(n+1, k) - a(n, k)).

    The combination whose diagonals b(n+i, k+i) stabilize when the row
    differences themselves do not.
    """
    out = []
    for n in range(1, table.n_max - 1):
        row = []
        for k in range(table.k_max):
            d_hi = table.rows[n + 1][k + 1] - table.rows[n][k + 1]
            d_lo = table.rows[n][k] - table.rows[n - 1][k]
            row.append(d_hi - d_lo)
        out.append(row)
    return out


def monotonicity_scan(table: CountTable) -> list[tuple[int, int, int, int]]:
    """All cells with a(n, k) > a(n+1, k), ordered by (k, n)."""
    hits = []
    for k in range(table.k_max + 1):
        for n in range(1, table.n_max):
            lo, hi = table.rows[n - 1][k], table.rows[n][k]
            if lo > hi:
                hits.append((n, k, lo, hi))
    return hits


# -- limit sequences ------------------------------------------------------

def has_limit_sequence(basis) -> bool:
    """Existence criterion: some pattern of the basis has at most one inversion."""
    return any(inv_count(q) <= 1 for q in pattern_basis(basis))


@dataclass(frozen=True)
class LimitReport:
    """Stabilized values c_k with thresholds m_k, per inversion count k."""

    k_max: int
    c: tuple[int, ...]
    m: tuple[int | None, ...]
    status: tuple[str, ...]  # "stabilized" | "unstable-within-range"

    def stabilized_prefix(self) -> list[int]:
        out = []
        for k in range(self.k_max + 1):
            if self.status[k] != "stabilized":
                break
            out.append(self.c[k])
        return out


def limit_report(table: CountTable, tail_window: int = 3) -> LimitReport:
    """Detect per-k stabilization of a(n, k) in n.

    A value is declared stabilized only when the last tail_window rows agree
    and n_max is at least k + 2 + (longest pattern length), a sufficient
    stabilization depth whenever the basis has a limit sequence at all.
    """
    maxlen = max(len(q) for q in table.basis)
    cs, ms, st = [], [], []
    for k in range(table.k_max + 1):
        col = [table.rows[n - 1][k] for n in range(1, table.n_max + 1)]
        tail_ok = (
            len(col) >= tail_window
            and all(v == col[-1] for v in col[-tail_window:])
        )
        deep_enough = table.n_max >= k + 2 + maxlen
        if tail_ok and deep_enough:
            c = col[-1]
            m = table.n_max
            while m > 1 and col[m - 2] == c:
                m -= 1
            cs.append(c)
            ms.append(m)
            st.append("stabilized")
        else:
            cs.append(col[-1])
            ms.append(None)
            st.append("unstable-within-range")
    return LimitReport(k_max=table.k_max, c=tuple(cs), m=tuple(ms), status=tuple(st))


@dataclass(frozen=True)
class DiagonalReport:
    """Stabilized values of matrix diagonals (n, n + offset)."""

    offsets: tuple[int, ...]
    values: tuple[int | None, ...]
    thresholds: tuple[int | None, ...]

    def stabilized_from_first_nonzero(self) -> list[int]:
        seq: list[int] = []
        started = False
        for off, v in zip(self.offsets, self.values):
            if v is None:
                if started:
                    break
                continue
            if not started and v == 0:
                continue
            started = True
            seq.append(v)
        return seq


def diagonal_limit(matrix: Sequence[Sequence[int]], tail_window: int = 3) -> DiagonalReport:
    """Stabilization of the diagonals m(n, k) with k - n fixed.

    matrix rows are indexed by n = 1.., columns by k = 0..; entries beyond a
    row's nonzero support should simply be present (zeros are fine).
    """
    n_rows = len(matrix)
    if n_rows == 0:
        return DiagonalReport((), (), ())
    k_cols = len(matrix[0])
    offsets, values, thresholds = [], [], []
    for off in range(-n_rows + 1, k_cols - 1 + 1):
        cells = [
            (n, matrix[n - 1][n + off])
            for n in range(1, n_rows + 1)
            if 0 <= n + off < k_cols
        ]
        if len(cells) < tail_window:
            continue
        tail = cells[-tail_window:]
        offsets.append(off)
        if all(v == tail[-1][1] for _, v in tail):
            values.append(tail[-1][1])
            idx = len(cells) - 1
            while idx > 0 and cells[idx - 1][1] == tail[-1][1]:
                idx -= 1
            thresholds.append(cells[idx][0])
        else:
            values.append(None)
            thresholds.append(None)
    return DiagonalReport(tuple(offsets), tuple(values), tuple(thresholds))


# -- inv-Wilf symmetry representatives ------------------------------------

REPRESENTATIVE_PARTNERS = (
    "1234", "1243", "1342", "1432", "2143", "2341",
    "2413", "2431", "3412", "3421", "4231", "4321",
)

_SYMMETRIES = (
    ("identity", lambda p: Perm(p)),
    ("inverse", inverse),
    ("reverse-complement", reverse_complement),
    ("inverse-reverse-complement", lambda p: reverse_complement(inverse(p))),
)


def symmetry_representative(pair) -> tuple[frozenset[Perm], str]:
    """Map a pair {1324, p} with p in S_4 to its canonical representative.

    The twelve representatives cover all such pairs up to the inversion
    preserving symmetries, each of which fixes 1324.
    """
    from .perms import parse_perm

    pair = pattern_basis(pair)
    anchor = parse_perm("1324")
    if anchor not in pair or len(pair) != 2:
        raise ValueError("expected a pair containing 1324")
    other = next(q for q in pair if q != anchor)
    if len(other) != 4:
        raise ValueError("the partner pattern must have length 4")
    reps = {parse_perm(s) for s in REPRESENTATIVE_PARTNERS}
    for name, fn in _SYMMETRIES:
        image = fn(other)
        if image in reps:
            assert fn(anchor) == anchor
            return frozenset({anchor, image}), name
    raise AssertionError(f"no symmetry maps {other} to a representative")
