"""Integer partitions, the Lehmer-code bijection with indecomposable
132-avoiders, and the partition families matching pattern restrictions.

A partition is a tuple of weakly decreasing positive integers; parts beyond
the length count as zero.
"""

from __future__ import annotations

from typing import Callable, Iterator, Sequence

from .perms import (
    Perm,
    avoids,
    components,
    from_lehmer,
    inverse,
    lehmer_code,
    parse_perm,
    reverse_complement,
)

Partition = tuple[int, ...]


def check_partition(parts: Sequence[int]) -> Partition:
    parts = tuple(parts)
    if any(p <= 0 for p in parts):
        raise ValueError(f"parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"parts must be weakly decreasing: {parts}")
    return parts


def partitions_of(k: int) -> Iterator[Partition]:
    """All partitions of k in reverse-lexicographic order."""
    if k == 0:
        yield ()
        return

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first, *rest)

    yield from rec(k, k)


def partition_count(k: int) -> int:
    """p(k), by the pentagonal-number recurrence."""
    p = [1] + [0] * k
    for n in range(1, k + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            g2 = j * (3 * j + 1) // 2
            if g1 > n and g2 > n:
                break
            sign = -1 if j % 2 == 0 else 1
            if g1 <= n:
                total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            j += 1
        p[n] = total
    return p[k]


# -- the Lambda bijection -------------------------------------------------

def lambda_map(p: Perm) -> Partition:
    """Lehmer code with trailing zeros removed; defined on indecomposable
    132-avoiders, where it is a partition of inv(p)."""
    if len(components(p)) > 1:
        raise ValueError("permutation must be indecomposable")
    if not avoids(p, [parse_perm("132")]):
        raise ValueError("permutation must avoid 132")
    code = list(lehmer_code(p))
    while code and code[-1] == 0:
        code.pop()
    return tuple(code)


def lambda_inverse(parts: Sequence[int]) -> Perm:
    """The unique indecomposable 132-avoider whose code is the partition."""
    parts = check_partition(parts)
    if not parts:
        return Perm((1,))
    n = max(v + i for i, v in enumerate(parts, start=1))
    code = list(parts) + [0] * (n - len(parts))
    return from_lehmer(code)


def indecomposable_avoiders(basis, k: int) -> list[Perm]:
    """I_k(basis): indecomposable basis-avoiders with exactly k inversions.

    Finite because an indecomposable permutation of length n has at least
    n - 1 inversions; lengths range over 1..k+1.
    """
    from .enumeration import generate_avoiders
    from .perms import inv_count, pattern_basis

    basis = pattern_basis(basis)
    out = []
    for n in range(1, k + 2):
        for p in generate_avoiders(basis, n, k):
            if inv_count(p) == k and len(components(p)) == 1:
                out.append(p)
    return out


# -- partition families ---------------------------------------------------

def is_spm(parts: Sequence[int]) -> bool:
    """Sand pile model membership: no three equal parts, and between any two
    plateaus there is a drop of at least two."""
    parts = check_partition(parts)
    ell = len(parts)
    for i in range(ell - 2):
        if parts[i] == parts[i + 1] == parts[i + 2]:
            return False
    plateaus = [i for i in range(ell) if _at(parts, i) == _at(parts, i + 1) and _at(parts, i) > 0]
    for a, b in zip(plateaus, plateaus[1:]):
        if not any(_at(parts, i) - _at(parts, i + 1) >= 2 for i in range(a + 1, b)):
            return False
    return True


def _at(parts, i):
    return parts[i] if i < len(parts) else 0


def spm_generate(k: int) -> set[Partition]:
    """SPM(k) by closure under moving a unit from a part to the next one."""
    start: Partition = (k,) if k else ()
    seen = {start}
    frontier = [start]
    while frontier:
        lam = frontier.pop()
        padded = list(lam) + [0]
        for i in range(len(lam)):
            if padded[i] >= padded[i + 1] + 2:
                nxt = padded.copy()
                nxt[i] -= 1
                nxt[i + 1] += 1
                new = tuple(v for v in nxt if v > 0)
                if new not in seen:
                    seen.add(new)
                    frontier.append(new)
    return seen


def is_steep(parts: Sequence[int]) -> bool:
    """Each gap between consecutive distinct parts is at least the
    multiplicity of the smaller part."""
    parts = check_partition(parts)
    runs: list[tuple[int, int]] = []
    for v in parts:
        if runs and runs[-1][0] == v:
            runs[-1] = (v, runs[-1][1] + 1)
        else:
            runs.append((v, 1))
    for (hi, _), (lo, mult) in zip(runs, runs[1:]):
        if hi - lo < mult:
            return False
    return True


def is_convex_penny(parts: Sequence[int]) -> bool:
    """No equal adjacent pair strictly before a drop of two or more
    (zero-padded beyond the last part)."""
    parts = check_partition(parts)
    ell = len(parts)
    seen_plateau = False
    for i in range(ell):
        if seen_plateau and _at(parts, i) - _at(parts, i + 1) >= 2:
            return False
        if _at(parts, i) == _at(parts, i + 1) and _at(parts, i) > 0:
            seen_plateau = True
    return True


def is_distinct_except_smallest(parts: Sequence[int]) -> bool:
    """All parts except possibly the smallest value have multiplicity one."""
    parts = check_partition(parts)
    if not parts:
        return True
    smallest = parts[-1]
    seen = set()
    for v in parts:
        if v in seen and v != smallest:
            return False
        seen.add(v)
    return True


def is_convex_4231(parts: Sequence[int]) -> bool:
    """After any drop of two or more, the remaining parts are strictly
    decreasing (down to the final zero)."""
    parts = check_partition(parts)
    ell = len(parts)
    for i in range(ell):
        if _at(parts, i) - _at(parts, i + 1) >= 2:
            return all(
                _at(parts, j) > _at(parts, j + 1) for j in range(i + 1, ell)
            )
    return True


def distinct_part_count(parts: Sequence[int]) -> int:
    return len(set(check_partition(parts)))


def max_distinct_parts(m: int) -> Callable[[Sequence[int]], bool]:
    """Family test for avoiding the descending pattern of length m."""

    def test(parts: Sequence[int]) -> bool:
        return distinct_part_count(parts) <= m - 2

    return test


# -- overpartitions -------------------------------------------------------

Overpartition = tuple[tuple[int, bool], ...]


def overpartition_merge(plain: Sequence[int], distinct: Sequence[int]) -> Overpartition:
    """Merge a partition with a distinct-parts partition into an
    overpartition: the distinct parts are overlined, and each overlined part
    precedes the equal plain parts."""
    plain = check_partition(plain)
    distinct = check_partition(distinct)
    if len(set(distinct)) != len(distinct):
        raise ValueError("second partition must have distinct parts")
    merged = [(v, True) for v in distinct] + [(v, False) for v in plain]
    merged.sort(key=lambda pv: (-pv[0], not pv[1]))
    return tuple(merged)


def overpartition_split(over: Overpartition) -> tuple[Partition, Partition]:
    """Inverse of overpartition_merge."""
    _validate_overpartition(over)
    plain = tuple(v for v, lined in over if not lined)
    distinct = tuple(v for v, lined in over if lined)
    return plain, distinct


def _validate_overpartition(over: Overpartition) -> None:
    vals = [v for v, _ in over]
    check_partition(vals)
    for i, (v, lined) in enumerate(over):
        if lined:
            if i > 0 and over[i - 1][0] == v:
                raise ValueError("only the first occurrence of a part may be overlined")
        if i > 0 and over[i - 1][0] == v and over[i - 1][1] < lined:
            raise ValueError("overlined part must precede equal plain parts")


def overpartitions_of(k: int) -> list[Overpartition]:
    """All overpartitions of k: each subset of part values may be overlined
    at its first occurrence."""
    out = []
    for lam in partitions_of(k):
        values = sorted(set(lam), reverse=True)
        for mask in range(1 << len(values)):
            lined = {values[i] for i in range(len(values)) if mask >> i & 1}
            over = []
            seen = set()
            for v in lam:
                if v in lined and v not in seen:
                    over.append((v, True))
                else:
                    over.append((v, False))
                seen.add(v)
            out.append(tuple(over))
    return out


# -- family verification --------------------------------------------------

FAMILY_TESTS: dict[str, Callable[[Sequence[int]], bool]] = {
    "2341": is_spm,
    "3241": is_steep,
    "3412": is_convex_penny,
    "3421": is_distinct_except_smallest,
    "4231": is_convex_4231,
    "4321": max_distinct_parts(4),
}


def verify_family(partner: str, family_test, k_max: int) -> list[tuple[int, bool]]:
    """Check Lambda(I_k(132, partner)) == {partitions of k passing the test}.

    Both sides are produced independently: the left by enumerating
    indecomposable avoiders, the right by filtering all partitions of k.
    Returns per-k results.
    """
    basis = [parse_perm("132"), parse_perm(partner)]
    results = []
    for k in range(k_max + 1):
        left = {lambda_map(p) for p in indecomposable_avoiders(basis, k)}
        right = {lam for lam in partitions_of(k) if family_test(lam)}
        results.append((k, left == right))
    return results


def verify_transfer_213_2431(k_max: int) -> list[tuple[int, bool]]:
    """The map p -> rc(inverse(p)) carries I_k(213, 2431) onto I_k(132, 3241)."""
    basis_a = [parse_perm("213"), parse_perm("2431")]
    basis_b = [parse_perm("132"), parse_perm("3241")]
    results = []
    for k in range(k_max + 1):
        image = {reverse_complement(inverse(p)) for p in indecomposable_avoiders(basis_a, k)}
        target = set(indecomposable_avoiders(basis_b, k))
        results.append((k, image == target))
    return results


def family_counts(test, k_max: int) -> list[int]:
    return [sum(1 for lam in partitions_of(k) if test(lam)) for k in range(k_max + 1)]
