"""Permutation values, statistics, symmetries and pattern containment.

Permutations use one-line notation over 1..n. The empty permutation is a
valid value (length 0); it is the identity for direct sums and shows up in
boundary conventions throughout the package.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence


class Perm(tuple):
    """An immutable permutation of {1..n} in one-line notation."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        vals = tuple(values)
        n = len(vals)
        if sorted(vals) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {vals}")
        return super().__new__(cls, vals)

    def __repr__(self):
        return f"Perm({format_perm(self)!r})" if self else "Perm('')"

    @property
    def n(self) -> int:
        return len(self)


EMPTY = Perm()


def parse_perm(text: str) -> Perm:
    """Parse one-line notation: space-free digits ("34152") or comma-separated ("12,11,10,...")."""
    text = text.strip()
    if not text:
        return EMPTY
    if "," in text:
        return Perm(int(tok) for tok in text.split(","))
    return Perm(int(ch) for ch in text)


def format_perm(p: Sequence[int]) -> str:
    """One-line text form; digits for n <= 9, comma-separated beyond."""
    if len(p) <= 9:
        return "".join(str(v) for v in p)
    return ",".join(str(v) for v in p)


def pattern_basis(patterns: Iterable[Perm | str]) -> frozenset[Perm]:
    """A deduplicated, nonempty set of forbidden patterns of length >= 1."""
    out = set()
    for p in patterns:
        q = parse_perm(p) if isinstance(p, str) else Perm(p)
        if len(q) == 0:
            raise ValueError("patterns must have length >= 1")
        out.add(q)
    if not out:
        raise ValueError("a pattern basis must be nonempty")
    return frozenset(out)


def parse_basis(text: str) -> frozenset[Perm]:
    """Parse a comma-of-patterns spec like "1324,231". Each token is one pattern."""
    return pattern_basis(tok for tok in text.split(",") if tok.strip())


def basis_key(basis: Iterable[Sequence[int]]) -> str:
    """Canonical text form of a basis, for display and cache keys."""
    return ",".join(sorted((format_perm(p) for p in basis), key=lambda s: (len(s), s)))


# -- statistics ---------------------------------------------------------

def inv_count(p: Sequence[int]) -> int:
    """Number of pairs i < j with p_i > p_j."""
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def lehmer_code(p: Sequence[int]) -> tuple[int, ...]:
    """Inversion table (b_1..b_n): b_i counts later entries smaller than p_i."""
    n = len(p)
    return tuple(
        sum(1 for j in range(i + 1, n) if p[j] < p[i]) for i in range(n)
    )


def from_lehmer(code: Sequence[int]) -> Perm:
    """Decode an inversion table; rejects out-of-range entries."""
    n = len(code)
    for i, b in enumerate(code):
        if not 0 <= b <= n - 1 - i:
            raise ValueError(f"code entry {b} at position {i + 1} out of range 0..{n - 1 - i}")
    avail = list(range(1, n + 1))
    return Perm(avail.pop(b) for b in code)


# -- symmetries ---------------------------------------------------------

def inverse(p: Sequence[int]) -> Perm:
    n = len(p)
    out = [0] * n
    for i, v in enumerate(p):
        out[v - 1] = i + 1
    return Perm(out)


def reverse(p: Sequence[int]) -> Perm:
    return Perm(reversed(p))


def complement(p: Sequence[int]) -> Perm:
    n = len(p)
    return Perm(n + 1 - v for v in p)


def reverse_complement(p: Sequence[int]) -> Perm:
    n = len(p)
    return Perm(n + 1 - v for v in reversed(p))


# -- sums and components ------------------------------------------------

def direct_sum(*parts: Sequence[int]) -> Perm:
    """Block-diagonal concatenation; the empty permutation acts as identity."""
    out: list[int] = []
    for part in parts:
        base = len(out)
        out.extend(base + v for v in part)
    return Perm(out)


def skew_sum(s: Sequence[int], t: Sequence[int]) -> Perm:
    """Anti-diagonal concatenation: s shifted above t."""
    m = len(t)
    return Perm([m + v for v in s] + list(t))


def identity(n: int) -> Perm:
    return Perm(range(1, n + 1))


def descending(n: int) -> Perm:
    """The reverse identity n, n-1, ..., 1."""
    return Perm(range(n, 0, -1))


def components(p: Sequence[int]) -> list[Perm]:
    """The unique maximal decomposition p = c_1 (+) c_2 (+) ... into indecomposables."""
    out = []
    start = 0
    high = 0
    for i, v in enumerate(p):
        high = max(high, v)
        if high == i + 1:
            out.append(standardize(p[start : i + 1]))
            start = i + 1
    return out


def is_decomposable(p: Sequence[int]) -> bool:
    """True iff p is a direct sum of two nonempty permutations."""
    high = 0
    for i, v in enumerate(p[:-1]):
        high = max(high, v)
        if high == i + 1:
            return True
    return False


def standardize(seq: Sequence[int]) -> Perm:
    """The permutation order-isomorphic to a sequence of distinct numbers."""
    order = sorted(range(len(seq)), key=seq.__getitem__)
    out = [0] * len(seq)
    for rank, idx in enumerate(order, start=1):
        out[idx] = rank
    return Perm(out)


def delete(p: Sequence[int], values: Iterable[int]) -> Perm:
    """Remove the entries with the given values and standardize the rest."""
    drop = set(values)
    n = len(p)
    for v in drop:
        if not 1 <= v <= n:
            raise ValueError(f"value {v} not in 1..{n}")
    return standardize([v for v in p if v not in drop])


def insert_value(p: Sequence[int], pos: int, value: int) -> Perm:
    """Insert a new entry at position pos (0-based) with the given new value.

    Existing entries >= value are shifted up by one, so the result has
    length n+1 and deleting `value` from it recovers p.
    """
    n = len(p)
    if not 0 <= pos <= n:
        raise ValueError(f"position {pos} not in 0..{n}")
    if not 1 <= value <= n + 1:
        raise ValueError(f"value {value} not in 1..{n + 1}")
    out = [v + 1 if v >= value else v for v in p]
    out.insert(pos, value)
    return Perm(out)


# -- pattern containment -------------------------------------------------

def contains(p: Sequence[int], q: Sequence[int]) -> bool:
    """True iff some subsequence of p is order-isomorphic to q."""
    m = len(q)
    if m == 0:
        return True
    if m > len(p):
        return False
    return _match(p, q, 0, len(p), [])


def _match(p, q, j, limit, chosen):
    # chosen[i] = (position, value) for pattern role i; roles filled left to
    # right with a value-window prune against all earlier roles.
    m = len(q)
    start = chosen[-1][0] + 1 if chosen else 0
    need = m - j
    for pos in range(start, limit - need + 1):
        v = p[pos]
        ok = True
        for (_, w), qi in zip(chosen, q):
            if (v < w) != (q[j] < qi):
                ok = False
                break
        if not ok:
            continue
        if j + 1 == m:
            return True
        chosen.append((pos, v))
        if _match(p, q, j + 1, limit, chosen):
            chosen.pop()
            return True
        chosen.pop()
    return False


def avoids(p: Sequence[int], basis: Iterable[Sequence[int]]) -> bool:
    """True iff p contains no pattern of the basis."""
    return not any(contains(p, q) for q in basis)


def contains_ending_at(prefix: Sequence[int], q: Sequence[int]) -> bool:
    """True iff some occurrence of q in prefix uses the final position.

    This is the incremental check used when a permutation is built left to
    right: testing it after every append detects exactly the prefixes that
    contain q.
    """
    m = len(q)
    n = len(prefix)
    if m == 0:
        return True
    if m > n:
        return False
    last = prefix[-1]
    # Roles are filled backwards from q_m (pinned to the last position).
    return _match_back(prefix, q, m - 2, n - 1, [(n - 1, last)])


def _match_back(p, q, j, limit, chosen):
    if j < 0:
        return True
    for pos in range(limit - 1, j - 1, -1):
        v = p[pos]
        ok = True
        for (_, w), idx in zip(chosen, _back_roles(len(chosen), len(q))):
            if (v < w) != (q[j] < q[idx]):
                ok = False
                break
        if not ok:
            continue
        chosen.append((pos, v))
        if _match_back(p, q, j - 1, pos, chosen):
            chosen.pop()
            return True
        chosen.pop()
    return False


def _back_roles(count, m):
    return range(m - 1, m - 1 - count, -1)


def occurrences(p: Sequence[int], q: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All position tuples (0-based) carrying an occurrence of q in p."""
    n, m = len(p), len(q)
    for idxs in combinations(range(n), m):
        if standardize([p[i] for i in idxs]) == tuple(q):
            yield idxs


def all_perms(n: int) -> Iterator[Perm]:
    """All of S_n in lexicographic order (test oracle; n should stay small)."""
    from itertools import permutations

    for vals in permutations(range(1, n + 1)):
        yield Perm(vals)
