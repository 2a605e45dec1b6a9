"""Exact truncated power series and the limit generating functions.

Coefficients are Python integers, so no overflow is possible; arithmetic is
closed at the truncation order (mismatched orders truncate to the shorter).
Infinite products are truncated at factor index K, since factors beyond x^K
only contribute above the truncation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

DEFAULT_ORDER = 40


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        k = min(self.order, other.order)
        return TruncatedSeries(
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(k + 1))
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        k = min(self.order, other.order)
        return TruncatedSeries(
            tuple(self.coeffs[i] - other.coeffs[i] for i in range(k + 1))
        )

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        k = min(self.order, other.order)
        out = [0] * (k + 1)
        for i, a in enumerate(self.coeffs[: k + 1]):
            if a == 0:
                continue
            for j in range(k + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(tuple(out))

    def scalar_mul(self, c: int) -> "TruncatedSeries":
        return TruncatedSeries(tuple(c * a for a in self.coeffs))

    def shift(self, m: int) -> "TruncatedSeries":
        """Multiply by x^m."""
        if m < 0:
            raise ValueError("shift must be nonnegative")
        k = self.order
        return TruncatedSeries(tuple([0] * min(m, k + 1) + list(self.coeffs[: k + 1 - m])))

    def square(self) -> "TruncatedSeries":
        return self * self


def zero(order: int) -> TruncatedSeries:
    return TruncatedSeries((0,) * (order + 1))


def one(order: int) -> TruncatedSeries:
    return TruncatedSeries((1,) + (0,) * order)


def monomial(m: int, order: int, coeff: int = 1) -> TruncatedSeries:
    c = [0] * (order + 1)
    if m <= order:
        c[m] = coeff
    return TruncatedSeries(tuple(c))


def from_coeffs(coeffs: Sequence[int], order: int) -> TruncatedSeries:
    c = list(coeffs[: order + 1])
    c += [0] * (order + 1 - len(c))
    return TruncatedSeries(tuple(c))


def geometric(i: int, order: int) -> TruncatedSeries:
    """1 / (1 - x^i)."""
    if i <= 0:
        raise ValueError("exponent must be positive")
    c = [0] * (order + 1)
    for j in range(0, order + 1, i):
        c[j] = 1
    return TruncatedSeries(tuple(c))


def partition_gf(order: int) -> TruncatedSeries:
    """P(x) = prod_{i >= 1} 1 / (1 - x^i)."""
    out = one(order)
    for i in range(1, order + 1):
        out = out * geometric(i, order)
    return out


def distinct_parts_gf(order: int) -> TruncatedSeries:
    """prod_{i >= 1} (1 + x^i)."""
    out = one(order)
    for i in range(1, order + 1):
        out = out * (one(order) + monomial(i, order))
    return out


def overpartition_gf(order: int) -> TruncatedSeries:
    """prod_{i >= 1} (1 + x^i) / (1 - x^i)."""
    return distinct_parts_gf(order) * partition_gf(order)


def _parts_bounded_distinct(a: int, order: int) -> TruncatedSeries:
    """prod_{i=1..a} (1 + x^i)."""
    out = one(order)
    for i in range(1, a + 1):
        out = out * (one(order) + monomial(i, order))
    return out


def _divider_gf(order: int) -> TruncatedSeries:
    """sum_{k >= 0} (k+1) x^k prod_{i=1..k} 1/(1 - x^i)."""
    out = zero(order)
    prod = one(order)
    for k in range(0, order + 1):
        if k > 0:
            prod = prod * geometric(k, order)
        out = out + prod.shift(k).scalar_mul(k + 1)
    return out


def _convex_partition_gf(order: int) -> TruncatedSeries:
    """Partitions where any drop of two or more is followed by strictly
    decreasing parts: prod(1+x^i) + sum_{a,b} x^{(a+2)(b+1)} prod_{i<=a}(1+x^i) prod_{i<=b}(1+x^i)."""
    out = distinct_parts_gf(order)
    for a in range(0, order + 1):
        if (a + 2) > order:
            break
        pa = _parts_bounded_distinct(a, order)
        for b in range(0, order + 1):
            e = (a + 2) * (b + 1)
            if e > order:
                break
            out = out + (pa * _parts_bounded_distinct(b, order)).shift(e)
    return out


def _two_sizes_gf(order: int) -> TruncatedSeries:
    """Partitions with at most two distinct part sizes:
    1 + sum_k x^k/(1-x^k) + sum_{k} sum_{i>k} x^{k+i}/((1-x^k)(1-x^i))."""
    out = one(order)
    for k in range(1, order + 1):
        out = out + geometric(k, order).shift(k)
    for k in range(1, order + 1):
        gk = geometric(k, order)
        for i in range(k + 1, order + 1):
            if k + i > order:
                break
            out = out + (gk * geometric(i, order)).shift(k + i)
    return out


def _spm_gf(order: int) -> TruncatedSeries:
    """1 + sum_{k >= 1} x^{k(k+1)/2} prod_{i=1..k} (x + 1/(1-x^i))."""
    out = one(order)
    for k in range(1, order + 1):
        tri = k * (k + 1) // 2
        if tri > order:
            break
        prod = one(order)
        for i in range(1, k + 1):
            prod = prod * (monomial(1, order) + geometric(i, order))
        out = out + prod.shift(tri)
    return out


def _distinct_except_smallest_gf(order: int) -> TruncatedSeries:
    """1 + sum_{k >= 1} x^k/(1-x^k) prod_{i >= k+1} (1 + x^i)."""
    out = one(order)
    for k in range(1, order + 1):
        prod = geometric(k, order)
        for i in range(k + 1, order + 1):
            prod = prod * (one(order) + monomial(i, order))
        out = out + prod.shift(k)
    return out


def _enumerated_gf(partner: str, order: int) -> TruncatedSeries:
    """Coefficients of C_{132,partner} by direct enumeration of the
    partition family (used where no closed form is known)."""
    from .partitions import FAMILY_TESTS, family_counts

    test = FAMILY_TESTS[partner]
    return from_coeffs(family_counts(test, order), order)


def _steep_gf(order: int) -> TruncatedSeries:
    return _enumerated_gf("3241", order)


def _penny_gf(order: int) -> TruncatedSeries:
    return _enumerated_gf("3412", order)


_BASE: dict[str, Callable[[int], TruncatedSeries]] = {
    "P": partition_gf,
    "132": partition_gf,
    "distinct": distinct_parts_gf,
    "132,2341": _spm_gf,
    "132,3241": _steep_gf,
    "132,3412": _penny_gf,
    "132,3421": _distinct_except_smallest_gf,
    "132,4231": _convex_partition_gf,
    "132,4321": _two_sizes_gf,
}

_PAIRS: dict[str, Callable[[int], TruncatedSeries]] = {
    "1324": lambda K: partition_gf(K).square(),
    "1324,1243": partition_gf,
    "1324,2143": lambda K: partition_gf(K).scalar_mul(2) - one(K),
    "1324,1342": overpartition_gf,
    "1324,1432": _divider_gf,
    "1324,4231": lambda K: _convex_partition_gf(K).square(),
    "1324,4321": lambda K: _two_sizes_gf(K).square(),
    "1324,2341": lambda K: _spm_gf(K).square(),
    "1324,2413": lambda K: partition_gf(K).square(),
    "1324,2431": lambda K: partition_gf(K) * _steep_gf(K),
    "1324,3412": lambda K: _penny_gf(K).square(),
    "1324,3421": lambda K: _distinct_except_smallest_gf(K).square(),
}

CATALOGUE = {**_BASE, **_PAIRS}


def named_gf(name: str, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Limit generating function by basis name, e.g. "1324,1342"."""
    key = name.strip()
    if key not in CATALOGUE:
        known = ", ".join(sorted(CATALOGUE))
        raise KeyError(f"unknown generating function {name!r}; known: {known}")
    return CATALOGUE[key](order)


# -- the 1324,1342 enumeration -------------------------------------------

def secondary_gf_1342(n: int, order: int) -> TruncatedSeries:
    """x^{n-1} (2 + 2x) C_{1324,1342}(x): the stabilized row difference
    av_{n+1}^k - av_n^k of the pair {1324, 1342} for n >= (k+7)/2."""
    poly = from_coeffs([2, 2], order)
    return (poly * overpartition_gf(order)).shift(n - 1)


def av_1324_1342(n: int, k: int) -> int:
    """av_n^k(1324, 1342) from the closed form, valid for n >= (k+7)/2."""
    if n < (k + 7) / 2:
        raise ValueError(f"closed form requires n >= (k+7)/2; got n={n}, k={k}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    base = overpartition_gf(k)
    # (1 - x - x^{n-1}(2+2x)) / (1-x) = 1 - (2x^{n-1} + 2x^n)/(1-x)
    total = base[k]
    for j in range(0, k - (n - 1) + 1):
        total -= 2 * base[j]
    for j in range(0, k - n + 1):
        total -= 2 * base[j]
    return total
