"""The length-increasing, inversion-preserving map on decomposable and
almost decomposable 1324-avoiders, and the compatibility classification of
companion patterns.

A decomposable 1324-avoider splits as sigma (+) id_m (+) tau with sigma an
indecomposable 132-avoider and tau an indecomposable 213-avoider; the map
grows the identity run. An almost decomposable permutation becomes
decomposable after deleting one boundary entry (first entry, value 1, last
entry, or value n); the map removes that entry, grows the run, and puts the
entry back. Case priority follows the original definition (first entry,
then value 1, then the reverse-complement pair); the alternate priority is
available behind a flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from .perms import (
    Perm,
    avoids,
    components,
    contains,
    delete,
    direct_sum,
    identity,
    insert_value,
    inv_count,
    inverse,
    is_decomposable,
    parse_perm,
    reverse_complement,
    standardize,
)

_P1324 = parse_perm("1324")
_P1342 = parse_perm("1342")
_P213 = parse_perm("213")


@dataclass(frozen=True)
class DecompForm:
    """sigma (+) id_m (+) tau with the stated avoidance structure."""

    sigma: Perm
    m: int
    tau: Perm

    def assemble(self) -> Perm:
        return direct_sum(self.sigma, identity(self.m), self.tau)


def decomp_form(p: Perm) -> DecompForm:
    """Split a decomposable 1324-avoider into sigma (+) id_m (+) tau."""
    comps = components(p)
    if len(comps) < 2:
        raise ValueError(f"{p!r} is not decomposable")
    sigma, tau = comps[0], comps[-1]
    middle = comps[1:-1]
    if any(c != (1,) for c in middle):
        raise ValueError(f"{p!r} contains 1324: middle components must be trivial")
    form = DecompForm(sigma=sigma, m=len(middle), tau=tau)
    if not avoids(sigma, [parse_perm("132")]) or not avoids(tau, [_P213]):
        raise ValueError(f"{p!r} contains 1324: outer components are not shaped")
    return form


def f_tilde(p: Perm) -> Perm:
    """Grow the middle identity run of a decomposable 1324-avoider by one."""
    form = decomp_form(p)
    return direct_sum(form.sigma, identity(form.m + 1), form.tau)


# -- almost decomposability ------------------------------------------------

CASES = ("F1", "F2", "F3", "F4")

_PAPER_PRIORITY = ("F1", "F2", "F3", "F4")
_ALTERNATE_PRIORITY = ("F3", "F4", "F1", "F2")


@dataclass(frozen=True)
class FCase:
    """Which boundary deletion makes the permutation decomposable."""

    tag: str  # F1: first entry, F2: value 1, F3: last entry, F4: value n
    witness: int  # the deleted value


def _case_witness(p: Perm, tag: str) -> int:
    n = len(p)
    return {"F1": p[0], "F2": 1, "F3": p[-1], "F4": n}[tag]


def almost_decomposable(p: Perm, alternate_priority: bool = False) -> FCase | None:
    """The highest-priority applicable case, or None if p is decomposable
    or not almost decomposable."""
    n = len(p)
    if n <= 1 or is_decomposable(p):
        return None
    order = _ALTERNATE_PRIORITY if alternate_priority else _PAPER_PRIORITY
    for tag in order:
        e = _case_witness(p, tag)
        if is_decomposable(delete(p, [e])):
            return FCase(tag=tag, witness=e)
    return None


def f_map(p: Perm, alternate_priority: bool = False) -> Perm:
    """The injection on decomposable or almost decomposable 1324-avoiders."""
    if not avoids(p, [_P1324]):
        raise ValueError(f"{p!r} contains 1324")
    if is_decomposable(p):
        return f_tilde(p)
    case = almost_decomposable(p, alternate_priority)
    if case is None:
        raise ValueError(f"{p!r} is neither decomposable nor almost decomposable")
    n = len(p)
    if case.tag == "F1":
        # keep the first entry, grow the rest
        assert not is_decomposable(delete(p, [1])), \
            "first-entry and value-1 deletions cannot both decompose"
        grown = f_tilde(delete(p, [p[0]]))
        return insert_value(grown, 0, p[0])
    if case.tag == "F2":
        grown = f_tilde(delete(p, [1]))
        return insert_value(grown, p.index(1), 1)
    if case.tag == "F3":
        # new last entry one above the old one
        assert not is_decomposable(delete(p, [n])), \
            "last-entry and value-n deletions cannot both decompose"
        grown = f_tilde(delete(p, [p[-1]]))
        return insert_value(grown, n, p[-1] + 1)
    # F4: new maximum right after the old one
    grown = f_tilde(delete(p, [n]))
    pos_of_n = p.index(n)
    return insert_value(grown, pos_of_n + 1, n + 1)


def f_domain(p: Perm) -> bool:
    """True iff f_map is defined on p (inside Av(1324))."""
    return is_decomposable(p) or almost_decomposable(p) is not None


def theorem_almost_decomp_check(n_max: int):
    """Every 1324-avoider with inv <= 2n-7 is decomposable or almost
    decomposable; returns (n, violations) per length."""
    from .enumeration import generate_avoiders

    report = []
    for n in range(1, n_max + 1):
        bound = 2 * n - 7
        bad = []
        if bound >= 0:
            for p in generate_avoiders([_P1324], n, bound):
                if not f_domain(p):
                    bad.append(p)
        report.append((n, bad))
    return report


# -- compatibility classification -------------------------------------------

def _symmetry_orbit(p: Perm):
    rc = reverse_complement(p)
    return (
        (p, False),
        (inverse(p), False),
        (rc, True),
        (inverse(rc), True),
    )


def _first_component_starts_with_max(q: Perm) -> bool:
    first = components(q)[0]
    return first[0] == len(first)


def classify_necessary(p: Perm) -> bool:
    """Necessary condition for f-incompatibility: True means p may be
    incompatible, False certifies compatibility.

    On the reverse-complement side of the orbit, the two-component and
    213-avoiding-body conditions additionally require the last entry to be
    below the maximum; this is what the reference classification counts
    use.
    """
    n = len(p)
    for q, is_rc_side in _symmetry_orbit(p):
        comp_q = len(components(q))
        if comp_q >= 3:
            return True
        body = delete(q, [q[0]])
        if len(components(body)) > comp_q:
            return True
        rc_ok = not is_rc_side or q[-1] < n
        if q[0] > 1 and comp_q == 2 and _first_component_starts_with_max(q) and rc_ok:
            return True
        if 1 < q[0] < n and avoids(body, [_P213]) and rc_ok:
            return True
    return False


def classify_sufficient(p: Perm) -> bool:
    """Sufficient condition for f-incompatibility: True certifies that f
    breaks p-avoidance somewhere."""
    n = len(p)
    for q, is_rc_side in _symmetry_orbit(p):
        comp_q = len(components(q))
        if comp_q >= 3:
            return True
        rc_ok = (not is_rc_side) or q[0] < n - 1
        body = delete(q, [q[0]])
        if q[0] < n and len(components(body)) > comp_q and rc_ok:
            return True
        if q[0] > 1 and comp_q == 2 and _first_component_starts_with_max(q) and rc_ok:
            return True
        if 1 < q[0] < n and avoids(body, [_P213]) and rc_ok:
            return True
    return False


def corollary_families(p: Perm) -> bool:
    """Two simple families of compatible patterns: max-first/min-last, and
    1 (+) tau with tau staying indecomposable under two deletions."""
    n = len(p)
    if n >= 1 and p[0] == n and p[-1] == 1:
        return True
    if n >= 4 and p[0] == 1:
        tau = delete(p, [1])
        if (
            not is_decomposable(tau)
            and not is_decomposable(delete(tau, [tau[-1]]))
            and not is_decomposable(delete(tau, [len(tau)]))
        ):
            return True
    return False


@dataclass(frozen=True)
class CompatVerdict:
    pattern: Perm
    verdict: str  # incompatible-by-theorem | incompatible-by-witness |
    #               compatible-by-theorem | unknown
    witness: tuple[Perm, Perm] | None = None  # (pi, f(pi)) with f(pi) containing p


def _witness_search(p: Perm, length_slack=(-1, 0, 1, 2), alternate_priority=False):
    """Look for pi avoiding {1324, p} whose image contains p."""
    from .enumeration import iter_avoiders_upto

    n = len(p)
    lengths = sorted({n + s for s in length_slack if n + s >= 1})
    if not lengths:
        return None
    m_max = max(lengths)
    for pi, _k in iter_avoiders_upto([_P1324], m_max, m_max * (m_max - 1) // 2):
        if len(pi) not in lengths or not f_domain(pi):
            continue
        if contains(pi, p):
            continue
        image = f_map(pi, alternate_priority)
        if contains(image, p):
            return (pi, image)
    return None


def compat_search(p: Perm, length_slack=(-1, 0, 1, 2),
                  alternate_priority: bool = False) -> CompatVerdict:
    """Classify one pattern, combining both theorems with a finite witness
    search over lengths |p|-1 .. |p|+2.

    The theorems assume the default case priority; with the alternate
    priority only the witness search applies, so verdicts may degrade to
    unknown.
    """
    if contains(p, _P1324):
        # containment of 1324 is preserved by the map, so such patterns are
        # always compatible
        return CompatVerdict(p, "compatible-by-theorem")
    if not alternate_priority and classify_sufficient(p):
        return CompatVerdict(p, "incompatible-by-theorem",
                             _witness_search(p, length_slack))
    hit = _witness_search(p, length_slack, alternate_priority)
    if hit is not None:
        return CompatVerdict(p, "incompatible-by-witness", hit)
    if not alternate_priority and not classify_necessary(p):
        return CompatVerdict(p, "compatible-by-theorem")
    return CompatVerdict(p, "unknown")


@dataclass(frozen=True)
class CompatCounts:
    """The six classification counts over Av_n(1324) for one length."""

    n: int
    total: int
    sufficient_incompatible: int
    witness_incompatible: int
    necessary_incompatible: int
    necessary_compatible: int
    witness_compatible: int
    sufficient_compatible: int


def compat_table_row(n: int, alternate_priority: bool = False) -> CompatCounts:
    """Classification counts for all patterns in Av_n(1324).

    The witness columns reproduce the computational lower/upper bounds: a
    pattern counts as witness-incompatible when some decomposable or almost
    decomposable pi in Av_m(1324, p), |p|-1 <= m <= |p|+2, has f(pi)
    containing p. Implemented by collecting, for every such pi, the length-n
    patterns gained by its image. The theorem columns assume the default
    priority; the reference counts require it.
    """
    from .enumeration import iter_avoiders_upto

    patterns = [
        p for p, _ in iter_avoiders_upto([_P1324], n, n * (n - 1) // 2) if len(p) == n
    ]
    incompatible: set[Perm] = set()
    m_max = n + 2
    for pi, _k in iter_avoiders_upto([_P1324], m_max, m_max * (m_max - 1) // 2):
        m = len(pi)
        if m < n - 1 or not f_domain(pi):
            continue
        image = f_map(pi, alternate_priority)
        gained = _patterns_of_length(image, n) - _patterns_of_length(pi, n)
        incompatible.update(gained)
    incompatible = {p for p in incompatible if avoids(p, [_P1324])}
    suff = sum(1 for p in patterns if classify_sufficient(p))
    nec = sum(1 for p in patterns if classify_necessary(p))
    wit = sum(1 for p in patterns if p in incompatible)
    total = len(patterns)
    return CompatCounts(
        n=n,
        total=total,
        sufficient_incompatible=suff,
        witness_incompatible=wit,
        necessary_incompatible=nec,
        necessary_compatible=total - nec,
        witness_compatible=total - wit,
        sufficient_compatible=total - suff,
    )


def _patterns_of_length(p: Perm, n: int) -> set[Perm]:
    if n > len(p):
        return set()
    return {standardize([p[i] for i in idxs]) for idxs in combinations(range(len(p)), n)}


# -- the 1342 companion ------------------------------------------------------

def check_1342_bound(n_max: int):
    """Scan Av_n(1324, 1342) for images containing 1342.

    Returns per-n lists of (pi, inv) whose image contains 1342. All such pi
    have inv >= 2n-5 (the inductive boundary-point bound), and the minimum
    is attained; in particular none appear at inv <= 2n-6. Also checks that
    1342-containment is preserved by the map on (almost) decomposable
    1324-avoiders.
    """
    from .enumeration import iter_avoiders_upto

    counterexamples: dict[int, list[tuple[Perm, int]]] = {n: [] for n in range(1, n_max + 1)}
    preserved = True
    for pi, k in iter_avoiders_upto([_P1324], n_max, n_max * (n_max - 1) // 2):
        if not f_domain(pi):
            continue
        image = f_map(pi)
        has_before = contains(pi, _P1342)
        has_after = contains(image, _P1342)
        if has_before and not has_after:
            preserved = False
        if not has_before and has_after:
            counterexamples[len(pi)].append((pi, k))
    return counterexamples, preserved


def difference_sets(n: int, k: int):
    """The members of Av_{n+1}^k(1324, 1342) outside the image of f,
    split into the three syntactic families R1, R2, R3.

    R1: first entry n+1 or last entry 1. R2: second entry n+1 (the mirrored
    last-entry-2 case is impossible under 1342-avoidance). R3: inverse of a
    permutation whose body after the first entry has three or more
    components, with first entry ell+1 and last entry ell+2 for ell the
    length of the body's first component (the uninverted case is again
    impossible under 1342-avoidance).
    """
    from .enumeration import generate_avoiders

    basis = [_P1324, _P1342]
    big = [s for s in generate_avoiders(basis, n + 1, k) if inv_count(s) == k]
    image = set()
    for pi in generate_avoiders(basis, n, k):
        if inv_count(pi) == k and f_domain(pi):
            image.add(f_map(pi))
    rest = [s for s in big if s not in image]
    r1, r2, r3 = [], [], []
    for s in rest:
        if s[0] == n + 1 or s[-1] == 1:
            r1.append(s)
        elif s[1] == n + 1:
            r2.append(s)
        else:
            assert s[-1] != 2, "last entry 2 is impossible under 1342-avoidance"
            assert _r3_shape(s), f"{s!r} escaped the three difference families"
            r3.append(s)
    return r1, r2, r3


def _r3_shape(s: Perm) -> bool:
    # first entry one above, last entry two above the length of the leading
    # component of the doubly-trimmed permutation, with the body splitting
    for tau in (s, inverse(s)):
        trimmed = delete(tau, [tau[0], tau[-1]])
        if not trimmed:
            continue
        ell = len(components(trimmed)[0])
        if tau[0] != ell + 1 or tau[-1] != ell + 2:
            continue
        if len(components(delete(tau, [tau[0]]))) < 2:
            continue
        if tau == s:
            raise AssertionError(
                "uninverted R3 shape is impossible under 1342-avoidance"
            )
        return True
    return False
