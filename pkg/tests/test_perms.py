from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from permseq.perms import (
    EMPTY,
    Perm,
    all_perms,
    avoids,
    complement,
    components,
    contains,
    contains_ending_at,
    delete,
    direct_sum,
    format_perm,
    from_lehmer,
    identity,
    insert_value,
    inv_count,
    inverse,
    lehmer_code,
    parse_basis,
    parse_perm,
    pattern_basis,
    reverse,
    reverse_complement,
    skew_sum,
    standardize,
)

perms_st = st.integers(0, 8).flatmap(
    lambda n: st.permutations(list(range(1, n + 1)))
).map(Perm)


def brute_contains(p, q):
    m = len(q)
    return any(
        standardize([p[i] for i in idx]) == tuple(q)
        for idx in combinations(range(len(p)), m)
    )


def test_constructor_rejects_non_permutations():
    with pytest.raises(ValueError):
        Perm((1, 3))
    with pytest.raises(ValueError):
        Perm((1, 1, 2))
    assert Perm(()) == EMPTY


def test_parse_and_format():
    assert parse_perm("34152") == Perm((3, 4, 1, 5, 2))
    assert parse_perm("12,11,10,9,8,7,6,5,4,3,2,1") == Perm(range(12, 0, -1))
    assert parse_perm("") == EMPTY
    long = Perm(range(12, 0, -1))
    assert parse_perm(format_perm(long)) == long
    short = Perm((2, 1, 3))
    assert format_perm(short) == "213"


def test_pattern_basis_rules():
    b = pattern_basis(["132", "132", "1324"])
    assert len(b) == 2
    with pytest.raises(ValueError):
        pattern_basis([])
    with pytest.raises(ValueError):
        pattern_basis([""])
    assert parse_basis("1324,231") == {Perm((1, 3, 2, 4)), Perm((2, 3, 1))}


def test_inv_count_examples():
    assert inv_count(parse_perm("1")) == 0
    assert inv_count(parse_perm("21453")) == 3
    assert inv_count(parse_perm("1324")) == 1
    assert inv_count(parse_perm("34152")) == 5


def test_lehmer_examples():
    assert lehmer_code(parse_perm("21")) == (1, 0)
    assert lehmer_code(identity(5)) == (0,) * 5
    assert from_lehmer((2, 1, 0)) == parse_perm("321")
    with pytest.raises(ValueError):
        from_lehmer((3, 0, 0))


@pytest.mark.parametrize("n", range(0, 8))
def test_lehmer_roundtrip_exhaustive(n):
    for p in all_perms(n):
        code = lehmer_code(p)
        assert sum(code) == inv_count(p)
        assert from_lehmer(code) == p


@pytest.mark.slow
def test_lehmer_roundtrip_n8():
    for p in all_perms(8):
        assert from_lehmer(lehmer_code(p)) == p


def test_symmetry_examples():
    assert reverse_complement(parse_perm("1324")) == parse_perm("1324")
    assert inverse(parse_perm("231")) == parse_perm("312")
    assert complement(identity(4)) == reverse(identity(4))


@given(perms_st)
def test_symmetries_preserve_inversions(p):
    k = inv_count(p)
    assert inv_count(inverse(p)) == k
    assert inv_count(reverse_complement(p)) == k


@given(perms_st)
def test_reverse_and_complement_commute(p):
    assert reverse(complement(p)) == complement(reverse(p)) == reverse_complement(p)


def test_sums():
    s, t = parse_perm("21"), parse_perm("231")
    assert direct_sum(s, t) == parse_perm("21453")
    assert skew_sum(s, t) == parse_perm("54231")
    assert direct_sum(EMPTY, t) == t
    assert direct_sum(t, EMPTY) == t
    assert inv_count(direct_sum(s, t)) == inv_count(s) + inv_count(t)


def test_components():
    assert components(parse_perm("21453")) == [parse_perm("21"), parse_perm("231")]
    assert components(identity(3)) == [Perm((1,))] * 3
    assert components(parse_perm("3142")) == [parse_perm("3142")]
    assert components(EMPTY) == []


@given(perms_st)
def test_components_reassemble(p):
    comps = components(p)
    assert direct_sum(*comps) == p
    assert inv_count(p) + len(comps) >= len(p)


def test_delete():
    assert delete(parse_perm("34152"), {5}) == parse_perm("3412")
    p = parse_perm("34152")
    assert delete(p, set()) == p
    assert delete(p, {1, 2, 3, 4, 5}) == EMPTY
    with pytest.raises(ValueError):
        delete(p, {6})


def test_insert_value_inverts_delete():
    p = parse_perm("3412")
    grown = insert_value(p, 2, 3)
    assert len(grown) == 5
    assert delete(grown, {3}) == p


def test_contains_examples():
    assert contains(parse_perm("241563"), parse_perm("1342"))
    assert contains(parse_perm("34152"), Perm((1,)))
    assert not contains(parse_perm("34152"), parse_perm("1324"))
    assert contains(EMPTY, EMPTY)
    assert not contains(EMPTY, Perm((1,)))


@pytest.mark.parametrize("n", range(0, 7))
def test_contains_matches_bruteforce(n):
    patterns = [q for m in (1, 2, 3, 4) for q in all_perms(m)]
    for p in all_perms(n):
        for q in patterns:
            assert contains(p, q) == brute_contains(p, q), (p, q)


@pytest.mark.slow
@pytest.mark.parametrize("n", (7, 8))
def test_contains_matches_bruteforce_large(n):
    patterns = [q for m in (3, 4) for q in all_perms(m)]
    for p in all_perms(n):
        for q in patterns:
            assert contains(p, q) == brute_contains(p, q), (p, q)


def test_contains_ending_at_examples():
    assert contains_ending_at(parse_perm("132"), parse_perm("132"))
    assert not contains_ending_at(parse_perm("132"), parse_perm("1324"))
    assert contains_ending_at(parse_perm("31524"), parse_perm("132"))


@pytest.mark.parametrize("n", range(1, 7))
def test_contains_ending_at_bruteforce(n):
    patterns = [q for m in (1, 2, 3, 4) for q in all_perms(m)]
    for p in all_perms(n):
        for q in patterns:
            want = any(
                idx[-1] == n - 1
                and standardize([p[i] for i in idx]) == tuple(q)
                for idx in combinations(range(n), len(q))
            )
            assert contains_ending_at(p, q) == want, (p, q)


def test_weakly_decreasing_code_iff_avoids_132():
    for n in range(0, 8):
        for p in all_perms(n):
            code = lehmer_code(p)
            weak = all(code[i] >= code[i + 1] for i in range(n - 1))
            assert weak == avoids(p, [parse_perm("132")]), p


def test_identity_pattern_forces_zero():
    # avoiding id_m with k inversions is impossible once n >= k + m
    id3 = identity(3)
    for n in range(3, 9):
        for p in all_perms(n):
            k = inv_count(p)
            if n >= k + 3:
                assert contains(p, id3), p
