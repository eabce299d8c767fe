from itertools import product
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schubcalc.partitions import (
    BoxedPartition,
    Partition,
    chain_count,
    conjugate,
    covers,
    dim_schur,
    dim_symgroup,
    dual,
    enumerate_pmn,
    leq,
    max_integral_dim,
)

import oracles

BOXES = [(m, n) for n in range(2, 11) for m in range(1, n) if m + n <= 10]


def P(*parts):
    return Partition(parts)


def B(parts, m, n):
    return BoxedPartition.of(parts, m, n)


@st.composite
def boxed(draw, max_sum=10):
    n = draw(st.integers(2, max_sum - 1))
    m = draw(st.integers(1, n - 1))
    parts = sorted(draw(st.lists(st.integers(0, n - m), min_size=m, max_size=m)), reverse=True)
    return B(parts, m, n)


class TestPartition:
    def test_normalizes_trailing_zeros(self):
        assert P(2, 1, 0, 0) == P(2, 1)
        assert hash(P(2, 1, 0)) == hash(P(2, 1))
        assert P(2, 1).padded(4) == (2, 1, 0, 0)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            P(1, 2)
        with pytest.raises(ValueError):
            P(2, -1)

    def test_parse(self):
        assert Partition.parse("2,1") == P(2, 1)
        assert Partition.parse("") == P()
        assert Partition.parse("()") == P()
        assert Partition.parse("(3,3,0)") == P(3, 3)

    def test_box_membership(self):
        with pytest.raises(ValueError):
            B((3,), 2, 4)
        with pytest.raises(ValueError):
            B((1, 1, 1), 2, 4)


class TestEnumerate:
    def test_p24(self):
        got = [b.parts for b in enumerate_pmn(2, 4)]
        assert got == [(), (1,), (1, 1), (2,), (2, 1), (2, 2)]

    def test_counts(self):
        assert len(enumerate_pmn(3, 6)) == 20
        assert [b.parts for b in enumerate_pmn(1, 2)] == [(), (1,)]

    @pytest.mark.parametrize("m,n", BOXES)
    def test_matches_bruteforce(self, m, n):
        got = sorted(b.parts for b in enumerate_pmn(m, n))
        assert got == sorted(oracles.box_partitions(m, n))
        assert len(got) == comb(n, m)

    def test_sorted_by_size_then_parts(self):
        keys = [(b.size, b.parts) for b in enumerate_pmn(3, 7)]
        assert keys == sorted(keys)

    @pytest.mark.parametrize("m,n", [(0, 3), (3, 3), (4, 2)])
    def test_invalid(self, m, n):
        with pytest.raises(ValueError):
            enumerate_pmn(m, n)


class TestDualConjugate:
    def test_examples(self):
        assert dual(B((2, 1), 3, 6)).parts == (3, 2, 1)
        assert dual(B((), 2, 5)).parts == (3, 3)
        assert dual(B((1, 1), 2, 4)).parts == (1, 1)
        c = conjugate(B((2, 1), 2, 5))
        assert (c.parts, c.m, c.n) == ((2, 1), 3, 5)
        assert conjugate(B((3,), 2, 5)).parts == (1, 1, 1)
        assert conjugate(B((2, 1), 3, 6)).parts == (2, 1)

    @given(boxed())
    def test_involutions(self, a):
        assert dual(dual(a)) == a
        assert conjugate(conjugate(a)) == a
        assert conjugate(a).size == a.size
        assert conjugate(dual(a)) == dual(conjugate(a))
        assert a.codim + dual(a).codim == a.m * a.width

    @pytest.mark.parametrize("m,n", BOXES)
    def test_order_relations_exhaustive(self, m, n):
        elems = enumerate_pmn(m, n)
        for a, b in product(elems, repeat=2):
            x = leq(a, b)
            assert x == leq(dual(b), dual(a))
            assert x == leq(conjugate(a), conjugate(b))
            assert x == oracles.part_leq(a.parts, b.parts)


class TestLeqCovers:
    def test_leq_examples(self):
        assert leq(P(1, 1), P(2, 1))
        assert not leq(P(2), P(1, 1))
        assert leq(P(3, 2), P(3, 2))

    def test_cover_examples(self):
        assert {c.parts for c in covers(B((1,), 2, 4))} == {(2,), (1, 1)}
        assert covers(B((2, 2), 2, 4)) == []
        assert [c.parts for c in covers(B((2, 1), 2, 4))] == [(2, 2)]

    @given(boxed())
    def test_covers_are_one_box_up(self, a):
        for c in covers(a):
            assert c.size == a.size + 1 and leq(a, c)
        expected = {
            b.parts for b in enumerate_pmn(a.m, a.n) if b.size == a.size + 1 and leq(a, b)
        }
        assert {c.parts for c in covers(a)} == expected


class TestChains:
    def test_examples(self):
        assert chain_count(P(), P(2, 1)) == 2
        assert chain_count(P(2, 1), P(2, 1)) == 1
        assert chain_count(P(), P(3, 3, 3)) == 42
        assert chain_count(P(2), P(1, 1)) == 0

    def test_examples_against_oracles(self):
        # frozen from the brute-force enumerations in oracles.py
        assert len(oracles.all_chains((), (2, 1))) == 2
        assert len(oracles.all_chains((), (3, 3, 3))) == 42
        assert oracles.syt_count((3, 3, 3)) == 42

    @pytest.mark.parametrize("m,n", [b for b in BOXES if b[0] * (b[1] - b[0]) <= 9])
    def test_against_enumeration(self, m, n):
        elems = enumerate_pmn(m, n)
        for a, b in product(elems, repeat=2):
            assert chain_count(a, b) == len(oracles.all_chains(a.parts, b.parts))

    @pytest.mark.parametrize("m,n", BOXES)
    def test_frobenius_consistency(self, m, n):
        for b in enumerate_pmn(m, n):
            assert chain_count(P(), b) == dim_symgroup(b)

    @given(boxed())
    @settings(max_examples=60)
    def test_recurrence(self, a):
        top = dual(BoxedPartition.of((), a.m, a.n))
        for b in [top, *enumerate_pmn(a.m, a.n)[-3:]]:
            if a.partition == b.partition:
                continue
            rhs = sum(chain_count(c, b) for c in covers(a) if leq(c, b))
            assert chain_count(a, b) == rhs

    def test_big_integers(self):
        # 8 x 8 square: far beyond 64 bits
        n = chain_count(P(), P(*([8] * 8)))
        assert n == dim_symgroup(P(*([8] * 8)))
        assert n > 2**63


class TestDimensions:
    def test_symgroup_examples(self):
        assert dim_symgroup(P(2, 1)) == 2
        assert dim_symgroup(P(2, 2)) == 2
        assert all(dim_symgroup(P(p)) == 1 for p in range(1, 8))

    def test_schur_examples(self):
        assert dim_schur(P(2, 2, 2), 5) == 50
        assert dim_schur(P(3, 1, 1, 1), 5) == 70
        assert all(dim_schur(P(1), m) == m for m in range(1, 9))

    def test_closed_forms(self):
        for m in range(3, 11):
            assert 144 * dim_schur(P(2, 2, 2), m) == m**2 * (m - 1) ** 2 * (m - 2) * (m + 1)
            assert 72 * dim_schur(P(3, 1, 1, 1), m) == m * (m**2 - 1) * (m**2 - 4) * (m - 3)

    @pytest.mark.parametrize(
        "shape", [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (2, 1, 1), (3, 2), (2, 2, 1)]
    )
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_schur_against_tableaux(self, shape, m):
        assert dim_schur(P(*shape), m) == oracles.schur_dim_by_weights(shape, m)

    @pytest.mark.parametrize("shape", [(2, 1), (3, 2), (2, 2, 1), (3, 1, 1), (4, 2)])
    def test_symgroup_against_tableaux(self, shape):
        assert dim_symgroup(P(*shape)) == oracles.syt_count(shape)

    @given(st.lists(st.integers(0, 5), max_size=6), st.integers(1, 6))
    def test_schur_zero_iff_too_long(self, parts, m):
        a = Partition(sorted(parts, reverse=True))
        assert (dim_schur(a, m) == 0) == (len(a) > m)

    @pytest.mark.parametrize("m,n", [(m, n) for n in range(2, 9) for m in range(1, n) if m * (n - m) <= 12])
    def test_exterior_algebra_decomposition(self, m, n):
        total = m * (n - m)
        for p in range(total + 1):
            s = sum(
                dim_schur(a, m) * dim_schur(a.partition.conjugate(), n - m)
                for a in enumerate_pmn(m, n)
                if a.size == p
            )
            assert s == comb(total, p)


class TestMaxIntegralDim:
    def test_examples(self):
        assert max_integral_dim(B((2,), 2, 4)) == 2
        assert max_integral_dim(B((3,), 3, 6)) == 6
        assert max_integral_dim(B((2, 1), 3, 6)) == 3

    def test_empty_is_error(self):
        with pytest.raises(ValueError):
            max_integral_dim(B((), 2, 4))

    @pytest.mark.parametrize("m,n", BOXES)
    def test_against_enumeration(self, m, n):
        elems = enumerate_pmn(m, n)
        for a in elems[1:]:
            brute = max(b.size for b in elems if not leq(a, b))
            assert max_integral_dim(a) == brute
