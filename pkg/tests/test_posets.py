from math import comb

import pytest

from schubcalc.partitions import Partition, dim_schur
from schubcalc.posets import (
    EIII,
    EVII,
    PINNED,
    UNPINNED,
    Grassmannian,
    HssSpace,
    IsotropicN,
    LabelError,
    LagrangianL,
    Quadric,
    assign_dim_labels,
    build_poset,
    dual_node,
    frobenius_shape,
    poincare_polynomial,
    shifted_dual,
    strict_partitions,
)

import oracles

SPACES = (
    [Grassmannian(m, n) for n in range(2, 8) for m in range(1, n)]
    + [Quadric(n) for n in range(3, 11)]
    + [IsotropicN(m) for m in range(4, 8)]
    + [LagrangianL(m) for m in range(3, 7)]
    + [EIII, EVII]
)


def graph(p):
    return oracles.hasse_graph({x.id: x.degree for x in p.nodes}, p.edges)


def chains_bottom_to_top(p):
    up = p.upper_covers()
    count = {}
    for n in reversed(p.nodes):
        count[n.id] = 1 if not up[n.id] else sum(count[b] for b in up[n.id])
    return count[p.nodes[0].id]


class TestSpaces:
    def test_parse_roundtrip(self):
        for s in SPACES:
            assert HssSpace.parse(s.id) == s
        assert HssSpace.parse("gr:2,5").params == (2, 5)

    @pytest.mark.parametrize("text", ["gr:3,3", "gr:0,2", "gr:2", "quadric:2", "nplus:1", "lag:1", "e3:1", "e8", "gr:a,b", ""])
    def test_invalid(self, text):
        with pytest.raises(ValueError):
            HssSpace.parse(text)

    def test_dimensions(self):
        assert EIII.dimension == 16 and EVII.dimension == 27
        assert IsotropicN(5).dimension == 10
        assert LagrangianL(3).dimension == 6

    def test_low_range_warns(self):
        with pytest.warns(UserWarning):
            build_poset(IsotropicN(3))
        with pytest.warns(UserWarning):
            build_poset(LagrangianL(2))


class TestStructure:
    @pytest.mark.parametrize("space", SPACES, ids=str)
    def test_invariants(self, space):
        p = build_poset(space)
        assert p.problems() == []
        assert p.dimension == space.dimension
        assert poincare_polynomial(p)[-1] == 1

    def test_counts(self):
        assert len(build_poset(Grassmannian(2, 5))) == 10
        assert len(build_poset(EIII)) == 27
        assert len(build_poset(EVII)) == 56
        assert len(build_poset(IsotropicN(5))) == 16
        assert len(build_poset(LagrangianL(4))) == 16
        assert poincare_polynomial(build_poset(Quadric(6))) == [1, 1, 1, 2, 1, 1, 1]
        assert poincare_polynomial(build_poset(Quadric(7))) == [1] * 8

    def test_e3_poincare(self):
        assert poincare_polynomial(build_poset(EIII)) == [1, 1, 1, 1, 2, 2, 2, 2, 3, 2, 2, 2, 2, 1, 1, 1, 1]

    @pytest.mark.parametrize("m,n", [(m, n) for n in range(2, 9) for m in range(1, n)])
    def test_grassmannian_is_box(self, m, n):
        p = build_poset(Grassmannian(m, n))
        assert oracles.isomorphic(graph(p), oracles.box_hasse(m, n))
        assert poincare_polynomial(p) == oracles.gaussian_binomial(n, m)

    @pytest.mark.parametrize("m", range(3, 8))
    def test_strict_poincare(self, m):
        lag = poincare_polynomial(build_poset(LagrangianL(m)))
        assert lag == oracles.poly_product([[1] + [0] * (i - 1) + [1] for i in range(1, m + 1)])
        if m >= 4:
            nplus = poincare_polynomial(build_poset(IsotropicN(m)))
            assert nplus == oracles.poly_product([[1] + [0] * (i - 1) + [1] for i in range(1, m)])

    def test_low_rank_coincidences(self):
        # N+_4 is a six-dimensional quadric; L_2 is a three-dimensional one
        assert oracles.isomorphic(graph(build_poset(IsotropicN(4))), graph(build_poset(Quadric(6))))
        with pytest.warns(UserWarning):
            lag2 = build_poset(LagrangianL(2))
        assert oracles.isomorphic(graph(lag2), graph(build_poset(Quadric(3))))
        assert oracles.isomorphic(graph(build_poset(Grassmannian(2, 4))), graph(build_poset(Quadric(4))))

    def test_middle_duals(self):
        q6 = build_poset(Quadric(6))
        assert dual_node(q6, "3+") == "3-"
        q8 = build_poset(Quadric(8))
        assert dual_node(q8, "4+") == "4+"
        assert dual_node(q8, "4-") == "4-"

    def test_grassmannian_duals(self):
        p = build_poset(Grassmannian(3, 6))
        assert dual_node(p, "(2,1)") == "(3,2,1)"
        assert dual_node(p, "()") == "(3,3,3)"

    @pytest.mark.parametrize("space,count", [(Grassmannian(3, 6), 42), (Grassmannian(2, 5), 5), (Quadric(6), 2), (Quadric(7), 1)])
    def test_chain_counts(self, space, count):
        assert chains_bottom_to_top(build_poset(space)) == count

    def test_chain_count_matches_leq(self):
        p = build_poset(LagrangianL(4))
        above = p.above()
        for a in p.nodes:
            for b in p.nodes:
                if b.id in above[a.id]:
                    assert a.degree <= b.degree

    @pytest.mark.parametrize("bound", range(1, 7))
    def test_shifted_dual_involution(self, bound):
        top = sum(range(1, bound + 1))
        for s in strict_partitions(bound):
            d = shifted_dual(s, bound)
            assert sum(d) == top - sum(s)
            assert shifted_dual(d, bound) == s

    def test_node_lookup(self):
        p = build_poset(Grassmannian(2, 4))
        assert "(2,1)" in p
        with pytest.raises(ValueError):
            p.node("(3)")


class TestFrobenius:
    def test_examples(self):
        assert frobenius_shape((3,), 1) == Partition((3, 1, 1, 1))
        assert frobenius_shape((2, 1), 1) == Partition((2, 2, 2))
        assert frobenius_shape((3,), 0) == Partition((4, 1, 1))
        assert frobenius_shape((2, 1), 0) == Partition((3, 3))
        assert frobenius_shape((), 0) == Partition(())

    @pytest.mark.parametrize("shift", [0, 1])
    def test_sizes(self, shift):
        for s in strict_partitions(6):
            lam = frobenius_shape(s, shift)
            # each hook has arm + leg + 1 = 2 alpha cells
            assert lam.size == 2 * sum(s)
            assert lam.conjugate() == frobenius_shape(s, 1 - shift)


class TestLabels:
    @pytest.mark.parametrize("space", [s for s in SPACES if s.family != "quadric"], ids=str)
    def test_labels_decompose_exterior_algebra(self, space):
        p = assign_dim_labels(build_poset(space))
        total = space.dimension
        by_degree = {}
        for n in p.nodes:
            by_degree[n.degree] = by_degree.get(n.degree, 0) + n.dim_label
        assert by_degree == {d: comb(total, d) for d in range(total + 1)}

    def test_grassmannian_values(self):
        p = assign_dim_labels(build_poset(Grassmannian(2, 4)))
        assert p.node("(1)").dim_label == 4
        assert p.node("(2)").dim_label == 3
        assert all(n.dim_status is None for n in p.nodes)

    def test_isotropic_degree_three(self):
        m = 6
        p = assign_dim_labels(build_poset(IsotropicN(m)))
        three = {n.id: n.dim_label for n in p.nodes if n.degree == 3}
        assert three == {"(3)": dim_schur((3, 1, 1, 1), m), "(2,1)": dim_schur((2, 2, 2), m)}
        assert sum(three.values()) == comb(comb(m, 2), 3)
        assert {n.dim_status for n in p.nodes if n.degree == 3} == {PINNED}
        assert {n.dim_status for n in p.nodes if n.degree != 3} == {UNPINNED}

    def test_lagrangian_degree_three(self):
        m = 5
        p = assign_dim_labels(build_poset(LagrangianL(m)))
        three = {n.id: n.dim_label for n in p.nodes if n.degree == 3}
        assert three == {"(3)": dim_schur((4, 1, 1), m), "(2,1)": dim_schur((3, 3), m)}
        assert sum(three.values()) == comb(m * (m + 1) // 2, 3)

    def test_exceptional_pinned_values(self):
        e3 = assign_dim_labels(build_poset(EIII))
        got = {}
        for n in e3.nodes:
            got.setdefault(n.degree, set()).add(n.dim_label)
        assert got[1] == {16}
        assert got[4] == {770, 1050}
        assert got[5] == {672, 3696}
        assert 660 in got[8]
        e7 = assign_dim_labels(build_poset(EVII))
        got7 = {}
        for n in e7.nodes:
            got7.setdefault(n.degree, set()).add(n.dim_label)
        assert got7[1] == {27}
        assert 43758 in got7[6]
        assert 100386 in got7[10]

    def test_exceptional_status(self):
        e3 = assign_dim_labels(build_poset(EIII))
        pinned = [n for n in e3.nodes if n.dim_status == PINNED]
        assert sorted(n.dim_label for n in pinned) == [16, 660, 672, 770, 1050, 3696]
        assert all(n.label.startswith("[") for n in e3.nodes)

    def test_quadric_labels_refused(self):
        with pytest.raises(LabelError):
            assign_dim_labels(build_poset(Quadric(5)))
