import pytest

from homhopf.errors import NotInvertibleBeta
from homhopf.fixtures import kz4_twisted_hopf, sweedler_hopf
from homhopf.foundation import LinComb, LinearOperator
from homhopf.hom_core import (
    HomCoalgebraData,
    HomHopfData,
    antipode_from_convolution,
    check_hom_algebra,
    check_hom_coalgebra,
    check_hom_hopf,
    check_hom_module,
)
from homhopf.duality import (
    Pairing,
    convolution_algebra,
    coregular_actions,
    dual_algebra_of_coalgebra,
    dual_coalgebra_of_algebra,
    dual_hom_hopf,
)

e = LinComb.basis


def trivial_hopf():
    """The ground field as a Hom-Hopf algebra."""
    ident = LinearOperator.identity([0])
    return HomHopfData(
        1, {(0, 0): e(0)}, e(0), ident, {0: LinComb({(0, 0): 1})}, {0: 1},
        LinearOperator.identity([0]), LinearOperator.identity([0]),
    )


def test_pairing_canonical():
    p = Pairing.canonical([0, 1])
    assert p.pair(e(0), e(0)) == 1
    assert p.pair(e(0), e(1)) == 0
    assert p.is_nondegenerate()
    degenerate = Pairing([0, 1], [0, 1], {(0, 0): 1})
    assert not degenerate.is_nondegenerate()


def test_convolution_trivial():
    k = trivial_hopf()
    conv = convolution_algebra(k, k)
    assert conv.dim == 1
    assert check_hom_algebra(conv).passed
    assert conv.unit == LinComb({(0, 0): 1})


def test_convolution_matches_dual_algebra():
    h = kz4_twisted_hopf()
    k = trivial_hopf()
    conv = convolution_algebra(h, k)  # maps H -> k, basis (i, 0)
    dual = dual_algebra_of_coalgebra(h)
    assert check_hom_algebra(conv).passed
    for i in range(4):
        for j in range(4):
            got = conv.mult[((i, 0), (j, 0))]
            want = dual.mult[(i, j)]
            assert got == LinComb({(k2, 0): v for k2, v in want.items()})
    assert conv.unit == LinComb({(i, 0): v for i, v in dual.unit.items()})


def test_convolution_inverse_of_identity_is_antipode():
    h = kz4_twisted_hopf()
    s = antipode_from_convolution(h)
    for i in range(4):
        assert s.apply(e(i)) == h.antipode_map(e(i))


def test_dual_algebra_of_group_like_coalgebra():
    h = kz4_twisted_hopf()
    dual = dual_algebra_of_coalgebra(h)
    assert check_hom_algebra(dual).passed
    assert dual.unit == LinComb({0: 1, 1: 1, 2: 1, 3: 1})
    # Delta_twist(e_i) = e_{-i} x e_{-i} and beta^-2 = id, so
    # (e_i* . e_j*) picks out x with (-x, -x) = (i, j): zero unless i == j.
    assert dual.mult[(1, 2)] == LinComb.zero()
    assert dual.mult[(1, 1)] == e(3)


def test_dual_algebra_requires_invertible_beta():
    h = kz4_twisted_hopf()
    broken = HomCoalgebraData(
        4, h.comult, h.counit,
        LinearOperator.from_matrix([[1, 0, 0, 0]] + [[0] * 4] * 3),
    )
    with pytest.raises(NotInvertibleBeta):
        dual_algebra_of_coalgebra(broken)


def test_dual_coalgebra_of_algebra():
    h = kz4_twisted_hopf()
    dual = dual_coalgebra_of_algebra(h)
    assert check_hom_coalgebra(dual).passed
    k = trivial_hopf()
    assert dual_coalgebra_of_algebra(k).comult[0] == LinComb({(0, 0): 1})


def test_dual_hom_hopf_suite_and_double_dual():
    for h in (kz4_twisted_hopf(), sweedler_hopf(), trivial_hopf()):
        d = dual_hom_hopf(h)
        assert check_hom_hopf(d).passed
        dd = dual_hom_hopf(d)
        assert dd.mult == h.mult
        assert dd.comult == h.comult
        assert dd.unit == h.unit
        assert dd.counit == h.counit
        for i in h.basis_keys():
            assert dd.alpha.apply(e(i)) == h.alpha.apply(e(i))
            assert dd.beta.apply(e(i)) == h.beta.apply(e(i))
            assert dd.antipode.apply(e(i)) == h.antipode.apply(e(i))


def test_coregular_actions():
    h = kz4_twisted_hopf()
    left, right = coregular_actions(h)
    assert check_hom_module(h, left).passed
    assert check_hom_module(h, right).passed
    # commutative fixture: the two coregular actions coincide
    assert left.act == right.act
    k = trivial_hopf()
    l2, r2 = coregular_actions(k)
    assert check_hom_module(k, l2).passed and check_hom_module(k, r2).passed


def test_graded_dual_dimensions():
    from homhopf.duality import graded_dual
    from homhopf.fixtures import abelian_lie
    from homhopf.uea_trees import build_truncated_uea

    u1 = build_truncated_uea(abelian_lie(1), 3, 2)
    d1 = graded_dual(u1)
    assert d1.dims_per_degree() == [1, 1, 1, 1]
    assert d1.dims_per_degree()[0] == 1  # degree zero pairs with the unit
    assert d1.counit_map(d1.unit_elem()) == 1

    u2 = build_truncated_uea(abelian_lie(2), 2, 1)
    d2 = graded_dual(u2)
    assert d2.dims_per_degree() == [1, 2, 3]
    # identity pairing matrices per degree
    for deg in range(3):
        mat = d2.pairing_matrix(deg)
        assert all(
            mat[i][j] == (1 if i == j else 0)
            for i in range(len(mat))
            for j in range(len(mat))
        )


def test_graded_dual_product_respects_budget():
    from homhopf.duality import graded_dual
    from homhopf.fixtures import abelian_lie
    from homhopf.uea_trees import build_truncated_uea
    from homhopf.errors import TruncationOverflow
    import pytest as _pytest

    u = build_truncated_uea(abelian_lie(1), 2, 1)
    d = graded_dual(u)
    keys = sorted(d.basis_keys(), key=d.degree)
    one, y1, y2 = keys
    # (y1)* . (y1)* picks out the coefficient of the split in Delta(y^2)
    prod = d.product(e(y1), e(y1))
    assert prod == 2 * e(y2)
    with _pytest.raises(TruncationOverflow):
        d.product(e(y1), e(y2))


def test_dual_algebra_of_cotwist_coalgebra():
    from homhopf.fixtures import cyclic_group_hopf, inversion_operator

    h = cyclic_group_hopf(4)
    t = inversion_operator(4)
    comult = {i: h.comult_map(t.apply(e(i))) for i in range(4)}
    c = HomCoalgebraData(4, comult, h.counit, t)
    assert check_hom_coalgebra(c).passed
    dual = dual_algebra_of_coalgebra(c)
    assert check_hom_algebra(dual).passed
