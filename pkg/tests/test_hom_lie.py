import pytest

from homhopf.errors import NotLieEndomorphism, NotMatchedPair
from homhopf.fixtures import (
    abelian_lie,
    fixture_a_prime_lie_pair,
    fixture_b_lie_pair,
    kz4_twisted_hopf,
    sl2,
    sl2_involution,
    solvable2_lie,
    triangular_conjugation,
    upper_triangular_algebra,
)
from homhopf.foundation import LinComb, LinearOperator
from homhopf.hom_core import twist_algebra
from homhopf.hom_lie import (
    HomLieData,
    LieActionData,
    MatchedPairLie,
    build_double_sum_lie,
    check_hom_lie,
    check_lie_module,
    check_matched_pair_lie,
    commutator_hom_lie,
    lie_twist,
)

e = LinComb.basis


def test_check_hom_lie_basics():
    neg = LinearOperator.from_matrix([[-1, 0], [0, -1]], inverse=[[-1, 0], [0, -1]])
    assert check_hom_lie(abelian_lie(2, neg)).passed
    assert check_hom_lie(sl2()).passed
    # perturb one sl2 structure constant: [e, f] = h + e breaks Jacobi
    bad = HomLieData(
        3,
        {(0, 1): e(2) + e(0), (2, 0): 2 * e(0), (2, 1): -2 * e(1)},
        LinearOperator.identity(range(3)),
    )
    rep = check_hom_lie(bad)
    assert not rep.passed
    assert any(eq.eq_id == "hom-jacobi" and eq.violations for eq in rep.equations)


def test_lie_twist():
    g = sl2()
    t = sl2_involution()
    tg = lie_twist(g, t)
    assert check_hom_lie(tg).passed
    # t fixes h, so [e, f]_t = t(h) = h
    assert tg.bracket(0, 1) == e(2)
    # [h, e]_t = t(2e) = -2e
    assert tg.bracket(2, 0) == -2 * e(0)

    ident = LinearOperator.identity(range(3))
    assert lie_twist(g, ident).table == g.table

    neg = LinearOperator.from_matrix([[-1]], inverse=[[-1]])
    tw = lie_twist(abelian_lie(1), neg)
    assert check_hom_lie(tw).passed

    with pytest.raises(NotLieEndomorphism):
        lie_twist(g, LinearOperator.from_matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]))


def test_commutator_hom_lie():
    h = kz4_twisted_hopf()
    gl = commutator_hom_lie(h)
    assert not gl.table  # commutative input gives the zero bracket
    assert check_hom_lie(gl).passed

    a = twist_algebra(upper_triangular_algebra(), triangular_conjugation())
    gl2 = commutator_hom_lie(a)
    assert check_hom_lie(gl2).passed
    assert gl2.table  # genuinely nonabelian


def test_lie_modules():
    g = sl2()
    adj = LieActionData(
        g,
        range(3),
        {(i, j): g.bracket(i, j) for i in range(3) for j in range(3)},
        LinearOperator.identity(range(3)),
    )
    assert check_lie_module(g, adj).passed
    zero = LieActionData(g, range(3), {}, LinearOperator.identity(range(3)))
    assert check_lie_module(g, zero).passed
    # adjoint action with a mismatched carrier map fails axiom (i)
    skew = LieActionData(
        g,
        range(3),
        {(i, j): g.bracket(i, j) for i in range(3) for j in range(3)},
        sl2_involution(),
    )
    rep = check_lie_module(g, skew)
    assert any(eq.eq_id == "lie-module-i" and eq.violations for eq in rep.equations)


def test_trivial_actions_always_matched():
    g = sl2()
    h = abelian_lie(2)
    pair = MatchedPairLie(
        g,
        h,
        LieActionData(h, range(3), {}, g.phi),
        LieActionData(g, range(2), {}, h.phi),
    )
    assert check_matched_pair_lie(pair).passed
    summed = build_double_sum_lie(pair)
    assert check_hom_lie(summed).passed
    assert summed.bracket(0, 1) == e(2)  # the sl2 part embeds untouched
    assert summed.bracket(3, 4) == LinComb.zero()


def test_fixture_b_matched_and_recovers_solvable():
    pair = fixture_b_lie_pair()
    assert check_matched_pair_lie(pair).passed
    summed = build_double_sum_lie(pair)
    assert check_hom_lie(summed).passed
    # basis: 0 = y (from g), 1 = x (from h); [y, x] = -(x |> y) = -y
    assert summed.bracket(0, 1) == -1 * e(0)
    assert summed.bracket(1, 0) == e(0)
    # so [x, y] = y: the 2-dimensional solvable algebra
    s = solvable2_lie()
    assert s.bracket(0, 1) == e(1)


def test_fixture_a_prime_matched():
    pair = fixture_a_prime_lie_pair()
    assert check_matched_pair_lie(pair).passed
    summed = build_double_sum_lie(pair)
    assert check_hom_lie(summed).passed
    assert summed.phi.apply(e(0)) == -1 * e(0)


def test_matched_pair_failure_two_dim():
    # g = <y> abelian, h = <x0, x1> abelian; x0 |> y = y and x1 <| y = x0.
    # Equation II at (x0, x1, y) reads 0 = -(x1 <| y), which fails.
    g = abelian_lie(1)
    h = abelian_lie(2)
    h_on_g = LieActionData(h, [0], {(0, 0): e(0)}, g.phi)
    g_on_h = LieActionData(g, [0, 1], {(0, 1): e(0)}, h.phi)
    pair = MatchedPairLie(g, h, h_on_g, g_on_h)
    rep = check_matched_pair_lie(pair)
    assert not rep.passed
    failed = {eq.eq_id for eq in rep.equations if not eq.passed}
    assert "matched-pair-Hom-Lie-alg-II" in failed
    with pytest.raises(NotMatchedPair):
        build_double_sum_lie(pair)
    # theorem probe, failing direction: the unchecked sum fails the Jacobi scan
    summed = build_double_sum_lie(pair, check=False)
    rep2 = check_hom_lie(summed)
    assert any(eq.eq_id == "hom-jacobi" and eq.violations for eq in rep2.equations)


def test_double_sum_iff_matched_on_fixture_corpus():
    fixtures = [fixture_b_lie_pair(), fixture_a_prime_lie_pair()]
    for pair in fixtures:
        matched = check_matched_pair_lie(pair).passed
        summed = build_double_sum_lie(pair, check=False)
        assert check_hom_lie(summed).passed == matched
