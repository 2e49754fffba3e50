"""Action/coaction dualization and semidualization: a matched pair of
Hom-Hopf algebras becomes a mutual pair for the dual of the second
factor, with the pairing conventions

    u_(0) <u_(1), v> = alpha_V^-2(v) |> u        (coaction from action)
    <u |>* f, v>     = <f, alpha_V^-2(v) <| phi_U^-2(u)>   (dual action)

Finite factors dualize into honest table data; a truncated enveloping
factor dualizes degreewise, and the mutual-pair equations are then
evaluated pairing-wise.  The pipeline entry point composes: build both
enveloping algebras, lift the actions, check the matched pair,
semidualize, check the mutual pair, and build the bicrossproduct.
"""

from .cross_products import (
    GradedMutualPair,
    MatchedPairHopf,
    MutualPairHopf,
    build_bicrossproduct,
    check_matched_pair_hopf,
    check_mutual_pair,
)
from .duality import dual_hom_hopf, graded_dual, transpose_operator
from .errors import OrderConstraintViolated
from .foundation import FuncOperator, LinComb
from .hom_core import ActionData, CoactionData, check_hom_hopf
from .uea_trees import lift_to_Uh_action


class SemidualConfig:
    """Truncation degree, weight bound, and the finite-order enforcement flag."""

    def __init__(
        self,
        truncation_degree=2,
        weight_bound=3,
        enforce_order_constraint=True,
    ):
        if truncation_degree < 1:
            raise ValueError("truncation degree must be at least 1")
        self.truncation_degree = truncation_degree
        self.weight_bound = weight_bound
        self.enforce_order_constraint = enforce_order_constraint


def _check_order(obj, label, enforce):
    """alpha^4 beta^-2 must be the identity on every basis vector."""
    if not enforce:
        return
    for k in obj.basis_keys():
        x = LinComb.basis(k)
        if obj.alpha_pow(4, obj.beta_pow(-2, x)) != x:
            raise OrderConstraintViolated(
                "%s fails alpha^4 beta^-2 = id on basis %r" % (label, k)
            )


def coaction_from_action(v, carrier_keys, left_table, gamma):
    """Turn a left action of the finite Hopf object v into a right coaction
    over its dual: nabla(u) = sum_w (alpha^-2(w) |> u) x w*."""
    vk = v.basis_keys()

    def lt(vec, u):
        out = LinComb()
        for i, a in vec.items():
            for j, b in u.items():
                out = out.add_scaled(left_table[(i, j)], a * b)
        return out

    coact = {}
    for ukey in carrier_keys:
        out = LinComb()
        for w in vk:
            part = lt(v.alpha_pow(-2, LinComb.basis(w)), LinComb.basis(ukey))
            for k2, c in part.items():
                out = out + LinComb({(k2, w): c})
        coact[ukey] = out
    dual = dual_hom_hopf(v)
    return CoactionData(dual, carrier_keys, coact, gamma)


def action_from_coaction(v, coaction):
    """Inverse reading of the pairing: v |> u = u_(0) <u_(1), alpha^2(v)>."""
    table = {}
    for vkey in v.basis_keys():
        shifted = v.alpha_pow(2, LinComb.basis(vkey))
        for ukey in coaction.carrier_keys:
            out = LinComb()
            for (k2, w), c in coaction.coact[ukey].items():
                out = out.add_scaled(LinComb.basis(k2), c * shifted.get(w))
            table[(vkey, ukey)] = out
    return table


def comodule_coalgebra_from_module_coalgebra(v, carrier_keys, left_table, gamma):
    """Same dualization; named for the module-coalgebra to comodule-coalgebra
    upgrade, which the mutual-pair checker then verifies."""
    return coaction_from_action(v, carrier_keys, left_table, gamma)


def dual_left_action_from_right_action(u, v, right_table, gamma=None):
    """Left action of u on the dual of v from a right action of u on v:
    (u |>* f)(w) = f(gamma^-2(w) <| phi^-2(u)), carrier map (gamma^-1)*."""
    vk = v.basis_keys()

    def rt(vec, uu):
        out = LinComb()
        for i, a in vec.items():
            for j, b in uu.items():
                out = out.add_scaled(right_table[(i, j)], a * b)
        return out

    act = {}
    for ukey in u.basis_keys():
        shifted_u = u.alpha_pow(-2, LinComb.basis(ukey))
        images = {
            w: rt(v.alpha_pow(-2, LinComb.basis(w)), shifted_u) for w in vk
        }
        for z in vk:
            out = LinComb()
            for w, val in images.items():
                c = val.get(z)
                if c:
                    out = out + LinComb({w: c})
            act[(ukey, z)] = out
    carrier = transpose_operator(v.alpha.inverted(), vk) if gamma is None else gamma
    return ActionData(u, vk, act, carrier, side="left")


def semidualize(p, cfg):
    """Replace the second factor of a matched pair by its dual, producing
    mutual-pair data (dual action and pairing coaction)."""
    U, V = p.u, p.v
    _check_order(V, "second factor", cfg.enforce_order_constraint)
    _check_order(U, "first factor", cfg.enforce_order_constraint)

    if getattr(V, "is_truncated", False):
        dual = graded_dual(V)
        act = {}
        for ukey in U.basis_keys():
            shifted_u = U.alpha_pow(-2, LinComb.basis(ukey))
            images = {
                w: p.rt(V.alpha_pow(-2, LinComb.basis(w)), shifted_u)
                for w in V.basis_keys()
            }
            for z in dual.basis_keys():
                out = LinComb()
                for w, val in images.items():
                    c = val.get(z)
                    if c:
                        out = out + LinComb({w: c})
                act[(ukey, z)] = out
        return GradedMutualPair(dual, U, act, p)

    dual = dual_hom_hopf(V)
    act = dual_left_action_from_right_action(U, V, p.right).act
    coact = coaction_from_action(
        V, U.basis_keys(), p.left, FuncOperator(U.alpha_map, U.alpha_inv)
    ).coact
    return MutualPairHopf(dual, U, act, coact)


class HomLieHopfResult:
    """Everything the end-to-end pipeline produces."""

    def __init__(self, ug, uh, matched_pair, matched_report, mutual, mutual_report,
                 bicross, suite_report):
        self.ug = ug
        self.uh = uh
        self.matched_pair = matched_pair
        self.matched_report = matched_report
        self.mutual = mutual
        self.mutual_report = mutual_report
        self.bicross = bicross
        self.suite_report = suite_report

    @property
    def passed(self):
        return self.matched_report.passed and self.mutual_report.passed and (
            self.suite_report.passed
        )


def build_hom_lie_hopf(g, h, pair, cfg):
    """Full pipeline from a matched pair of Hom-Lie algebras to the
    bicrossproduct of the dual enveloping algebra with the enveloping
    algebra, carrying every intermediate check report."""
    if cfg.enforce_order_constraint:
        for lie, label in ((g, "g"), (h, "h")):
            for k in range(lie.dim):
                x = LinComb.basis(k)
                if lie.phi_pow(4, x) != x:
                    raise OrderConstraintViolated(
                        "twist of %s is not of order dividing 4" % label
                    )
    left, right = lift_to_Uh_action(
        pair, cfg.truncation_degree, cfg.weight_bound
    )
    ug, uh = left.carrier, right.carrier
    right_vu = {(v, u): val for (u, v), val in right.act.items()}
    mp = MatchedPairHopf(ug, uh, left.act, right_vu)
    matched_report = check_matched_pair_hopf(mp)
    mutual = semidualize(mp, cfg)
    mutual_report = check_mutual_pair(mutual)
    bicross = build_bicrossproduct(mutual, check=False)
    suite_report = check_hom_hopf(bicross)
    return HomLieHopfResult(
        ug, uh, mp, matched_report, mutual, mutual_report, bicross, suite_report
    )
