"""Hom-algebra, Hom-coalgebra, Hom-bialgebra and Hom-Hopf structure records,
twisting constructors, and exhaustive axiom checkers that scan every basis
tuple and report witnesses for each failed equation.

Checkers talk to a small duck-typed protocol (product / comult / counit /
alpha / beta / antipode on LinComb arguments) so that the degree-truncated
objects built elsewhere can reuse them; a TruncationOverflow raised inside
an equation marks that tuple as skipped and feeds the coverage accounting.
"""

from fractions import Fraction

from .errors import (
    AntipodeNotInvertible,
    NotAssociative,
    NotBialgebraMorphism,
    NotCommutingPair,
    NotEndomorphism,
    TruncationOverflow,
)
from .foundation import LinComb, LinearOperator, solve_linear, swap_pairs

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# check reports


class Violation:
    def __init__(self, eq_id, witness, lhs, rhs):
        self.eq_id = eq_id
        self.witness = witness
        self.lhs = lhs
        self.rhs = rhs

    def __repr__(self):
        return "Violation(%s @ %r)" % (self.eq_id, (self.witness,))


class EquationResult:
    def __init__(self, eq_id):
        self.eq_id = eq_id
        self.checked = 0
        self.skipped = 0
        self.violations = []

    @property
    def passed(self):
        return not self.violations

    def coverage(self):
        total = self.checked + self.skipped
        return Fraction(self.checked, total) if total else ONE


class CheckReport:
    """Outcome of an axiom scan: per-equation counts plus witnesses."""

    def __init__(self):
        self.equations = []
        self._by_id = {}

    def equation(self, eq_id):
        if eq_id not in self._by_id:
            res = EquationResult(eq_id)
            self._by_id[eq_id] = res
            self.equations.append(res)
        return self._by_id[eq_id]

    @property
    def passed(self):
        return all(eq.passed for eq in self.equations)

    @property
    def violations(self):
        out = []
        for eq in self.equations:
            out.extend(eq.violations)
        return out

    def total_checked(self):
        return sum(eq.checked for eq in self.equations)

    def total_skipped(self):
        return sum(eq.skipped for eq in self.equations)

    def merge(self, other, prefix=""):
        for eq in other.equations:
            mine = self.equation(prefix + eq.eq_id)
            mine.checked += eq.checked
            mine.skipped += eq.skipped
            mine.violations.extend(
                Violation(prefix + v.eq_id, v.witness, v.lhs, v.rhs)
                for v in eq.violations
            )
        return self

    def run(self, eq_id, tuples, fn):
        """Evaluate fn over tuples; fn returns (lhs, rhs) or raises
        TruncationOverflow to skip the tuple."""
        res = self.equation(eq_id)
        for tup in tuples:
            try:
                lhs, rhs = fn(*tup)
            except TruncationOverflow:
                res.skipped += 1
                continue
            res.checked += 1
            if lhs != rhs:
                res.violations.append(Violation(eq_id, tup, lhs, rhs))
        return res

    def summary_lines(self, label=None):
        lines = []
        for eq in self.equations:
            status = "ok  " if eq.passed else "FAIL"
            extra = ""
            if eq.skipped:
                extra = ", %d skipped" % eq.skipped
            lines.append(
                "%s %-28s (%d tuples%s)" % (status, eq.eq_id, eq.checked, extra)
            )
            for v in eq.violations[:3]:
                lines.append(
                    "      witness %r: lhs=%r rhs=%r" % (v.witness, v.lhs, v.rhs)
                )
        return lines


# ---------------------------------------------------------------------------
# structure records


class HomAlgebraData:
    """Hom-algebra as tables: mult (i,j) -> LinComb, unit vector, twist alpha.

    Basis indices default to range(dim); pass keys for other index sets
    (pair bases of map spaces, dual bases, ...).
    """

    is_truncated = False

    def __init__(self, dim, mult, unit, alpha, keys=None):
        self.dim = dim
        self.keys = list(keys) if keys is not None else list(range(dim))
        self.mult = dict(mult)
        self.unit = unit
        self.alpha = alpha

    def basis_keys(self):
        return list(self.keys)

    def degree(self, key):
        return 0

    def unit_elem(self):
        return self.unit

    def product(self, x, y):
        out = LinComb()
        for i, a in x.items():
            for j, b in y.items():
                out = out.add_scaled(self.mult[(i, j)], a * b)
        return out

    def alpha_map(self, x):
        return self.alpha.apply(x)

    def alpha_inv(self, x):
        return self.alpha.apply_inverse(x)

    def alpha_pow(self, n, x):
        return self.alpha.power(n, x)


class HomCoalgebraData:
    """Hom-coalgebra as tables: comult i -> pair LinComb, counit, twist beta."""

    is_truncated = False

    def __init__(self, dim, comult, counit, beta, keys=None):
        self.dim = dim
        self.keys = list(keys) if keys is not None else list(range(dim))
        self.comult = dict(comult)
        self.counit = {i: Fraction(c) for i, c in dict(counit).items()}
        self.beta = beta

    def basis_keys(self):
        return list(self.keys)

    def degree(self, key):
        return 0

    def comult_map(self, x):
        out = LinComb()
        for i, a in x.items():
            out = out.add_scaled(self.comult[i], a)
        return out

    def counit_map(self, x):
        return sum((a * self.counit.get(i, ZERO) for i, a in x.items()), ZERO)

    def beta_map(self, x):
        return self.beta.apply(x)

    def beta_inv(self, x):
        return self.beta.apply_inverse(x)

    def beta_pow(self, n, x):
        return self.beta.power(n, x)


class HomBialgebraData(HomAlgebraData, HomCoalgebraData):
    """Hom-bialgebra of (alpha, beta)-type on one table basis."""

    def __init__(self, dim, mult, unit, alpha, comult, counit, beta, keys=None):
        HomAlgebraData.__init__(self, dim, mult, unit, alpha, keys=keys)
        HomCoalgebraData.__init__(self, dim, comult, counit, beta, keys=keys)


class HomHopfData(HomBialgebraData):
    """Hom-Hopf algebra: a Hom-bialgebra plus an antipode operator."""

    def __init__(self, dim, mult, unit, alpha, comult, counit, beta, antipode, keys=None):
        HomBialgebraData.__init__(
            self, dim, mult, unit, alpha, comult, counit, beta, keys=keys
        )
        self.antipode = antipode

    def antipode_map(self, x):
        return self.antipode.apply(x)


class ActionData:
    """An algebra action on a carrier: table (h, m) -> LinComb, carrier map gamma."""

    def __init__(self, algebra, carrier_keys, act, gamma, side="left", carrier=None):
        self.algebra = algebra
        self.carrier_keys = list(carrier_keys)
        self.act = dict(act)
        self.gamma = gamma
        self.side = side
        self.carrier = carrier  # optional carrier object (e.g. a truncated algebra)

    def apply(self, h, m):
        """Bilinear extension; h over algebra keys, m over carrier keys."""
        out = LinComb()
        for i, a in h.items():
            for j, b in m.items():
                out = out.add_scaled(self.act[(i, j)], a * b)
        return out


class CoactionData:
    """A coalgebra coaction on a carrier: table m -> LinComb over (m', h) pairs."""

    def __init__(self, coalgebra, carrier_keys, coact, theta, carrier=None):
        self.coalgebra = coalgebra
        self.carrier_keys = list(carrier_keys)
        self.coact = dict(coact)
        self.theta = theta
        self.carrier = carrier

    def apply(self, m):
        out = LinComb()
        for j, b in m.items():
            out = out.add_scaled(self.coact[j], b)
        return out


# ---------------------------------------------------------------------------
# constructors


def _is_algebra_endo(a, t):
    """t(x*y) == t(x)*t(y) on all basis pairs and t fixes the unit."""
    for i in a.basis_keys():
        for j in a.basis_keys():
            lhs = t.apply(a.mult[(i, j)])
            rhs = a.product(t.apply(LinComb.basis(i)), t.apply(LinComb.basis(j)))
            if lhs != rhs:
                return False
    return t.apply(a.unit) == a.unit


def _is_coalgebra_endo(c, t):
    for i in c.basis_keys():
        e = LinComb.basis(i)
        lhs = c.comult_map(t.apply(e))
        rhs = LinComb()
        for (k1, k2), v in c.comult_map(e).items():
            rhs = rhs.add_scaled(
                t.apply(LinComb.basis(k1)) @ t.apply(LinComb.basis(k2)), v
            )
        if lhs != rhs:
            return False
        if c.counit_map(t.apply(e)) != c.counit_map(e):
            return False
    return True


def twist_algebra(assoc, t):
    """Deform an associative algebra along an algebra endomorphism t.

    Returns the Hom-algebra with multiplication t(x*y) and twist t.
    """
    plain = check_hom_algebra(
        HomAlgebraData(assoc.dim, assoc.mult, assoc.unit, LinearOperator.identity(assoc.basis_keys()))
    )
    if not plain.passed:
        raise NotAssociative("input algebra fails associativity/unit checks")
    if not _is_algebra_endo(assoc, t):
        raise NotEndomorphism("t is not a unital algebra endomorphism")
    mult = {key: t.apply(val) for key, val in assoc.mult.items()}
    return HomAlgebraData(assoc.dim, mult, assoc.unit, t)


def hopf_twist(h, a, b):
    """Deform a classical Hopf algebra along commuting bialgebra endos a, b.

    Result: multiplication a(x*y), comultiplication (b x b)Delta, twists
    (a, b), antipode unchanged.
    """
    if not (h.alpha.is_identity() and h.beta.is_identity()):
        raise NotAssociative("hopf_twist expects a classical Hopf algebra input")
    for t in (a, b):
        if not _is_algebra_endo(h, t) or not _is_coalgebra_endo(h, t):
            raise NotBialgebraMorphism("twisting map is not a bialgebra endomorphism")
    for k in h.basis_keys():
        e = LinComb.basis(k)
        if a.apply(b.apply(e)) != b.apply(a.apply(e)):
            raise NotCommutingPair("twisting maps do not commute on basis %r" % k)
    mult = {key: a.apply(val) for key, val in h.mult.items()}
    comult = {i: h.comult_map(b.apply(LinComb.basis(i))) for i in h.basis_keys()}
    return HomHopfData(h.dim, mult, h.unit, a, comult, h.counit, b, h.antipode)


def op_cop_variants(h):
    """Opposite and coopposite Hom-Hopf algebras, both with antipode S^-1."""
    try:
        s_inv = h.antipode.inverted()
    except Exception as exc:
        raise AntipodeNotInvertible(str(exc))
    mult_op = {(i, j): h.mult[(j, i)] for (i, j) in h.mult}
    comult_op = {i: swap_pairs(h.comult[i]) for i in h.comult}
    op = HomHopfData(h.dim, mult_op, h.unit, h.alpha, h.comult, h.counit, h.beta, s_inv)
    cop = HomHopfData(h.dim, h.mult, h.unit, h.alpha, comult_op, h.counit, h.beta, s_inv)
    return op, cop


# ---------------------------------------------------------------------------
# checkers


def check_hom_algebra(a):
    """Twisted associativity, unit diagrams, multiplicativity of the twist."""
    rep = CheckReport()
    keys = a.basis_keys()
    unit = a.unit_elem()
    bas = [LinComb.basis(k) for k in keys]

    rep.run(
        "hom-assoc",
        [(i, j, k) for i in range(len(keys)) for j in range(len(keys)) for k in range(len(keys))],
        lambda i, j, k: (
            a.product(a.alpha_map(bas[i]), a.product(bas[j], bas[k])),
            a.product(a.product(bas[i], bas[j]), a.alpha_map(bas[k])),
        ),
    )
    rep.run(
        "hom-unit",
        [(i,) for i in range(len(keys))],
        lambda i: (a.product(unit, bas[i]), a.alpha_map(bas[i])),
    )
    rep.run(
        "hom-unit-right",
        [(i,) for i in range(len(keys))],
        lambda i: (a.product(bas[i], unit), a.alpha_map(bas[i])),
    )
    rep.run(
        "alpha-multiplicative",
        [(i, j) for i in range(len(keys)) for j in range(len(keys))],
        lambda i, j: (
            a.alpha_map(a.product(bas[i], bas[j])),
            a.product(a.alpha_map(bas[i]), a.alpha_map(bas[j])),
        ),
    )
    rep.run("alpha-unit", [()], lambda: (a.alpha_map(unit), unit))
    return rep


def check_hom_coalgebra(c):
    """Twisted coassociativity, counit diagrams, comultiplicativity of beta."""
    rep = CheckReport()
    keys = c.basis_keys()
    bas = [LinComb.basis(k) for k in keys]

    def coassoc(i):
        d = c.comult_map(bas[i])
        lhs = LinComb()
        rhs = LinComb()
        for (k1, k2), v in d.items():
            lhs = lhs.add_scaled(
                c.beta_map(LinComb.basis(k1)) @ c.comult_map(LinComb.basis(k2)), v
            )
            rhs = rhs.add_scaled(
                c.comult_map(LinComb.basis(k1)) @ c.beta_map(LinComb.basis(k2)), v
            )
        # flatten (a, (b, c)) vs ((a, b), c) to common 3-leg keys
        lhs = LinComb({(a, b, cc): w for (a, (b, cc)), w in lhs.items()})
        rhs = LinComb({(a, b, cc): w for ((a, b), cc), w in rhs.items()})
        return lhs, rhs

    rep.run("hom-coassoc", [(i,) for i in range(len(keys))], coassoc)

    def counit_left(i):
        d = c.comult_map(bas[i])
        out = LinComb()
        for (k1, k2), v in d.items():
            out = out.add_scaled(LinComb.basis(k2), v * c.counit_map(LinComb.basis(k1)))
        return out, c.beta_map(bas[i])

    def counit_right(i):
        d = c.comult_map(bas[i])
        out = LinComb()
        for (k1, k2), v in d.items():
            out = out.add_scaled(LinComb.basis(k1), v * c.counit_map(LinComb.basis(k2)))
        return out, c.beta_map(bas[i])

    rep.run("hom-counit", [(i,) for i in range(len(keys))], counit_left)
    rep.run("hom-counit-right", [(i,) for i in range(len(keys))], counit_right)
    rep.run(
        "eps-beta",
        [(i,) for i in range(len(keys))],
        lambda i: (
            LinComb.basis("k", c.counit_map(c.beta_map(bas[i]))),
            LinComb.basis("k", c.counit_map(bas[i])),
        ),
    )

    def beta_comult(i):
        lhs = c.comult_map(c.beta_map(bas[i]))
        rhs = LinComb()
        for (k1, k2), v in c.comult_map(bas[i]).items():
            rhs = rhs.add_scaled(
                c.beta_map(LinComb.basis(k1)) @ c.beta_map(LinComb.basis(k2)), v
            )
        return lhs, rhs

    rep.run("beta-comultiplicative", [(i,) for i in range(len(keys))], beta_comult)
    return rep


def _comult_product(b, x, y):
    """Componentwise product of comultiplications: Delta(x) * Delta(y)."""
    out = LinComb()
    for (k1, k2), v in b.comult_map(x).items():
        for (l1, l2), w in b.comult_map(y).items():
            p1 = b.product(LinComb.basis(k1), LinComb.basis(l1))
            p2 = b.product(LinComb.basis(k2), LinComb.basis(l2))
            out = out.add_scaled(p1 @ p2, v * w)
    return out


def check_hom_bialgebra(b, include_components=True):
    """The nine compatibility conditions between tables, twists, unit, counit."""
    rep = CheckReport()
    if include_components:
        rep.merge(check_hom_algebra(b))
        rep.merge(check_hom_coalgebra(b))
    keys = b.basis_keys()
    bas = [LinComb.basis(k) for k in keys]
    unit = b.unit_elem()
    kone = LinComb.basis("k", 1)

    rep.run("bialg-1", [()], lambda: (b.comult_map(unit), unit @ unit))
    rep.run(
        "bialg-2",
        [(i, j) for i in range(len(keys)) for j in range(len(keys))],
        lambda i, j: (
            b.comult_map(b.product(bas[i], bas[j])),
            _comult_product(b, bas[i], bas[j]),
        ),
    )
    rep.run(
        "bialg-3",
        [(i,) for i in range(len(keys))],
        lambda i: (
            b.comult_map(b.alpha_map(bas[i])),
            _pair_apply(b.alpha_map, b.alpha_map, b.comult_map(bas[i])),
        ),
    )
    rep.run("bialg-4", [()], lambda: (LinComb.basis("k", b.counit_map(unit)), kone))
    rep.run(
        "bialg-5",
        [(i, j) for i in range(len(keys)) for j in range(len(keys))],
        lambda i, j: (
            LinComb.basis("k", b.counit_map(b.product(bas[i], bas[j]))),
            LinComb.basis("k", b.counit_map(bas[i]) * b.counit_map(bas[j])),
        ),
    )
    rep.run(
        "bialg-6",
        [(i,) for i in range(len(keys))],
        lambda i: (
            LinComb.basis("k", b.counit_map(b.alpha_map(bas[i]))),
            LinComb.basis("k", b.counit_map(bas[i])),
        ),
    )
    rep.run("bialg-7", [()], lambda: (b.beta_map(unit), unit))
    rep.run(
        "bialg-8",
        [(i, j) for i in range(len(keys)) for j in range(len(keys))],
        lambda i, j: (
            b.beta_map(b.product(bas[i], bas[j])),
            b.product(b.beta_map(bas[i]), b.beta_map(bas[j])),
        ),
    )
    rep.run(
        "bialg-9",
        [(i,) for i in range(len(keys))],
        lambda i: (b.beta_map(b.alpha_map(bas[i])), b.alpha_map(b.beta_map(bas[i]))),
    )
    return rep


def _pair_apply(f, g, t):
    out = LinComb()
    for (k1, k2), v in t.items():
        out = out.add_scaled(f(LinComb.basis(k1)) @ g(LinComb.basis(k2)), v)
    return out


def check_hom_hopf(h, include_components=True):
    """Antipode axioms plus the derived antipode properties as line items."""
    rep = CheckReport()
    if include_components:
        rep.merge(check_hom_bialgebra(h))
    keys = h.basis_keys()
    bas = [LinComb.basis(k) for k in keys]
    unit = h.unit_elem()

    def conv(side, i):
        d = h.comult_map(bas[i])
        out = LinComb()
        for (k1, k2), v in d.items():
            x, y = LinComb.basis(k1), LinComb.basis(k2)
            if side == "left":
                x = h.antipode_map(x)
            else:
                y = h.antipode_map(y)
            out = out.add_scaled(h.product(x, y), v)
        return out, h.counit_map(bas[i]) * unit

    rep.run("antipode-left", [(i,) for i in range(len(keys))], lambda i: conv("left", i))
    rep.run("antipode-right", [(i,) for i in range(len(keys))], lambda i: conv("right", i))
    rep.run(
        "antipode-alpha",
        [(i,) for i in range(len(keys))],
        lambda i: (h.antipode_map(h.alpha_map(bas[i])), h.alpha_map(h.antipode_map(bas[i]))),
    )
    rep.run(
        "antipode-beta",
        [(i,) for i in range(len(keys))],
        lambda i: (h.antipode_map(h.beta_map(bas[i])), h.beta_map(h.antipode_map(bas[i]))),
    )
    # derived properties
    rep.run("antipode-unit", [()], lambda: (h.antipode_map(unit), unit))
    rep.run(
        "eps-antipode",
        [(i,) for i in range(len(keys))],
        lambda i: (
            LinComb.basis("k", h.counit_map(h.antipode_map(bas[i]))),
            LinComb.basis("k", h.counit_map(bas[i])),
        ),
    )
    rep.run(
        "antipode-antimultiplicative",
        [(i, j) for i in range(len(keys)) for j in range(len(keys))],
        lambda i, j: (
            h.antipode_map(h.product(bas[i], bas[j])),
            h.product(h.antipode_map(bas[j]), h.antipode_map(bas[i])),
        ),
    )
    rep.run(
        "antipode-anticomultiplicative",
        [(i,) for i in range(len(keys))],
        lambda i: (
            h.comult_map(h.antipode_map(bas[i])),
            swap_pairs(_pair_apply(h.antipode_map, h.antipode_map, h.comult_map(bas[i]))),
        ),
    )
    return rep


def check_hom_module(a, m):
    """Hom-module axioms for an action with carrier map gamma.

    Left:  (p*q) |> gamma(v) = alpha(p) |> (q |> v)  and  1 |> v = gamma(v).
    Right: gamma(v) <| (p*q) = (v <| p) <| alpha(q)  and  v <| 1 = gamma(v).
    """
    rep = CheckReport()
    akeys = a.basis_keys()
    ckeys = m.carrier_keys
    unit = a.unit_elem()

    def assoc_left(i, j, k):
        p, q = LinComb.basis(i), LinComb.basis(j)
        v = LinComb.basis(k)
        lhs = m.apply(a.product(p, q), m.gamma.apply(v))
        rhs = m.apply(a.alpha_map(p), m.apply(q, v))
        return lhs, rhs

    def assoc_right(i, j, k):
        # act(h, v) stores v <| h; gamma(v) <| (p*q) = (v <| p) <| alpha(q)
        p, q = LinComb.basis(i), LinComb.basis(j)
        v = LinComb.basis(k)
        lhs = m.apply(a.product(p, q), m.gamma.apply(v))
        rhs = m.apply(a.alpha_map(q), m.apply(p, v))
        return lhs, rhs

    triples = [(i, j, k) for i in akeys for j in akeys for k in ckeys]
    rep.run("hom-module-assoc", triples, assoc_left if m.side == "left" else assoc_right)
    rep.run(
        "hom-module-unit",
        [(k,) for k in ckeys],
        lambda k: (m.apply(unit, LinComb.basis(k)), m.gamma.apply(LinComb.basis(k))),
    )
    return rep


def check_hom_comodule(c, m):
    """Right Hom-comodule axioms: (theta x Delta)nabla = (nabla x beta)nabla
    and (id x eps)nabla = theta."""
    rep = CheckReport()

    def coassoc(k):
        v = LinComb.basis(k)
        d = m.apply(v)
        lhs = LinComb()
        rhs = LinComb()
        for (m1, h1), coeff in d.items():
            lhs = lhs.add_scaled(
                m.theta.apply(LinComb.basis(m1)) @ c.comult_map(LinComb.basis(h1)),
                coeff,
            )
            inner = m.apply(LinComb.basis(m1))
            rhs = rhs.add_scaled(inner @ c.beta_map(LinComb.basis(h1)), coeff)
        # flatten ((m, h), h') vs (m, (h, h')) to a common 3-leg shape
        lhs = LinComb({(a, b, cc): v2 for (a, (b, cc)), v2 in lhs.items()})
        rhs = LinComb({(a, b, cc): v2 for ((a, b), cc), v2 in rhs.items()})
        return lhs, rhs

    rep.run("hom-comodule-coassoc", [(k,) for k in m.carrier_keys], coassoc)

    def counit(k):
        v = LinComb.basis(k)
        out = LinComb()
        for (m1, h1), coeff in m.apply(v).items():
            out = out.add_scaled(LinComb.basis(m1), coeff * c.counit_map(LinComb.basis(h1)))
        return out, m.theta.apply(v)

    rep.run("hom-comodule-counit", [(k,) for k in m.carrier_keys], counit)
    return rep


def hom_inverse(a, x, n_max=8):
    """Smallest n <= n_max and y with alpha^n(x*y) = alpha^n(y*x) = unit.

    Returns (y, n) or None.  Solved as a linear system in y for each n.
    """
    keys = a.basis_keys()
    unit = a.unit_elem()
    for n in range(n_max + 1):
        eqs = []
        for mirror in (False, True):
            # alpha^n(x*e_j) as a column per unknown j
            cols = {}
            for j in keys:
                ej = LinComb.basis(j)
                prod = a.product(ej, x) if mirror else a.product(x, ej)
                cols[j] = a.alpha_pow(n, prod)
            for out_key in keys:
                coeffs = {j: cols[j].get(out_key) for j in keys if cols[j].get(out_key)}
                eqs.append((coeffs, unit.get(out_key)))
        sol = solve_linear(eqs, keys)
        if sol is not None:
            return LinComb(sol), n
    return None


def antipode_from_convolution(h):
    """Solve for the convolution inverse of the identity map.

    Unknown operator S' satisfies mult(S'(b^-2 h1) x b^-2 h2) = eps(h) unit
    for every basis element; returns the operator or None when no solution
    exists.  Independent route to the antipode used as a uniqueness oracle.
    """
    keys = h.basis_keys()
    unknowns = [(i, j) for i in keys for j in keys]  # S'(e_i) = sum_j s_ij e_j
    eqs = []
    unit = h.unit_elem()
    for k in keys:
        # insert beta^-2 on both legs of Delta(e_k)
        shifted = LinComb()
        for (k1, k2), v in h.comult_map(LinComb.basis(k)).items():
            shifted = shifted.add_scaled(
                h.beta_pow(-2, LinComb.basis(k1)) @ h.beta_pow(-2, LinComb.basis(k2)), v
            )
        rhs_vec = h.counit_map(LinComb.basis(k)) * unit
        coeffs_by_out = {}
        for (k1, k2), v in shifted.items():
            # S'(e_k1) * e_k2 = sum_j s_{k1,j} (e_j * e_k2)
            for j in keys:
                prod = h.product(LinComb.basis(j), LinComb.basis(k2))
                for out_key, w in prod.items():
                    cur = coeffs_by_out.setdefault(out_key, {})
                    cur[(k1, j)] = cur.get((k1, j), ZERO) + v * w
        for out_key in keys:
            eqs.append((coeffs_by_out.get(out_key, {}), rhs_vec.get(out_key)))
    sol = solve_linear(eqs, unknowns)
    if sol is None:
        return None
    cols = {}
    for i in keys:
        cols[i] = LinComb({j: sol[(i, j)] for j in keys})
    return LinearOperator(cols, check=False)
