"""Finite-dimensional duality for Hom-structures: convolution algebras on
map spaces, the dual Hom-algebra of a Hom-coalgebra, the dual Hom-coalgebra
of a Hom-algebra (the finite-dimensional case of the restricted dual), the
dual Hom-Hopf algebra, coregular actions, and the degreewise dual of a
truncated enveloping algebra.

Conventions: the dual of a coalgebra multiplies as
(f * g)(c) = f(beta^-2 c_(1)) g(beta^-2 c_(2)) with twist f -> f o beta^-1,
and the dual of an algebra comultiplies through
delta(f)(a x a') = f(alpha^-2(a.a')) with twist f -> f o alpha^-1.
"""

from fractions import Fraction

from .errors import (
    NotInvertible,
    NotInvertibleAlpha,
    NotInvertibleBeta,
    TruncationOverflow,
)
from .foundation import LinComb, LinearOperator, RowSpace

ZERO = Fraction(0)


def transpose_operator(op, keys):
    """Dual operator on the dual basis: column i is sum_k [op e_k]_i e_k."""
    cols = {i: LinComb() for i in keys}
    for k in keys:
        img = op.apply(LinComb.basis(k))
        for i, v in img.items():
            cols[i] = cols[i] + LinComb({k: v})
    return LinearOperator(cols, check=False)


def _require_inverse(op, err):
    try:
        op.inverted()
    except NotInvertible as exc:
        raise err(str(exc))


class Pairing:
    """Bilinear pairing given by an evaluation table (f-key, x-key) -> scalar."""

    def __init__(self, left_keys, right_keys, eval_table):
        self.left_keys = list(left_keys)
        self.right_keys = list(right_keys)
        self.eval_table = {k: Fraction(v) for k, v in dict(eval_table).items() if v}

    @classmethod
    def canonical(cls, keys):
        return cls(keys, keys, {(k, k): 1 for k in keys})

    def pair(self, f, x):
        out = ZERO
        for i, a in f.items():
            for j, b in x.items():
                out += a * b * self.eval_table.get((i, j), ZERO)
        return out

    def is_nondegenerate(self):
        rows = RowSpace()
        for i in self.left_keys:
            rows.add(LinComb({j: self.eval_table.get((i, j), ZERO) for j in self.right_keys}))
        return rows.rank == len(self.left_keys) == len(self.right_keys)


def convolution_algebra(c, a):
    """The Hom-algebra structure on the space of linear maps c -> a.

    Basis maps are pairs (i, j): send the coalgebra basis vector i to the
    algebra basis vector j.  Product, twist and unit are
      (F * G)(x) = F(beta^-2 x_(1)) . G(beta^-2 x_(2)),
      (alpha* F)(x) = alpha(F(beta^-1 x)),   unit = eta o eps.
    """
    from .hom_core import HomAlgebraData

    _require_inverse(c.beta, NotInvertibleBeta)
    ckeys = c.basis_keys()
    akeys = a.basis_keys()
    pair_keys = [(i, j) for i in ckeys for j in akeys]

    # precompute (beta^-2 x beta^-2) Delta(e_x)
    shifted = {}
    for x in ckeys:
        d = LinComb()
        for (k1, k2), v in c.comult_map(LinComb.basis(x)).items():
            d = d.add_scaled(
                c.beta_pow(-2, LinComb.basis(k1)) @ c.beta_pow(-2, LinComb.basis(k2)),
                v,
            )
        shifted[x] = d

    mult = {}
    for (i, j) in pair_keys:
        for (i2, j2) in pair_keys:
            out = LinComb()
            prod = a.product(LinComb.basis(j), LinComb.basis(j2))
            for x in ckeys:
                coeff = ZERO
                for (k1, k2), v in shifted[x].items():
                    if k1 == i and k2 == i2:
                        coeff += v
                if coeff:
                    for m, w in prod.items():
                        out = out + LinComb({(x, m): coeff * w})
            mult[((i, j), (i2, j2))] = out

    unit = LinComb()
    for x in ckeys:
        eps = c.counit_map(LinComb.basis(x))
        if eps:
            for m, w in a.unit_elem().items():
                unit = unit + LinComb({(x, m): eps * w})

    alpha_cols = {}
    for (i, j) in pair_keys:
        col = LinComb()
        aj = a.alpha_map(LinComb.basis(j))
        for x in ckeys:
            ci = c.beta_pow(-1, LinComb.basis(x)).get(i)
            if ci:
                for m, w in aj.items():
                    col = col + LinComb({(x, m): ci * w})
        alpha_cols[(i, j)] = col

    return HomAlgebraData(
        len(pair_keys), mult, unit, LinearOperator(alpha_cols, check=False), keys=pair_keys
    )


def dual_algebra_of_coalgebra(c):
    """The dual Hom-algebra of a finite Hom-coalgebra on the dual basis."""
    from .hom_core import HomAlgebraData

    _require_inverse(c.beta, NotInvertibleBeta)
    keys = c.basis_keys()
    shifted = {}
    for x in keys:
        d = LinComb()
        for (k1, k2), v in c.comult_map(LinComb.basis(x)).items():
            d = d.add_scaled(
                c.beta_pow(-2, LinComb.basis(k1)) @ c.beta_pow(-2, LinComb.basis(k2)),
                v,
            )
        shifted[x] = d
    mult = {}
    for i in keys:
        for j in keys:
            out = LinComb()
            for x in keys:
                coeff = shifted[x].get((i, j))
                if coeff:
                    out = out + LinComb({x: coeff})
            mult[(i, j)] = out
    unit = LinComb({x: c.counit_map(LinComb.basis(x)) for x in keys})
    alpha = transpose_operator(c.beta.inverted(), keys)
    return HomAlgebraData(len(keys), mult, unit, alpha, keys=keys)


def dual_coalgebra_of_algebra(a):
    """The dual Hom-coalgebra of a finite Hom-algebra (restricted dual
    specialized to finite dimension)."""
    from .hom_core import HomCoalgebraData

    _require_inverse(a.alpha, NotInvertibleAlpha)
    keys = a.basis_keys()
    comult = {k: LinComb() for k in keys}
    for i in keys:
        for j in keys:
            prod = a.alpha_pow(-2, a.product(LinComb.basis(i), LinComb.basis(j)))
            for k, v in prod.items():
                comult[k] = comult[k] + LinComb({(i, j): v})
    counit = {k: a.unit_elem().get(k) for k in keys}
    beta = transpose_operator(a.alpha.inverted(), keys)
    return HomCoalgebraData(len(keys), comult, counit, beta, keys=keys)


def dual_hom_hopf(h):
    """The dual Hom-Hopf algebra of a finite-dimensional Hom-Hopf algebra."""
    from .hom_core import HomHopfData

    alg = dual_algebra_of_coalgebra(h)
    coalg = dual_coalgebra_of_algebra(h)
    keys = h.basis_keys()
    antipode = transpose_operator(h.antipode, keys)
    return HomHopfData(
        len(keys),
        alg.mult,
        alg.unit,
        alg.alpha,
        coalg.comult,
        coalg.counit,
        coalg.beta,
        antipode,
        keys=keys,
    )


def coregular_actions(a):
    """The two coregular actions of a Hom-algebra on its dual.

    Left:  (p |> f)(x) = f(alpha^-2(x . p))
    Right: (f <| p)(x) = f(alpha^-2(p . x))
    Both carriers use the structure map f -> f o alpha^-1.
    """
    from .hom_core import ActionData

    _require_inverse(a.alpha, NotInvertibleAlpha)
    keys = a.basis_keys()
    gamma = transpose_operator(a.alpha.inverted(), keys)

    def table(mirror):
        act = {}
        for p in keys:
            for q in keys:
                col = LinComb()
                for x in keys:
                    lhs = (
                        a.product(LinComb.basis(p), LinComb.basis(x))
                        if mirror
                        else a.product(LinComb.basis(x), LinComb.basis(p))
                    )
                    v = a.alpha_pow(-2, lhs).get(q)
                    if v:
                        col = col + LinComb({x: v})
                act[(p, q)] = col
        return act

    left = ActionData(a, keys, table(False), gamma, side="left")
    right = ActionData(a, keys, table(True), gamma, side="right")
    return left, right


class TruncatedDual:
    """Degreewise dual of a truncated enveloping algebra.

    Carries a total algebra structure (convolution against the coproduct,
    which preserves degree) and a partial coalgebra structure: the dual
    coproduct is available degree-by-degree only when the primal quotient
    is degree-graded, and raises TruncationOverflow otherwise.  Pairing is
    the degreewise dual-basis pairing against the normal forms.
    """

    is_truncated = True
    is_graded_dual = True

    def __init__(self, v):
        self.v = v
        self.keys = list(v.basis_keys())
        self.truncation_degree = v.truncation_degree
        self._comult_cache = {}

    # -- bookkeeping

    def basis_keys(self):
        return list(self.keys)

    def degree(self, key):
        return self.v.degree(key)

    def dims_per_degree(self):
        dims = [0] * (self.truncation_degree + 1)
        for k in self.keys:
            dims[self.degree(k)] += 1
        return dims

    def pairing_matrix(self, d):
        keys = [k for k in self.keys if self.degree(k) == d]
        return [[1 if i == j else 0 for j in keys] for i in keys]

    def pair(self, f, x):
        """Evaluate a functional (over dual keys) on a primal combination."""
        out = ZERO
        for k, a in x.items():
            b = f.get(k)
            if b:
                out += a * b
        return out

    # -- Hom-algebra structure (total)

    def unit_elem(self):
        out = {}
        for k in self.keys:
            c = self.v.counit_map(LinComb.basis(k))
            if c:
                out[k] = c
        return LinComb(out)

    def product(self, f, g):
        # a degree-a times a degree-b functional is supported in degree
        # a+b; refusing past the bound keeps the truncation honest
        for k1 in f:
            for k2 in g:
                d = self.degree(k1) + self.degree(k2)
                if d > self.truncation_degree:
                    raise TruncationOverflow(
                        "dual product degree %d exceeds truncation %d"
                        % (d, self.truncation_degree)
                    )
        return self.product_dropped(f, g)

    def product_dropped(self, f, g):
        """Convolution product projected to the retained degrees (the image
        of the true product under the truncation, for table comparisons)."""
        out = LinComb()
        for om in self.keys:
            d = self.v.comult_map(LinComb.basis(om))
            coeff = ZERO
            for (k1, k2), v in d.items():
                a = self.pair(f, self.v.beta_pow(-2, LinComb.basis(k1)))
                if a:
                    b = self.pair(g, self.v.beta_pow(-2, LinComb.basis(k2)))
                    if b:
                        coeff += v * a * b
            if coeff:
                out = out + LinComb({om: coeff})
        return out

    def alpha_map(self, f):
        # (beta_V^-1)* = precompose with beta_V^-1
        return self._precompose(f, -1, use_beta=True)

    def alpha_inv(self, f):
        return self._precompose(f, 1, use_beta=True)

    def alpha_pow(self, n, f):
        return self._precompose(f, -n, use_beta=True)

    # -- Hom-coalgebra structure (partial)

    def comult_map(self, f):
        if not getattr(self.v, "graded", False):
            raise TruncationOverflow(
                "dual coproduct needs a degree-graded primal quotient"
            )
        out = LinComb()
        for k, c in f.items():
            out = out.add_scaled(self._comult_basis(k), c)
        return out

    def _comult_basis(self, k):
        if k in self._comult_cache:
            return self._comult_cache[k]
        out = LinComb()
        dk = self.degree(k)
        for i in self.keys:
            di = self.degree(i)
            if di > dk:
                continue
            for j in self.keys:
                if di + self.degree(j) != dk:
                    continue
                prod = self.v.alpha_pow(
                    -2, self.v.product(LinComb.basis(i), LinComb.basis(j))
                )
                c = prod.get(k)
                if c:
                    out = out + LinComb({(i, j): c})
        self._comult_cache[k] = out
        return out

    def counit_map(self, f):
        return self.pair(f, self.v.unit_elem())

    def beta_map(self, f):
        return self._precompose(f, -1, use_beta=False)

    def beta_inv(self, f):
        return self._precompose(f, 1, use_beta=False)

    def beta_pow(self, n, f):
        return self._precompose(f, -n, use_beta=False)

    def antipode_map(self, f):
        out = {}
        for k in self.keys:
            c = self.pair(f, self.v.antipode_map(LinComb.basis(k)))
            if c:
                out[k] = c
        return LinComb(out)

    # -- helpers

    def _precompose(self, f, power, use_beta):
        """Return f o (map^power) with map = beta_V (use_beta) or alpha_V."""
        if power == 0:
            return f
        out = {}
        for k in self.keys:
            x = LinComb.basis(k)
            x = self.v.beta_pow(power, x) if use_beta else self.v.alpha_pow(power, x)
            c = self.pair(f, x)
            if c:
                out[k] = c
        return LinComb(out)


def graded_dual(u):
    """Degreewise dual of a truncated enveloping algebra, with the
    identity pairing against its normal-form basis."""
    return TruncatedDual(u)
