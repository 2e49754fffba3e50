"""Weighted planar binary trees with Lie-algebra decorations, the free
Hom-Hopf structure they carry (grafting, the shift map, the leaf-subset
coproduct, the mirror antipode), the reassociation and enveloping ideals,
and the degree-truncated universal enveloping Hom-Hopf algebra of a
Hom-Lie algebra together with the lifted matched-pair actions.

Tree keys
---------
The unit is the string key "1".  An undecorated weighted tree is
(shape, weights); a decorated tree is (shape, weights, decorations) where
shape is a nested tuple (() for a leaf, (left, right) for a join), weights
are naturals, and decorations index the Lie algebra basis.  Linear
combinations of decorated trees realize multilinearity of decorations.

Quotients are computed by linear closure and row reduction per degree,
never by rewriting.  Row-reduction pivots prefer high degree and high
weight, so normal forms concentrate in low filtration levels and weight
zero, matching the classical picture when the twist is the identity.
"""

from collections import deque
from fractions import Fraction
from itertools import product as iproduct

from .errors import NotHomLie, NotInvertible, TruncationOverflow
from .foundation import FuncOperator, LinComb, RowSpace
from .hom_core import ActionData, CheckReport
from .hom_lie import check_hom_lie

UNIT = "1"
LEAF = ()

_shape_cache = {1: [LEAF]}


def shapes(n):
    """All planar binary tree shapes with n leaves (Catalan enumeration)."""
    if n not in _shape_cache:
        out = []
        for k in range(1, n):
            for left in shapes(k):
                for right in shapes(n - k):
                    out.append((left, right))
        _shape_cache[n] = out
    return _shape_cache[n]


def leaf_count(shape):
    if shape == LEAF:
        return 1
    return leaf_count(shape[0]) + leaf_count(shape[1])


def shape_code(shape):
    """Preorder serialization: stable total order on shapes."""
    if shape == LEAF:
        return (0,)
    return (1,) + shape_code(shape[0]) + shape_code(shape[1])


def tree_degree(key):
    if key == UNIT:
        return 0
    return len(key[1])


def max_degree(x):
    """Largest degree appearing in the support of a tree combination."""
    return max((tree_degree(k) for k in x), default=0)


def pivot_order(key):
    """Sort key for row reduction: high degree and high weight first."""
    if key == UNIT:
        return (1,)
    shape, weights = key[0], key[1]
    decs = key[2] if len(key) == 3 else ()
    return (0, -len(weights), tuple(-w for w in weights), shape_code(shape), decs)


def display_order(key):
    """Sort key for listings: unit first, then by degree, weight, shape."""
    if key == UNIT:
        return (0,)
    shape, weights = key[0], key[1]
    decs = key[2] if len(key) == 3 else ()
    return (1, len(weights), weights, shape_code(shape), decs)


def tree_label(key):
    if key == UNIT:
        return "1"
    shape, weights = key[0], key[1]
    decs = key[2] if len(key) == 3 else None

    def render(sh, pos):
        if sh == LEAF:
            i = pos[0]
            pos[0] += 1
            if decs is None:
                return str(weights[i])
            return "%d;g%d" % (weights[i], decs[i])
        return "(%s v %s)" % (render(sh[0], pos), render(sh[1], pos))

    return render(shape, [0])


class TreeOps:
    """Grafting, shift map, coproduct, counit and antipode on tree keys.

    phi = None selects undecorated weighted trees, where the shift map adds
    one to every weight.  With a twist operator phi, trees are decorated and
    the shift map applies phi to every decoration, leaving weights alone.
    """

    def __init__(self, phi=None):
        self.phi = phi
        self._shift_cache = {}
        self._coproduct_cache = {}
        self._antipode_cache = {}

    # -- shift map

    def a_shift_key(self, key, power=1):
        if key == UNIT or power == 0:
            return LinComb.basis(key)
        cached = self._shift_cache.get((key, power))
        if cached is not None:
            return cached
        if self.phi is None:
            shape, weights = key
            shifted = tuple(w + power for w in weights)
            if any(w < 0 for w in shifted):
                raise NotInvertible("negative weight under inverse shift")
            out = LinComb.basis((shape, shifted))
        else:
            shape, weights, decs = key
            per_leaf = []
            for d in decs:
                img = self.phi.power(power, LinComb.basis(d))
                per_leaf.append(list(img.items()))
            terms = {}
            for combo in iproduct(*per_leaf):
                newdecs = tuple(d for d, _ in combo)
                coeff = Fraction(1)
                for _, c in combo:
                    coeff *= c
                k2 = (shape, weights, newdecs)
                terms[k2] = terms.get(k2, Fraction(0)) + coeff
            out = LinComb(terms)
        self._shift_cache[(key, power)] = out
        return out

    def a_shift(self, x, power=1):
        return x.map_basis(lambda k: self.a_shift_key(k, power))

    # -- grafting

    def graft_keys(self, k1, k2):
        if k1 == UNIT and k2 == UNIT:
            return LinComb.basis(UNIT)
        if k2 == UNIT:
            return self.a_shift_key(k1)
        if k1 == UNIT:
            return self.a_shift_key(k2)
        if self.phi is None:
            return LinComb.basis(((k1[0], k2[0]), k1[1] + k2[1]))
        return LinComb.basis(((k1[0], k2[0]), k1[1] + k2[1], k1[2] + k2[2]))

    def graft(self, x, y):
        out = LinComb()
        for k1, a in x.items():
            for k2, b in y.items():
                out = out.add_scaled(self.graft_keys(k1, k2), a * b)
        return out

    # -- coproduct over leaf subsets

    def _restrict(self, shape, key, keep, offset):
        """Replace the leaves outside `keep` by the unit and collapse."""
        if shape == LEAF:
            if offset in keep:
                if self.phi is None:
                    return LinComb.basis((LEAF, (key[1][offset],)))
                return LinComb.basis((LEAF, (key[1][offset],), (key[2][offset],)))
            return LinComb.basis(UNIT)
        nl = leaf_count(shape[0])
        left = self._restrict(shape[0], key, keep, offset)
        right = self._restrict(shape[1], key, keep, offset + nl)
        return self.graft(left, right)

    def coproduct_key(self, key):
        if key == UNIT:
            return LinComb.basis((UNIT, UNIT))
        cached = self._coproduct_cache.get(key)
        if cached is not None:
            return cached
        n = tree_degree(key)
        out = LinComb()
        for bits in iproduct((0, 1), repeat=n):
            keep = {i for i in range(n) if bits[i]}
            rest = self._restrict(key[0], key, keep, 0)
            other = self._restrict(key[0], key, set(range(n)) - keep, 0)
            out = out + (rest @ other)
        self._coproduct_cache[key] = out
        return out

    def coproduct(self, x):
        out = LinComb()
        for k, a in x.items():
            out = out.add_scaled(self.coproduct_key(k), a)
        return out

    def counit_key(self, key):
        return Fraction(1 if key == UNIT else 0)

    def counit(self, x):
        return sum((a for k, a in x.items() if k == UNIT), Fraction(0))

    # -- antipode: signed mirror

    def antipode_key(self, key):
        if key == UNIT:
            return LinComb.basis(UNIT)
        cached = self._antipode_cache.get(key)
        if cached is not None:
            return cached
        shape = key[0]
        if shape == LEAF:
            out = -1 * LinComb.basis(key)
        else:
            nl = leaf_count(shape[0])
            if self.phi is None:
                kl = (shape[0], key[1][:nl])
                kr = (shape[1], key[1][nl:])
            else:
                kl = (shape[0], key[1][:nl], key[2][:nl])
                kr = (shape[1], key[1][nl:], key[2][nl:])
            out = self.graft(self.antipode_key(kr), self.antipode_key(kl))
        self._antipode_cache[key] = out
        return out

    def antipode(self, x):
        return x.map_basis(self.antipode_key)

    # -- basis enumeration

    def basis_keys(self, degree, weight_bound, lie_dim=None):
        out = []
        for shape in shapes(degree):
            for weights in iproduct(range(weight_bound + 1), repeat=degree):
                if self.phi is None:
                    out.append((shape, weights))
                else:
                    for decs in iproduct(range(lie_dim), repeat=degree):
                        out.append((shape, weights, decs))
        out.sort(key=display_order)
        return out


# ---------------------------------------------------------------------------
# spec-level convenience wrappers


def graft(x, y, phi=None):
    return TreeOps(phi).graft(x, y)


def a_shift(x, phi=None):
    return TreeOps(phi).a_shift(x)


def tree_coproduct(x, phi=None):
    return TreeOps(phi).coproduct(x)


def tree_counit_antipode(x, phi=None):
    ops = TreeOps(phi)
    return ops.counit(x), ops.antipode(x)


# ---------------------------------------------------------------------------
# ideals


def _close_under_ops(rowspace, seeds, ops, basis_by_degree, n_max):
    """Span closure under grafting by basis trees and the shift map.

    Every inserted vector that enlarges the span is grafted against all
    basis trees within the degree budget and shifted both ways; linearity
    makes applying the closure maps to generators sufficient.
    """
    queue = deque(seeds)
    while queue:
        v = queue.popleft()
        if not v or not rowspace.add(v):
            continue
        d = max_degree(v)
        for e in range(1, n_max - d + 1):
            for t in basis_by_degree.get(e, ()):
                tb = LinComb.basis(t)
                queue.append(ops.graft(v, tb))
                queue.append(ops.graft(tb, v))
        for power in (1, -1):
            try:
                queue.append(ops.a_shift(v, power))
            except NotInvertible:
                pass


def _within_weight(x, weight_bound):
    for k in x:
        if k != UNIT and any(w > weight_bound for w in k[1]):
            return False
    return True


def ideal_I_span(n_max, weight_bound):
    """Per-degree reduced bases of the reassociation ideal on undecorated
    weighted trees: generated by (x v y) v a(z) - a(x) v (y v z)."""
    ops = TreeOps(None)
    basis_by_degree = {
        n: ops.basis_keys(n, weight_bound) for n in range(1, n_max + 1)
    }
    seeds = []
    for d1 in range(1, n_max - 1):
        for d2 in range(1, n_max - d1):
            for d3 in range(1, n_max - d1 - d2 + 1):
                for x in basis_by_degree[d1]:
                    bx = LinComb.basis(x)
                    for y in basis_by_degree[d2]:
                        by = LinComb.basis(y)
                        xy = ops.graft(bx, by)
                        for z in basis_by_degree[d3]:
                            bz = LinComb.basis(z)
                            try:
                                g = ops.graft(xy, ops.a_shift(bz)) - ops.graft(
                                    ops.a_shift(bx), ops.graft(by, bz)
                                )
                            except NotInvertible:
                                continue
                            if _within_weight(g, weight_bound):
                                seeds.append(g)
    rs = RowSpace(order=pivot_order)
    _close_under_ops_weighted(rs, seeds, ops, basis_by_degree, n_max, weight_bound)
    return _rows_by_degree(rs, n_max)


def _close_under_ops_weighted(rowspace, seeds, ops, basis_by_degree, n_max, weight_bound):
    queue = deque(seeds)
    while queue:
        v = queue.popleft()
        if not v or not rowspace.add(v):
            continue
        d = max_degree(v)
        for e in range(1, n_max - d + 1):
            for t in basis_by_degree.get(e, ()):
                tb = LinComb.basis(t)
                queue.append(ops.graft(v, tb))
                queue.append(ops.graft(tb, v))
        for power in (1, -1):
            try:
                w = ops.a_shift(v, power)
            except NotInvertible:
                continue
            if _within_weight(w, weight_bound):
                queue.append(w)


def _rows_by_degree(rowspace, n_max):
    out = {n: [] for n in range(n_max + 1)}
    for row in rowspace.basis_rows():
        out[max_degree(row)].append(row)
    return out


def _decorated_ideal_generators(g, ops, basis_by_degree, n_max, weight_bound):
    """Generator instances on decorated trees, as two lists: the
    reassociation relations, and the enveloping relations (weight
    absorption plus commutators)."""
    reassoc = []
    # reassociation: (x v y) v a(z) - a(x) v (y v z)
    for d1 in range(1, max(0, n_max - 1)):
        for d2 in range(1, n_max - d1):
            for d3 in range(1, n_max - d1 - d2 + 1):
                for x in basis_by_degree[d1]:
                    bx = LinComb.basis(x)
                    ax = ops.a_shift(bx)
                    for y in basis_by_degree[d2]:
                        by = LinComb.basis(y)
                        xy = ops.graft(bx, by)
                        for z in basis_by_degree[d3]:
                            bz = LinComb.basis(z)
                            reassoc.append(
                                ops.graft(xy, ops.a_shift(bz))
                                - ops.graft(ax, ops.graft(by, bz))
                            )
    envelope = []
    # weight absorption: (s, xi) - (0, phi^s(xi))
    for s in range(1, weight_bound + 1):
        for xi in range(g.dim):
            shifted = g.phi_pow(s, LinComb.basis(xi))
            v = LinComb.basis((LEAF, (s,), (xi,)))
            for j, c in shifted.items():
                v = v.add_scaled(LinComb.basis((LEAF, (0,), (j,))), -c)
            envelope.append(v)
    # commutators: (xi1 xi2) - (xi2 xi1) - leaf([xi1, xi2])
    if n_max >= 2:
        t2 = (LEAF, LEAF)
        for x1 in range(g.dim):
            for x2 in range(x1 + 1, g.dim):
                v = LinComb.basis((t2, (0, 0), (x1, x2))) - LinComb.basis(
                    (t2, (0, 0), (x2, x1))
                )
                for j, c in g.bracket(x1, x2).items():
                    v = v.add_scaled(LinComb.basis((LEAF, (0,), (j,))), -c)
                envelope.append(v)
    return reassoc, envelope


def ideal_J_span(g, n_max, weight_bound=3):
    """Per-degree reduced span of the enveloping relations, closed under
    grafting and the shift map, reduced modulo the reassociation ideal."""
    ops = TreeOps(g.phi)
    basis_by_degree = {
        n: ops.basis_keys(n, weight_bound, g.dim) for n in range(1, n_max + 1)
    }
    reassoc_seeds, envelope_seeds = _decorated_ideal_generators(
        g, ops, basis_by_degree, n_max, weight_bound
    )
    reassoc = RowSpace(order=pivot_order)
    _close_under_ops(reassoc, reassoc_seeds, ops, basis_by_degree, n_max)

    envel = RowSpace(order=pivot_order)
    queue = deque(envelope_seeds)
    while queue:
        v = reassoc.reduce(queue.popleft())
        if not v or not envel.add(v):
            continue
        d = max_degree(v)
        for e in range(1, n_max - d + 1):
            for t in basis_by_degree.get(e, ()):
                tb = LinComb.basis(t)
                queue.append(ops.graft(v, tb))
                queue.append(ops.graft(tb, v))
        for power in (1, -1):
            queue.append(ops.a_shift(v, power))
    return _rows_by_degree(envel, n_max)


class TruncatedUEA:
    """The universal enveloping Hom-Hopf algebra of a Hom-Lie algebra,
    truncated at a tree degree.

    Normal forms are the non-pivot decorated trees after quotienting the
    budgeted tree span by the reassociation and enveloping ideals.  The
    grafting product raises TruncationOverflow past the degree bound; the
    coproduct, counit, antipode and twist are total.
    """

    is_truncated = True

    def __init__(self, lie, truncation_degree, weight_bound, ops, rowspace, ambient):
        self.lie = lie
        self.truncation_degree = truncation_degree
        self.weight_bound = weight_bound
        self.ops = ops
        self.rowspace = rowspace
        self.ambient = ambient
        self.nf_keys = [UNIT] + [
            k for k in ambient if k != UNIT and k not in rowspace.rows
        ]
        self.nf_keys.sort(key=display_order)
        self.graded = all(
            len({tree_degree(k) for k in row}) == 1 for row in rowspace.rows.values()
        )
        self._product_cache = {}
        self._comult_cache = {}

    # -- bookkeeping

    def basis_keys(self):
        return list(self.nf_keys)

    def degree(self, key):
        return tree_degree(key)

    def dims_per_degree(self):
        dims = [0] * (self.truncation_degree + 1)
        for k in self.nf_keys:
            dims[tree_degree(k)] += 1
        return dims

    def project(self, x):
        return self.rowspace.reduce(x)

    # -- Hom-Hopf protocol

    def unit_elem(self):
        return LinComb.basis(UNIT)

    def product(self, x, y):
        out = LinComb()
        for k1, a in x.items():
            for k2, b in y.items():
                d = tree_degree(k1) + tree_degree(k2)
                if d > self.truncation_degree:
                    raise TruncationOverflow(
                        "product degree %d exceeds truncation %d"
                        % (d, self.truncation_degree)
                    )
                key = (k1, k2)
                val = self._product_cache.get(key)
                if val is None:
                    val = self.project(self.ops.graft_keys(k1, k2))
                    self._product_cache[key] = val
                out = out.add_scaled(val, a * b)
        return out

    def alpha_map(self, x):
        return self.project(self.ops.a_shift(x, 1))

    def alpha_inv(self, x):
        return self.project(self.ops.a_shift(x, -1))

    def alpha_pow(self, n, x):
        return self.project(self.ops.a_shift(x, n)) if n else x

    def comult_map(self, x):
        out = LinComb()
        for k, a in x.items():
            val = self._comult_cache.get(k)
            if val is None:
                raw = self.ops.coproduct_key(k)
                val = LinComb()
                for (k1, k2), v in raw.items():
                    val = val.add_scaled(
                        self.project(LinComb.basis(k1)) @ self.project(LinComb.basis(k2)),
                        v,
                    )
                self._comult_cache[k] = val
            out = out.add_scaled(val, a)
        return out

    def counit_map(self, x):
        return self.ops.counit(x)

    def beta_map(self, x):
        return x

    def beta_inv(self, x):
        return x

    def beta_pow(self, n, x):
        return x

    def antipode_map(self, x):
        return self.project(self.ops.antipode(x))

    # -- well-definedness of the induced structure

    def well_definedness_report(self):
        rep = CheckReport()
        rows = self.rowspace.basis_rows()
        rep.run(
            "ideal-counit",
            [(i,) for i in range(len(rows))],
            lambda i: (LinComb.basis("k", self.ops.counit(rows[i])), LinComb.zero()),
        )
        rep.run(
            "ideal-antipode",
            [(i,) for i in range(len(rows))],
            lambda i: (self.project(self.ops.antipode(rows[i])), LinComb.zero()),
        )
        rep.run(
            "ideal-shift",
            [(i, s) for i in range(len(rows)) for s in (1, -1)],
            lambda i, s: (self.project(self.ops.a_shift(rows[i], s)), LinComb.zero()),
        )

        def coideal(i):
            out = LinComb()
            for (k1, k2), v in self.ops.coproduct(rows[i]).items():
                out = out.add_scaled(
                    self.project(LinComb.basis(k1)) @ self.project(LinComb.basis(k2)),
                    v,
                )
            return out, LinComb.zero()

        rep.run("ideal-coproduct", [(i,) for i in range(len(rows))], coideal)
        return rep


def build_truncated_uea(g, truncation_degree, weight_bound=3, check=True):
    """Construct the truncated universal enveloping Hom-Hopf algebra."""
    if check and not check_hom_lie(g).passed:
        raise NotHomLie("structure constants fail the Hom-Lie axioms")
    ops = TreeOps(g.phi)
    basis_by_degree = {
        n: ops.basis_keys(n, weight_bound, g.dim)
        for n in range(1, truncation_degree + 1)
    }
    ambient = [UNIT]
    for n in range(1, truncation_degree + 1):
        ambient.extend(basis_by_degree[n])
    reassoc_seeds, envelope_seeds = _decorated_ideal_generators(
        g, ops, basis_by_degree, truncation_degree, weight_bound
    )
    rs = RowSpace(order=pivot_order)
    _close_under_ops(
        rs, reassoc_seeds + envelope_seeds, ops, basis_by_degree, truncation_degree
    )
    return TruncatedUEA(g, truncation_degree, weight_bound, ops, rs, ambient)


# ---------------------------------------------------------------------------
# matched-pair actions on the enveloping algebras


class UEAActionContext:
    """Recursions defining the mutual actions between U(g) and U(h) for a
    matched pair of Hom-Lie algebras, memoized at the raw-tree level.

    The right action of trees over g on elements of h:
        eta <| 1 = alpha(eta)
        eta <| (s, xi) = eta <| phi^s(xi)
        eta <| (t v t') = (alpha^-1(eta) <| t) <| a(t')
    The left action of h on trees over g:
        eta |> 1 = 0
        eta |> (s, xi) = (s, alpha^-s(eta) |> xi)
        eta |> (t v t') = (alpha^-1(eta) |> t) v a(t')
            + a(t_(1)) v [(alpha^-2(eta) <| a^-1(t_(2))) |> t']
    and the degreewise lifts to U(h) acting on U(g) and back.
    """

    def __init__(self, pair):
        self.pair = pair
        self.g = pair.g
        self.h = pair.h
        self.gops = TreeOps(pair.g.phi)
        self.hops = TreeOps(pair.h.phi)
        self._right = {}
        self._left = {}
        self._omega_left = {}
        self._omega_right = {}

    # eta <| tree  (value in h)

    def eta_right_key(self, i, key):
        memo = self._right.get((i, key))
        if memo is not None:
            return memo
        eta = LinComb.basis(i)
        if key == UNIT:
            out = self.h.phi_map(eta)
        elif key[0] == LEAF:
            s, xi = key[1][0], key[2][0]
            out = self.pair.right(eta, self.g.phi_pow(s, LinComb.basis(xi)))
        else:
            nl = leaf_count(key[0][0])
            kl = (key[0][0], key[1][:nl], key[2][:nl])
            kr = (key[0][1], key[1][nl:], key[2][nl:])
            inner = self.eta_right(self.h.phi_pow(-1, eta), LinComb.basis(kl))
            out = self.eta_right(inner, self.gops.a_shift_key(kr))
        self._right[(i, key)] = out
        return out

    def eta_right(self, eta, u):
        out = LinComb()
        for i, a in eta.items():
            for k, b in u.items():
                out = out.add_scaled(self.eta_right_key(i, k), a * b)
        return out

    # eta |> tree  (value among trees over g)

    def eta_left_key(self, i, key):
        memo = self._left.get((i, key))
        if memo is not None:
            return memo
        eta = LinComb.basis(i)
        if key == UNIT:
            out = LinComb.zero()
        elif key[0] == LEAF:
            s = key[1][0]
            acted = self.pair.left(
                self.h.phi_pow(-s, eta), LinComb.basis(key[2][0])
            )
            out = LinComb()
            for j, c in acted.items():
                out = out.add_scaled(LinComb.basis((LEAF, (s,), (j,))), c)
        else:
            nl = leaf_count(key[0][0])
            kl = (key[0][0], key[1][:nl], key[2][:nl])
            kr = (key[0][1], key[1][nl:], key[2][nl:])
            out = self.gops.graft(
                self.eta_left(self.h.phi_pow(-1, eta), LinComb.basis(kl)),
                self.gops.a_shift_key(kr),
            )
            for (t1, t2), v in self.gops.coproduct_key(kl).items():
                actor = self.eta_right(
                    self.h.phi_pow(-2, eta),
                    self.gops.a_shift_key(t2, -1),
                )
                term = self.gops.graft(
                    self.gops.a_shift_key(t1),
                    self.eta_left(actor, LinComb.basis(kr)),
                )
                out = out.add_scaled(term, v)
        self._left[(i, key)] = out
        return out

    def eta_left(self, eta, u):
        out = LinComb()
        for i, a in eta.items():
            for k, b in u.items():
                out = out.add_scaled(self.eta_left_key(i, k), a * b)
        return out

    # Omega |> u : U(h)-tree acting on U(g)-trees

    def omega_left_key(self, vkey, ukey):
        memo = self._omega_left.get((vkey, ukey))
        if memo is not None:
            return memo
        if vkey == UNIT:
            out = self.gops.a_shift_key(ukey)
        elif vkey[0] == LEAF:
            s, eta = vkey[1][0], vkey[2][0]
            out = self.eta_left(
                self.h.phi_pow(s, LinComb.basis(eta)), LinComb.basis(ukey)
            )
        else:
            nl = leaf_count(vkey[0][0])
            vl = (vkey[0][0], vkey[1][:nl], vkey[2][:nl])
            vr = (vkey[0][1], vkey[1][nl:], vkey[2][nl:])
            inner = self.omega_left(
                LinComb.basis(vr), self.gops.a_shift_key(ukey, -1)
            )
            out = self.omega_left(self.hops.a_shift_key(vl), inner)
        self._omega_left[(vkey, ukey)] = out
        return out

    def omega_left(self, v, u):
        out = LinComb()
        for kv, a in v.items():
            for ku, b in u.items():
                out = out.add_scaled(self.omega_left_key(kv, ku), a * b)
        return out

    # Omega <| u : U(g)-trees acting on U(h)-trees from the right

    def omega_right_key(self, vkey, ukey):
        memo = self._omega_right.get((vkey, ukey))
        if memo is not None:
            return memo
        if ukey == UNIT:
            out = self.hops.a_shift_key(vkey)
        elif vkey == UNIT:
            out = LinComb.zero()  # 1 <| u = eps(u) 1 and deg(u) >= 1 here
        elif vkey[0] == LEAF:
            s, eta = vkey[1][0], vkey[2][0]
            acted = self.eta_right(
                self.h.phi_pow(s, LinComb.basis(eta)), LinComb.basis(ukey)
            )
            out = LinComb()
            for j, c in acted.items():
                out = out.add_scaled(LinComb.basis((LEAF, (0,), (j,))), c)
        else:
            nl = leaf_count(vkey[0][0])
            vl = (vkey[0][0], vkey[1][:nl], vkey[2][:nl])
            vr = (vkey[0][1], vkey[1][nl:], vkey[2][nl:])
            out = LinComb()
            for (o1, o2), cv in self.hops.coproduct_key(vr).items():
                for (t1, t2), cu in self.gops.coproduct_key(ukey).items():
                    inner = self.omega_left(
                        self.hops.a_shift_key(o1, -1),
                        self.gops.a_shift_key(t1, -2),
                    )
                    left = self.omega_right(LinComb.basis(vl), inner)
                    right = self.omega_right(
                        LinComb.basis(o2), self.gops.a_shift_key(t2, -1)
                    )
                    out = out.add_scaled(self.hops.graft(left, right), cv * cu)
        self._omega_right[(vkey, ukey)] = out
        return out

    def omega_right(self, v, u):
        out = LinComb()
        for kv, a in v.items():
            for ku, b in u.items():
                out = out.add_scaled(self.omega_right_key(kv, ku), a * b)
        return out


def act_U_on_h(pair, eta, u, ctx=None):
    """Right action of trees over g on the Lie algebra h: eta <| u."""
    ctx = ctx or UEAActionContext(pair)
    return ctx.eta_right(eta, u)


def act_h_on_U(pair, eta, u, ctx=None):
    """Left action of the Lie algebra h on trees over g: eta |> u."""
    ctx = ctx or UEAActionContext(pair)
    return ctx.eta_left(eta, u)


def lift_to_Uh_action(pair, truncation_degree, weight_bound=3, check=True):
    """Lift the matched-pair actions to the truncated enveloping algebras.

    Returns (left, right): the U(h)-action on U(g) and the U(g)-action on
    U(h), as tables over normal-form bases.  With check on, both ideals are
    verified to be stable under the actions, so the tables are well defined
    on the quotients.
    """
    ug = build_truncated_uea(pair.g, truncation_degree, weight_bound)
    uh = build_truncated_uea(pair.h, truncation_degree, weight_bound)
    ctx = UEAActionContext(pair)

    if check:
        for i in range(pair.h.dim):
            for row in ug.rowspace.basis_rows():
                if ug.project(ctx.eta_left(LinComb.basis(i), row)):
                    raise NotHomLie("h-action does not preserve the g-ideal")
        for vkey in uh.basis_keys():
            for row in ug.rowspace.basis_rows():
                if ug.project(ctx.omega_left(LinComb.basis(vkey), row)):
                    raise NotHomLie("lifted action does not preserve the g-ideal")
                if uh.project(ctx.omega_right(LinComb.basis(vkey), row)):
                    raise NotHomLie("right action does not preserve the g-ideal")
        for row in uh.rowspace.basis_rows():
            for ukey in ug.basis_keys():
                if ug.project(ctx.omega_left(row, LinComb.basis(ukey))):
                    raise NotHomLie("lifted action does not kill the h-ideal")
                if uh.project(ctx.omega_right(row, LinComb.basis(ukey))):
                    raise NotHomLie("right action does not kill the h-ideal")

    left_table = {}
    right_table = {}
    for vkey in uh.basis_keys():
        for ukey in ug.basis_keys():
            left_table[(vkey, ukey)] = ug.project(
                ctx.omega_left_key(vkey, ukey)
            )
            right_table[(ukey, vkey)] = uh.project(
                ctx.omega_right_key(vkey, ukey)
            )
    left = ActionData(
        uh,
        ug.basis_keys(),
        left_table,
        FuncOperator(ug.alpha_map, ug.alpha_inv),
        side="left",
        carrier=ug,
    )
    right = ActionData(
        ug,
        uh.basis_keys(),
        right_table,
        FuncOperator(uh.alpha_map, uh.alpha_inv),
        side="right",
        carrier=uh,
    )
    return left, right
