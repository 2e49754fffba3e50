"""Exact rational linear algebra over arbitrary hashable basis indices.

Everything downstream (structure tables, ideals, quotients, dual bases)
is built from three primitives defined here: sparse linear combinations
with Fraction coefficients, linear operators given by their columns, and
incremental reduced row echelon spaces with deterministic pivoting.
"""

from fractions import Fraction

from .errors import NotInvertible, UnknownBasisIndex

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(c):
    """Coerce ints (and int-valued strings "p/q") to Fraction."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError("not an exact scalar: %r" % (c,))


class LinComb:
    """A finite formal linear combination of basis indices over Q.

    Zero coefficients are never stored, so equality is term-by-term
    dictionary equality.  Instances are treated as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, v in terms.items():
                v = scalar(v)
                if v:
                    clean[k] = v
        self.terms = clean

    @classmethod
    def basis(cls, key, coeff=1):
        return cls({key: coeff})

    @classmethod
    def zero(cls):
        return cls()

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def get(self, key):
        return self.terms.get(key, ZERO)

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, ZERO) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return LinComb._wrap(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, ZERO) - v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return LinComb._wrap(out)

    def __neg__(self):
        return LinComb._wrap({k: -v for k, v in self.terms.items()})

    def __rmul__(self, c):
        c = scalar(c)
        if not c:
            return LinComb()
        return LinComb._wrap({k: c * v for k, v in self.terms.items()})

    __mul__ = __rmul__

    def add_scaled(self, other, c):
        """Return self + c*other without storing zero terms."""
        c = scalar(c)
        if not c:
            return self
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, ZERO) + c * v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return LinComb._wrap(out)

    def __matmul__(self, other):
        """Tensor product; keys of the result are (left key, right key)."""
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                out[(k1, k2)] = v1 * v2
        return LinComb._wrap(out)

    def map_basis(self, fn):
        """Linear extension of a basis map fn: key -> LinComb."""
        out = LinComb()
        for k, v in self.terms.items():
            out = out.add_scaled(fn(k), v)
        return out

    @classmethod
    def _wrap(cls, clean):
        obj = cls.__new__(cls)
        obj.terms = clean
        return obj

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k, v in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            bits.append("%s*%r" % (v, k))
        return " + ".join(bits)


def lincomb_arith(a, b, c):
    """Return a + c*b."""
    return a.add_scaled(b, c)


def tensor(a, b):
    """Bilinear tensor of two combinations over the pair basis."""
    return a @ b


def pair_map(f, g, t):
    """Apply f to left legs and g to right legs of a pair-basis combination."""
    out = LinComb()
    for (k1, k2), v in t.items():
        out = out.add_scaled(f(LinComb.basis(k1)) @ g(LinComb.basis(k2)), v)
    return out


def swap_pairs(t):
    """Flip the two legs of a pair-basis combination."""
    return LinComb._wrap({(k2, k1): v for (k1, k2), v in t.items()})


class LinearOperator:
    """A linear operator stored by its columns: key -> LinComb.

    An optional inverse column table may be supplied or computed; when
    present, both round trips are verified on every basis index.
    """

    def __init__(self, columns, inverse_columns=None, check=True):
        self.columns = dict(columns)
        self.inverse_columns = dict(inverse_columns) if inverse_columns else None
        if check and self.inverse_columns is not None:
            self._verify_inverse()

    @classmethod
    def identity(cls, keys):
        cols = {k: LinComb.basis(k) for k in keys}
        return cls(cols, dict(cols), check=False)

    @classmethod
    def from_matrix(cls, mat, keys=None, inverse=None):
        """Columns from a dense matrix: image(e_j) = sum_i mat[i][j] e_i."""
        n = len(mat)
        if keys is None:
            keys = list(range(n))
        cols = {}
        for j, kj in enumerate(keys):
            cols[kj] = LinComb({keys[i]: mat[i][j] for i in range(n)})
        inv_cols = None
        if inverse is not None:
            inv_cols = {}
            for j, kj in enumerate(keys):
                inv_cols[kj] = LinComb({keys[i]: inverse[i][j] for i in range(n)})
        return cls(cols, inv_cols)

    def domain(self):
        return self.columns.keys()

    def apply(self, x):
        out = LinComb()
        for k, v in x.items():
            col = self.columns.get(k)
            if col is None:
                raise UnknownBasisIndex(repr(k))
            out = out.add_scaled(col, v)
        return out

    def apply_inverse(self, x):
        if self.inverse_columns is None:
            self._compute_inverse()
        out = LinComb()
        for k, v in x.items():
            col = self.inverse_columns.get(k)
            if col is None:
                raise UnknownBasisIndex(repr(k))
            out = out.add_scaled(col, v)
        return out

    def power(self, n, x):
        """Apply the n-th power (negative n uses the inverse)."""
        for _ in range(abs(n)):
            x = self.apply(x) if n > 0 else self.apply_inverse(x)
        return x

    def compose(self, other):
        """self after other."""
        cols = {k: self.apply(col) for k, col in other.columns.items()}
        return LinearOperator(cols, check=False)

    def inverted(self):
        """Return the inverse operator (with self stored as its inverse)."""
        if self.inverse_columns is None:
            self._compute_inverse()
        return LinearOperator(self.inverse_columns, self.columns, check=False)

    def is_identity(self):
        return all(col == LinComb.basis(k) for k, col in self.columns.items())

    def matrix(self, keys):
        return [[self.columns[kj].get(ki) for kj in keys] for ki in keys]

    def _compute_inverse(self):
        keys = sorted(self.columns.keys(), key=repr)
        index = {k: i for i, k in enumerate(keys)}
        n = len(keys)
        # Gauss-Jordan on [M | I] over the fixed key order.
        rows = []
        for i, ki in enumerate(keys):
            row = [ZERO] * (2 * n)
            for j, kj in enumerate(keys):
                row[j] = self.columns[kj].get(ki)
            row[n + i] = ONE
            rows.append(row)
        for col in range(n):
            piv = next((r for r in range(col, n) if rows[r][col]), None)
            if piv is None:
                raise NotInvertible("singular operator (column %r)" % (keys[col],))
            rows[col], rows[piv] = rows[piv], rows[col]
            inv = ONE / rows[col][col]
            rows[col] = [x * inv for x in rows[col]]
            for r in range(n):
                if r != col and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
        inv_cols = {}
        for j, kj in enumerate(keys):
            inv_cols[kj] = LinComb({keys[i]: rows[i][n + j] for i in range(n)})
        self.inverse_columns = inv_cols
        self._verify_inverse()

    def _verify_inverse(self):
        for k in self.columns:
            e = LinComb.basis(k)
            if self.apply(self.inverse_columns[k]) != e:
                raise NotInvertible("declared inverse fails on %r" % (k,))
            back = LinComb()
            for kk, vv in self.columns[k].items():
                back = back.add_scaled(self.inverse_columns[kk], vv)
            if back != e:
                raise NotInvertible("declared inverse fails on %r" % (k,))


class FuncOperator:
    """Operator given by callables; used for maps on tree bases."""

    def __init__(self, fn, inv_fn=None):
        self.fn = fn
        self.inv_fn = inv_fn

    def apply(self, x):
        return self.fn(x)

    def apply_inverse(self, x):
        if self.inv_fn is None:
            raise NotInvertible("no inverse available")
        return self.inv_fn(x)

    def power(self, n, x):
        for _ in range(abs(n)):
            x = self.apply(x) if n > 0 else self.apply_inverse(x)
        return x


def invert(m):
    """Invert a square LinearOperator; raises NotInvertible."""
    return m.inverted()


def apply(m, x):
    return m.apply(x)


def _default_order(key):
    """Integers in natural order, everything else by repr."""
    if isinstance(key, int) and not isinstance(key, bool):
        return (0, key, "")
    return (1, 0, repr(key))


class RowSpace:
    """Incrementally maintained reduced echelon basis for a subspace.

    Pivot of a vector is its minimal support index under `order` (a sort
    key on basis indices; integers sort naturally by default, other keys
    by repr).  Rows are normalized to pivot coefficient 1 and fully
    back-substituted, so the stored basis is the unique RREF basis for
    the span given the order.
    """

    def __init__(self, order=None):
        self.order = order if order is not None else _default_order
        self.rows = {}

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, v):
        """Reduce v modulo the span; result has no pivot indices in support."""
        while True:
            hit = None
            for k in v.terms:
                if k in self.rows:
                    hit = k
                    break
            if hit is None:
                return v
            v = v.add_scaled(self.rows[hit], -v.terms[hit])

    def contains(self, v):
        return not self.reduce(v)

    def add(self, v):
        """Insert v; returns True when the rank grew."""
        v = self.reduce(v)
        if not v:
            return False
        piv = min(v.terms, key=self.order)
        v = (ONE / v.terms[piv]) * v
        # keep existing rows fully reduced against the new pivot
        for p, row in list(self.rows.items()):
            c = row.get(piv)
            if c:
                self.rows[p] = row.add_scaled(v, -c)
        self.rows[piv] = v
        return True

    def pivots(self):
        return sorted(self.rows.keys(), key=self.order)

    def basis_rows(self):
        """Rows ordered by pivot; the canonical reduced basis."""
        return [self.rows[p] for p in self.pivots()]


def subspace_basis(span, order=None):
    """Reduced echelon basis of the span of the given combinations."""
    rs = RowSpace(order=order)
    for v in span:
        rs.add(v)
    return rs


def quotient_projection(keys, rowspace):
    """Projection of span(keys) onto the non-pivot complement of rowspace.

    Idempotent; kernel is exactly the subspace.  The surviving indices
    (the section) are the non-pivot keys.
    """
    cols = {}
    survivors = []
    for k in keys:
        img = rowspace.reduce(LinComb.basis(k))
        cols[k] = img
        if k not in rowspace.rows:
            survivors.append(k)
    op = LinearOperator(cols, check=False)
    op.survivors = survivors
    return op


def solve_linear(equations, unknowns):
    """Solve a linear system over Q.

    equations: iterable of (coeffs: dict unknown -> Fraction, rhs: Fraction).
    Returns one solution as a dict (free unknowns set to 0), or None when
    the system is inconsistent.
    """
    order = {u: i for i, u in enumerate(unknowns)}
    AUG = "#rhs"
    rs = RowSpace(order=lambda k: (1, 0) if k == AUG else (0, order[k]))
    for coeffs, rhs in equations:
        row = dict(coeffs)
        rhs = scalar(rhs)
        if rhs:
            row[AUG] = -rhs
        rs.add(LinComb(row))
    if AUG in rs.rows:
        return None  # row reduces to 0 = nonzero
    sol = {u: ZERO for u in unknowns}
    for piv, row in rs.rows.items():
        # row reads: pivot + (free terms) + b*AUG = 0 with AUG standing for 1
        sol[piv] = -row.get(AUG)
    return sol
