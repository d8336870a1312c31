"""
Exact field arithmetic and dense-semantics exact linear algebra.

Two fields are supported: the rationals (``QQ``, backed by
``fractions.Fraction``) and prime fields ``GF(p)``.  Matrices keep
only their nonzero entries internally but behave like dense
row-major grids.  All rank, kernel and solve computations in the
package go through :func:`rref`.

Over QQ the forward elimination is fraction-free: rows are scaled to
primitive integer vectors and combined by cross-multiplication, with
the content divided out after every step.  Fractions only appear in
the final back-substitution that produces the reduced form.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


class Field:
    name = "?"
    characteristic = 0

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def to_json(self, x):
        raise NotImplementedError

    def descriptor(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(str(self.descriptor()))

    def __repr__(self):
        return self.name


def _qnorm(x):
    return x.numerator if x.denominator == 1 else x


class Rationals(Field):
    name = "QQ"
    characteristic = 0

    def __call__(self, x):
        # integral values stay plain ints, which is much faster and mixes exactly
        if isinstance(x, int):
            return x
        if isinstance(x, FpElem):
            raise TypeError("cannot coerce a residue into QQ")
        return _qnorm(Fraction(x))

    def to_json(self, x):
        x = Fraction(x)
        if x.denominator == 1:
            return x.numerator
        return f"{x.numerator}/{x.denominator}"

    def descriptor(self):
        return "Q"


class FpElem:
    """Residue modulo a prime, kept in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise ValueError("mixing residues of different primes")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero residue")
        return FpElem(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FpElem(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(o, self.p) * self.inverse()

    def __pow__(self, n):
        return FpElem(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} mod {self.p}"


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField(Field):
    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x):
        if isinstance(x, FpElem):
            if x.p != self.p:
                raise ValueError("residue of a different prime")
            return x
        if isinstance(x, Fraction):
            return FpElem(x.numerator * pow(x.denominator, -1, self.p), self.p)
        if isinstance(x, str):
            return self(Fraction(x))
        return FpElem(int(x), self.p)

    def to_json(self, x):
        return self(x).v

    def descriptor(self):
        return {"Fp": self.p}


QQ = Rationals()
DEFAULT_PRIME = 32003
_prime_fields = {}


def GF(p=DEFAULT_PRIME):
    if p not in _prime_fields:
        _prime_fields[p] = PrimeField(p)
    return _prime_fields[p]


def field_from_descriptor(desc):
    """Parse ``"Q"``, ``{"Fp": p}`` or the CLI spelling ``"Fp:p"``."""
    if desc in ("Q", "QQ", None):
        return QQ
    if isinstance(desc, dict) and "Fp" in desc:
        return GF(int(desc["Fp"]))
    if isinstance(desc, str) and desc.startswith("Fp:"):
        return GF(int(desc[3:]))
    raise ValueError(f"unknown field descriptor {desc!r}")


class Matrix:
    """A rows x cols matrix over a field.

    Only nonzero entries are stored (``self.rows[i][j]``); all public
    behaviour is that of a dense grid.  Treat instances as immutable.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, nrows, ncols, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = {}
        if rows:
            for i, r in rows.items():
                clean = {j: v for j, v in r.items() if v != 0}
                if clean:
                    self.rows[i] = clean

    @classmethod
    def from_rows(cls, field, data, ncols=None):
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = {}
        for i, r in enumerate(data):
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
            rows[i] = {j: field(v) for j, v in enumerate(r) if v != 0}
        return cls(field, len(data), ncols, rows)

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        one = field.one
        return cls(field, n, n, {i: {i: one} for i in range(n)})

    @classmethod
    def from_columns(cls, field, nrows, columns):
        """Build from a list of sparse columns (dicts row -> value)."""
        rows = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v != 0:
                    rows.setdefault(i, {})[j] = v
        return cls(field, nrows, len(columns), rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, self.field.zero)

    def to_lists(self):
        z = self.field.zero
        return [[self.rows.get(i, {}).get(j, z) for j in range(self.ncols)]
                for i in range(self.nrows)]

    def row(self, i):
        r = self.rows.get(i, {})
        z = self.field.zero
        return [r.get(j, z) for j in range(self.ncols)]

    def nnz(self):
        return sum(len(r) for r in self.rows.values())

    def is_zero(self):
        return not self.rows

    def transpose(self):
        rows = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return Matrix(self.field, self.ncols, self.nrows, rows)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        rows = {}
        for i, r in self.rows.items():
            acc = {}
            for k, v in r.items():
                orow = other.rows.get(k)
                if orow:
                    for j, w in orow.items():
                        acc[j] = acc.get(j, 0) + v * w
            rows[i] = acc
        return Matrix(self.field, self.nrows, other.ncols, rows)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            acc = rows.setdefault(i, {})
            for j, v in r.items():
                acc[j] = acc.get(j, 0) + v
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field(c)
        return Matrix(self.field, self.nrows, self.ncols,
                      {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()})

    def apply(self, vec):
        """Matrix times a dense vector."""
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        z = self.field.zero
        out = [z] * self.nrows
        for i, r in self.rows.items():
            s = z
            for j, v in r.items():
                s = s + v * vec[j]
            out[i] = s
        return out

    def apply_sparse(self, vec):
        """Matrix times a sparse vector (dict index -> value); sparse result."""
        cols = {}
        for i, r in self.rows.items():
            s = 0
            hit = False
            for j, v in r.items():
                w = vec.get(j)
                if w is not None:
                    s = s + v * w
                    hit = True
            if hit and s != 0:
                cols[i] = s
        return cols

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("row mismatch in hstack")
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            acc = rows.setdefault(i, {})
            for j, v in r.items():
                acc[j + self.ncols] = v
        return Matrix(self.field, self.nrows, self.ncols + other.ncols, rows)

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("column mismatch in vstack")
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            rows[i + self.nrows] = dict(r)
        return Matrix(self.field, self.nrows + other.nrows, self.ncols, rows)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.shape, tuple(sorted((i, tuple(sorted(r.items(), key=lambda t: t[0])))
                                               for i, r in self.rows.items()))))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()}, {self.field})"

    def rank(self):
        return len(_echelon(self.field, self.rows.values()))


# -- elimination kernels ---------------------------------------------------

def _content_normalize(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        return {j: v // g for j, v in row.items()}
    return row


def _to_int_row(row):
    den = 1
    for v in row.values():
        d = v.denominator if isinstance(v, Fraction) else 1
        den = den * d // gcd(den, d)
    out = {}
    for j, v in row.items():
        if isinstance(v, Fraction):
            out[j] = v.numerator * (den // v.denominator)
        else:
            out[j] = int(v) * den
    return out


def _echelon_int(rows):
    pivots = {}
    for src in rows:
        r = _to_int_row(src)
        r = {j: v for j, v in r.items() if v}
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                pivots[c] = _content_normalize(r)
                break
            a, b = prow[c], r[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {j: fa * v for j, v in r.items()}
            for j, v in prow.items():
                w = new.get(j, 0) - fb * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            r = _content_normalize(new) if new else new
    return pivots


def _echelon_mod(rows, p):
    pivots = {}
    for src in rows:
        r = {j: int(v) % p if isinstance(v, FpElem) else int(v) % p for j, v in src.items()}
        r = {j: v for j, v in r.items() if v}
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {j: v * inv % p for j, v in r.items()}
                break
            f = r[c]
            for j, v in prow.items():
                w = (r.get(j, 0) - f * v) % p
                if w:
                    r[j] = w
                else:
                    r.pop(j, None)
    return pivots


def _echelon(field, rows):
    if isinstance(field, PrimeField):
        return _echelon_mod(rows, field.p)
    return _echelon_int(rows)


def _reduced_rows(field, pivots):
    """Back-substitute an echelon pivot table into reduced row-echelon rows."""
    cols = sorted(pivots)
    if isinstance(field, PrimeField):
        p = field.p
        red = {c: dict(pivots[c]) for c in cols}
        for c in reversed(cols):
            rc = red[c]
            for c2 in cols:
                if c2 >= c:
                    break
                r2 = red[c2]
                f = r2.get(c)
                if f:
                    for j, v in rc.items():
                        w = (r2.get(j, 0) - f * v) % p
                        if w:
                            r2[j] = w
                        else:
                            r2.pop(j, None)
        return [(c, {j: FpElem(v, p) for j, v in red[c].items()}) for c in cols]
    red = {}
    for c in cols:
        r = pivots[c]
        lead = r[c]
        red[c] = {j: _qnorm(Fraction(v, lead)) for j, v in r.items()}
    for c in reversed(cols):
        rc = red[c]
        for c2 in cols:
            if c2 >= c:
                break
            r2 = red[c2]
            f = r2.get(c)
            if f:
                for j, v in rc.items():
                    w = r2.get(j, 0) - f * v
                    if w:
                        r2[j] = w
                    else:
                        r2.pop(j, None)
    return [(c, red[c]) for c in cols]


def rref(m):
    """Return ``(R, rank, pivot_cols)`` with ``R`` the reduced row-echelon form of ``m``."""
    piv = _echelon(m.field, m.rows.values())
    red = _reduced_rows(m.field, piv)
    rows = {i: r for i, (_, r) in enumerate(red)}
    return Matrix(m.field, m.nrows, m.ncols, rows), len(red), [c for c, _ in red]


def rank(m):
    return m.rank()


class Subspace:
    """A subspace of ``field^ambient_dim`` held as canonical RREF basis rows."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field, ambient_dim, vectors=()):
        rows = []
        for v in vectors:
            if isinstance(v, dict):
                rows.append(v)
            else:
                if len(v) != ambient_dim:
                    raise ValueError("vector length does not match ambient dimension")
                rows.append({j: x for j, x in enumerate(v) if x != 0})
        red = _reduced_rows(field, _echelon(field, rows))
        self.field = field
        self.ambient_dim = ambient_dim
        self.pivots = [c for c, _ in red]
        self.basis = Matrix(field, len(red), ambient_dim, {i: r for i, (_, r) in enumerate(red)})

    @property
    def dim(self):
        return self.basis.nrows

    def vectors(self):
        return [self.basis.row(i) for i in range(self.dim)]

    def sparse_vectors(self):
        return [dict(self.basis.rows.get(i, {})) for i in range(self.dim)]

    def reduce_sparse(self, v):
        v = {j: x for j, x in v.items() if x != 0}
        for i, c in enumerate(self.pivots):
            f = v.get(c)
            if f:
                for j, w in self.basis.rows[i].items():
                    x = v.get(j, 0) - f * w
                    if x != 0:
                        v[j] = x
                    else:
                        v.pop(j, None)
        return v

    def contains(self, v):
        if not isinstance(v, dict):
            v = {j: x for j, x in enumerate(v) if x != 0}
        return not self.reduce_sparse(v)

    def contains_subspace(self, other):
        return all(self.contains(r) for r in other.sparse_vectors())

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field})"


def kernel_basis(m):
    """Null space ``{v : m v = 0}`` as a :class:`Subspace`."""
    red = _reduced_rows(m.field, _echelon(m.field, m.rows.values()))
    pivcols = {c for c, _ in red}
    one = m.field.one
    vecs = []
    for f in range(m.ncols):
        if f in pivcols:
            continue
        v = {f: one}
        for c, r in red:
            x = r.get(f)
            if x:
                v[c] = -x
        vecs.append(v)
    return Subspace(m.field, m.ncols, vecs)


def image_basis(m):
    """Column space of ``m`` as a :class:`Subspace` of ``field^nrows``."""
    return Subspace(m.field, m.nrows, list(m.transpose().rows.values()))


def solve(m, b):
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent."""
    if len(b) != m.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    rows = []
    n = m.ncols
    for i in range(m.nrows):
        r = dict(m.rows.get(i, {}))
        if b[i] != 0:
            r[n] = m.field(b[i])
        rows.append(r)
    red = _reduced_rows(m.field, _echelon(m.field, rows))
    z = m.field.zero
    x = [z] * n
    for c, r in red:
        if c == n:
            return None
        x[c] = r.get(n, z)
    return x


def solve_sparse(m, b):
    """Sparse variant of :func:`solve`: ``b`` and the result are dicts."""
    n = m.ncols
    cols = {}
    for i, r in m.rows.items():
        cols[i] = dict(r)
    for i, v in b.items():
        if v != 0:
            cols.setdefault(i, {})[n] = v
    red = _reduced_rows(m.field, _echelon(m.field, cols.values()))
    x = {}
    for c, r in red:
        if c == n:
            return None
        v = r.get(n)
        if v:
            x[c] = v
    return x


def coset_reduce(v, w):
    """Canonical representative of ``v + w``: pivot coordinates of ``w`` eliminated."""
    if len(v) != w.ambient_dim:
        raise ValueError("vector length does not match subspace ambient dimension")
    red = w.reduce_sparse({j: w.field(x) for j, x in enumerate(v) if x != 0})
    z = w.field.zero
    return [red.get(j, z) for j in range(w.ambient_dim)]
