"""
Brute-force oracles used by the tests.  Nothing here imports the library's
linear algebra or cochain code; algebras are passed as plain structure
constant tables ``mult[i][j] -> list of coefficients`` and ranks come from
sympy.
"""
import itertools
from fractions import Fraction

import sympy


def table_of(a):
    """Dense structure constants and unit of a library algebra, as plain lists."""
    n = a.dim
    mult = [[[Fraction(a.mult[i][j].get(k, 0)) for k in range(n)] for j in range(n)] for i in range(n)]
    unit = [Fraction(a.unit.get(k, 0)) for k in range(n)]
    return mult, unit


def dense_mul(mult, x, y):
    n = len(mult)
    out = [Fraction(0)] * n
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(n):
            if y[j] == 0:
                continue
            c = x[i] * y[j]
            for k in range(n):
                out[k] += c * mult[i][j][k]
    return out


def basis_vec(n, i):
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def naive_differential_matrix(mult, p):
    """Dense matrix of the Hochschild differential C^p -> C^{p+1}.

    Columns are indexed by (tuple of p basis indices, output index), rows by
    (tuple of p + 1 indices, output index), both in lexicographic order.
    """
    n = len(mult)
    src = list(itertools.product(range(n), repeat=p))
    tgt = list(itertools.product(range(n), repeat=p + 1))
    col_index = {(t, k): i for i, (t, k) in enumerate((t, k) for t in src for k in range(n))}
    rows = []
    for t in tgt:
        # row block for input tuple t: list of n rows (one per output index)
        block = [[Fraction(0)] * (len(src) * n) for _ in range(n)]
        a = [basis_vec(n, i) for i in t]

        def add_term(inner_tuple_coeffs, left=None, right=None, sign=1):
            # inner_tuple_coeffs: list of (tuple, coeff) inputs to c; result multiplied by left/right
            for u, cu in inner_tuple_coeffs:
                for k in range(n):
                    out = basis_vec(n, k)
                    if left is not None:
                        out = dense_mul(mult, left, out)
                    if right is not None:
                        out = dense_mul(mult, out, right)
                    for r in range(n):
                        if out[r]:
                            block[r][col_index[(u, k)]] += sign * cu * out[r]

        add_term([(t[1:], 1)], left=a[0])
        for i in range(1, p + 1):
            prod = dense_mul(mult, a[i - 1], a[i])
            terms = [(t[:i - 1] + (m,) + t[i + 1:], prod[m]) for m in range(n) if prod[m]]
            add_term(terms, sign=(-1) ** i)
        add_term([(t[:p], 1)], right=a[p], sign=(-1) ** (p + 1))
        rows.extend(block)
    return rows, len(src) * n


def sympy_rank(rows, ncols):
    if not rows or ncols == 0:
        return 0
    return sympy.Matrix(rows).rank()


def naive_hh_dims(mult, max_degree):
    n = len(mult)
    ranks = {-1: 0}
    for p in range(max_degree + 1):
        rows, ncols = naive_differential_matrix(mult, p)
        ranks[p] = sympy_rank(rows, ncols)
    return [n ** (p + 1) - ranks[p] - ranks[p - 1] for p in range(max_degree + 1)]


def derivation_dims(mult):
    """``(dim Der(A), dim Inn(A))`` by solving ``D(xy) = D(x) y + x D(y)`` directly."""
    n = len(mult)
    # unknown D[j][k] = coefficient of b_k in D(b_j), flattened as j * n + k
    eqs = []
    for i in range(n):
        for j in range(n):
            for r in range(n):
                row = [Fraction(0)] * (n * n)
                for k in range(n):
                    row[k * n + r] += mult[i][j][k]      # D(b_i b_j)
                for k in range(n):
                    row[i * n + k] -= mult[k][j][r]      # D(b_i) b_j
                    row[j * n + k] -= mult[i][k][r]      # b_i D(b_j)
                eqs.append(row)
    der = n * n - sympy.Matrix(eqs).rank()
    # inner derivations: images of a -> [a, -]
    inner = []
    for a in range(n):
        vec = []
        for j in range(n):
            for k in range(n):
                vec.append(mult[a][j][k] - mult[j][a][k])
        inner.append(vec)
    inn = sympy.Matrix(inner).rank()
    return der, inn


def naive_eval(mult, values, p, args):
    """Evaluate a cochain ``values[tuple] -> {k: c}`` on dense vectors ``args``."""
    n = len(mult)
    out = [Fraction(0)] * n
    for t in itertools.product(range(n), repeat=p):
        c = Fraction(1)
        for a, i in zip(args, t):
            c *= a[i]
            if c == 0:
                break
        if c == 0:
            continue
        for k, v in values.get(t, {}).items():
            out[k] += c * v
    return out


def naive_gerstenhaber(mult, v1, p, v2, q):
    """``c1 . c2`` tabulated on basis tuples straight from the defining sum."""
    n = len(mult)
    if p == 0:
        return {}
    res = {}
    for t in itertools.product(range(n), repeat=p + q - 1):
        args = [basis_vec(n, i) for i in t]
        total = [Fraction(0)] * n
        for i in range(p):
            inner = naive_eval(mult, v2, q, args[i:i + q])
            outer = naive_eval(mult, v1, p, args[:i] + [inner] + args[i + q:])
            sgn = (-1) ** (i * (q - 1))
            total = [x + sgn * y for x, y in zip(total, outer)]
        nz = {k: v for k, v in enumerate(total) if v != 0}
        if nz:
            res[t] = nz
    return res
