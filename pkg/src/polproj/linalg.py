"""Exact linear algebra over a Field.

Vectors are tuples of field elements.  A Subspace stores its basis in
reduced row echelon form, so two equal subspaces compare and hash equal.
"""

from itertools import product


class DimensionMismatch(ValueError):
    pass


def _reduce(F, n, rows):
    """Gauss-Jordan elimination; returns RREF rows (tuples), pivots."""
    add, mul, inv = F.add_t, F.mul_t, F.inv_t
    neg = F.neg_t
    m = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(n):
        if r == len(m):
            break
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        s = inv[row[c]]
        if s != 1:
            ms = mul[s]
            row = m[r] = [ms[x] for x in row]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = neg[m[i][c]]
                mf = mul[f]
                other = m[i]
                m[i] = [add[x][mf[y]] for x, y in zip(other, row)]
        pivots.append(c)
        r += 1
    return tuple(tuple(x) for x in m[:r]), tuple(pivots)


class Subspace:
    __slots__ = ("field", "n", "rows", "pivots", "_hash")

    def __init__(self, field, n, rows, pivots):
        self.field = field
        self.n = n
        self.rows = rows
        self.pivots = pivots
        self._hash = hash((n, rows))

    @property
    def dim(self):
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.dim, self.rows) < (other.dim, other.rows)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rows={list(self.rows)})"

    def __contains__(self, v):
        return contains(self, v)

    def key(self):
        return self.rows

    def vectors(self):
        """All vectors of the subspace (including zero)."""
        F = self.field
        out = []
        for coeffs in product(F.elements, repeat=self.dim):
            out.append(lincomb(F, self.n, coeffs, self.rows))
        return out

    def point_vectors(self):
        """One normalized vector (first nonzero entry 1) per 1-dimensional subspace."""
        F = self.field
        out = []
        k = self.dim
        for i in range(k):
            for tail in product(F.elements, repeat=k - i - 1):
                coeffs = (0,) * i + (1,) + tail
                out.append(lincomb(F, self.n, coeffs, self.rows))
        return out

    def points(self):
        """The 1-dimensional subspaces, in canonical order."""
        return list(enumerate_subspaces(self, 1))


def rref(field, n, rows):
    for r in rows:
        if len(r) != n:
            raise DimensionMismatch(f"row of length {len(r)} in ambient dimension {n}")
    red, piv = _reduce(field, n, rows)
    return Subspace(field, n, red, piv)


def span(field, n, *vecs):
    return rref(field, n, vecs)


def zero(field, n):
    return Subspace(field, n, (), ())


def whole(field, n):
    return rref(field, n, [unit(n, i) for i in range(n)])


def unit(n, i):
    v = [0] * n
    v[i] = 1
    return tuple(v)


def lincomb(F, n, coeffs, rows):
    add, mul = F.add_t, F.mul_t
    v = [0] * n
    for c, r in zip(coeffs, rows):
        if c:
            mc = mul[c]
            v = [add[x][mc[y]] for x, y in zip(v, r)]
    return tuple(v)


def vec_add(F, v, w):
    add = F.add_t
    return tuple(add[x][y] for x, y in zip(v, w))


def vec_scale(F, c, v):
    mc = F.mul_t[c]
    return tuple(mc[x] for x in v)


def normalize(F, v):
    """Scale v so that its first nonzero coordinate is 1."""
    for x in v:
        if x:
            return vec_scale(F, F.inv_t[x], v) if x != 1 else tuple(v)
    return tuple(v)


def _check(A, B):
    if A.n != B.n:
        raise DimensionMismatch(f"ambient dimensions {A.n} and {B.n}")


def join(A, B):
    _check(A, B)
    if not B.rows:
        return A
    if not A.rows:
        return B
    return rref(A.field, A.n, A.rows + B.rows)


def meet(A, B):
    """Intersection via the Zassenhaus sum/intersection trick."""
    _check(A, B)
    if not A.rows or not B.rows:
        return zero(A.field, A.n)
    n = A.n
    z = (0,) * n
    big = [r + r for r in A.rows] + [r + z for r in B.rows]
    red, piv = _reduce(A.field, 2 * n, big)
    out = [r[n:] for r, c in zip(red, piv) if c >= n]
    return rref(A.field, n, out)


def contains(A, v):
    if len(v) != A.n:
        raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {A.n}")
    F = A.field
    add, mul, neg = F.add_t, F.mul_t, F.neg_t
    w = list(v)
    for r, c in zip(A.rows, A.pivots):
        x = w[c]
        if x:
            mf = mul[neg[x]]
            w = [add[a][mf[b]] for a, b in zip(w, r)]
    return not any(w)


def is_subspace_of(A, B):
    return all(contains(B, r) for r in A.rows)


def null_space(F, n, eqs):
    """Basis subspace of {x : sum(e_i x_i) = 0 for each row e of eqs}."""
    red, piv = _reduce(F, n, eqs)
    free = [c for c in range(n) if c not in piv]
    neg = F.neg_t
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, c in zip(red, piv):
            v[c] = neg[r[f]]
        basis.append(tuple(v))
    return rref(F, n, basis)


def _rref_matrices(F, m, d):
    """All d x m RREF matrices of rank d, by pivot pattern then free entries."""
    from itertools import combinations
    elems = F.elements
    for piv in combinations(range(m), d):
        slots = []
        for i, c in enumerate(piv):
            for j in range(c + 1, m):
                if j not in piv:
                    slots.append((i, j))
        for vals in product(elems, repeat=len(slots)):
            mat = [[0] * m for _ in range(d)]
            for i, c in enumerate(piv):
                mat[i][c] = 1
            for (i, j), x in zip(slots, vals):
                mat[i][j] = x
            yield mat


def enumerate_subspaces(ambient, d):
    """Every d-dimensional subspace of `ambient`, each once, in canonical order."""
    m = ambient.dim
    if d < 0 or d > m:
        return iter(())
    F, n = ambient.field, ambient.n
    if m == n and ambient.pivots == tuple(range(n)):
        # standard basis: RREF coefficient matrices are already canonical
        found = [Subspace(F, n, tuple(map(tuple, mat)), tuple(r.index(1) for r in mat))
                 for mat in _rref_matrices(F, m, d)]
    else:
        found = [rref(F, n, [lincomb(F, n, row, ambient.rows) for row in mat])
                 for mat in _rref_matrices(F, m, d)]
    found.sort(key=Subspace.key)
    return iter(found)


def gaussian_binomial(n, d, q):
    num, den = 1, 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def mat_vec(F, M, v):
    """Row vector v times matrix M (list of rows)."""
    n = len(M[0]) if M else 0
    return lincomb(F, n, v, M)


def mat_mul(F, A, B):
    return [mat_vec(F, B, row) for row in A]


def det(F, M):
    m = [list(r) for r in M]
    n = len(m)
    add, mul, neg, inv = F.add_t, F.mul_t, F.neg_t, F.inv_t
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = neg[d]
        d = mul[d][m[c][c]]
        s = inv[m[c][c]]
        for i in range(c + 1, n):
            if m[i][c]:
                f = mul[neg[m[i][c]]][s]
                m[i] = [add[x][mul[f][y]] for x, y in zip(m[i], m[c])]
    return d
