"""Finite polar spaces as concrete point sets with singular subspaces,
opposition, residues and the two projection maps between opposite subspaces.

Dimensions passed to the public functions are projective (a point has
dimension 0); `Subspace.dim` is the vector dimension.
"""

from itertools import product

from .linalg import (Subspace, contains, enumerate_subspaces, is_subspace_of, join, meet,
                     normalize, zero)

DEFAULT_POINT_CAP = 5000

UPPER = "upper"
LOWER = "lower"


class PolarError(ValueError):
    pass


class TooLarge(PolarError):
    pass


class NotOpposite(PolarError):
    pass


class NotContained(PolarError):
    pass


class BadDimension(PolarError):
    pass


def _normalized_vectors(F, n):
    elems = F.elements
    for lead in range(n):
        head = (0,) * lead + (1,)
        for tail in product(elems, repeat=n - lead - 1):
            yield head + tail


class PolarSpace:
    def __init__(self, spec, point_cap=DEFAULT_POINT_CAP):
        self.spec = spec
        self.field = spec.field
        self.n = spec.n
        self.rank = spec.rank
        self.point_cap = point_cap
        self._points = None
        self._perp = {}
        self._collinear = None
        self._nbr = None
        self._pbits = {}
        self._singular = {}

    def _enumerate_points(self):
        F, spec = self.field, self.spec
        candidates = (F.q ** self.n - 1) // (F.q - 1)
        pts = []
        for v in _normalized_vectors(F, self.n):
            if spec.is_point(v):
                pts.append(Subspace(F, self.n, (v,), (v.index(1),)))
                if len(pts) > self.point_cap:
                    raise TooLarge(f"more than {self.point_cap} points ({candidates} candidates)")
        pts.sort(key=Subspace.key)
        self._points = pts
        self.point_index = {p: i for i, p in enumerate(pts)}
        self.vec_index = {p.rows[0]: i for i, p in enumerate(pts)}
        self._singular[1] = list(pts)

    @property
    def points(self):
        if self._points is None:
            self._enumerate_points()
        return self._points

    def __repr__(self):
        return f"PolarSpace({self.spec!r}, points={len(self.points)})"

    def perp(self, U):
        P = self._perp.get(U)
        if P is None:
            P = self._perp[U] = self.spec.perp(U)
        return P

    def _build_neighbours(self):
        self.points
        F = self.field
        add, mul = F.add_t, F.mul_t
        vecs = [p.rows[0] for p in self.points]
        nbr = [0] * len(vecs)
        for i, v in enumerate(vecs):
            g = self.spec.gram_rows(v)
            gs = [(k, a) for k, a in enumerate(g) if a]
            bits = 0
            for j, w in enumerate(vecs):
                acc = 0
                for k, a in gs:
                    b = w[k]
                    if b:
                        acc = add[acc][mul[a][b]]
                if acc == 0:
                    bits |= 1 << j
            nbr[i] = bits
        self._nbr = nbr

    @property
    def neighbours(self):
        """Bitsets: bit j of neighbours[i] is set iff points i and j are collinear."""
        if self._nbr is None:
            self._build_neighbours()
        return self._nbr

    @property
    def collinear(self):
        """Symmetric boolean matrix over point indices (a point is collinear with itself)."""
        if self._collinear is None:
            m = len(self.points)
            self._collinear = [[bool(b >> j & 1) for j in range(m)] for b in self.neighbours]
        return self._collinear

    def perp_points(self, S):
        """Bitset of the points in S^perp, for a singular S."""
        nbr = self.neighbours
        bits = (1 << len(self.points)) - 1
        idx = self.vec_index
        F = self.field
        for r in S.rows:
            bits &= nbr[idx[normalize(F, r)]]
        return bits

    def points_in(self, S):
        return [p for p in self.points if contains(S, p.rows[0])]

    def points_of(self, U):
        """Points of the polar space lying in the subspace U, via the point index."""
        return [p for p in enumerate_subspaces(U, 1) if p in self.point_index]

    def is_singular(self, U):
        return self.spec.is_singular(U)

    def singular_subspaces_vec(self, m):
        """All singular subspaces of vector dimension m, canonically ordered."""
        if m <= 0:
            return [zero(self.field, self.n)] if m == 0 else []
        if m > self.rank:
            return []
        self.points
        if m not in self._singular:
            prev = self.singular_subspaces_vec(m - 1)
            found = set()
            for S in prev:
                found.update(self._extensions(S))
            self._singular[m] = sorted(found, key=Subspace.key)
        return self._singular[m]

    def _extensions(self, S):
        """Singular subspaces of dimension dim(S)+1 containing the singular S."""
        bits = self.perp_points(S) & ~self.point_bits(S)
        out = set()
        pts = self.points
        while bits:
            j = (bits & -bits).bit_length() - 1
            W = join(S, pts[j])
            out.add(W)
            bits &= ~self.point_bits(W)
        return out

    def point_bits(self, U):
        """Bitset of the points lying in U."""
        bits = self._pbits.get(U)
        if bits is None:
            self.points
            idx = self.vec_index
            bits = 0
            for v in U.point_vectors():
                i = idx.get(v)
                if i is not None:
                    bits |= 1 << i
            self._pbits[U] = bits
        return bits

    def singular_subspaces(self, d):
        return iter(self.singular_subspaces_vec(d + 1))

    def extensions(self, S):
        return sorted(self._extensions(S), key=Subspace.key)

    def is_opposite(self, U, V):
        if U.dim != V.dim:
            raise BadDimension(f"dimensions {U.dim - 1} and {V.dim - 1} differ")
        return meet(U, self.perp(V)).dim == 0

    def project_lower(self, U, V, S):
        if not self.is_opposite(U, V):
            raise NotOpposite("lower projection needs opposite subspaces")
        if not is_subspace_of(S, U):
            raise NotContained("S must lie in U")
        return meet(self.perp(S), V)

    def project_upper(self, U, V, W):
        if not self.is_opposite(U, V):
            raise NotOpposite("upper projection needs opposite subspaces")
        if W.dim != U.dim + 1 or not is_subspace_of(U, W) or not self.is_singular(W):
            raise BadDimension("W must be a singular subspace one dimension above U")
        return self._up(V, W)

    def _up(self, V, W):
        return join(V, meet(W, self.perp(V)))

    def _down(self, V, S):
        return meet(self.perp(S), V)

    def residue(self, U, side=UPPER):
        return Residue(self, U, side)


def build(spec, point_cap=DEFAULT_POINT_CAP, lazy=False):
    """Construct the polar space; points are enumerated now unless lazy."""
    P = PolarSpace(spec, point_cap)
    if not lazy:
        P.points
    return P


def singular_subspaces(P, d):
    return P.singular_subspaces(d)


def is_opposite(P, U, V):
    return P.is_opposite(U, V)


def project_lower(P, U, V, S):
    return P.project_lower(U, V, S)


def project_upper(P, U, V, W):
    return P.project_upper(U, V, W)


def residue(P, U, side=UPPER):
    return P.residue(U, side)


class Residue:
    """Upper or lower residue of a singular subspace U.

    `levels[i]` lists the elements of the i-th type in canonical order;
    chambers are maximal flags, one element per type, stored as tuples.
    Level 0 elements play the role of points of the residue and level 1
    elements the role of lines.
    """

    def __init__(self, space, U, side):
        if side not in (UPPER, LOWER):
            raise BadDimension(f"unknown side {side!r}")
        self.space, self.U, self.side = space, U, side
        m = U.dim
        if side == UPPER:
            if m > space.rank or m < 1:
                raise BadDimension("upper residue needs a nonzero singular subspace")
            levels = []
            cur = [U]
            for _ in range(space.rank - m):
                nxt = set()
                for W in cur:
                    nxt.update(space._extensions(W))
                cur = sorted(nxt, key=Subspace.key)
                levels.append(cur)
        else:
            levels = [list(enumerate_subspaces(U, k)) for k in range(1, m)]
        self.levels = levels
        self.elements = [e for lev in levels for e in lev]
        self.element_index = {e: i for i, e in enumerate(self.elements)}
        self.chambers = self._flags()
        self.chamber_index = {c: i for i, c in enumerate(self.chambers)}

    def _flags(self):
        if not self.levels:
            return [] if self.side == UPPER and self.U.dim == self.space.rank else [()]
        flags = [(e,) for e in self.levels[0]]
        for lev in self.levels[1:]:
            nxt = []
            for fl in flags:
                top = fl[-1]
                for e in lev:
                    if is_subspace_of(top, e):
                        nxt.append(fl + (e,))
            flags = nxt
        flags.sort(key=lambda fl: tuple(e.rows for e in fl))
        return flags

    def chamber_index_by_elements(self):
        """Map from sorted element-index tuples to chamber indices."""
        ci = self.__dict__.get("_cie")
        if ci is None:
            eidx = self.element_index
            ci = self._cie = {tuple(sorted(eidx[e] for e in ch)): i
                              for i, ch in enumerate(self.chambers)}
        return ci

    @property
    def rank(self):
        return len(self.levels)

    @property
    def points(self):
        return self.levels[0] if self.levels else []

    @property
    def lines(self):
        return self.levels[1] if len(self.levels) > 1 else []

    def points_on(self, line):
        cache = self.__dict__.setdefault("_on", {})
        out = cache.get(line)
        if out is None:
            out = cache[line] = [x for x in self.points if is_subspace_of(x, line)]
        return out

    def is_empty(self):
        return not self.chambers

    def __repr__(self):
        return (f"Residue({self.side}, dim={self.U.dim - 1}, "
                f"elements={len(self.elements)}, chambers={len(self.chambers)})")


def geometric_hyperplane_check(R, S):
    """True iff the set S of residue points is a subspace meeting every residue line."""
    S = set(S)
    lines = R.lines
    if not lines:
        return bool(S) or not R.points
    for L in lines:
        on = R.points_on(L)
        k = sum(1 for x in on if x in S)
        if k == 0:
            return False
        if 1 < k < len(on):
            return False
    return True
