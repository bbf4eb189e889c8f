"""Perspectivities, closed chains and their action on chambers.

A closed chain F = F1, F2, ..., Fk, F1 of pairwise consecutive opposite
subspaces composes the perspectivities between their residues into a
self-map of Res(F).  That self-map is recorded as a permutation of the
chamber list of Res(F), together with the hop count parity.
"""

from itertools import product

from .linalg import (contains, is_subspace_of, join, lincomb, meet,
                     normalize, rref, span, unit)
from .permgrp import identity, inverse, is_identity, mul
from .polar import LOWER, UPPER, NotOpposite, geometric_hyperplane_check

PRESERVING = "preserving"
REVERSING = "reversing"
NOT_APPLICABLE = "n/a"


class ProjError(ValueError):
    pass


class NoSuchP3(ProjError):
    pass


class DegenerateD(ProjError):
    pass


class NotAHomology(ProjError):
    pass


class Singular(ProjError):
    pass


class NotAdmissible(ProjError):
    pass


def push(P, side, target, x):
    """Image of the residue element x under the perspectivity onto `target`."""
    if side == UPPER:
        return join(target, meet(x, P.perp(target)))
    return meet(P.perp(x), target)


def perspectivity(P, U, V, side):
    """Element map Res(U) -> Res(V) as a dict over the elements of Res(U)."""
    if not P.is_opposite(U, V):
        raise NotOpposite("perspectivity needs opposite subspaces")
    R = P.residue(U, side)
    return {x: push(P, side, V, x) for x in R.elements}


class Chain:
    def __init__(self, base, hops):
        self.base = base
        self.hops = list(hops)
        if self.hops and self.hops[0] != base.U:
            raise ProjError("a chain must start at the base subspace")

    @property
    def side(self):
        return self.base.side

    @property
    def closed(self):
        return not self.hops or self.hops[0] == self.hops[-1]

    @property
    def length(self):
        return max(len(self.hops) - 1, 0)

    def reversed(self):
        return Chain(self.base, list(reversed(self.hops)))

    def then(self, other):
        """Concatenation: walk self, then other (both closed at the same base)."""
        if not self.hops:
            return other
        if not other.hops:
            return self
        return Chain(self.base, self.hops + other.hops[1:])

    def __repr__(self):
        return f"Chain({self.side}, length={self.length})"


class ChamberPerm:
    def __init__(self, residue, perm, parity, type_action):
        self.residue = residue
        self.perm = tuple(perm)
        self.parity = parity
        self.type_action = type_action

    @property
    def odd(self):
        return self.parity == 1

    def is_identity(self):
        return is_identity(self.perm)

    def __mul__(self, other):
        """self then other."""
        parity = (self.parity + other.parity) % 2
        ta = self.type_action
        if ta != NOT_APPLICABLE:
            ta = REVERSING if parity else PRESERVING
        return ChamberPerm(self.residue, mul(self.perm, other.perm), parity, ta)

    def inverse(self):
        return ChamberPerm(self.residue, inverse(self.perm), self.parity, self.type_action)

    def point_action(self):
        """Induced map on residue points, as a dict (defined for type-preserving elements)."""
        R = self.residue
        out = {}
        for i, ch in enumerate(R.chambers):
            img = R.chambers[self.perm[i]]
            out[ch[0]] = img[0] if self.type_action != REVERSING else img[-1]
        return out

    def __eq__(self, other):
        return isinstance(other, ChamberPerm) and self.perm == other.perm and self.parity == other.parity

    def __hash__(self):
        return hash((self.perm, self.parity))

    def __repr__(self):
        return f"ChamberPerm(parity={self.parity}, {self.type_action}, moved={sum(1 for i, x in enumerate(self.perm) if i != x)})"


def element_images(P, R, hops):
    """Push every element of R through the hops; returns the list of final images."""
    side = R.side
    for a, b in zip(hops, hops[1:]):
        if not P.is_opposite(a, b):
            raise NotOpposite("consecutive hops must be opposite")
    imgs = list(R.elements)
    for b in hops[1:]:
        imgs = [push(P, side, b, x) for x in imgs]
    return imgs


def chamber_perm_from_images(R, imgs, parity):
    """Chamber permutation induced by an element map given as images of R.elements."""
    idx = R.element_index
    pos = [idx[y] for y in imgs]
    return chamber_perm_from_index_map(R, pos, parity)


def chamber_perm_from_index_map(R, pos, parity):
    eidx = R.element_index
    cidx = R.chamber_index_by_elements()
    perm = []
    for ch in R.chambers:
        key = tuple(sorted(pos[eidx[e]] for e in ch))
        perm.append(cidx[key])
    if R.side == LOWER and R.levels:
        lvl0 = len(R.levels[0])
        first = R.chambers[0][0]
        ta = PRESERVING if pos[eidx[first]] < lvl0 else REVERSING
        if len(R.levels) == 1:
            # a projective line: points are also hyperplanes, so use the parity
            ta = REVERSING if parity else PRESERVING
    else:
        ta = NOT_APPLICABLE
    return ChamberPerm(R, perm, parity, ta)


def evaluate_chain(c, P=None):
    R = c.base
    P = P or R.space
    if not c.hops:
        return ChamberPerm(R, identity(len(R.chambers)), 0,
                           NOT_APPLICABLE if R.side == UPPER else PRESERVING)
    if not c.closed:
        raise ProjError("only closed chains evaluate to self-projectivities")
    imgs = element_images(P, R, c.hops)
    return chamber_perm_from_images(R, imgs, c.length % 2)


def shorten_chain(P, hops):
    """Drop middle points of point chains whose consecutive perp-intersections agree."""
    hops = list(hops)
    if not hops or hops[0].dim != 1:
        return hops
    changed = True
    while changed and len(hops) > 3:
        changed = False
        for i in range(1, len(hops) - 1):
            a, b, c = hops[i - 1], hops[i], hops[i + 1]
            if a == c:
                continue
            if meet(P.perp(a), P.perp(b)) == meet(P.perp(b), P.perp(c)) and P.is_opposite(a, c):
                del hops[i]
                changed = True
                break
    return hops


# reflections from length-3 point loops

def _first_point_on(P, line, exclude):
    for v in line.point_vectors():
        pt = span(P.field, P.n, v)
        if pt not in exclude:
            return pt
    return None


def reflection_loop(P, p1, p2, H, k, kk):
    """Closed chain p1, p2, p3, p1 whose projectivity fixes the lines p1x, x in H,
    and maps p1k to p1kk.

    H is a linear hyperplane of the space p1^perp cap p2^perp; its points are
    the points of the polar space inside it.
    """
    if not P.is_opposite(p1, p2):
        raise NoSuchP3("p1 and p2 must be opposite")
    gamma = meet(P.perp(p1), P.perp(p2))
    if not is_subspace_of(H, gamma) or H.dim != gamma.dim - 1:
        raise NoSuchP3("H must be a hyperplane of the space p1^perp cap p2^perp")
    for x in (k, kk):
        if not is_subspace_of(x, gamma) or is_subspace_of(x, H):
            raise NoSuchP3("k and k' must be points of Gamma outside H")
    K = meet(P.perp(k), H)
    if K != meet(P.perp(kk), H):
        raise NoSuchP3("k^perp cap H and k'^perp cap H differ")
    if k != kk and P.spec.bilinear(k.rows[0], kk.rows[0]) == 0:
        raise NoSuchP3("k and k' must be non-collinear")
    l1 = join(p1, kk)
    k2 = _first_point_on(P, l1, {p1, kk})
    m = meet(P.perp(k2), join(p2, k))
    if m.dim != 1:
        raise NoSuchP3("no line through k'' meets p2k")
    L = join(k2, m)
    h = None
    for v in H.point_vectors():
        if P.spec.is_point(v) and not contains(K, v):
            h = span(P.field, P.n, v)
            break
    if h is None:
        raise NoSuchP3("H has no point outside K")
    p3 = meet(L, P.perp(h))
    if p3.dim != 1:
        raise NoSuchP3("L lies in h^perp")
    if not (P.is_opposite(p3, p1) and P.is_opposite(p3, p2)):
        raise NoSuchP3("p3 is not opposite both p1 and p2")
    R = P.residue(p1, UPPER)
    return Chain(R, [p1, p2, p3, p1])


def fixed_residue_points(cp):
    act = cp.point_action()
    return [x for x, y in act.items() if x == y]


def loop3_hyperplane(P, p1, p2, p3):
    """Residue points p1x with x in p1^perp cap p2^perp cap p3^perp."""
    common = meet(meet(P.perp(p1), P.perp(p2)), P.perp(p3))
    R = P.residue(p1, UPPER)
    return [L for L in R.points if meet(L, common).dim == 1]


# homologies of maximal subspaces

def e(S, i):
    """Standard basis vector e_i (i in -r..-1, 1..r)."""
    r = S.rank
    return unit(S.n, -i - 1 if i < 0 else r + i - 1)


def homology_g(S, v0, t):
    """g = -g0(v0, v0) + t - t^sigma, chosen so that e_-1 + g e_1 + v0 is singular."""
    F = S.field
    s = S.sigma
    return F.add(F.neg(S.g0(v0, v0)), F.sub(t, s[t]))


def homology_D(S, v0, w0, t, u):
    """The factor (g2 g1 + f0(w0, v0) + 1) of the quadruple with parameters (v0, w0, t, u)."""
    F = S.field
    g1 = homology_g(S, v0, t)
    g2 = homology_g(S, w0, u)
    return F.add(F.add(F.mul(g2, g1), S.f0(w0, v0)), 1)


def homology_subspaces(S, v0, w0, t, u):
    F, r, n = S.field, S.rank, S.n
    s = S.sigma
    g1 = homology_g(S, v0, t)
    g2 = homology_g(S, w0, u)

    def vec(coeffs, tail):
        v = [0] * n
        for i, x in coeffs.items():
            v[-i - 1 if i < 0 else r + i - 1] = F.add(v[-i - 1 if i < 0 else r + i - 1], x)
        for j, x in enumerate(tail):
            v[2 * r + j] = x
        return tuple(v)

    M1 = rref(F, n, [e(S, -i) for i in range(1, r + 1)])
    M2 = rref(F, n, [e(S, i) for i in range(1, r + 1)])
    M3 = rref(F, n, [vec({1: g1, -1: 1}, v0)] + [e(S, -i) for i in range(2, r + 1)])
    M4 = rref(F, n, [vec({-1: s[g2], 1: 1}, w0)] + [e(S, i) for i in range(2, r + 1)])
    return M1, M2, M3, M4


def homology_quadruple(P, v0=(), w0=(), t=0, u=0):
    S = P.spec
    v0, w0 = tuple(v0), tuple(w0)
    if len(v0) != S.corank or len(w0) != S.corank:
        raise ProjError(f"anisotropic vectors must have length {S.corank}")
    if homology_D(S, v0, w0, t, u) == 0:
        raise DegenerateD("D(v0, w0, t, u) = 0")
    M1, M2, M3, M4 = homology_subspaces(S, v0, w0, t, u)
    for M in (M3, M4):
        if not S.is_singular(M):
            raise ProjError("quadruple subspace is not singular")
    R = P.residue(M1, LOWER)
    return Chain(R, [M1, M2, M3, M4, M1])


def extract_homology_factor(cp, center=None):
    """Scalar D of a homology given as a chamber permutation of a lower residue."""
    R = cp.residue
    if R.side != LOWER:
        raise NotAHomology("homologies live on lower residues")
    if cp.type_action == REVERSING:
        raise NotAHomology("a duality is not a homology")
    if cp.is_identity():
        return 1
    F = R.U.field
    act = cp.point_action()
    pts = R.points
    fixed = [x for x in pts if act[x] == x]
    m = R.U.dim
    if center is None:
        if m == 2:
            if len(fixed) != 2:
                raise NotAHomology("a homology of a line fixes exactly two points")
            center = fixed[1]
        else:
            center = None
            for c in fixed:
                rest = [x for x in fixed if x != c]
                A = rref(F, R.U.n, [x.rows[0] for x in rest])
                if A.dim == m - 1 and not contains(A, c.rows[0]):
                    center = c
                    break
            if center is None:
                raise NotAHomology("no centre off a pointwise fixed hyperplane")
    rest = [x for x in fixed if x != center]
    axis = rref(F, R.U.n, [x.rows[0] for x in rest])
    if axis.dim != m - 1 or contains(axis, center.rows[0]):
        raise NotAHomology("fixed points do not form hyperplane plus centre")
    if m == 2:
        line = R.U
    else:
        line = next((L for L in R.lines if is_subspace_of(center, L)), None)
    z = meet(line, axis)
    zv, cv = z.rows[0], center.rows[0]
    others = [x for x in pts if is_subspace_of(x, line) and x not in (z, center)]
    if not others:
        raise NotAHomology("line too short to coordinatize")
    unit_pt = others[0]
    a = _coord(F, zv, cv, unit_pt.rows[0])
    img = act[unit_pt]
    b = _coord(F, zv, cv, img.rows[0])
    return F.div(b, a)


def _coord(F, zv, cv, w):
    """For w proportional to zv + x cv, return x."""
    for i in range(len(w)):
        if zv[i]:
            lam = F.div(w[i], zv[i])
            break
    for i in range(len(w)):
        if cv[i]:
            rest = F.sub(w[i], F.mul(lam, zv[i]))
            return F.div(rest, F.mul(lam, cv[i]))
    raise NotAHomology("degenerate coordinates")


# char-2 conic elation

def char2_conic_elation(F, k, a, b):
    """The elation matrix (acting on column vectors (X, Y, Z)) fixing X = kZ
    pointwise and preserving the conic Y^2 = XZ.

    Admissible parameters satisfy 1 + a b^2 != 0 and, unless b = 0 (the
    identity), a*k = 1: the matrix fixes the line X = a^-1 Z.
    """
    if F.p != 2:
        raise ProjError("the conic elation is a characteristic 2 construction")
    M = elation_matrix(F, a, b)
    if b and F.mul(a, k) != 1:
        raise NotAdmissible("the matrix fixes the line X = a^-1 Z, so a*k must be 1")
    return M


def admissible(F, k, a, b):
    return F.add(1, F.mul(a, F.mul(b, b))) != 0 and (b == 0 or F.mul(a, k) == 1)


def elation_matrix(F, a, b):
    """The raw matrix, without the axis check."""
    den = F.add(1, F.mul(a, F.mul(b, b)))
    if den == 0:
        raise Singular("1 + a b^2 = 0")
    c = F.inv(den)
    b2 = F.mul(b, b)
    ab = F.mul(a, b)
    return [[c, 0, F.mul(b2, c)], [F.mul(ab, c), 1, F.mul(b, c)], [F.mul(F.mul(ab, ab), c), 0, c]]


def apply_matrix(F, M, v):
    return normalize(F, tuple(lincomb(F, len(v), v, list(zip(*M)))))


def plane_points(F):
    return [normalize(F, v) for v in _proj_vectors(F, 3)]


def _proj_vectors(F, n):
    for lead in range(n):
        for tail in product(F.elements, repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def conic_points(F):
    """Points of Y^2 = XZ in PG(2, F)."""
    return [v for v in plane_points(F) if F.mul(v[1], v[1]) == F.mul(v[0], v[2])]


def line_points(F, k):
    """Points of X = kZ."""
    return [v for v in plane_points(F) if v[0] == F.mul(k, v[2])]


def elation_preserves_conic(F, M):
    C = set(conic_points(F))
    return all(apply_matrix(F, M, v) in C for v in C)


def elation_fixes_line(F, M, k):
    return all(apply_matrix(F, M, v) == v for v in line_points(F, k))


# decomposition into two reflections

def two_reflection_decomposition_check(theta, reflections):
    """Search theta = rho1 * rho2 with rho1, rho2 in the given reflection set.

    Returns a dict with keys found, rho1, rho2 (indices into the list).
    """
    refl = list(reflections)
    if theta.is_identity():
        return {"found": True, "rho1": None, "rho2": None, "trivial": True}
    lookup = {}
    for i, r in enumerate(refl):
        lookup.setdefault(r.perm, i)
    for i, r in enumerate(refl):
        rest = mul(inverse(r.perm), theta.perm)
        j = lookup.get(rest)
        if j is not None:
            return {"found": True, "rho1": i, "rho2": j, "trivial": False}
    return {"found": False, "rho1": None, "rho2": None, "trivial": False}


def is_hyperplane_fixing(cp):
    """Whether the fixed residue points of cp form a geometric hyperplane."""
    return geometric_hyperplane_check(cp.residue, fixed_residue_points(cp))
