"""Permutation groups via deterministic Schreier-Sims.

A permutation of {0..n-1} is a tuple p with p[i] the image of i.
Products read left to right: mul(a, b) applies a first, then b.
"""

from math import factorial, gcd


class PermError(ValueError):
    pass


class DegreeMismatch(PermError):
    pass


class NotSubgroup(PermError):
    pass


class UnknownFamily(PermError):
    pass


def identity(n):
    return tuple(range(n))


def mul(a, b):
    return tuple(b[x] for x in a)


def inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def is_identity(a):
    return all(i == x for i, x in enumerate(a))


def perm_power(a, k):
    r = identity(len(a))
    for _ in range(k):
        r = mul(r, a)
    return r


def from_cycles(n, *cycles):
    p = list(range(n))
    for c in cycles:
        for i, x in enumerate(c):
            p[x] = c[(i + 1) % len(c)]
    return tuple(p)


class _Level:
    __slots__ = ("point", "gens", "trans", "checked")

    def __init__(self, point):
        self.point = point
        self.gens = []
        # trans[b] maps the level point to b
        self.trans = {point: None}
        self.checked = set()


class PermGroup:
    def __init__(self, degree, generators=(), base_prefix=()):
        self.degree = degree
        self.generators = []
        self._seen = set()
        self.levels = []
        self._id = identity(degree)
        for b in base_prefix:
            self.levels.append(_Level(b))
        for g in generators:
            self.add(g)

    def _rep(self, lvl, b):
        t = lvl.trans[b]
        if t is None:
            return self._id
        return t

    def _extend_orbit(self, lvl):
        trans = lvl.trans
        frontier = list(trans)
        while frontier:
            nxt = []
            for b in frontier:
                u = self._rep(lvl, b)
                for s in lvl.gens:
                    c = s[b]
                    if c not in trans:
                        trans[c] = mul(u, s)
                        nxt.append(c)
            frontier = nxt

    def _strip(self, g, start=0):
        """Sift g through levels start..; return (residue, level reached)."""
        for j in range(start, len(self.levels)):
            lvl = self.levels[j]
            b = g[lvl.point]
            if b not in lvl.trans:
                return g, j
            u = self._rep(lvl, b)
            if lvl.trans[b] is not None:
                g = mul(g, inverse(u))
        return g, len(self.levels)

    def add(self, g):
        """Add a generator; returns True if it enlarged the group."""
        g = tuple(g)
        if len(g) != self.degree:
            raise DegreeMismatch(f"permutation of degree {len(g)} in group of degree {self.degree}")
        if g in self._seen:
            return False
        self._seen.add(g)
        if self.contains(g):
            return False
        self.generators.append(g)
        m = 0
        while m < len(self.levels) and g[self.levels[m].point] == self.levels[m].point:
            m += 1
        self._add_strong_from(g, 0, m)
        self._close(min(m, len(self.levels) - 1))
        return True

    def _close(self, i):
        """Deterministic Schreier-Sims: make levels i, i-1, ..., 0 complete."""
        while i >= 0:
            if i >= len(self.levels):
                i = len(self.levels) - 1
                continue
            lvl = self.levels[i]
            jumped = False
            for b in list(lvl.trans):
                u = self._rep(lvl, b)
                for k, s in enumerate(lvl.gens):
                    key = (b, k)
                    if key in lvl.checked:
                        continue
                    lvl.checked.add(key)
                    c = s[b]
                    sg = mul(mul(u, s), inverse(self._rep(lvl, c)))
                    if is_identity(sg):
                        continue
                    h, j = self._strip(sg, i + 1)
                    if j < len(self.levels) or not is_identity(h):
                        self._add_strong_from(h, i + 1, j)
                        i = j if j < len(self.levels) else len(self.levels) - 1
                        jumped = True
                        break
                if jumped:
                    break
            if not jumped:
                i -= 1

    def _add_strong_from(self, h, lo, j):
        if j == len(self.levels):
            moved = next(x for x in range(self.degree) if h[x] != x)
            self.levels.append(_Level(moved))
        for lvl in self.levels[lo:j + 1]:
            lvl.gens.append(h)
            self._extend_orbit(lvl)

    def order(self):
        o = 1
        for lvl in self.levels:
            o *= len(lvl.trans)
        return o

    def contains(self, g):
        g = tuple(g)
        if len(g) != self.degree:
            return False
        h, j = self._strip(g)
        return j == len(self.levels) and is_identity(h)

    __contains__ = contains

    @property
    def base(self):
        return [lvl.point for lvl in self.levels]

    def orbit(self, point):
        seen = {point}
        frontier = [point]
        while frontier:
            nxt = []
            for b in frontier:
                for s in self.generators:
                    c = s[b]
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return seen

    def is_transitive_on(self, points):
        points = set(points)
        if not points:
            return True
        return self.orbit(next(iter(sorted(points)))) >= points

    def stabilizer_order(self, point):
        """Order of the stabilizer of a point, via orbit-stabilizer."""
        return self.order() // len(self.orbit(point))

    def elements(self):
        """All elements (for small groups only)."""
        elems = [self._id]
        for lvl in reversed(self.levels):
            reps = [self._rep(lvl, b) for b in lvl.trans]
            elems = [mul(e, u) for u in reps for e in elems]
        return elems

    def random_element(self, rng):
        g = self._id
        for lvl in reversed(self.levels):
            b = rng.choice(sorted(lvl.trans))
            g = mul(g, self._rep(lvl, b))
        return g


def group_from_generators(perms, degree=None):
    perms = [tuple(p) for p in perms]
    if degree is None:
        if not perms:
            raise DegreeMismatch("degree needed for an empty generator list")
        degree = len(perms[0])
    for p in perms:
        if len(p) != degree:
            raise DegreeMismatch(f"mixed degrees {len(p)} and {degree}")
    return PermGroup(degree, perms)


def order(G):
    return G.order()


def contains(G, g):
    return G.contains(g)


def index(G, H):
    for h in H.generators:
        if not G.contains(h):
            raise NotSubgroup("H is not contained in G")
    return G.order() // H.order()


def closure(gens, degree=None):
    """Brute-force closure by breadth-first multiplication (oracle for small groups)."""
    gens = [tuple(g) for g in gens]
    n = degree if degree is not None else len(gens[0])
    e = identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


class ParityGroup:
    """A group of permutations that each carry a parity bit.

    The bit rides along as a transposition of two extra points appended to
    the domain.  The even part is the stabilizer of the first extra point.
    """

    def __init__(self, degree):
        self.degree = degree
        self.a, self.b = degree, degree + 1
        self.big = PermGroup(degree + 2, base_prefix=(degree,))
        self.plain = PermGroup(degree)

    def _lift(self, perm, odd):
        tail = (self.b, self.a) if odd else (self.a, self.b)
        return tuple(perm) + tail

    def add(self, perm, odd):
        grew = self.big.add(self._lift(perm, odd))
        if grew:
            self.plain.add(perm)
        return grew

    def contains(self, perm, odd=None):
        if odd is None:
            return self.plain.contains(perm)
        return self.big.contains(self._lift(perm, odd))

    def order(self):
        return self.plain.order()

    def even_order(self):
        lvl0 = self.big.levels[0]
        return self.big.order() // len(lvl0.trans)

    def index(self):
        return self.order() // self.even_order()

    def even_group(self):
        """The even part as a PermGroup on the original domain."""
        levels = self.big.levels
        gens = [g[:self.degree] for g in levels[1].gens] if len(levels) > 1 else []
        return group_from_generators(gens, self.degree) if gens else PermGroup(self.degree)

    def parity_ambiguous(self):
        """True iff the identity is reachable by an odd word."""
        return self.big.contains(self._lift(identity(self.degree), True))


def is_type_preserving_subgroup(G):
    """Even-parity subgroup of a ParityGroup; index in the whole is 1 or 2."""
    H = G.even_group()
    k = G.order() // H.order()
    if k not in (1, 2):
        raise PermError(f"even part has index {k}")
    return H


# catalog

def _prod(xs):
    r = 1
    for x in xs:
        r *= x
    return r


def order_gl(r, q):
    return _prod(q ** r - q ** i for i in range(r))


def order_pgl(r, q):
    return q ** (r * (r - 1) // 2) * _prod(q ** i - 1 for i in range(2, r + 1))


def order_psl(r, q):
    return order_pgl(r, q) // gcd(r, q - 1)


def order_psl_subfield(r, q, q0):
    """PSL_r(K;F): matrices over GF(q) with determinant in GF(q0)^x, modulo scalars."""
    if (q - 1) % (q0 - 1):
        raise UnknownFamily(f"GF({q0}) is not a subfield of GF({q})")
    sl_ext = order_gl(r, q) // (q - 1) * (q0 - 1)
    # scalars c with c^r in GF(q0)^x
    scal = sum(1 for k in range(q - 1) if (k * r) % ((q - 1) // (q0 - 1)) == 0)
    return sl_ext // scal


def order_psp(m, q):
    """|PSp_m(q)| for even m."""
    n = m // 2
    return q ** (n * n) * _prod(q ** (2 * i) - 1 for i in range(1, n + 1)) // gcd(2, q - 1)


def order_sp(m, q):
    n = m // 2
    return q ** (n * n) * _prod(q ** (2 * i) - 1 for i in range(1, n + 1))


def order_pgu(r, q):
    """|PGU_r(q)|, unitary group over GF(q^2)."""
    return q ** (r * (r - 1) // 2) * _prod(q ** i - (-1) ** i for i in range(2, r + 1))


def order_psu(r, q):
    return order_pgu(r, q) // gcd(r, q + 1)


def order_so_odd(m, q):
    """|SO_m(q)| for odd m (q odd)."""
    n = (m - 1) // 2
    return q ** (n * n) * _prod(q ** (2 * i) - 1 for i in range(1, n + 1))


def order_omega_odd(m, q):
    """|Omega_m(q)| = |P Omega_m(q)| for odd m, q odd."""
    return order_so_odd(m, q) // 2


def order_o_minus(m, q):
    """|GO^-_m(q)| for even m."""
    n = m // 2
    return 2 * q ** (n * (n - 1)) * (q ** n + 1) * _prod(q ** (2 * i) - 1 for i in range(1, n))


CATALOG = {
    "Sym": lambda n: factorial(n),
    "Alt": lambda n: factorial(n) // 2,
    "GL": order_gl,
    "PGL": order_pgl,
    "PSL": order_psl,
    "PSL_sub": order_psl_subfield,
    "Sp": order_sp,
    "PSp": order_psp,
    "PGU": order_pgu,
    "PSU": order_psu,
    "SO_odd": order_so_odd,
    "Omega_odd": order_omega_odd,
    "GO_minus": order_o_minus,
}


def catalog_order(family, *params):
    f = CATALOG.get(family)
    if f is None:
        raise UnknownFamily(f"unknown family {family!r}")
    return f(*params)


def catalog_matches(order_value, candidates):
    """Names of candidate (family, params) entries whose order equals order_value."""
    out = []
    for fam, params in candidates:
        try:
            if catalog_order(fam, *params) == order_value:
                out.append(f"{fam}({','.join(map(str, params))})")
        except UnknownFamily:
            continue
    return out
