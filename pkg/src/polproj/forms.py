"""Standard forms of the finite embeddable polar spaces.

Coordinates are laid out as (x_-1, ..., x_-r, x_1, ..., x_r, x_0...),
where (e_-i, e_i) are hyperbolic pairs and the trailing coordinates carry
the anisotropic part.
"""

from itertools import product

from .linalg import DimensionMismatch, null_space, whole

SYMPLECTIC = "symplectic"
QUADRATIC = "quadratic"
HERMITIAN = "hermitian"


class FormError(ValueError):
    pass


class WrongKind(FormError):
    pass


def neg_index(i):
    """Coordinate position of e_-i (i >= 1)."""
    return i - 1


def _elliptic_kernel(F):
    """Coefficients (a, b) of the first irreducible t^2 + a t + b over F."""
    for a, b in product(F.elements, repeat=2):
        if b and all(F.add(F.add(F.mul(t, t), F.mul(a, t)), b) for t in F.elements):
            return a, b
    raise FormError(f"no irreducible quadratic over {F}")


class FormSpec:
    """One of the standard forms, fixed by (kind, field, rank, anisotropic data)."""

    def __init__(self, kind, field, rank, corank=0):
        if rank < 1:
            raise FormError("Witt rank must be at least 1")
        self.kind, self.field, self.rank, self.corank = kind, field, rank, corank
        F = field
        if kind == SYMPLECTIC:
            if corank:
                raise FormError("symplectic forms have no anisotropic part")
        elif kind == QUADRATIC:
            if corank == 0:
                raise FormError("corank 0 quadrics are top-thin (type D), out of scope")
            if corank == 1:
                self.kernel = (1,)
            elif corank == 2:
                self.kernel = _elliptic_kernel(F)
            else:
                raise FormError(f"quadratic corank must be 1 or 2, got {corank}")
        elif kind == HERMITIAN:
            if not F.has_involution():
                raise FormError(f"Hermitian forms need an even-degree field, got {F}")
            if corank not in (0, 1):
                raise FormError(f"Hermitian corank must be 0 or 1, got {corank}")
            # g0(x, y) = c x^s y with c + c^s = 1, so f0(x, y) = x^s y
            self.trace_one = next(c for c in F.elements
                                  if F.add(c, F.involution(c)) == 1)
        else:
            raise FormError(f"unknown kind {kind!r}")
        self.n = 2 * rank + corank
        self._check_anisotropic()

    @property
    def sigma(self):
        if self.kind == HERMITIAN:
            return self.field.sigma_t
        return list(self.field.elements)

    def __repr__(self):
        return f"FormSpec({self.kind}, {self.field}, rank={self.rank}, corank={self.corank})"

    def __eq__(self, other):
        return isinstance(other, FormSpec) and (self.kind, self.field, self.rank, self.corank) == (
            other.kind, other.field, other.rank, other.corank)

    def __hash__(self):
        return hash((self.kind, self.field, self.rank, self.corank))

    def _check_anisotropic(self):
        c = self.corank
        for v0 in product(self.field.elements, repeat=c):
            if any(v0) and self.g0(v0, v0) in self.trace_like():
                raise FormError("declared anisotropic part is isotropic")

    def trace_like(self):
        return self.field.trace_like_set(identity=self.kind != HERMITIAN)

    # anisotropic part
    def g0(self, v0, w0):
        """The (sigma,1)-linear form whose diagonal gives the anisotropic quadratic part."""
        F = self.field
        if not v0:
            return 0
        if self.kind == QUADRATIC:
            if self.corank == 1:
                return F.mul(self.kernel[0], F.mul(v0[0], w0[0]))
            a, b = self.kernel
            x, y = v0
            x2, y2 = w0
            return F.add(F.add(F.mul(x, x2), F.mul(a, F.mul(x, y2))), F.mul(b, F.mul(y, y2)))
        if self.kind == HERMITIAN:
            return F.mul(self.trace_one, F.mul(F.involution(v0[0]), w0[0]))
        return 0

    def f0(self, v0, w0):
        """Sesquilinear form associated to g0: g0(v, w) + g0(w, v)^sigma."""
        F = self.field
        s = self.sigma
        return F.add(self.g0(v0, w0), s[self.g0(w0, v0)])

    def _check(self, *vs):
        for v in vs:
            if len(v) != self.n:
                raise DimensionMismatch(f"vector of length {len(v)} for ambient dimension {self.n}")

    def bilinear(self, v, w):
        self._check(v, w)
        F = self.field
        add, mul = F.add_t, F.mul_t
        r = self.rank
        acc = 0
        if self.kind == SYMPLECTIC:
            for i in range(r):
                acc = F.sub(add[acc][mul[v[i]][w[r + i]]], mul[w[i]][v[r + i]])
            return acc
        s = self.sigma
        for i in range(r):
            acc = add[acc][add[mul[s[v[i]]][w[r + i]]][mul[s[v[r + i]]][w[i]]]]
        if self.corank:
            acc = add[acc][self.f0(v[2 * r:], w[2 * r:])]
        return acc

    def quadratic(self, v):
        """q(v) for quadrics; for Hermitian forms, the representative before reduction mod L_sigma."""
        if self.kind == SYMPLECTIC:
            raise WrongKind("symplectic forms have no quadratic form")
        self._check(v)
        F = self.field
        s = self.sigma
        r = self.rank
        acc = 0
        for i in range(r):
            acc = F.add(acc, F.mul(s[v[i]], v[r + i]))
        if self.corank:
            v0 = v[2 * r:]
            acc = F.add(acc, self.g0(v0, v0))
        return acc

    def pseudo_quadratic(self, v):
        """q(v) modulo L_sigma, as the frozenset coset."""
        x = self.quadratic(v)
        return frozenset(self.field.add(x, t) for t in self.trace_like())

    def is_point(self, v):
        """Whether the nonzero vector v spans a point of the polar space."""
        if self.kind == SYMPLECTIC:
            return True
        if self.kind == QUADRATIC:
            return self.quadratic(v) == 0
        # Hermitian variety condition
        return self.bilinear(v, v) == 0

    def gram_rows(self, v):
        """Row e with f(v, w) = sum(e_j * w_j) for all w."""
        n = self.n
        out = []
        for j in range(n):
            u = [0] * n
            u[j] = 1
            out.append(self.bilinear(v, tuple(u)))
        return tuple(out)

    def perp(self, U):
        if U.n != self.n:
            raise DimensionMismatch(f"subspace in dimension {U.n}, form in {self.n}")
        return null_space(self.field, self.n, [self.gram_rows(r) for r in U.rows])

    def radical(self):
        return self.perp(whole(self.field, self.n))

    def is_singular(self, U):
        rows = U.rows
        for i, v in enumerate(rows):
            if not self.is_point(v):
                return False
            for w in rows[i + 1:]:
                if self.bilinear(v, w):
                    return False
        return True

    def vector_space(self):
        return whole(self.field, self.n)


def symplectic(field, rank):
    return FormSpec(SYMPLECTIC, field, rank)


def quadratic(field, rank, corank):
    return FormSpec(QUADRATIC, field, rank, corank)


def hermitian(field, rank, odd_dim=False):
    return FormSpec(HERMITIAN, field, rank, 1 if odd_dim else 0)


def eval_bilinear(S, v, w):
    return S.bilinear(v, w)


def eval_quadratic(S, v):
    if S.kind != QUADRATIC:
        raise WrongKind(f"eval_quadratic needs a quadratic form, got {S.kind}")
    return S.quadratic(v)


def perp(S, U):
    return S.perp(U)


def is_singular(S, U):
    return S.is_singular(U)


def variety_agrees_with_pseudo_quadratic(S):
    """Exhaustive check that f(v,v)=0 and q(v) in L_sigma pick out the same vectors."""
    if S.kind != HERMITIAN:
        return True
    L = S.trace_like()
    F = S.field
    for v in product(F.elements, repeat=S.n):
        if (S.bilinear(v, v) == 0) != (S.quadratic(v) in L):
            return False
    return True


def space_label(S):
    """Surface syntax of the space, e.g. Sp(n=3,q=2) or U(n=3,q=2,corank=0)."""
    if S.kind == SYMPLECTIC:
        return f"Sp(n={S.rank},q={S.field.q})"
    if S.kind == QUADRATIC:
        return f"O(n={S.rank},q={S.field.q},corank={S.corank})"
    return f"U(n={S.rank},q={S.field.sqrt_q},corank={S.corank})"
