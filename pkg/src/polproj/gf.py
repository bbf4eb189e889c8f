"""Small finite fields GF(p^k) with integer-encoded elements.

An element is the integer sum(c_i * p**i) of its polynomial coefficients
modulo a fixed irreducible polynomial.  All arithmetic goes through
precomputed tables, so every operation is a list lookup.
"""

from functools import lru_cache

DEFAULT_MAX_ORDER = 81
HARD_MAX_ORDER = 256

# one canonical irreducible per (p, k): coefficients of x^0..x^(k-1),
# the leading x^k coefficient is implicitly 1
MODULI = {
    (2, 2): (1, 1),
    (2, 3): (1, 1, 0),
    (2, 4): (1, 1, 0, 0),
    (2, 5): (1, 0, 1, 0, 0),
    (2, 6): (1, 1, 0, 0, 0, 0),
    (2, 7): (1, 1, 0, 0, 0, 0, 0),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0),
    (3, 2): (2, 2),
    (3, 3): (1, 2, 0),
    (3, 4): (2, 0, 0, 2),
    (3, 5): (1, 2, 0, 0, 0),
    (5, 2): (2, 4),
    (5, 3): (3, 3, 0),
    (7, 2): (3, 6),
    (11, 2): (2, 7),
    (13, 2): (2, 12),
}


class FieldError(ValueError):
    pass


class NonPrime(FieldError):
    pass


class OrderTooLarge(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class NoInvolution(FieldError):
    pass


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_power(q):
    """Return (p, k) with q = p**k, or raise NonPrime."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            k, m = 0, q
            while m % p == 0:
                m //= p
                k += 1
            if m == 1:
                return p, k
            break
    raise NonPrime(f"{q} is not a prime power")


def _digits(a, p, k):
    out = []
    for _ in range(k):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds, p):
    a = 0
    for c in reversed(ds):
        a = a * p + c
    return a


class Field:
    def __init__(self, p, k=1, max_order=DEFAULT_MAX_ORDER):
        if not is_prime(p):
            raise NonPrime(f"{p} is not prime")
        if k < 1:
            raise FieldError("degree must be at least 1")
        if max_order > HARD_MAX_ORDER:
            raise OrderTooLarge(f"bound {max_order} exceeds {HARD_MAX_ORDER}")
        q = p ** k
        if q > max_order:
            raise OrderTooLarge(f"GF({q}) exceeds the order bound {max_order}")
        if k > 1 and (p, k) not in MODULI:
            raise OrderTooLarge(f"no modulus for GF({p}^{k})")
        self.p, self.k, self.q = p, k, q
        self.modulus = MODULI.get((p, k), ())
        self.elements = tuple(range(q))
        self._build_tables()

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        digs = [_digits(a, p, k) for a in range(q)]
        self.add_t = [[_undigits([(x + y) % p for x, y in zip(digs[a], digs[b])], p)
                       for b in range(q)] for a in range(q)]
        self.neg_t = [_undigits([(-x) % p for x in digs[a]], p) for a in range(q)]
        self.sub_t = [[self.add_t[a][self.neg_t[b]] for b in range(q)] for a in range(q)]

        if k == 1:
            self.mul_t = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            # antilog table from a primitive element, then mul via logs
            gen = self._find_primitive(digs)
            exp = [1]
            for _ in range(q - 2):
                exp.append(self._polymul(exp[-1], gen, digs))
            log = [None] * q
            for i, e in enumerate(exp):
                log[e] = i
            self.exp_t, self.log_t, self.generator = exp, log, gen
            self.mul_t = [[0 if a == 0 or b == 0 else exp[(log[a] + log[b]) % (q - 1)]
                           for b in range(q)] for a in range(q)]
        self.inv_t = [None] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_t[a][b] == 1:
                    self.inv_t[a] = b
                    break

    def _polymul(self, a, b, digs):
        p, k = self.p, self.k
        da, db = digs[a], digs[b]
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for i, m in enumerate(self.modulus):
                    prod[deg - k + i] = (prod[deg - k + i] - c * m) % p
        return _undigits(prod[:k], p)

    def _find_primitive(self, digs):
        q = self.q
        for g in range(2, q):
            x, seen = 1, 1
            while True:
                x = self._polymul(x, g, digs)
                if x == 1:
                    break
                seen += 1
            if seen == q - 1:
                return g
        raise FieldError("modulus is not irreducible")

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def add(self, a, b):
        return self.add_t[a][b]

    def sub(self, a, b):
        return self.sub_t[a][b]

    def neg(self, a):
        return self.neg_t[a]

    def mul(self, a, b):
        return self.mul_t[a][b]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.inv_t[a]

    def div(self, a, b):
        return self.mul_t[a][self.inv(b)]

    def pow(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul_t[r][a]
        return r

    def has_involution(self):
        return self.k % 2 == 0

    @property
    def sqrt_q(self):
        if not self.has_involution():
            raise NoInvolution(f"{self} has odd degree")
        return self.p ** (self.k // 2)

    def involution(self, a):
        """x -> x^sqrt(q), the unique involutory automorphism."""
        return self.sigma_t[a]

    @property
    def sigma_t(self):
        t = self.__dict__.get("_sigma_t")
        if t is None:
            e = self.sqrt_q
            t = self._sigma_t = [self.pow(a, e) for a in range(self.q)]
        return t

    def fixed_subfield(self):
        return [a for a in self.elements if self.sigma_t[a] == a]

    def trace_like_set(self, identity=False):
        """The additive group {t - sigma(t)}; sigma is the identity if asked or if k is odd."""
        if identity or not self.has_involution():
            return frozenset({0})
        s = self.sigma_t
        return frozenset(self.sub_t[t][s[t]] for t in self.elements)

    def squares(self):
        return frozenset(self.mul_t[a][a] for a in self.elements if a)

    def fmt(self, a):
        if self.k == 1:
            return str(a)
        return "".join(map(str, _digits(a, self.p, self.k)))


@lru_cache(maxsize=None)
def field_create(p, k=1, max_order=DEFAULT_MAX_ORDER):
    return Field(p, k, max_order)


def gf(q, max_order=DEFAULT_MAX_ORDER):
    p, k = prime_power(q)
    return field_create(p, k, max_order)
