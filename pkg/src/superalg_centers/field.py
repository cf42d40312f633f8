"""Exact arithmetic in GF(p^e) for odd primes p.

Elements are encoded as integers ``0 <= code < p**e``: the polynomial
``c_0 + c_1 t + ... + c_{e-1} t^{e-1}`` over GF(p) is stored as
``sum(c_i * p**i)``.  Prime-field elements therefore keep their usual
residue as code, and the same integer codes are used by the scalar API,
the numpy-vectorized API and the linear algebra in :mod:`linalg`.

Multiplication in proper extensions goes through discrete log tables
built from a primitive element; addition is digit-wise.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

MAX_DEGREE = 12


class FieldError(ValueError):
    pass


class NotOddPrime(FieldError):
    pass


class DegreeTooLarge(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- polynomial helpers over GF(p); coefficient lists, lowest degree first ----

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m."""
    a = _poly_trim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _poly_trim(a)
    return a


def _monic_polys(p, d):
    """All monic polynomials of degree d, lowest-degree coefficient first."""
    for low in itertools.product(range(p), repeat=d):
        yield list(reversed(low)) + [1]


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _poly_trim([c % p for c in poly])
    d = len(poly) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    if poly[0] == 0:
        return False
    for k in range(1, d // 2 + 1):
        for q in _monic_polys(p, k):
            if not _poly_mod(poly, q, p):
                return False
    return True


def lowest_irreducible(p: int, e: int):
    """Lexicographically least monic irreducible polynomial of degree e.

    Candidates are ordered by their coefficient list read from degree
    e-1 down to the constant term; the result is returned lowest degree
    first, with the leading 1 included.
    """
    for q in _monic_polys(p, e):
        if is_irreducible(q, p):
            return tuple(q)
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")


class FieldCtx:
    """The finite field GF(p^e).  Immutable once constructed."""

    def __init__(self, p: int, e: int, modulus):
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus_poly = tuple(modulus)
        self._pw = [p ** i for i in range(e)]
        self._tables = None
        self._add_table = None
        self.inv2 = self.inv(2)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.e, self.modulus_poly) == (
            other.p, other.e, other.modulus_poly)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus_poly))

    # -- encoding ------------------------------------------------------------
    def digits(self, a: int):
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def encode(self, digits) -> int:
        return sum((c % self.p) * w for c, w in zip(digits, self._pw))

    def from_int(self, n: int) -> int:
        return n % self.p

    def elements(self):
        return range(self.q)

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    def render(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self.digits(a)))):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = "t" if i == 1 else f"t^{i}"
                terms.append(mon if c == 1 else f"{c}*{mon}")
        return "+".join(terms) if terms else "0"

    # -- log tables for proper extensions ----------------------------------
    def _polymul_code(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.encode(_poly_mod([c % p for c in prod], self.modulus_poly, p) + [0] * e)

    def _build_tables(self):
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._polymul_code(x, g)
            if len(exp) == q - 1:
                break
        else:
            raise FieldError("no primitive element found")
        log = [0] * q
        for k, v in enumerate(exp):
            log[v] = k
        self._tables = (exp, log, np.array(exp, dtype=np.int64), np.array(log, dtype=np.int64))
        if q <= 729:
            self._add_table = [[self._add_digits(a, b) for b in range(q)] for a in range(q)]

    @property
    def tables(self):
        if self._tables is None:
            self._build_tables()
        return self._tables

    def _add_digits(self, a, b):
        p = self.p
        r, w = 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return r

    # -- scalar arithmetic on codes ------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self._tables is None:
            self._build_tables()
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        p = self.p
        r, w = 0, 1
        while a:
            r += (-(a % p) % p) * w
            a //= p
            w *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self.tables[0], self.tables[1]
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self.tables[0], self.tables[1]
        return exp[(-log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.e == 1:
            return pow(a, n, self.p)
        exp, log = self.tables[0], self.tables[1]
        return exp[(log[a] * n) % (self.q - 1)]

    def frob(self, a: int) -> int:
        return self.pow(a, self.p)

    def scale_int(self, n: int, a: int) -> int:
        """n * a for an ordinary integer n."""
        return self.mul(n % self.p, a)

    # -- numpy-vectorized arithmetic on code arrays ---------------------------
    def vadd(self, A, B):
        p = self.p
        if self.e == 1:
            return (A + B) % p
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        R = np.zeros(np.broadcast(A, B).shape, dtype=np.int64)
        for w in self._pw:
            R += (((A // w) % p + (B // w) % p) % p) * w
        return R

    def vneg(self, A):
        p = self.p
        if self.e == 1:
            return (-A) % p
        A = np.asarray(A, dtype=np.int64)
        R = np.zeros_like(A)
        for w in self._pw:
            R += ((-((A // w) % p)) % p) * w
        return R

    def vsub(self, A, B):
        p = self.p
        if self.e == 1:
            return (A - B) % p
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        R = np.zeros(np.broadcast(A, B).shape, dtype=np.int64)
        for w in self._pw:
            R += (((A // w) % p - (B // w) % p) % p) * w
        return R

    def vmul(self, A, B):
        if self.e == 1:
            return (A * B) % self.p
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        _, _, exp, log = self.tables
        R = exp[(log[A] + log[B]) % (self.q - 1)]
        return np.where((A == 0) | (B == 0), 0, R)

    def vinv(self, A):
        A = np.asarray(A, dtype=np.int64)
        if np.any(A == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.e == 1:
            return np.array([pow(int(a), self.p - 2, self.p) for a in A.ravel()],
                            dtype=np.int64).reshape(A.shape)
        _, _, exp, log = self.tables
        return exp[(-log[A]) % (self.q - 1)]

    def vfrom_int(self, A):
        return np.asarray(A, dtype=np.int64) % self.p


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> FieldCtx:
    """GF(p^e) with a deterministic modulus.  p must be an odd prime."""
    if p <= 2 or not is_prime(p):
        raise NotOddPrime(f"p={p} is not an odd prime")
    if e < 1:
        raise FieldError("extension degree must be >= 1")
    if e > MAX_DEGREE:
        raise DegreeTooLarge(f"e={e} exceeds the bound {MAX_DEGREE}")
    modulus = (0, 1) if e == 1 else lowest_irreducible(p, e)
    return FieldCtx(p, e, modulus)


class FieldElement:
    """A scalar of GF(p^e) bound to its field; thin wrapper over a code."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other.code
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.sub(b, self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.div(self.code, b))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.code))

    def __pow__(self, n: int):
        if n < 0:
            return FieldElement(self.ctx, self.ctx.pow(self.ctx.inv(self.code), -n))
        return FieldElement(self.ctx, self.ctx.pow(self.code, n))

    def inverse(self):
        return FieldElement(self.ctx, self.ctx.inv(self.code))

    def frobenius(self):
        return FieldElement(self.ctx, self.ctx.frob(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.e, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"FieldElement({self.ctx.render(self.code)})"

    def __str__(self):
        return self.ctx.render(self.code)


def artin_schreier_roots(ctx: FieldCtx, c) -> set[FieldElement]:
    """All t in GF(p^e) with t^p - t = c.

    t -> t^p - t is GF(p)-linear, so the roots are found by solving an
    e x e linear system over GF(p) in the power basis; its kernel is the
    prime field, hence the answer is empty or a coset of GF(p).
    """
    code = c.code if isinstance(c, FieldElement) else int(c)
    p, e = ctx.p, ctx.e
    cols = []
    for i in range(e):
        basis = p ** i
        cols.append(ctx.digits(ctx.sub(ctx.frob(basis), basis)))
    # solve over the prime field
    from . import linalg

    fp = make_field(p, 1)
    L = np.array(cols, dtype=np.int64).T
    sol = linalg.solve(fp, L, np.array(ctx.digits(code), dtype=np.int64))
    if sol is None:
        return set()
    t0 = ctx.encode(int(x) for x in sol)
    return {FieldElement(ctx, ctx.add(t0, k)) for k in range(p)}
