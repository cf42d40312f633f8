"""The enveloping superalgebra U(g) in PBW normal form.

A monomial is a tuple of exponents indexed by position in a fixed total
order of the basis (odd exponents are 0 or 1).  Products are computed by
left-multiplying generators into normal form with the rewriting rules

    u v -> (-1)^{|u||v|} v u + [u, v]     for u after v in the order,
    y y -> 1/2 [y, y]                      for odd y,

and, in reduced mode (a p-character chi is given), x^p -> x^[p] + chi(x)^p
for even x.  The last rule may be applied anywhere because
x^p - x^[p] is central.

Two orders are in use: the storage order (basis index order, even before
odd) and the triangular order n^- < h < n^+ needed by the Harish-Chandra
projection and by baby Verma modules.
"""

from __future__ import annotations

import sys
from itertools import product as iproduct

import numpy as np

from . import linalg
from .superalg import LieSuperalgebra, OddInput, PCharacter, WeylElement

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class DegreeBoundExceeded(ValueError):
    pass


def _add_into(ctx, acc: dict, elem: dict, coef: int = 1):
    if coef == 0:
        return acc
    add, mul = ctx.add, ctx.mul
    for m, c in elem.items():
        v = add(acc.get(m, 0), c if coef == 1 else mul(c, coef))
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
    return acc


class PBWEngine:
    """Straightening in U(g) (chi is None) or U_chi(g) for one basis order."""

    def __init__(self, g: LieSuperalgebra, order=None, chi: PCharacter | None = None,
                 degree_cap: int | None = None):
        self.g = g
        self.ctx = ctx = g.field
        self.order = list(order) if order is not None else list(range(g.n))
        self.pos = {b: i for i, b in enumerate(self.order)}
        n = g.n
        self.n = n
        self.parity = [g.basis[b].parity for b in self.order]
        self.chi = chi
        self.reduced = chi is not None
        self.degree_cap = degree_cap
        self.p = g.p
        self.half = ctx.inv2
        self.bracket = {}
        for (i, j), d in g.structure_constants.items():
            self.bracket[(self.pos[i], self.pos[j])] = [(self.pos[k], c) for k, c in sorted(d.items())]
        self.pmap = {}
        self.chi_p = {}
        if self.reduced:
            for i, d in g.p_map.items():
                self.pmap[self.pos[i]] = [(self.pos[k], c) for k, c in sorted(d.items())]
                self.chi_p[self.pos[i]] = ctx.frob(chi.values[i])
        self._cache = {}
        self.one = (0,) * n

    # -- conversions ------------------------------------------------------------
    def monomial_from_basis(self, exps_by_basis) -> tuple:
        m = [0] * self.n
        for b, e in enumerate(exps_by_basis):
            m[self.pos[b]] = e
        return tuple(m)

    def monomial_to_basis(self, m) -> tuple:
        out = [0] * self.n
        for i, e in enumerate(m):
            out[self.order[i]] = e
        return tuple(out)

    def letters(self, m):
        """Positions of the generators making up m, left to right."""
        out = []
        for i, e in enumerate(m):
            out.extend([i] * e)
        return out

    # -- core rewriting -----------------------------------------------------------
    def lmul_gen(self, k: int, m: tuple) -> dict:
        """Normal form of (generator at position k) * m."""
        key = (k, m)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        ctx = self.ctx
        a = next((i for i, e in enumerate(m) if e), None)
        if a is None or k < a:
            mm = list(m)
            mm[k] = 1
            if self.degree_cap is not None and sum(mm) > self.degree_cap:
                raise DegreeBoundExceeded(f"filtration degree exceeds {self.degree_cap}")
            res = {tuple(mm): 1}
        elif k == a:
            rest = list(m)
            if self.parity[k]:
                rest[k] = 0
                rest = tuple(rest)
                res = {}
                for j, c in self.bracket.get((k, k), ()):
                    _add_into(ctx, res, self.lmul_gen(j, rest), ctx.mul(c, self.half))
            else:
                nk = m[k] + 1
                if self.reduced and nk == self.p:
                    rest[k] = 0
                    rest = tuple(rest)
                    res = {}
                    if self.chi_p[k]:
                        res[rest] = self.chi_p[k]
                    for j, c in self.pmap[k]:
                        _add_into(ctx, res, self.lmul_gen(j, rest), c)
                else:
                    rest[k] = nk
                    if self.degree_cap is not None and sum(rest) > self.degree_cap:
                        raise DegreeBoundExceeded(f"filtration degree exceeds {self.degree_cap}")
                    res = {tuple(rest): 1}
        else:
            rest = list(m)
            rest[a] -= 1
            rest = tuple(rest)
            moved = self.lmul_gen(k, rest)
            res = {}
            sign = ctx.p - 1 if (self.parity[k] and self.parity[a]) else 1
            _add_into(ctx, res, self.lmul_elem(a, moved), sign)
            for j, c in self.bracket.get((k, a), ()):
                _add_into(ctx, res, self.lmul_gen(j, rest), c)
        self._cache[key] = res
        return res

    def lmul_elem(self, k: int, elem: dict) -> dict:
        ctx = self.ctx
        out = {}
        for m, c in elem.items():
            _add_into(ctx, out, self.lmul_gen(k, m), c)
        return out

    def mul_word(self, letters, elem: dict) -> dict:
        """letters[0] * letters[1] * ... * elem."""
        for k in reversed(letters):
            elem = self.lmul_elem(k, elem)
        return elem

    def mul_mono(self, m1: tuple, m2: tuple) -> dict:
        return self.mul_word(self.letters(m1), {m2: 1})

    def mul(self, a: dict, b: dict) -> dict:
        ctx = self.ctx
        out = {}
        for m1, c1 in a.items():
            part = self.mul_word(self.letters(m1), b)
            _add_into(ctx, out, part, c1)
        return out

    def from_word(self, basis_letters) -> dict:
        """Normal form of b_{i1} b_{i2} ... for basis indices."""
        return self.mul_word([self.pos[b] for b in basis_letters], {self.one: 1})

    def monomial_parity(self, m) -> int:
        return sum(e for e, par in zip(m, self.parity) if par) % 2

    def monomial_degree(self, m) -> int:
        return sum(m)


# -- engines attached to an algebra ------------------------------------------------

def triangular_order(g: LieSuperalgebra) -> list:
    return list(g.negative_indices) + list(g.cartan_indices) + list(g.positive_indices)


def engine(g: LieSuperalgebra, kind: str = "storage", chi: PCharacter | None = None) -> PBWEngine:
    """Shared engine per (algebra, order, chi); its cache is reused across calls."""
    cache = g.__dict__.setdefault("_engines", {})
    key = (kind, None if chi is None else chi.values)
    eng = cache.get(key)
    if eng is None:
        order = None if kind == "storage" else triangular_order(g)
        cap = 3 * g.p if chi is None else None
        eng = PBWEngine(g, order, chi, degree_cap=cap)
        cache[key] = eng
    return eng


class EnvElement:
    """An element of U(g) in storage-order PBW normal form."""

    __slots__ = ("g", "terms")

    def __init__(self, g: LieSuperalgebra, terms=None):
        self.g = g
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def one(cls, g):
        return cls(g, {(0,) * g.n: 1})

    @classmethod
    def generator(cls, g, i: int, coef: int = 1):
        m = [0] * g.n
        m[i] = 1
        return cls(g, {tuple(m): coef})

    @classmethod
    def from_vector(cls, g, vec):
        out = {}
        for i in np.nonzero(np.asarray(vec))[0]:
            m = [0] * g.n
            m[i] = 1
            out[tuple(m)] = int(vec[i])
        return cls(g, out)

    @property
    def ctx(self):
        return self.g.field

    def __add__(self, other):
        return EnvElement(self.g, _add_into(self.ctx, dict(self.terms), other.terms))

    def __sub__(self, other):
        return EnvElement(self.g, _add_into(self.ctx, dict(self.terms), other.terms, self.ctx.p - 1 if self.ctx.e == 1 else self.ctx.neg(1)))

    def __neg__(self):
        return EnvElement(self.g, {m: self.ctx.neg(c) for m, c in self.terms.items()})

    def scale(self, c: int):
        return EnvElement(self.g, {m: self.ctx.mul(v, c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, EnvElement):
            return straighten_product(self.g, self, other)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, EnvElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def homogeneous_parts(self):
        parts = ({}, {})
        for m, c in self.terms.items():
            parts[_parity(self.g, m)][m] = c
        return EnvElement(self.g, parts[0]), EnvElement(self.g, parts[1])

    def parity(self):
        """0 or 1 for homogeneous elements, None for mixed ones."""
        pars = {_parity(self.g, m) for m in self.terms}
        if len(pars) > 1:
            return None
        return pars.pop() if pars else 0

    def degree(self):
        return max((sum(m) for m in self.terms), default=0)

    def render(self):
        return render_terms(self.g, self.terms, range(self.g.n))

    def __repr__(self):
        return f"EnvElement({self.render()})"


def _parity(g, m):
    return sum(m[g.s:]) % 2


def render_terms(g, terms, order) -> str:
    """Canonical text: monomials by degree then exponent tuple, factors in the given order."""
    ctx = g.field
    order = list(order)
    out = []
    for m in sorted(terms, key=lambda m: (sum(m), tuple(-e for e in m))):
        c = terms[m]
        factors = []
        for pos, e in enumerate(m):
            if e:
                lab = g.basis[order[pos]].label
                factors.append(lab if e == 1 else f"{lab}^{e}")
        mono = "*".join(factors)
        cs = ctx.render(c)
        if not mono:
            out.append(cs)
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{cs}*{mono}" if ctx.e == 1 else f"({cs})*{mono}")
    return " + ".join(out) if out else "0"


# -- operations ----------------------------------------------------------------

def straighten_product(g: LieSuperalgebra, a: EnvElement, b: EnvElement) -> EnvElement:
    return EnvElement(g, engine(g).mul(a.terms, b.terms))


def ad_action(g: LieSuperalgebra, x: int, u: EnvElement) -> EnvElement:
    """ad x(u) = x u - (-1)^{|x||u|} u x for the basis generator x."""
    X = EnvElement.generator(g, x)
    px = g.basis[x].parity
    out = EnvElement(g)
    for pu, part in enumerate(u.homogeneous_parts()):
        if part.is_zero():
            continue
        term = X * part - part * X if not (px and pu) else X * part + part * X
        out = out + term
    return out


def ad_prime_action(g: LieSuperalgebra, x: int, u: EnvElement) -> EnvElement:
    """ad' x(u) = x u - (-1)^{|x|(|u|+1)} u x."""
    X = EnvElement.generator(g, x)
    px = g.basis[x].parity
    out = EnvElement(g)
    for pu, part in enumerate(u.homogeneous_parts()):
        if part.is_zero():
            continue
        if (px * (pu + 1)) % 2:
            out = out + (X * part + part * X)
        else:
            out = out + (X * part - part * X)
    return out


def p_center_generator(g: LieSuperalgebra, i: int) -> EnvElement:
    """xi_i = x_i^p - x_i^[p]."""
    if g.basis[i].parity:
        raise OddInput("p-center generators are indexed by even basis vectors")
    m = [0] * g.n
    m[i] = g.p
    xp = EnvElement.from_vector(g, g._pmap_dense[i])
    return EnvElement(g, {tuple(m): 1}) - xp


def dual_basis(g: LieSuperalgebra) -> np.ndarray:
    """Matrix D with (b_i, sum_k D[k, j] b_k) = delta_ij."""
    return linalg.inverse(g.field, g.form)


def casimir(g: LieSuperalgebra) -> EnvElement:
    """Omega = sum_j b^j b_j with (b_i, b^j) = delta_ij."""
    ctx = g.field
    D = dual_basis(g)
    eng = engine(g)
    out = {}
    for j in range(g.n):
        for k in np.nonzero(D[:, j])[0]:
            _add_into(ctx, out, eng.from_word([int(k), j]), int(D[k, j]))
    return EnvElement(g, out)


def is_central(g: LieSuperalgebra, u: EnvElement) -> bool:
    return all(ad_action(g, x, u).is_zero() for x in range(g.n))


def apply_automorphism(g: LieSuperalgebra, N, u: EnvElement) -> EnvElement:
    """Extend the automorphism of g with matrix N (columns = images) to U(g)."""
    ctx = g.field
    eng = engine(g)
    images = [{eng.monomial_from_basis(tuple(int(i == k) for i in range(g.n))): int(N[k, j])
               for k in np.nonzero(N[:, j])[0]} for j in range(g.n)]
    out = {}
    for m, c in u.terms.items():
        acc = {eng.one: 1}
        for b in reversed(eng.letters(m)):
            nxt = {}
            for gen, coef in images[b].items():
                k = next(i for i, e in enumerate(gen) if e)
                _add_into(ctx, nxt, eng.lmul_elem(k, acc), coef)
            acc = nxt
        _add_into(ctx, out, acc, c)
    return EnvElement(g, out)


# -- Harish-Chandra ------------------------------------------------------------------

class HCPolynomial:
    """Polynomial in the toral coordinates H_1..H_r, i.e. an element of U(h) = k[h*]."""

    __slots__ = ("ctx", "r", "terms")

    def __init__(self, ctx, r, terms=None):
        self.ctx = ctx
        self.r = r
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, ctx, r, c=1):
        return cls(ctx, r, {(0,) * r: c})

    @classmethod
    def variable(cls, ctx, r, i):
        m = [0] * r
        m[i] = 1
        return cls(ctx, r, {tuple(m): 1})

    def __add__(self, other):
        return HCPolynomial(self.ctx, self.r, _add_into(self.ctx, dict(self.terms), other.terms))

    def __sub__(self, other):
        return HCPolynomial(self.ctx, self.r, _add_into(self.ctx, dict(self.terms), other.terms, self.ctx.neg(1)))

    def __mul__(self, other):
        ctx = self.ctx
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = ctx.add(out.get(m, 0), ctx.mul(c1, c2))
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return HCPolynomial(ctx, self.r, out)

    def scale(self, c):
        return HCPolynomial(self.ctx, self.r, {m: self.ctx.mul(v, c) for m, v in self.terms.items()})

    def power(self, k):
        out = HCPolynomial.constant(self.ctx, self.r)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, HCPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, lam) -> int:
        ctx = self.ctx
        vals = tuple(lam)
        out = 0
        for m, c in self.terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = ctx.mul(t, ctx.pow(v, e))
            out = ctx.add(out, t)
        return out

    def substitute(self, images) -> "HCPolynomial":
        """Replace H_i by the polynomial images[i]."""
        out = HCPolynomial(self.ctx, self.r)
        for m, c in self.terms.items():
            t = HCPolynomial.constant(self.ctx, self.r, c)
            for i, e in enumerate(m):
                if e:
                    t = t * images[i].power(e)
            out = out + t
        return out

    def render(self, names=None):
        ctx = self.ctx
        names = names or [f"H{i + 1}" for i in range(self.r)]
        out = []
        for m in sorted(self.terms, key=lambda m: (sum(m), tuple(-e for e in m))):
            c = self.terms[m]
            fs = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
            mono = "*".join(fs)
            cs = ctx.render(c)
            out.append(cs if not mono else (mono if c == 1 else f"{cs}*{mono}"))
        return " + ".join(out) if out else "0"

    def __repr__(self):
        return f"HCPolynomial({self.render()})"


def to_triangular(g: LieSuperalgebra, u: EnvElement, chi=None) -> dict:
    """Re-straighten u into the triangular order n^- < h < n^+."""
    ctx = g.field
    tri = engine(g, "triangular", chi)
    out = {}
    for m, c in u.terms.items():
        letters = []
        for b, e in enumerate(m):
            letters.extend([b] * e)
        _add_into(ctx, out, tri.from_word(letters), c)
    return out


def hc_gamma1(g: LieSuperalgebra, u: EnvElement) -> HCPolynomial:
    """Cartan component phi_0 of u = phi_0 + sum u^- u^+ phi."""
    tri = engine(g, "triangular")
    cart_pos = [tri.pos[h] for h in g.toral_basis]
    cart_set = set(cart_pos)
    out = {}
    for m, c in to_triangular(g, u).items():
        if all(e == 0 or i in cart_set for i, e in enumerate(m)):
            out[tuple(m[i] for i in cart_pos)] = c
    return HCPolynomial(g.field, g.r, out)


def hc_beta(g: LieSuperalgebra, poly: HCPolynomial, sign: int = -1) -> HCPolynomial:
    """The rho-shift h -> h + sign * rho(h).

    The default sign -1 is the one for which gamma(z) is Weyl invariant
    when gamma_1 reads off highest weights (see the Casimir tests); pass
    sign=+1 for the opposite shift.
    """
    ctx = g.field
    images = []
    for i in range(g.r):
        c = g.rho.values[i] if sign > 0 else ctx.neg(g.rho.values[i])
        images.append(HCPolynomial.variable(ctx, g.r, i) + HCPolynomial.constant(ctx, g.r, c))
    return poly.substitute(images)


def hc_gamma(g: LieSuperalgebra, u: EnvElement) -> HCPolynomial:
    return hc_beta(g, hc_gamma1(g, u))


def evaluate_hc(poly: HCPolynomial, lam) -> int:
    return poly.evaluate(lam)


def weyl_act_on_hc(g: LieSuperalgebra, w: WeylElement, poly: HCPolynomial) -> HCPolynomial:
    """(w . P)(lambda) = P(w^{-1} lambda)."""
    from .superalg import weyl_inverse

    ctx = g.field
    M = ctx.vfrom_int(weyl_inverse(g, w).h_star)
    images = []
    for i in range(g.r):
        terms = {}
        for j in range(g.r):
            if M[i, j]:
                mono = [0] * g.r
                mono[j] = 1
                terms[tuple(mono)] = int(M[i, j])
        images.append(HCPolynomial(ctx, g.r, terms))
    return poly.substitute(images)


def random_element(g: LieSuperalgebra, rng, max_degree: int = 2, max_terms: int = 3) -> EnvElement:
    """A random element of bounded filtration degree with prime-field coefficients."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_degree)
        m = [0] * g.n
        for _ in range(deg):
            i = rng.randrange(g.n)
            if g.basis[i].parity and m[i]:
                continue
            m[i] += 1
        terms[tuple(m)] = rng.randrange(1, g.p)
    return EnvElement(g, terms)


def all_monomials(g: LieSuperalgebra, max_degree: int):
    """Storage-order PBW monomials of filtration degree <= max_degree."""
    out = []
    for m in iproduct(*[range(max_degree + 1) if b.parity == 0 else range(2) for b in g.basis]):
        if sum(m) <= max_degree:
            out.append(tuple(m))
    return sorted(out, key=lambda m: (sum(m), tuple(-e for e in m)))
