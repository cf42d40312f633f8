"""The reduced enveloping superalgebra U_chi(g) as a finite-dimensional algebra.

Elements are sparse maps from reduced PBW monomials (storage order, even
exponents < p, odd bits) to field codes.  Products are straightened by the
chi-reduced PBW engine, so x^p is replaced by x^[p] + chi(x)^p on the fly.

The center and anti-center are kernels of the (primed) adjoint action of
the generators.  Both commute with the torus, so the solve is restricted
to monomials of weight zero mod p.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from . import linalg
from .env import EnvElement, engine, render_terms
from .superalg import LieSuperalgebra, PCharacter, SuperalgError, TooLarge, Weight

MAX_DIM = 4000


class RedEnvError(SuperalgError):
    pass


class NotCentral(RedEnvError):
    pass


class NotRegular(RedEnvError):
    pass


class EvennessViolation(RedEnvError):
    pass


class AlgebraElement:
    __slots__ = ("A", "terms")

    def __init__(self, A: "ReducedAlgebra", terms=None):
        self.A = A
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    def __add__(self, other):
        ctx = self.A.ctx
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = ctx.add(out.get(m, 0), c)
        return AlgebraElement(self.A, out)

    def __sub__(self, other):
        return self + other.scale(self.A.ctx.neg(1))

    def scale(self, c):
        ctx = self.A.ctx
        return AlgebraElement(self.A, {m: ctx.mul(v, c) for m, v in self.terms.items()})

    def __mul__(self, other):
        return self.A.multiply(self, other)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def parity(self):
        pars = {self.A.monomial_parity(m) for m in self.terms}
        if len(pars) > 1:
            return None
        return pars.pop() if pars else 0

    def to_vector(self):
        v = np.zeros(self.A.dim, dtype=np.int64)
        for m, c in self.terms.items():
            v[self.A.index[m]] = c
        return v

    def render(self):
        return render_terms(self.A.g, self.terms, range(self.A.g.n))

    def __repr__(self):
        return f"AlgebraElement({self.render()})"


class ReducedAlgebra:
    def __init__(self, g: LieSuperalgebra, chi: PCharacter):
        self.g = g
        self.chi = chi
        self.ctx = g.field
        dim = g.p ** g.s * 2 ** g.t
        if dim > MAX_DIM:
            raise TooLarge(f"dim U_chi = {dim} exceeds {MAX_DIM}")
        self.engine = engine(g, "storage", chi)
        ranges = [range(2) if b.parity else range(g.p) for b in g.basis]
        self.basis = sorted(iproduct(*ranges), key=lambda m: (sum(m), tuple(-e for e in m)))
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.dim = len(self.basis)
        # weights of the basis vectors under ad of the toral basis, as field codes
        self._gen_weight = []
        root_of = {}
        for a in g.roots:
            root_of[a.e_index] = a.coords
        for b in range(g.n):
            self._gen_weight.append(tuple(root_of.get(b, (0,) * g.r)))

    # -- elements ---------------------------------------------------------------------
    def one(self):
        return AlgebraElement(self, {self.basis[0]: 1})

    def generator(self, i, coef=1):
        m = [0] * self.g.n
        m[i] = 1
        return AlgebraElement(self, {tuple(m): coef})

    def element(self, terms):
        return AlgebraElement(self, terms)

    def from_vector(self, v):
        return AlgebraElement(self, {self.basis[i]: int(v[i]) for i in np.nonzero(v)[0]})

    def from_env(self, u: EnvElement):
        """Image of an element of U(g) under U(g) -> U_chi(g)."""
        ctx = self.ctx
        out = {}
        for m, c in u.terms.items():
            for mm, cc in self.engine.mul_word(self.engine.letters(m), {self.engine.one: 1}).items():
                out[mm] = ctx.add(out.get(mm, 0), ctx.mul(c, cc))
        return AlgebraElement(self, out)

    def multiply(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self, self.engine.mul(a.terms, b.terms))

    def monomial_parity(self, m):
        return sum(m[self.g.s:]) % 2

    def monomial_weight(self, m):
        ctx = self.ctx
        w = [0] * self.g.r
        for b, e in enumerate(m):
            if e:
                for j, c in enumerate(self._gen_weight[b]):
                    if c:
                        w[j] = ctx.add(w[j], ctx.mul(c, ctx.from_int(e)))
        return tuple(w)

    def weight_zero(self):
        return [m for m in self.basis if not any(self.monomial_weight(m))]

    # -- centers ----------------------------------------------------------------------
    def _bracket_images(self, x: int, monos, primed: bool):
        """Columns (ad x)(m) or (ad' x)(m) for each monomial m, as sparse dicts."""
        ctx = self.ctx
        eng = self.engine
        px = self.g.basis[x].parity
        k = eng.pos[x]
        xm = [0] * self.g.n
        xm[x] = 1
        xm = tuple(xm)
        cols = []
        for m in monos:
            pm = self.monomial_parity(m)
            odd_sign = (px * (pm + 1)) % 2 if primed else (px * pm) % 2
            left = eng.lmul_gen(k, m)
            right = eng.mul_mono(m, xm)
            col = dict(left)
            sign = 1 if odd_sign else ctx.neg(1)
            for mm, c in right.items():
                v = ctx.add(col.get(mm, 0), ctx.mul(sign, c))
                if v:
                    col[mm] = v
                else:
                    col.pop(mm, None)
            cols.append(col)
        return cols

    def _kernel(self, primed: bool):
        g = self.g
        ctx = self.ctx
        chi_on_roots = any(v for i, v in enumerate(self.chi.values) if i not in set(g.toral_basis))
        monos = self.basis if chi_on_roots else self.weight_zero()
        gens = range(g.n) if chi_on_roots else [i for i in range(g.n) if i not in set(g.toral_basis)]
        out = []
        for parity in (0, 1):
            sub = [m for m in monos if self.monomial_parity(m) == parity]
            if not sub:
                continue
            rows = {}
            entries = []
            for x in gens:
                for j, col in enumerate(self._bracket_images(x, sub, primed)):
                    for mm, c in col.items():
                        r = rows.setdefault((x, mm), len(rows))
                        entries.append((r, j, c))
            M = linalg.zeros(max(len(rows), 1), len(sub))
            for r, j, c in entries:
                M[r, j] = c
            for v in linalg.nullspace(ctx, M):
                out.append((parity, AlgebraElement(self, {sub[i]: int(v[i]) for i in np.nonzero(v)[0]})))
        return out

    def center_basis(self, strict: bool = True):
        """Basis of the center; strict raises if any odd central element turns up.

        Evenness is guaranteed for regular semisimple chi.  At chi = 0 the restricted
        algebra can have odd central elements (osp(1|2) at p = 3 has two).
        """
        got = self._kernel(primed=False)
        odd = [z for par, z in got if par]
        if odd and strict:
            raise EvennessViolation(f"{len(odd)} odd central elements found")
        return [z for _, z in got]

    def anticenter_basis(self):
        got = self._kernel(primed=True)
        odd = [a for par, a in got if par]
        if odd:
            raise EvennessViolation(f"{len(odd)} odd anti-central elements found")
        return [a for _, a in got]

    def is_central(self, z: AlgebraElement) -> bool:
        for x in range(self.g.n):
            X = self.generator(x)
            for part in _homogeneous(self, z):
                px, pu = self.g.basis[x].parity, part.parity()
                lhs = X * part
                rhs = part * X
                d = lhs + rhs if px and pu else lhs - rhs
                if not d.is_zero():
                    return False
        return True

    def is_anticentral(self, a: AlgebraElement) -> bool:
        for x in range(self.g.n):
            X = self.generator(x)
            for part in _homogeneous(self, a):
                px, pu = self.g.basis[x].parity, part.parity()
                lhs = X * part
                rhs = part * X
                d = lhs + rhs if (px * (pu + 1)) % 2 else lhs - rhs
                if not d.is_zero():
                    return False
        return True

    def in_span(self, basis, a: AlgebraElement) -> bool:
        span = linalg.Span(self.ctx, self.dim)
        for b in basis:
            span.add(b.to_vector())
        return span.contains(a.to_vector())

    def left_mult_matrix(self, a: AlgebraElement) -> np.ndarray:
        M = linalg.zeros(self.dim, self.dim)
        for j, m in enumerate(self.basis):
            for mm, c in self.multiply(a, AlgebraElement(self, {m: 1})).terms.items():
                M[self.index[mm], j] = c
        return M


def _homogeneous(A, u):
    parts = ({}, {})
    for m, c in u.terms.items():
        parts[A.monomial_parity(m)][m] = c
    return [AlgebraElement(A, p) for p in parts if p]


def build_reduced(g: LieSuperalgebra, chi: PCharacter) -> ReducedAlgebra:
    return ReducedAlgebra(g, chi)


def center_basis(A: ReducedAlgebra, strict: bool = True):
    return A.center_basis(strict)


def anticenter_basis(A: ReducedAlgebra):
    return A.anticenter_basis()


def central_character(A: ReducedAlgebra, z: AlgebraElement, lam, check: bool = True) -> int:
    """The scalar by which central z acts on v_lambda in Z_chi(lambda)."""
    g = A.g
    ctx = A.ctx
    if check and not A.is_central(z):
        raise NotCentral("element does not commute with g")
    tri = engine(g, "triangular", A.chi)
    nneg = len(g.negative_indices)
    ncart = len(g.cartan_indices)
    cart_pos = {tri.pos[h]: j for j, h in enumerate(g.toral_basis)}
    lam = tuple(lam)
    total = 0
    for m, c in z.terms.items():
        letters = []
        for b, e in enumerate(m):
            letters.extend([b] * e)
        for mono, cc in tri.from_word(letters).items():
            if any(mono[:nneg]) or any(mono[nneg + ncart:]):
                continue
            t = ctx.mul(c, cc)
            for pos, e in enumerate(mono):
                if e:
                    t = ctx.mul(t, ctx.pow(lam[cart_pos[pos]], e))
            total = ctx.add(total, t)
    return total


@dataclass
class CentralCharacterTable:
    weights: list
    center: list
    values: dict  # lambda tuple -> tuple of scalars, one per center basis element

    def column(self, lam):
        return self.values[tuple(lam)]

    def distinct_columns(self) -> int:
        return len(set(self.values.values()))


def central_character_table(A: ReducedAlgebra, center=None) -> CentralCharacterTable:
    center = center if center is not None else A.center_basis()
    weights = A.g.enumerate_lambda(A.chi)
    vals = {}
    for lam in weights:
        vals[lam.values] = tuple(central_character(A, z, lam.values, check=False) for z in center)
    return CentralCharacterTable(weights, center, vals)


def trace_form_rank(A: ReducedAlgebra, module) -> int:
    """Rank of (u, v) -> tr(uv) on the image of A in End(module)."""
    from .verma import span_closure

    ctx = A.ctx
    d = module.dim
    if d == 0:
        return 0
    span = span_closure(ctx, module.actions, d)
    mats = [row.reshape(d, d) for row in span.rows]
    k = len(mats)
    G = linalg.zeros(k, k)
    for i in range(k):
        for j in range(i, k):
            # tr(XY) = sum_ab X_ab Y_ba
            t = linalg.trace(ctx, linalg.matmul(ctx, mats[i], mats[j]))
            G[i, j] = G[j, i] = t
    return linalg.rank(ctx, G)


def left_mult_rank(A: ReducedAlgebra, a: AlgebraElement) -> int:
    return linalg.rank(A.ctx, A.left_mult_matrix(a))


@dataclass
class WedderburnReport:
    chi: tuple
    dim: int
    lambda_count: int
    expected_lambda_count: int
    verma_dim: int
    all_irreducible: bool
    pairwise_non_isomorphic: bool
    wedderburn_ok: bool
    blocks: list = field(default_factory=list)

    @property
    def ok(self):
        return (self.lambda_count == self.expected_lambda_count and self.all_irreducible
                and self.pairwise_non_isomorphic and self.wedderburn_ok)


def wedderburn_check(A: ReducedAlgebra, with_trace: bool = True) -> WedderburnReport:
    from .verma import build_verma, find_intertwiner, is_absolutely_irreducible

    g = A.g
    ctx = A.ctx
    if not g.is_regular_semisimple(A.chi):
        raise NotRegular("chi is not regular semisimple")
    weights = g.enumerate_lambda(A.chi)
    mods = [build_verma(g, A.chi, lam) for lam in weights]
    irr = [is_absolutely_irreducible(M) for M in mods]
    non_iso = True
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            if find_intertwiner(mods[i], mods[j]).exists:
                non_iso = False
    d = mods[0].dim if mods else 0
    blocks = []
    for M, ok in zip(mods, irr):
        blocks.append({
            "lambda": [ctx.render(v) for v in M.lam.values],
            "verma_dim": M.dim,
            "irreducible": ok,
            "trace_rank": trace_form_rank(A, M) if with_trace else None,
        })
    return WedderburnReport(
        chi=g.chi_toral(A.chi),
        dim=A.dim,
        lambda_count=len(weights),
        expected_lambda_count=g.p ** g.r,
        verma_dim=d,
        all_irreducible=all(irr),
        pairwise_non_isomorphic=non_iso,
        wedderburn_ok=len(weights) * d * d == A.dim,
        blocks=blocks,
    )


def block_report(A: ReducedAlgebra, center=None, anticenter=None, wedderburn=None) -> dict:
    ctx = A.ctx
    center = center if center is not None else A.center_basis()
    anticenter = anticenter if anticenter is not None else A.anticenter_basis()
    wedderburn = wedderburn if wedderburn is not None else wedderburn_check(A)
    return {
        "chi": [ctx.render(v) for v in A.g.chi_toral(A.chi)],
        "dim": A.dim,
        "center_dim": len(center),
        "anticenter_dim": len(anticenter),
        "blocks": wedderburn.blocks,
        "wedderburn_ok": wedderburn.ok,
    }


def block_report_json(A: ReducedAlgebra, **kw) -> str:
    return json.dumps(block_report(A, **kw), sort_keys=True, indent=2)
