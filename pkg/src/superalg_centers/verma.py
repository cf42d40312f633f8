"""Baby Verma modules Z_chi(lambda) as explicit action matrices.

Z_chi(lambda) = U_chi(g) (x)_{U_chi(b)} k_lambda has basis the reduced
n^- monomials applied to v_lambda.  The action of a generator is computed
by straightening generator * monomial in the triangular order
n^- < h < n^+ of the chi-reduced algebra: terms carrying an n^+ factor
kill v_lambda and Cartan factors act through lambda.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from . import linalg
from .env import all_monomials, engine
from .superalg import (
    LieSuperalgebra,
    PCharacter,
    SuperalgError,
    TooLarge,
    Weight,
    WeylElement,
    act_on_int_weight,
    act_on_weight,
    representative_automorphism,
    weyl_inverse,
)


class VermaError(SuperalgError):
    pass


class WeightNotCompatible(VermaError):
    pass


class RelationFailure(VermaError):
    pass


class NoStableLine(VermaError):
    pass


class NotUnique(VermaError):
    pass


class Module:
    """A finite-dimensional g-module given by one matrix per basis vector of g."""

    def __init__(self, g: LieSuperalgebra, chi: PCharacter, actions: list, parity_vector):
        self.g = g
        self.chi = chi
        self.actions = [np.asarray(a, dtype=np.int64) for a in actions]
        self.parity_vector = np.asarray(parity_vector, dtype=np.int64)
        self.dim = len(self.parity_vector)

    def act(self, vec):
        """Matrix of a vector of g (coordinates in the basis of g)."""
        ctx = self.g.field
        out = linalg.zeros(self.dim, self.dim)
        for i in np.nonzero(np.asarray(vec))[0]:
            out = ctx.vadd(out, ctx.vmul(int(vec[i]), self.actions[i]))
        return out

    def monomial_matrix(self, m):
        """rho(b_0^{m_0} b_1^{m_1} ...) for a storage-order exponent tuple."""
        ctx = self.g.field
        out = linalg.identity(self.dim)
        for b, e in enumerate(m):
            for _ in range(e):
                out = linalg.matmul(ctx, out, self.actions[b])
        return out

    def relation_defects(self) -> list:
        """Names of violated bracket or reduction relations (empty when all hold)."""
        g = self.g
        ctx = g.field
        bad = []
        for a in range(g.n):
            for b in range(a, g.n):
                A, B = self.actions[a], self.actions[b]
                AB = linalg.matmul(ctx, A, B)
                BA = linalg.matmul(ctx, B, A)
                lhs = ctx.vadd(AB, BA) if g.parity[a] and g.parity[b] else ctx.vsub(AB, BA)
                if not np.array_equal(lhs, self.act(g.C[a, b])):
                    bad.append(f"[{g.basis[a].label},{g.basis[b].label}]")
        for i in range(g.s):
            lhs = ctx.vsub(linalg.matpow(ctx, self.actions[i], g.p), self.act(g._pmap_dense[i]))
            rhs = ctx.vmul(ctx.frob(self.chi.values[i]), linalg.identity(self.dim))
            if not np.array_equal(lhs, rhs):
                bad.append(f"{g.basis[i].label}^p")
        return bad

    def is_parity_preserving(self) -> bool:
        """Even generators keep degrees, odd generators flip them."""
        pv = self.parity_vector
        for i, A in enumerate(self.actions):
            rows, cols = np.nonzero(A)
            if np.any((pv[rows] + pv[cols] + self.g.parity[i]) % 2):
                return False
        return True


class BabyVerma(Module):
    def __init__(self, g, chi, lam, basis, actions, parity_vector, hw_index=0):
        super().__init__(g, chi, actions, parity_vector)
        self.lam = lam
        self.basis = basis
        self.hw_index = hw_index


def verma_dimension(g: LieSuperalgebra) -> int:
    """p^((s - r)/2) 2^(t/2)."""
    return g.p ** ((g.s - g.r) // 2) * 2 ** (g.t // 2)


def _neg_monomials(g):
    ranges = [range(2) if g.basis[b].parity else range(g.p) for b in g.negative_indices]
    return sorted(iproduct(*ranges), key=lambda m: (sum(m), tuple(-e for e in m)))


def build_verma(g: LieSuperalgebra, chi: PCharacter, lam, verify: bool = True) -> BabyVerma:
    ctx = g.field
    lam = Weight(tuple(lam))
    if not g.in_lambda(chi, lam.values):
        raise WeightNotCompatible(f"{lam.values} is not in Lambda(chi)")
    g.check_on_cartan(chi)
    eng = engine(g, "triangular", chi)
    nneg = len(g.negative_indices)
    cart_pos = {eng.pos[h]: j for j, h in enumerate(g.toral_basis)}
    npos_start = nneg + len(g.cartan_indices)
    basis = _neg_monomials(g)
    index = {m: i for i, m in enumerate(basis)}
    d = len(basis)
    pad = (0,) * (g.n - nneg)
    lam_pows = [[ctx.pow(v, k) for k in range(g.p)] for v in lam.values]
    actions = []
    for b in range(g.n):
        A = linalg.zeros(d, d)
        k = eng.pos[b]
        for col, m in enumerate(basis):
            for mono, c in eng.lmul_gen(k, m + pad).items():
                if any(mono[npos_start:]):
                    continue
                coef = c
                for pos, e in enumerate(mono[nneg:npos_start], start=nneg):
                    if e:
                        coef = ctx.mul(coef, lam_pows[cart_pos[pos]][e])
                if coef:
                    row = index[mono[:nneg]]
                    A[row, col] = ctx.add(int(A[row, col]), coef)
        actions.append(A)
    parity = [sum(e for e, b in zip(m, g.negative_indices) if g.basis[b].parity) % 2 for m in basis]
    M = BabyVerma(g, chi, lam, basis, actions, parity, hw_index=index[(0,) * nneg])
    if verify:
        bad = M.relation_defects()
        if bad:
            raise RelationFailure(f"relations fail: {', '.join(bad[:5])}")
        if not _hw_ok(M):
            raise RelationFailure("v_lambda is not a b-eigenvector of weight lambda")
    return M


def _hw_ok(M: BabyVerma) -> bool:
    g = M.g
    v = np.zeros(M.dim, dtype=np.int64)
    v[M.hw_index] = 1
    ctx = g.field
    for root in g.positive_roots:
        if M.actions[root.e_index][:, M.hw_index].any():
            return False
    for j, h in enumerate(g.toral_basis):
        if not np.array_equal(M.actions[h][:, M.hw_index], ctx.vmul(M.lam.values[j], v)):
            return False
    return True


def span_closure(ctx, mats, dim) -> linalg.Span:
    """Span of the associative algebra generated by mats (with identity)."""
    span = linalg.Span(ctx, dim * dim)
    span.add(linalg.identity(dim).ravel())
    frontier = [linalg.identity(dim)]
    while frontier:
        new = []
        for B in frontier:
            for A in mats:
                C = linalg.matmul(ctx, A, B)
                if span.add(C.ravel()):
                    new.append(C)
        frontier = new
        if len(span) == dim * dim:
            break
    return span


def is_absolutely_irreducible(M: Module) -> bool:
    """Burnside: the action matrices generate all of End(M)."""
    if M.dim == 1:
        return True
    return len(span_closure(M.g.field, M.actions, M.dim)) == M.dim * M.dim


@dataclass
class Intertwiner:
    exists: bool
    invertible: bool
    matrix: np.ndarray | None
    solution_dim: int


def find_intertwiner(M1: Module, M2: Module) -> Intertwiner:
    """Solve X rho1(x) = rho2(x) X over all generators."""
    ctx = M1.g.field
    d1, d2 = M1.dim, M2.dim
    blocks = []
    for A, B in zip(M1.actions, M2.actions):
        # X is d2 x d1, flattened row-major
        blocks.append(ctx.vsub(linalg.kron(ctx, linalg.identity(d2), A.T),
                               linalg.kron(ctx, B, linalg.identity(d1))))
    K = linalg.nullspace(ctx, np.vstack(blocks))
    if len(K) == 0:
        return Intertwiner(False, False, None, 0)
    invertible = False
    X = K[0].reshape(d2, d1)
    for row in K:
        cand = row.reshape(d2, d1)
        if d1 == d2 and linalg.rank(ctx, cand) == d1:
            X = cand
            invertible = True
            break
    return Intertwiner(True, invertible, X, len(K))


def twist_by_weyl(M: Module, w: WeylElement) -> Module:
    """The module x -> rho(n_w^{-1} x n_w), a module over the (w chi)-reduced algebra."""
    g = M.g
    ctx = g.field
    N = representative_automorphism(g, w)
    Ninv = linalg.inverse(ctx, N)
    actions = [M.act(Ninv[:, j]) for j in range(g.n)]
    chi_vec = np.array(list(M.chi.values) + [0] * g.t, dtype=np.int64)
    # chi'(x) = chi(n_w^{-1} x)
    new_vals = tuple(int(v) for v in linalg.matmul(ctx, chi_vec[None, :], Ninv).ravel()[: g.s])
    return Module(g, PCharacter(new_vals), actions, M.parity_vector)


def highest_weight_of(M: Module) -> Weight:
    g = M.g
    ctx = g.field
    stack = [M.actions[root.e_index] for root in g.positive_roots]
    K = linalg.nullspace(ctx, np.vstack(stack)) if stack else linalg.identity(M.dim)
    if len(K) == 0:
        raise NoStableLine("no vector is killed by n^+")
    if len(K) > 1:
        raise NotUnique(f"{len(K)}-dimensional space killed by n^+")
    v = K[0]
    piv = int(np.nonzero(v)[0][0])
    vals = []
    for h in g.toral_basis:
        hv = linalg.matvec(ctx, M.actions[h], v)
        c = ctx.div(int(hv[piv]), int(v[piv]))
        if not np.array_equal(hv, ctx.vmul(c, v)):
            raise NoStableLine("the n^+-invariant line is not h-stable")
        vals.append(c)
    return Weight(tuple(vals))


def reflected_root_sum(g: LieSuperalgebra, w: WeylElement) -> np.ndarray:
    """Sum of even minus sum of odd positive roots sent negative by w^{-1}."""
    winv = weyl_inverse(g, w)
    out = np.zeros(g.r, dtype=np.int64)
    for a in g.positive_roots:
        img = tuple(int(x) for x in act_on_int_weight(winv, a.int_coords))
        if not g.is_positive_root(img):
            out += np.array(a.int_coords) * (1 if a.parity == 0 else -1)
    return out


def rho_shift_identity_holds(g: LieSuperalgebra, w: WeylElement) -> bool:
    """2 s(w) = 2 rho - w(2 rho) over the integers."""
    lhs = 2 * reflected_root_sum(g, w)
    rho2 = np.array(g.rho2_int, dtype=np.int64)
    return np.array_equal(lhs, rho2 - act_on_int_weight(w, rho2))


def expected_lambda_w(g: LieSuperalgebra, lam, w: WeylElement) -> Weight:
    """w(lambda) - (rho - w(rho)), in field coordinates."""
    ctx = g.field
    wl = act_on_weight(g, w, lam)
    s = ctx.vfrom_int(reflected_root_sum(g, w))
    return Weight(tuple(int(x) for x in ctx.vsub(np.array(wl.values, dtype=np.int64), s)))


@dataclass
class TwistedWeightCheck:
    word: tuple
    expected: tuple
    observed: tuple
    ok: bool
    s_identity: bool
    chi_twisted: tuple = field(default_factory=tuple)

    def as_dict(self, ctx):
        return {
            "w": list(self.word),
            "expected": [ctx.render(v) for v in self.expected],
            "observed": [ctx.render(v) for v in self.observed],
            "ok": self.ok,
            "s_identity": self.s_identity,
        }


def verify_lemma_wa(g: LieSuperalgebra, chi: PCharacter, lam, w: WeylElement) -> TwistedWeightCheck:
    """Twist Z_chi(lambda) by n_w and compare its b-highest weight with w(lambda) - s(w)."""
    M = build_verma(g, chi, lam, verify=False)
    T = twist_by_weyl(M, w)
    observed = highest_weight_of(T)
    expected = expected_lambda_w(g, lam, w)
    return TwistedWeightCheck(tuple(w.word), expected.values, observed.values,
                         observed == expected, rho_shift_identity_holds(g, w),
                         chi_twisted=g.chi_toral(T.chi))


def annihilator_truncation_check(g: LieSuperalgebra, D: int, samples) -> bool:
    """Is the evaluation of degree <= D PBW monomials into the given modules injective?

    samples is an iterable of (chi, lambda) pairs or of modules.
    """
    if D > 2 * g.p:
        raise TooLarge(f"degree bound {D} exceeds 2p = {2 * g.p}")
    ctx = g.field
    mods = [s if isinstance(s, Module) else build_verma(g, s[0], s[1], verify=False) for s in samples]
    monos = all_monomials(g, D)
    if len(monos) > 5000:
        raise TooLarge(f"{len(monos)} monomials of degree <= {D}")
    cols = []
    for m in monos:
        cols.append(np.concatenate([M.monomial_matrix(m).ravel() for M in mods]))
    A = np.array(cols, dtype=np.int64)  # one row per monomial
    return linalg.rank(ctx, A) == len(monos)


def verma_report(M: BabyVerma, lemma_wa=()) -> dict:
    ctx = M.g.field
    return {
        "chi": [ctx.render(v) for v in M.g.chi_toral(M.chi)],
        "lambda": [ctx.render(v) for v in M.lam.values],
        "dim": M.dim,
        "irreducible": is_absolutely_irreducible(M),
        "hw_check": _hw_ok(M),
        "lemma_wa": [r.as_dict(ctx) for r in lemma_wa],
    }


def verma_report_json(M: BabyVerma, lemma_wa=()) -> str:
    return json.dumps(verma_report(M, lemma_wa), sort_keys=True, indent=2)
