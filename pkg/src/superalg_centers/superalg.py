"""Basic classical Lie superalgebras gl(m|n), sl(m|n), osp(1|2n) over GF(p^e).

Every algebra is realized by integer supermatrices; structure constants,
the p-map, the invariant form and the root data are read off from that
realization and reduced mod p.  Basis order is even elements first, then
odd ones, so indices ``0..s-1`` are the even basis and ``s..s+t-1`` the
odd basis.

Root data is kept twice: exact integer coordinates (values on the toral
basis in characteristic zero) for everything combinatorial, and field
codes for evaluating characters.  Distinct integer roots can collide mod
p (``2*eps`` and ``-eps`` in osp(1|2) at p = 3), so positivity and Weyl
bookkeeping never look at the reduced values.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from math import factorial

import numpy as np
import sympy

from . import linalg
from .field import FieldCtx, FieldElement, artin_schreier_roots, make_field

MAX_MATRIX_SIZE = 5


class SuperalgError(ValueError):
    pass


class BadCharacteristic(SuperalgError):
    pass


class TooLarge(SuperalgError):
    pass


class Unsupported(SuperalgError):
    pass


class OddInput(SuperalgError):
    pass


class NotOnCartan(SuperalgError):
    pass


class UnsolvableOverField(SuperalgError):
    pass


class NilpotencyTooDeep(SuperalgError):
    pass


class StructureError(SuperalgError):
    """A construction-time invariant failed; indicates a bug."""


@dataclass(frozen=True)
class BasisVector:
    index: int
    parity: int
    label: str


@dataclass(frozen=True)
class Root:
    int_coords: tuple  # values on the toral basis, characteristic zero
    coords: tuple  # the same values as field codes
    parity: int
    e_index: int  # basis index spanning g_alpha
    f_index: int  # basis index spanning g_{-alpha}

    def __neg__(self):
        return Root(tuple(-c for c in self.int_coords), None, self.parity, self.f_index, self.e_index)


@dataclass(frozen=True)
class Weight:
    values: tuple  # codes lambda(H_1), ..., lambda(H_r)

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class PCharacter:
    values: tuple  # codes on the even basis x_1..x_s
    semisimple: bool = True


@dataclass(frozen=True)
class WeylElement:
    word: tuple
    h_star: np.ndarray = dc_field(compare=False)  # integer action on weight coordinates
    h_mat: np.ndarray = dc_field(compare=False)  # integer action on toral coordinates of h

    def key(self):
        return tuple(self.h_star.ravel().tolist())


def _supercommutator(X, Y, px, py):
    return X @ Y - (-1) ** (px * py) * (Y @ X)


def _unit(N, i, j):
    M = np.zeros((N, N), dtype=np.int64)
    M[i, j] = 1
    return M


class LieSuperalgebra:
    """A supported basic classical Lie superalgebra with all its root data.

    Do not instantiate directly; use :func:`build_gl`, :func:`build_sl`
    or :func:`build_osp1`.
    """

    def __init__(self, family, params, ctx, mats, parities, labels, toral, positive, form_scale, ipar):
        self._ipar = list(ipar)
        self.family = family
        self.params = tuple(params)
        self.field = ctx
        p = ctx.p
        self.p = p
        self.matrices = [np.asarray(M, dtype=np.int64) for M in mats]
        self.basis = [BasisVector(i, par, lab) for i, (par, lab) in enumerate(zip(parities, labels))]
        self.n = len(self.basis)
        self.s = sum(1 for b in self.basis if b.parity == 0)
        self.t = self.n - self.s
        if any(b.parity != (0 if b.index < self.s else 1) for b in self.basis):
            raise StructureError("basis must list even vectors before odd ones")
        self.parity = np.array([b.parity for b in self.basis], dtype=np.int64)
        N = self.matrices[0].shape[0]
        self.N = N
        self.toral_basis = list(toral)
        self.cartan_indices = list(toral)
        self.r = len(self.toral_basis)

        self._basis_stack = np.stack([M.ravel() for M in self.matrices], axis=1) % p
        self._structure_constants()
        self._p_map()
        self._form(form_scale)
        self._roots(positive)
        self._weyl_setup()

    # -- realization ----------------------------------------------------------
    def coords_of_matrices(self, Xs, ctx=None):
        """Basis coordinates of supermatrices lying in the algebra."""
        ctx = ctx or make_field(self.p)
        if not Xs:
            return []
        rhs = np.stack([np.asarray(X, dtype=np.int64).ravel() for X in Xs], axis=1)
        aug = np.hstack([self._basis_stack, ctx.vfrom_int(rhs) if ctx.e == 1 else rhs])
        R, pivots = linalg.rref(ctx, aug)
        if pivots[: self.n] != list(range(self.n)):
            raise StructureError("basis matrices are dependent mod p")
        if R[self.n:, self.n:].any():
            raise StructureError("matrix does not lie in the algebra")
        return [R[: self.n, self.n + k].copy() for k in range(rhs.shape[1])]

    def realize(self, vec, ctx=None) -> np.ndarray:
        """The supermatrix sum(vec[i] * M_i) with field-code entries."""
        ctx = ctx or self.field
        vec = np.asarray(vec, dtype=np.int64)
        flat = linalg.matvec(ctx, self._basis_stack, vec)
        return flat.reshape(self.N, self.N)

    # -- construction steps ----------------------------------------------------
    def _structure_constants(self):
        n, p = self.n, self.p
        fp = make_field(p)
        prods = []
        for i in range(n):
            for j in range(n):
                prods.append(_supercommutator(self.matrices[i], self.matrices[j],
                                              self.basis[i].parity, self.basis[j].parity) % p)
        coords = self.coords_of_matrices(prods, fp)
        C = np.zeros((n, n, n), dtype=np.int64)
        for k, c in enumerate(coords):
            C[k // n, k % n] = c
        self.C = C
        self.structure_constants = {
            (i, j): {int(k): int(C[i, j, k]) for k in np.nonzero(C[i, j])[0]}
            for i in range(n) for j in range(n) if C[i, j].any()
        }

    def _p_map(self):
        p = self.p
        fp = make_field(p)
        powers = [linalg.matpow(fp, self.matrices[i] % p, p) for i in range(self.s)]
        coords = self.coords_of_matrices(powers, fp)
        self.p_map = {i: {int(k): int(c[k]) for k in np.nonzero(c)[0]} for i, c in enumerate(coords)}
        self._pmap_dense = np.array(coords, dtype=np.int64).reshape(self.s, self.n)

    def supertrace(self, X):
        return int(sum(X[k, k] * (-1 if self._ipar[k] else 1) for k in range(self.N)))

    def _form(self, scale):
        p, n = self.p, self.n
        G = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                G[i, j] = self.supertrace(self.matrices[i] @ self.matrices[j]) % p
        self.form = make_field(p).vmul(G, scale % p)

    def _ad_eigen(self, H, X):
        D = H @ X - X @ H
        nz = np.argwhere(X != 0)
        i, j = nz[0]
        c, rem = divmod(int(D[i, j]), int(X[i, j]))
        if rem or not np.array_equal(D, c * X):
            raise StructureError("basis vector is not a root vector")
        return c

    def _roots(self, positive):
        ctx = self.field
        tor = set(self.toral_basis)
        int_roots = {}
        for b in self.basis:
            if b.index in tor:
                continue
            int_roots[b.index] = tuple(self._ad_eigen(self.matrices[h], self.matrices[b.index])
                                       for h in self.toral_basis)
        by_coords = {}
        for idx, c in int_roots.items():
            if c in by_coords or not any(c):
                raise StructureError("root spaces must be one-dimensional and nonzero")
            by_coords[c] = idx
        roots = []
        for idx, c in sorted(int_roots.items()):
            neg = tuple(-x for x in c)
            roots.append(Root(c, tuple(ctx.from_int(x) for x in c), self.basis[idx].parity,
                              idx, by_coords[neg]))
        self.roots = roots
        self.positive_roots = [a for a in roots if positive(self, a)]
        if 2 * len(self.positive_roots) != len(roots):
            raise StructureError("positivity predicate does not split the roots")
        self._root_by_coords = {a.int_coords: a for a in roots}
        pos_idx = {a.e_index for a in self.positive_roots}
        self.negative_indices = sorted(set(int_roots) - pos_idx)
        self.positive_indices = sorted(pos_idx)
        rho2 = np.zeros(self.r, dtype=np.int64)
        for a in self.positive_roots:
            rho2 += (1 if a.parity == 0 else -1) * np.array(a.int_coords)
        self.rho2_int = rho2
        self.rho = Weight(tuple(ctx.mul(ctx.from_int(int(x)), ctx.inv2) for x in rho2))

    def is_root(self, int_coords) -> bool:
        return tuple(int(x) for x in int_coords) in self._root_by_coords

    def is_positive_root(self, int_coords) -> bool:
        a = self._root_by_coords.get(tuple(int(x) for x in int_coords))
        return a is not None and a in self.positive_roots

    # -- Weyl group ------------------------------------------------------------
    def _weyl_setup(self):
        even_pos = [a for a in self.positive_roots if a.parity == 0]
        sums = {tuple(np.add(a.int_coords, b.int_coords)) for a, b in itertools.combinations(even_pos, 2)}
        self.simple_even_roots = [a for a in even_pos if a.int_coords not in sums]
        D = sympy.Matrix([[int(self.matrices[h][k, k]) for h in self.toral_basis] for k in range(self.N)])
        gens = []
        self._coroots = []
        for a in self.simple_even_roots:
            ef = self.matrices[a.e_index] @ self.matrices[a.f_index] - self.matrices[a.f_index] @ self.matrices[a.e_index]
            sol, params = D.gauss_jordan_solve(sympy.Matrix([int(ef[k, k]) for k in range(self.N)]))
            coeffs = [sympy.Rational(x) for x in sol]
            val = sum(c * x for c, x in zip(coeffs, a.int_coords))
            if val == 0:
                raise StructureError("degenerate coroot")
            coroot = [c * 2 / val for c in coeffs]
            if any(c.q != 1 for c in coroot):
                raise StructureError("non-integral coroot")
            coroot = np.array([int(c) for c in coroot], dtype=np.int64)
            self._coroots.append(coroot)
            S = np.eye(self.r, dtype=np.int64) - np.outer(np.array(a.int_coords), coroot)
            gens.append(S)
        self._weyl_gens = gens

    def weyl_generators(self):
        return [WeylElement((i,), S, S.T.copy()) for i, S in enumerate(self._weyl_gens)]

    def weyl_identity(self):
        I = np.eye(self.r, dtype=np.int64)
        return WeylElement((), I, I.copy())

    def weyl_group(self):
        """All elements, found breadth-first; each with a shortest word."""
        start = self.weyl_identity()
        seen = {start.key(): start}
        frontier = [start]
        gens = self.weyl_generators()
        while frontier:
            nxt = []
            for w in frontier:
                for g in gens:
                    u = compose(w, g)
                    if u.key() not in seen:
                        seen[u.key()] = u
                        nxt.append(u)
            frontier = nxt
        return sorted(seen.values(), key=lambda w: (len(w.word), w.word))

    # -- elementwise operations ------------------------------------------------
    def unit(self, i, ctx=None):
        v = np.zeros(self.n, dtype=np.int64)
        v[i] = 1
        return v

    def bracket(self, a, b):
        ctx = self.field
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(self.n, dtype=np.int64)
        for i in np.nonzero(a)[0]:
            for j in np.nonzero(b)[0]:
                if self.C[i, j].any():
                    out = ctx.vadd(out, ctx.vmul(ctx.mul(int(a[i]), int(b[j])), self.C[i, j]))
        return out

    def ad_matrix(self, x):
        """Matrix of ad x on g; column j is [x, b_j]."""
        x = np.asarray(x, dtype=np.int64)
        return np.stack([self.bracket(x, self.unit(j)) for j in range(self.n)], axis=1)

    def p_power(self, a):
        a = np.asarray(a, dtype=np.int64)
        if a[self.s:].any():
            raise OddInput("the p-map is defined on the even part only")
        ctx = self.field
        X = linalg.matpow(ctx, self.realize(a), self.p)
        return self.coords_of_matrices([X], ctx)[0]

    def form_value(self, a, b):
        ctx = self.field
        return int(linalg.matmul(ctx, linalg.matmul(ctx, np.asarray(a)[None, :], self.form),
                                 np.asarray(b)[:, None])[0, 0])

    def h_alpha(self, alpha) -> np.ndarray:
        """The element h of h with (h, h') = alpha(h') for all h' in h."""
        ctx = self.field
        vals = alpha.coords if isinstance(alpha, Root) else tuple(alpha)
        tor = self.toral_basis
        G = self.form[np.ix_(tor, tor)]
        c = linalg.solve(ctx, G.T, np.array(vals, dtype=np.int64))
        if c is None:
            raise StructureError("form is degenerate on the Cartan subalgebra")
        out = np.zeros(self.n, dtype=np.int64)
        out[tor] = c
        return out

    # -- characters and weights -----------------------------------------------
    def pchar(self, toral_values) -> PCharacter:
        """p-character supported on h.  Plain ints are read mod p;
        FieldElement values are taken as they are."""
        if len(toral_values) != self.r:
            raise SuperalgError(f"expected {self.r} toral values")
        vals = [0] * self.s
        for h, v in zip(self.toral_basis, toral_values):
            vals[h] = v.code if isinstance(v, FieldElement) else self.field.from_int(int(v))
        return PCharacter(tuple(vals))

    def root_eval(self, root, h) -> int:
        """alpha(h) for h in the Cartan subalgebra."""
        ctx = self.field
        out = 0
        for j, idx in enumerate(self.toral_basis):
            out = ctx.add(out, ctx.mul(root.coords[j], int(h[idx])))
        return out

    def chi_toral(self, chi: PCharacter) -> tuple:
        return tuple(chi.values[h] for h in self.toral_basis)

    def check_on_cartan(self, chi: PCharacter):
        tor = set(self.toral_basis)
        if any(v for i, v in enumerate(chi.values) if i not in tor):
            raise NotOnCartan("p-character is nonzero on a root vector")

    def chi_eval(self, chi: PCharacter, h) -> int:
        ctx = self.field
        out = 0
        for i in np.nonzero(np.asarray(h)[: self.s])[0]:
            out = ctx.add(out, ctx.mul(chi.values[i], int(h[i])))
        return out

    def is_regular_semisimple(self, chi: PCharacter) -> bool:
        self.check_on_cartan(chi)
        return all(self.chi_eval(chi, self.h_alpha(a)) != 0 for a in self.positive_roots)

    def is_strongly_regular(self, chi: PCharacter) -> bool:
        lam = Weight(self.chi_toral(chi))
        return all(act_on_weight(self, w, lam) != lam for w in self.weyl_group() if w.word)

    def enumerate_lambda(self, chi: PCharacter) -> list:
        """Lambda(chi): weights with lambda(H)^p - lambda(H) = chi(H)^p on the toral basis."""
        self.check_on_cartan(chi)
        ctx = self.field
        per_coord = []
        for c in self.chi_toral(chi):
            roots = artin_schreier_roots(ctx, ctx.frob(c))
            if not roots:
                raise UnsolvableOverField(
                    f"t^p - t = {ctx.render(ctx.frob(c))} has no root in GF({ctx.p}^{ctx.e})")
            per_coord.append(sorted(x.code for x in roots))
        return [Weight(v) for v in itertools.product(*per_coord)]

    def in_lambda(self, chi: PCharacter, lam) -> bool:
        ctx = self.field
        return all(ctx.sub(ctx.frob(l), l) == ctx.frob(c) for l, c in zip(lam, self.chi_toral(chi)))

    # -- serialization ---------------------------------------------------------
    def dump(self) -> dict:
        ctx = self.field
        return {
            "family": self.family,
            "params": list(self.params),
            "p": ctx.p,
            "e": ctx.e,
            "modulus": list(ctx.modulus_poly),
            "basis": [{"index": b.index, "parity": b.parity, "label": b.label} for b in self.basis],
            "brackets": [[i, j, sorted([k, c] for k, c in d.items())]
                         for (i, j), d in sorted(self.structure_constants.items())],
            "p_map": [[i, sorted([k, c] for k, c in d.items())] for i, d in sorted(self.p_map.items())],
            "form": [[int(i), int(j), int(self.form[i, j])] for i, j in zip(*np.nonzero(self.form))],
            "toral_basis": list(self.toral_basis),
            "roots": [{"coords": list(a.int_coords), "parity": a.parity, "e": a.e_index,
                       "f": a.f_index, "positive": a in self.positive_roots} for a in self.roots],
            "rho": [ctx.render(x) for x in self.rho.values],
        }

    def dump_json(self) -> str:
        return json.dumps(self.dump(), sort_keys=True, separators=(",", ":"))

    def __repr__(self):
        return f"<{self.name} over GF({self.field.p}^{self.field.e})>"

    @property
    def name(self):
        if self.family == "osp1":
            return f"osp(1|{self.params[0]})"
        return f"{self.family}({self.params[0]}|{self.params[1]})"


# -- Weyl group helpers ---------------------------------------------------------

def compose(w1: WeylElement, w2: WeylElement) -> WeylElement:
    """The product w1 w2 (apply w2 first)."""
    return WeylElement(w1.word + w2.word, w1.h_star @ w2.h_star, w1.h_mat @ w2.h_mat)


def act_on_weight(g: LieSuperalgebra, w: WeylElement, lam) -> Weight:
    ctx = g.field
    M = ctx.vfrom_int(w.h_star)
    return Weight(tuple(int(x) for x in linalg.matvec(ctx, M, np.array(tuple(lam), dtype=np.int64))))


def act_on_int_weight(w: WeylElement, v) -> np.ndarray:
    return w.h_star @ np.asarray(v, dtype=np.int64)


def weyl_inverse(g: LieSuperalgebra, w: WeylElement) -> WeylElement:
    gens = g.weyl_generators()
    out = g.weyl_identity()
    for i in reversed(w.word):
        out = compose(out, gens[i])
    return out


def weyl_generators(g):
    return g.weyl_generators()


def _exp_nilpotent(ctx, A, p):
    """sum_{k<p} A^k / k!, requiring A^p = 0."""
    n = A.shape[0]
    if linalg.matpow(ctx, A, p).any():
        raise NilpotencyTooDeep("ad-nilpotency order is not below p")
    out = linalg.identity(n)
    term = linalg.identity(n)
    for k in range(1, p):
        term = linalg.matmul(ctx, term, A)
        if not term.any():
            break
        out = ctx.vadd(out, ctx.vmul(term, ctx.inv(factorial(k) % ctx.p)))
    return out


def representative_automorphism(g: LieSuperalgebra, w: WeylElement) -> np.ndarray:
    """Matrix of n_w on g for a Weyl word: exp(ad e) exp(-ad f) exp(ad e) per letter."""
    ctx = g.field
    N = linalg.identity(g.n)
    for i in w.word:
        a = g.simple_even_roots[i]
        e = g.unit(a.e_index)
        f = g.unit(a.f_index)
        # normalize so that [e, f] is the coroot
        val = g.root_eval(a, g.bracket(e, f))
        f = ctx.vmul(f, ctx.mul(2, ctx.inv(val)))
        Ee = _exp_nilpotent(ctx, g.ad_matrix(e), g.p)
        Ef = _exp_nilpotent(ctx, ctx.vneg(g.ad_matrix(f)), g.p)
        n_i = linalg.matmul(ctx, linalg.matmul(ctx, Ee, Ef), Ee)
        N = linalg.matmul(ctx, N, n_i)
    return N


# -- builders -------------------------------------------------------------------

def _check_p(ctx: FieldCtx):
    if ctx.p <= 2:
        raise BadCharacteristic("characteristic must be > 2")


def _upper(g, root):
    M = g.matrices[root.e_index]
    return bool(np.triu(M, 1).any()) and not np.tril(M, -1).any()


def build_gl(m: int, n: int, field: FieldCtx) -> LieSuperalgebra:
    """gl(m|n): matrix units E_ij, supercommutator bracket, supertrace form."""
    _check_p(field)
    if m < 1 or n < 1:
        raise SuperalgError("m, n must be >= 1")
    if m + n > MAX_MATRIX_SIZE:
        raise TooLarge(f"m + n = {m + n} exceeds the desk-scale bound {MAX_MATRIX_SIZE}")
    N = m + n
    ipar = [0] * m + [1] * n
    units = [(i, j) for i in range(N) for j in range(N)]
    even = [u for u in units if ipar[u[0]] == ipar[u[1]]]
    odd = [u for u in units if ipar[u[0]] != ipar[u[1]]]
    order = even + odd
    mats = [_unit(N, i, j) for i, j in order]
    parities = [ipar[i] ^ ipar[j] for i, j in order]
    labels = [f"E{i + 1}{j + 1}" for i, j in order]
    toral = [order.index((i, i)) for i in range(N)]
    return _make("gl", (m, n), field, mats, parities, labels, toral, _upper, 1, ipar)


def build_sl(m: int, n: int, field: FieldCtx) -> LieSuperalgebra:
    """sl(m|n): supertrace-zero matrices; needs p not dividing m - n."""
    _check_p(field)
    if m < 1 or n < 1:
        raise SuperalgError("m, n must be >= 1")
    if (m - n) % field.p == 0:
        raise BadCharacteristic(f"sl({m}|{n}) requires p>2, p∤(m−n); p={field.p} divides {m - n}")
    if m + n > MAX_MATRIX_SIZE:
        raise TooLarge(f"m + n = {m + n} exceeds the desk-scale bound {MAX_MATRIX_SIZE}")
    N = m + n
    ipar = [0] * m + [1] * n
    hs, hlabels = [], []
    for k in range(N - 1):
        H = _unit(N, k, k) + (1 if ipar[k] != ipar[k + 1] else -1) * _unit(N, k + 1, k + 1)
        hs.append(H)
        hlabels.append(f"H{k + 1}")
    off = [(i, j) for i in range(N) for j in range(N) if i != j]
    even = [u for u in off if ipar[u[0]] == ipar[u[1]]]
    odd = [u for u in off if ipar[u[0]] != ipar[u[1]]]
    mats = hs + [_unit(N, i, j) for i, j in even + odd]
    parities = [0] * len(hs) + [0] * len(even) + [1] * len(odd)
    labels = hlabels + [f"E{i + 1}{j + 1}" for i, j in even + odd]
    toral = list(range(len(hs)))
    return _make("sl", (m, n), field, mats, parities, labels, toral, _upper, 1, ipar)


def build_osp1(n2: int, field: FieldCtx) -> LieSuperalgebra:
    """osp(1|n2) realized on a superspace with one even and n2 odd coordinates.

    The odd coordinates carry the symplectic form [[0, I], [-I, 0]].  For
    n2 = 2 the basis is (h, e, f | x, y) with
    [h,e]=2e, [h,f]=-2f, [e,f]=h, [h,x]=x, [h,y]=-y,
    [x,x]=2e, [y,y]=-2f, [x,y]=h, [e,y]=-x, [f,x]=-y.
    """
    _check_p(field)
    if n2 % 2 or n2 < 2:
        raise SuperalgError("n2 must be a positive even number")
    if n2 > 4:
        raise Unsupported(f"osp(1|{n2}) is beyond the supported range (n2 <= 4)")
    k = n2 // 2
    N = 1 + n2
    ipar = [0] + [1] * n2

    def u(i, j):  # indices of the odd block, 1-based as in the symplectic space
        return _unit(N, i, j)

    def eps_name(c):
        parts = []
        for i, x in enumerate(c):
            if x:
                parts.append(("+" if x > 0 else "-") + ("" if abs(x) == 1 else str(abs(x))) + f"e{i + 1}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    hs = [u(1 + i, 1 + i) - u(1 + k + i, 1 + k + i) for i in range(k)]
    pos_even, neg_even = [], []
    for i in range(k):
        for j in range(i + 1, k):
            pos_even.append((u(1 + i, 1 + j) - u(1 + k + j, 1 + k + i), (i, j, "-")))
            neg_even.append((u(1 + j, 1 + i) - u(1 + k + i, 1 + k + j), (i, j, "-")))
            pos_even.append((u(1 + i, 1 + k + j) + u(1 + j, 1 + k + i), (i, j, "+")))
            neg_even.append((u(1 + k + j, 1 + i) + u(1 + k + i, 1 + j), (i, j, "+")))
    for i in range(k):
        pos_even.append((u(1 + i, 1 + k + i), (i, i, "2")))
        neg_even.append((u(1 + k + i, 1 + i), (i, i, "2")))
    xs = [u(1 + i, 0) + u(0, 1 + k + i) for i in range(k)]
    ys = [u(0, 1 + i) - u(1 + k + i, 0) for i in range(k)]
    mats = hs + [M for M, _ in pos_even] + [M for M, _ in neg_even] + xs + ys
    parities = [0] * (len(hs) + len(pos_even) + len(neg_even)) + [1] * (2 * k)
    if k == 1:
        labels = ["h", "e", "f", "x", "y"]
    else:
        labels = [f"h{i + 1}" for i in range(k)]
        labels += [f"e[{tag}]" for tag in _osp_tags(pos_even, k)]
        labels += [f"f[{tag}]" for tag in _osp_tags(neg_even, k)]
        labels += [f"x{i + 1}" for i in range(k)] + [f"y{i + 1}" for i in range(k)]
    toral = list(range(k))

    def positive(g, root):
        return sum(c * 10 ** (k - 1 - i) for i, c in enumerate(root.int_coords)) > 0

    return _make("osp1", (n2,), field, mats, parities, labels, toral, positive,
                 field.neg(field.inv2), ipar)


def _osp_tags(items, k):
    out = []
    for _, (i, j, kind) in items:
        if kind == "2":
            out.append(f"2e{i + 1}")
        else:
            out.append(f"e{i + 1}{kind}e{j + 1}")
    return out


def _make(family, params, field, mats, parities, labels, toral, positive, form_scale, ipar):
    g = LieSuperalgebra(family, params, field, mats, parities, labels, toral, positive, form_scale, ipar)
    verify_structure(g)
    return g


# -- construction-time verification --------------------------------------------

def jacobi_defect(g: LieSuperalgebra) -> int:
    """Number of basis triples violating the super Jacobi identity."""
    p, C = g.p, g.C
    par = g.parity
    # J1[a,b,c] = [a,[b,c]]
    J1 = np.einsum("bck,akl->abcl", C, C) % p
    sa = par[:, None, None]
    sb = par[None, :, None]
    sc = par[None, None, :]
    s1 = (-1) ** (sa * sc)
    s2 = (-1) ** (sb * sa)
    s3 = (-1) ** (sc * sb)
    t1 = s1[..., None] * J1
    t2 = s2[..., None] * np.transpose(J1, (2, 0, 1, 3))  # [b,[c,a]]
    t3 = s3[..., None] * np.transpose(J1, (1, 2, 0, 3))  # [c,[a,b]]
    total = (t1 + t2 + t3) % p
    return int(np.any(total, axis=3).sum())


def anticommutativity_defect(g: LieSuperalgebra) -> int:
    p, C, par = g.p, g.C, g.parity
    sign = (-1) ** np.outer(par, par)
    return int(np.any((C + sign[..., None] * np.transpose(C, (1, 0, 2))) % p, axis=2).sum())


def form_invariance_defect(g: LieSuperalgebra) -> int:
    """Triples with ([a,b],c) != (a,[b,c])."""
    p, C, G = g.p, g.C, g.form
    if g.field.e != 1:
        G = G % p
    lhs = np.einsum("abk,kc->abc", C, G) % p
    rhs = np.einsum("bck,ak->abc", C, G) % p
    return int((lhs != rhs).sum())


def restrictedness_defect(g: LieSuperalgebra) -> int:
    """Even basis elements with ad(x^[p]) != (ad x)^p."""
    fp = make_field(g.p)
    bad = 0
    for i in range(g.s):
        adx = np.transpose(g.C[i]) % g.p  # column j is [x_i, b_j]
        lhs = linalg.matpow(fp, adx, g.p)
        xp = g._pmap_dense[i]
        rhs = np.einsum("k,kjl->lj", xp, g.C) % g.p
        bad += int(not np.array_equal(lhs, rhs))
    return bad


def verify_structure(g: LieSuperalgebra):
    if anticommutativity_defect(g):
        raise StructureError("bracket is not super-anticommutative")
    if jacobi_defect(g):
        raise StructureError("super Jacobi identity fails")
    if form_invariance_defect(g):
        raise StructureError("form is not invariant")
    fp = make_field(g.p)
    if linalg.rank(fp, g.form % g.p) != g.n:
        raise StructureError("form is degenerate")
    tor = g.toral_basis
    if linalg.rank(fp, g.form[np.ix_(tor, tor)] % g.p) != g.r:
        raise StructureError("form is degenerate on the Cartan subalgebra")
    for h in tor:
        if g.p_map[h] != {h: 1}:
            raise StructureError("toral basis element is not toral")
    if restrictedness_defect(g):
        raise StructureError("ad(x^[p]) != (ad x)^p")


def build(family: str, m: int = 0, n: int = 0, n2: int = 0, p: int = 3, e: int = 1) -> LieSuperalgebra:
    ctx = make_field(p, e)
    if family == "gl":
        return build_gl(m, n, ctx)
    if family == "sl":
        return build_sl(m, n, ctx)
    if family == "osp1":
        return build_osp1(n2, ctx)
    raise SuperalgError(f"unknown family {family!r}")
