import itertools

import numpy as np
import pytest

from superalg_centers import linalg
from superalg_centers.superalg import TooLarge, act_on_weight, build
from superalg_centers.verma import (
    Module,
    NotUnique,
    WeightNotCompatible,
    annihilator_truncation_check,
    build_verma,
    expected_lambda_w,
    find_intertwiner,
    highest_weight_of,
    is_absolutely_irreducible,
    rho_shift_identity_holds,
    reflected_root_sum,
    twist_by_weyl,
    verify_lemma_wa,
    verma_dimension,
    verma_report_json,
)


def regular_chis(g, k=2):
    out = []
    for v in itertools.product(range(g.p), repeat=g.r):
        chi = g.pchar(v)
        if g.is_regular_semisimple(chi):
            out.append(chi)
            if len(out) == k:
                break
    return out


ALGEBRAS = {
    "gl11": lambda: build("gl", 1, 1, p=3, e=3),
    "osp12": lambda: build("osp1", n2=2, p=3, e=3),
    "gl21": lambda: build("gl", 2, 1, p=3, e=3),
    "sl21": lambda: build("sl", 2, 1, p=5, e=5),
}


@pytest.mark.parametrize("name,dim", [("gl11", 2), ("osp12", 6), ("gl21", 12), ("sl21", 20)])
def test_verma_dimension_formula(name, dim):
    g = ALGEBRAS[name]()
    assert verma_dimension(g) == dim
    chi = g.pchar([0] * g.r)
    M = build_verma(g, chi, [0] * g.r)
    assert M.dim == dim
    assert M.relation_defects() == []
    assert M.is_parity_preserving()


@pytest.mark.parametrize("name", ["gl11", "osp12", "gl21"])
def test_regular_vermas_are_irreducible(name):
    g = ALGEBRAS[name]()
    chi = regular_chis(g, 1)[0]
    weights = g.enumerate_lambda(chi)
    assert len(weights) == g.p ** g.r
    for lam in weights:
        M = build_verma(g, chi, lam.values)
        assert M.relation_defects() == []
        assert is_absolutely_irreducible(M)
        assert highest_weight_of(M) == lam


def test_restricted_osp_verma_is_reducible():
    g = build("osp1", n2=2, p=3)
    M = build_verma(g, g.pchar((0,)), (0,))
    assert not is_absolutely_irreducible(M)
    with pytest.raises(NotUnique):
        highest_weight_of(M)


def test_weight_outside_lambda_is_rejected():
    # for chi(h) != 0 the weights satisfy lambda^p - lambda = chi^p, so 0 is excluded
    g = ALGEBRAS["osp12"]()
    chi = regular_chis(g, 1)[0]
    with pytest.raises(WeightNotCompatible):
        build_verma(g, chi, (0,))


def test_intertwiners():
    g = ALGEBRAS["osp12"]()
    chi = regular_chis(g, 1)[0]
    weights = g.enumerate_lambda(chi)
    mods = [build_verma(g, chi, lam.values) for lam in weights]
    ctx = g.field
    # Schur: the self-intertwiners are the scalars
    it = find_intertwiner(mods[0], mods[0])
    assert it.exists and it.invertible and it.solution_dim == 1
    for a, b in itertools.combinations(mods, 2):
        assert not find_intertwiner(a, b).exists
    # conjugating by a permutation gives an isomorphic module
    M = mods[1]
    P = np.eye(M.dim, dtype=np.int64)[::-1]
    permuted = Module(g, chi, [P @ A @ P for A in M.actions], M.parity_vector[::-1])
    it = find_intertwiner(M, permuted)
    assert it.invertible
    for A, B in zip(M.actions, permuted.actions):
        assert np.array_equal(linalg.matmul(ctx, it.matrix, A), linalg.matmul(ctx, B, it.matrix))


def test_twist_by_identity_is_a_no_op():
    g = ALGEBRAS["osp12"]()
    chi = regular_chis(g, 1)[0]
    M = build_verma(g, chi, g.enumerate_lambda(chi)[0].values)
    T = twist_by_weyl(M, g.weyl_identity())
    assert T.chi == M.chi
    assert all(np.array_equal(a, b) for a, b in zip(T.actions, M.actions))


def test_osp_twist_negates_chi_and_keeps_relations():
    g = ALGEBRAS["osp12"]()
    ctx = g.field
    chi = regular_chis(g, 1)[0]
    (s,) = g.weyl_generators()
    for lam in g.enumerate_lambda(chi):
        T = twist_by_weyl(build_verma(g, chi, lam.values), s)
        assert g.chi_toral(T.chi) == tuple(ctx.neg(v) for v in g.chi_toral(chi))
        assert T.relation_defects() == []
        assert is_absolutely_irreducible(T)


@pytest.mark.parametrize("name", ["osp12", "gl21"])
def test_twisted_highest_weight_for_every_weight(name):
    g = ALGEBRAS[name]()
    for chi in regular_chis(g, 2):
        for lam in g.enumerate_lambda(chi):
            for w in g.weyl_generators():
                res = verify_lemma_wa(g, chi, lam.values, w)
                assert res.ok, (lam.values, res.expected, res.observed)
                assert res.s_identity


def test_twisted_highest_weight_sl21():
    g = ALGEBRAS["sl21"]()
    chi = regular_chis(g, 1)[0]
    for lam in g.enumerate_lambda(chi)[:5]:
        for w in g.weyl_generators():
            assert verify_lemma_wa(g, chi, lam.values, w).ok


def test_twisted_weight_formula_by_hand_for_osp():
    # s acts by -1 on weights and sends both positive roots, alpha (even) and alpha/2 (odd), negative
    g = ALGEBRAS["osp12"]()
    ctx = g.field
    (s,) = g.weyl_generators()
    shift = reflected_root_sum(g, s)
    assert shift.tolist() == [1]  # 2 - 1 in units of the odd root
    lam = (ctx.from_int(1),)
    assert expected_lambda_w(g, lam, s).values == (ctx.sub(act_on_weight(g, s, lam).values[0], 1),)


@pytest.mark.parametrize("family,kw", [("gl", dict(m=1, n=1)), ("gl", dict(m=2, n=1)), ("sl", dict(m=2, n=1)),
                                       ("osp1", dict(n2=2)), ("osp1", dict(n2=4)), ("gl", dict(m=2, n=2))])
def test_s_identity_over_whole_weyl_group(family, kw):
    g = build(family, p=5, **kw)
    for w in g.weyl_group():
        assert rho_shift_identity_holds(g, w)


def test_annihilator_truncation():
    for name in ("gl11", "osp12"):
        g = ALGEBRAS[name]()
        samples = [(chi, lam.values) for chi in regular_chis(g, 2) for lam in g.enumerate_lambda(chi)]
        assert annihilator_truncation_check(g, 0, samples)
        assert annihilator_truncation_check(g, 2, samples)
    # one module alone does not separate the 19 monomials of degree <= 2
    g = ALGEBRAS["osp12"]()
    chi = regular_chis(g, 1)[0]
    one = [(chi, g.enumerate_lambda(chi)[0].values)]
    assert not annihilator_truncation_check(g, 2, one)
    with pytest.raises(TooLarge):
        annihilator_truncation_check(g, 2 * g.p + 1, one)


def test_verma_report_json():
    g = ALGEBRAS["osp12"]()
    chi = regular_chis(g, 1)[0]
    lam = g.enumerate_lambda(chi)[0].values
    M = build_verma(g, chi, lam)
    res = [verify_lemma_wa(g, chi, lam, w) for w in g.weyl_generators()]
    text = verma_report_json(M, res)
    assert text == verma_report_json(M, res)
    assert '"dim": 6' in text and '"irreducible": true' in text
