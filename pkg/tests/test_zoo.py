import pytest

from rbhopf.actions import HopfModule, canonical_modules, check_hopf_module, trivial_dimodule
from rbhopf.errors import HypothesisError
from rbhopf.kernel import GF, QQ, Matrix, kron
from rbhopf.rotabaxter import check_generic, construct
from rbhopf.structures import (BialgebraLike, Coalgebra, check_bialgebra, check_coalgebra, check_hopf,
                               is_left_integral, left_integrals, pi_L_matrix, quantum_commutativity,
                               weak_identity_suite)
from rbhopf.zoo import (build_dual_group_algebra, build_group_algebra, build_groupoid_weak_hopf,
                        build_pair_groupoid_weak_hopf, build_sweedler_h4, check_entry, load_zoo,
                        sweedler_integral, zoo_entries)


def e(h, name):
    return Matrix.basis_vector(h.field, h.dim, h.basis.index(name))


def mul(h, a, b):
    return h.mult @ kron(a, b)


# -- load-time verification -------------------------------------------------


def test_zoo_loads_and_verifies(zoo_any):
    assert zoo_any
    for entry in zoo_any.values():
        assert check_entry(entry).ok, entry.name
        assert entry.provenance


def test_zoo_has_every_family():
    names = set(zoo_entries(QQ))
    for want in ("kC2", "kC3", "kC2-dual", "sweedler-h4", "groupoid-2", "pair-groupoid-2", "primitive",
                 "kC2:regular", "kC2:trivial-dimodule", "kC2:tensor-coalgebra", "kC2:relative",
                 "groupoid-2:regular-right"):
        assert want in names


def test_h4_absent_in_char_two():
    assert "sweedler-h4" not in zoo_entries(GF(2))


def test_broken_entry_is_rejected(monkeypatch):
    import rbhopf.zoo as zoo
    good = zoo.zoo_entries

    def broken(field=QQ):
        out = good(field)
        c = out["primitive"].structure
        bad = Coalgebra(2, c.delta, Matrix.row(field, [1, 1]), c.basis)
        out["primitive"] = zoo.ZooEntry("primitive", bad, "broken")
        return out

    monkeypatch.setattr(zoo, "zoo_entries", broken)
    with pytest.raises(HypothesisError, match="zoo entry fails its axioms"):
        load_zoo(QQ)


# -- group algebras ---------------------------------------------------------


@pytest.mark.parametrize("f", [QQ, GF(2), GF(3)], ids=lambda f: f.name)
@pytest.mark.parametrize("n", [2, 3])
def test_group_algebras_are_hopf(f, n):
    assert check_hopf(build_group_algebra(n, f)).ok


def test_kc2_gf2_has_no_normalized_integral():
    h = build_group_algebra(2, GF(2))
    ints = left_integrals(h)
    # the integrals are multiples of 1+g, and eps(1+g) = 2 = 0
    assert len(ints) == 1
    assert all((h.counit @ x)[0, 0] == 0 for x in ints)


def test_kc2_integral_over_q():
    h = build_group_algebra(2)
    x = Matrix.column(QQ, [1, 1])
    assert is_left_integral(h, x)


# -- dual group algebras ----------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_dual_group_algebra_idempotents(n):
    h = build_dual_group_algebra(n)
    assert check_hopf(h).ok
    ps = [Matrix.basis_vector(QQ, n, i) for i in range(n)]
    for i, a in enumerate(ps):
        for j, b in enumerate(ps):
            assert mul(h, a, b) == (a if i == j else a.scale(0))
    total = ps[0]
    for p in ps[1:]:
        total = total + p
    assert total == h.unit


@pytest.mark.parametrize("n", [2, 3])
def test_dual_idempotents_generic_on_dimodule(n):
    h = build_dual_group_algebra(n)
    dm = trivial_dimodule(h)
    for i in range(n):
        b = construct("dimodule_T", hm=dm, e=Matrix.basis_vector(QQ, n, i))
        assert b.report.ok
        assert check_generic(dm.com, b.op.t, -1, trials=20).generic


# -- Sweedler ---------------------------------------------------------------


def naive_h4_product(a, b):
    """g^a x^b * g^c x^d by commuting x past g: x g = -g x."""
    (a1, b1), (a2, b2) = a, b
    if b1 + b2 >= 2:
        return None, 0
    return ((a1 + a2) % 2, b1 + b2), (-1) ** (b1 * a2)


def test_h4_multiplication_table_matches_normal_form_oracle():
    h = build_sweedler_h4()
    words = {"1": (0, 0), "g": (1, 0), "x": (0, 1), "gx": (1, 1)}
    inv = {v: k for k, v in words.items()}
    for na, wa in words.items():
        for nb, wb in words.items():
            w, s = naive_h4_product(wa, wb)
            want = e(h, "1").scale(0) if w is None else e(h, inv[w]).scale(s)
            assert mul(h, e(h, na), e(h, nb)) == want, (na, nb)


def test_h4_hopf_and_signs():
    h = build_sweedler_h4()
    assert check_hopf(h).ok
    x, g = e(h, "x"), e(h, "g")
    assert mul(h, x, g) == -mul(h, g, x)
    assert h.antipode @ x == -e(h, "gx")
    assert h.delta @ x == kron(x, e(h, "1")) + kron(g, x)


def test_h4_antipode_square():
    h = build_sweedler_h4()
    s2 = h.antipode @ h.antipode
    assert s2 @ e(h, "x") == -e(h, "x")
    assert s2 != h.id


def test_h4_integral():
    h = build_sweedler_h4()
    lam = sweedler_integral(h)
    assert is_left_integral(h, lam)
    for name in h.basis:
        hb = e(h, name)
        eps = (h.counit @ hb)[0, 0]
        assert mul(h, hb, lam) == lam.scale(eps)
    assert (h.counit @ lam)[0, 0] == 0
    assert mul(h, lam, lam).is_zero()


def test_h4_rejects_char_two():
    with pytest.raises(HypothesisError):
        build_sweedler_h4(GF(2))


def test_h4_no_normalized_integral_rejects_prop_path():
    h = build_sweedler_h4()
    dm = trivial_dimodule(h)
    with pytest.raises(HypothesisError):
        construct("dimodule_T", hm=dm, e=sweedler_integral(h), integral=True)


# -- weak Hopf --------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_groupoid_weak_not_strict(n):
    h = build_groupoid_weak_hopf(n)
    assert weak_identity_suite(h).ok
    strict = BialgebraLike(h.alg, h.coa, "strict", h.antipode, h.name)
    assert not check_bialgebra(strict).ok
    assert quantum_commutativity(h) == (True, True)
    assert h.delta @ h.unit != kron(h.unit, h.unit)


def test_groupoid_pi_l_is_identity():
    h = build_groupoid_weak_hopf(2)
    assert h.dim == 2 and pi_L_matrix(h) == h.id
    assert construct("weak_target", h=h).report.ok


def test_groupoid_needs_two_objects():
    with pytest.raises(ValueError):
        build_groupoid_weak_hopf(1)


def test_pair_groupoid_not_quantum_commutative():
    h = build_pair_groupoid_weak_hopf(2)
    assert weak_identity_suite(h).ok
    assert quantum_commutativity(h) == (False, False)


# -- canonical modules ------------------------------------------------------


@pytest.mark.parametrize("builder", [build_group_algebra, build_sweedler_h4, build_dual_group_algebra],
                         ids=["kC", "h4", "dual"])
def test_canonical_modules_pass(builder):
    h = builder(2) if builder is not build_sweedler_h4 else builder()
    mods = canonical_modules(h)
    assert {"regular", "regular-right", "trivial-dimodule", "tensor-coalgebra", "relative"} <= set(mods)
    for hm in mods.values():
        assert isinstance(hm, HopfModule)
        assert check_hopf_module(hm).ok


def test_tensor_coalgebra_with_unit_element():
    h = build_group_algebra(2)
    b = construct("hopf_tensor_coalgebra", h=h, c=h.coa, e=e(h, "1"))
    assert b.report.ok


def test_relative_identity_phi_gives_augmentation():
    h = build_group_algebra(2)
    rel = canonical_modules(h)["relative"]
    b = construct("relative_E", hm=rel, phi=h.id)
    assert b.op.p == h.unit @ h.counit


def test_every_construction_kind_has_zoo_instance(zoo_q):
    from rbhopf.rotabaxter import CONSTRUCTIONS, PairedOperator
    from rbhopf.actions import regular_comodule
    h = zoo_q["kC2"].structure
    g = build_groupoid_weak_hopf(2)
    m = regular_comodule(h.coa)
    p = h.unit @ h.counit
    op = PairedOperator(p, p, -1)
    half = Matrix.column(QQ, [QQ.coerce("1/2"), QQ.coerce("1/2")])
    from rbhopf.structures import Functional
    inputs = {
        "rb_self_comodule": dict(coa=h.coa, p=p, weight=-1),
        "from_augmentation": dict(coa=h.coa, grouplike=e(h, "g")),
        "from_functional": dict(coa=h.coa, chi=Functional.of(QQ, [1, 0])),
        "scale": dict(comodule=m, op=op, mu=2),
        "tensor_bialgebra": dict(h=h, comodule=m, op=op),
        "tensor_space": dict(comodule=m, op=op, vdim=2),
        "from_idempotent_epi": dict(comodule=m, t=m.id),
        "weak_target": dict(h=g),
        "weak_hopf_T": dict(hm=zoo_q["groupoid-2:regular-right"].structure),
        "dimodule_T": dict(hm=zoo_q["kC2:trivial-dimodule"].structure, e=half),
        "relative_E": dict(hm=zoo_q["kC2:relative"].structure, phi=h.id),
        "bar": dict(comodule=m, op=op),
        "double": dict(comodule=m, op=op),
        "hopf_tensor_coalgebra": dict(h=h, c=h.coa, e=e(h, "1")),
        "augmentation_hopf": dict(h=h),
        "rb_bialgebra_hopf": dict(h=h, p=p, weight=-1),
    }
    assert set(inputs) == set(CONSTRUCTIONS)
    for kind, kw in inputs.items():
        assert construct(kind, **kw).report.ok, kind


def test_coalgebra_entries_pass():
    for entry in zoo_entries(QQ).values():
        if isinstance(entry.structure, Coalgebra):
            assert check_coalgebra(entry.structure).ok
