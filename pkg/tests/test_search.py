import itertools
import json
from fractions import Fraction
from pathlib import Path

import pytest

from rbhopf.actions import is_colinear, regular_comodule, trivial_dimodule
from rbhopf.errors import HypothesisError, SearchSpaceTooLarge
from rbhopf.kernel import GF, QQ, Matrix
from rbhopf.rotabaxter import (PairedOperator, check_rb_coalgebra, check_rb_paired_comodule, construct,
                               is_quasi_idempotent, random_operator)
from rbhopf.search import (SearchSpec, enumerate_convolution_idempotents, enumerate_paired_operators,
                           enumerate_quasi_idempotent_colinear, enumerate_rb_operators, golden_searches)
from rbhopf.structures import Functional, counit_functional, is_convolution_idempotent
from rbhopf.zoo import build_dual_group_algebra, build_group_algebra, small_coalgebras

GOLDEN = Path(__file__).parent / "golden" / "search_counts.json"


def all_matrices(f, rows, cols):
    """Every rows x cols matrix over GF(p), in the search's lexicographic order."""
    for vals in itertools.product(range(f.p), repeat=rows * cols):
        yield Matrix(f, [vals[i * cols:(i + 1) * cols] for i in range(rows)])


def brute_rb(c, f, w):
    return [p for p in all_matrices(f, c.dim, c.dim) if check_rb_coalgebra(c, p, w).ok]


# -- worked examples ----------------------------------------------------------


def test_one_dim_gf2_weight_one():
    f = GF(2)
    res = enumerate_rb_operators(small_coalgebras(f)["k"], SearchSpec(f, weight=1))
    assert res.count == 2
    assert res.members == [Matrix(f, [[0]]), Matrix(f, [[1]])]


def test_kc2_gf2_weight_one_matches_checker_sweep():
    f = GF(2)
    c = small_coalgebras(f)["kC2"]
    res = enumerate_rb_operators(c, SearchSpec(f, weight=1))
    assert res.examined == 16
    assert res.members == brute_rb(c, f, 1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_zero_and_identity_at_minus_one(p):
    f = GF(p)
    for c in small_coalgebras(f).values():
        res = enumerate_rb_operators(c, SearchSpec(f, weight=-1))
        assert c.id.scale(0) in res and c.id in res


def test_rational_conv_idempotents_kc2():
    c = build_group_algebra(2).coa
    found = enumerate_convolution_idempotents(c, values=[0, 1])
    assert len(found) == 4
    assert counit_functional(c) in found


@pytest.mark.parametrize("p", [2, 3])
def test_counit_always_conv_idempotent(p):
    f = GF(p)
    for c in small_coalgebras(f).values():
        res = enumerate_convolution_idempotents(c)
        assert counit_functional(c).coefficients in res


def test_conv_idempotents_feed_from_functional():
    for f in (GF(2), GF(3)):
        for c in list(small_coalgebras(f).values()) + [build_group_algebra(3, f).coa]:
            res = enumerate_convolution_idempotents(c)
            for row in res.members:
                chi = Functional(row)
                assert is_convolution_idempotent(chi, c)
                b = construct("from_functional", coa=c, chi=chi)
                assert b.report.ok
                # the constructed P is in the operator enumeration at weight -1
                if c.dim <= 2:
                    assert b.op.p in enumerate_rb_operators(c, SearchSpec(f, weight=-1))


def test_quasi_idempotent_contains_zero_and_scalar():
    for p in (2, 3, 5):
        f = GF(p)
        m = regular_comodule(small_coalgebras(f)["kC2"])
        for w in range(p):
            res = enumerate_quasi_idempotent_colinear(m, SearchSpec(f, "quasi-idempotent-colinear", w))
            assert m.id.scale(0) in res
            assert m.id.scale(-w) in res


def test_quasi_idempotent_kc2_gf3_weight_two():
    f = GF(3)
    m = regular_comodule(small_coalgebras(f)["kC2"])
    res = enumerate_quasi_idempotent_colinear(m, SearchSpec(f, "quasi-idempotent-colinear", 2))
    brute = [t for t in all_matrices(f, 2, 2) if is_colinear(m, t) and is_quasi_idempotent(t, 2)]
    assert res.members == brute and res.count == 4
    for t in res.members:
        for i in range(10):
            assert check_rb_paired_comodule(m, PairedOperator(random_operator(f, 2, 99, i), t, 2)).ok


# -- oracle agreement -------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3])
def test_negative_soundness_full_sweep(p):
    # every candidate is either listed and passes, or unlisted and fails
    f = GF(p)
    for name, c in small_coalgebras(f).items():
        for w in range(p):
            res = enumerate_rb_operators(c, SearchSpec(f, weight=w))
            listed = set(res.members)
            for cand in all_matrices(f, c.dim, c.dim):
                assert (cand in listed) == check_rb_coalgebra(c, cand, w).ok, (name, w, cand)


def test_paired_operators_agree_with_checker():
    f = GF(2)
    for c in small_coalgebras(f).values():
        m = regular_comodule(c)
        for P in all_matrices(f, c.dim, c.dim):
            for w in range(2):
                res = enumerate_paired_operators(m, P, SearchSpec(f, "paired-T", w))
                brute = [t for t in all_matrices(f, c.dim, c.dim)
                         if check_rb_paired_comodule(m, PairedOperator(P, t, w)).ok]
                assert res.members == brute


def test_constructions_appear_in_enumeration():
    f = GF(3)
    h = build_group_algebra(2, f)
    aug = construct("from_augmentation", coa=h.coa, grouplike=Matrix.column(f, [0, 1]))
    assert aug.op.p in enumerate_rb_operators(h.coa, SearchSpec(f, weight=-1))
    dm = trivial_dimodule(build_dual_group_algebra(2, f))
    b = construct("dimodule_T", hm=dm, e=Matrix.column(f, [0, 1]))
    res = enumerate_quasi_idempotent_colinear(dm.com, SearchSpec(f, "quasi-idempotent-colinear", -1))
    assert b.op.t in res


def test_weight_is_field_reduced():
    f = GF(3)
    c = small_coalgebras(f)["kC2"]
    a = enumerate_rb_operators(c, SearchSpec(f, weight=-1))
    b = enumerate_rb_operators(c, SearchSpec(f, weight=2))
    assert a.members == b.members


# -- bounds and modes -------------------------------------------------------


def test_exhaustive_bounds():
    with pytest.raises(SearchSpaceTooLarge) as ei:
        enumerate_rb_operators(build_group_algebra(2, GF(7)).coa, SearchSpec(GF(7)))
    assert ei.value.reason == "search space too large"
    with pytest.raises(SearchSpaceTooLarge):
        enumerate_rb_operators(build_group_algebra(4, GF(2)).coa, SearchSpec(GF(2)))


def test_randomized_bounds_and_determinism():
    f = GF(3)
    c = build_group_algebra(4, f).coa
    spec = SearchSpec(f, weight=2, mode="randomized", seed=1, trials=300)
    a = enumerate_rb_operators(c, spec)
    b = enumerate_rb_operators(c, spec)
    assert a.members == b.members and a.digest() == b.digest()
    for p in a.members:
        assert check_rb_coalgebra(c, p, 2).ok
    with pytest.raises(SearchSpaceTooLarge):
        enumerate_rb_operators(build_group_algebra(7, f).coa, SearchSpec(f, mode="randomized"))


def test_randomized_is_subset_of_exhaustive():
    f = GF(3)
    c = small_coalgebras(f)["kC2"]
    full = set(enumerate_rb_operators(c, SearchSpec(f, weight=2)).members)
    sample = enumerate_rb_operators(c, SearchSpec(f, weight=2, mode="randomized", seed=3, trials=50))
    assert set(sample.members) <= full


def test_spec_validation():
    with pytest.raises(HypothesisError, match="prime field required"):
        SearchSpec(QQ)
    with pytest.raises(ValueError):
        SearchSpec(GF(2), identity="nope")
    with pytest.raises(ValueError):
        SearchSpec(GF(2), mode="nope")
    with pytest.raises(HypothesisError, match="field mismatch"):
        enumerate_rb_operators(build_group_algebra(2, GF(3)).coa, SearchSpec(GF(2)))


def test_rational_requires_values():
    with pytest.raises(HypothesisError, match="finite value set required"):
        enumerate_convolution_idempotents(build_group_algebra(2).coa)


def test_rational_values_with_fractions():
    c = build_dual_group_algebra(2).coa
    # on the dual group algebra Delta(p_g) is a sum over factorizations; 1/2 never gives an idempotent
    found = enumerate_convolution_idempotents(c, values=[0, Fraction(1, 2), 1])
    for chi in found:
        assert is_convolution_idempotent(chi, c)


def test_result_dict_shape():
    f = GF(2)
    res = enumerate_rb_operators(small_coalgebras(f)["k"], SearchSpec(f, weight=1), subject="k")
    d = res.to_dict()
    assert d["count"] == 2 and d["members"] == [[["0"]], [["1"]]]
    assert d["subject"] == "k" and d["field"] == "GF(2)" and d["weight"] == "1"
    assert "members" not in res.to_dict(include_members=False)


# -- golden values ----------------------------------------------------------


def test_golden_file_covers_registry():
    table = json.loads(GOLDEN.read_text())
    assert set(table) == set(golden_searches())


@pytest.mark.parametrize("name", sorted(json.loads(GOLDEN.read_text())))
def test_golden_counts(name):
    want = json.loads(GOLDEN.read_text())[name]
    res = golden_searches()[name]()
    assert (res.count, res.examined, res.digest()) == (want["count"], want["examined"], want["digest"])


@pytest.mark.slow
def test_kc3_gf5_exhaustive_matches_gf_checker_sample():
    f = GF(5)
    c = build_group_algebra(3, f).coa
    res = enumerate_rb_operators(c, SearchSpec(f, weight=4))
    assert res.examined == 5 ** 9
    for p in res.members[:50]:
        assert check_rb_coalgebra(c, p, 4).ok
    assert c.id in res and c.id.scale(0) in res

