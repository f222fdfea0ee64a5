"""Built-in instances: group algebras, their duals, Sweedler's H4, groupoid algebras.

Everything is generated programmatically so the same builders work over any
supported field.  ``load_zoo`` verifies each entry against its axiom checker
before handing it out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .errors import HypothesisError
from .kernel import QQ, Field, Matrix
from .structures import (AlgebraStruct, BialgebraLike, Coalgebra, check_bialgebra, check_coalgebra,
                         weak_identity_suite)


def _tensor_matrix(fld: Field, rows: int, cols: int, entries: dict) -> Matrix:
    data = [[0] * cols for _ in range(rows)]
    for (i, j), v in entries.items():
        data[i][j] += v
    return Matrix(fld, data, rows, cols)


def _mult_matrix(fld: Field, d: int, product: Callable[[int, int], dict]) -> Matrix:
    ent = {}
    for a in range(d):
        for b in range(d):
            for k, v in product(a, b).items():
                ent[(k, a * d + b)] = ent.get((k, a * d + b), 0) + v
    return _tensor_matrix(fld, d, d * d, ent)


def _delta_matrix(fld: Field, d: int, coproduct: Callable[[int], dict]) -> Matrix:
    ent = {}
    for a in range(d):
        for (i, j), v in coproduct(a).items():
            ent[(i * d + j, a)] = ent.get((i * d + j, a), 0) + v
    return _tensor_matrix(fld, d * d, d, ent)


def _linear(fld: Field, d: int, image: Callable[[int], dict]) -> Matrix:
    ent = {}
    for a in range(d):
        for k, v in image(a).items():
            ent[(k, a)] = ent.get((k, a), 0) + v
    return _tensor_matrix(fld, d, d, ent)


def _bialgebra(fld, d, basis, product, unit: dict, coproduct, counit: dict, antipode, kind="strict", name=""):
    alg = AlgebraStruct(d, _mult_matrix(fld, d, product),
                        Matrix.column(fld, [unit.get(i, 0) for i in range(d)]))
    coa = Coalgebra(d, _delta_matrix(fld, d, coproduct), Matrix.row(fld, [counit.get(i, 0) for i in range(d)]),
                    tuple(basis))
    s = _linear(fld, d, antipode) if antipode is not None else None
    return BialgebraLike(alg, coa, kind, s, name)


def _cyclic_names(n: int, letter: str = "g") -> list[str]:
    return ["1" if i == 0 else (letter if i == 1 else f"{letter}^{i}") for i in range(n)]


def build_group_algebra(n: int, field: Field = QQ) -> BialgebraLike:
    """k C_n with group-like basis 1, g, ..., g^{n-1} and S(g) = g^{-1}."""
    return _bialgebra(
        field, n, _cyclic_names(n),
        product=lambda a, b: {(a + b) % n: 1},
        unit={0: 1},
        coproduct=lambda a: {(a, a): 1},
        counit={i: 1 for i in range(n)},
        antipode=lambda a: {(-a) % n: 1},
        name=f"kC{n}" + ("" if field == QQ else f"/{field}"),
    )


def build_dual_group_algebra(n: int, field: Field = QQ) -> BialgebraLike:
    """(k C_n)^* with the orthogonal idempotents p_g dual to the group basis."""
    names = ["p_" + x for x in _cyclic_names(n)]
    return _bialgebra(
        field, n, names,
        product=lambda a, b: {a: 1} if a == b else {},
        unit={i: 1 for i in range(n)},
        coproduct=lambda a: {(h, (a - h) % n): 1 for h in range(n)},
        counit={0: 1},
        antipode=lambda a: {(-a) % n: 1},
        name=f"kC{n}-dual" + ("" if field == QQ else f"/{field}"),
    )


def build_sweedler_h4(field: Field = QQ) -> BialgebraLike:
    """Sweedler's H4: g^2 = 1, x^2 = 0, xg = -gx, Delta(x) = x(x)1 + g(x)x, S(x) = -gx."""
    if field.characteristic == 2:
        raise HypothesisError("characteristic 2", "H4 needs -1 != 1")
    # basis index 2*b + a  <->  g^a x^b : 1, g, x, gx
    idx = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}
    ga = {v: k for k, v in idx.items()}

    def product(i, j):
        a, b = ga[i]
        c, d = ga[j]
        if b + d >= 2:
            return {}
        return {idx[((a + c) % 2, b + d)]: (-1) ** (b * c)}

    coproduct = {
        0: {(0, 0): 1},
        1: {(1, 1): 1},
        2: {(2, 0): 1, (1, 2): 1},
        3: {(3, 1): 1, (0, 3): 1},
    }
    antipode = {0: {0: 1}, 1: {1: 1}, 2: {3: -1}, 3: {2: 1}}
    return _bialgebra(field, 4, ["1", "g", "x", "gx"], product, {0: 1}, coproduct.__getitem__,
                      {0: 1, 1: 1}, antipode.__getitem__,
                      name="sweedler-h4" + ("" if field == QQ else f"/{field}"))


def sweedler_integral(h: BialgebraLike) -> Matrix:
    """The left integral x + gx of H4 (epsilon of it is 0)."""
    return Matrix.column(h.field, [0, 0, 1, 1])


def build_groupoid_weak_hopf(objects: int, field: Field = QQ) -> BialgebraLike:
    """Algebra of the discrete groupoid on ``objects`` objects: k e_1 (+) ... (+) k e_n.

    Delta(e_i) = e_i (x) e_i, so Delta(1) = sum e_i (x) e_i != 1 (x) 1.
    """
    if objects < 2:
        raise ValueError("a nontrivial weak structure needs at least 2 objects")
    n = objects
    return _bialgebra(
        field, n, [f"e{i + 1}" for i in range(n)],
        product=lambda a, b: {a: 1} if a == b else {},
        unit={i: 1 for i in range(n)},
        coproduct=lambda a: {(a, a): 1},
        counit={i: 1 for i in range(n)},
        antipode=lambda a: {a: 1},
        kind="weak",
        name=f"groupoid-{n}" + ("" if field == QQ else f"/{field}"),
    )


def build_pair_groupoid_weak_hopf(objects: int, field: Field = QQ) -> BialgebraLike:
    """Algebra of the pair groupoid: arrows e_ij, e_ij e_jk = e_ik, Delta(e_ij) = e_ij (x) e_ij.

    A weak Hopf algebra (it is the matrix algebra M_n as an algebra) that is not
    quantum commutative: its source algebra span{e_ii} is not central.
    """
    n = objects
    arrows = [(i, j) for i in range(n) for j in range(n)]
    pos = {a: k for k, a in enumerate(arrows)}

    def product(a, b):
        (i, j), (k, l) = arrows[a], arrows[b]
        return {pos[(i, l)]: 1} if j == k else {}

    return _bialgebra(
        field, n * n, [f"e{i + 1}{j + 1}" for i, j in arrows],
        product=product,
        unit={pos[(i, i)]: 1 for i in range(n)},
        coproduct=lambda a: {(a, a): 1},
        counit={k: 1 for k in range(n * n)},
        antipode=lambda a: {pos[(arrows[a][1], arrows[a][0])]: 1},
        kind="weak",
        name=f"pair-groupoid-{n}" + ("" if field == QQ else f"/{field}"),
    )


def one_dim_coalgebra(field: Field = QQ) -> Coalgebra:
    return Coalgebra(1, Matrix(field, [[1]]), Matrix(field, [[1]]), ("1",))


def primitive_coalgebra(field: Field = QQ) -> Coalgebra:
    """span{1, x} with 1 group-like and x primitive (dual of k[x]/x^2)."""
    delta = Matrix(field, [[1, 0], [0, 1], [0, 1], [0, 0]])
    return Coalgebra(2, delta, Matrix.row(field, [1, 0]), ("1", "x"))


def small_coalgebras(field: Field) -> dict[str, Coalgebra]:
    """All dim <= 2 coalgebras used by the exhaustive oracles."""
    return {
        "k": one_dim_coalgebra(field),
        "kC2": build_group_algebra(2, field).coa,
        "kC2-dual": build_dual_group_algebra(2, field).coa,
        "primitive": primitive_coalgebra(field),
    }


@dataclass(frozen=True)
class ZooEntry:
    name: str
    structure: Union[BialgebraLike, Coalgebra, object]
    provenance: str


def zoo_entries(field: Field = QQ) -> dict[str, ZooEntry]:
    """Zoo registry keyed by name; the Hopf modules are built in ``actions``."""
    from .actions import canonical_modules

    out: dict[str, ZooEntry] = {}

    def add(name, s, prov):
        out[name] = ZooEntry(name, s, prov)

    add("kC2", build_group_algebra(2, field), "augmented bialgebra; cointegral; dimodule idempotent (1+g)/2")
    add("kC3", build_group_algebra(3, field), "group algebra; module-coalgebra map by a group-like")
    add("kC2-dual", build_dual_group_algebra(2, field), "orthogonal idempotents p_g")
    add("kC3-dual", build_dual_group_algebra(3, field), "orthogonal idempotents p_g")
    if field.characteristic != 2:
        add("sweedler-h4", build_sweedler_h4(field), "non-cosemisimple; integral with eps = 0")
    add("groupoid-2", build_groupoid_weak_hopf(2, field), "weak Hopf, quantum commutative")
    add("groupoid-3", build_groupoid_weak_hopf(3, field), "weak Hopf, quantum commutative")
    add("pair-groupoid-2", build_pair_groupoid_weak_hopf(2, field), "weak Hopf, not quantum commutative")
    add("primitive", primitive_coalgebra(field), "coalgebra with a primitive element")
    for base in ("kC2", "sweedler-h4", "groupoid-2"):
        if base not in out:
            continue
        for mname, hm in canonical_modules(out[base].structure).items():
            add(f"{base}:{mname}", hm, "canonical Hopf module")
    return out


def check_entry(entry: ZooEntry):
    """Full axiom suite for one entry (W-identities included when an antipode exists)."""
    from .actions import HopfModule, check_hopf_module

    s = entry.structure
    if isinstance(s, BialgebraLike):
        return weak_identity_suite(s) if s.antipode is not None else check_bialgebra(s)
    if isinstance(s, Coalgebra):
        return check_coalgebra(s)
    if isinstance(s, HopfModule):
        return check_hopf_module(s)
    raise TypeError(f"unknown zoo structure {type(s).__name__}")


def load_zoo(field: Field = QQ) -> dict[str, ZooEntry]:
    entries = zoo_entries(field)
    for e in entries.values():
        rep = check_entry(e)
        if not rep.ok:
            raise HypothesisError("zoo entry fails its axioms", f"{e.name}: {rep.failures()[0]}")
    return entries
