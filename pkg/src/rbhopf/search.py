"""Brute-force oracles over small prime fields.

The identities are re-implemented here directly on integer numpy arrays with
``einsum`` and reduction mod p. Nothing from the Matrix kernel is used for the
predicates, so agreement between a checker and an enumeration is a real cross-check.

Candidates are numbered in lexicographic order of their row-major entry tuple
(entry (0, 0) most significant). Exhaustive runs walk that numbering in chunks
and keep the satisfying indices, so output order never depends on chunking.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable

import numpy as np

from .actions import Comodule
from .errors import ConsistencyError, HypothesisError, SearchSpaceTooLarge
from .kernel import Field, Matrix, PrimeField, to_scalar
from .rotabaxter import PairedOperator, check_rb_paired_comodule, random_operator
from .structures import Coalgebra, Functional

MAX_P = 5
MAX_EXHAUSTIVE_DIM = 3
MAX_RANDOM_DIM = 6
MAX_OPERATOR_CANDIDATES = 2 ** 24
MAX_FUNCTIONAL_CANDIDATES = 2 ** 20
CHUNK = 1 << 15
IDENTITIES = ("rb-operator", "conv-idempotent", "quasi-idempotent-colinear", "paired-T")


@dataclass(frozen=True)
class SearchSpec:
    field: Field
    identity: str = "rb-operator"
    weight: object = 0
    mode: str = "exhaustive"
    seed: int = 0
    trials: int = 1000
    target_dim: int | None = None

    def __post_init__(self):
        if not isinstance(self.field, PrimeField):
            raise HypothesisError("prime field required", f"search runs over GF(p), got {self.field}")
        if self.identity not in IDENTITIES:
            raise ValueError(f"unknown identity {self.identity!r}; expected one of {IDENTITIES}")
        if self.mode not in ("exhaustive", "randomized"):
            raise ValueError(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "weight", to_scalar(self.field, self.weight))

    @property
    def p(self) -> int:
        return self.field.p

    def require_bounds(self, dim: int, entries: int, limit: int) -> None:
        """``entries`` free coordinates on a space whose natural dimension is ``dim``."""
        if self.mode == "exhaustive":
            if self.p > MAX_P:
                raise SearchSpaceTooLarge(f"exhaustive search needs p <= {MAX_P}, got p = {self.p}")
            if dim > MAX_EXHAUSTIVE_DIM:
                raise SearchSpaceTooLarge(f"exhaustive search needs dim <= {MAX_EXHAUSTIVE_DIM}, got {dim}")
            if self.p ** entries > limit:
                raise SearchSpaceTooLarge(f"{self.p}^{entries} candidates exceed the limit {limit}")
        elif dim > MAX_RANDOM_DIM:
            raise SearchSpaceTooLarge(f"randomized search needs dim <= {MAX_RANDOM_DIM}, got {dim}")


@dataclass
class SearchResult:
    spec: SearchSpec
    subject: str
    shape: tuple[int, int]
    members: list[Matrix] = dc_field(default_factory=list)
    examined: int = 0

    @property
    def count(self) -> int:
        return len(self.members)

    def __contains__(self, m: Matrix) -> bool:
        return m in self.members

    def to_dict(self, include_members: bool = True) -> dict:
        f = self.spec.field
        out = {
            "subject": self.subject,
            "identity": self.spec.identity,
            "field": f.name,
            "weight": f.format(self.spec.weight),
            "mode": self.spec.mode,
            "shape": list(self.shape),
            "examined": self.examined,
            "count": self.count,
            "digest": self.digest(),
        }
        if self.spec.mode == "randomized":
            out["seed"] = self.spec.seed
            out["trials"] = self.spec.trials
        if include_members:
            out["members"] = [[[f.format(x) for x in row] for row in m.to_lists()] for m in self.members]
        return out

    def digest(self) -> str:
        """sha256 over the ordered member list; equal digests mean bit-identical output."""
        f = self.spec.field
        payload = [[[f.format(x) for x in row] for row in m.to_lists()] for m in self.members]
        return hashlib.sha256(json.dumps(payload, separators=(",", ":")).encode()).hexdigest()


# -- numpy plumbing ---------------------------------------------------------


def _arr(m: Matrix) -> np.ndarray:
    return np.array(m.to_lists(), dtype=np.int64).reshape(m.rows, m.cols)


def _decode(indices: np.ndarray, p: int, rows: int, cols: int) -> np.ndarray:
    """Candidate numbers -> (B, rows, cols) arrays, entry (0, 0) most significant."""
    n = rows * cols
    powers = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    digits = (indices[:, None] // powers[None, :]) % p
    return digits.reshape(-1, rows, cols)


def _to_matrix(fld: Field, a: np.ndarray) -> Matrix:
    return Matrix(fld, a.tolist())


def _run(spec: SearchSpec, rows: int, cols: int, entries_dim: int, limit: int,
         predicate: Callable[[np.ndarray], np.ndarray], subject: str) -> SearchResult:
    spec.require_bounds(entries_dim, rows * cols, limit)
    p = spec.p
    res = SearchResult(spec, subject, (rows, cols))
    if spec.mode == "exhaustive":
        total = p ** (rows * cols)
        found: list[np.ndarray] = []
        for start in range(0, total, CHUNK):
            idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
            ok = predicate(_decode(idx, p, rows, cols))
            found.append(idx[ok])
        hits = np.concatenate(found) if found else np.zeros(0, dtype=np.int64)
        res.examined = total
    else:
        rng = np.random.Generator(np.random.PCG64(spec.seed))
        cand = rng.integers(0, p, size=(spec.trials, rows, cols), dtype=np.int64)
        ok = predicate(cand)
        # sort the distinct hits into lexicographic order
        flat = cand[ok].reshape(-1, rows * cols)
        hits_t = sorted({tuple(r) for r in flat.tolist()})
        res.examined = spec.trials
        res.members = [_to_matrix(spec.field, np.array(t).reshape(rows, cols)) for t in hits_t]
        return res
    res.members = [_to_matrix(spec.field, a) for a in _decode(hits, p, rows, cols)]
    return res


def _all_zero(x: np.ndarray, p: int) -> np.ndarray:
    return ~np.any((x % p).reshape(x.shape[0], -1), axis=1)


# -- predicates -------------------------------------------------------------


def rb_operator_predicate(c: Coalgebra, p: int, weight: int):
    """(P (x) P) Delta = (P (x) id) Delta P + (id (x) P) Delta P + weight Delta P."""
    d = c.dim
    D = _arr(c.delta).reshape(d, d, d)  # D[a, b, c]: coefficient of e_a (x) e_b in Delta(e_c)

    def pred(P: np.ndarray) -> np.ndarray:
        lhs = np.einsum("nia,njb,abc->nijc", P, P, D) % p
        DP = np.einsum("abk,nkc->nabc", D, P) % p
        rhs = (np.einsum("nia,najc->nijc", P, DP)
               + np.einsum("njb,nibc->nijc", P, DP)
               + weight * DP)
        return _all_zero(lhs - rhs, p)

    return pred


def _coaction_tensor(m: Comodule) -> np.ndarray:
    """R[c, j, k]: coefficient of e_c (x) f_j in rho(f_k), whatever the side."""
    cd, n = m.over.dim, m.dim
    r = _arr(m.rho)
    if m.side == "left":
        return r.reshape(cd, n, n)
    return r.reshape(n, cd, n).transpose(1, 0, 2)


def colinear_quasi_idempotent_predicate(m: Comodule, p: int, weight: int):
    R = _coaction_tensor(m)

    def pred(T: np.ndarray) -> np.ndarray:
        coact = np.einsum("njl,clk->ncjk", T, R) - np.einsum("cjl,nlk->ncjk", R, T)
        quasi = np.einsum("nij,njk->nik", T, T) + weight * T
        return _all_zero(coact, p) & _all_zero(quasi, p)

    return pred


def paired_T_predicate(m: Comodule, P: np.ndarray, p: int, weight: int):
    """(P (x) T) rho = (P (x) id) rho T + (id (x) T) rho T + weight rho T, for fixed P."""
    R = _coaction_tensor(m)

    def pred(T: np.ndarray) -> np.ndarray:
        lhs = np.einsum("ca,njl,alk->ncjk", P, T, R) % p
        RT = np.einsum("clq,nqk->nclk", R, T) % p
        rhs = (np.einsum("ca,najk->ncjk", P, RT)
               + np.einsum("njl,nclk->ncjk", T, RT)
               + weight * RT)
        return _all_zero(lhs - rhs, p)

    return pred


def convolution_idempotent_predicate(c: Coalgebra, p: int):
    d = c.dim
    D = _arr(c.delta).reshape(d, d, d)

    def pred(F: np.ndarray) -> np.ndarray:
        f = F[:, 0, :]
        conv = np.einsum("na,nb,abc->nc", f, f, D)
        return _all_zero(conv - f, p)

    return pred


# -- public enumerations ----------------------------------------------------


def enumerate_rb_operators(c: Coalgebra, spec: SearchSpec, subject: str = "coalgebra") -> SearchResult:
    _same_field(c.delta.field, spec)
    pred = rb_operator_predicate(c, spec.p, spec.weight)
    return _run(spec, c.dim, c.dim, c.dim, MAX_OPERATOR_CANDIDATES, pred, subject)


def enumerate_convolution_idempotents(c: Coalgebra, spec: SearchSpec | None = None,
                                      values: Iterable | None = None,
                                      subject: str = "coalgebra") -> list[Functional] | SearchResult:
    """Over GF(p): a SearchResult of 1 x dim rows. Over Q: pass ``values`` to restrict each
    coordinate to a finite set; the result is then a plain list of functionals."""
    fld = c.delta.field
    if not isinstance(fld, PrimeField):
        if values is None:
            raise HypothesisError("finite value set required", "over Q pass values=...")
        return _rational_conv_idempotents(c, values)
    spec = spec or SearchSpec(fld, "conv-idempotent")
    _same_field(fld, spec)
    if spec.p ** c.dim > MAX_FUNCTIONAL_CANDIDATES:
        raise SearchSpaceTooLarge(f"{spec.p}^{c.dim} functionals exceed {MAX_FUNCTIONAL_CANDIDATES}")
    pred = convolution_idempotent_predicate(c, spec.p)
    return _run(spec, 1, c.dim, 1, MAX_FUNCTIONAL_CANDIDATES, pred, subject)


def _rational_conv_idempotents(c: Coalgebra, values: Iterable) -> list[Functional]:
    import itertools
    from fractions import Fraction

    fld = c.delta.field
    vals = sorted({Fraction(fld.coerce(v)) for v in values})
    d = c.dim
    delta = c.delta.to_lists()
    out = []
    for f in itertools.product(vals, repeat=d):
        conv = [sum(f[a] * f[b] * delta[a * d + b][k] for a in range(d) for b in range(d)) for k in range(d)]
        if conv == list(f):
            out.append(Functional(Matrix.row(fld, f)))
    return out


def enumerate_quasi_idempotent_colinear(m: Comodule, spec: SearchSpec, verify_trials: int = 10,
                                        subject: str = "comodule") -> SearchResult:
    """All colinear T with T^2 = -weight T; each is re-run through the paired-comodule checker
    against ``verify_trials`` seeded random P."""
    _same_field(m.field, spec)
    pred = colinear_quasi_idempotent_predicate(m, spec.p, spec.weight)
    res = _run(spec, m.dim, m.dim, m.dim, MAX_OPERATOR_CANDIDATES, pred, subject)
    for t in res.members:
        for i in range(verify_trials):
            op = PairedOperator(random_operator(spec.field, m.over.dim, spec.seed, i), t, spec.weight)
            if not check_rb_paired_comodule(m, op).ok:
                raise ConsistencyError(f"enumerated T fails the paired identity for random P #{i}:\n{t}")
    return res


def enumerate_paired_operators(m: Comodule, p_matrix: Matrix, spec: SearchSpec,
                               subject: str = "comodule") -> SearchResult:
    """All T making (m, p_matrix, T) a paired comodule of the requested weight."""
    _same_field(m.field, spec)
    pred = paired_T_predicate(m, _arr(p_matrix), spec.p, spec.weight)
    return _run(spec, m.dim, m.dim, m.dim, MAX_OPERATOR_CANDIDATES, pred, subject)


def _same_field(fld: Field, spec: SearchSpec) -> None:
    if fld != spec.field:
        raise HypothesisError("field mismatch", f"structure over {fld}, search over {spec.field}")


# -- golden fixtures --------------------------------------------------------


def golden_searches() -> dict[str, Callable[[], SearchResult]]:
    """Named, deterministic searches whose counts and digests are committed as fixtures."""
    from .actions import regular_comodule
    from .kernel import GF
    from .zoo import build_group_algebra, small_coalgebras

    def rb(cname, p, w):
        return lambda: enumerate_rb_operators(small_coalgebras(GF(p))[cname], SearchSpec(GF(p), "rb-operator", w),
                                              subject=cname)

    def conv(cname, p, builder=None):
        def go():
            c = builder(GF(p)) if builder else small_coalgebras(GF(p))[cname]
            return enumerate_convolution_idempotents(c, SearchSpec(GF(p), "conv-idempotent"), subject=cname)
        return go

    def quasi(cname, p, w):
        def go():
            m = regular_comodule(small_coalgebras(GF(p))[cname])
            return enumerate_quasi_idempotent_colinear(m, SearchSpec(GF(p), "quasi-idempotent-colinear", w),
                                                       subject=f"{cname}:self")
        return go

    out: dict[str, Callable[[], SearchResult]] = {}
    for p in (2, 3):
        for cname in ("k", "kC2", "kC2-dual", "primitive"):
            for w in range(p):
                out[f"rb-operator/{cname}/GF({p})/w={w}"] = rb(cname, p, w)
            out[f"conv-idempotent/{cname}/GF({p})"] = conv(cname, p)
            for w in range(p):
                out[f"quasi-idempotent-colinear/{cname}:self/GF({p})/w={w}"] = quasi(cname, p, w)
    out["rb-operator/kC3/GF(2)/w=1"] = lambda: enumerate_rb_operators(
        build_group_algebra(3, GF(2)).coa, SearchSpec(GF(2), "rb-operator", 1), subject="kC3")
    out["rb-operator/kC3/GF(3)/w=2"] = lambda: enumerate_rb_operators(
        build_group_algebra(3, GF(3)).coa, SearchSpec(GF(3), "rb-operator", 2), subject="kC3")
    out["conv-idempotent/kC3/GF(2)"] = conv("kC3", 2, lambda f: build_group_algebra(3, f).coa)
    out["rb-operator/k/GF(5)/w=4"] = rb("k", 5, 4)
    out["rb-operator/kC2/GF(5)/w=4"] = rb("kC2", 5, 4)
    out["rb-operator/kC2/GF(3)/randomized"] = lambda: enumerate_rb_operators(
        small_coalgebras(GF(3))["kC2"], SearchSpec(GF(3), "rb-operator", 2, mode="randomized", seed=7, trials=200),
        subject="kC2")
    return out


def golden_table() -> dict[str, dict]:
    return {name: {"count": r.count, "examined": r.examined, "digest": r.digest()}
            for name, r in ((n, f()) for n, f in sorted(golden_searches().items()))}
