"""Rota-Baxter identities on coalgebras, paired (co)modules and Hopf modules, and
the constructions that produce verified instances of them.

Every construction checks its hypotheses first (raising ``HypothesisError`` with
a named reason), builds the operators, and re-runs the defining checker on the
output.  A checker failure after the hypotheses passed is a ``ConsistencyError``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .actions import (Comodule, HopfModule, ModuleCarrier, ModuleCoalgebraMap, check_comodule,
                      check_module_coalgebra_map, check_module_map, is_colinear, is_hopf_module_map,
                      is_subcomodule, regular_comodule, regular_left_hopf_module, relative_tensor_module,
                      tensor_coalgebra_hopf_module)
from .errors import ConsistencyError, HypothesisError, ShapeError
from .kernel import (Field, Matrix, column_space, hstack, inverse, kron, left_inverse, permute_legs,
                     random_matrix, span_contains, to_scalar)
from .report import CheckReport, compare, verdict
from .structures import (AlgebraStruct, BialgebraLike, Coalgebra, Functional, check_bialgebra, check_coalgebra,
                         check_quantum_commutative, is_bialgebra_endomorphism, is_convolution_idempotent,
                         is_group_like, is_left_cointegral, is_left_integral, pi_L_matrix, pi_R_matrix,
                         source_algebra, target_algebra, tensor_labels)


# -- operator types ---------------------------------------------------------


@dataclass(frozen=True)
class BarPair:
    p_bar: Matrix
    t_bar: Matrix


@dataclass(frozen=True)
class PairedOperator:
    """P on the (co)algebra, T on the carrier, and the weight."""
    p: Matrix
    t: Matrix
    weight: Any

    def __post_init__(self):
        if not (self.p.is_square() and self.t.is_square()):
            raise ShapeError("P and T must be square")
        object.__setattr__(self, "weight", to_scalar(self.p.field, self.weight))

    @property
    def field(self) -> Field:
        return self.p.field

    def bar(self) -> BarPair:
        w = self.weight
        return BarPair(-self.p - Matrix.identity(self.field, self.p.rows).scale(w),
                       -self.t - Matrix.identity(self.field, self.t.rows).scale(w))

    def barred(self) -> "PairedOperator":
        b = self.bar()
        return PairedOperator(b.p_bar, b.t_bar, self.weight)

    def scaled(self, mu) -> "PairedOperator":
        mu = to_scalar(self.field, mu)
        return PairedOperator(self.p.scale(mu), self.t.scale(mu), self.field.reduce(self.weight * mu))


@dataclass(frozen=True)
class RBCoalgebra:
    coa: Coalgebra
    p: Matrix
    weight: Any

    def __post_init__(self):
        object.__setattr__(self, "weight", to_scalar(self.coa.field, self.weight))
        rep = check_rb_coalgebra(self.coa, self.p, self.weight)
        if not rep.ok:
            raise HypothesisError("not a Rota-Baxter coalgebra", rep.format())


# -- checkers ---------------------------------------------------------------


def _fmt_weight(f: Field, w) -> str:
    return f.format(w)


def check_rb_coalgebra(c: Coalgebra, p: Matrix, weight) -> CheckReport:
    f = c.field
    w = to_scalar(f, weight)
    if p.shape != (c.dim, c.dim):
        raise ShapeError(f"P must be {c.dim}x{c.dim}, got {p.shape}")
    I = c.id
    dp = c.delta @ p
    rep = CheckReport(metadata={"structure": "rb-coalgebra", "weight": _fmt_weight(f, w)})
    rep.add(compare("rb-coalgebra", kron(p, p) @ c.delta,
                    kron(p, I) @ dp + kron(I, p) @ dp + dp.scale(w), c.basis))
    return rep


def check_rb_algebra(a: AlgebraStruct, p: Matrix, weight, basis=None) -> CheckReport:
    """P(a)P(b) = P(P(a)b + aP(b) + lambda ab)."""
    f = a.field
    w = to_scalar(f, weight)
    I = Matrix.identity(f, a.dim)
    basis = basis or tuple(f"e{i}" for i in range(a.dim))
    rep = CheckReport(metadata={"structure": "rb-algebra", "weight": _fmt_weight(f, w)})
    rep.add(compare("rb-algebra", a.mult @ kron(p, p),
                    p @ a.mult @ (kron(p, I) + kron(I, p) + Matrix.identity(f, a.dim ** 2).scale(w)),
                    tensor_labels(basis, basis)))
    return rep


def check_rb_paired_comodule(m: Comodule, op: PairedOperator) -> CheckReport:
    """(P (x) T) rho = (P (x) id) rho T + (id (x) T) rho T + lambda rho T, legs mirrored on the right."""
    c = m.over
    if op.p.shape != (c.dim, c.dim) or op.t.shape != (m.dim, m.dim):
        raise ShapeError(f"operators must be {c.dim}x{c.dim} and {m.dim}x{m.dim}")
    P, T, w = op.p, op.t, op.weight
    rt = m.rho @ T
    rep = CheckReport(metadata={"structure": "rb-paired-comodule", "side": m.side,
                                "weight": _fmt_weight(m.field, w)})
    rep.add(compare("rb-paired-comodule", m.legs(P, T) @ m.rho,
                    m.legs(P, m.id) @ rt + m.legs(c.id, T) @ rt + rt.scale(w), m.basis))
    return rep


def check_rb_paired_module(mod: ModuleCarrier, op: PairedOperator) -> CheckReport:
    """P(a).T(m) = T(P(a).m) + T(a.T(m)) + lambda T(a.m), legs mirrored for right modules."""
    a = mod.alg
    if op.p.shape != (a.dim, a.dim) or op.t.shape != (mod.dim, mod.dim):
        raise ShapeError(f"operators must be {a.dim}x{a.dim} and {mod.dim}x{mod.dim}")
    P, T, w = op.p, op.t, op.weight
    f = mod.field
    Ia, Im = Matrix.identity(f, a.dim), mod.id
    act = mod.action
    hb = mod.over.basis if isinstance(mod.over, BialgebraLike) else tuple(f"e{i}" for i in range(a.dim))
    labels = tensor_labels(hb, mod.basis) if mod.side == "left" else tensor_labels(mod.basis, hb)
    rhs = T @ act @ (mod.legs(P, Im) + mod.legs(Ia, T) + Matrix.identity(f, a.dim * mod.dim).scale(w))
    rep = CheckReport(metadata={"structure": "rb-paired-module", "side": mod.side, "weight": _fmt_weight(f, w)})
    rep.add(compare("rb-paired-module", act @ mod.legs(P, T), rhs, labels))
    return rep


def check_rb_paired_hopf_module(hm: HopfModule, op: PairedOperator) -> CheckReport:
    if hm.flavor == "relative":
        raise HypothesisError("flavor/structure mismatch", "P must act on the acting bialgebra and its comodule")
    rep = CheckReport(metadata={"structure": "rb-paired-hopf-module", "flavor": hm.flavor,
                                "weight": _fmt_weight(hm.field, op.weight)})
    rep.extend(check_rb_paired_module(hm.mod, op))
    rep.extend(check_rb_paired_comodule(hm.com, op))
    return rep


def is_quasi_idempotent(t: Matrix, weight) -> bool:
    w = to_scalar(t.field, weight)
    return t @ t == t.scale(-w)


# -- genericity -------------------------------------------------------------


def random_operator(fld: Field, n: int, seed: int, index: int) -> Matrix:
    """The ``index``-th pseudo-random operator for ``seed``; independent of evaluation order."""
    return random_matrix(fld, n, n, random.Random(f"{seed}:{index}"))


@dataclass(frozen=True)
class GenericVerdict:
    quasi_idempotent: bool
    trials: tuple[bool, ...]
    seed: int
    weight: str

    @property
    def all_trials_pass(self) -> bool:
        return all(self.trials)

    @property
    def agree(self) -> bool:
        # with T colinear the identity does not depend on P at all: every trial
        # must come out exactly as the quasi-idempotency test says
        return all(r == self.quasi_idempotent for r in self.trials)

    @property
    def generic(self) -> bool:
        return self.quasi_idempotent and self.agree

    def require_agreement(self) -> "GenericVerdict":
        if not self.agree:
            raise ConsistencyError(f"quasi-idempotency={self.quasi_idempotent} but trial results {self.trials}")
        return self

    def report(self) -> CheckReport:
        rep = CheckReport(metadata={"seed": self.seed, "trials": len(self.trials), "weight": self.weight})
        rep.add(verdict("quasi-idempotent", self.quasi_idempotent))
        rep.add(verdict("random-P", self.all_trials_pass, f"{sum(self.trials)}/{len(self.trials)} pass"))
        rep.add(verdict("agreement", self.agree))
        return rep


def check_generic(m: Comodule, t: Matrix, weight, trials: int = 50, seed: int = 0) -> GenericVerdict:
    """Exact quasi-idempotency against seeded random-P trials of the paired identity."""
    if not is_colinear(m, t):
        raise HypothesisError("T not colinear")
    f = m.field
    w = to_scalar(f, weight)
    results = tuple(
        check_rb_paired_comodule(m, PairedOperator(random_operator(f, m.over.dim, seed, i), t, w)).ok
        for i in range(trials))
    return GenericVerdict(is_quasi_idempotent(t, w), results, seed, f.format(w))


def check_generic_hopf_module(hm: HopfModule, t: Matrix, weight, trials: int = 50, seed: int = 0) -> GenericVerdict:
    """Module-and-comodule version: T a Hopf module map, P random on H."""
    if not is_hopf_module_map(hm, t):
        raise HypothesisError("T not a Hopf module map")
    f = hm.field
    w = to_scalar(f, weight)
    d = hm.hopf.dim
    results = tuple(
        check_rb_paired_hopf_module(hm, PairedOperator(random_operator(f, d, seed, i), t, w)).ok
        for i in range(trials))
    return GenericVerdict(is_quasi_idempotent(t, w), results, seed, f.format(w))


# -- projections ------------------------------------------------------------


def projection_onto(m1: Matrix, m2: Matrix) -> Matrix:
    """The projection onto span(m1) along span(m2) (columns together a basis)."""
    f = m1.field if m1.cols else m2.field
    n = m1.rows
    r = m1.cols
    b = hstack(m1, m2)
    d = Matrix.from_function(f, n, n, lambda i, j: 1 if i == j and i < r else 0)
    return b @ d @ inverse(b)


@dataclass(frozen=True)
class ProjectionSplit:
    m1: Matrix
    m2: Matrix
    report: CheckReport

    def reconstruct(self) -> Matrix:
        return projection_onto(self.m1, self.m2)


def decompose_projection(m: Comodule, t: Matrix) -> ProjectionSplit:
    """M = T(M) (+) (id - T)(M) as comodules for a colinear idempotent T."""
    if not is_colinear(m, t):
        raise HypothesisError("T not colinear")
    if t @ t != t:
        raise HypothesisError("T not idempotent")
    m1 = column_space(t)
    m2 = column_space(m.id - t)
    rep = CheckReport(metadata={"structure": "projection-split", "dims": [m1.cols, m2.cols]})
    rep.add(verdict("M1-subcomodule", is_subcomodule(m, m1)))
    rep.add(verdict("M2-subcomodule", is_subcomodule(m, m2)))
    both = hstack(m1, m2)
    rep.add(verdict("direct-sum", m1.cols + m2.cols == m.dim and both.rank() == m.dim))
    split = ProjectionSplit(m1, m2, rep)
    rep.add(compare("reconstruct", split.reconstruct(), t, m.basis))
    return split


# -- derived identities -----------------------------------------------------


def verify_derived_identities(m: Comodule, op: PairedOperator) -> CheckReport:
    """The f-factorisation, the two mixed bar identities, and the (1+lambda) annihilators."""
    if not check_rb_paired_comodule(m, op).ok:
        raise HypothesisError("not a Rota-Baxter paired comodule")
    c = m.over
    P, T, w = op.p, op.t, op.weight
    fld = m.field
    Ic, Im, rho = c.id, m.id, m.rho
    b = op.bar()
    Pb, Tb = b.p_bar, b.t_bar
    f = (m.legs(P, Im) + m.legs(Ic, T)) @ rho + rho.scale(w)
    B = m.basis
    rep = CheckReport(metadata={"structure": "derived-identities", "weight": fld.format(w),
                                "factorisation-is-equivalence": w != fld.zero})
    rep.add(compare("f-intertwines-T", m.legs(P, T) @ rho, f @ T, B))
    rep.add(compare("f-intertwines-Tbar", m.legs(Pb, Tb) @ rho, -(f @ Tb), B))
    rep.add(compare("bar-on-carrier", m.legs(P, Tb) @ rho,
                    m.legs(Ic, Tb) @ rho @ T + m.legs(P, Im) @ rho @ Tb, B))
    rep.add(compare("bar-on-coalgebra", m.legs(Pb, T) @ rho,
                    m.legs(Pb, Im) @ rho @ T + m.legs(Ic, T) @ rho @ Tb, B))
    s = fld.reduce(fld.one + w)
    zero = Matrix.zeros(fld, rho.rows, m.dim)
    if T @ T == T:
        rep.add(compare("annihilate-T-leg", (m.legs(Ic, T) @ rho @ T).scale(s), zero, B))
        if P @ P == P:
            rep.add(compare("annihilate-P-leg", (m.legs(P, Im) @ rho @ T).scale(s), zero, B))
            rep.add(compare("annihilate-shifted",
                            (m.legs(P, Im) @ rho @ T - (rho @ T).scale(w)).scale(s), zero, B))
    return rep


# -- constructions ----------------------------------------------------------


@dataclass
class Construction:
    kind: str
    report: CheckReport
    comodule: Comodule | None = None
    op: PairedOperator | None = None
    rb: RBCoalgebra | None = None
    hopf_module: HopfModule | None = None
    extras: dict = field(default_factory=dict)


def _finish(c: Construction) -> Construction:
    c.report.metadata.setdefault("construction", c.kind)
    if not c.report.ok:
        raise ConsistencyError(f"{c.kind}: hypotheses held but the output fails\n{c.report.format()}")
    return c


def _require_paired(m: Comodule, op: PairedOperator):
    rep = check_rb_paired_comodule(m, op)
    if not rep.ok:
        raise HypothesisError("not a Rota-Baxter paired comodule", rep.format())


def _require_left(m: Comodule):
    if m.side != "left":
        raise HypothesisError("left comodule required")


def _self_comodule_report(rb: RBCoalgebra, m: Comodule, op: PairedOperator) -> CheckReport:
    rep = CheckReport()
    rep.extend(check_rb_coalgebra(rb.coa, rb.p, rb.weight))
    rep.extend(check_rb_paired_comodule(m, op))
    return rep


def build_rb_self_comodule(coa: Coalgebra, p: Matrix, weight) -> Construction:
    """(C, P, P) from a Rota-Baxter coalgebra (C, P) of any weight."""
    rb = RBCoalgebra(coa, p, weight)
    m = regular_comodule(coa)
    op = PairedOperator(p, p, rb.weight)
    return _finish(Construction("rb_self_comodule", _self_comodule_report(rb, m, op), m, op, rb))


def build_from_augmentation(coa: Coalgebra, grouplike: Matrix) -> Construction:
    """P(c) = eps(c) g for a group-like g; weight -1."""
    if not is_group_like(coa, grouplike):
        raise HypothesisError("not group-like")
    p = grouplike @ coa.counit
    rb = RBCoalgebra(coa, p, -1)
    m = regular_comodule(coa)
    op = PairedOperator(p, p, -1)
    return _finish(Construction("from_augmentation", _self_comodule_report(rb, m, op), m, op, rb))


def build_from_functional(coa: Coalgebra, chi: Functional, comodule: Comodule | None = None,
                          hopf: BialgebraLike | None = None) -> Construction:
    """P(c) = chi(c_1) c_2 and T(m) = chi(m_(-1)) m_(0) for convolution-idempotent chi.

    With ``hopf`` given, chi must be a left cointegral with chi(1) = 1.
    """
    if hopf is not None:
        if hopf.coa != coa:
            raise HypothesisError("field mismatch" if hopf.field != coa.field else "coalgebra mismatch")
        if not is_left_cointegral(hopf, chi):
            raise HypothesisError("not a left cointegral")
        if chi(hopf.unit) != hopf.field.one:
            raise HypothesisError("not cosemisimple", "cointegral is not normalized")
    if not is_convolution_idempotent(chi, coa):
        raise HypothesisError("not convolution-idempotent")
    m = comodule or regular_comodule(coa)
    _require_left(m)
    if m.over != coa:
        raise HypothesisError("coalgebra mismatch")
    p = kron(chi.coefficients, coa.id) @ coa.delta
    t = kron(chi.coefficients, m.id) @ m.rho
    rb = RBCoalgebra(coa, p, -1)
    op = PairedOperator(p, t, -1)
    rep = CheckReport()
    rep.extend(check_rb_coalgebra(coa, p, -1))
    rep.extend(check_rb_paired_comodule(m, op))
    return _finish(Construction("from_functional", rep, m, op, rb, extras={"cointegral": hopf is not None}))


def build_scale(comodule: Comodule, op: PairedOperator, mu) -> Construction:
    _require_paired(comodule, op)
    new = op.scaled(mu)
    return _finish(Construction("scale", check_rb_paired_comodule(comodule, new), comodule, new))


def build_tensor_bialgebra(h: BialgebraLike, comodule: Comodule, op: PairedOperator) -> Construction:
    """H (x) M with rho(h (x) m) = h_1 m_(-1) (x) h_2 (x) m_(0) and T'(h (x) m) = P(h) (x) T(m)."""
    _require_left(comodule)
    if comodule.over != h.coa:
        raise HypothesisError("coalgebra mismatch")
    P = op.p
    if P @ P != P:
        raise HypothesisError("P not idempotent")
    if not is_bialgebra_endomorphism(h, P):
        raise HypothesisError("P not a bialgebra endomorphism")
    _require_paired(comodule, op)
    d, n = h.dim, comodule.dim
    rho = kron(h.mult, kron(h.id, comodule.id)) @ permute_legs(kron(h.delta, comodule.rho), (d, d, d, n), (0, 2, 1, 3))
    m2 = Comodule(h.coa, d * n, "left", rho, tuple(tensor_labels(h.basis, comodule.basis)))
    op2 = PairedOperator(P, kron(P, op.t), op.weight)
    rep = CheckReport()
    rep.extend(check_comodule(m2), prefix="comodule:")
    rep.extend(check_rb_paired_comodule(m2, op2))
    return _finish(Construction("tensor_bialgebra", rep, m2, op2))


def build_tensor_space(comodule: Comodule, op: PairedOperator, vdim: int) -> Construction:
    """(M (x) V, P, T (x) id) with coaction rho (x) id."""
    _require_left(comodule)
    _require_paired(comodule, op)
    f = comodule.field
    Iv = Matrix.identity(f, vdim)
    basis = tuple(tensor_labels(comodule.basis, [f"v{i}" for i in range(vdim)]))
    m2 = Comodule(comodule.over, comodule.dim * vdim, "left", kron(comodule.rho, Iv), basis)
    op2 = PairedOperator(op.p, kron(op.t, Iv), op.weight)
    rep = CheckReport()
    rep.extend(check_comodule(m2), prefix="comodule:")
    rep.extend(check_rb_paired_comodule(m2, op2))
    return _finish(Construction("tensor_space", rep, m2, op2))


def build_from_idempotent_epi(comodule: Comodule, t: Matrix) -> Construction:
    """(M, id, T) of weight -1 for an idempotent epimorphism T."""
    if t @ t != t:
        raise HypothesisError("T not idempotent")
    if t.rank() != comodule.dim:
        raise HypothesisError("not an epimorphism")
    op = PairedOperator(comodule.over.id, t, -1)
    return _finish(Construction("from_idempotent_epi", check_rb_paired_comodule(comodule, op), comodule, op))


def build_weak_target(h: BialgebraLike, projection: str = "L", domain: str = "product") -> Construction:
    """(V, Pi, Pi|V) with V = H^L H^R (or all of H) and Pi = Pi^L or Pi^R; weight -1."""
    h.require_antipode()
    if projection not in ("L", "R") or domain not in ("product", "all"):
        raise ValueError("projection must be L/R and domain product/all")
    pi = pi_L_matrix(h) if projection == "L" else pi_R_matrix(h)
    if domain == "all":
        b = h.id
    else:
        hl, hr = target_algebra(h), source_algebra(h)
        prods = [h.mult @ kron(x, y) for x in hl.columns() for y in hr.columns()]
        b = column_space(hstack(*prods))
    rep = CheckReport(metadata={"span-dim": b.cols})
    rep.add(verdict("subcomodule", span_contains(kron(h.id, b), h.delta @ b)))
    rep.add(verdict("subcoalgebra", span_contains(kron(b, b), h.delta @ b)))
    rep.add(verdict("Pi-stable", span_contains(b, pi @ b)))
    if not rep.ok:
        raise ConsistencyError(f"H^L H^R span fails closure on {h.name}\n{rep.format()}")
    L = left_inverse(b)
    labels = h.basis if domain == "all" else tuple(f"b{i}" for i in range(b.cols))
    rho_v = kron(h.id, L) @ h.delta @ b
    comodule = Comodule(h.coa, b.cols, "left", rho_v, labels)
    pv = L @ pi @ b
    sub = Coalgebra(b.cols, kron(L, L) @ h.delta @ b, h.counit @ b, labels)
    rb = RBCoalgebra(sub, pv, -1)
    op = PairedOperator(pi, pv, -1)
    rep.extend(check_comodule(comodule), prefix="comodule:")
    rep.extend(check_rb_paired_comodule(comodule, op))
    rep.extend(check_rb_coalgebra(sub, pv, -1))
    return _finish(Construction("weak_target", rep, comodule, op, rb, extras={"span": b}))


def weak_hopf_module_T(hm: HopfModule) -> Matrix:
    """T(m) = m_[0] . S(m_[1])."""
    return hm.mod.action @ kron(hm.mod.id, hm.hopf.require_antipode()) @ hm.com.rho


def build_weak_hopf_T(hm: HopfModule) -> Construction:
    """(M, Pi^L, T) of weight -1 on a weak right Hopf module over a quantum commutative H."""
    if hm.flavor != "weak-right-hopf":
        raise HypothesisError("flavor/structure mismatch", "needs a weak right Hopf module")
    h = hm.hopf
    h.require_antipode()
    if not check_quantum_commutative(h):
        raise HypothesisError("not quantum-commutative")
    t = weak_hopf_module_T(hm)
    pl = pi_L_matrix(h)
    rep = CheckReport()
    rep.add(verdict("T-idempotent", t @ t == t))
    rep.add(compare("W10", hm.com.rho @ t, kron(hm.mod.action, h.id) @ kron(t, h.delta_one()), hm.basis))
    op = PairedOperator(pl, t, -1)
    rep.extend(check_rb_paired_comodule(hm.com, op))
    rep.extend(check_rb_paired_module(hm.mod, op))
    return _finish(Construction("weak_hopf_T", rep, hm.com, op, hopf_module=hm))


def build_dimodule_T(hm: HopfModule, e: Matrix, integral: bool = False,
                     trials: int = 50, seed: int = 0) -> Construction:
    """T(m) = e . m for an idempotent e on a left-right dimodule: generic of weight -1.

    ``integral=True`` additionally requires e to be a left integral with eps(e) = 1,
    which makes T a module map and the pair generic on the module side too.
    """
    if hm.flavor != "dimodule":
        raise HypothesisError("flavor/structure mismatch", "needs a dimodule")
    h = hm.hopf
    if e.shape != (h.dim, 1):
        raise ShapeError("e must be a column vector in H")
    if h.mult @ kron(e, e) != e:
        raise HypothesisError("e not idempotent")
    if integral and not (is_left_integral(h, e) and (h.counit @ e)[0, 0] == h.field.one):
        raise HypothesisError("e not a normalized left integral")
    t = hm.mod.action @ kron(e, hm.mod.id)
    gen = check_generic(hm.com, t, -1, trials, seed).require_agreement()
    rep = CheckReport(metadata={"seed": seed, "trials": trials})
    rep.add(verdict("colinear", is_colinear(hm.com, t)))
    rep.extend(gen.report(), prefix="comodule:")
    extras = {"generic": gen}
    if integral:
        rep.add(verdict("module-map", check_module_map(t, hm.mod, hm.mod)))
        mod_trials = tuple(
            check_rb_paired_module(hm.mod, PairedOperator(random_operator(h.field, h.dim, seed, i), t, -1)).ok
            for i in range(trials))
        rep.add(verdict("module:random-P", all(mod_trials), f"{sum(mod_trials)}/{trials} pass"))
    op = PairedOperator(Matrix.zeros(h.field, h.dim, h.dim), t, -1)
    return _finish(Construction("dimodule_T", rep, hm.com, op, hopf_module=hm, extras=extras))


def relative_E_maps(hm: HopfModule, phi: Matrix) -> tuple[Matrix, Matrix]:
    """E_C(c) = c_1 . S phi(c_2) and E_M(m) = m_[0] . S phi(m_[1])."""
    mc = hm.module_coalgebra
    sphi = hm.hopf.require_antipode() @ phi
    e_c = mc.action @ kron(mc.coa.id, sphi) @ mc.coa.delta
    e_m = hm.mod.action @ kron(hm.mod.id, sphi) @ hm.com.rho
    return e_c, e_m


def relative_tensor_E_direct(hm: HopfModule, phi: Matrix) -> Matrix:
    """E on H (x) M by the closed formula h (x) m -> h_1 S phi(m_[1] . h_2) (x) m_[0]."""
    h, mc = hm.hopf, hm.module_coalgebra
    d, n, c = h.dim, hm.dim, mc.coa.dim
    sphi = h.require_antipode() @ phi
    # h (x) m -> h_1 (x) h_2 (x) m_[0] (x) m_[1] -> h_1 (x) m_[1] (x) h_2 (x) m_[0]
    spread = permute_legs(kron(h.delta, hm.com.rho), (d, d, n, c), (0, 3, 1, 2))
    acted = kron(kron(h.id, mc.action), hm.mod.id) @ spread
    return kron(h.mult @ kron(h.id, sphi), hm.mod.id) @ acted


def build_relative_E(hm: HopfModule, phi: Matrix, tensor: bool = False) -> Construction:
    """(M, E_C, E_M) of weight -1 as a right C-comodule; ``tensor`` runs it on H (x) M."""
    if hm.flavor != "relative":
        raise HypothesisError("flavor/structure mismatch", "needs a relative Hopf module")
    h = hm.hopf
    if h.kind != "strict" or h.antipode is None:
        raise HypothesisError("not a Hopf algebra")
    mcm = ModuleCoalgebraMap(hm.module_coalgebra, h, phi)
    if not check_module_coalgebra_map(mcm).ok:
        raise HypothesisError("φ not module-coalgebra map")
    rep = CheckReport()
    target = hm
    if tensor:
        target = relative_tensor_module(hm)
    e_c, e_m = relative_E_maps(target, phi)
    if tensor:
        rep.add(compare("E-closed-formula", e_m, relative_tensor_E_direct(hm, phi), target.basis))
    rep.add(verdict("E_C-idempotent", e_c @ e_c == e_c))
    op = PairedOperator(e_c, e_m, -1)
    rep.extend(check_rb_paired_comodule(target.com, op))
    return _finish(Construction("relative_E", rep, target.com, op, hopf_module=target))


def build_bar(comodule: Comodule, op: PairedOperator) -> Construction:
    _require_paired(comodule, op)
    b = op.barred()
    rep = check_rb_paired_comodule(comodule, b)
    bb = b.barred()
    rep.add(verdict("involution", bb.p == op.p and bb.t == op.t))
    return _finish(Construction("bar", rep, comodule, b, extras={"bar": op.bar()}))


def double_structures(comodule: Comodule, op: PairedOperator) -> tuple[Coalgebra, Comodule]:
    """(C, Delta') and (M, rho') built from (P, T, lambda)."""
    c = comodule.over
    P, T, w = op.p, op.t, op.weight
    d2 = (kron(c.id, P) + kron(P, c.id)) @ c.delta + c.delta.scale(w)
    c2 = Coalgebra(c.dim, d2, None, c.basis)
    rho2 = (comodule.legs(P, comodule.id) + comodule.legs(c.id, T)) @ comodule.rho + comodule.rho.scale(w)
    return c2, Comodule(c2, comodule.dim, comodule.side, rho2, comodule.basis)


def build_double(comodule: Comodule, op: PairedOperator, with_bar: bool = False) -> Construction:
    """Delta' = (id (x) P)Delta + (P (x) id)Delta + lambda Delta and the matching rho'."""
    rbrep = check_rb_coalgebra(comodule.over, op.p, op.weight)
    if not rbrep.ok:
        raise HypothesisError("(C,P) not a Rota-Baxter coalgebra", rbrep.format())
    _require_paired(comodule, op)
    c2, m2 = double_structures(comodule, op)
    rep = CheckReport()
    rep.extend(check_coalgebra(c2), prefix="double-coalgebra:")
    rep.extend(check_rb_coalgebra(c2, op.p, op.weight), prefix="double-")
    rep.add(compare("double-intertwines-T", m2.rho @ op.t, comodule.legs(op.p, op.t) @ comodule.rho,
                    comodule.basis))
    rep.extend(check_comodule(m2), prefix="double-comodule:")
    rep.extend(check_rb_paired_comodule(m2, op), prefix="double-")
    if with_bar:
        rep.extend(check_rb_paired_comodule(m2, op.barred()), prefix="double-bar-")
    out_op = op.barred() if with_bar else op
    return _finish(Construction("double", rep, m2, out_op, extras={"coalgebra": c2}))


def build_hopf_tensor_coalgebra(h: BialgebraLike, c: Coalgebra, e: Matrix,
                                trials: int = 50, seed: int = 0) -> Construction:
    """H (x) C with T(h (x) c) = h (x) eps(c) e, generic of weight -1."""
    if e.shape != (c.dim, 1):
        raise ShapeError("e must be a column vector in C")
    if (c.counit @ e)[0, 0] != c.field.one:
        raise HypothesisError("ε(e) ≠ 1")
    hm = tensor_coalgebra_hopf_module(h, c)
    t = kron(h.id, e @ c.counit)
    gen = check_generic_hopf_module(hm, t, -1, trials, seed).require_agreement()
    rep = CheckReport(metadata={"seed": seed, "trials": trials})
    rep.add(verdict("T-idempotent", t @ t == t))
    rep.add(verdict("hopf-module-map", is_hopf_module_map(hm, t)))
    rep.extend(gen.report(), prefix="generic:")
    op = PairedOperator(Matrix.zeros(h.field, h.dim, h.dim), t, -1)
    return _finish(Construction("hopf_tensor_coalgebra", rep, hm.com, op, hopf_module=hm,
                                extras={"generic": gen}))


def build_augmentation_hopf_module(h: BialgebraLike) -> Construction:
    """(H, P, P) with P = u eps on the regular Hopf module, weight -1."""
    if not check_bialgebra(h).ok:
        raise HypothesisError("not a bialgebra")
    if h.kind != "strict":
        raise HypothesisError("not a bialgebra", "augmentation needs Delta(1) = 1 (x) 1")
    hm = regular_left_hopf_module(h)
    p = h.unit @ h.counit
    op = PairedOperator(p, p, -1)
    return _finish(Construction("augmentation_hopf", check_rb_paired_hopf_module(hm, op), hm.com, op,
                                hopf_module=hm))


def build_rb_bialgebra_hopf_module(h: BialgebraLike, p: Matrix, weight) -> Construction:
    """(H, P, P) on the regular Hopf module when (H, P) is RB both as algebra and coalgebra."""
    if not check_rb_algebra(h.alg, p, weight).ok:
        raise HypothesisError("not a Rota-Baxter algebra operator")
    if not check_rb_coalgebra(h.coa, p, weight).ok:
        raise HypothesisError("not a Rota-Baxter coalgebra")
    hm = regular_left_hopf_module(h)
    op = PairedOperator(p, p, weight)
    return _finish(Construction("rb_bialgebra_hopf", check_rb_paired_hopf_module(hm, op), hm.com, op,
                                hopf_module=hm))


CONSTRUCTIONS: dict[str, Callable[..., Construction]] = {
    "rb_self_comodule": build_rb_self_comodule,
    "from_augmentation": build_from_augmentation,
    "from_functional": build_from_functional,
    "scale": build_scale,
    "tensor_bialgebra": build_tensor_bialgebra,
    "tensor_space": build_tensor_space,
    "from_idempotent_epi": build_from_idempotent_epi,
    "weak_target": build_weak_target,
    "weak_hopf_T": build_weak_hopf_T,
    "dimodule_T": build_dimodule_T,
    "relative_E": build_relative_E,
    "bar": build_bar,
    "double": build_double,
    "hopf_tensor_coalgebra": build_hopf_tensor_coalgebra,
    "augmentation_hopf": build_augmentation_hopf_module,
    "rb_bialgebra_hopf": build_rb_bialgebra_hopf_module,
}


def construct(kind: str, **inputs) -> Construction:
    try:
        builder = CONSTRUCTIONS[kind]
    except KeyError:
        raise ValueError(f"unknown construction {kind!r}; known: {', '.join(sorted(CONSTRUCTIONS))}") from None
    return builder(**inputs)
