"""Pre-Lie coalgebras and comodules, and the functor from Rota-Baxter data of weight -1 or 0."""

from __future__ import annotations

from dataclasses import dataclass

from .actions import Comodule
from .errors import ConsistencyError, HypothesisError, ShapeError
from .kernel import Field, Matrix, kron, leg_permutation, to_scalar
from .report import CheckReport, compare
from .rotabaxter import PairedOperator, RBCoalgebra, check_rb_paired_comodule
from .structures import _default_basis, tensor_labels


@dataclass(frozen=True)
class PreLieCoalgebra:
    dim: int
    delta_tilde: Matrix
    basis: tuple[str, ...] = ()

    def __post_init__(self):
        if self.delta_tilde.shape != (self.dim ** 2, self.dim):
            raise ShapeError(f"delta_tilde must be {self.dim ** 2}x{self.dim}")
        if not self.basis:
            object.__setattr__(self, "basis", _default_basis(self.dim))

    @property
    def field(self) -> Field:
        return self.delta_tilde.field

    def swap12(self) -> Matrix:
        """Phi_(12) on C (x) C (x) C."""
        d = self.dim
        return leg_permutation(self.field, (d, d, d), (1, 0, 2))

    def associator(self) -> Matrix:
        dt, I = self.delta_tilde, Matrix.identity(self.field, self.dim)
        return kron(dt, I) @ dt - kron(I, dt) @ dt


@dataclass(frozen=True)
class PreLieComodule:
    over: PreLieCoalgebra
    dim: int
    rho_tilde: Matrix
    basis: tuple[str, ...] = ()

    def __post_init__(self):
        if self.rho_tilde.shape != (self.over.dim * self.dim, self.dim):
            raise ShapeError(f"rho_tilde must be {self.over.dim * self.dim}x{self.dim}")
        if not self.basis:
            object.__setattr__(self, "basis", _default_basis(self.dim))

    @property
    def field(self) -> Field:
        return self.rho_tilde.field

    def tau(self) -> Matrix:
        """tau (x) id on C (x) C (x) M."""
        d = self.over.dim
        return leg_permutation(self.field, (d, d, self.dim), (1, 0, 2))

    def associator(self) -> Matrix:
        rt, dt = self.rho_tilde, self.over.delta_tilde
        return (kron(Matrix.identity(self.field, self.over.dim), rt) @ rt
                - kron(dt, Matrix.identity(self.field, self.dim)) @ rt)


def check_prelie(c: PreLieCoalgebra) -> CheckReport:
    a = c.associator()
    rep = CheckReport(metadata={"structure": "prelie-coalgebra", "dim": c.dim})
    rep.add(compare("prelie-coalgebra", a, c.swap12() @ a, c.basis))
    return rep


def check_prelie_comodule(m: PreLieComodule) -> CheckReport:
    a = m.associator()
    rep = CheckReport(metadata={"structure": "prelie-comodule", "dim": m.dim})
    rep.add(compare("prelie-comodule", a, m.tau() @ a, m.basis))
    return rep


def _weight_kind(fld: Field, weight) -> str:
    w = to_scalar(fld, weight)
    if w == fld.zero:
        return "zero"
    if w == fld.reduce(-fld.one):
        return "minus-one"
    raise HypothesisError("unsupported weight", f"only -1 and 0 have a pre-Lie formula, got {fld.format(w)}")


def prelie_from_rb_coalgebra(rb: RBCoalgebra) -> PreLieCoalgebra:
    """Q(c_1) (x) c_2 - Q(c_2) (x) c_1 [- c_1 (x) c_2 at weight -1]."""
    c = rb.coa
    kind = _weight_kind(c.field, rb.weight)
    q, I, delta = rb.p, c.id, c.delta
    dt = kron(q, I) @ delta - c.flip() @ kron(I, q) @ delta
    if kind == "minus-one":
        dt = dt - delta
    out = PreLieCoalgebra(c.dim, dt, c.basis)
    rep = check_prelie(out)
    if not rep.ok:
        raise ConsistencyError(f"pre-Lie axiom fails for an RB coalgebra\n{rep.format()}")
    return out


def prelie_comodule_from_rb(m: Comodule, op: PairedOperator) -> PreLieComodule:
    """Q(m_(-1)) (x) m_(0) + m_(-1) (x) T(m_(0)) [- m_(-1) (x) m_(0) at weight -1]."""
    if m.side != "left":
        raise HypothesisError("left comodule required")
    kind = _weight_kind(m.field, op.weight)
    rb = RBCoalgebra(m.over, op.p, op.weight)
    if not check_rb_paired_comodule(m, op).ok:
        raise HypothesisError("not a Rota-Baxter paired comodule")
    c = prelie_from_rb_coalgebra(rb)
    rt = kron(op.p, m.id) @ m.rho + kron(m.over.id, op.t) @ m.rho
    if kind == "minus-one":
        rt = rt - m.rho
    out = PreLieComodule(c, m.dim, rt, m.basis)
    rep = check_prelie_comodule(out)
    if not rep.ok:
        raise ConsistencyError(f"pre-Lie comodule axiom fails\n{rep.format()}")
    return out


def prelie_labels(c: PreLieCoalgebra) -> list[str]:
    return tensor_labels(c.basis, c.basis)
