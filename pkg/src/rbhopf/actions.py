"""Comodules, modules, Hopf modules (four flavours) and their compatibility checks.

Left and right structures share one type with a ``side`` tag.  Leg order
follows Sweedler notation: a left coaction lands in ``C (x) M``, a right one in
``M (x) C``; a left action is a map ``H (x) M -> M``, a right one
``M (x) H -> M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

from .errors import HypothesisError, ShapeError
from .kernel import (Matrix, column_space, hstack, kron, kron_all, leg_permutation, permute_legs, solve_kernel,
                     span_contains)
from .report import CheckReport, compare, verdict
from .structures import (AlgebraStruct, BialgebraLike, Coalgebra, _default_basis, check_coalgebra,
                         tensor_labels)

Side = Literal["left", "right"]
Flavor = Literal["left-hopf", "weak-right-hopf", "dimodule", "relative"]

_SIDES = {"left": "left", "l": "left", "right": "right", "r": "right"}


def _side(s: str) -> Side:
    try:
        return _SIDES[s.lower()]
    except KeyError:
        raise ValueError(f"side must be left/right (or L/R), got {s!r}") from None


def legs(side: Side, on_coalgebra: Matrix, on_carrier: Matrix) -> Matrix:
    """``a (x) b`` in the leg order of a ``side`` coaction (coalgebra leg first for left)."""
    return kron(on_coalgebra, on_carrier) if side == "left" else kron(on_carrier, on_coalgebra)


@dataclass(frozen=True)
class Comodule:
    over: Coalgebra
    dim: int
    side: Side
    rho: Matrix
    basis: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "side", _side(self.side))
        if self.rho.shape != (self.over.dim * self.dim, self.dim):
            raise ShapeError(f"coaction must be {self.over.dim * self.dim}x{self.dim}, got {self.rho.shape}")
        if not self.basis:
            object.__setattr__(self, "basis", _default_basis(self.dim))

    @property
    def field(self):
        return self.rho.field

    @property
    def id(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    def legs(self, on_coalgebra: Matrix, on_carrier: Matrix) -> Matrix:
        return legs(self.side, on_coalgebra, on_carrier)

    def with_coaction(self, rho: Matrix, over: Coalgebra | None = None) -> "Comodule":
        return Comodule(over or self.over, self.dim, self.side, rho, self.basis)


@dataclass(frozen=True)
class ModuleCarrier:
    over: Union[BialgebraLike, AlgebraStruct]
    dim: int
    side: Side
    action: Matrix
    basis: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "side", _side(self.side))
        if self.action.shape != (self.dim, self.alg.dim * self.dim):
            raise ShapeError(f"action must be {self.dim}x{self.alg.dim * self.dim}, got {self.action.shape}")
        if not self.basis:
            object.__setattr__(self, "basis", _default_basis(self.dim))

    @property
    def alg(self) -> AlgebraStruct:
        return self.over.alg if isinstance(self.over, BialgebraLike) else self.over

    @property
    def field(self):
        return self.action.field

    @property
    def id(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    def legs(self, on_algebra: Matrix, on_carrier: Matrix) -> Matrix:
        return legs(self.side, on_algebra, on_carrier)

    def by(self, a: Matrix) -> Matrix:
        """The carrier endomorphism ``m -> a . m`` (left) or ``m -> m . a`` (right)."""
        return self.action @ self.legs(a, self.id)


@dataclass(frozen=True)
class ModuleCoalgebra:
    """A coalgebra C with a right action of H making Delta_C, eps_C H-linear."""
    coa: Coalgebra
    hopf: BialgebraLike
    action: Matrix  # C (x) H -> C


@dataclass(frozen=True)
class HopfModule:
    mod: ModuleCarrier
    com: Comodule
    flavor: Flavor
    module_coalgebra: ModuleCoalgebra | None = None
    name: str = ""

    def __post_init__(self):
        if self.mod.dim != self.com.dim:
            raise ShapeError("module and comodule carriers differ in dimension")
        if self.flavor not in ("left-hopf", "weak-right-hopf", "dimodule", "relative"):
            raise ValueError(f"unknown Hopf module flavor {self.flavor!r}")

    @property
    def hopf(self) -> BialgebraLike:
        if not isinstance(self.mod.over, BialgebraLike):
            raise HypothesisError("module is not over a bialgebra")
        return self.mod.over

    @property
    def dim(self) -> int:
        return self.mod.dim

    @property
    def field(self):
        return self.mod.field

    @property
    def basis(self):
        return self.mod.basis


# -- checkers ---------------------------------------------------------------


def check_comodule(m: Comodule) -> CheckReport:
    c = m.over
    Ic, Im = c.id, m.id
    rep = CheckReport(metadata={"structure": "comodule", "side": m.side, "dim": m.dim})
    if m.side == "left":
        rep.add(compare("coassoc", kron(Ic, m.rho) @ m.rho, kron(c.delta, Im) @ m.rho, m.basis))
        if c.counitary:
            rep.add(compare("counit", kron(c.counit, Im) @ m.rho, Im, m.basis))
    else:
        rep.add(compare("coassoc", kron(m.rho, Ic) @ m.rho, kron(Im, c.delta) @ m.rho, m.basis))
        if c.counitary:
            rep.add(compare("counit", kron(Im, c.counit) @ m.rho, Im, m.basis))
    return rep


def check_module(m: ModuleCarrier) -> CheckReport:
    a = m.alg
    Ia, Im = Matrix.identity(m.field, a.dim), m.id
    hb = m.over.basis if isinstance(m.over, BialgebraLike) else _default_basis(a.dim)
    rep = CheckReport(metadata={"structure": "module", "side": m.side, "dim": m.dim})
    if m.side == "left":
        rep.add(compare("assoc", m.action @ kron(a.mult, Im), m.action @ kron(Ia, m.action),
                        tensor_labels(hb, hb, m.basis)))
        rep.add(compare("unit", m.action @ kron(a.unit, Im), Im, m.basis))
    else:
        rep.add(compare("assoc", m.action @ kron(m.action, Ia), m.action @ kron(Im, a.mult),
                        tensor_labels(m.basis, hb, hb)))
        rep.add(compare("unit", m.action @ kron(Im, a.unit), Im, m.basis))
    return rep


def check_module_coalgebra(mc: ModuleCoalgebra) -> CheckReport:
    c, h = mc.coa, mc.hopf
    rep = CheckReport(metadata={"structure": "module-coalgebra"})
    rep.extend(check_coalgebra(c), prefix="coalgebra:")
    rep.extend(check_module(ModuleCarrier(h, c.dim, "right", mc.action, c.basis)), prefix="module:")
    labels = tensor_labels(c.basis, h.basis)
    swap = leg_permutation(c.field, (c.dim, c.dim, h.dim, h.dim), (0, 2, 1, 3))
    rep.add(compare("delta-linear", c.delta @ mc.action,
                    kron(mc.action, mc.action) @ swap @ kron(c.delta, h.delta), labels))
    if c.counitary:
        rep.add(compare("counit-linear", c.counit @ mc.action, kron(c.counit, h.counit), labels))
    return rep


def check_hopf_module(hm: HopfModule) -> CheckReport:
    h = hm.hopf
    mod, com = hm.mod, hm.com
    d, n = h.dim, hm.dim
    Ih = h.id
    rep = CheckReport(metadata={"structure": "hopf-module", "flavor": hm.flavor, "dim": n, "name": hm.name})

    want = {"left-hopf": ("left", "left"), "weak-right-hopf": ("right", "right"),
            "dimodule": ("left", "right"), "relative": ("right", "right")}[hm.flavor]
    if (mod.side, com.side) != want:
        raise HypothesisError("flavor/structure mismatch",
                              f"{hm.flavor} needs module {want[0]}, comodule {want[1]}")
    if hm.flavor == "relative":
        if hm.module_coalgebra is None or hm.module_coalgebra.coa != com.over:
            raise HypothesisError("flavor/structure mismatch", "relative module needs its module coalgebra")
    elif com.over != h.coa:
        raise HypothesisError("flavor/structure mismatch", "comodule is not over the acting bialgebra")

    rep.extend(check_module(mod), prefix="module:")
    rep.extend(check_comodule(com), prefix="comodule:")

    if hm.flavor == "left-hopf":
        lhs = com.rho @ mod.action
        rhs = kron(h.mult, mod.action) @ permute_legs(kron(h.delta, com.rho), (d, d, d, n), (0, 2, 1, 3))
        labels = tensor_labels(h.basis, mod.basis)
    elif hm.flavor == "weak-right-hopf":
        lhs = com.rho @ mod.action
        rhs = kron(mod.action, h.mult) @ permute_legs(kron(com.rho, h.delta), (n, d, d, d), (0, 2, 1, 3))
        labels = tensor_labels(mod.basis, h.basis)
    elif hm.flavor == "dimodule":
        lhs = com.rho @ mod.action
        rhs = kron(mod.action, Ih) @ kron(Ih, com.rho)
        labels = tensor_labels(h.basis, mod.basis)
    else:
        mc = hm.module_coalgebra
        rep.extend(check_module_coalgebra(mc), prefix="module-coalgebra:")
        c = mc.coa.dim
        lhs = com.rho @ mod.action
        rhs = kron(mod.action, mc.action) @ permute_legs(kron(com.rho, h.delta), (n, c, d, d), (0, 2, 1, 3))
        labels = tensor_labels(mod.basis, h.basis)
    rep.add(compare("compat", lhs, rhs, labels))
    return rep


def check_comodule_map(t: Matrix, m: Comodule, n: Comodule) -> bool:
    if m.over != n.over or m.side != n.side:
        raise HypothesisError("comodules over different coalgebras or sides")
    if t.shape != (n.dim, m.dim):
        raise ShapeError(f"map must be {n.dim}x{m.dim}, got {t.shape}")
    return m.legs(m.over.id, t) @ m.rho == n.rho @ t


def check_module_map(t: Matrix, m: ModuleCarrier, n: ModuleCarrier) -> bool:
    if m.alg != n.alg or m.side != n.side:
        raise HypothesisError("modules over different algebras or sides")
    if t.shape != (n.dim, m.dim):
        raise ShapeError(f"map must be {n.dim}x{m.dim}, got {t.shape}")
    ia = Matrix.identity(m.field, m.alg.dim)
    return t @ m.action == n.action @ m.legs(ia, t)


def is_colinear(m: Comodule, t: Matrix) -> bool:
    return check_comodule_map(t, m, m)


def is_hopf_module_map(hm: HopfModule, t: Matrix) -> bool:
    return check_module_map(t, hm.mod, hm.mod) and check_comodule_map(t, hm.com, hm.com)


def is_subcomodule(m: Comodule, basis: Matrix) -> bool:
    """Whether the column span of ``basis`` is closed under the coaction."""
    if basis.cols == 0:
        return True
    return span_contains(m.legs(m.over.id, basis), m.rho @ basis)


def is_invariant(t: Matrix, basis: Matrix) -> bool:
    return span_contains(basis, t @ basis)


def kernel_basis(f: Matrix) -> Matrix:
    vs = solve_kernel(f)
    return hstack(*vs) if vs else Matrix.zeros(f.field, f.cols, 0)


def image_basis(f: Matrix) -> Matrix:
    return column_space(f)


def preimage_basis(f: Matrix, target: Matrix) -> Matrix:
    """Basis of {x : f x in span(target)}."""
    if target.cols == 0:
        return kernel_basis(f)
    ker = solve_kernel(hstack(f, target))
    if not ker:
        return Matrix.zeros(f.field, f.cols, 0)
    top = Matrix(f.field, [v.col_values(0)[: f.cols] for v in ker]).T
    return column_space(top)


def subcomodule_closure(f: Matrix, m: Comodule, t: Matrix, n: Comodule, t_prime: Matrix,
                        k: Matrix | None = None, l: Matrix | None = None) -> CheckReport:
    """Closure properties of an RB paired comodule map f: (M, P, T) -> (N, P', T').

    ``k`` spans a paired subcomodule of M, ``l`` one of N (columns as basis);
    both default to the whole space.
    """
    if not check_comodule_map(f, m, n):
        raise HypothesisError("f not a comodule map")
    if f @ t != t_prime @ f:
        raise HypothesisError("f does not intertwine T and T'", "fT != T'f")
    if k is None:
        k = m.id
    if l is None:
        l = n.id
    if not (is_subcomodule(m, k) and is_invariant(t, k)):
        raise HypothesisError("K not a paired subcomodule")
    if not (is_subcomodule(n, l) and is_invariant(t_prime, l)):
        raise HypothesisError("L not a paired subcomodule")
    rep = CheckReport(metadata={"structure": "subcomodule-closure"})
    ker = kernel_basis(f)
    rep.add(verdict("kernel-subcomodule", is_subcomodule(m, ker)))
    rep.add(verdict("kernel-T-stable", is_invariant(t, ker)))
    img = image_basis(f @ k) if k.cols else k
    rep.add(verdict("image-subcomodule", is_subcomodule(n, img)))
    rep.add(verdict("image-T-stable", is_invariant(t_prime, img)))
    pre = preimage_basis(f, l)
    rep.add(verdict("preimage-subcomodule", is_subcomodule(m, pre)))
    rep.add(verdict("preimage-T-stable", is_invariant(t, pre)))
    return rep


# -- module-coalgebra maps --------------------------------------------------


@dataclass(frozen=True)
class ModuleCoalgebraMap:
    source: ModuleCoalgebra
    target: BialgebraLike
    matrix: Matrix


def check_module_coalgebra_map(phi: ModuleCoalgebraMap) -> CheckReport:
    c, h, p = phi.source.coa, phi.target, phi.matrix
    rep = CheckReport(metadata={"structure": "module-coalgebra-map"})
    rep.add(compare("coalgebra-map", h.delta @ p, kron(p, p) @ c.delta, c.basis))
    rep.add(compare("counit", h.counit @ p, c.counit, c.basis))
    rep.add(compare("module-map", p @ phi.source.action, h.mult @ kron(p, h.id), tensor_labels(c.basis, h.basis)))
    return rep


# -- canonical instances ----------------------------------------------------


def regular_left_hopf_module(h: BialgebraLike) -> HopfModule:
    mod = ModuleCarrier(h, h.dim, "left", h.mult, h.basis)
    com = Comodule(h.coa, h.dim, "left", h.delta, h.basis)
    return HopfModule(mod, com, "left-hopf", name=f"{h.name}:regular")


def regular_right_hopf_module(h: BialgebraLike) -> HopfModule:
    mod = ModuleCarrier(h, h.dim, "right", h.mult, h.basis)
    com = Comodule(h.coa, h.dim, "right", h.delta, h.basis)
    return HopfModule(mod, com, "weak-right-hopf", name=f"{h.name}:regular-right")


def free_right_hopf_module(h: BialgebraLike, vdim: int) -> HopfModule:
    """V (x) H with (v (x) h) . g = v (x) hg and coaction id (x) Delta."""
    f = h.field
    Iv = Matrix.identity(f, vdim)
    basis = tuple(tensor_labels([f"v{i}" for i in range(vdim)], h.basis))
    mod = ModuleCarrier(h, vdim * h.dim, "right", kron(Iv, h.mult), basis)
    com = Comodule(h.coa, vdim * h.dim, "right", kron(Iv, h.delta), basis)
    return HopfModule(mod, com, "weak-right-hopf", name=f"{h.name}:free-right-{vdim}")


def trivial_dimodule(h: BialgebraLike) -> HopfModule:
    """H acting on itself by left multiplication, coaction m -> m (x) 1."""
    mod = ModuleCarrier(h, h.dim, "left", h.mult, h.basis)
    com = Comodule(h.coa, h.dim, "right", kron(h.id, h.unit), h.basis)
    return HopfModule(mod, com, "dimodule", name=f"{h.name}:trivial-dimodule")


def split_dimodule(h: BialgebraLike) -> HopfModule:
    """H (x) H with h.(a (x) b) = ha (x) b and coaction a (x) b -> a (x) b_1 (x) b_2."""
    basis = tuple(tensor_labels(h.basis, h.basis))
    n = h.dim ** 2
    mod = ModuleCarrier(h, n, "left", kron(h.mult, h.id), basis)
    com = Comodule(h.coa, n, "right", kron(h.id, h.delta), basis)
    return HopfModule(mod, com, "dimodule", name=f"{h.name}:split-dimodule")


def tensor_coalgebra_hopf_module(h: BialgebraLike, c: Coalgebra) -> HopfModule:
    """H (x) C with h.(g (x) c) = hg (x) c and coaction h (x) c -> h_1 (x) h_2 (x) c."""
    if h.field != c.field:
        raise HypothesisError("field mismatch")
    Ic = c.id
    basis = tuple(tensor_labels(h.basis, c.basis))
    n = h.dim * c.dim
    mod = ModuleCarrier(h, n, "left", kron(h.mult, Ic), basis)
    com = Comodule(h.coa, n, "left", kron(h.delta, Ic), basis)
    return HopfModule(mod, com, "left-hopf", name=f"{h.name}:tensor-coalgebra")


def regular_module_coalgebra(h: BialgebraLike) -> ModuleCoalgebra:
    """H as a right H-module coalgebra through its multiplication."""
    return ModuleCoalgebra(h.coa, h, h.mult)


def regular_relative_module(h: BialgebraLike) -> HopfModule:
    mc = regular_module_coalgebra(h)
    mod = ModuleCarrier(h, h.dim, "right", h.mult, h.basis)
    com = Comodule(h.coa, h.dim, "right", h.delta, h.basis)
    return HopfModule(mod, com, "relative", mc, name=f"{h.name}:relative")


def canonical_modules(h: BialgebraLike) -> dict[str, HopfModule]:
    out = {"regular-right": regular_right_hopf_module(h)}
    if h.kind == "strict":
        out["regular"] = regular_left_hopf_module(h)
        out["trivial-dimodule"] = trivial_dimodule(h)
        out["tensor-coalgebra"] = tensor_coalgebra_hopf_module(h, h.coa)
        if h.antipode is not None:
            out["relative"] = regular_relative_module(h)
    return out


def regular_comodule(c: Coalgebra, side: Side = "left") -> Comodule:
    """C as a comodule over itself through Delta."""
    return Comodule(c, c.dim, side, c.delta, c.basis)


def hopf_module_map_report(hm: HopfModule, t: Matrix) -> CheckReport:
    rep = CheckReport()
    rep.add(verdict("module-map", check_module_map(t, hm.mod, hm.mod)))
    rep.add(verdict("comodule-map", check_comodule_map(t, hm.com, hm.com)))
    return rep


def relative_tensor_module(hm: HopfModule) -> HopfModule:
    """H (x) M for a relative module M: (h (x) m) . g = hg (x) m and
    rho(h (x) m) = h_1 (x) m_[0] (x) m_[1] . h_2."""
    if hm.flavor != "relative":
        raise HypothesisError("flavor/structure mismatch", "needs a relative Hopf module")
    h, mc = hm.hopf, hm.module_coalgebra
    f, d, n, c = hm.field, h.dim, hm.dim, mc.coa.dim
    In = hm.mod.id
    rho = kron_all(h.id, In, mc.action) @ permute_legs(kron(h.delta, hm.com.rho), (d, d, n, c), (0, 2, 3, 1))
    act = kron(h.mult, In) @ leg_permutation(f, (d, n, d), (0, 2, 1))
    basis = tuple(tensor_labels(h.basis, hm.basis))
    mod = ModuleCarrier(h, d * n, "right", act, basis)
    com = Comodule(mc.coa, d * n, "right", rho, basis)
    return HopfModule(mod, com, "relative", mc, name=f"{hm.name}:H-tensor")


def group_like_module_coalgebra_map(h: BialgebraLike, g: Matrix) -> ModuleCoalgebraMap:
    """phi(c) = g c on C = H (a coalgebra map and right H-linear when g is group-like)."""
    phi = h.mult @ kron(g, h.id)
    return ModuleCoalgebraMap(regular_module_coalgebra(h), h, phi)
