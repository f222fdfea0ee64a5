"""Coinvariants, the map E_M, and the isomorphism (M, T) = (H (x) M^coH, id (x) T|).

The isomorphism is built in explicit coordinates: M^coH gets the basis found by
row reduction, ``H (x) M^coH`` the composite row-major basis, so that alpha and
beta are plain matrices and ``alpha @ beta == I`` is a literal check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .actions import Comodule, HopfModule, ModuleCarrier, check_hopf_module, check_comodule_map, check_module_map
from .errors import HypothesisError
from .kernel import Matrix, hstack, kron, left_inverse, solve_kernel, span_contains, to_scalar
from .report import CheckReport, compare, verdict
from .rotabaxter import GenericVerdict, check_generic_hopf_module, is_quasi_idempotent
from .structures import BialgebraLike, tensor_labels


@dataclass(frozen=True)
class CoinvariantSpace:
    carrier: Comodule
    basis: Matrix  # columns span {m : rho(m) = 1 (x) m}

    @property
    def dim(self) -> int:
        return self.basis.cols


def coinvariants(com: Comodule, h: BialgebraLike) -> CoinvariantSpace:
    if com.side != "left":
        raise HypothesisError("left comodule required")
    if com.over != h.coa:
        raise HypothesisError("coalgebra mismatch")
    vs = solve_kernel(com.rho - kron(h.unit, com.id))
    b = hstack(*vs) if vs else Matrix.zeros(com.field, com.dim, 0)
    return CoinvariantSpace(com, b)


def _require_left_hopf(hm: HopfModule) -> BialgebraLike:
    if hm.flavor != "left-hopf":
        raise HypothesisError("flavor/structure mismatch", "needs a left Hopf module")
    h = hm.hopf
    if h.kind != "strict":
        raise HypothesisError("not a Hopf algebra")
    h.require_antipode()
    return h


def e_map(hm: HopfModule) -> Matrix:
    """E_M(m) = S(m_(-1)) . m_(0)."""
    h = _require_left_hopf(hm)
    return hm.mod.action @ kron(h.antipode, hm.mod.id) @ hm.com.rho


def tensor_coinvariant_module(h: BialgebraLike, k: int, labels) -> HopfModule:
    """H (x) V with action on H and coaction Delta (x) id, V of dimension k."""
    Ik = Matrix.identity(h.field, k)
    basis = tuple(tensor_labels(h.basis, labels))
    n = h.dim * k
    mod = ModuleCarrier(h, n, "left", kron(h.mult, Ik), basis)
    com = Comodule(h.coa, n, "left", kron(h.delta, Ik), basis)
    return HopfModule(mod, com, "left-hopf", name=f"{h.name}(x)coinvariants")


@dataclass(frozen=True)
class IsoWitness:
    alpha: Matrix
    beta: Matrix
    coinvariants: CoinvariantSpace
    t_prime: Matrix
    tensor: HopfModule


@dataclass(frozen=True)
class StructureTheoremResult:
    witness: IsoWitness
    report: CheckReport
    generic: GenericVerdict
    generic_tensor: GenericVerdict


def verify_structure_theorem(hm: HopfModule, t: Matrix, weight, trials: int = 50,
                             seed: int = 0) -> StructureTheoremResult:
    h = _require_left_hopf(hm)
    w = to_scalar(hm.field, weight)
    if not (check_module_map(t, hm.mod, hm.mod) and check_comodule_map(t, hm.com, hm.com)):
        raise HypothesisError("T not a Hopf module map")
    if not is_quasi_idempotent(t, w):
        raise HypothesisError("T not quasi-idempotent")

    rep = CheckReport(metadata={"structure": "structure-theorem", "name": hm.name,
                                "weight": hm.field.format(w), "seed": seed, "trials": trials})
    rep.extend(check_hopf_module(hm), prefix="input:")
    co = coinvariants(hm.com, h)
    b, k = co.basis, co.dim
    e = e_map(hm)
    rep.add(verdict("E-lands-in-coinvariants", span_contains(b, e) if k else e.is_zero()))
    rep.add(verdict("T-preserves-coinvariants", span_contains(b, t @ b) if k else True))
    rep.add(verdict("dimension", hm.dim == h.dim * k, f"{hm.dim} = {h.dim}*{k}"))
    if k == 0:
        raise HypothesisError("no coinvariants", "M^coH = 0 is impossible for a nonzero Hopf module")

    linv = left_inverse(b)
    tc = linv @ t @ b
    labels = [f"c{i}" for i in range(k)]
    tensor = tensor_coinvariant_module(h, k, labels)
    rep.extend(check_hopf_module(tensor), prefix="tensor:")
    alpha = hm.mod.action @ kron(h.id, b)
    beta = kron(h.id, linv @ e) @ hm.com.rho
    t_prime = kron(h.id, tc)

    rep.add(compare("alpha-beta", alpha @ beta, hm.mod.id, hm.basis))
    rep.add(compare("beta-alpha", beta @ alpha, tensor.mod.id, tensor.basis))
    rep.add(verdict("alpha-module-map", check_module_map(alpha, tensor.mod, hm.mod)))
    rep.add(verdict("alpha-comodule-map", check_comodule_map(alpha, tensor.com, hm.com)))
    rep.add(verdict("beta-module-map", check_module_map(beta, hm.mod, tensor.mod)))
    rep.add(verdict("beta-comodule-map", check_comodule_map(beta, hm.com, tensor.com)))
    rep.add(compare("intertwine-beta", t_prime @ beta, beta @ t, hm.basis))
    rep.add(compare("intertwine-alpha", alpha @ t_prime, t @ alpha, tensor.basis))

    gen = check_generic_hopf_module(hm, t, w, trials, seed).require_agreement()
    gen_t = check_generic_hopf_module(tensor, t_prime, w, trials, seed).require_agreement()
    rep.extend(gen.report(), prefix="generic:")
    rep.extend(gen_t.report(), prefix="generic-tensor:")
    return StructureTheoremResult(IsoWitness(alpha, beta, co, t_prime, tensor), rep, gen, gen_t)
