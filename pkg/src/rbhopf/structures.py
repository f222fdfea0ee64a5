"""Coalgebras, algebras, (weak) bialgebras and Hopf algebras by structure constants.

Comultiplication is a single ``dim^2 x dim`` matrix, multiplication a
``dim x dim^2`` matrix, so every axiom below is an equality of matrices and is
checked on every basis vector (or basis tensor) at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .errors import ConsistencyError, HypothesisError, ShapeError
from .kernel import (Field, Matrix, TensorIndex, column_space, hstack, kron, kron_all, leg_permutation, permute_legs,
                     solve_kernel, vstack)
from .report import CheckReport, compare

Kind = Literal["strict", "weak"]


def _default_basis(dim: int) -> tuple[str, ...]:
    return tuple(f"e{i}" for i in range(dim))


def tensor_labels(*bases: Sequence[str]) -> list[str]:
    return TensorIndex([len(b) for b in bases]).labels(bases)


@dataclass(frozen=True)
class Coalgebra:
    dim: int
    delta: Matrix
    counit: Matrix | None = None  # None: noncounitary
    basis: tuple[str, ...] = ()

    def __post_init__(self):
        if self.delta.shape != (self.dim ** 2, self.dim):
            raise ShapeError(f"delta must be {self.dim ** 2}x{self.dim}, got {self.delta.shape}")
        if self.counit is not None:
            if self.counit.shape != (1, self.dim):
                raise ShapeError(f"counit must be 1x{self.dim}, got {self.counit.shape}")
            self.delta._check_field(self.counit)
        if not self.basis:
            object.__setattr__(self, "basis", _default_basis(self.dim))
        elif len(self.basis) != self.dim:
            raise ShapeError("basis names do not match dim")

    @property
    def field(self) -> Field:
        return self.delta.field

    @property
    def counitary(self) -> bool:
        return self.counit is not None

    @property
    def id(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    def flip(self) -> Matrix:
        return leg_permutation(self.field, (self.dim, self.dim), (1, 0))


@dataclass(frozen=True)
class AlgebraStruct:
    dim: int
    mult: Matrix
    unit: Matrix

    def __post_init__(self):
        if self.mult.shape != (self.dim, self.dim ** 2):
            raise ShapeError(f"mult must be {self.dim}x{self.dim ** 2}, got {self.mult.shape}")
        if self.unit.shape != (self.dim, 1):
            raise ShapeError(f"unit must be {self.dim}x1, got {self.unit.shape}")

    @property
    def field(self) -> Field:
        return self.mult.field

    def multiply(self, x: Matrix, y: Matrix) -> Matrix:
        return self.mult @ kron(x, y)


@dataclass(frozen=True)
class BialgebraLike:
    alg: AlgebraStruct
    coa: Coalgebra
    kind: Kind = "strict"
    antipode: Matrix | None = None
    name: str = ""

    def __post_init__(self):
        if self.alg.dim != self.coa.dim:
            raise ShapeError("algebra and coalgebra dimensions differ")
        if self.kind not in ("strict", "weak"):
            raise ValueError(f"kind must be 'strict' or 'weak', got {self.kind!r}")
        if self.antipode is not None and self.antipode.shape != (self.dim, self.dim):
            raise ShapeError("antipode must be dim x dim")
        if self.coa.counit is None:
            raise ShapeError("a bialgebra needs a counit")

    @property
    def dim(self) -> int:
        return self.coa.dim

    @property
    def field(self) -> Field:
        return self.coa.field

    @property
    def basis(self) -> tuple[str, ...]:
        return self.coa.basis

    @property
    def mult(self) -> Matrix:
        return self.alg.mult

    @property
    def unit(self) -> Matrix:
        return self.alg.unit

    @property
    def delta(self) -> Matrix:
        return self.coa.delta

    @property
    def counit(self) -> Matrix:
        return self.coa.counit

    @property
    def id(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    def delta_one(self) -> Matrix:
        """Delta(1) as a vector in H (x) H."""
        return self.delta @ self.unit

    def with_antipode(self, s: Matrix | None) -> "BialgebraLike":
        return BialgebraLike(self.alg, self.coa, self.kind, s, self.name)

    def require_antipode(self) -> Matrix:
        if self.antipode is None:
            raise HypothesisError("missing antipode", self.name)
        return self.antipode


@dataclass(frozen=True)
class Functional:
    coefficients: Matrix

    @property
    def dim(self) -> int:
        return self.coefficients.cols

    @property
    def field(self) -> Field:
        return self.coefficients.field

    @classmethod
    def of(cls, fld: Field, values: Sequence) -> "Functional":
        return cls(Matrix.row(fld, values))

    def __call__(self, x: Matrix):
        return (self.coefficients @ x)[0, 0]


# -- checkers ---------------------------------------------------------------


def check_coalgebra(c: Coalgebra) -> CheckReport:
    d, I = c.dim, c.id
    rep = CheckReport(metadata={"structure": "coalgebra", "dim": d})
    rep.add(compare("coassoc", kron(c.delta, I) @ c.delta, kron(I, c.delta) @ c.delta, c.basis))
    if c.counitary:
        rep.add(compare("counit-left", kron(c.counit, I) @ c.delta, I, c.basis))
        rep.add(compare("counit-right", kron(I, c.counit) @ c.delta, I, c.basis))
    return rep


def check_algebra(a: AlgebraStruct, basis: Sequence[str] | None = None) -> CheckReport:
    I = Matrix.identity(a.field, a.dim)
    basis = basis or _default_basis(a.dim)
    rep = CheckReport(metadata={"structure": "algebra", "dim": a.dim})
    rep.add(compare("assoc", a.mult @ kron(a.mult, I), a.mult @ kron(I, a.mult), tensor_labels(basis, basis, basis)))
    rep.add(compare("unit-left", a.mult @ kron(a.unit, I), I, basis))
    rep.add(compare("unit-right", a.mult @ kron(I, a.unit), I, basis))
    return rep


def _mult2(h: BialgebraLike, x: Matrix) -> Matrix:
    """Multiplication of H (x) H as an algebra, (a (x) b)(c (x) d) = ac (x) bd, applied to x in H^(x)4."""
    d = h.dim
    return kron(h.mult, h.mult) @ permute_legs(x, (d,) * 4, (0, 2, 1, 3))


def _mult3(h: BialgebraLike, x: Matrix) -> Matrix:
    d = h.dim
    return kron_all(h.mult, h.mult, h.mult) @ permute_legs(x, (d,) * 6, (0, 3, 1, 4, 2, 5))


def check_bialgebra(h: BialgebraLike) -> CheckReport:
    """Algebra, coalgebra, compatibility and (when present) antipode axioms.

    ``kind == "strict"``: Delta and epsilon are unital algebra maps.
    ``kind == "weak"``: Delta multiplicative, the weak counit condition and the
    Delta^2(1) condition; the antipode axioms are the weak ones.
    """
    d, f, I = h.dim, h.field, h.id
    B = h.basis
    BB = tensor_labels(B, B)
    rep = CheckReport(metadata={"structure": "bialgebra", "kind": h.kind, "dim": d, "name": h.name})
    rep.extend(check_algebra(h.alg, B))
    rep.extend(check_coalgebra(h.coa))
    eps, delta, m, u = h.counit, h.delta, h.mult, h.unit

    rep.add(compare("delta-mult", delta @ m, _mult2(h, kron(delta, delta)), BB))
    if h.kind == "strict":
        rep.add(compare("counit-mult", eps @ m, kron(eps, eps), BB))
        rep.add(compare("delta-unit", delta @ u, kron(u, u), ["1"]))
        rep.add(compare("counit-unit", eps @ u, Matrix.identity(f, 1), ["1"]))
    else:
        BBB = tensor_labels(B, B, B)
        em = eps @ m
        flip = h.coa.flip()
        xyz = em @ kron(m, I)
        rep.add(compare("counit-weak-mult-1", xyz, kron(em, em) @ kron_all(I, delta, I), BBB))
        rep.add(compare("counit-weak-mult-2", xyz, kron(em, em) @ kron_all(I, flip @ delta, I), BBB))
        d1 = h.delta_one()
        d2 = kron(delta, I) @ d1
        rep.add(compare("delta-unit-weak-1", d2, _mult3(h, kron(kron(d1, u), kron(u, d1))), ["1"]))
        rep.add(compare("delta-unit-weak-2", d2, _mult3(h, kron(kron(u, d1), kron(d1, u))), ["1"]))

    if h.antipode is not None:
        s = h.antipode
        if h.kind == "strict":
            ue = u @ eps
            rep.add(compare("antipode-left", m @ kron(s, I) @ delta, ue, B))
            rep.add(compare("antipode-right", m @ kron(I, s) @ delta, ue, B))
        else:
            rep.add(compare("antipode-target", m @ kron(I, s) @ delta, pi_L_matrix(h), B))
            rep.add(compare("antipode-source", m @ kron(s, I) @ delta, pi_R_matrix(h), B))
            rep.add(compare("antipode-sandwich",
                            m @ kron(m, I) @ kron_all(s, I, s) @ kron(delta, I) @ delta, s, B))
    return rep


def check_hopf(h: BialgebraLike) -> CheckReport:
    h.require_antipode()
    return check_bialgebra(h)


def as_weak(h: BialgebraLike) -> BialgebraLike:
    return BialgebraLike(h.alg, h.coa, "weak", h.antipode, h.name)


# -- target / source maps ---------------------------------------------------


def pi_L_matrix(h: BialgebraLike) -> Matrix:
    """Matrix of h -> eps(1_1 h) 1_2."""
    d = h.dim
    d1 = h.delta_one()
    em = h.counit @ h.mult
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            c = d1[i * d + j, 0]
            if c:
                for k in range(d):
                    rows[j][k] += c * em[0, i * d + k]
    return Matrix(h.field, rows, d, d)


def pi_R_matrix(h: BialgebraLike) -> Matrix:
    """Matrix of h -> eps(h 1_2) 1_1."""
    d = h.dim
    d1 = h.delta_one()
    em = h.counit @ h.mult
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            c = d1[i * d + j, 0]
            if c:
                for k in range(d):
                    rows[i][k] += c * em[0, k * d + j]
    return Matrix(h.field, rows, d, d)


def pi_L(h: BialgebraLike, x: Matrix) -> Matrix:
    return pi_L_matrix(h) @ x


def pi_R(h: BialgebraLike, x: Matrix) -> Matrix:
    return pi_R_matrix(h) @ x


def target_algebra(h: BialgebraLike) -> Matrix:
    """Basis (as columns) of H^L, the image of pi_L."""
    return column_space(pi_L_matrix(h))


def source_algebra(h: BialgebraLike) -> Matrix:
    return column_space(pi_R_matrix(h))


def weak_identity_suite(h: BialgebraLike) -> CheckReport:
    """Standard weak Hopf identities plus (anti)multiplicativity of S.

    Every identity is compared as a matrix equality, i.e. on all basis vectors
    (or pairs of basis vectors) at once.  Holds for strict Hopf algebras too,
    where pi_L = pi_R = u eps.
    """
    s = h.require_antipode()
    d, f, I = h.dim, h.field, h.id
    B = h.basis
    BB = tensor_labels(B, B)
    m, u, delta, eps = h.mult, h.unit, h.delta, h.counit
    PL, PR = pi_L_matrix(h), pi_R_matrix(h)
    d1 = h.delta_one()
    flip = h.coa.flip()
    swap23 = leg_permutation(f, (d, d, d), (0, 2, 1))
    rep = CheckReport(metadata={"structure": "weak-suite", "name": h.name, "dim": d})

    rep.extend(check_bialgebra(h), prefix="axiom:")

    rep.add(compare("W1-L", PL @ PL, PL, B))
    rep.add(compare("W1-R", PR @ PR, PR, B))

    rep.add(compare("W2-L", kron(PL, I) @ delta, kron(s, m) @ kron(d1, I), B))
    rep.add(compare("W2-R", kron(I, PR) @ delta, kron(m, s) @ kron(I, d1), B))

    rep.add(compare("W2'-L", kron(PL, I) @ d1, kron(s, I) @ d1, ["1"]))
    rep.add(compare("W2'-R", kron(I, PR) @ d1, kron(I, s) @ d1, ["1"]))

    rep.add(compare("W3-L", PL @ m @ kron(PL, I), m @ kron(PL, PL), BB))
    rep.add(compare("W3-R", PR @ m @ kron(I, PR), m @ kron(PR, PR), BB))

    v = kron(PL, I) @ d1
    w = kron(I, PR) @ d1
    # separability of pi_L(1_1) (x) 1_2 over H^L (resp. pi_R side over H^R)
    rep.add(compare("W4-L", kron(m, I) @ kron(PL, v), kron(I, m) @ kron(v, PL), B))
    rep.add(compare("W4-R", kron(m, I) @ kron(PR, w), kron(I, m) @ kron(w, PR), B))

    rep.add(compare("W5-unit", kron(PR, PL) @ d1, d1, ["1"]))
    rep.add(compare("W5-commute", m @ kron(PL, PR), m @ flip @ kron(PL, PR), BB))

    rep.add(compare("W6-L", delta @ PL, kron(m, I) @ swap23 @ kron(d1, PL), B))
    rep.add(compare("W6-R", delta @ PR, kron(I, m) @ swap23 @ kron(d1, PR), B))

    vs = kron(s, I) @ d1
    ws = kron(I, s) @ d1
    rep.add(compare("W7-L", kron(m, I) @ kron(PL, vs), kron(I, m) @ kron(vs, PL), B))
    rep.add(compare("W7-R", kron(m, I) @ kron(PR, ws), kron(I, m) @ kron(ws, PR), B))

    lhs8 = delta @ m @ kron(PL, PR)
    rhs8 = kron(m, m) @ permute_legs(kron_all(d1, PL, PR), (d,) * 4, (0, 2, 1, 3))
    rep.add(compare("W8", lhs8, rhs8, BB))

    rep.add(compare("W9-L", kron(I, PL) @ delta, kron(m, I) @ swap23 @ kron(d1, I), B))
    rep.add(compare("W9-R", kron(PR, I) @ delta, kron(I, m) @ swap23 @ kron(d1, I), B))

    rep.add(compare("S-antimultiplicative", s @ m, m @ flip @ kron(s, s), BB))
    rep.add(compare("S-unit", s @ u, u, ["1"]))
    rep.add(compare("S-anticomultiplicative", delta @ s, flip @ kron(s, s) @ delta, B))
    rep.add(compare("S-counit", eps @ s, eps, B))
    return rep


def w4_unrestricted(h: BialgebraLike) -> CheckReport:
    """The separability identity demanded for every h in H rather than h in H^L / H^R.

    This stronger form is false in general (already for k C_2); kept as a
    diagnostic so the counterexample stays pinned by a test.
    """
    I = h.id
    m = h.mult
    d1 = h.delta_one()
    v = kron(pi_L_matrix(h), I) @ d1
    w = kron(I, pi_R_matrix(h)) @ d1
    rep = CheckReport(metadata={"structure": "w4-unrestricted", "name": h.name})
    rep.add(compare("W4-L-all-h", kron(m, I) @ kron(I, v), kron(I, m) @ kron(v, I), h.basis))
    rep.add(compare("W4-R-all-h", kron(m, I) @ kron(I, w), kron(I, m) @ kron(w, I), h.basis))
    return rep


# -- convolution, integrals -------------------------------------------------


def convolve(f: Functional, g: Functional, c: Coalgebra) -> Functional:
    if f.dim != c.dim or g.dim != c.dim:
        raise ShapeError("functional and coalgebra dimensions differ")
    return Functional(kron(f.coefficients, g.coefficients) @ c.delta)


def is_convolution_idempotent(f: Functional, c: Coalgebra) -> bool:
    return convolve(f, f, c) == f


def counit_functional(c: Coalgebra) -> Functional:
    if c.counit is None:
        raise HypothesisError("noncounitary coalgebra")
    return Functional(c.counit)


def is_left_cointegral(h: BialgebraLike, lam: Functional) -> bool:
    """f * lam = f(1) lam for all f in H*, i.e. lam(h_2) h_1 = lam(h) 1."""
    return kron(h.id, lam.coefficients) @ h.delta == h.unit @ lam.coefficients


def is_normalized_cointegral(h: BialgebraLike, lam: Functional) -> bool:
    return is_left_cointegral(h, lam) and lam(h.unit) == h.field.one


def is_left_integral(h: BialgebraLike, x: Matrix) -> bool:
    """h x = eps(h) x for every basis h."""
    return h.mult @ kron(h.id, x) == x @ h.counit


def left_integrals(h: BialgebraLike) -> list[Matrix]:
    """Basis of the space of left integrals {x : a x = eps(a) x for all a}."""
    blocks = [h.mult @ kron(Matrix.basis_vector(h.field, h.dim, a), h.id) - h.id.scale(h.counit[0, a])
              for a in range(h.dim)]
    return solve_kernel(vstack(*blocks))


def normalized_left_integral(h: BialgebraLike) -> Matrix:
    """A left integral e with eps(e) = 1 (it is then idempotent)."""
    for x in left_integrals(h):
        v = (h.counit @ x)[0, 0]
        if v != h.field.zero:
            return x.scale(h.field.inv(v))
    raise HypothesisError("no normalized left integral", f"{h.name}: every left integral has eps = 0")


def left_cointegrals(h: BialgebraLike) -> list[Functional]:
    """Basis of {lam in H* : lam(h_2) h_1 = lam(h) 1}."""
    f, d = h.field, h.dim
    # column j of the system = the map lam -> kron(I, lam) Delta - u lam, flattened, on lam = e_j^*
    cols = []
    for j in range(d):
        lam = Matrix.basis_vector(f, d, j).T
        r = kron(h.id, lam) @ h.delta - h.unit @ lam
        cols.append(Matrix.column(f, [x for row in r.to_lists() for x in row]))
    return [Functional(v.T) for v in solve_kernel(hstack(*cols))]


def normalized_cointegral(h: BialgebraLike) -> Functional:
    for lam in left_cointegrals(h):
        v = lam(h.unit)
        if v != h.field.zero:
            return Functional(lam.coefficients.scale(h.field.inv(v)))
    raise HypothesisError("not cosemisimple", f"{h.name}: no left cointegral with lam(1) = 1")


# -- quantum commutativity --------------------------------------------------


def quantum_commutativity(h: BialgebraLike) -> tuple[bool, bool]:
    """(identity h_1 g pi_R(h_2) = h g holds, H^R is central) -- computed independently."""
    d, f, I = h.dim, h.field, h.id
    PR = pi_R_matrix(h)
    lhs = h.mult @ kron(h.mult, I) @ kron_all(I, I, PR) @ leg_permutation(f, (d, d, d), (0, 2, 1)) \
        @ kron(h.delta, I)
    identity_ok = lhs == h.mult
    central_ok = True
    for y in column_space(PR).columns():
        if h.mult @ kron(y, I) != h.mult @ kron(I, y):
            central_ok = False
            break
    return identity_ok, central_ok


def check_quantum_commutative(h: BialgebraLike) -> bool:
    h.require_antipode()
    identity_ok, central_ok = quantum_commutativity(h)
    if identity_ok != central_ok:
        raise ConsistencyError(f"quantum-commutativity tests disagree on {h.name}: "
                               f"identity={identity_ok} center={central_ok}")
    return identity_ok


def is_bialgebra_endomorphism(h: BialgebraLike, p: Matrix) -> bool:
    return (p @ h.mult == h.mult @ kron(p, p) and p @ h.unit == h.unit
            and h.delta @ p == kron(p, p) @ h.delta and h.counit @ p == h.counit)


def is_group_like(c: Coalgebra, x: Matrix) -> bool:
    return c.delta @ x == kron(x, x) and c.counit is not None and (c.counit @ x)[0, 0] == c.field.one
