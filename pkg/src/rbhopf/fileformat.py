"""JSON structure files with exact string scalars.

A file describes one coalgebra or bialgebra, optionally a carrier (comodule,
module, or both) over it, optionally a module coalgebra for relative Hopf
modules, and any number of named matrices under ``maps``. Unknown keys are
rejected at every level. :func:`dumps` is canonical: sorted keys, two-space
indent, trailing newline, so ``dumps(loads(text)) == text`` for canonical text.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .actions import (Comodule, HopfModule, ModuleCarrier, ModuleCoalgebra, regular_comodule,
                      regular_left_hopf_module, regular_right_hopf_module)
from .errors import HypothesisError, RBHopfError
from .kernel import Field, Matrix, parse_field
from .structures import AlgebraStruct, BialgebraLike, Coalgebra


class FileFormatError(RBHopfError, ValueError):
    """The document is not a well-formed structure file."""


TOP_KEYS = {"field", "dim", "basis", "name", "kind", "mult", "unit", "delta", "counit",
            "antipode", "weight", "maps", "carrier", "module_coalgebra"}
CARRIER_KEYS = {"dim", "basis", "side", "rho", "action", "flavor"}
MODULE_COALGEBRA_KEYS = {"dim", "basis", "delta", "counit", "action"}
KINDS = ("coalgebra", "strict", "weak")
FLAVORS = ("left-hopf", "weak-right-hopf", "dimodule", "relative")
# the module side each flavor implies; the "side" key is always the coaction side
FLAVOR_MODULE_SIDE = {"left-hopf": "left", "weak-right-hopf": "right", "dimodule": "left", "relative": "right"}


@dataclass
class Carrier:
    dim: int
    basis: tuple[str, ...]
    side: str
    rho: Matrix | None = None
    action: Matrix | None = None
    flavor: str | None = None


@dataclass
class StructureFile:
    field: Field
    dim: int
    basis: tuple[str, ...]
    kind: str = "coalgebra"
    name: str = ""
    delta: Matrix | None = None
    counit: Matrix | None = None
    mult: Matrix | None = None
    unit: Matrix | None = None
    antipode: Matrix | None = None
    weight: object = None
    maps: dict[str, Matrix] = dc_field(default_factory=dict)
    carrier: Carrier | None = None
    module_coalgebra: ModuleCoalgebra | None = None

    # -- views ---------------------------------------------------------------

    def coalgebra(self) -> Coalgebra:
        if self.delta is None:
            raise HypothesisError("missing structure", "file has no delta")
        return Coalgebra(self.dim, self.delta, self.counit, self.basis)

    def bialgebra(self) -> BialgebraLike:
        if self.kind == "coalgebra" or self.mult is None or self.unit is None:
            raise HypothesisError("missing structure", "file does not describe a bialgebra")
        return BialgebraLike(AlgebraStruct(self.dim, self.mult, self.unit), self.coalgebra(),
                             self.kind, self.antipode, self.name)

    def _regular(self) -> HopfModule:
        h = self.bialgebra()
        return regular_right_hopf_module(h) if h.kind == "weak" else regular_left_hopf_module(h)

    def comodule(self) -> Comodule:
        """The carrier's comodule; without a carrier, the coalgebra coacting on itself."""
        if self.carrier is None:
            if self.kind != "coalgebra" and self.mult is not None:
                return self._regular().com
            return regular_comodule(self.coalgebra())
        c = self.carrier
        if c.rho is None:
            raise HypothesisError("missing structure", "carrier has no rho")
        over = self.module_coalgebra.coa if c.flavor == "relative" else self.coalgebra()
        return Comodule(over, c.dim, c.side, c.rho, c.basis)

    def module(self) -> ModuleCarrier:
        if self.carrier is None:
            return self._regular().mod
        c = self.carrier
        if c.action is None:
            raise HypothesisError("missing structure", "carrier has no action")
        side = FLAVOR_MODULE_SIDE[c.flavor] if c.flavor else c.side
        return ModuleCarrier(self.bialgebra(), c.dim, side, c.action, c.basis)

    def hopf_module(self) -> HopfModule:
        if self.carrier is None:
            return self._regular()
        c = self.carrier
        if c.flavor is None:
            raise HypothesisError("missing structure", "carrier has no flavor")
        return HopfModule(self.module(), self.comodule(), c.flavor, self.module_coalgebra, self.name)

    def map(self, name: str) -> Matrix:
        try:
            return self.maps[name]
        except KeyError:
            raise FileFormatError(f"no map named {name!r}; have {sorted(self.maps)}") from None


# -- parsing ----------------------------------------------------------------


def _require(d: dict, key: str, where: str):
    if key not in d:
        raise FileFormatError(f"{where}: missing key {key!r}")
    return d[key]


def _check_keys(d, allowed: set, where: str) -> None:
    if not isinstance(d, dict):
        raise FileFormatError(f"{where}: expected an object")
    extra = sorted(set(d) - allowed)
    if extra:
        raise FileFormatError(f"{where}: unknown keys {extra}")


def _int(x, where: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise FileFormatError(f"{where}: expected a non-negative integer")
    return x


def _basis(x, n: int, where: str) -> tuple[str, ...]:
    if not isinstance(x, list) or len(x) != n or not all(isinstance(s, str) for s in x):
        raise FileFormatError(f"{where}: basis must be a list of {n} strings")
    if len(set(x)) != n:
        raise FileFormatError(f"{where}: basis names must be distinct")
    return tuple(x)


def _matrix(fld: Field, x, shape: tuple[int, int], where: str) -> Matrix:
    rows, cols = shape
    if not isinstance(x, list) or len(x) != rows:
        raise FileFormatError(f"{where}: expected {rows} rows")
    for r in x:
        if not isinstance(r, list) or len(r) != cols:
            raise FileFormatError(f"{where}: expected {rows}x{cols} matrix")
        for s in r:
            if not isinstance(s, str):
                raise FileFormatError(f"{where}: scalars must be strings, got {s!r}")
    try:
        return Matrix(fld, [[fld.parse(s) for s in r] for r in x], rows, cols)
    except ValueError as e:
        raise FileFormatError(f"{where}: {e}") from None


def _any_matrix(fld: Field, x, where: str) -> Matrix:
    if not isinstance(x, list) or not x or not isinstance(x[0], list):
        raise FileFormatError(f"{where}: expected a non-empty nested array")
    return _matrix(fld, x, (len(x), len(x[0])), where)


def from_dict(d: dict) -> StructureFile:
    _check_keys(d, TOP_KEYS, "file")
    try:
        fld = parse_field(str(_require(d, "field", "file")))
    except ValueError as e:
        raise FileFormatError(f"file: {e}") from None
    n = _int(_require(d, "dim", "file"), "dim")
    basis = _basis(_require(d, "basis", "file"), n, "basis")
    kind = d.get("kind", "coalgebra")
    if kind not in KINDS:
        raise FileFormatError(f"kind must be one of {KINDS}")
    name = d.get("name", "")
    if not isinstance(name, str):
        raise FileFormatError("name must be a string")
    sf = StructureFile(fld, n, basis, kind, name)
    if "delta" in d:
        sf.delta = _matrix(fld, d["delta"], (n * n, n), "delta")
    if "counit" in d:
        sf.counit = _matrix(fld, d["counit"], (1, n), "counit")
    if "mult" in d:
        sf.mult = _matrix(fld, d["mult"], (n, n * n), "mult")
    if "unit" in d:
        sf.unit = _matrix(fld, d["unit"], (n, 1), "unit")
    if "antipode" in d:
        sf.antipode = _matrix(fld, d["antipode"], (n, n), "antipode")
    if kind != "coalgebra" and (sf.mult is None or sf.unit is None or sf.delta is None or sf.counit is None):
        raise FileFormatError(f"kind {kind!r} needs mult, unit, delta and counit")
    if "weight" in d:
        if not isinstance(d["weight"], str):
            raise FileFormatError("weight must be a string scalar")
        try:
            sf.weight = fld.parse(d["weight"])
        except ValueError as e:
            raise FileFormatError(f"weight: {e}") from None
    maps = d.get("maps", {})
    if not isinstance(maps, dict):
        raise FileFormatError("maps must be an object")
    sf.maps = {k: _any_matrix(fld, v, f"maps.{k}") for k, v in maps.items()}

    mc_dim = None
    if "module_coalgebra" in d:
        m = d["module_coalgebra"]
        _check_keys(m, MODULE_COALGEBRA_KEYS, "module_coalgebra")
        k = _int(_require(m, "dim", "module_coalgebra"), "module_coalgebra.dim")
        coa = Coalgebra(k, _matrix(fld, _require(m, "delta", "module_coalgebra"), (k * k, k), "module_coalgebra.delta"),
                        _matrix(fld, _require(m, "counit", "module_coalgebra"), (1, k), "module_coalgebra.counit"),
                        _basis(_require(m, "basis", "module_coalgebra"), k, "module_coalgebra.basis"))
        act = _matrix(fld, _require(m, "action", "module_coalgebra"), (k, k * n), "module_coalgebra.action")
        sf.module_coalgebra = ModuleCoalgebra(coa, sf.bialgebra(), act)
        mc_dim = k

    if "carrier" in d:
        c = d["carrier"]
        _check_keys(c, CARRIER_KEYS, "carrier")
        m = _int(_require(c, "dim", "carrier"), "carrier.dim")
        cb = _basis(_require(c, "basis", "carrier"), m, "carrier.basis")
        side = _require(c, "side", "carrier")
        if side not in ("left", "right"):
            raise FileFormatError("carrier.side must be 'left' or 'right'")
        flavor = c.get("flavor")
        if flavor is not None and flavor not in FLAVORS:
            raise FileFormatError(f"carrier.flavor must be one of {FLAVORS}")
        car = Carrier(m, cb, side, flavor=flavor)
        co_dim = mc_dim if flavor == "relative" else n
        if flavor == "relative" and mc_dim is None:
            raise FileFormatError("relative flavor needs a module_coalgebra block")
        if "rho" in c:
            car.rho = _matrix(fld, c["rho"], (co_dim * m, m), "carrier.rho")
        if "action" in c:
            car.action = _matrix(fld, c["action"], (m, n * m), "carrier.action")
        if flavor is not None and (car.rho is None or car.action is None):
            raise FileFormatError("a flavored carrier needs both rho and action")
        sf.carrier = car
    return sf


def loads(text: str) -> StructureFile:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"invalid JSON: {e}") from None
    return from_dict(d)


def load(path) -> StructureFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FileFormatError(f"cannot read {path}: {e}") from None
    return loads(text)


# -- serialization ----------------------------------------------------------


def _fmt(m: Matrix) -> list[list[str]]:
    return [[m.field.format(x) for x in row] for row in m.to_lists()]


def to_dict(sf: StructureFile) -> dict:
    d: dict = {"field": sf.field.name, "dim": sf.dim, "basis": list(sf.basis), "kind": sf.kind}
    if sf.name:
        d["name"] = sf.name
    for key in ("delta", "counit", "mult", "unit", "antipode"):
        v = getattr(sf, key)
        if v is not None:
            d[key] = _fmt(v)
    if sf.weight is not None:
        d["weight"] = sf.field.format(sf.weight)
    if sf.maps:
        d["maps"] = {k: _fmt(v) for k, v in sf.maps.items()}
    if sf.module_coalgebra is not None:
        mc = sf.module_coalgebra
        d["module_coalgebra"] = {"dim": mc.coa.dim, "basis": list(mc.coa.basis), "delta": _fmt(mc.coa.delta),
                                 "counit": _fmt(mc.coa.counit), "action": _fmt(mc.action)}
    if sf.carrier is not None:
        c = sf.carrier
        cd: dict = {"dim": c.dim, "basis": list(c.basis), "side": c.side}
        if c.rho is not None:
            cd["rho"] = _fmt(c.rho)
        if c.action is not None:
            cd["action"] = _fmt(c.action)
        if c.flavor is not None:
            cd["flavor"] = c.flavor
        d["carrier"] = cd
    return d


def dumps(sf: StructureFile) -> str:
    return json.dumps(to_dict(sf), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def dump(sf: StructureFile, path) -> None:
    Path(path).write_text(dumps(sf), encoding="utf-8")


# -- building files from structures -----------------------------------------


def from_coalgebra(c: Coalgebra, name: str = "", maps: dict | None = None, weight=None) -> StructureFile:
    return StructureFile(c.field, c.dim, tuple(c.basis), "coalgebra", name, c.delta, c.counit,
                         weight=weight, maps=dict(maps or {}))


def from_bialgebra(h: BialgebraLike, name: str = "", maps: dict | None = None, weight=None) -> StructureFile:
    return StructureFile(h.field, h.dim, tuple(h.basis), h.kind, name or h.name, h.delta, h.counit,
                         h.mult, h.unit, h.antipode, weight, dict(maps or {}))


def _base_file(over, name, maps, weight) -> StructureFile:
    if isinstance(over, BialgebraLike):
        return from_bialgebra(over, name, maps, weight)
    return from_coalgebra(over, name, maps, weight)


def from_comodule(m: Comodule, name: str = "", maps: dict | None = None, weight=None,
                  base: BialgebraLike | None = None) -> StructureFile:
    sf = _base_file(base or m.over, name, maps, weight)
    sf.carrier = Carrier(m.dim, tuple(m.basis), m.side, rho=m.rho)
    return sf


def from_module(mod: ModuleCarrier, name: str = "", maps: dict | None = None, weight=None) -> StructureFile:
    sf = from_bialgebra(mod.over, name, maps, weight)
    sf.carrier = Carrier(mod.dim, tuple(mod.basis), mod.side, action=mod.action)
    return sf


def from_hopf_module(hm: HopfModule, name: str = "", maps: dict | None = None, weight=None) -> StructureFile:
    sf = from_bialgebra(hm.hopf, name or hm.name, maps, weight)
    sf.carrier = Carrier(hm.dim, tuple(hm.basis), hm.com.side, hm.com.rho, hm.mod.action, hm.flavor)
    sf.module_coalgebra = hm.module_coalgebra
    return sf


def from_structure(s, name: str = "") -> StructureFile:
    if isinstance(s, HopfModule):
        return from_hopf_module(s, name)
    if isinstance(s, Comodule):
        return from_comodule(s, name)
    if isinstance(s, BialgebraLike):
        return from_bialgebra(s, name)
    if isinstance(s, Coalgebra):
        return from_coalgebra(s, name)
    raise TypeError(f"cannot serialize {type(s).__name__}")
