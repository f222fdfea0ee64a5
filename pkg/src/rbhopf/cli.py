"""Command-line entry point: ``rbhopf check | construct | search | zoo``.

Exit codes: 0 all identities hold, 1 an identity fails, 2 the input could not be
read or named something that does not exist, 3 a hypothesis was violated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import fileformat as ff
from .actions import check_comodule, check_hopf_module, check_module, regular_comodule
from .errors import ConsistencyError, HypothesisError
from .kernel import Field, Matrix, parse_field, to_scalar
from .prelie import (PreLieCoalgebra, PreLieComodule, check_prelie, check_prelie_comodule,
                     prelie_comodule_from_rb, prelie_from_rb_coalgebra)
from .report import CheckReport, verdict
from .rotabaxter import (PairedOperator, RBCoalgebra, check_generic, check_rb_algebra, check_rb_coalgebra,
                         check_rb_paired_comodule, check_rb_paired_hopf_module, check_rb_paired_module, construct,
                         verify_derived_identities)
from .search import (SearchSpec, enumerate_convolution_idempotents, enumerate_paired_operators,
                     enumerate_quasi_idempotent_colinear, enumerate_rb_operators)
from .structure_theorem import verify_structure_theorem
from .structures import Coalgebra, Functional, check_bialgebra, check_coalgebra, weak_identity_suite
from .zoo import load_zoo, small_coalgebras

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 1, 2, 3

CHECKS = ("auto", "coalgebra", "bialgebra", "weak-suite", "comodule", "module", "hopf-module", "rb-coalgebra",
          "rb-algebra", "rb-paired-comodule", "rb-paired-module", "rb-paired-hopf-module", "prelie", "generic",
          "derived", "structure-theorem")


class InputError(Exception):
    """Bad command-line input; maps to exit code 2."""


# -- operator resolution ----------------------------------------------------


def resolve_map(sf: ff.StructureFile, token: str, n: int, kind: str = "square") -> Matrix:
    """A named map from the file, a JSON literal, or one of 0, id, u-eps, eps, unit."""
    fld = sf.field
    if token in sf.maps:
        return sf.maps[token]
    if token == "0":
        return Matrix.zeros(fld, n, n) if kind == "square" else Matrix.zeros(fld, *_vector_shape(kind, n))
    if token == "id":
        return Matrix.identity(fld, n)
    if token in ("u-eps", "eps", "unit"):
        if sf.counit is None or (token != "eps" and sf.unit is None):
            raise InputError(f"{token!r} needs a unit and counit in the file")
        return {"u-eps": lambda: sf.unit @ sf.counit, "eps": lambda: sf.counit, "unit": lambda: sf.unit}[token]()
    if token.lstrip().startswith("["):
        try:
            data = json.loads(token)
            return ff._any_matrix(fld, data, "--op literal")
        except (json.JSONDecodeError, ff.FileFormatError) as e:
            raise InputError(f"bad matrix literal: {e}") from None
    raise InputError(f"unknown map {token!r}; file has {sorted(sf.maps) or 'no maps'}")


def _vector_shape(kind: str, n: int) -> tuple[int, int]:
    return (n, 1) if kind == "column" else (1, n)


def _weight(sf: ff.StructureFile, text: str | None):
    if text is not None:
        try:
            return to_scalar(sf.field, text)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad weight: {e}") from None
    if sf.weight is not None:
        return sf.weight
    raise InputError("a weight is required (--weight or a 'weight' key in the file)")


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("RBHOPF_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"RBHOPF_SEED must be an integer, got {env!r}") from None


def _apply_side(sf: ff.StructureFile, side: str | None) -> None:
    if side is None:
        return
    s = {"l": "left", "left": "left", "r": "right", "right": "right"}.get(side.lower())
    if s is None:
        raise InputError(f"--side must be L or R, got {side!r}")
    if sf.carrier is None:
        raise InputError("--side needs a carrier block")
    sf.carrier.side = s


# -- check ------------------------------------------------------------------


def _auto_what(sf: ff.StructureFile) -> str:
    if sf.carrier is not None:
        if sf.carrier.flavor:
            return "hopf-module"
        return "comodule" if sf.carrier.rho is not None else "module"
    if sf.kind != "coalgebra":
        return "weak-suite" if sf.antipode is not None else "bialgebra"
    return "coalgebra"


def run_check(sf: ff.StructureFile, what: str, op: str = "P", op2: str = "T", weight: str | None = None,
              seed: int = 0, trials: int = 50) -> CheckReport:
    if what == "auto":
        what = _auto_what(sf)
    if what == "coalgebra":
        return check_coalgebra(sf.coalgebra())
    if what == "bialgebra":
        return check_bialgebra(sf.bialgebra())
    if what == "weak-suite":
        return weak_identity_suite(sf.bialgebra())
    if what == "comodule":
        return check_comodule(sf.comodule())
    if what == "module":
        return check_module(sf.module())
    if what == "hopf-module":
        return check_hopf_module(sf.hopf_module())
    if what == "prelie":
        pc = PreLieCoalgebra(sf.dim, sf.coalgebra().delta, sf.basis)
        rep = check_prelie(pc)
        if sf.carrier is not None and sf.carrier.rho is not None:
            c = sf.carrier
            rep.extend(check_prelie_comodule(PreLieComodule(pc, c.dim, c.rho, c.basis)))
        return rep

    w = _weight(sf, weight)
    if what == "rb-coalgebra":
        c = sf.coalgebra()
        return check_rb_coalgebra(c, resolve_map(sf, op, c.dim), w)
    if what == "rb-algebra":
        h = sf.bialgebra()
        return check_rb_algebra(h.alg, resolve_map(sf, op, h.dim), w, h.basis)
    if what == "rb-paired-comodule":
        m = sf.comodule()
        return check_rb_paired_comodule(m, PairedOperator(resolve_map(sf, op, m.over.dim),
                                                          resolve_map(sf, op2, m.dim), w))
    if what == "rb-paired-module":
        mod = sf.module()
        return check_rb_paired_module(mod, PairedOperator(resolve_map(sf, op, sf.dim), resolve_map(sf, op2, mod.dim), w))
    if what == "rb-paired-hopf-module":
        hm = sf.hopf_module()
        return check_rb_paired_hopf_module(hm, PairedOperator(resolve_map(sf, op, sf.dim),
                                                              resolve_map(sf, op2, hm.dim), w))
    if what == "generic":
        m = sf.comodule()
        return check_generic(m, resolve_map(sf, op2, m.dim), w, trials, seed).require_agreement().report()
    if what == "derived":
        m = sf.comodule()
        return verify_derived_identities(m, PairedOperator(resolve_map(sf, op, m.over.dim),
                                                           resolve_map(sf, op2, m.dim), w))
    if what == "structure-theorem":
        hm = sf.hopf_module()
        return verify_structure_theorem(hm, resolve_map(sf, op2, hm.dim), w, trials, seed).report
    raise InputError(f"unknown check {what!r}")


# -- construct --------------------------------------------------------------

# CLI kind -> check used to re-verify the written file
CONSTRUCT_KINDS = {
    "rb-self-comodule": "rb-paired-comodule",
    "from-augmentation": "rb-paired-comodule",
    "from-functional": "rb-paired-comodule",
    "scale": "rb-paired-comodule",
    "tensor-bialgebra": "rb-paired-comodule",
    "tensor-space": "rb-paired-comodule",
    "from-idempotent-epi": "rb-paired-comodule",
    "weak-target": "rb-paired-comodule",
    "weak-hopf-T": "rb-paired-hopf-module",
    "dimodule-T": "generic",
    "relative-E": "rb-paired-comodule",
    "bar": "rb-paired-comodule",
    "double": "rb-paired-comodule",
    "hopf-tensor-coalgebra": "rb-paired-comodule",
    "augmentation-hopf": "rb-paired-hopf-module",
    "rb-bialgebra-hopf": "rb-paired-hopf-module",
    "prelie": "prelie",
    "structure-theorem": "structure-theorem",
}


def _op(sf, args, m_dim_over: int, m_dim: int, w) -> PairedOperator:
    return PairedOperator(resolve_map(sf, args.op, m_dim_over), resolve_map(sf, args.op2, m_dim), w)


def run_construct(sf: ff.StructureFile, kind: str, args) -> tuple[ff.StructureFile, CheckReport]:
    """Build ``kind`` from the file and return the output file plus the construction report."""
    if kind not in CONSTRUCT_KINDS:
        raise InputError(f"unknown construction {kind!r}; known: {', '.join(sorted(CONSTRUCT_KINDS))}")
    seed, trials = _seed(args), args.trials
    key = kind.replace("-", "_")

    if kind == "prelie":
        w = _weight(sf, args.weight)
        c = sf.coalgebra()
        rb = RBCoalgebra(c, resolve_map(sf, args.op, c.dim), w)
        pc = prelie_from_rb_coalgebra(rb)
        out = ff.StructureFile(sf.field, pc.dim, pc.basis, "coalgebra", f"prelie({sf.name})" if sf.name else "prelie",
                               delta=pc.delta_tilde)
        rep = check_prelie(pc)
        if sf.carrier is not None and sf.carrier.rho is not None:
            m = sf.comodule()
            pm = prelie_comodule_from_rb(m, PairedOperator(rb.p, resolve_map(sf, args.op2, m.dim), w))
            out.carrier = ff.Carrier(pm.dim, pm.basis, "left", rho=pm.rho_tilde)
            rep.extend(check_prelie_comodule(pm))
        return out, rep

    if kind == "structure-theorem":
        w = _weight(sf, args.weight)
        hm = sf.hopf_module()
        t = resolve_map(sf, args.op2, hm.dim)
        res = verify_structure_theorem(hm, t, w, trials, seed)
        wit = res.witness
        maps = {"T": t, "alpha": wit.alpha, "beta": wit.beta, "T_prime": wit.t_prime,
                "coinvariants": wit.coinvariants.basis}
        out = ff.from_hopf_module(hm, sf.name, maps, w)
        return out, res.report

    inputs: dict = {}
    if kind in ("rb-self-comodule", "rb-bialgebra-hopf"):
        w = _weight(sf, args.weight)
        if kind == "rb-self-comodule":
            c = sf.coalgebra()
            inputs = {"coa": c, "p": resolve_map(sf, args.op, c.dim), "weight": w}
        else:
            h = sf.bialgebra()
            inputs = {"h": h, "p": resolve_map(sf, args.op, h.dim), "weight": w}
    elif kind == "from-augmentation":
        c = sf.coalgebra()
        inputs = {"coa": c, "grouplike": resolve_map(sf, args.op, c.dim, "column")}
    elif kind == "from-functional":
        c = sf.coalgebra()
        inputs = {"coa": c, "chi": Functional(resolve_map(sf, args.op, c.dim, "row"))}
        if sf.carrier is not None and sf.carrier.rho is not None:
            inputs["comodule"] = sf.comodule()
        if args.cointegral:
            inputs["hopf"] = sf.bialgebra()
    elif kind in ("scale", "tensor-space", "bar", "double", "tensor-bialgebra"):
        w = _weight(sf, args.weight)
        m = sf.comodule() if sf.carrier is not None else regular_comodule(sf.coalgebra())
        inputs = {"comodule": m, "op": _op(sf, args, m.over.dim, m.dim, w)}
        if kind == "scale":
            if args.mu is None:
                raise InputError("scale needs --mu")
            inputs["mu"] = _scalar(sf.field, args.mu)
        elif kind == "tensor-space":
            inputs["vdim"] = args.vdim
        elif kind == "double":
            inputs["with_bar"] = args.with_bar
        elif kind == "tensor-bialgebra":
            inputs["h"] = sf.bialgebra()
    elif kind == "from-idempotent-epi":
        m = sf.comodule() if sf.carrier is not None else regular_comodule(sf.coalgebra())
        inputs = {"comodule": m, "t": resolve_map(sf, args.op2, m.dim)}
    elif kind == "weak-target":
        inputs = {"h": sf.bialgebra(), "projection": args.projection, "domain": args.domain}
    elif kind in ("weak-hopf-T",):
        inputs = {"hm": sf.hopf_module()}
    elif kind == "dimodule-T":
        hm = sf.hopf_module()
        inputs = {"hm": hm, "e": resolve_map(sf, args.op, sf.dim, "column"), "integral": args.integral,
                  "trials": trials, "seed": seed}
    elif kind == "relative-E":
        hm = sf.hopf_module()
        inputs = {"hm": hm, "phi": resolve_map(sf, args.op, hm.module_coalgebra.coa.dim), "tensor": args.tensor}
    elif kind == "hopf-tensor-coalgebra":
        h = sf.bialgebra()
        inputs = {"h": h, "c": h.coa, "e": resolve_map(sf, args.op, h.dim, "column"), "trials": trials, "seed": seed}
    elif kind == "augmentation-hopf":
        inputs = {"h": sf.bialgebra()}

    built = construct(key, **inputs)
    op = built.op
    maps = {"P": op.p, "T": op.t}
    name = f"{kind}({sf.name})" if sf.name else kind
    if built.hopf_module is not None:
        out = ff.from_hopf_module(built.hopf_module, name, maps, op.weight)
    elif kind == "weak-target":
        out = ff.from_comodule(built.comodule, name, maps, op.weight, base=sf.bialgebra())
    else:
        out = ff.from_comodule(built.comodule, name, maps, op.weight)
    return out, built.report


def _scalar(fld: Field, text: str):
    try:
        return to_scalar(fld, text)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad scalar {text!r}: {e}") from None


# -- search -----------------------------------------------------------------

SEARCH_IDENTITIES = {"rb-ops": "rb-operator", "conv-idempotents": "conv-idempotent",
                     "quasi-idempotent-colinear": "quasi-idempotent-colinear", "paired-T": "paired-T"}


def _search_subject(args) -> tuple[ff.StructureFile, str]:
    if args.input:
        sf = ff.load(args.input)
        return sf, sf.name or Path(args.input).stem
    fld = parse_field(args.field)
    name = args.coalgebra
    small = small_coalgebras(fld)
    if name in small:
        return ff.from_coalgebra(small[name], name), name
    zoo = load_zoo(fld)
    if name not in zoo:
        raise InputError(f"unknown coalgebra {name!r}; try one of {sorted(small) + sorted(zoo)}")
    s = zoo[name].structure
    c = s if isinstance(s, Coalgebra) else getattr(s, "coa", None)
    if c is None:
        raise InputError(f"zoo entry {name!r} is not a coalgebra or bialgebra")
    return ff.from_coalgebra(c, name), name


def run_search(args) -> dict:
    sf, subject = _search_subject(args)
    identity = SEARCH_IDENTITIES[args.identity]
    weight = args.weight if args.weight is not None else (sf.weight if sf.weight is not None else 0)
    spec = SearchSpec(sf.field, identity, _scalar(sf.field, weight) if isinstance(weight, str) else weight,
                      args.mode, _seed(args), args.trials if args.trials is not None else 1000)
    c = sf.coalgebra()
    if identity == "rb-operator":
        res = enumerate_rb_operators(c, spec, subject)
    elif identity == "conv-idempotent":
        res = enumerate_convolution_idempotents(c, spec, subject=subject)
    else:
        m = sf.comodule() if sf.carrier is not None else regular_comodule(c)
        if identity == "quasi-idempotent-colinear":
            res = enumerate_quasi_idempotent_colinear(m, spec, subject=subject)
        else:
            res = enumerate_paired_operators(m, resolve_map(sf, args.op, m.over.dim), spec, subject=subject)
    return res.to_dict(include_members=args.members)


# -- zoo --------------------------------------------------------------------


def run_zoo_export(name: str, field_text: str) -> ff.StructureFile:
    zoo = load_zoo(parse_field(field_text))
    if name not in zoo:
        raise InputError(f"unknown zoo entry {name!r}; try 'rbhopf zoo list'")
    return ff.from_structure(zoo[name].structure, name)


# -- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rbhopf", description="Rota-Baxter paired comodules and Hopf modules, checked exactly.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, ops=True):
        sp.add_argument("--json", action="store_true", help="machine-readable report on stdout")
        sp.add_argument("--seed", type=int, default=None, help="trial seed (default: $RBHOPF_SEED or 0)")
        sp.add_argument("--trials", type=int, default=None, help="random-P trials (default 50)")
        if ops:
            sp.add_argument("--op", default="P", help="P: map name, JSON matrix, or 0/id/u-eps/eps/unit")
            sp.add_argument("--op2", default="T", help="T: map name, JSON matrix, or 0/id")
            sp.add_argument("--weight", default=None, help="weight lambda, e.g. -1 or 1/2")
            sp.add_argument("--side", default=None, help="override the carrier coaction side (L or R)")

    c = sub.add_parser("check", help="check a structure file")
    c.add_argument("path")
    c.add_argument("what", nargs="?", default="auto", choices=CHECKS)
    common(c)

    k = sub.add_parser("construct", help="run a construction and write its output file")
    k.add_argument("kind", choices=sorted(CONSTRUCT_KINDS))
    src = k.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="input", help="input structure file")
    src.add_argument("--zoo", help="zoo entry as input")
    k.add_argument("--field", default="Q", help="field for --zoo (Q or GF(p))")
    k.add_argument("--out", help="write the output structure file here")
    k.add_argument("--mu", help="scale factor for 'scale'")
    k.add_argument("--vdim", type=int, default=2, help="dimension of V for 'tensor-space'")
    k.add_argument("--with-bar", action="store_true", help="'double' with the barred operator pair")
    k.add_argument("--projection", choices=("L", "R"), default="L")
    k.add_argument("--domain", choices=("product", "all"), default="product")
    k.add_argument("--integral", action="store_true", help="'dimodule-T': require a normalized left integral")
    k.add_argument("--tensor", action="store_true", help="'relative-E': run on H (x) M")
    k.add_argument("--cointegral", action="store_true", help="'from-functional': require a normalized cointegral")
    common(k)

    s = sub.add_parser("search", help="exhaustive or randomized enumeration")
    s.add_argument("identity", choices=sorted(SEARCH_IDENTITIES))
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--coalgebra", help="built-in coalgebra name (k, kC2, kC2-dual, primitive, or a zoo entry)")
    src.add_argument("--in", dest="input", help="structure file")
    s.add_argument("--field", default="GF(2)")
    s.add_argument("--mode", choices=("exhaustive", "randomized"), default="exhaustive")
    s.add_argument("--members", action="store_true", help="include the member list in the report")
    common(s)

    z = sub.add_parser("zoo", help="list or export built-in structures")
    zs = z.add_subparsers(dest="zoo_command", required=True)
    zl = zs.add_parser("list")
    zl.add_argument("--field", default="Q")
    zl.add_argument("--json", action="store_true")
    ze = zs.add_parser("export")
    ze.add_argument("name")
    ze.add_argument("--field", default="Q")
    ze.add_argument("--out", help="output path (default stdout)")
    ze.add_argument("--json", action="store_true")
    return p


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    elif text:
        print(text)


def _dispatch(args) -> tuple[int, dict, str]:
    if args.command == "check":
        sf = ff.load(args.path)
        _apply_side(sf, args.side)
        rep = run_check(sf, args.what, args.op, args.op2, args.weight, _seed(args),
                        args.trials if args.trials is not None else 50)
        code = EXIT_PASS if rep.ok else EXIT_FAIL
        return code, {"command": "check", "what": args.what, "exit": code, "report": rep.to_dict()}, rep.format()

    if args.command == "construct":
        if args.trials is None:
            args.trials = 50
        if args.input:
            sf = ff.load(args.input)
        else:
            sf = run_zoo_export(args.zoo, args.field)
        _apply_side(sf, args.side)
        out, rep = run_construct(sf, args.kind, args)
        text = ff.dumps(out)
        reloaded = ff.loads(text)
        if ff.dumps(reloaded) != text:
            raise ConsistencyError("output file does not round-trip")
        recheck_kind = CONSTRUCT_KINDS[args.kind]
        recheck = run_check(reloaded, recheck_kind, "P", "T", None, _seed(args), args.trials)
        rep.add(verdict("reload-recheck", recheck.ok, recheck_kind))
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        code = EXIT_PASS if rep.ok else EXIT_FAIL
        payload = {"command": "construct", "kind": args.kind, "exit": code, "report": rep.to_dict(),
                   "recheck": recheck.to_dict()}
        if not args.out:
            payload["output"] = json.loads(text)
        human = rep.format() + ("" if args.out else "\n" + text.rstrip())
        return code, payload, human

    if args.command == "search":
        result = run_search(args)
        line = f"{result['identity']} on {result['subject']} over {result['field']} (weight {result['weight']}): " \
               f"{result['count']} of {result['examined']}"
        if "members" in result:
            line += "\n" + "\n".join(json.dumps(m) for m in result["members"])
        return EXIT_PASS, {"command": "search", "exit": EXIT_PASS, "result": result}, line

    if args.command == "zoo":
        if args.zoo_command == "list":
            zoo = load_zoo(parse_field(args.field))
            rows = [{"name": n, "type": type(e.structure).__name__, "note": e.provenance} for n, e in zoo.items()]
            text = "\n".join(f"{r['name']:<32} {r['type']:<14} {r['note']}" for r in rows)
            return EXIT_PASS, {"command": "zoo list", "exit": EXIT_PASS, "entries": rows}, text
        sf = run_zoo_export(args.name, args.field)
        text = ff.dumps(sf)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
            return EXIT_PASS, {"command": "zoo export", "exit": EXIT_PASS, "name": args.name, "out": args.out}, ""
        return EXIT_PASS, {"command": "zoo export", "exit": EXIT_PASS, "name": args.name,
                           "output": json.loads(text)}, text.rstrip()
    raise InputError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_PASS
    try:
        code, payload, text = _dispatch(args)
    except HypothesisError as e:
        return _fail(args, EXIT_HYPOTHESIS, "hypothesis", e.reason, e.detail)
    except (InputError, ff.FileFormatError, ValueError) as e:
        return _fail(args, EXIT_INPUT, "input", type(e).__name__, str(e))
    except ConsistencyError as e:
        return _fail(args, EXIT_FAIL, "consistency", "independent routes disagree", str(e))
    _emit(args, payload, text)
    return code


def _fail(args, code: int, kind: str, reason: str, detail: str) -> int:
    payload = {"command": getattr(args, "command", None), "exit": code,
               "error": {"type": kind, "reason": reason, "detail": detail}}
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(f"error ({kind}): {reason}" + (f"\n{detail}" if detail else ""), file=sys.stderr)
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
