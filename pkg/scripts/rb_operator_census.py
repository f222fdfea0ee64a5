"""Count Rota-Baxter operators, convolution idempotents and quasi-idempotent colinear maps
on every small coalgebra over GF(p), for every weight, by exhaustive enumeration.

    python3 scripts/rb_operator_census.py --primes 2 3 5 --out census.json
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from rbhopf.actions import regular_comodule
from rbhopf.kernel import GF
from rbhopf.search import (SearchSpec, enumerate_convolution_idempotents, enumerate_quasi_idempotent_colinear,
                           enumerate_rb_operators)
from rbhopf.zoo import build_group_algebra, small_coalgebras


@dataclass(frozen=True)
class CensusConfig:
    primes: tuple[int, ...] = (2, 3, 5)
    include_kc3: bool = False
    out: Path | None = None


@dataclass
class CensusRow:
    coalgebra: str
    field: str
    weight: str
    rb_operators: int
    quasi_idempotent_colinear: int
    seconds: float


@dataclass
class Census:
    config: dict
    rows: list[CensusRow] = field(default_factory=list)
    conv_idempotents: dict[str, int] = field(default_factory=dict)


def coalgebras(f, include_kc3: bool):
    out = dict(small_coalgebras(f))
    if include_kc3:
        out["kC3"] = build_group_algebra(3, f).coa
    return out


def run(cfg: CensusConfig) -> Census:
    census = Census({k: (str(v) if isinstance(v, Path) else v) for k, v in asdict(cfg).items()})
    for p in cfg.primes:
        f = GF(p)
        for name, c in coalgebras(f, cfg.include_kc3).items():
            census.conv_idempotents[f"{name}/{f.name}"] = enumerate_convolution_idempotents(c).count
            m = regular_comodule(c)
            for w in range(p):
                t0 = time.perf_counter()
                rb = enumerate_rb_operators(c, SearchSpec(f, weight=w))
                q = (enumerate_quasi_idempotent_colinear(m, SearchSpec(f, "quasi-idempotent-colinear", w))
                     if c.dim <= 2 else None)
                census.rows.append(CensusRow(name, f.name, f.format(f.reduce(w)), rb.count,
                                             q.count if q else -1, round(time.perf_counter() - t0, 3)))
    return census


def render(c: Census) -> str:
    lines = [f"{'coalgebra':<12}{'field':<8}{'weight':>7}{'RB ops':>9}{'quasi-id':>10}"]
    for r in c.rows:
        lines.append(f"{r.coalgebra:<12}{r.field:<8}{r.weight:>7}{r.rb_operators:>9}{r.quasi_idempotent_colinear:>10}")
    lines.append("")
    lines.append("convolution idempotents: " + ", ".join(f"{k}={v}" for k, v in c.conv_idempotents.items()))
    return "\n".join(lines)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=list(CensusConfig.primes))
    ap.add_argument("--include-kc3", action="store_true")
    ap.add_argument("--out", type=Path)
    a = ap.parse_args(argv)
    cfg = CensusConfig(tuple(a.primes), a.include_kc3, a.out)
    census = run(cfg)
    print(render(census))
    if cfg.out:
        cfg.out.write_text(json.dumps({"config": census.config, "rows": [asdict(r) for r in census.rows],
                                       "conv_idempotents": census.conv_idempotents}, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
