"""Push every searched Rota-Baxter coalgebra and paired self-comodule of weight 0 or -1
through the pre-Lie construction and record how many satisfy the axiom.

    python3 scripts/prelie_functor_sweep.py --primes 2 3
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from rbhopf.actions import regular_comodule
from rbhopf.kernel import GF
from rbhopf.prelie import check_prelie, check_prelie_comodule, prelie_comodule_from_rb, prelie_from_rb_coalgebra
from rbhopf.rotabaxter import PairedOperator, RBCoalgebra
from rbhopf.search import SearchSpec, enumerate_paired_operators, enumerate_rb_operators
from rbhopf.zoo import small_coalgebras


@dataclass(frozen=True)
class PreLieSweepConfig:
    primes: tuple[int, ...] = (2, 3)


def run(cfg: PreLieSweepConfig) -> tuple[int, int, int]:
    coalg = com = failures = 0
    for p in cfg.primes:
        f = GF(p)
        for name, c in small_coalgebras(f).items():
            m = regular_comodule(c)
            for w in sorted({0, f.reduce(-1)}):
                for q in enumerate_rb_operators(c, SearchSpec(f, weight=w)).members:
                    coalg += 1
                    failures += not check_prelie(prelie_from_rb_coalgebra(RBCoalgebra(c, q, w))).ok
                    for t in enumerate_paired_operators(m, q, SearchSpec(f, "paired-T", w)).members:
                        com += 1
                        out = prelie_comodule_from_rb(m, PairedOperator(q, t, w))
                        failures += not check_prelie_comodule(out).ok
            print(f"{name:<10}{f.name:<7} coalgebras={coalg} comodules={com} failures={failures}")
    return coalg, com, failures


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=list(PreLieSweepConfig.primes))
    a = ap.parse_args(argv)
    _, _, failures = run(PreLieSweepConfig(tuple(a.primes)))
    return int(failures > 0)


if __name__ == "__main__":
    sys.exit(main())
