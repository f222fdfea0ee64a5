"""Compare exact quasi-idempotency with seeded random-P trials of the paired identity
on every colinear quasi-idempotent map found by search, plus deliberate non-examples.

    python3 scripts/genericity_sweep.py --primes 2 3 --trials 50 --seed 0
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from dataclasses import dataclass

from rbhopf.actions import regular_comodule, trivial_dimodule
from rbhopf.kernel import GF
from rbhopf.rotabaxter import check_generic
from rbhopf.search import SearchSpec, enumerate_quasi_idempotent_colinear
from rbhopf.zoo import build_dual_group_algebra, small_coalgebras


@dataclass(frozen=True)
class SweepConfig:
    primes: tuple[int, ...] = (2, 3)
    trials: int = 50
    seed: int = 0


def comodules(f):
    for name, c in small_coalgebras(f).items():
        yield f"{name}:self", regular_comodule(c)
    yield "kC2-dual:dimodule", trivial_dimodule(build_dual_group_algebra(2, f)).com


def run(cfg: SweepConfig) -> Counter:
    tally: Counter = Counter()
    for p in cfg.primes:
        f = GF(p)
        for name, m in comodules(f):
            for w in range(p):
                found = enumerate_quasi_idempotent_colinear(m, SearchSpec(f, "quasi-idempotent-colinear", w))
                for t in found.members:
                    v = check_generic(m, t, w, cfg.trials, cfg.seed)
                    tally["generic" if v.generic else "DISAGREE"] += 1
                # a colinear non-example at the same weight: the identity when it is not quasi-idempotent
                v = check_generic(m, m.id, w, cfg.trials, cfg.seed)
                if not v.quasi_idempotent:
                    tally["refuted" if not v.all_trials_pass and v.agree else "DISAGREE"] += 1
            print(f"{name:<22}{f.name:<7} running total {dict(tally)}")
    return tally


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=list(SweepConfig.primes))
    ap.add_argument("--trials", type=int, default=SweepConfig.trials)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    a = ap.parse_args(argv)
    tally = run(SweepConfig(tuple(a.primes), a.trials, a.seed))
    print(f"summary: {dict(tally)}")
    return int(tally["DISAGREE"] > 0)


if __name__ == "__main__":
    sys.exit(main())
