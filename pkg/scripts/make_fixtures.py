"""Write the static CLI fixtures under tests/fixtures.

    python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

from rbhopf.fileformat import dumps, from_bialgebra
from rbhopf.kernel import QQ, Matrix
from rbhopf.zoo import build_group_algebra

ROOT = Path(__file__).resolve().parent.parent


@dataclass(frozen=True)
class FixtureConfig:
    out_dir: Path = ROOT / "tests" / "fixtures"


def fixtures() -> dict[str, str]:
    h = build_group_algebra(2, QQ)
    u_eps = h.unit @ h.counit
    out = {
        # P = u eps, weight -1: passes rb-coalgebra and rb-paired-comodule
        "kc2_augmentation.json": dumps(from_bialgebra(h, "kC2", maps={"P": u_eps}, weight=-1)),
        # P(1) = 0, P(g) = g at weight 0: fails rb-coalgebra at g
        "kc2_bad_p.json": dumps(from_bialgebra(h, "kC2", maps={"P": Matrix(QQ, [[0, 0], [0, 1]])}, weight=0)),
    }
    # a syntactically valid file with an unknown key: input error
    bad = json.loads(out["kc2_augmentation.json"])
    bad["colour"] = "blue"
    out["kc2_unknown_key.json"] = json.dumps(bad, indent=2, sort_keys=True) + "\n"
    # a non-reduced rational scalar: input error
    frac = json.loads(out["kc2_augmentation.json"])
    frac["counit"] = [["2/2", "1"]]
    out["kc2_unreduced.json"] = json.dumps(frac, indent=2, sort_keys=True) + "\n"
    return out


def main() -> int:
    cfg = FixtureConfig()
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for name, text in fixtures().items():
        (cfg.out_dir / name).write_text(text)
        print(f"wrote {cfg.out_dir / name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
