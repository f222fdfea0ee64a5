"""Regenerate tests/golden/search_counts.json from the registered golden searches.

    python3 scripts/make_golden.py            # write the file
    python3 scripts/make_golden.py --check    # exit 1 if the file is stale
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from rbhopf.search import golden_table

ROOT = Path(__file__).resolve().parent.parent


@dataclass(frozen=True)
class GoldenConfig:
    out: Path = ROOT / "tests" / "golden" / "search_counts.json"
    check: bool = False


def render() -> str:
    return json.dumps(golden_table(), indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=GoldenConfig.out)
    ap.add_argument("--check", action="store_true")
    cfg = GoldenConfig(**vars(ap.parse_args(argv)))
    text = render()
    if cfg.check:
        stale = not cfg.out.exists() or cfg.out.read_text() != text
        print("stale" if stale else "up to date")
        return int(stale)
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(text)
    print(f"wrote {len(json.loads(text))} entries to {cfg.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
