#!/usr/bin/env python3
"""Enumerate admissible eta-quotients and write them as JSON lines plus a per-level count."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from etaforms import search


@dataclass
class CensusConfig:
    levels: tuple[int, ...] = search.TYPE_I_LEVELS
    types: tuple[str, ...] = ("I",)
    include_constant: bool = False
    threads: int = 1
    out: Path = Path("results/census.jsonl")


def main(cfg: CensusConfig) -> None:
    t = time.perf_counter()
    recs = search.search_admissible(cfg.levels, cfg.types, include_constant=cfg.include_constant,
                                    threads=cfg.threads)
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    with cfg.out.open("w", encoding="utf-8") as fh:
        for r in recs:
            fh.write(json.dumps(r.to_json()) + "\n")
    for N, c in sorted(search.census(recs).items()):
        print(f"N={N:4d}  {c}")
    print(f"total {len(recs)} records in {time.perf_counter() - t:.1f}s -> {cfg.out}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", help="comma separated levels or a..b")
    ap.add_argument("--type", choices=("I", "II", "both"), default="I")
    ap.add_argument("--include-constant", action="store_true")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", type=Path, default=CensusConfig.out)
    a = ap.parse_args()
    cfg = CensusConfig(types={"I": ("I",), "II": ("II",), "both": ("I", "II")}[a.type],
                       include_constant=a.include_constant, threads=a.threads, out=a.out)
    if a.levels:
        lo, _, hi = a.levels.partition("..")
        cfg.levels = tuple(range(int(lo), int(hi) + 1)) if hi else tuple(int(v) for v in a.levels.split(","))
    main(cfg)
