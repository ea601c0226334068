#!/usr/bin/env python3
"""Regenerate the dimension tables for weights 1/2 and 1 and the weight-3/2 summary."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from etaforms import dims


@dataclass
class TablesConfig:
    out_dir: Path = Path("results")
    weights: tuple[str, ...] = ("1/2", "1")
    summary_weight: str = "3/2"


def main(cfg: TablesConfig) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for w in cfg.weights:
        t = time.perf_counter()
        rows = dims.table(w)
        path = cfg.out_dir / f"table_weight_{w.replace('/', '_')}.csv"
        path.write_text(dims.table_csv(rows))
        print(f"weight {w}: {len(rows)} levels -> {path} ({time.perf_counter() - t:.1f}s)")
    t = time.perf_counter()
    s = dims.weight_summary(cfg.summary_weight)
    print(f"weight {cfg.summary_weight}: {s.spaces} spaces, max level {s.max_level}, "
          f"max dimension {s.max_dim} ({time.perf_counter() - t:.1f}s)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=TablesConfig.out_dir)
    main(TablesConfig(out_dir=ap.parse_args().out_dir))
