#!/usr/bin/env python3
"""Maximum deviation between eta-quotient and Eisenstein coefficients as c_max grows."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from etaforms.eisenstein import IDENTITY_PARAMETERS, EisParams, verify_identity


@dataclass
class ConvergenceConfig:
    c_values: tuple[int, ...] = (250, 500, 1000, 2000)
    n_max: int = 8


def main(cfg: ConvergenceConfig) -> None:
    print("params        " + "".join(f"{c:>12d}" for c in cfg.c_values))
    for name, (r2, r4) in IDENTITY_PARAMETERS.items():
        t = time.perf_counter()
        errs = [verify_identity(EisParams(r2, r4, c_max=c), n_max=cfg.n_max).max_error
                for c in cfg.c_values]
        print(f"{name:12s}  " + "".join(f"{e:12.2e}" for e in errs)
              + f"   ({time.perf_counter() - t:.1f}s)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cmax", type=int, nargs="+", default=list(ConvergenceConfig.c_values))
    ap.add_argument("--nmax", type=int, default=8)
    a = ap.parse_args()
    main(ConvergenceConfig(c_values=tuple(a.cmax), n_max=a.nmax))
