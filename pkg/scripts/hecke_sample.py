#!/usr/bin/env python3
"""Check T_l f = c_l f for a spread of admissible eta-quotients and report eigenvalues."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from etaforms.etaquot import parse
from etaforms.hecke import HeckeContext, L_f_upto, eigenvalue, required_terms, verify_eigenform
from etaforms.qseries import expand


@dataclass
class HeckeConfig:
    quotients: list[str] = field(default_factory=lambda: [
        "1^1", "1^2", "1^8", "3^2 9^-1 27^1", "1^1 2^1 3^1 6^3",
        "1^1 2^-1 3^-1 4^1 6^4 12^-2", "1^-7 2^17 4^-3",
    ])
    lmax: int = 121
    nmax: int = 40
    show: int = 6  # eigenvalues printed per quotient


def main(cfg: HeckeConfig) -> None:
    total = time.perf_counter()
    for text in cfg.quotients:
        f = parse(text)
        t = time.perf_counter()
        rep = verify_eigenform(f, cfg.lmax, cfg.nmax)
        ctx = HeckeContext.of(f)
        ser = expand(f, required_terms(ctx, cfg.lmax, 0))
        ls = L_f_upto(f, cfg.lmax)[1:cfg.show + 1]
        eig = ", ".join(f"c_{l}={eigenvalue(ctx, ser, l).to_complex().real:.4g}" for l in ls)
        status = "ok" if rep.ok else f"{len(rep.failures)} FAILURES"
        print(f"{text:32s} N={f.N:3d} k={str(f.weight):5s} {rep.checked:5d} checks {status} "
              f"({time.perf_counter() - t:.1f}s)  {eig}")
    print(f"done in {time.perf_counter() - total:.1f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lmax", type=int, default=121)
    ap.add_argument("--nmax", type=int, default=40)
    ap.add_argument("quotients", nargs="*")
    a = ap.parse_args()
    cfg = HeckeConfig(lmax=a.lmax, nmax=a.nmax)
    if a.quotients:
        cfg.quotients = a.quotients
    main(cfg)
