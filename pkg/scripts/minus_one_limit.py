"""Behaviour of the normalized coefficients on both sides of a = -1 for even m.

Prints the distance of X~(-1 +- eps) from the closed value at a = -1 and from its negative.
"""

import argparse
from dataclasses import dataclass, field

import numpy as np

from gaussian_gybe.fz_coefficients import ModulusConfig, x_tilde


@dataclass
class LimitConfig:
    moduli: list = field(default_factory=lambda: [2, 4, 6, 8])
    eps: list = field(default_factory=lambda: [1e-2, 1e-3, 1e-4, 1e-5, 1e-6])


def run(cfg: LimitConfig):
    print(f"{'m':>3} {'side':>5} {'eps':>8} {'|X~ - closed|':>14} {'|X~ + closed|':>14}")
    for m in cfg.moduli:
        closed = x_tilde(ModulusConfig(m), -1.0).values
        for side, sign in (("a<-1", -1), ("a>-1", 1)):
            for e in cfg.eps:
                v = x_tilde(ModulusConfig(m), -1 + sign * e).values
                print(f"{m:>3} {side:>5} {e:>8.0e} {np.max(np.abs(v - closed)):>14.3e} "
                      f"{np.max(np.abs(v + closed)):>14.3e}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--moduli", type=int, nargs="+", default=LimitConfig().moduli)
    run(LimitConfig(moduli=p.parse_args().moduli))
