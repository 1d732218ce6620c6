"""Worst residual of the scalar star-triangle identity per m, for both phase conventions."""

import argparse
import itertools
from dataclasses import dataclass

import numpy as np

from gaussian_gybe.fz_coefficients import ModulusConfig, verify_star_triangle_scalar
from gaussian_gybe.gybe_solutions import DEFAULT_SEED


@dataclass
class StarConfig:
    max_m: int = 7
    draws: int = 5
    seed: int = DEFAULT_SEED


def run(cfg: StarConfig):
    rng = np.random.default_rng(cfg.seed)
    print(f"{'m':>3} {'printed':>10} {'corrected':>10} {'printed ok triples':>20}")
    for m in range(2, cfg.max_m + 1):
        c = ModulusConfig(m)
        worst = {"printed": 0.0, "corrected": 0.0}
        good = set(itertools.product(range(m), repeat=3))
        for _ in range(cfg.draws):
            u, v = rng.uniform(-np.pi / 2, np.pi / 2, 2), rng.uniform(-1, 1, 2)
            al, alp = complex(u[0], v[0]), complex(u[1], v[1])
            for ns in itertools.product(range(m), repeat=3):
                for form in worst:
                    r = verify_star_triangle_scalar(c, *ns, al, alp, form=form)
                    worst[form] = max(worst[form], r)
                    if form == "printed" and r > 1e-9:
                        good.discard(ns)
        print(f"{m:>3} {worst['printed']:>10.2e} {worst['corrected']:>10.2e} {len(good):>10}/{m**3}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-m", type=int, default=StarConfig.max_m)
    p.add_argument("--draws", type=int, default=StarConfig.draws)
    a = p.parse_args()
    run(StarConfig(max_m=a.max_m, draws=a.draws))
