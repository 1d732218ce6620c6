"""Compare S|k>^N with the closed-form amplitudes, with and without the prefactor on M."""

import argparse
import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from gaussian_gybe.entangled_states import analytic_amplitudes, apply_to_product_state, fix_global_phase
from gaussian_gybe.fz_coefficients import ModulusConfig
from gaussian_gybe.gybe_solutions import gaussian_site_operator
from gaussian_gybe.torus_rep import build_paulis


@dataclass
class PhaseConfig:
    moduli: list = field(default_factory=lambda: [3, 5, 7])
    arities: list = field(default_factory=lambda: [2, 3, 4])


def bare_gaussian(cfg, N):
    p = build_paulis(cfg)
    M = reduce(np.kron, [p.sigma_x] + [p.sigma_y] * (N - 1))
    return sum(cfg.q_pow(j * j) * np.linalg.matrix_power(M, j) for j in range(cfg.m)) / math.sqrt(cfg.m)


def gap(S, cfg, N):
    return max(np.max(np.abs(fix_global_phase(apply_to_product_state(S, cfg.m, N, k).amplitudes)
                             - fix_global_phase(analytic_amplitudes(cfg, k, N)))) for k in range(cfg.m))


def run(pc: PhaseConfig):
    print(f"{'m':>3} {'N':>3} {'with prefactor':>15} {'without':>10}")
    for m in pc.moduli:
        for N in pc.arities:
            if m**N > 2500:
                continue
            cfg = ModulusConfig(m)
            print(f"{m:>3} {N:>3} {gap(gaussian_site_operator(cfg, N), cfg, N):>15.2e} "
                  f"{gap(bare_gaussian(cfg, N), cfg, N):>10.2e}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--moduli", type=int, nargs="+", default=PhaseConfig().moduli)
    p.add_argument("--arities", type=int, nargs="+", default=PhaseConfig().arities)
    a = p.parse_args()
    run(PhaseConfig(a.moduli, a.arities))
