"""Torus and multiplicative-YBE residuals for every in-window system up to a dimension limit.

    python scripts/residual_table.py --max-dim 1024 > residuals.csv
"""

import argparse
import csv
import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from gaussian_gybe.fz_coefficients import ModulusConfig
from gaussian_gybe.gybe_solutions import DEFAULT_SEED, check_mult_ybe, make_family, sample_pairs
from gaussian_gybe.torus_rep import build_site_system, verify_torus_relations


@dataclass
class TableConfig:
    max_dim: int = 1024
    pairs: int = 5
    seed: int = DEFAULT_SEED


def systems(max_dim):
    m = 2
    while m**3 <= max_dim:
        N = 2
        while m ** (N + math.ceil(N / 2)) <= max_dim:
            for z in range(math.ceil(N / 2), N):
                n = 3
                while m ** (N + z * (n - 2)) <= max_dim:
                    yield m, N, z, n
                    n += 1
            N += 1
        m += 1


def run(cfg: TableConfig):
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["m", "N", "z", "n", "dim", "E1", "E2", "E3", "mult_ybe", "seconds"])
    pairs = sample_pairs(np.random.default_rng(cfg.seed), cfg.pairs)
    for m, N, z, n in systems(cfg.max_dim):
        t0 = time.perf_counter()
        s = build_site_system(ModulusConfig(m), N, z, n)
        rep = verify_torus_relations(s)
        fam = make_family(s)
        ybe = max(check_mult_ybe(fam, i, a, b) for a, b in pairs for i in range(1, n - 1))
        w.writerow([m, N, z, n, s.dim, f"{rep.E1:.2e}", f"{rep.E2:.2e}", f"{rep.E3:.2e}",
                    f"{ybe:.2e}", f"{time.perf_counter() - t0:.2f}"])


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-dim", type=int, default=TableConfig.max_dim)
    p.add_argument("--pairs", type=int, default=TableConfig.pairs)
    p.add_argument("--seed", type=int, default=TableConfig.seed)
    run(TableConfig(**{k.replace("-", "_"): v for k, v in vars(p.parse_args()).items()}))
