"""Command-line front end: ``gybe {coeffs,verify,states,sweep}``.

Exit codes: 0 all checks pass, 1 a residual exceeds tolerance, 2 bad configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys

import numpy as np

from . import matrix_core as mc
from .entangled_states import (analytic_amplitudes, apply_to_product_state, evolve,
                               parse_a_range, phase_exponents, reduced_density_check)
from .errors import GybeError
from .fz_coefficients import (ModulusConfig, alpha_of, parse_parameter, verify_star_triangle_scalar,
                              verify_unitarity_sum, x_tilde)
from .gybe_solutions import (DEFAULT_SEED, GENERIC_A, Residual, check_additive_ybe,
                             check_braid_relations, check_far_commutativity, check_gybe,
                             check_mult_ybe, check_unitary_family, gaussian_site_operator,
                             inverse_parameter_residual, make_family, sample_pairs)
from .torus_rep import build_site_system, verify_torus_relations

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _a_values(args) -> list[float]:
    vals = [parse_parameter(a) for a in (args.a or [])]
    if args.a_range:
        vals += parse_a_range(args.a_range)
    return vals


def _system(args, n=None):
    try:
        cfg = ModulusConfig(args.m)
        return build_site_system(cfg, args.N, args.z, n if n is not None else args.n)
    except (GybeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


# subcommands ---------------------------------------------------------------


def cmd_coeffs(args) -> int:
    cfg = ModulusConfig(args.m)
    values = _a_values(args)
    if not values:
        raise ConfigError("coeffs needs --a or --a-range")
    rows = []
    for a in values:
        sc = x_tilde(cfg, a)
        for j, v in enumerate(sc.values):
            rows.append({"a": a, "kind": sc.kind.value, "j": j, "re": float(v.real), "im": float(v.imag)})
    if args.format == "csv":
        _emit(_rows_csv(rows), args.out)
    else:
        _emit(json.dumps({"m": args.m, "rows": rows}, indent=2) + "\n", args.out)
    return EXIT_OK


def run_verify_suite(sys_, seed: int, tol: float, pairs: int = 20) -> list[Residual]:
    """Every residual check for one configured system."""
    cfg, m, N, z, n = sys_.cfg, sys_.m, sys_.N, sys_.z, sys_.n
    rng = np.random.default_rng(seed)
    fam = make_family(sys_)
    results = []
    add = lambda rel, params, res, t=tol, exp=True: results.append(  # noqa: E731
        Residual(rel, params, float(res), t, exp))

    torus = verify_torus_relations(sys_)
    add("E1_generator_order", {}, torus.E1)
    add("E2_far_commutation", {"pairs": torus.pairs_E2}, torus.E2)
    add("E3_q2_commutation", {"pairs": torus.pairs_E3}, torus.E3)
    add("generator_unitarity", {}, torus.unitarity)

    for a, b in sample_pairs(rng, pairs):
        for i in range(1, n - 1):
            add("mult_ybe", {"i": i, "a": a, "b": b}, check_mult_ybe(fam, i, a, b))
    for a, b in sample_pairs(rng, 5, low=0.05, high=4.0):
        al, alp = alpha_of(cfg, a), alpha_of(cfg, b)
        for i in range(1, n - 1):
            add("additive_ybe", {"i": i, "a": a, "b": b}, check_additive_ybe(fam, i, al, alp))
    for (a, b), (i, j) in itertools.product(sample_pairs(rng, 3),
                                            [(i, j) for i in sys_.indices for j in sys_.indices if j >= i + 2]):
        add("far_commutativity", {"i": i, "j": j, "a": a, "b": b}, check_far_commutativity(fam, i, j, a, b))

    g = check_gybe(cfg, N, z, fam.site_s())
    add("gybe_triple", {"N": N, "z": z}, g.triple)
    add("gybe_far_j2", {"N": N, "z": z}, g.far)
    if n >= 3:
        br = check_braid_relations(fam)
        add("braid_S", {}, br.s_braid)
        add("far_commutation_S", {}, br.s_far)
        for a in (0.0, 1.0, math.inf):
            add("braid_Rtilde", {"a": str(a)}, br.rtilde_braid[a])
        add("braid_Rtilde_generic_violated", {"a": GENERIC_A}, br.rtilde_braid[GENERIC_A], 1e-3, False)

    grid = [float(a) for a in np.linspace(-5, 5, 41)] + [math.inf, -math.inf]
    add("unitarity_family", {"grid": "linspace(-5,5,41)+{+-inf}"}, check_unitary_family(fam, grid))
    for a, _ in sample_pairs(rng, 3, avoid=(1.0, -1.0, 0.0)):
        add("inverse_parameter", {"a": a}, inverse_parameter_residual(fam, a))

    for a, _ in sample_pairs(rng, 5, avoid=(1.0, -1.0, 0.0), margin=1e-3):
        for j in range(m):
            add("unitarity_sum", {"a": a, "j": j}, verify_unitarity_sum(cfg, a, j))
    for _ in range(2):
        u = rng.uniform(-np.pi / 2, np.pi / 2, 2)
        v = rng.uniform(-1, 1, 2)
        al, alp = complex(u[0], v[0]), complex(u[1], v[1])
        worst = max(verify_star_triangle_scalar(cfg, *ns, al, alp, form="corrected")
                    for ns in itertools.product(range(m), repeat=3))
        add("star_triangle_scalar_corrected", {"alpha": str(al), "alpha_prime": str(alp)}, worst)

    S = gaussian_site_operator(cfg, N)
    for k in range(m):
        st = apply_to_product_state(S, m, N, k)
        add("reduced_density_Id_over_m", {"k": k},
            max(reduced_density_check(st, site) for site in range(N)))
    return results


def cmd_verify(args) -> int:
    sys_ = _system(args)
    if sys_.n < 3:
        raise ConfigError("verify needs n >= 3")
    results = run_verify_suite(sys_, args.seed, args.tolerance)
    ok = all(r.passed for r in results)
    report = {
        "config": {"m": args.m, "N": args.N, "z": args.z, "n": args.n},
        "seed": args.seed,
        "tolerance": args.tolerance,
        "results": [r.to_dict() for r in results],
        "all_pass": ok,
    }
    if args.format == "csv":
        rows = [{"relation": r.relation, "params": json.dumps(r.params), "residual": r.residual,
                 "tolerance": r.tolerance, "pass": r.passed} for r in results]
        _emit(_rows_csv(rows), args.out)
    else:
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


def state_rows(m: int, N: int, k: int) -> list[dict]:
    cfg = ModulusConfig(m)
    st = apply_to_product_state(gaussian_site_operator(cfg, N), m, N, k)
    exps = phase_exponents(k, m, N) if m % 2 else [None] * m
    rows = []
    for j, amp in enumerate(st.amplitudes):
        rows.append({"j": j, "re": float(amp.real), "im": float(amp.imag), "abs": float(abs(amp)),
                     "exponent": None if exps[j] is None else str(exps[j])})
    return rows


def cmd_states(args) -> int:
    if args.N < 2 or not 0 <= args.k < args.m:
        raise ConfigError(f"need N >= 2 and 0 <= k < m; got N={args.N}, k={args.k}")
    rows = state_rows(args.m, args.N, args.k)
    if args.operator_out:
        S = gaussian_site_operator(ModulusConfig(args.m), args.N)
        with open(args.operator_out, "w") as fh:
            fh.write(mc.matrix_to_csv(S) if args.format == "csv" else mc.matrix_to_json(S))
    if args.format == "csv":
        _emit(_rows_csv(rows), args.out)
    else:
        norm = math.sqrt(sum(r["abs"] ** 2 for r in rows))
        obj = {"m": args.m, "N": args.N, "k": args.k, "norm": norm, "rows": rows}
        if args.m % 2:
            analytic = analytic_amplitudes(ModulusConfig(args.m), args.k, args.N)
            obj["analytic"] = [[float(v.real), float(v.imag)] for v in analytic]
        _emit(json.dumps(obj, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    sys_ = _system(args)
    if not 0 <= args.k < args.m:
        raise ConfigError(f"k={args.k} outside [0, {args.m})")
    grid = _a_values(args)
    if not grid:
        raise ConfigError("sweep needs --a-range or --a")
    phi0 = mc.StateVector.basis(args.m, [args.k] * sys_.total_arity)
    traj = evolve(make_family(sys_), args.site, phi0, grid)
    if args.format == "json":
        obj = {"a_grid": grid, "norms": traj.norms().tolist(),
               "states": [[[float(z.real), float(z.imag)] for z in s.amps] for s in traj.states]}
        _emit(json.dumps(obj) + "\n", args.out)
    else:
        _emit(traj.to_csv(), args.out)
    return EXIT_OK


# parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gybe", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n_default=3, fmt="json"):
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--N", type=int, default=2)
        sp.add_argument("--z", type=int, default=1)
        sp.add_argument("--n", type=int, default=n_default)
        sp.add_argument("--a", action="append", help="parameter value; 'inf' and '-inf' accepted; repeatable")
        sp.add_argument("--a-range", dest="a_range", help="start:stop:steps, endpoints inclusive")
        sp.add_argument("--k", type=int, default=0)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--tolerance", type=float, default=1e-9)
        sp.add_argument("--format", choices=["json", "csv"], default=fmt)
        sp.add_argument("--out")

    common(sub.add_parser("coeffs", help="normalized coefficients X~_j(a)"))
    common(sub.add_parser("verify", help="run every residual check"))
    sp = sub.add_parser("states", help="amplitudes of S|k>^N")
    common(sp)
    sp.add_argument("--operator-out", dest="operator_out", help="also write S in --format")
    sp = sub.add_parser("sweep", help="trajectory R~(a)|k...k> over an a grid")
    common(sp, n_default=2, fmt="csv")
    sp.add_argument("--site", type=int, default=1, help="generator index i")
    return p


COMMANDS = {"coeffs": cmd_coeffs, "verify": cmd_verify, "states": cmd_states, "sweep": cmd_sweep}


def _glue_negative_tokens(argv: list[str]) -> list[str]:
    # argparse treats "-inf" as an option; bind it to the preceding flag
    out = []
    for tok in argv:
        if out and out[-1] in ("--a", "--a-range") and tok.startswith("-") and not tok.startswith("--"):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_tokens(argv))
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, GybeError, ValueError) as exc:
        print(f"gybe {args.command}: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
