"""Command-line front end: predictions, cycle simulation, N sweeps, trade-off checks, oracles.

Exit codes: 0 success, 2 configuration error, 3 runtime error,
4 trade-off bound not applicable (non-positive gaps).
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import warnings

import numpy as np

from . import engine, oracle, tfmodel, tradeoff
from .dynamics import gibbs_state
from .ladder import DegenerateGapError
from .units import ConfigError, power_to_watts, read_config, to_natural

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME, EXIT_BOUND = 0, 2, 3, 4


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def write_csv(path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if not isinstance(v, str) else v for v in row])
    if path == "-":
        sys.stdout.write(buf.getvalue())
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _params(args):
    try:
        return to_natural(read_config(args.config))
    except ConfigError as exc:
        raise CliError(f"config error: {exc}", EXIT_CONFIG) from exc


def cmd_predict(args):
    p = _params(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", engine.ConfinementWarning)
        pr = engine.predict(p)
    rows = [
        ("p_init_minus", pr.p_init_minus, "1"),
        ("eta_carnot", pr.eta_carnot, "1"),
        ("delta_eta_e2ls", pr.delta_eta_e2ls, "1"),
        ("gamma_purcell", pr.gamma_purcell, "rad/s"),
        ("p_one_qubit", pr.p_one_qubit, "rad/s^2"),
        ("p_one_qubit_watts", power_to_watts(pr.p_one_qubit), "W"),
        ("p_e2ls", pr.p_e2ls, "rad/s^2"),
        ("p_e2ls_watts", power_to_watts(pr.p_e2ls), "W"),
        ("p_separable", pr.p_separable, "rad/s^2"),
        ("p_separable_watts", power_to_watts(pr.p_separable), "W"),
        ("chi_conf", pr.chi_conf, "1"),
        ("n_conf", pr.n_conf, "cycles"),
        ("n_conf_closed_form", pr.n_conf_closed, "cycles"),
        ("tau_hot", pr.tau_hot, "s"),
        ("tau_cold", pr.tau_cold, "s"),
    ]
    for name, value, unit in rows:
        print(f"{name:<20} {fmt(value):>20} {unit}")
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.out:
        write_csv(args.out, ["quantity", "value", "unit"], rows)


CYCLE_HEADER = ["cycle", "q_hot", "q_cold", "w_out", "w_in", "w_ext", "eta",
                "power_natural", "power_watts", "delta_eta", "leak_mass"]


def cmd_simulate(args):
    if args.cycles < 1:
        raise CliError("--cycles must be >= 1", EXIT_CONFIG)
    p = _params(args)
    plan = engine.build_plan(p)
    records = engine.run_cycles(engine.initial_state(p), plan, args.cycles)
    write_csv(args.out, CYCLE_HEADER, (
        (r.cycle_index, r.q_hot, r.q_cold, r.w_out, r.w_in, r.w_ext, r.eta,
         r.power, r.power_watts, r.delta_eta, r.leak_mass) for r in records))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", engine.ConfinementWarning)
        pr = engine.predict(p)
    power = np.array([r.power for r in records])
    deta = np.array([r.delta_eta for r in records])
    print(f"cycles {len(records)}")
    print(f"max_rel_dev_power {fmt(np.max(np.abs(power / pr.p_e2ls - 1)))}")
    print(f"max_rel_dev_delta_eta {fmt(np.max(np.abs(deta / pr.delta_eta_e2ls - 1)))}")
    print(f"final_leak_mass {fmt(records[-1].leak_mass)}")


def _odd_range(args):
    lo, hi, step = args.n_min, args.n_max, args.n_step
    if lo % 2 == 0 or hi % 2 == 0 or step <= 0 or step % 2 or lo < 1 or hi < lo:
        raise CliError("invalid N range: endpoints must be odd, step positive and even",
                       EXIT_CONFIG)
    return list(range(lo, hi + 1, step))


def cmd_sweep(args):
    n_list = _odd_range(args)
    p = _params(args)
    res = engine.sweep_n(p, n_list)
    write_csv(args.out, ["n", "p_first_cycle", "p_e2ls", "p_separable", "chi_conf"],
              zip(res.n, res.p_first_cycle, res.p_e2ls, res.p_separable, res.chi_conf))
    print(f"slope_simulated {res.slope_simulated:.6f}")
    print(f"slope_e2ls {res.slope_e2ls:.6f}")
    print(f"slope_separable {res.slope_separable:.6f}")


def cmd_tradeoff(args):
    p = _params(args)
    n = args.n if args.n is not None else p.n_qubits
    plan = engine.build_plan(p, n)
    state = engine.initial_state(p, n)
    if args.initial == "gibbs":
        state = gibbs_state(plan.ladder_hot, p.beta_hot)
    try:
        cb = tradeoff.evaluate_cycle(state, plan, p.beta_hot, p.beta_cold, p.samples_per_stroke)
    except tradeoff.NonpositiveGapError as exc:
        raise CliError(f"bound not evaluated: negative gaps ({exc})", EXIT_BOUND) from exc
    write_csv(args.out, ["t", "stroke", "j", "sigma_dot", "a_cl", "a_qm", "a_mean", "ratio_ok"],
              ((s.t, s.stroke, s.j, s.sigma_dot, s.a_cl, s.a_qm, s.a_mean, s.ratio_ok)
               for s in cb.samples))
    r = cb.report
    print(f"p_over_delta_eta {fmt(r.p_over_delta_eta)} alpha {fmt(r.alpha)} "
          f"a_bar {fmt(r.a_bar)} bound_value {fmt(r.bound_value)} "
          f"satisfied {fmt(r.satisfied)}")
    print(f"current_bound_ok {fmt(all(s.ratio_ok for s in cb.samples))}")


def cmd_oracle(args):
    n = args.n
    if not 1 <= n <= oracle.MAX_QUBITS:
        raise CliError(f"--n must be in 1..{oracle.MAX_QUBITS}", EXIT_CONFIG)
    print("M,<M-1|J-|M>,sqrt(a_M),connectivity")
    for k in range(n):
        m = n / 2 - k
        el = oracle.lowering_matrix_element(n, m)
        a = (n / 2 + m) * (n / 2 - m + 1)
        print(f"{fmt(m)},{fmt(el)},{fmt(np.sqrt(a))},{oracle.connectivity(n, m)}")
    if n <= oracle.MAX_QUBITS_DENSE:
        print("M,c_l1_bruteforce,c_l1_closed_form")
        binom = tradeoff.dicke_binomials(n)
        for k in range(n + 1):
            w = np.zeros(n + 1)
            w[k] = 1.0
            print(f"{fmt(n / 2 - k)},{fmt(oracle.c_l1_bruteforce(n, w))},{fmt(binom[k] - 1)}")


def cmd_tf_model(args):
    if args.nd_max < 4:
        raise CliError("--nd-max must be >= 4", EXIT_CONFIG)
    nds = range(1, args.nd_max + 1)
    rows = []
    for mode in ("sd", "bd"):
        specs = [tfmodel.TFSpec.thermal(nd, 1.0, 1.0, args.beta) for nd in nds]
        rates = [tfmodel.initial_decay_rate(s, mode) for s in specs]
        slope = tfmodel.measure_rate_scaling(specs[1:], mode)
        rows += [(s.n_degeneracy, mode, r, slope) for s, r in zip(specs, rates)]
        print(f"slope_{mode} {slope:.6f}")
    write_csv(args.out, ["n_d", "mode", "rate", "slope"], rows)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="superabsorb", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("predict", help="analytic E2LS predictions")
    sp.add_argument("--config", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("simulate", help="run K engine cycles")
    sp.add_argument("--config", required=True)
    sp.add_argument("--cycles", type=int, default=1)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("sweep", help="first-cycle power against N")
    sp.add_argument("--config", required=True)
    sp.add_argument("--n-min", type=int, default=9)
    sp.add_argument("--n-max", type=int, default=63)
    sp.add_argument("--n-step", type=int, default=2)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("tradeoff", help="trade-off bounds along one cycle")
    sp.add_argument("--config", required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--initial", choices=("e2ls", "gibbs"), default="e2ls")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_tradeoff)

    sp = sub.add_parser("oracle", help="brute-force matrix elements and coherences")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("tf-model", help="decay-rate scaling of the 2N_d-state model")
    sp.add_argument("--nd-max", type=int, default=8)
    sp.add_argument("--beta", type=float, default=2.0, help="beta * omega0 of the bath")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_tf_model)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(exc, file=sys.stderr)
        return exc.code
    except (DegenerateGapError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
