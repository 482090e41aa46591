"""Command-line front end: ``qabn <subcommand> --preset NAME | --spec PATH``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import analysis
from .boolfn import MAX_ARITY, enumerate_functions, format_function, needs_ancilla
from .classical import ensemble_cycle_stats, enumerate_attractors
from .errors import QabnError, ResourceError
from .network import build_step_operator, count_wirings, evolve, random_network
from .presets import PRESET_NAMES, preset
from .specfile import load_spec, write_spec

EXIT_CONFIG = 2
EXIT_RESOURCE = 3
ITERATIVE_LIMIT = 10_000

WIRING_NOTE = ("wirings are counted as (n(k+m))!, the number of bijections between the "
               "q output and q input wires; the figure 81 (= 9^2) sometimes quoted for the "
               "nine-qubit AND/OR/OR network does not follow from this formula")


class ConfigError(QabnError):
    pass


def _source(args):
    if args.spec and args.preset:
        raise ConfigError("give either --spec or --preset, not both")
    if args.spec:
        return load_spec(args.spec)
    if args.preset:
        return preset(args.preset)
    raise ConfigError("one of --spec PATH or --preset NAME is required")


def _network(args):
    src = _source(args)
    if src.network is None:
        raise ConfigError("this subcommand needs a quantum network (functions/wiring/input)")
    return src.network, src.steps


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def cmd_run(args):
    net, file_steps = _network(args)
    steps = args.steps if args.steps is not None else (file_steps if file_steps is not None else 60)
    W = build_step_operator(net)
    rows, rho_rows, last = [], [], None
    for t, state in enumerate(evolve(net.initial_state(), W, steps)):
        rows.append((t, _fmt(analysis.multipartite_mutual_information(state))))
        if args.rho_out:
            for i, rho in enumerate(analysis.reduced_states(state)):
                rho_rows.append((t, i, _fmt(rho[0, 0].real), _fmt(rho[0, 1].real),
                                 _fmt(rho[0, 1].imag), _fmt(rho[1, 1].real)))
        last = state
    _emit(_csv(("step", "value"), rows), args.out)
    if args.rho_out:
        Path(args.rho_out).write_text(
            _csv(("step", "qubit", "rho00_re", "rho01_re", "rho01_im", "rho11_re"), rho_rows))
    summary = {
        "network": net.describe(),
        "steps": steps,
        "final_norm": last.norm2(),
        "final_im": analysis.multipartite_mutual_information(last),
        "final_reduced_diagonals": [[round(float(r[0, 0].real), 12), round(float(r[1, 1].real), 12)]
                                    for r in analysis.reduced_states(last)],
    }
    if args.summary:
        Path(args.summary).write_text(_json(summary))
    elif args.out:
        sys.stdout.write(_json(summary))
    return 0


def cmd_cycle(args):
    net, _ = _network(args)
    W = build_step_operator(net)
    init = net.initial_state()
    report = analysis.cycle_report(W, init, tol=args.tol)
    out = report.to_dict()
    if report.state_period <= ITERATIVE_LIMIT:
        it = analysis.detect_state_cycle_iterative(W, init, ITERATIVE_LIMIT)
        out["iterative_period"] = it.state_period
        out["iterative_agrees"] = it.state_period == report.state_period
    out["network"] = net.describe()
    _emit(_json(out), args.out)
    return 0


def cmd_frozen(args):
    net, _ = _network(args)
    rep = analysis.frozen_cores(build_step_operator(net), net.initial_state(),
                                horizon=args.horizon, tol=args.tol)
    out = rep.to_dict()
    out["qubit_names"] = net.layout.qubit_names()
    _emit(_json(out), args.out)
    return 0


def cmd_perturb(args):
    net, _ = _network(args)
    if args.perturb_step is None or args.perturb_qubit is None:
        raise ConfigError("perturb needs --perturb-step and --perturb-qubit")
    rep = analysis.perturb(net, args.perturb_step, args.perturb_qubit,
                           horizon=args.horizon, tol=args.tol)
    _emit(_json(rep.to_dict()), args.out)
    return 0


def cmd_spectrum(args):
    net, file_steps = _network(args)
    steps = args.steps if args.steps is not None else (file_steps if file_steps is not None else 600)
    series = analysis.im_series(build_step_operator(net), net.initial_state(), steps)
    freqs, mags = analysis.dft_spectrum(series).one_sided()
    _emit(_csv(("frequency", "magnitude"), [(_fmt(f), _fmt(m)) for f, m in zip(freqs, mags)]),
          args.out)
    return 0


def cmd_classical(args):
    if args.ensemble:
        stats = ensemble_cycle_stats(args.seed or 0, args.ensemble, 2, args.samples)
        _emit(_json(stats.to_dict()), args.out)
        return 0
    src = _source(args)
    if src.classical is None:
        raise ConfigError("classical needs cvar lines (e.g. --preset fig1_classical)")
    graph = enumerate_attractors(src.classical)
    _emit(_json(graph.to_dict()), args.out)
    if args.dot:
        Path(args.dot).write_text(graph.to_dot())
    return 0


def cmd_enumerate(args):
    out = {"functions": {}, "wirings": None}
    for k in range(1, MAX_ARITY + 1):
        tables = enumerate_functions(k)
        entry = {"count": len(tables)}
        if k <= 2:
            entry["names"] = [format_function(t) for t in tables]
            entry["need_ancilla"] = [format_function(t) for t in tables if needs_ancilla(t)]
        out["functions"][str(k)] = entry
    if args.qubits is not None:
        out["wirings"] = {"qubits": args.qubits, "count": str(count_wirings(args.qubits)),
                          "note": WIRING_NOTE}
    _emit(_json(out), args.out)
    return 0


def _sweep_one(job):
    seed, n, k, max_steps = job
    net = random_network(seed, n, k)
    W = build_step_operator(net)
    init = net.initial_state()
    orbit = analysis.detect_state_cycle_orbit(W, init)
    it = analysis.detect_state_cycle_iterative(W, init, max_steps)
    im = (analysis.im_period_exact(W, init, orbit.state_period)
          if orbit.state_period <= max_steps else None)
    return (seed, net.qubit_count, orbit.state_period,
            "" if it.state_period is None else it.state_period,
            "" if im is None else im,
            " ".join(format_function(f) for f in net.functions),
            " ".join(map(str, net.wiring)), str(net.input))


def cmd_sweep(args):
    lo, _, hi = args.seeds.partition(":")
    seeds = range(int(lo), int(hi)) if hi else range(int(lo))
    jobs = [(s, args.n, args.k, args.max_steps) for s in seeds]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            rows = list(pool.map(_sweep_one, jobs))
    else:
        rows = [_sweep_one(j) for j in jobs]
    header = ("seed", "qubits", "state_period", "iterative_period", "im_period",
              "functions", "wiring", "input")
    _emit(_csv(header, rows), args.out)
    return 0


def cmd_write(args):
    _emit(write_spec(_source(args)), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qabn", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, steps=True):
        sp.add_argument("--spec", help="network spec file")
        sp.add_argument("--preset", choices=PRESET_NAMES, help="built-in network")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--seed", type=int)
        if steps:
            sp.add_argument("--steps", type=int)
        return sp

    sp = common(sub.add_parser("run", help="I_m series as step,value CSV"))
    sp.add_argument("--summary", help="write the final-state summary JSON here")
    sp.add_argument("--rho-out", help="also write per-qubit reduced states as CSV")
    sp.set_defaults(func=cmd_run)

    common(sub.add_parser("cycle", help="exact state period and I_m period"), False).set_defaults(func=cmd_cycle)

    sp = common(sub.add_parser("frozen", help="frozen qubits and islands"), False)
    sp.add_argument("--horizon", type=int)
    sp.set_defaults(func=cmd_frozen)

    sp = common(sub.add_parser("perturb", help="bit-flip perturbation experiment"), False)
    sp.add_argument("--perturb-step", type=int)
    sp.add_argument("--perturb-qubit", type=int)
    sp.add_argument("--horizon", type=int)
    sp.set_defaults(func=cmd_perturb)

    common(sub.add_parser("spectrum", help="DFT of the I_m series as CSV")).set_defaults(func=cmd_spectrum)

    sp = common(sub.add_parser("classical", help="attractors of a classical net"), False)
    sp.add_argument("--dot", help="write the state graph in DOT format")
    sp.add_argument("--ensemble", type=int, metavar="N", help="random-net ensemble with N variables")
    sp.add_argument("--samples", type=int, default=500)
    sp.set_defaults(func=cmd_classical)

    sp = sub.add_parser("enumerate", help="function catalog and counts")
    sp.add_argument("--qubits", type=int, help="also count wirings for this many qubits")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("sweep", help="cycle statistics over seeded random networks")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--k", type=int, default=2, choices=(1, 2))
    sp.add_argument("--seeds", default="0:100", help="START:STOP or COUNT")
    sp.add_argument("--max-steps", type=int, default=ITERATIVE_LIMIT)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sweep)

    common(sub.add_parser("write", help="print a network in spec-file form"), False).set_defaults(func=cmd_write)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"qabn: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (QabnError, OSError) as exc:
        print(f"qabn: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
