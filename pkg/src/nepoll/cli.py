"""Command-line interface: sweep, report, generate, check."""

from __future__ import annotations

import argparse
import sys

from . import io as nio
from .analytics import (SPECTRAL_SIZE_CAP, brute_force_estimator_law,
                        exact_error_fn, exact_error_rw, exact_error_un,
                        fosd_check, friendship_paradox_check, network_stats,
                        spectral_summary)
from .errors import (AssortativityUndefinedError,
                     DegreeLabelCorrUndefinedError, GraphBuildError,
                     TargetUnreachableError)
from .graph import LabeledGraph, graph_flags
from .harness import (load_experiment_config, run_report, run_sweep,
                      write_sweep_csv)
from .netgen import (ConfigModelSpec, ErdosRenyiSpec, LabelTarget,
                     RewireTarget, assign_labels, configuration_model,
                     erdos_renyi, rewire_to_assortativity)
from .sampling import RandomStream

_DATA_ERRORS = (GraphBuildError, ValueError, OSError, RuntimeError)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nepoll",
        description="Friendship-paradox polling on graphs: Monte-Carlo "
                    "sweeps, dataset reports, generators, invariant checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a Monte-Carlo sweep from a config "
                                     "file and write a CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("report", help="one-shot diagnostic of a dataset")
    p.add_argument("--graph", required=True)
    p.add_argument("--labels")
    p.add_argument("--csv", help="also write the report as key,value CSV")

    p = sub.add_parser("generate", help="generate a synthetic graph and "
                                        "label files")
    p.add_argument("--model", choices=["config", "er"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, help="power-law exponent (config)")
    p.add_argument("--kmin", type=int, default=1)
    p.add_argument("--kmax", type=int)
    p.add_argument("--p", type=float, help="edge probability (er)")
    p.add_argument("--rkk", type=float, help="assortativity target")
    p.add_argument("--rkk-tol", type=float, default=0.02)
    p.add_argument("--label-p", type=float, default=0.5,
                   help="Bernoulli label probability")
    p.add_argument("--rho", type=float, help="degree-label corr target")
    p.add_argument("--rho-tol", type=float, default=0.02)
    p.add_argument("--max-iter", type=int, default=2_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="graph",
                   help="output prefix (writes PREFIX.edges, PREFIX.labels)")

    p = sub.add_parser("check", help="run the invariant suite on a dataset")
    p.add_argument("--graph", required=True)
    p.add_argument("--labels")
    return parser


def _cmd_sweep(args) -> int:
    cfg = load_experiment_config(args.config)
    rows = run_sweep(cfg, workers=args.workers)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        write_sweep_csv(rows, fh)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_report(args) -> int:
    g = nio.read_edge_list(args.graph)
    labels = defaulted = None
    if args.labels:
        labels, defaulted = nio.read_labels(args.labels, g)
    report = run_report(g, labels, defaulted_labels=defaulted)
    text = report.to_text()
    sys.stdout.write(text)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("key,value\n")
            for line in report.lines():
                key, _, value = line.partition(": ")
                fh.write(f"{key},{value}\n")
    return 0


def _cmd_generate(args) -> int:
    if args.model == "config":
        if args.alpha is None:
            raise ValueError("--alpha is required for --model config")
        g, erased = configuration_model(ConfigModelSpec(
            node_count=args.n, power_law_exponent=args.alpha,
            k_min=args.kmin, k_max=args.kmax, seed=args.seed))
        print(f"erased_stubs: {erased}")
    else:
        if args.p is None:
            raise ValueError("--p is required for --model er")
        g = erdos_renyi(ErdosRenyiSpec(node_count=args.n,
                                       edge_probability=args.p,
                                       seed=args.seed))
    root = RandomStream(args.seed)
    if args.rkk is not None:
        g = rewire_to_assortativity(
            g, RewireTarget(target=args.rkk, tolerance=args.rkk_tol,
                            max_iterations=args.max_iter),
            root.substream(101))
    lg = assign_labels(
        g, LabelTarget(base_probability=args.label_p, target=args.rho,
                       tolerance=args.rho_tol,
                       max_iterations=args.max_iter),
        root.substream(102))

    stats = network_stats(lg)
    try:
        print(f"achieved_rkk: {stats.assortativity!r}")
    except AssortativityUndefinedError:
        print("achieved_rkk: undefined")
    try:
        print(f"achieved_rho: {stats.degree_label_corr!r}")
    except DegreeLabelCorrUndefinedError:
        print("achieved_rho: undefined")

    edge_path = f"{args.out}.edges"
    label_path = f"{args.out}.labels"
    nio.write_edge_list(g, edge_path)
    nio.write_labels(lg, label_path)
    print(f"wrote {edge_path} and {label_path}")
    return 0


def _cmd_check(args) -> int:
    failures = 0

    def emit(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        tag = "ok" if ok else "FAIL"
        suffix = f" ({detail})" if detail else ""
        print(f"{tag} {name}{suffix}")
        if not ok:
            failures += 1

    g = nio.read_edge_list(args.graph)
    emit("edge_list_valid", True,
         f"{g.node_count} nodes, {g.edge_count} edges")
    emit("degree_sum_is_twice_edges",
         int(g.degrees.sum()) == 2 * g.edge_count)
    emit("min_degree_positive", g.min_degree >= 1)

    paradox = friendship_paradox_check(g)
    emit("friendship_paradox", paradox.holds,
         f"means {paradox.mean_degree_uniform:.4f} <= "
         f"{paradox.mean_degree_friend:.4f}, "
         f"{paradox.mean_degree_neighbor:.4f}")
    emit("neighbor_degree_dominance", fosd_check(g).holds)

    flags = graph_flags(g)
    if g.node_count <= SPECTRAL_SIZE_CAP:
        spectrum = spectral_summary(g)
        emit("top_singular_value_is_one",
             abs(spectrum.singular_values[0] - 1.0) <= 1e-9)
        expansion_ok = flags.connected and not flags.bipartite
        emit("lambda2_below_one_iff_connected_nonbipartite",
             (spectrum.lambda2 < 1.0 - 1e-9) == expansion_ok,
             f"lambda2={spectrum.lambda2:.6f}")

    if args.labels:
        labels, defaulted = nio.read_labels(args.labels, g)
        lg = LabeledGraph(g, labels)
        emit("labels_valid", True,
             f"true_fraction={lg.true_fraction:.4f}, "
             f"defaulted={defaulted}")
        if g.node_count <= 200:
            checks = (("UN", exact_error_un(lg, 1)),
                      ("RW-stationary", exact_error_rw(lg, 1,
                                                       with_bound=False)),
                      ("FN", exact_error_fn(lg, 1, with_bound=False)))
            for kind, report in checks:
                mean, var = brute_force_estimator_law(lg, kind)
                ok = (abs(report.bias - (mean - lg.true_fraction)) <= 1e-10
                      and abs(report.variance_single_sample - var) <= 1e-10)
                emit(f"closed_form_matches_enumeration_{kind}", ok)

    return 1 if failures else 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "report":
            return _cmd_report(args)
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "check":
            return _cmd_check(args)
    except TargetUnreachableError as exc:
        print(f"error: TargetUnreachable: {exc} "
              f"achieved={exc.achieved!r}", file=sys.stderr)
        return 1
    except _DATA_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
