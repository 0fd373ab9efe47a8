"""Command-line interface.

Exit codes: 0 success, 2 usage or configuration error, 3 data contract
violation, 4 internal or generation failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from netlang import experiments as ex
from netlang.diffusion import InteractionParams, LearningParams, SeedingSpec, logistic_reference
from netlang.errors import ConfigError, DataError, NetlangError
from netlang.generators import TOPOLOGIES, GenSpec, canonical_family, generate, topology_spec
from netlang.growth import MODELS as GROWTH_MODELS
from netlang.growth import GrowthSpec, grow
from netlang.io import format_edgelist, format_label_map, load_config, read_edgelist, write_text
from netlang.metrics import analyze, betweenness

EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 2, 3, 4

log = logging.getLogger("netlang")


class _Parser(argparse.ArgumentParser):
    pass


def _add_config(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with option values (flags take precedence)")


def _add_out(p: argparse.ArgumentParser, what: str) -> None:
    p.add_argument("--out", help=f"write {what} here instead of standard output")


def _add_network(p: argparse.ArgumentParser, multi: bool = False) -> None:
    p.add_argument("--network", dest="network",
                   help="regular, smallworld, random, scalefree or complete"
                   + (" (comma-separated; default: the four social topologies)" if multi else ""))
    p.add_argument("--nodes", dest="n", type=int)
    p.add_argument("--mean-degree", dest="k", type=int)
    p.add_argument("--rewire-p", dest="p", type=float)
    p.add_argument("--max-retries", dest="max_retries", type=int)


def _add_dynamics(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", help="static, interaction (age-structured) or learning")
    p.add_argument("--alpha", type=float)
    p.add_argument("--alpha-adult", dest="alpha_adult", type=float)
    p.add_argument("--alpha-child", dest="alpha_child", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--k-interactions", dest="k_interactions", type=int)
    p.add_argument("--t-max", dest="t_max", type=int)
    p.add_argument("--innovators", dest="innovator_count", type=int)
    p.add_argument("--eligible-stages", dest="eligible_stages",
                   help="comma-separated innovator stages among 3,4,5")
    p.add_argument("--selection", choices=("pair", "edge"), help="static-model meeting rule")
    p.add_argument("--asynchronous", dest="synchronous", action="store_const", const=False,
                   help="learning model: sequential learner updates")
    p.add_argument("--runs", type=int)
    p.add_argument("--seed", dest="base_seed", type=int)
    p.add_argument("--fixed-graph", dest="regenerate_graph_per_run", action="store_const",
                   const=False, help="reuse one graph instance for every run")
    p.add_argument("--workers", type=int, help="worker processes (default: NETLANG_THREADS or CPU count)")
    p.add_argument("--trajectories", help="write per-run trajectories CSV here")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="netlang", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write a generated network as an edge list")
    p.add_argument("--family", help="complete, regular, smallworld, random or scalefree")
    p.add_argument("--nodes", dest="n", type=int)
    p.add_argument("--mean-degree", dest="k", type=int)
    p.add_argument("--rewire-p", dest="p", type=float)
    p.add_argument("--m0", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-retries", dest="max_retries", type=int)
    _add_config(p)
    _add_out(p, "the edge list")

    p = sub.add_parser("analyze", help="network measures of an edge list")
    p.add_argument("input", help="edge-list file")
    p.add_argument("--strict", action="store_const", const=True, help="fail on disconnected input")
    p.add_argument("--labels", help="treat node tokens as strings; write the index map here")
    p.add_argument("--sample-sources", dest="sample_sources", type=int)
    p.add_argument("--exact-threshold", dest="exact_threshold", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--betweenness", help="write per-node betweenness CSV here")
    _add_config(p)
    _add_out(p, "the CSV report row")

    p = sub.add_parser("simulate", help="batch of diffusion runs")
    _add_dynamics(p)
    _add_network(p)
    _add_config(p)
    _add_out(p, "the stats CSV")

    p = sub.add_parser("sweep", help="batches over a parameter axis and topologies")
    p.add_argument("--axis")
    p.add_argument("--values", help="comma-separated axis values")
    _add_dynamics(p)
    _add_network(p, multi=True)
    _add_config(p)
    _add_out(p, "the sweep CSV")

    p = sub.add_parser("logistic", help="logistic reference curve")
    p.add_argument("--nodes", dest="n", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--c0", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--t-end", dest="t_end", type=float)
    _add_config(p)
    _add_out(p, "the curve CSV")

    p = sub.add_parser("grow", help="grow a lexical-style network")
    p.add_argument("--model", choices=GROWTH_MODELS)
    p.add_argument("--n-final", dest="n_final", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--utility-exponent", dest="utility_exponent", type=float)
    p.add_argument("--m0", type=int)
    p.add_argument("--seed", type=int)
    _add_config(p)
    _add_out(p, "the edge list")
    return parser


# keys that live only on the command line
_NOT_CONFIGURABLE = {"config", "command", "verbose"}


def _merge_config(parser: argparse.ArgumentParser, args: argparse.Namespace, defaults: dict) -> argparse.Namespace:
    if getattr(args, "config", None):
        allowed = set(vars(args)) - _NOT_CONFIGURABLE
        for key, value in load_config(args.config, allowed).items():
            if getattr(args, key) is None:
                setattr(args, key, value)
    for key, value in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    return args


def _require(parser: argparse.ArgumentParser, args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        parser.error("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)


def cmd_generate(parser, args) -> int:
    _merge_config(parser, args, {"seed": 0, "p": 0.0, "max_retries": 100})
    _require(parser, args, "family", "n")
    spec = GenSpec(args.family, args.n, k=args.k, p=args.p, m0=args.m0, m=args.m,
                   seed=args.seed, max_retries=args.max_retries)
    g = generate(spec)
    meta = {"command": "generate", **spec.to_dict(), **{k: v for k, v in g.meta.items() if k not in spec.to_dict()}}
    _emit(format_edgelist(g, meta), args.out)
    return 0


def cmd_analyze(parser, args) -> int:
    _merge_config(parser, args, {"strict": False, "seed": 0, "exact_threshold": 20_000})
    res = read_edgelist(args.input, labels=bool(args.labels))
    if args.labels:
        write_text(args.labels, format_label_map(res.labels))
    report = analyze(res.graph, args.sample_sources, args.seed, args.exact_threshold, args.strict)
    csv = report.csv_header() + "\n" + report.csv_row() + "\n"
    if res.self_loops_dropped or res.duplicates_dropped:
        report.notes.append(f"dropped {res.self_loops_dropped} self-loop and "
                            f"{res.duplicates_dropped} duplicate lines")
    if args.out:
        write_text(args.out, csv)
        sys.stdout.write(report.to_text())
    else:
        sys.stdout.write(csv + "\n" + report.to_text())
    if args.betweenness:
        scores = betweenness(res.graph, strict=args.strict)
        write_text(args.betweenness,
                   "node,betweenness\n" + "".join(f"{i},{s:.10g}\n" for i, s in enumerate(scores)))
    return 0


_DYNAMICS_DEFAULTS = {
    "n": 400, "k": 20, "p": 0.01, "max_retries": 100, "runs": 10, "base_seed": 0,
    "innovator_count": 1, "regenerate_graph_per_run": True, "synchronous": True,
    "selection": "pair", "k_interactions": InteractionParams.k_interactions,
}


def _stages(value) -> Optional[tuple[int, ...]]:
    if value is None:
        return None
    if isinstance(value, str):
        try:
            return tuple(int(x) for x in value.split(",") if x.strip())
        except ValueError:
            raise ConfigError(f"eligible stages must be integers, got {value!r}") from None
    return tuple(int(x) for x in value)


def _network_spec(name: str, args) -> GenSpec:
    fam = canonical_family(name)
    if fam == "complete":
        return GenSpec("complete", args.n, max_retries=args.max_retries)
    return topology_spec(fam, args.n, args.k, p=args.p, max_retries=args.max_retries)


def _batch_config(parser, args, gen: GenSpec) -> ex.BatchConfig:
    model = ex.canonical_model(args.model)
    if model == "learning_aged":
        params = LearningParams(
            beta=1.0 if args.beta is None else args.beta,
            alpha_adult=0.001 if args.alpha_adult is None else args.alpha_adult,
            t_max=args.t_max or 200,
            synchronous=args.synchronous,
        )
    else:
        kw = {k: getattr(args, k) for k in ("alpha", "alpha_adult", "alpha_child") if getattr(args, k) is not None}
        params = InteractionParams(**kw, k_interactions=args.k_interactions, t_max=args.t_max,
                                   selection=args.selection)
    seeding = SeedingSpec(args.innovator_count, _stages(args.eligible_stages))
    return ex.BatchConfig(model, gen, params, seeding, runs=args.runs, base_seed=args.base_seed,
                          regenerate_graph_per_run=args.regenerate_graph_per_run,
                          keep_trajectories=bool(args.trajectories))


def cmd_simulate(parser, args) -> int:
    _merge_config(parser, args, _DYNAMICS_DEFAULTS)
    _require(parser, args, "model")
    if args.network is None:
        args.network = "complete" if ex.canonical_model(args.model) == "static" else "regular"
    cfg = _batch_config(parser, args, _network_spec(args.network, args))
    stats = ex.run_batch(cfg, args.workers)
    _emit(ex.stats_csv([stats]), args.out)
    if args.trajectories:
        write_text(args.trajectories, ex.trajectories_csv(stats.trajectories))
    return 0


def _values(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    try:
        return [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"--values must be comma-separated numbers, got {text!r}") from None


def cmd_sweep(parser, args) -> int:
    _merge_config(parser, args, _DYNAMICS_DEFAULTS)
    _require(parser, args, "model", "axis", "values")
    names = args.network.split(",") if args.network else list(TOPOLOGIES)
    specs = [_network_spec(name.strip(), args) for name in names]
    base = _batch_config(parser, args, specs[0])
    values = _values(args.values)
    if not values:
        raise ConfigError("--values is empty")
    ex.with_axis(base, args.axis, values[0])  # fail fast on unknown axes
    rows = ex.sweep(base, args.axis, values, specs, args.workers)
    _emit(ex.sweep_csv(rows), args.out)
    if args.trajectories:
        text = ["row,run,step,count_c,fraction_c\n"]
        for i, r in enumerate(rows):
            body = ex.trajectories_csv(r.stats.trajectories).splitlines()[1:]
            text.extend(f"{i},{line}\n" for line in body)
        write_text(args.trajectories, "".join(text))
    return 0


def cmd_logistic(parser, args) -> int:
    _merge_config(parser, args, {"n": 400.0, "alpha": 1e-4, "dt": 0.1, "t_end": 500.0})
    _require(parser, args, "c0")
    curve = logistic_reference(args.n, args.alpha, args.c0, args.dt, args.t_end)
    lines = ["t,c,fraction,c_exact\n"]
    for t, c, ce in zip(curve.t.tolist(), curve.c.tolist(), curve.c_exact.tolist()):
        lines.append(f"{t:.10g},{c:.12g},{c / curve.n:.12g},{ce:.12g}\n")
    _emit("".join(lines), args.out)
    return 0


def cmd_grow(parser, args) -> int:
    _merge_config(parser, args, {"m": 2, "c": 0.0, "utility_exponent": 2.0, "seed": 0})
    _require(parser, args, "model", "n_final")
    if args.model not in GROWTH_MODELS:
        parser.error(f"invalid model {args.model!r}; choose from {{motter, dm, st}}")
    spec = GrowthSpec(args.model, args.n_final, m=args.m, c=args.c,
                      utility_exponent=args.utility_exponent, m0=args.m0, seed=args.seed)
    g = grow(spec)
    meta = {"command": "grow", **{k: v for k, v in g.meta.items() if k != "utilities"}}
    _emit(format_edgelist(g, meta), args.out)
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "logistic": cmd_logistic,
    "grow": cmd_grow,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    sub = parser._subparsers._group_actions[0].choices[args.command]
    try:
        return COMMANDS[args.command](sub, args)
    except ConfigError as exc:
        print(f"netlang {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"netlang {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NetlangError, OSError) as exc:
        print(f"netlang {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 -- last-resort mapping to the internal exit code
        print(f"netlang {args.command}: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
