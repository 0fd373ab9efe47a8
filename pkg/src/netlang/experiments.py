"""Monte Carlo batches and parameter sweeps over the diffusion models."""

from __future__ import annotations

import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from typing import Optional, Sequence, Union

import numpy as np

from netlang.diffusion import (
    STATIC_T_MAX,
    STEPS_PER_GENERATION,
    InteractionParams,
    LearningParams,
    Outcome,
    SeedingSpec,
    Trajectory,
    run_interaction_aged,
    run_interaction_static,
    run_learning_aged,
)
from netlang.errors import ConfigError, DataError
from netlang.generators import TOPOLOGIES, GenSpec, generate, topology_spec
from netlang.graph import Graph

MODELS = ("static", "interaction_aged", "learning_aged")
MODEL_ALIASES = {
    "static": "static",
    "interaction": "interaction_aged",
    "interaction_aged": "interaction_aged",
    "aged": "interaction_aged",
    "learning": "learning_aged",
    "learning_aged": "learning_aged",
}
SHARP, GRADUAL = "sharp_s_curve", "gradual_linear"
SHARP_THRESHOLD = 0.25

Params = Union[InteractionParams, LearningParams]


def canonical_model(name: str) -> str:
    try:
        return MODEL_ALIASES[name.lower()]
    except KeyError:
        raise ConfigError(f"unknown model {name!r}; expected one of {sorted(MODEL_ALIASES)}") from None


@dataclass(frozen=True)
class BatchConfig:
    model: str
    gen: GenSpec
    params: Params
    seeding: SeedingSpec = SeedingSpec()
    runs: int = 10
    base_seed: int = 0
    regenerate_graph_per_run: bool = True
    keep_trajectories: bool = False

    def __post_init__(self):
        object.__setattr__(self, "model", canonical_model(self.model))
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        want = LearningParams if self.model == "learning_aged" else InteractionParams
        if not isinstance(self.params, want):
            raise ConfigError(f"model {self.model} takes {want.__name__}")


@dataclass
class BatchStats:
    config: BatchConfig
    outcomes: list[Outcome]
    trajectories: Optional[list[Trajectory]] = None

    @property
    def runs(self) -> int:
        return len(self.outcomes)

    @property
    def completion_steps(self) -> list[int]:
        return [o.step for o in self.outcomes if o.completed]

    @property
    def success_probability(self) -> float:
        return len(self.completion_steps) / len(self.outcomes)

    @property
    def mean_completion(self) -> Optional[float]:
        t = self.completion_steps
        return float(np.mean(t)) if t else None

    @property
    def std_completion(self) -> Optional[float]:
        t = self.completion_steps
        if not t:
            return None
        return float(np.std(t, ddof=1)) if len(t) > 1 else 0.0

    @property
    def mean_completion_generations(self) -> Optional[float]:
        if self.config.model == "static" or self.mean_completion is None:
            return None
        return self.mean_completion / STEPS_PER_GENERATION

    @property
    def mean_final_reach(self) -> float:
        return float(np.mean([o.final_fraction for o in self.outcomes]))

    def count(self, kind: str) -> int:
        return sum(o.kind == kind for o in self.outcomes)


def run_seed(base_seed: int, index: int) -> int:
    return base_seed ^ index


def simulate(model: str, graph: Graph, params: Params, seeding: SeedingSpec, seed: int) -> Trajectory:
    model = canonical_model(model)
    if model == "static":
        return run_interaction_static(graph, params.alpha, seeding, params.t_max or STATIC_T_MAX,
                                      seed, params.selection)
    if model == "interaction_aged":
        return run_interaction_aged(graph, params, seeding, seed)
    return run_learning_aged(graph, params, seeding, seed)


def _run_one(args) -> Trajectory:
    cfg, index, graph = args
    seed = run_seed(cfg.base_seed, index)
    if graph is None:
        graph = generate(cfg.gen.with_seed(seed))
    return simulate(cfg.model, graph, cfg.params, cfg.seeding, seed)


def default_workers() -> int:
    env = os.environ.get("NETLANG_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"NETLANG_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def run_batch(cfg: BatchConfig, workers: Optional[int] = 1) -> BatchStats:
    """``cfg.runs`` independent runs; run ``i`` uses seed ``base_seed ^ i``
    for both its graph draw and its dynamics. Results are merged by run
    index, so ``workers`` never changes the output."""
    workers = default_workers() if workers is None else workers
    shared = None if cfg.regenerate_graph_per_run else generate(cfg.gen)
    tasks = [(cfg, i, shared) for i in range(cfg.runs)]
    if workers > 1 and cfg.runs > 1:
        with ProcessPoolExecutor(max_workers=min(workers, cfg.runs)) as pool:
            trajs = list(pool.map(_run_one, tasks, chunksize=max(1, cfg.runs // (4 * workers))))
    else:
        trajs = [_run_one(t) for t in tasks]
    return BatchStats(cfg, [t.outcome for t in trajs], trajs if cfg.keep_trajectories else None)


# -- sweeps -------------------------------------------------------------------

_AXES = {
    "alpha": ("params", "alpha"),
    "alpha_adult": ("params", "alpha_adult"),
    "alpha_child": ("params", "alpha_child"),
    "beta": ("params", "beta"),
    "k_interactions": ("params", "k_interactions"),
    "t_max": ("params", "t_max"),
    "innovator_count": ("seeding", "innovator_count"),
    "innovators": ("seeding", "innovator_count"),
    "n": ("gen", "n"),
    "nodes": ("gen", "n"),
    "k": ("gen", "k"),
    "mean_degree": ("gen", "k"),
    "p": ("gen", "p"),
    "rewire_p": ("gen", "p"),
    "runs": (None, "runs"),
}
_INT_FIELDS = {"k_interactions", "t_max", "innovator_count", "n", "k", "runs"}


def valid_axes(cfg: BatchConfig) -> list[str]:
    out = []
    for name, (part, attr) in _AXES.items():
        target = cfg if part is None else getattr(cfg, part)
        if attr in {f.name for f in fields(target)}:
            out.append(name)
    return out


def with_axis(cfg: BatchConfig, axis: str, value) -> BatchConfig:
    if axis not in valid_axes(cfg):
        raise ConfigError(f"unknown sweep axis {axis!r}; valid axes: {', '.join(valid_axes(cfg))}")
    part, attr = _AXES[axis]
    if attr in _INT_FIELDS:
        if float(value) != int(value):
            raise ConfigError(f"axis {axis} needs integer values, got {value}")
        value = int(value)
    else:
        value = float(value)
    if part is None:
        return replace(cfg, **{attr: value})
    sub = getattr(cfg, part)
    if part == "gen":
        new_sub = GenSpec(**{**sub.to_dict(), attr: value})
        if attr == "k" and new_sub.family == "scale_free":
            new_sub = GenSpec(**{**new_sub.to_dict(), "m": value // 2, "m0": value // 2})
    else:
        new_sub = replace(sub, **{attr: value})
    return replace(cfg, **{part: new_sub})


@dataclass
class SweepRow:
    axis: str
    value: float
    topology: str
    stats: BatchStats


def sweep(base: BatchConfig, axis: str, values: Sequence, topologies: Optional[Sequence[GenSpec]] = None,
          workers: Optional[int] = 1) -> list[SweepRow]:
    """One batch per (value, topology). ``topologies`` defaults to the base
    configuration's own network."""
    specs = list(topologies) if topologies else [base.gen]
    rows = []
    for v in values:
        for spec in specs:
            cfg = with_axis(replace(base, gen=spec), axis, v)
            rows.append(SweepRow(axis, float(v), spec.family, run_batch(cfg, workers)))
    return rows


# -- dynamics classification --------------------------------------------------

@dataclass(frozen=True)
class Dynamics:
    label: str
    peak_share: float
    threshold: float


def classify_dynamics(traj: Trajectory, threshold: float = SHARP_THRESHOLD) -> Dynamics:
    """Sharp S-curve if the largest single-step gain is at least ``threshold``
    of the population, otherwise gradual."""
    if not traj.outcome.completed:
        raise DataError(f"classify_dynamics needs a completed trajectory, got {traj.outcome.kind}")
    counts = traj.counts
    peak = float(np.diff(counts).max()) / traj.n if counts.size > 1 else 1.0
    return Dynamics(SHARP if peak >= threshold else GRADUAL, peak, threshold)


# -- CSV output ---------------------------------------------------------------

STATS_COLUMNS = ("model", "topology", "n", "mean_degree", "alpha", "alpha_adult", "alpha_child",
                 "beta", "innovators", "runs", "success_prob", "mean_completion_steps",
                 "std_completion_steps", "mean_final_reach", "mean_completion_generations")
TRAJECTORY_COLUMNS = ("run", "step", "count_c", "fraction_c")


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        if math.isnan(x):
            return ""
        return f"{x:.10g}"
    return str(x)


def _mean_degree(spec: GenSpec):
    if spec.family == "complete":
        return spec.n - 1
    if spec.family == "scale_free":
        return 2 * spec.m
    return spec.k


def stats_record(stats: BatchStats) -> list:
    cfg = stats.config
    p = cfg.params
    if isinstance(p, LearningParams):
        alphas = (None, p.alpha_adult, None, p.beta)
    elif cfg.model == "static":
        alphas = (p.alpha, None, None, None)
    else:
        alphas = (None, p.alpha_adult, p.alpha_child, None)
    return [cfg.model, cfg.gen.family, cfg.gen.n, _mean_degree(cfg.gen), *alphas,
            cfg.seeding.innovator_count, stats.runs, stats.success_probability,
            stats.mean_completion, stats.std_completion, stats.mean_final_reach,
            stats.mean_completion_generations]


def stats_csv(batches: Sequence[BatchStats]) -> str:
    buf = io.StringIO()
    buf.write(",".join(STATS_COLUMNS) + "\n")
    for b in batches:
        buf.write(",".join(_cell(x) for x in stats_record(b)) + "\n")
    return buf.getvalue()


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    buf.write(",".join(("axis", "value") + STATS_COLUMNS) + "\n")
    for r in rows:
        buf.write(",".join(_cell(x) for x in [r.axis, r.value, *stats_record(r.stats)]) + "\n")
    return buf.getvalue()


def trajectories_csv(trajs: Sequence[Trajectory]) -> str:
    buf = io.StringIO()
    buf.write(",".join(TRAJECTORY_COLUMNS) + "\n")
    for i, t in enumerate(trajs):
        for step, c in t.samples:
            buf.write(f"{i},{step},{c},{_cell(c / t.n)}\n")
    return buf.getvalue()


def four_topologies(n: int = 400, k: int = 20, p: float = 0.01, max_retries: int = 100) -> list[GenSpec]:
    return [topology_spec(t, n, k, p=p, max_retries=max_retries) for t in TOPOLOGIES]
