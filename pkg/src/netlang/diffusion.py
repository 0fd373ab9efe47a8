"""Agent-based diffusion of a linguistic innovation on a fixed network.

Agents carry one of two variants, ``U`` (the incumbent form) and ``C``
(the innovation), and in the age-structured models one of five life
stages. Stage 1 agents learn but do not influence; stages 3 to 5 are
adults. Three model families:

* static interaction: two agents meet per micro-step; if they are linked
  and discordant the ``U`` one adopts ``C`` with probability ``alpha``;
* age-structured interaction: ``n * k_interactions / 2`` uniform edge draws per
  macro step with stage-dependent adoption probabilities, then aging;
* age-structured learning: learners take the variant with the larger
  cumulative impact (teacher count times functional value), adults
  re-evaluate with probability ``alpha_adult``, then aging.

One macro step is one life stage; a generation is five macro steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from netlang._rng import make_rng
from netlang.errors import ConfigError
from netlang.graph import Graph

U, C = 0, 1
STAGES = 5
STEPS_PER_GENERATION = STAGES
ADULT_STAGES = (3, 4, 5)
SELECTIONS = ("pair", "edge")
STATIC_T_MAX = 1_000_000
AGED_T_MAX = 200


def _check_prob(name: str, x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise ConfigError(f"{name} must lie in [0, 1], got {x}")


@dataclass(frozen=True)
class InteractionParams:
    alpha: float = 0.5
    alpha_adult: float = 0.5
    alpha_child: float = 0.5
    k_interactions: int = 26
    # micro-steps for the static model, macro steps for the aged one
    t_max: Optional[int] = None
    seed: int = 0
    selection: str = "pair"  # static model only

    def __post_init__(self):
        for name in ("alpha", "alpha_adult", "alpha_child"):
            _check_prob(name, getattr(self, name))
        if self.k_interactions < 1:
            raise ConfigError("k_interactions must be >= 1")
        if self.t_max is not None and self.t_max < 1:
            raise ConfigError("t_max must be >= 1")
        if self.selection not in SELECTIONS:
            raise ConfigError(f"selection must be one of {SELECTIONS}, got {self.selection!r}")


@dataclass(frozen=True)
class LearningParams:
    beta: float = 1.0
    alpha_adult: float = 0.001
    t_max: int = AGED_T_MAX
    seed: int = 0
    synchronous: bool = True

    def __post_init__(self):
        if self.beta < 0:
            raise ConfigError(f"beta must be >= 0, got {self.beta}")
        _check_prob("alpha_adult", self.alpha_adult)
        if self.t_max < 1:
            raise ConfigError("t_max must be >= 1")


@dataclass(frozen=True)
class SeedingSpec:
    innovator_count: int = 1
    # None: adult stages in the aged models, every agent in the static model
    eligible_stages: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.innovator_count < 1:
            raise ConfigError("innovator_count must be >= 1")
        if self.eligible_stages is not None:
            st = tuple(sorted(set(self.eligible_stages)))
            if not st or not set(st) <= set(ADULT_STAGES):
                raise ConfigError(f"eligible_stages must be a non-empty subset of {ADULT_STAGES}")
            object.__setattr__(self, "eligible_stages", st)


@dataclass(frozen=True)
class Outcome:
    kind: str  # "completed" | "extinct" | "plateau"
    step: int
    final_fraction: float

    @property
    def completed(self) -> bool:
        return self.kind == "completed"


@dataclass
class Trajectory:
    n: int
    samples: list[tuple[int, int]]
    outcome: Outcome

    @property
    def steps(self) -> np.ndarray:
        return np.array([s for s, _ in self.samples], dtype=np.int64)

    @property
    def counts(self) -> np.ndarray:
        return np.array([c for _, c in self.samples], dtype=np.int64)

    @property
    def fractions(self) -> np.ndarray:
        return self.counts / self.n

    @property
    def final_fraction(self) -> float:
        return self.samples[-1][1] / self.n


def balanced_stages(n: int) -> np.ndarray:
    """Stage multiset with n//5 agents per stage, remainder in the lowest stages."""
    per = [n // STAGES + (1 if i < n % STAGES else 0) for i in range(STAGES)]
    return np.repeat(np.arange(1, STAGES + 1, dtype=np.int8), per)


@dataclass
class Population:
    graph: Graph
    variant: np.ndarray
    stage: np.ndarray

    @classmethod
    def fresh(cls, graph: Graph, rng: np.random.Generator) -> "Population":
        """All agents ``U``; balanced stages assigned to nodes at random."""
        stage = rng.permutation(balanced_stages(graph.n))
        return cls(graph, np.zeros(graph.n, dtype=np.int8), stage)

    @property
    def count_c(self) -> int:
        return int(self.variant.sum())

    def stage_counts(self) -> list[int]:
        return np.bincount(self.stage, minlength=STAGES + 1)[1:].tolist()

    def age(self) -> None:
        """Advance every agent; stage-5 agents are replaced by stage-1 ``U`` newborns."""
        self.stage += 1
        dead = self.stage > STAGES
        self.stage[dead] = 1
        self.variant[dead] = U


def seed_innovators(pop: Population, seeding: SeedingSpec, rng: np.random.Generator,
                    any_stage: bool = False) -> Population:
    """Set exactly ``innovator_count`` uniformly chosen eligible agents to ``C``
    and everyone else to ``U``."""
    if any_stage:
        eligible = np.arange(pop.graph.n)
    else:
        stages = seeding.eligible_stages or ADULT_STAGES
        eligible = np.flatnonzero(np.isin(pop.stage, stages))
    if seeding.innovator_count > eligible.size:
        raise ConfigError(
            f"{seeding.innovator_count} innovators requested but only {eligible.size} agents are eligible"
        )
    chosen = rng.choice(eligible, size=seeding.innovator_count, replace=False)
    pop.variant[:] = U
    pop.variant[chosen] = C
    return pop


def _edge_lists(graph: Graph) -> tuple[list[int], list[int]]:
    e = graph.edge_array()
    return e[:, 0].tolist(), e[:, 1].tolist()


# -- analytic reference -------------------------------------------------------

@dataclass
class LogisticCurve:
    t: np.ndarray
    c: np.ndarray
    c_exact: np.ndarray
    n: float

    @property
    def max_error(self) -> float:
        return float(np.max(np.abs(self.c - self.c_exact)))


def logistic_closed_form(t, n: float, alpha: float, c0: float):
    # n*c0*e^(a n t) / (n - c0 + c0*e^(a n t)), rearranged to avoid overflow
    decay = np.exp(-alpha * n * np.asarray(t, dtype=float))
    return n / (1.0 + (n - c0) / c0 * decay)


def logistic_reference(n: float, alpha: float, c0: float, dt: float, t_end: float) -> LogisticCurve:
    """RK4 integration of ``dc/dt = alpha * c * (n - c)`` next to its closed form."""
    if not 0 < c0 < n:
        raise ConfigError(f"need 0 < c0 < n (c0={c0}, n={n})")
    if dt <= 0:
        raise ConfigError("dt must be positive")
    if t_end < 0:
        raise ConfigError("t_end must be non-negative")
    steps = int(math.ceil(t_end / dt - 1e-9))
    t = np.arange(steps + 1) * dt
    c = np.empty(steps + 1)
    c[0] = c0

    def f(x: float) -> float:
        return alpha * x * (n - x)

    x = float(c0)
    for i in range(steps):
        k1 = f(x)
        k2 = f(x + 0.5 * dt * k1)
        k3 = f(x + 0.5 * dt * k2)
        k4 = f(x + dt * k3)
        x += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        c[i + 1] = x
    return LogisticCurve(t, c, logistic_closed_form(t, n, alpha, c0), float(n))


def expected_static_completion(n: int, alpha: float, m_edges: Optional[int] = None) -> float:
    """Mean micro-steps to completion on the complete graph from one innovator:
    sum over c of M / (alpha * c * (n - c))."""
    m_edges = n * (n - 1) // 2 if m_edges is None else m_edges
    return sum(m_edges / (alpha * c * (n - c)) for c in range(1, n))


# -- static interaction -------------------------------------------------------

def run_interaction_static(graph: Graph, alpha: float, seeding: SeedingSpec = SeedingSpec(),
                           t_max: int = STATIC_T_MAX, seed: int = 0,
                           selection: str = "pair") -> Trajectory:
    """Micro-step model counted in single meetings.

    ``selection="pair"`` draws two distinct agents uniformly and does nothing
    unless they are linked; ``"edge"`` draws a uniform edge. Both coincide on
    the complete graph. The trajectory is sampled every ``graph.n`` steps and
    at termination.
    """
    _check_prob("alpha", alpha)
    if selection not in SELECTIONS:
        raise ConfigError(f"selection must be one of {SELECTIONS}, got {selection!r}")
    rng = make_rng(seed)
    n = graph.n
    pop = seed_innovators(Population.fresh(graph, rng), seeding, rng, any_stage=True)
    var = pop.variant.tolist()
    count = sum(var)
    samples = [(0, count)]
    if count == n:
        return Trajectory(n, samples, Outcome("completed", 0, 1.0))
    eu, ev = _edge_lists(graph)
    m = len(eu)
    step = 0
    if alpha == 0.0 or m == 0:
        for step in range(n, t_max + 1, n):
            samples.append((step, count))
        if samples[-1][0] != t_max:
            samples.append((t_max, count))
        return Trajectory(n, samples, Outcome("plateau", t_max, count / n))
    by_pair = selection == "pair"
    nbrs = [graph.neighbor_set(u) for u in range(n)]
    while step < t_max:
        block = min(n, t_max - step)
        if by_pair:
            first = rng.integers(0, n, size=block).tolist()
            second = rng.integers(0, n - 1, size=block).tolist()
        else:
            picks = rng.integers(0, m, size=block).tolist()
        draws = rng.random(block).tolist()
        for i in range(block):
            if by_pair:
                a = first[i]
                b = second[i]
                if b >= a:
                    b += 1
                if var[a] == var[b] or b not in nbrs[a]:
                    continue
            else:
                a, b = eu[picks[i]], ev[picks[i]]
                if var[a] == var[b]:
                    continue
            if draws[i] < alpha:
                var[b if var[a] else a] = C
                count += 1
                if count == n:
                    step += i + 1
                    samples.append((step, count))
                    return Trajectory(n, samples, Outcome("completed", step, 1.0))
        step += block
        samples.append((step, count))
    return Trajectory(n, samples, Outcome("plateau", t_max, count / n))


# -- age-structured models ----------------------------------------------------

def _macro_loop(pop: Population, t_max: int, phase) -> Trajectory:
    """Shared macro-step driver: phase, sample, terminate, age."""
    n = pop.graph.n
    samples = [(0, pop.count_c)]
    for t in range(1, t_max + 1):
        phase(t)
        count = pop.count_c
        samples.append((t, count))
        if count == n:
            return Trajectory(n, samples, Outcome("completed", t, 1.0))
        if count == 0:
            return Trajectory(n, samples, Outcome("extinct", t, 0.0))
        pop.age()
        if pop.count_c == 0 and t < t_max:
            # nothing can reintroduce C once the last user has aged out
            samples.append((t + 1, 0))
            return Trajectory(n, samples, Outcome("extinct", t + 1, 0.0))
    return Trajectory(n, samples, Outcome("plateau", t_max, samples[-1][1] / n))


def run_interaction_aged(graph: Graph, params: InteractionParams, seeding: SeedingSpec = SeedingSpec(),
                         seed: Optional[int] = None) -> Trajectory:
    rng = make_rng(params.seed if seed is None else seed)
    pop = seed_innovators(Population.fresh(graph, rng), seeding, rng)
    eu, ev = _edge_lists(graph)
    m = len(eu)
    draws_per_step = graph.n * params.k_interactions // 2
    a_child, a_adult = params.alpha_child, params.alpha_adult

    def phase(t: int) -> None:
        if m == 0:
            return
        var = pop.variant.tolist()
        stage = pop.stage.tolist()
        picks = rng.integers(0, m, size=draws_per_step).tolist()
        draws = rng.random(draws_per_step).tolist()
        for i in range(draws_per_step):
            e = picks[i]
            a, b = eu[e], ev[e]
            if var[a] == var[b]:
                continue
            src, dst = (a, b) if var[a] else (b, a)
            if stage[src] == 1:
                continue
            if draws[i] < (a_child if stage[dst] <= 2 else a_adult):
                var[dst] = C
        pop.variant[:] = var

    return _macro_loop(pop, params.t_max or AGED_T_MAX, phase)


def impact_choice(n_c, n_u, f_c, f_u, current):
    """Variant with the larger cumulative impact ``count * functional value``;
    ties keep ``current``. Works elementwise on arrays."""
    ic = np.asarray(n_c) * f_c
    iu = np.asarray(n_u) * f_u
    return np.where(ic > iu, C, np.where(iu > ic, U, current))


def teacher_counts(pop: Population, adj) -> tuple[np.ndarray, np.ndarray]:
    """Per-node number of stage >= 2 neighbors using C and using U."""
    teacher = pop.stage >= 2
    is_c = pop.variant == C
    n_c = adj @ (teacher & is_c).astype(np.int64)
    n_u = adj @ (teacher & ~is_c).astype(np.int64)
    return n_c, n_u


def run_learning_aged(graph: Graph, params: LearningParams, seeding: SeedingSpec = SeedingSpec(),
                      seed: Optional[int] = None) -> Trajectory:
    rng = make_rng(params.seed if seed is None else seed)
    pop = seed_innovators(Population.fresh(graph, rng), seeding, rng)
    adj = graph.to_csr()
    nbrs = graph.adjacency()
    beta = params.beta

    def evaluate(mask: np.ndarray) -> None:
        if not mask.any():
            return
        if params.synchronous:
            n_c, n_u = teacher_counts(pop, adj)
            pop.variant[mask] = impact_choice(n_c[mask], n_u[mask], beta, 1.0, pop.variant[mask])
            return
        who = rng.permutation(np.flatnonzero(mask)).tolist()
        var = pop.variant
        stage = pop.stage
        for u in who:
            n_c = n_u = 0
            for v in nbrs[u]:
                if stage[v] >= 2:
                    if var[v] == C:
                        n_c += 1
                    else:
                        n_u += 1
            var[u] = impact_choice(n_c, n_u, beta, 1.0, var[u])

    def phase(t: int) -> None:
        evaluate(pop.stage <= 2)
        adults = (pop.stage >= 3) & (rng.random(graph.n) < params.alpha_adult)
        evaluate(adults)

    return _macro_loop(pop, params.t_max, phase)
