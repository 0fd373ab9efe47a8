"""Growth models for lexical-style networks.

Three constructors, each an explicit reading of a qualitative description:

* ``motter``: uniform first attachment, remaining links into the first
  target's neighborhood.
* ``dm``: preferential arrivals plus ``floor(c*t)`` degree-preferential
  links between old nodes at step ``t``.
* ``st``: first target chosen with probability proportional to degree
  times a static utility; links go to the target and its neighbors.

The interpretation choices are recorded in ``Graph.meta["interpretation"]``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from netlang._rng import UniformStream, make_rng
from netlang.errors import ConfigError
from netlang.generators import grow_preferential
from netlang.graph import Graph

MODELS = ("motter", "dm", "st")
DM_EDGE_RETRIES = 50


@dataclass(frozen=True)
class GrowthSpec:
    model: str
    n_final: int
    m: int = 2
    c: float = 0.0
    utility_exponent: float = 2.0
    m0: Optional[int] = None  # dm only; defaults to m
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise ConfigError(f"unknown growth model {self.model!r}; expected one of {{motter, dm, st}}")
        if not self.n_final > self.m >= 1:
            raise ConfigError(f"growth needs n_final > m >= 1 (n_final={self.n_final}, m={self.m})")
        if self.c < 0:
            raise ConfigError(f"c must be >= 0, got {self.c}")
        if not self.utility_exponent > 0:
            raise ConfigError(f"utility_exponent must be > 0, got {self.utility_exponent}")
        if self.model == "dm":
            m0 = self.m if self.m0 is None else self.m0
            if not self.m <= m0 < self.n_final:
                raise ConfigError(f"dm needs m <= m0 < n_final (m0={m0})")

    def to_dict(self) -> dict:
        return asdict(self)


def _pick_distinct(cands: list[int], k: int, exclude: set[int], u01: UniformStream) -> list[int]:
    """Up to ``k`` distinct uniform picks from ``cands`` not in ``exclude``."""
    pool = [c for c in cands if c not in exclude]
    out = []
    while pool and len(out) < k:
        i = u01.below(len(pool))
        pool[i], pool[-1] = pool[-1], pool[i]
        out.append(pool.pop())
    return out


def _fill_uniform(g: Graph, v: int, want: int, chosen: list[int], u01: UniformStream) -> None:
    """Top up ``chosen`` to ``want`` targets with uniform picks among ``0..v-1``."""
    want = min(want, v)
    taken = set(chosen)
    while len(chosen) < want:
        t = u01.below(v)
        if t not in taken:
            taken.add(t)
            chosen.append(t)


def grow_motter(spec: GrowthSpec) -> Graph:
    u01 = UniformStream(make_rng(spec.seed, 1))
    g = Graph.from_edges(2, [(0, 1)])
    for v in range(2, spec.n_final):
        j = u01.below(v)
        chosen = [j]
        chosen += _pick_distinct(sorted(g.neighbor_set(j)), spec.m - 1, {j}, u01)
        _fill_uniform(g, v, spec.m, chosen, u01)
        g.add_node()
        for t in chosen:
            g.add_edge(v, t)
    g.meta = {
        **spec.to_dict(),
        "interpretation": "first target uniform; m-1 more uniform among its neighbors; uniform fallback",
    }
    return g


def grow_dm(spec: GrowthSpec) -> Graph:
    m0 = spec.m if spec.m0 is None else spec.m0
    u01 = UniformStream(make_rng(spec.seed, 0))
    skipped = 0

    def old_links(g: Graph, pool: list[int], t: int) -> None:
        nonlocal skipped
        for _ in range(int(math.floor(spec.c * t))):
            for _ in range(DM_EDGE_RETRIES):
                a = pool[u01.below(len(pool))]
                b = pool[u01.below(len(pool))]
                if a != b and not g.has_edge(a, b):
                    g.add_edge(a, b)
                    pool.append(a)
                    pool.append(b)
                    break
            else:
                skipped += 1

    g = grow_preferential(spec.n_final, m0, spec.m, u01, old_links if spec.c > 0 else None)
    g.meta = {
        **spec.to_dict(),
        "m0": m0,
        "skipped_old_links": skipped,
        "interpretation": "preferential arrivals from an m0 ring; floor(c*t) degree-preferential old-old links at step t",
    }
    return g


def zipf_utilities(n: int, exponent: float, rng: np.random.Generator) -> np.ndarray:
    """Pareto-tailed utilities ``u >= 1`` with ``P(u > x) = x**-exponent``.
    An infinite exponent gives constant utility 1."""
    if math.isinf(exponent):
        return np.ones(n)
    return (1.0 - rng.random(n)) ** (-1.0 / exponent)


def grow_st(spec: GrowthSpec) -> Graph:
    rng = make_rng(spec.seed, 2)
    u01 = UniformStream(rng)
    n, m = spec.n_final, spec.m
    util = zipf_utilities(n, spec.utility_exponent, rng)
    seed_size = m + 1
    g = Graph(seed_size)
    for a in range(seed_size):
        for b in range(a + 1, seed_size):
            g.add_edge(a, b)
    deg = np.zeros(n)
    deg[:seed_size] = m
    for v in range(seed_size, n):
        w = np.cumsum(deg[:v] * util[:v])
        x = int(np.searchsorted(w, u01.random() * w[-1], side="right"))
        x = min(x, v - 1)
        chosen = _pick_distinct([x] + sorted(g.neighbor_set(x)), m, set(), u01)
        _fill_uniform(g, v, m, chosen, u01)
        g.add_node()
        for t in chosen:
            g.add_edge(v, t)
            deg[t] += 1
        deg[v] = len(chosen)
    g.meta = {
        **spec.to_dict(),
        "utilities": util.tolist(),
        "interpretation": "static Pareto utility at birth; target x ~ degree*utility; m uniform picks from x and its neighbors",
    }
    return g


def grow(spec: GrowthSpec) -> Graph:
    return {"motter": grow_motter, "dm": grow_dm, "st": grow_st}[spec.model](spec)
