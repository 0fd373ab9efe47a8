"""Network families for the diffusion experiments.

Every randomized generator guarantees a connected result: a disconnected
draw is discarded and regenerated from a seed derived from ``(seed, attempt)``,
up to ``max_retries`` attempts.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable, Optional

import numpy as np

from netlang._rng import UniformStream, make_rng
from netlang.errors import ConfigError, GenerationError
from netlang.graph import Graph, is_connected

FAMILIES = ("complete", "regular_ring", "small_world", "random_er", "scale_free")

ALIASES = {
    "complete": "complete",
    "full": "complete",
    "regular": "regular_ring",
    "regular_ring": "regular_ring",
    "ring": "regular_ring",
    "smallworld": "small_world",
    "small_world": "small_world",
    "ws": "small_world",
    "random": "random_er",
    "random_er": "random_er",
    "er": "random_er",
    "scalefree": "scale_free",
    "scale_free": "scale_free",
    "ba": "scale_free",
}

# the four social-network topologies compared in the diffusion experiments
TOPOLOGIES = ("regular_ring", "small_world", "random_er", "scale_free")


def canonical_family(name: str) -> str:
    try:
        return ALIASES[name.lower()]
    except KeyError:
        raise ConfigError(
            f"unknown network family {name!r}; expected one of {sorted(set(ALIASES))}"
        ) from None


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    k: Optional[int] = None
    p: float = 0.0
    m0: Optional[int] = None
    m: Optional[int] = None
    seed: int = 0
    max_retries: int = 100

    def __post_init__(self):
        object.__setattr__(self, "family", canonical_family(self.family))
        fam, n, k = self.family, self.n, self.k
        if self.max_retries < 1:
            raise ConfigError("max_retries must be >= 1")
        if fam == "complete":
            if n < 2:
                raise ConfigError("complete graph needs n >= 2")
        elif fam in ("regular_ring", "small_world"):
            _check_ring(n, k)
            if not 0.0 <= self.p <= 1.0:
                raise ConfigError(f"rewiring probability must lie in [0, 1], got {self.p}")
        elif fam == "random_er":
            if k is None or k < 1:
                raise ConfigError("random_er needs a mean degree k >= 1")
            if (n * k) % 2:
                raise ConfigError(f"n*k/2 must be an integer (n={n}, k={k})")
            if n * k // 2 > n * (n - 1) // 2:
                raise ConfigError(f"mean degree {k} impossible on {n} nodes")
        elif fam == "scale_free":
            m = self.m if self.m is not None else (k // 2 if k else None)
            m0 = self.m0 if self.m0 is not None else m
            if m is None:
                raise ConfigError("scale_free needs m (or an even mean degree k)")
            object.__setattr__(self, "m", m)
            object.__setattr__(self, "m0", m0)
            if not 1 <= m <= m0 < n:
                raise ConfigError(f"scale_free needs 1 <= m <= m0 < n (m={m}, m0={m0}, n={n})")

    def to_dict(self) -> dict:
        return asdict(self)

    def with_seed(self, seed: int) -> "GenSpec":
        return GenSpec(**{**asdict(self), "seed": seed})


def _check_ring(n: int, k: Optional[int]) -> None:
    if k is None or k < 2 or k % 2:
        raise ConfigError(f"ring families need an even degree k >= 2, got {k}")
    if n < max(3, k + 1):
        raise ConfigError(f"ring families need n >= max(3, k+1) (n={n}, k={k})")


def topology_spec(topology: str, n: int, k: int, *, p: float = 0.01, seed: int = 0,
                  max_retries: int = 100) -> GenSpec:
    """GenSpec for one of the four compared topologies at mean degree ``k``.

    Scale-free graphs use ``m = m0 = k/2`` so that the mean degree is close to ``k``.
    """
    fam = canonical_family(topology)
    if fam == "small_world":
        return GenSpec(fam, n, k=k, p=p, seed=seed, max_retries=max_retries)
    if fam == "scale_free":
        return GenSpec(fam, n, k=k, m=k // 2, m0=k // 2, seed=seed, max_retries=max_retries)
    return GenSpec(fam, n, k=k, seed=seed, max_retries=max_retries)


def gen_complete(n: int) -> Graph:
    if n < 2:
        raise ConfigError("complete graph needs n >= 2")
    g = Graph(n)
    for u in range(n):
        for v in range(u + 1, n):
            g.add_edge(u, v)
    g.meta = {"family": "complete", "n": n}
    return g


def gen_regular_ring(n: int, k: int) -> Graph:
    """Ring lattice: node i linked to i±1, ..., i±k/2 (mod n)."""
    _check_ring(n, k)
    g = Graph(n)
    for i in range(n):
        for j in range(1, k // 2 + 1):
            g.add_edge(i, (i + j) % n)
    g.meta = {"family": "regular_ring", "n": n, "k": k}
    return g


def _retry(family: str, seed: int, max_retries: int, build: Callable[[np.random.Generator], Graph]) -> Graph:
    for attempt in range(max_retries):
        g = build(make_rng(seed, attempt))
        if is_connected(g):
            g.meta["attempts"] = attempt + 1
            return g
    raise GenerationError(family, max_retries)


def _rewire(n: int, k: int, p: float, rng: np.random.Generator) -> Graph:
    g = gen_regular_ring(n, k)
    u01 = UniformStream(rng)
    # visit ring edges by (source, offset); only the clockwise endpoint moves
    for i in range(n):
        for j in range(1, k // 2 + 1):
            if u01.random() >= p:
                continue
            if g.degree(i) >= n - 1:
                continue
            nbrs = g.neighbor_set(i)
            w = u01.below(n)
            while w == i or w in nbrs:
                w = u01.below(n)
            g.remove_edge(i, (i + j) % n)
            g.add_edge(i, w)
    return g


def gen_small_world(n: int, k: int, p: float, seed: int = 0, max_retries: int = 100) -> Graph:
    """Watts-Strogatz rewiring of ``gen_regular_ring(n, k)``; edge count stays nk/2."""
    _check_ring(n, k)
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"rewiring probability must lie in [0, 1], got {p}")
    g = _retry("small_world", seed, max_retries, lambda rng: _rewire(n, k, p, rng))
    g.meta.update({"family": "small_world", "n": n, "k": k, "p": p, "seed": seed})
    return g


def _pair_from_index(idx: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Decode lexicographic indices of unordered pairs ``i < j``."""
    rows = np.arange(n, dtype=np.int64)
    row_start = rows * (2 * n - rows - 1) // 2
    i = np.searchsorted(row_start, idx, side="right") - 1
    j = idx - row_start[i] + i + 1
    return i, j


def _er(n: int, k: int, rng: np.random.Generator) -> Graph:
    total = n * (n - 1) // 2
    m = n * k // 2
    idx = np.sort(rng.choice(total, size=m, replace=False))
    i, j = _pair_from_index(idx, n)
    return Graph.from_edges(n, zip(i.tolist(), j.tolist()))


def gen_random_er(n: int, k: int, seed: int = 0, max_retries: int = 100) -> Graph:
    """Uniform random graph with exactly nk/2 edges (mean degree exactly k)."""
    GenSpec("random_er", n, k=k)  # validation
    g = _retry("random_er", seed, max_retries, lambda rng: _er(n, k, rng))
    g.meta.update({"family": "random_er", "n": n, "k": k, "seed": seed})
    return g


def seed_ring(m0: int) -> Graph:
    """The m0 seed nodes of preferential growth, joined in a ring
    (a single edge for m0=2, no edge for m0=1)."""
    g = Graph(m0)
    if m0 == 2:
        g.add_edge(0, 1)
    elif m0 >= 3:
        for i in range(m0):
            g.add_edge(i, (i + 1) % m0)
    return g


def _endpoint_pool(g: Graph) -> list[int]:
    pool = []
    for u, v in g.edges():
        pool.append(u)
        pool.append(v)
    return pool


def preferential_arrival(g: Graph, pool: list[int], m: int, u01: UniformStream) -> int:
    """Append one node to ``g`` linked to ``m`` distinct existing nodes drawn
    with probability proportional to degree.

    ``pool`` holds every edge endpoint once per incidence (so a uniform draw
    from it is degree-proportional) and is updated in place after each pick.
    """
    v = g.add_node()
    existing = v
    for _ in range(min(m, existing)):
        while True:
            if pool:
                t = pool[u01.below(len(pool))]
            else:
                t = u01.below(existing)
            if t != v and not g.has_edge(v, t):
                break
        g.add_edge(v, t)
        pool.append(v)
        pool.append(t)
    return v


def grow_preferential(n: int, m0: int, m: int, u01: UniformStream,
                      on_step: Optional[Callable[[Graph, list[int], int], None]] = None) -> Graph:
    """Shared growth loop: seed ring, then ``n - m0`` preferential arrivals.
    ``on_step(g, pool, t)`` runs after arrival ``t`` (1-based)."""
    g = seed_ring(m0)
    pool = _endpoint_pool(g)
    for t in range(1, n - m0 + 1):
        preferential_arrival(g, pool, m, u01)
        if on_step is not None:
            on_step(g, pool, t)
    return g


def gen_scale_free(n: int, m0: int, m: int, seed: int = 0) -> Graph:
    """Preferential-attachment growth from a ring of ``m0`` seed nodes."""
    if not 1 <= m <= m0 < n:
        raise ConfigError(f"scale_free needs 1 <= m <= m0 < n (m={m}, m0={m0}, n={n})")
    g = grow_preferential(n, m0, m, UniformStream(make_rng(seed, 0)))
    g.meta = {
        "family": "scale_free", "n": n, "m0": m0, "m": m, "seed": seed,
        "seed_ring_edges": seed_ring(m0).m,
        "note": "m0 seed nodes joined in a ring before growth",
    }
    return g


def generate(spec: GenSpec) -> Graph:
    fam = spec.family
    if fam == "complete":
        return gen_complete(spec.n)
    if fam == "regular_ring":
        return gen_regular_ring(spec.n, spec.k)
    if fam == "small_world":
        return gen_small_world(spec.n, spec.k, spec.p, spec.seed, spec.max_retries)
    if fam == "random_er":
        return gen_random_er(spec.n, spec.k, spec.seed, spec.max_retries)
    if fam == "scale_free":
        return gen_scale_free(spec.n, spec.m0, spec.m, spec.seed)
    raise ConfigError(f"unknown family {fam!r}")
