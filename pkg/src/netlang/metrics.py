"""Network measures, random-graph baselines and degree-distribution fits."""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.sparse import csgraph

from netlang._rng import make_rng
from netlang.errors import ConfigError, DisconnectedGraphError, InsufficientDataError
from netlang.graph import Graph, components, density

EXACT_THRESHOLD = 20_000
SAMPLE_SOURCES = 1_000
MIN_FIT_BINS = 3
BINS_PER_DECADE = 10


# -- clustering ---------------------------------------------------------------

def triangles(g: Graph) -> np.ndarray:
    """Number of edges among the neighbors of each node."""
    if g.m == 0:
        return np.zeros(g.n, dtype=np.int64)
    a = g.to_csr()
    paths2 = (a @ a).multiply(a)
    return np.asarray(paths2.sum(axis=1)).ravel() // 2


def clustering_all(g: Graph) -> np.ndarray:
    """Per-node clustering; nodes of degree < 2 get 0."""
    k = g.degrees().astype(float)
    t = triangles(g).astype(float)
    pairs = k * (k - 1)
    out = np.zeros(g.n)
    mask = k >= 2
    out[mask] = 2.0 * t[mask] / pairs[mask]
    return out


def clustering_node(g: Graph, u: int) -> float:
    nbrs = g.neighbors(u)
    k = len(nbrs)
    if k < 2:
        return 0.0
    links = sum(1 for i, v in enumerate(nbrs) for w in nbrs[i + 1:] if g.has_edge(v, w))
    return 2.0 * links / (k * (k - 1))


def clustering_avg(g: Graph) -> float:
    if g.n == 0:
        return 0.0
    return float(clustering_all(g).mean())


# -- path length --------------------------------------------------------------

@dataclass(frozen=True)
class PathLength:
    value: float
    exact: bool
    sources: int
    component_count: int
    lcc_fraction: float


def path_length_details(g: Graph, sample_sources: Optional[int] = None, seed: int = 0,
                        exact_threshold: int = EXACT_THRESHOLD, strict: bool = False) -> PathLength:
    """Mean shortest-path distance over unordered node pairs.

    Exact all-pairs BFS when the (largest) component has at most
    ``exact_threshold`` nodes and no ``sample_sources`` is given; otherwise
    the mean over BFS trees from uniformly sampled sources.
    Disconnected input is measured on its largest component unless ``strict``.
    """
    comps = components(g) if g.n else []
    if strict and len(comps) > 1:
        raise DisconnectedGraphError(len(comps))
    if not comps:
        return PathLength(math.nan, True, 0, 0, 0.0)
    lcc = max(comps, key=len)
    h = g if len(comps) == 1 else g.subgraph(lcc)[0]
    n = h.n
    if n < 2:
        return PathLength(math.nan, True, 0, len(comps), n / g.n)

    if sample_sources is None and n > exact_threshold:
        sample_sources = SAMPLE_SOURCES
    if sample_sources is not None and sample_sources < n:
        sources = np.sort(make_rng(seed).choice(n, size=sample_sources, replace=False))
        exact = False
    else:
        sources = np.arange(n)
        exact = True

    a = h.to_csr()
    total = 0.0
    for start in range(0, sources.size, 256):
        chunk = sources[start:start + 256]
        d = csgraph.shortest_path(a, method="D", unweighted=True, directed=False, indices=chunk)
        total += float(d.sum())
    value = total / (sources.size * (n - 1))
    return PathLength(value, exact, int(sources.size), len(comps), n / g.n)


def char_path_length(g: Graph, sample_sources: Optional[int] = None, seed: int = 0,
                     exact_threshold: int = EXACT_THRESHOLD, strict: bool = False) -> float:
    return path_length_details(g, sample_sources, seed, exact_threshold, strict).value


def random_baselines(n: float, mean_degree: float) -> tuple[float, float]:
    """Clustering and path length of a random graph with the same size and
    mean degree: ``<k>/n`` and ``ln n / ln <k>``."""
    if n < 2:
        raise ConfigError("random baselines need n >= 2")
    if mean_degree <= 1:
        raise ConfigError(f"mean degree must exceed 1 for ln n / ln <k>, got {mean_degree}")
    return mean_degree / n, math.log(n) / math.log(mean_degree)


# -- betweenness --------------------------------------------------------------

def betweenness(g: Graph, strict: bool = False) -> list[float]:
    """Brandes accumulation; scores count unordered source-sink pairs."""
    if strict and g.n:
        comps = components(g)
        if len(comps) > 1:
            raise DisconnectedGraphError(len(comps))
    adj = g.adjacency()
    n = g.n
    score = [0.0] * n
    for s in range(n):
        stack = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = [0] * n
        dist = [-1] * n
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            dv = dist[v] + 1
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dv
                    queue.append(w)
                if dist[w] == dv:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * n
        while stack:
            w = stack.pop()
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                score[w] += delta[w]
    return [x / 2.0 for x in score]


# -- assortativity ------------------------------------------------------------

def assortativity(g: Graph) -> Optional[float]:
    """Degree Pearson correlation over both orientations of every edge.

    Returns None when undefined (fewer than 2 edges or zero degree variance).
    """
    if g.m < 2:
        return None
    deg = g.degrees().astype(float)
    e = g.edge_array()
    x = np.concatenate([deg[e[:, 0]], deg[e[:, 1]]])
    y = np.concatenate([deg[e[:, 1]], deg[e[:, 0]]])
    xc = x - x.mean()
    yc = y - y.mean()
    var = float((xc * xc).sum())
    if var <= 1e-12 * max(1.0, float((x * x).sum())):
        return None
    return float((xc * yc).sum() / math.sqrt(var * float((yc * yc).sum())))


# -- degree distribution ------------------------------------------------------

def degree_histogram(g: Graph) -> dict[int, int]:
    return dict(sorted(Counter(g.degrees().tolist()).items()))


@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    k_min: int
    r_squared: float
    regime: str = "single"
    breakpoint: Optional[float] = None
    exponent_low: Optional[float] = None
    exponent_high: Optional[float] = None
    n_bins: int = 0
    ssr: float = 0.0


def log_binned(hist: dict[int, float], k_min: int = 1,
               bins_per_decade: int = BINS_PER_DECADE) -> tuple[np.ndarray, np.ndarray]:
    """Integer-aligned logarithmic bins over ``k >= k_min``.

    Returns bin positions (geometric mean of the first and last integer in
    the bin) and mean frequency per integer degree, nonzero bins only.
    """
    k_min = max(1, int(k_min))
    ks = np.array([k for k, c in hist.items() if k >= k_min and c > 0], dtype=np.int64)
    if ks.size == 0:
        return np.empty(0), np.empty(0)
    cs = np.array([float(hist[k]) for k in ks.tolist()])
    k_max = int(ks.max())
    ratio = 10.0 ** (1.0 / bins_per_decade)
    edges = [k_min]
    x = float(k_min)
    while edges[-1] <= k_max:
        x *= ratio
        nxt = max(edges[-1] + 1, int(math.ceil(x - 1e-9)))
        edges.append(nxt)
    edges[-1] = min(edges[-1], k_max + 1)
    edges = np.array(edges, dtype=np.int64)
    which = np.searchsorted(edges, ks, side="right") - 1
    sums = np.bincount(which, weights=cs, minlength=edges.size - 1)
    lo, hi = edges[:-1], edges[1:]
    dens = sums / (hi - lo)
    pos = np.sqrt(lo * (hi - 1.0))
    keep = dens > 0
    return pos[keep], dens[keep]


def _linfit(lx: np.ndarray, ly: np.ndarray) -> tuple[float, float, float]:
    """Least-squares line; returns slope, intercept, residual sum of squares."""
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    return float(slope), float(intercept), float(resid @ resid)


def _r_squared(ssr: float, ly: np.ndarray) -> float:
    sst = float(((ly - ly.mean()) ** 2).sum())
    if sst == 0.0:
        return 1.0
    return min(1.0, max(0.0, 1.0 - ssr / sst))


def default_k_min(hist: dict[int, float]) -> int:
    total = sum(hist.values())
    if total == 0:
        return 1
    mean = sum(k * c for k, c in hist.items()) / total
    return max(1, int(round(mean)))


def fit_power_law(hist: dict[int, float], k_min: Optional[int] = None,
                  bins_per_decade: int = BINS_PER_DECADE) -> PowerLawFit:
    """Straight-line fit of log frequency against log degree, ``k >= k_min``.

    ``k_min`` defaults to the rounded mean degree.
    """
    if k_min is None:
        k_min = default_k_min(hist)
    pos, dens = log_binned(hist, k_min, bins_per_decade)
    if pos.size < MIN_FIT_BINS:
        raise InsufficientDataError(int(pos.size), MIN_FIT_BINS)
    lx, ly = np.log10(pos), np.log10(dens)
    slope, _, ssr = _linfit(lx, ly)
    return PowerLawFit(-slope, int(k_min), _r_squared(ssr, ly), n_bins=int(pos.size), ssr=ssr)


def fit_two_regime(hist: dict[int, float], k_min: int = 1,
                   bins_per_decade: int = BINS_PER_DECADE) -> PowerLawFit:
    """Two independent power-law segments split at the breakpoint that
    minimises the combined residual. ``exponent`` is the high-degree one."""
    pos, dens = log_binned(hist, k_min, bins_per_decade)
    need = 2 * MIN_FIT_BINS
    if pos.size < need:
        raise InsufficientDataError(int(pos.size), need)
    lx, ly = np.log10(pos), np.log10(dens)
    best = None
    for b in range(MIN_FIT_BINS, pos.size - MIN_FIT_BINS + 1):
        s_lo, _, r_lo = _linfit(lx[:b], ly[:b])
        s_hi, _, r_hi = _linfit(lx[b:], ly[b:])
        if best is None or r_lo + r_hi < best[0]:
            best = (r_lo + r_hi, b, s_lo, s_hi)
    ssr, b, s_lo, s_hi = best
    return PowerLawFit(
        exponent=-s_hi,
        k_min=int(k_min),
        r_squared=_r_squared(ssr, ly),
        regime="two_regime",
        breakpoint=float(pos[b]),
        exponent_low=-s_lo,
        exponent_high=-s_hi,
        n_bins=int(pos.size),
        ssr=ssr,
    )


MIN_REGIME_GAP = 0.5


def select_regime(hist: dict[int, float], k_min: int = 1, ratio: float = 0.5,
                  min_gap: float = MIN_REGIME_GAP) -> Optional[PowerLawFit]:
    """Single vs two-regime over ``k >= k_min``.

    Two regimes win only when they cut the residual below ``ratio`` times
    the single-line residual, both segments decay, and their exponents
    differ by at least ``min_gap`` (binning noise alone halves the
    residual of a pure power law).
    """
    try:
        single = fit_power_law(hist, k_min)
    except InsufficientDataError:
        return None
    try:
        two = fit_two_regime(hist, k_min)
    except InsufficientDataError:
        return single
    distinct = (two.exponent_low > 0 and two.exponent_high > 0
                and abs(two.exponent_high - two.exponent_low) >= min_gap)
    return two if distinct and two.ssr < ratio * single.ssr else single


# -- report -------------------------------------------------------------------

CSV_COLUMNS = ("n", "m", "mean_degree", "density", "C", "L", "c_random", "l_random",
               "assortativity", "gamma", "regime", "breakpoint")


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, float):
        return f"{x:.10g}"
    return str(x)


@dataclass
class MetricsReport:
    n: int
    m_edges: int
    mean_degree: float
    density: Optional[float]
    clustering_avg: float
    char_path_length: float
    c_random: Optional[float]
    l_random: Optional[float]
    assortativity: Optional[float]
    degree_histogram: dict[int, int]
    component_count: int
    lcc_fraction: float
    path_length_exact: bool = True
    path_length_sources: int = 0
    power_law: Optional[PowerLawFit] = None
    regime_fit: Optional[PowerLawFit] = None
    notes: list[str] = field(default_factory=list)

    @staticmethod
    def csv_header() -> str:
        return ",".join(CSV_COLUMNS)

    def csv_row(self) -> str:
        gamma = self.power_law.exponent if self.power_law else None
        regime = self.regime_fit.regime if self.regime_fit else "none"
        bp = self.regime_fit.breakpoint if self.regime_fit else None
        vals = (self.n, self.m_edges, self.mean_degree, self.density, self.clustering_avg,
                self.char_path_length, self.c_random, self.l_random, self.assortativity,
                gamma, regime, bp)
        return ",".join(_fmt(v) for v in vals)

    def to_text(self) -> str:
        lines = [
            f"nodes                 {self.n}",
            f"edges                 {self.m_edges}",
            f"mean degree <k>       {_fmt(self.mean_degree)}",
            f"density D             {_fmt(self.density)}",
            f"components            {self.component_count} (largest holds {self.lcc_fraction:.4f} of nodes)",
            f"clustering C          {_fmt(self.clustering_avg)}",
            f"path length L         {_fmt(self.char_path_length)}"
            + ("" if self.path_length_exact else f" (estimate from {self.path_length_sources} sources)"),
            f"C_random              {_fmt(self.c_random)}",
            f"L_random              {_fmt(self.l_random)}",
            f"assortativity         {_fmt(self.assortativity) or 'undefined'}",
        ]
        if self.power_law:
            pl = self.power_law
            lines.append(f"power-law gamma       {pl.exponent:.4f} (k >= {pl.k_min}, R^2 {pl.r_squared:.4f}, {pl.n_bins} bins)")
        else:
            lines.append("power-law gamma       not fitted (too few degree bins)")
        if self.regime_fit and self.regime_fit.regime == "two_regime":
            rf = self.regime_fit
            lines.append(f"degree regimes        two: {rf.exponent_low:.4f} below k={rf.breakpoint:.4g}, {rf.exponent_high:.4f} above")
        elif self.regime_fit:
            lines.append("degree regimes        single")
        lines.extend(f"note: {s}" for s in self.notes)
        return "\n".join(lines) + "\n"


def analyze(g: Graph, sample_sources: Optional[int] = None, seed: int = 0,
            exact_threshold: int = EXACT_THRESHOLD, strict: bool = False) -> MetricsReport:
    pl = path_length_details(g, sample_sources, seed, exact_threshold, strict)
    mean_k = 2.0 * g.m / g.n if g.n else 0.0
    c_rand = l_rand = None
    notes = []
    if g.n >= 2 and mean_k > 1:
        c_rand, l_rand = random_baselines(g.n, mean_k)
    else:
        notes.append("random baselines undefined for <k> <= 1")
    if pl.component_count > 1:
        notes.append(f"path length measured on the largest of {pl.component_count} components")
    hist = degree_histogram(g)
    try:
        power = fit_power_law(hist)
    except InsufficientDataError:
        power = None
    return MetricsReport(
        n=g.n,
        m_edges=g.m,
        mean_degree=mean_k,
        density=density(g) if g.n >= 2 else None,
        clustering_avg=clustering_avg(g),
        char_path_length=pl.value,
        c_random=c_rand,
        l_random=l_rand,
        assortativity=assortativity(g),
        degree_histogram=hist,
        component_count=pl.component_count,
        lcc_fraction=pl.lcc_fraction,
        path_length_exact=pl.exact,
        path_length_sources=pl.sources,
        power_law=power,
        regime_fit=select_regime(hist, 1),
        notes=notes,
    )
