"""Random orderings and the two-phase independent set construction.

Phase one takes every vertex that precedes all of its neighbours. Deleting
those vertices and their neighbourhoods leaves a residual graph ``H``;
phase two repeats the rule on ``H`` under the same ordering. On top of that
sit a Monte Carlo estimator for the expectations involved and a Las Vegas
search that replaces phase two by the min-degree greedy.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bounds import rational_json, selkow_bound
from .graph import Graph, induced_subgraph
from .rng import DEFAULT_SEED, SplitMix64, trial_seed


@dataclass(frozen=True)
class Ordering:
    """Total order on the vertices: ``u`` precedes ``v`` iff ``rank[u] < rank[v]``."""

    rank: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.rank) != list(range(len(self.rank))):
            raise ValueError(f"rank {self.rank} is not a permutation of 0..{len(self.rank) - 1}")

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "Ordering":
        """Build from vertices listed first to last."""
        rank = [0] * len(seq)
        for pos, v in enumerate(seq):
            rank[v] = pos
        return cls(tuple(rank))

    def restrict(self, keep: Sequence[int]) -> "Ordering":
        """Induced order on ``sorted(keep)``, relabelled ``0..len(keep)-1``."""
        kept = sorted(keep)
        by_rank = sorted(range(len(kept)), key=lambda i: self.rank[kept[i]])
        return Ordering.from_sequence(by_rank)


def sample_ordering(n: int, seed: int) -> Ordering:
    return Ordering.from_sequence(SplitMix64(seed).permutation(n))


def phase_one(g: Graph, order: Ordering) -> list[int]:
    r = order.rank
    return [v for v in range(g.n) if all(r[v] < r[u] for u in g.adj[v])]


def residual(g: Graph, i1: Sequence[int]) -> tuple[list[int], Graph]:
    """Vertices left after deleting ``i1`` and its neighbours, and the graph they induce."""
    removed = set(i1)
    for x in i1:
        removed.update(g.adj[x])
    h, old_ids = induced_subgraph(g, (v for v in range(g.n) if v not in removed))
    return old_ids, h


def phase_two(h: Graph, order: Ordering) -> list[int]:
    # same rule as phase one; `order` must already be restricted to H
    return phase_one(h, order)


@dataclass(frozen=True)
class TwoPhaseResult:
    i1: tuple[int, ...]
    h_vertices: tuple[int, ...]
    i2: tuple[int, ...]

    @property
    def union_size(self) -> int:
        return len(self.i1) + len(self.i2)


def two_phase(g: Graph, order: Ordering) -> TwoPhaseResult:
    i1 = phase_one(g, order)
    h_vertices, h = residual(g, i1)
    i2 = phase_two(h, order.restrict(h_vertices))
    return TwoPhaseResult(tuple(i1), tuple(h_vertices), tuple(h_vertices[i] for i in i2))


def min_degree_greedy(g: Graph) -> list[int]:
    """Take a minimum-degree vertex (smallest id on ties), delete its closed
    neighbourhood, repeat. Degrees are those of the shrinking graph."""
    alive = set(range(g.n))
    chosen = []
    while alive:
        v = min(alive, key=lambda u: (sum(1 for w in g.adj[u] if w in alive), u))
        chosen.append(v)
        alive.discard(v)
        alive.difference_update(g.adj[v])
    return sorted(chosen)


# --- Las Vegas search -----------------------------------------------------------


@dataclass(frozen=True)
class LasVegasResult:
    best: tuple[int, ...]
    trials: int
    reached: bool
    target: Fraction

    @property
    def threshold(self) -> int:
        return math.ceil(self.target)

    def to_json(self) -> dict:
        return {
            "kind": "las_vegas",
            "target": rational_json(self.target),
            "threshold": self.threshold,
            "size": len(self.best),
            "best": list(self.best),
            "trials": self.trials,
            "reached": self.reached,
        }


def las_vegas_search(
    g: Graph,
    target: Fraction | None = None,
    max_trials: int = 10_000,
    seed: int = DEFAULT_SEED,
) -> LasVegasResult:
    """Sample orderings until phase one plus a greedy set on ``H`` reaches ``ceil(target)``.

    ``target`` defaults to the Selkow bound. Not reaching it within
    ``max_trials`` is reported through ``reached``, not raised.
    """
    if max_trials < 1:
        raise ValueError(f"max_trials must be >= 1, got {max_trials}")
    if target is None:
        target = selkow_bound(g).selkow
    threshold = math.ceil(target)
    best: tuple[int, ...] = ()
    for t in range(max_trials):
        order = sample_ordering(g.n, trial_seed(seed, t))
        i1 = phase_one(g, order)
        h_vertices, h = residual(g, i1)
        found = tuple(sorted(i1 + [h_vertices[i] for i in min_degree_greedy(h)]))
        if not g.is_independent(found):
            raise RuntimeError(f"trial {t} produced a dependent set {found}")
        if len(found) > len(best) or t == 0:
            best = found
        if len(best) >= threshold:
            return LasVegasResult(best, t + 1, True, target)
    return LasVegasResult(best, max_trials, False, target)


# --- Monte Carlo ------------------------------------------------------------------

# name -> (needs a vertex, observation on a TwoPhaseResult)
ESTIMANDS = {
    "e_i1": (False, lambda r, v: len(r.i1)),
    "e_i2": (False, lambda r, v: len(r.i2)),
    "e_union": (False, lambda r, v: r.union_size),
    "p_i1": (True, lambda r, v: int(v in r.i1)),
    "p_i2": (True, lambda r, v: int(v in r.i2)),
    "p_h": (True, lambda r, v: int(v in r.h_vertices)),
}


@dataclass(frozen=True)
class EstimateReport:
    estimand: str
    trials: int
    mean: Fraction
    standard_error: float
    seed: int
    vertex: int | None = None

    def to_json(self) -> dict:
        return {
            "kind": "estimate",
            "estimand": self.estimand,
            "vertex": self.vertex,
            "trials": self.trials,
            "seed": self.seed,
            "mean": rational_json(self.mean),
            "standard_error": self.standard_error,
        }


def _mc_chunk(g: Graph, names: tuple[str, ...], vertex, seed: int, start: int, stop: int):
    observe = [ESTIMANDS[name][1] for name in names]
    s1 = [0] * len(names)
    s2 = [0] * len(names)
    for t in range(start, stop):
        res = two_phase(g, sample_ordering(g.n, trial_seed(seed, t)))
        for k, f in enumerate(observe):
            x = f(res, vertex)
            s1[k] += x
            s2[k] += x * x
    return s1, s2


def monte_carlo(
    g: Graph,
    estimands: Sequence[str],
    trials: int,
    seed: int = DEFAULT_SEED,
    vertex: int | None = None,
    workers: int = 1,
) -> list[EstimateReport]:
    """Estimate the named quantities from ``trials`` random orderings.

    Trial ``t`` always uses ``trial_seed(seed, t)`` and the sums are exact
    integers, so the result does not depend on ``workers``.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    names = tuple(estimands)
    for name in names:
        if name not in ESTIMANDS:
            raise ValueError(f"unknown estimand {name!r}; expected one of {sorted(ESTIMANDS)}")
        if ESTIMANDS[name][0] and (vertex is None or not 0 <= vertex < g.n):
            raise ValueError(f"estimand {name!r} needs a vertex id in 0..{g.n - 1}, got {vertex}")

    workers = max(1, min(workers, trials))
    bounds = [trials * k // workers for k in range(workers + 1)]
    chunks = list(zip(bounds, bounds[1:]))
    if workers == 1:
        parts = [_mc_chunk(g, names, vertex, seed, 0, trials)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_mc_chunk, g, names, vertex, seed, a, b) for a, b in chunks
            ]
            parts = [f.result() for f in futures]

    reports = []
    for k, name in enumerate(names):
        s1 = sum(p[0][k] for p in parts)
        s2 = sum(p[1][k] for p in parts)
        mean = Fraction(s1, trials)
        if trials == 1:
            se = 0.0
        else:
            var = (s2 - Fraction(s1 * s1, trials)) / (trials - 1)
            se = math.sqrt(var / trials)
        needs_vertex = ESTIMANDS[name][0]
        reports.append(
            EstimateReport(name, trials, mean, se, seed, vertex if needs_vertex else None)
        )
    return reports
