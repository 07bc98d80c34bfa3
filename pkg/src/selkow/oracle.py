"""Exact verification on small graphs.

:func:`enumerate_exact` walks all ``n!`` orderings and turns integer counts
into exact probabilities. The walk is split into blocks that share a rank
prefix. Each block is evaluated with numpy on a ``(rows, n)`` rank matrix,
so this path shares no code with :mod:`selkow.sampler`, which it is used to
check.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

import numpy as np

from .bounds import caro_wei, rational_json, selkow_bound, selkow_excess
from .graph import CounterexampleSpec, Graph, counterexample_graph
from .sampler import min_degree_greedy

DEFAULT_LIMIT = 10
ALPHA_GUARD = 30
_SUFFIX_MAX = 8  # block rows = suffix_len!; 8! = 40320


class EnumerationLimitError(ValueError):
    pass


def check_limit(n: int, limit: int = DEFAULT_LIMIT) -> None:
    if n > limit:
        raise EnumerationLimitError(
            f"n={n} exceeds the enumeration limit {limit} "
            f"({n}! = {math.factorial(n):,} orderings); raise the limit to override"
        )


@dataclass(frozen=True)
class ExactStats:
    n: int
    orderings: int
    expected_i1: Fraction
    expected_i2: Fraction
    expected_union: Fraction
    prob_in_i1: tuple[Fraction, ...]
    prob_in_i2: tuple[Fraction, ...]
    prob_in_h: tuple[Fraction, ...]
    # E[sum over V(H) of 1/(d_G(v)+1)]
    expected_residual_cw: Fraction
    # E[CW(H)], i.e. with H-degrees
    expected_cw_h: Fraction

    @property
    def expected_i1_plus_cwh(self) -> Fraction:
        return self.expected_i1 + self.expected_cw_h

    def to_json(self) -> dict:
        def per_vertex(values):
            return [rational_json(q) for q in values]

        return {
            "n": self.n,
            "orderings": self.orderings,
            "expected_i1": rational_json(self.expected_i1),
            "expected_i2": rational_json(self.expected_i2),
            "expected_union": rational_json(self.expected_union),
            "expected_residual_cw": rational_json(self.expected_residual_cw),
            "expected_cw_h": rational_json(self.expected_cw_h),
            "expected_i1_plus_cwh": rational_json(self.expected_i1_plus_cwh),
            "prob_in_i1": per_vertex(self.prob_in_i1),
            "prob_in_i2": per_vertex(self.prob_in_i2),
            "prob_in_h": per_vertex(self.prob_in_h),
        }


@lru_cache(maxsize=None)
def _suffix_table(s: int) -> np.ndarray:
    """All permutations of ``range(s)`` as rows, lexicographic."""
    if s == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return np.array(list(permutations(range(s))), dtype=np.int8)


def _block_counts(adj, n: int, prefixes) -> tuple[np.ndarray, ...]:
    """Integer counts over every ordering whose rank vector starts with one of ``prefixes``.

    Returns ``(i1, i2, h, hdeg)`` where ``hdeg[v, k]`` counts orderings with
    ``v`` in H and ``d_H(v) == k``.
    """
    i1_c = np.zeros(n, dtype=np.int64)
    i2_c = np.zeros(n, dtype=np.int64)
    h_c = np.zeros(n, dtype=np.int64)
    hdeg_c = np.zeros((n, n), dtype=np.int64)
    for prefix in prefixes:
        k = len(prefix)
        rest = sorted(set(range(n)) - set(prefix))
        table = np.asarray(rest, dtype=np.int8)[_suffix_table(n - k)]
        rank = np.empty((table.shape[0], n), dtype=np.int8)
        rank[:, :k] = prefix
        rank[:, k:] = table

        in_i1 = np.ones(rank.shape, dtype=bool)
        for v in range(n):
            for u in adj[v]:
                in_i1[:, v] &= rank[:, v] < rank[:, u]
        covered = in_i1.copy()
        for v in range(n):
            for u in adj[v]:
                covered[:, v] |= in_i1[:, u]
        in_h = ~covered
        in_i2 = in_h.copy()
        d_h = np.zeros(rank.shape, dtype=np.int64)
        for v in range(n):
            for u in adj[v]:
                in_i2[:, v] &= ~in_h[:, u] | (rank[:, v] < rank[:, u])
                d_h[:, v] += in_h[:, u]

        i1_c += in_i1.sum(axis=0)
        i2_c += in_i2.sum(axis=0)
        h_c += in_h.sum(axis=0)
        for v in range(n):
            hdeg_c[v] += np.bincount(d_h[in_h[:, v], v], minlength=n)[:n]
    return i1_c, i2_c, h_c, hdeg_c


def enumerate_exact(g: Graph, limit: int = DEFAULT_LIMIT, workers: int = 1) -> ExactStats:
    """Exact expectations and probabilities over all ``n!`` orderings."""
    n = g.n
    check_limit(n, limit)
    total = math.factorial(n)
    adj = g.adj
    # at least one leading rank is fixed per block so work can be split
    prefix_len = min(n, max(1, n - _SUFFIX_MAX))
    prefixes = list(permutations(range(n), prefix_len))

    if workers <= 1 or len(prefixes) == 1:
        parts = [_block_counts(adj, n, prefixes)]
    else:
        workers = min(workers, len(prefixes))
        cuts = [len(prefixes) * k // workers for k in range(workers + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_block_counts, adj, n, prefixes[a:b])
                for a, b in zip(cuts, cuts[1:])
            ]
            parts = [f.result() for f in futures]

    i1_c = [sum(int(p[0][v]) for p in parts) for v in range(n)]
    i2_c = [sum(int(p[1][v]) for p in parts) for v in range(n)]
    h_c = [sum(int(p[2][v]) for p in parts) for v in range(n)]
    hdeg = [[sum(int(p[3][v][k]) for p in parts) for k in range(n)] for v in range(n)]

    degs = g.degrees
    residual_cw = sum((Fraction(h_c[v], degs[v] + 1) for v in range(n)), Fraction(0))
    cw_h = sum(
        (Fraction(hdeg[v][k], k + 1) for v in range(n) for k in range(n)), Fraction(0)
    )
    e_i1 = Fraction(sum(i1_c), total)
    e_i2 = Fraction(sum(i2_c), total)
    return ExactStats(
        n=n,
        orderings=total,
        expected_i1=e_i1,
        expected_i2=e_i2,
        expected_union=e_i1 + e_i2,
        prob_in_i1=tuple(Fraction(c, total) for c in i1_c),
        prob_in_i2=tuple(Fraction(c, total) for c in i2_c),
        prob_in_h=tuple(Fraction(c, total) for c in h_c),
        expected_residual_cw=residual_cw / total,
        expected_cw_h=cw_h / total,
    )


# --- independence number ------------------------------------------------------------


def _popcount(x: int) -> int:
    return bin(x).count("1")


def brute_force_alpha(g: Graph, guard: int = ALPHA_GUARD) -> tuple[int, list[int]]:
    """Exact independence number and one maximum independent set.

    Branch and bound on bitmasks: vertices of degree <= 1 in the remaining
    graph are taken outright, otherwise branch on a maximum-degree vertex
    (include it, or drop it). Prunes with ``size + remaining <= best``.
    """
    n = g.n
    if n > guard:
        raise EnumerationLimitError(f"n={n} exceeds the independence-number guard {guard}")
    nbr = [sum(1 << u for u in g.adj[v]) for v in range(n)]
    seed_set = min_degree_greedy(g)
    best = [len(seed_set), sum(1 << v for v in seed_set)]

    def search(cand: int, chosen: int, size: int) -> None:
        while True:
            if size + _popcount(cand) <= best[0]:
                return
            if not cand:
                best[0], best[1] = size, chosen
                return
            pick, max_v, max_d = -1, -1, -1
            m = cand
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                d = _popcount(nbr[v] & cand)
                if d <= 1:
                    pick = v
                    break
                if d > max_d:
                    max_v, max_d = v, d
            if pick < 0:
                break
            cand &= ~((1 << pick) | nbr[pick])
            chosen |= 1 << pick
            size += 1
        bit = 1 << max_v
        search(cand & ~(bit | nbr[max_v]), chosen | bit, size + 1)
        search(cand & ~bit, chosen, size)

    search((1 << n) - 1, 0, 0)
    witness = [v for v in range(n) if best[1] >> v & 1]
    return best[0], witness


# --- refutation of the per-vertex phase-two inequality ------------------------------


@dataclass(frozen=True)
class RefutationReport:
    n: int
    favourable_orderings: int
    closed_form_prob: Fraction
    enumerated_prob: Fraction | None
    claimed_rhs: Fraction

    @property
    def epsilon(self) -> Fraction:
        return self.closed_form_prob / self.claimed_rhs

    @property
    def matches_closed_form(self) -> bool | None:
        if self.enumerated_prob is None:
            return None
        return self.enumerated_prob == self.closed_form_prob

    @property
    def refuted(self) -> bool:
        p = self.closed_form_prob if self.enumerated_prob is None else self.enumerated_prob
        return 0 < p < self.claimed_rhs

    @property
    def passed(self) -> bool:
        """The closed form is self-consistent and agrees with enumeration when run."""
        return self.closed_form_prob == Fraction(1, 2 * self.n) and (
            self.matches_closed_form is not False
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "favourable_orderings": self.favourable_orderings,
            "total_orderings": math.factorial(self.n),
            "closed_form_prob": rational_json(self.closed_form_prob),
            "enumerated_prob": None
            if self.enumerated_prob is None
            else rational_json(self.enumerated_prob),
            "matches_closed_form": self.matches_closed_form,
            "claimed_rhs": rational_json(self.claimed_rhs),
            "epsilon": rational_json(self.epsilon),
            "refuted": self.refuted,
        }


def refutation_check(
    spec: CounterexampleSpec,
    limit: int = DEFAULT_LIMIT,
    workers: int = 1,
    enumerate_if_possible: bool = True,
) -> RefutationReport:
    """Compare P(v in I2) for the designated ``v`` with the inequality it was claimed to obey.

    The closed form counts ``C(n-1, 2) * (n-3)!`` favourable orderings. When
    ``n <= limit`` the probability is also enumerated.
    """
    n = spec.n
    g = counterexample_graph(spec)
    favourable = math.comb(n - 1, 2) * math.factorial(n - 3)
    enumerated = None
    if enumerate_if_possible and n <= limit:
        enumerated = enumerate_exact(g, limit=limit, workers=workers).prob_in_i2[spec.v]
    return RefutationReport(
        n=n,
        favourable_orderings=favourable,
        closed_form_prob=Fraction(favourable, math.factorial(n)),
        enumerated_prob=enumerated,
        claimed_rhs=selkow_excess(g, spec.v),
    )


# --- the corrected argument, step by step ------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    lhs: Fraction | None = None
    rhs: Fraction | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.lhs is not None:
            out["lhs"] = rational_json(self.lhs)
        if self.rhs is not None:
            out["rhs"] = rational_json(self.rhs)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class ChainReport:
    stats: ExactStats
    cw: Fraction
    selkow: Fraction
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "cw": rational_json(self.cw),
            "selkow": rational_json(self.selkow),
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "stats": self.stats.to_json(),
        }


def verify_proof_chain(g: Graph, limit: int = DEFAULT_LIMIT, workers: int = 1) -> ChainReport:
    """Check each inequality of the corrected argument exactly on ``g``.

    1. E|I1| = CW(G), and P(v in I1) = 1/(d(v)+1) for every v.
    2. Per vertex, 0 <= P(v in H) and P(v not in H) <= 1/(d(v)+1) + sum_{u in N(v)} 1/(d(u)+1).
    3. E|I1| + E[sum_{v in H} 1/(d_G(v)+1)] >= Selkow(G).
    4. E[CW(H)] >= E[sum_{v in H} 1/(d_G(v)+1)], from d_H <= d_G.
    """
    stats = enumerate_exact(g, limit=limit, workers=workers)
    cw = caro_wei(g)
    selkow = selkow_bound(g).selkow
    degs = g.degrees
    checks = [Check("expected_i1_equals_cw", stats.expected_i1 == cw, stats.expected_i1, cw)]

    bad_i1 = [v for v in range(g.n) if stats.prob_in_i1[v] != Fraction(1, degs[v] + 1)]
    checks.append(
        Check(
            "prob_in_i1_identity",
            not bad_i1,
            detail=f"failing vertices {bad_i1}" if bad_i1 else f"{g.n} vertices",
        )
    )

    bad_union = []
    for v in range(g.n):
        p_h = stats.prob_in_h[v]
        bound = Fraction(1, degs[v] + 1) + sum(
            (Fraction(1, degs[u] + 1) for u in g.adj[v]), Fraction(0)
        )
        if p_h < 0 or 1 - p_h > bound:
            bad_union.append(v)
    checks.append(
        Check(
            "union_bound",
            not bad_union,
            detail=f"failing vertices {bad_union}" if bad_union else f"{g.n} vertices",
        )
    )

    chain = stats.expected_i1 + stats.expected_residual_cw
    checks.append(Check("chain_lower_bound", chain >= selkow, chain, selkow))
    checks.append(
        Check(
            "degree_domination",
            stats.expected_cw_h >= stats.expected_residual_cw,
            stats.expected_cw_h,
            stats.expected_residual_cw,
        )
    )
    return ChainReport(stats, cw, selkow, checks)


def bound_sandwich(g: Graph, guard: int = ALPHA_GUARD) -> list[Check]:
    """``CW(G) <= Selkow(G) <= alpha(G)``, exactly."""
    report = selkow_bound(g)
    alpha, witness = brute_force_alpha(g, guard)
    return [
        Check("cw_le_selkow", report.cw <= report.selkow, report.cw, report.selkow),
        Check(
            "selkow_le_alpha",
            report.selkow <= alpha,
            report.selkow,
            Fraction(alpha),
            detail=f"witness {witness}",
        ),
        Check("alpha_witness_independent", g.is_independent(witness) and len(witness) == alpha),
    ]
