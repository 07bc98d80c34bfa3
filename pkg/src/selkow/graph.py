"""Simple undirected graphs, text parsers, and generators.

Vertices are the integers ``0..n-1``. A :class:`Graph` is immutable once
built; every constructor funnels through :func:`from_edge_list`, which
validates and normalizes the edge set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid graph data (self-loop, out-of-range id, bad parameter)."""


class GraphParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for v, nbrs in enumerate(self.adj):
            if any(b <= a for a, b in zip(nbrs, nbrs[1:])):
                raise GraphError(f"neighbors of {v} not strictly increasing")
            for u in nbrs:
                if u == v:
                    raise GraphError(f"self-loop at {v}")
                if not 0 <= u < self.n:
                    raise GraphError(f"neighbor {u} of {v} out of range")
                # symmetry; lists are short so a linear scan is fine
                if v not in self.adj[u]:
                    raise GraphError(f"edge ({v}, {u}) is not symmetric")

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(v, u) for v in range(self.n) for u in self.adj[v] if v < u]

    @property
    def m(self) -> int:
        return sum(self.degrees) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def is_independent(self, vertices: Iterable[int]) -> bool:
        chosen = set(vertices)
        return all(u not in chosen for v in chosen for u in self.adj[v])

    def is_regular(self) -> bool:
        return len(set(self.degrees)) <= 1


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph on ``n`` vertices. Duplicate edges collapse; self-loops raise."""
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``keep``.

    Returns the subgraph and ``old_ids`` where ``old_ids[new] == old``.
    New ids follow the increasing order of the old ones.
    """
    old_ids = sorted(set(keep))
    new_id = {old: new for new, old in enumerate(old_ids)}
    adj = tuple(
        tuple(new_id[u] for u in g.adj[old] if u in new_id) for old in old_ids
    )
    return Graph(len(old_ids), adj), old_ids


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphParseError(f"expected an integer, got {token!r}", lineno) from None


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS ``col`` text: ``p edge n m`` then ``e u v`` lines (1-based)."""
    n = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphParseError(f"malformed header {raw.strip()!r}", lineno)
            n = _parse_int(parts[2], lineno)
            _parse_int(parts[3], lineno)
            if n < 0:
                raise GraphParseError("negative vertex count", lineno)
        elif tag == "e":
            if n is None:
                raise GraphParseError("edge line before 'p edge' header", lineno)
            if len(parts) != 3:
                raise GraphParseError(f"malformed edge line {raw.strip()!r}", lineno)
            u, v = _parse_int(parts[1], lineno), _parse_int(parts[2], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(f"vertex id out of range 1..{n}", lineno)
            if u == v:
                raise GraphParseError(f"self-loop on vertex {u}", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise GraphParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise GraphParseError("missing 'p edge n m' header")
    return from_edge_list(n, edges)


def parse_edge_list(text: str, one_based: bool = False) -> Graph:
    """Parse whitespace-separated ``u v`` pairs, one per line.

    ``#`` starts a comment. The vertex count is the largest id plus one.
    """
    offset = 1 if one_based else 0
    edges: list[tuple[int, int]] = []
    n = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        if len(parts) != 2:
            raise GraphParseError(f"expected 'u v', got {raw.strip()!r}", lineno)
        u = _parse_int(parts[0], lineno) - offset
        v = _parse_int(parts[1], lineno) - offset
        if u < 0 or v < 0:
            raise GraphParseError("vertex id below the first valid id", lineno)
        if u == v:
            raise GraphParseError(f"self-loop on vertex {u + offset}", lineno)
        edges.append((u, v))
        n = max(n, u + 1, v + 1)
    return from_edge_list(n, edges)


# --- generators -------------------------------------------------------------


def empty(n: int) -> Graph:
    return from_edge_list(n, [])


def path(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"a simple cycle needs at least 3 vertices, got {n}")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return from_edge_list(n, combinations(range(n), 2))


def star(leaves: int) -> Graph:
    """K_{1,leaves}; the center is vertex 0."""
    if leaves < 0:
        raise GraphError(f"leaf count must be non-negative, got {leaves}")
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def hypercube(dim: int) -> Graph:
    if dim < 0:
        raise GraphError(f"dimension must be non-negative, got {dim}")
    n = 1 << dim
    return from_edge_list(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(dim)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p).

    Pairs ``(i, j)``, ``i < j``, are visited in lexicographic order and kept
    when ``random.Random(seed).random() < p``; the output is a pure function
    of ``(n, p, seed)``.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    return from_edge_list(n, [e for e in combinations(range(n), 2) if rng.random() < p])


GENERATORS = {
    "empty": empty,
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "star": star,
    "hypercube": hypercube,
    "petersen": petersen,
    "gnp": gnp,
}


def generate(kind: str, *params) -> Graph:
    """Named generator, e.g. ``generate("gnp", 8, 0.5, 1)``."""
    try:
        fn = GENERATORS[kind]
    except KeyError:
        raise GraphError(
            f"unknown graph kind {kind!r}; expected one of {sorted(GENERATORS)}"
        ) from None
    try:
        return fn(*params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {kind!r}: {exc}") from None


def parse_gen_spec(spec: str) -> Graph:
    """``KIND:PARAM:...`` as used on the command line, e.g. ``gnp:8:0.5:1``."""
    kind, *raw = spec.split(":")
    if kind == "counterexample":
        if not raw:
            raise GraphError("counterexample takes N[:F-KIND], e.g. counterexample:7:path")
        try:
            n = int(raw[0])
        except ValueError:
            raise GraphError(f"bad vertex count {raw[0]!r} in {spec!r}") from None
        return counterexample_graph(counterexample_spec(n, ":".join(raw[1:]) or "empty"))
    params: list[int | float] = []
    for tok in raw:
        try:
            params.append(int(tok))
        except ValueError:
            try:
                params.append(float(tok))
            except ValueError:
                raise GraphError(f"bad generator parameter {tok!r} in {spec!r}") from None
    return generate(kind, *params)


# --- counterexample family ---------------------------------------------------


@dataclass(frozen=True)
class CounterexampleSpec:
    """A base graph F plus three new vertices v, w, x.

    Edges added: vw, wx, and xy for every y in F. F keeps ids ``0..n-4``;
    v, w, x get ``n-3``, ``n-2``, ``n-1``.
    """

    f_graph: Graph

    @property
    def n(self) -> int:
        return self.f_graph.n + 3

    @property
    def v(self) -> int:
        return self.n - 3

    @property
    def w(self) -> int:
        return self.n - 2

    @property
    def x(self) -> int:
        return self.n - 1


def counterexample_graph(spec: CounterexampleSpec) -> Graph:
    f = spec.f_graph
    edges = f.edges() + [(spec.v, spec.w), (spec.w, spec.x)]
    edges += [(spec.x, y) for y in range(f.n)]
    return from_edge_list(spec.n, edges)


def counterexample_spec(n: int, f_kind: str = "empty") -> CounterexampleSpec:
    """Family member on ``n`` vertices; ``f_kind`` is ``empty``, ``complete``,
    ``path`` or ``gnp:P:SEED``."""
    if n < 4:
        raise GraphError(f"counterexample needs n >= 4, got {n}")
    k = n - 3
    kind, *rest = f_kind.split(":")
    if kind == "gnp":
        if len(rest) != 2:
            raise GraphError("F=gnp needs gnp:P:SEED")
        f = gnp(k, float(rest[0]), int(rest[1]))
    elif kind in ("empty", "complete", "path") and not rest:
        f = GENERATORS[kind](k)
    else:
        raise GraphError(f"unknown F kind {f_kind!r}")
    return CounterexampleSpec(f)
