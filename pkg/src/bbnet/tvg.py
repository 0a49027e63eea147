"""Time-varying graphs on a fixed vertex set with arcs between consecutive instants.

A graph is a vertex count, an instant count, and a set of temporal arcs
``(u, i, v)`` meaning: information at vertex u at instant index i reaches
vertex v at instant index i+1.  Instant indices are 0-based; the file format
spells each arc as four integers ``u i v i+1``.

Vertex-to-vertex spread is measured in intervals (instant-to-instant hops).
The diffusion time of a vertex is the minimum number of intervals after which
a required fraction of all vertices has been reached (a vertex reaches itself
at 0 intervals); the diffusion diameter is the worst diffusion time to reach
everyone.  The reverse reach time of a vertex is the worst over sources of the
earliest arrival from that source, and time-reachability centrality is its
reciprocal.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass

INFINITE = math.inf


class InvalidArc(ValueError):
    """An arc references vertices or instants outside the graph, or skips instants."""


class GenerationFailed(RuntimeError):
    """A graph family generator could not meet its diameter bound."""


@dataclass(frozen=True)
class Tvg:
    num_vertices: int
    num_instants: int
    arcs: frozenset[tuple[int, int, int]]

    def __post_init__(self) -> None:
        if self.num_vertices < 1 or self.num_instants < 1:
            raise InvalidArc("graph needs at least one vertex and one instant")
        for u, i, v in self.arcs:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise InvalidArc(f"arc ({u},{i},{v}) references unknown vertex")
            if not (0 <= i < self.num_instants - 1):
                raise InvalidArc(f"arc ({u},{i},{v}) does not join consecutive instants")


@functools.lru_cache(maxsize=64)
def _adjacency(tvg: Tvg) -> tuple[dict[int, list[int]], ...]:
    """Per-interval adjacency: element i maps u -> sorted targets at instant i+1."""
    per_interval: list[dict[int, list[int]]] = [dict() for _ in range(tvg.num_instants - 1)]
    for u, i, v in sorted(tvg.arcs):
        per_interval[i].setdefault(u, []).append(v)
    return tuple(per_interval)


def earliest_arrivals(tvg: Tvg, source: int, start_instant: int = 0) -> list[float]:
    """Earliest number of intervals (from ``start_instant``) to reach each vertex.

    ``result[source] == 0``; unreachable vertices get ``INFINITE``.
    """
    if not 0 <= source < tvg.num_vertices:
        raise InvalidArc("unknown source vertex")
    if not 0 <= start_instant < tvg.num_instants:
        raise InvalidArc("unknown start instant")
    adjacency = _adjacency(tvg)
    arrivals: list[float] = [INFINITE] * tvg.num_vertices
    arrivals[source] = 0
    reached = 1
    for interval in range(start_instant, tvg.num_instants - 1):
        if reached == tvg.num_vertices:
            break
        step = interval - start_instant + 1
        links = adjacency[interval]
        # Everything reached so far keeps spreading at later instants, so the
        # whole reached set (not just last interval's additions) is the frontier.
        for u in range(tvg.num_vertices):
            if arrivals[u] <= step - 1:
                for v in links.get(u, ()):
                    if arrivals[v] == INFINITE:
                        arrivals[v] = step
                        reached += 1
    return arrivals


def diffusion_time(tvg: Tvg, source: int, fraction: float = 1.0, start_instant: int = 0) -> float:
    """Minimum intervals until at least ceil(fraction * num_vertices) vertices are reached."""
    if not 0 < fraction <= 1:
        raise ValueError("fraction must be in (0, 1]")
    needed = math.ceil(fraction * tvg.num_vertices)
    if needed <= 1:
        return 0
    arrivals = sorted(earliest_arrivals(tvg, source, start_instant))
    reach = arrivals[needed - 1]
    return reach if reach != INFINITE else INFINITE


def diffusion_diameter(tvg: Tvg, start_instant: int = 0) -> float:
    """Worst diffusion time over sources at fraction 1 (reach every vertex)."""
    return max(
        diffusion_time(tvg, source, 1.0, start_instant) for source in range(tvg.num_vertices)
    )


def reverse_reach_time(tvg: Tvg, target: int, start_instant: int = 0) -> float:
    """Worst over sources of the earliest arrival at ``target``."""
    worst = 0.0
    for source in range(tvg.num_vertices):
        arrival = earliest_arrivals(tvg, source, start_instant)[target]
        if arrival == INFINITE:
            return INFINITE
        worst = max(worst, arrival)
    return worst


def reachability_centrality(tvg: Tvg, vertex: int, start_instant: int = 0) -> float:
    """Reciprocal of reverse reach time; 0 when some source never reaches the vertex.

    Meaningful only on graphs with at least two vertices (a singleton has
    reverse reach 0).
    """
    if tvg.num_vertices < 2:
        raise ValueError("centrality needs at least two vertices")
    reach = reverse_reach_time(tvg, vertex, start_instant)
    if reach == INFINITE:
        return 0.0
    if reach == 0:
        raise AssertionError("reverse reach 0 is impossible with >= 2 vertices")
    return 1.0 / reach


def most_central_vertices(tvg: Tvg, start_instant: int = 0) -> list[int]:
    """Vertices ordered by decreasing centrality, ties broken by lowest index."""
    scored = [
        (-reachability_centrality(tvg, v, start_instant), v) for v in range(tvg.num_vertices)
    ]
    scored.sort()
    return [v for _, v in scored]


def write_tvg(tvg: Tvg, path) -> None:
    """Write ``num_vertices num_instants`` then one ``u i v i+1`` line per arc."""
    with open(path, "w") as fh:
        fh.write(f"{tvg.num_vertices} {tvg.num_instants}\n")
        for u, i, v in sorted(tvg.arcs):
            fh.write(f"{u} {i} {v} {i + 1}\n")


def read_tvg(path) -> Tvg:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise InvalidArc("header must be: num_vertices num_instants")
        num_vertices, num_instants = int(header[0]), int(header[1])
        arcs = set()
        for line_number, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            fields = line.split()
            if len(fields) != 4:
                raise InvalidArc(f"line {line_number}: expected 'u i v j'")
            u, i, v, j = (int(x) for x in fields)
            if j != i + 1:
                raise InvalidArc(f"line {line_number}: arcs must join consecutive instants")
            arcs.add((u, i, v))
    return Tvg(num_vertices=num_vertices, num_instants=num_instants, arcs=frozenset(arcs))


def _replicate(edges: set[tuple[int, int]], num_vertices: int, num_instants: int) -> Tvg:
    arcs = frozenset(
        (u, i, v) for i in range(num_instants - 1) for u, v in edges
    )
    return Tvg(num_vertices=num_vertices, num_instants=num_instants, arcs=arcs)


def _static_eccentricity(edges: set[tuple[int, int]], num_vertices: int) -> float:
    """Worst-case BFS distance between any ordered vertex pair of a static digraph."""
    targets: dict[int, list[int]] = {}
    for u, v in edges:
        targets.setdefault(u, []).append(v)
    worst = 0.0
    for source in range(num_vertices):
        dist: dict[int, int] = {source: 0}
        frontier = [source]
        while frontier:
            nxt = []
            for u in frontier:
                for v in targets.get(u, ()):
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        if len(dist) < num_vertices:
            return INFINITE
        worst = max(worst, max(dist.values()))
    return worst


def _hypercube_edges(num_vertices: int) -> set[tuple[int, int]]:
    edges = set()
    dimensions = max(1, (num_vertices - 1).bit_length())
    for u in range(num_vertices):
        for bit in range(dimensions):
            v = u ^ (1 << bit)
            if v < num_vertices:
                edges.add((u, v))
                edges.add((v, u))
    return edges


def _random_regular_edges(num_vertices: int, seed: int) -> set[tuple[int, int]]:
    import networkx

    degree = max(1, math.ceil(math.log2(num_vertices)))
    if (degree * num_vertices) % 2:
        degree += 1
    if degree >= num_vertices:
        degree = num_vertices - 1
        if (degree * num_vertices) % 2:
            degree -= 1
    graph = networkx.random_regular_graph(degree, num_vertices, seed=seed)
    edges = set()
    for u, v in graph.edges():
        edges.add((u, v))
        edges.add((v, u))
    return edges


def _star_edges(num_vertices: int) -> set[tuple[int, int]]:
    edges = set()
    for spoke in range(1, num_vertices):
        edges.add((0, spoke))
        edges.add((spoke, 0))
    return edges


FAMILIES = ("replicated-hypercube", "replicated-random-regular", "star-broadcast")

_FAMILY_LOG_FACTOR = {
    "replicated-hypercube": 2.0,
    "replicated-random-regular": 3.0,
    "star-broadcast": 2.0,
}


def small_diameter_tvg(family: str, num_vertices: int, seed: int = 0, max_retries: int = 8) -> Tvg:
    """Generate a family instance whose diffusion diameter D satisfies D <= c*lg(N).

    The static edge set is replicated across D+1 instants (so the graph is just
    long enough for full diffusion).  The bound is verified by direct
    computation; on failure the generator retries with seed+1, and raises
    :class:`GenerationFailed` after ``max_retries`` attempts.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    if num_vertices < 2:
        raise ValueError("families need at least two vertices")
    factor = _FAMILY_LOG_FACTOR[family]
    bound = factor * max(1.0, math.log2(num_vertices))
    for attempt in range(max_retries):
        attempt_seed = seed + attempt
        if family == "replicated-hypercube":
            edges = _hypercube_edges(num_vertices)
        elif family == "replicated-random-regular":
            edges = _random_regular_edges(num_vertices, attempt_seed)
        else:
            edges = _star_edges(num_vertices)
        static_diameter = _static_eccentricity(edges, num_vertices)
        if static_diameter == INFINITE:
            continue
        tvg = _replicate(edges, num_vertices, int(static_diameter) + 1)
        diameter = diffusion_diameter(tvg)
        if diameter <= bound:
            return tvg
    raise GenerationFailed(
        f"{family} with {num_vertices} vertices missed diameter bound {bound:.2f} "
        f"after {max_retries} attempts"
    )


def random_tvg(rng: random.Random, max_vertices: int = 6, max_instants: int = 4) -> Tvg:
    """A small arbitrary graph for cross-checking metrics against brute force."""
    num_vertices = rng.randint(1, max_vertices)
    num_instants = rng.randint(1, max_instants)
    arcs = set()
    for i in range(num_instants - 1):
        for u in range(num_vertices):
            for v in range(num_vertices):
                if u != v and rng.random() < 0.3:
                    arcs.add((u, i, v))
    return Tvg(num_vertices=num_vertices, num_instants=num_instants, arcs=frozenset(arcs))
