"""
Oracle Service
Brute-force reference checks over vertex bitmasks, plus seeded random
quasistable graphs for property tests.

Shares nothing with the other services except the graph model.
"""

import itertools
import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Tuple

from quasistab.config import BOX_PADDING, RETRY_BUDGET, logger
from quasistab.models import (
    CorpusParams,
    DomainError,
    GenerationError,
    MarkedDualGraph,
    Multidegree,
    Vertex,
    Edge,
)

CORE_ONLY = "core-only"
LITERAL = "literal"
READINGS = (CORE_ONLY, LITERAL)


# ==================== Bitmask Structure ====================


@dataclass(frozen=True)
class _Structure:
    ids: Tuple[str, ...]
    genera: Tuple[int, ...]
    legs: Tuple[int, ...]
    ends: Tuple[Tuple[int, int], ...]
    genus: int
    tails: Tuple[int, ...]
    bridges: Tuple[int, ...]
    maximal_tails: Tuple[int, ...]
    maximal_bridges: Tuple[int, ...]
    exceptional: int
    connected: Tuple[int, ...]



def _members(mask: int, size: int) -> List[int]:
    return [i for i in range(size) if mask >> i & 1]


def _is_connected(mask: int, ends: Tuple[Tuple[int, int], ...]) -> bool:
    if not mask:
        return False
    seen = mask & -mask
    while True:
        grown = seen
        for a, b in ends:
            if seen >> a & 1 and mask >> b & 1:
                grown |= 1 << b
            if seen >> b & 1 and mask >> a & 1:
                grown |= 1 << a
        if grown == seen:
            return seen == mask
        seen = grown


def _crossing(mask: int, ends: Tuple[Tuple[int, int], ...]) -> int:
    return sum(1 for a, b in ends if (mask >> a & 1) != (mask >> b & 1))


def _between(first: int, second: int, ends: Tuple[Tuple[int, int], ...]) -> int:
    """Edges with one end in first and the other in second (disjoint masks)."""
    return sum(
        1
        for a, b in ends
        if (first >> a & 1 and second >> b & 1) or (first >> b & 1 and second >> a & 1)
    )


def _genus_of(mask: int, genera: Tuple[int, ...], ends: Tuple[Tuple[int, int], ...]) -> int:
    inside = sum(1 for a, b in ends if mask >> a & 1 and mask >> b & 1)
    return sum(g for i, g in enumerate(genera) if mask >> i & 1) + inside - bin(mask).count("1") + 1


def _maximal(masks: List[int]) -> Tuple[int, ...]:
    return tuple(m for m in masks if not any(m != o and m & o == m for o in masks))


@lru_cache(maxsize=256)
def _structure(graph: MarkedDualGraph) -> _Structure:
    ids = graph.vertex_ids
    index = {vid: i for i, vid in enumerate(ids)}
    genera = tuple(vertex.genus for vertex in graph.vertices)
    legs = tuple(len(vertex.legs) for vertex in graph.vertices)
    ends = tuple((index[edge.u], index[edge.v]) for edge in graph.edges)
    size = len(ids)
    full = (1 << size) - 1
    genus = sum(genera) + len(ends) - size + 1

    connected = [
        mask for mask in range(1, full) if _is_connected(mask, ends)
    ]
    rational = [mask for mask in connected if _genus_of(mask, genera, ends) == 0]
    tails = [mask for mask in rational if _crossing(mask, ends) == 1]
    bridges = [
        mask
        for mask in rational
        if _crossing(mask, ends) == 2 and not any(mask & t == mask for t in tails)
    ]

    exceptional = 0
    for i in range(size):
        looped = any(a == b == i for a, b in ends)
        endpoints = sum((a == i) + (b == i) for a, b in ends)
        if genera[i] == 0 and not looped and legs[i] == 0 and endpoints == 2:
            exceptional |= 1 << i

    return _Structure(
        ids=ids,
        genera=genera,
        legs=legs,
        ends=ends,
        genus=genus,
        tails=tuple(tails),
        bridges=tuple(bridges),
        maximal_tails=_maximal(tails),
        maximal_bridges=_maximal(bridges),
        exceptional=exceptional,
        connected=tuple(connected),
    )


def _naive_quasistable(graph: MarkedDualGraph) -> bool:
    """Quasistability by direct scan of all connected subsets."""
    s = _structure(graph)
    if not s.ids or 2 * s.genus - 2 + graph.n <= 0:
        return False
    size = len(s.ids)
    destabilizing = 0
    for i in range(size):
        looped = any(a == b == i for a, b in s.ends)
        endpoints = sum((a == i) + (b == i) for a, b in s.ends)
        special = endpoints + s.legs[i]
        if s.genera[i] == 0 and not looped:
            if special < 2:
                return False
            if special == 2:
                destabilizing |= 1 << i
    if destabilizing & ~s.exceptional:
        return False
    if any(tail & s.exceptional for tail in s.tails):
        return False
    return all(bin(bridge & s.exceptional).count("1") <= 1 for bridge in s.maximal_bridges)


def _require(graph: MarkedDualGraph) -> _Structure:
    s = _structure(graph)
    if s.genus < 3:
        raise DomainError(f"total genus must be at least 3, got {s.genus}")
    if not _naive_quasistable(graph):
        raise DomainError("graph is not quasistable")
    return s


# ==================== Balanced Test ====================


def _within(genus: int, d: int, w: int, k: int, t: int, b: int, degree: int) -> bool:
    lower = Fraction(d * w + (3 * genus - 3 - d) * t, 2 * genus - 2) + b - Fraction(k, 2)
    upper = Fraction(d * w + (genus - 1 - d) * t, 2 * genus - 2) - b + Fraction(k, 2)
    return lower <= degree <= upper


def naive_is_balanced(
    graph: MarkedDualGraph, mdeg: Mapping[str, int], reading: str = CORE_ONLY
) -> bool:
    """Balanced test by exhaustive scan, under the core-only or the literal reading."""
    if reading not in READINGS:
        raise DomainError(f"unknown reading {reading}")
    s = _require(graph)
    if set(mdeg) != set(s.ids):
        raise DomainError("multidegree keys do not match graph vertices")
    size = len(s.ids)
    values = [mdeg[vid] for vid in s.ids]

    def degree(mask: int) -> int:
        return sum(values[i] for i in _members(mask, size))

    if any(values[i] != 1 for i in _members(s.exceptional, size)):
        return False
    if any(degree(tail) != -1 for tail in s.tails):
        return False
    if any(degree(bridge) not in (0, 1) for bridge in s.bridges):
        return False

    d = sum(values)
    covered = 0
    for mask in s.maximal_tails + s.maximal_bridges:
        covered |= mask
    zero_bridges = [bridge for bridge in s.maximal_bridges if degree(bridge) == 0]

    for mask in s.connected:
        if reading == CORE_ONLY:
            if mask & covered:
                continue
            t = sum(1 for tail in s.maximal_tails if _between(tail, mask, s.ends))
            b = sum(1 for bridge in zero_bridges if _between(bridge, mask, s.ends) == 2)
        else:
            inside = s.maximal_tails + s.maximal_bridges
            if any(mask & other == mask for other in inside):
                continue
            t = sum(
                1
                for tail in s.maximal_tails
                if tail & mask != tail and (tail & mask or _between(tail, mask, s.ends))
            )
            b = sum(
                1
                for bridge in zero_bridges
                if bridge & mask != bridge and _between(bridge, mask & ~bridge, s.ends) == 2
            )
        w = 2 * _genus_of(mask, s.genera, s.ends) - 2 + _crossing(mask, s.ends)
        if not _within(s.genus, d, w, _crossing(mask, s.ends), t, b, degree(mask)):
            return False
    return True


def default_radius(graph: MarkedDualGraph, d: int) -> int:
    """Box radius covering every balanced multidegree of total d."""
    s = _require(graph)
    size = len(s.ids)
    if size == 1:
        return abs(d) + BOX_PADDING

    covered = 0
    for mask in s.maximal_tails + s.maximal_bridges:
        covered |= mask
    largest = 1
    for i in range(size):
        mask = 1 << i
        k = _crossing(mask, s.ends)
        if covered & mask:
            largest = max(largest, abs(k - 2), abs(k - 1))
            continue
        t = sum(1 for tail in s.maximal_tails if _between(tail, mask, s.ends))
        w = 2 * _genus_of(mask, s.genera, s.ends) - 2 + k
        lower = Fraction(d * w + (3 * s.genus - 3 - d) * t, 2 * s.genus - 2) - Fraction(k, 2)
        upper = Fraction(d * w + (s.genus - 1 - d) * t, 2 * s.genus - 2) + Fraction(k, 2)
        largest = max(largest, abs(math.floor(lower)), abs(math.ceil(upper)))
    return largest + BOX_PADDING


def box(graph: MarkedDualGraph, d: int, radius: int):
    """Integer vectors in [-radius, radius] summing to d, as multidegrees."""
    ids = graph.vertex_ids
    for head in itertools.product(range(-radius, radius + 1), repeat=len(ids) - 1):
        last = d - sum(head)
        if -radius <= last <= radius:
            yield Multidegree.of(dict(zip(ids, head + (last,))))


def brute_enumerate(graph: MarkedDualGraph, d: int, radius: int) -> List[Multidegree]:
    """Every box multidegree of total d passing the core-only naive test."""
    found = [mdeg for mdeg in box(graph, d, radius) if naive_is_balanced(graph, mdeg, CORE_ONLY)]
    return sorted(found)


def reading_divergences(graph: MarkedDualGraph, d: int, radius: int) -> List[Multidegree]:
    """Box multidegrees on which the core-only and literal readings disagree."""
    return [
        mdeg
        for mdeg in box(graph, d, radius)
        if naive_is_balanced(graph, mdeg, CORE_ONLY) != naive_is_balanced(graph, mdeg, LITERAL)
    ]


# ==================== Random Graphs ====================


def _sample(rng: random.Random, params: CorpusParams) -> MarkedDualGraph:
    count = rng.randint(1, min(params.max_vertices, params.max_edges + 1))
    ids = [f"v{i}" for i in range(count)]
    genera = [rng.randint(params.min_genus_per_vertex, params.max_genus_per_vertex) for _ in ids]

    pairs = [(ids[rng.randrange(i)], ids[i]) for i in range(1, count)]
    for _ in range(rng.randint(0, params.max_edges - len(pairs))):
        u, v = rng.choice(ids), rng.choice(ids)
        if u == v and not params.allow_loops:
            continue
        pairs.append((u, v))

    legs: Dict[str, List[int]] = {vid: [] for vid in ids}
    rational = [vid for vid, genus in zip(ids, genera) if genus == 0]
    for label in range(1, rng.randint(0, params.max_legs) + 1):
        pool = rational if rational and rng.random() < 0.7 else ids
        legs[rng.choice(pool)].append(label)

    return MarkedDualGraph(
        vertices=tuple(Vertex(vid, genus, tuple(legs[vid])) for vid, genus in zip(ids, genera)),
        edges=tuple(Edge(f"e{i}", u, v) for i, (u, v) in enumerate(pairs, start=1)),
        n=sum(len(labels) for labels in legs.values()),
    )


def random_quasistable(params: CorpusParams) -> MarkedDualGraph:
    """Seeded rejection sampling of a quasistable graph of total genus 3 up to max_total_genus."""
    rng = random.Random(params.seed)
    for attempt in range(RETRY_BUDGET):
        graph = _sample(rng, params)
        s = _structure(graph)
        ceiling = params.max_total_genus
        if s.genus < 3 or (ceiling is not None and s.genus > ceiling):
            continue
        if _naive_quasistable(graph):
            logger.debug(f"Sampled graph after {attempt + 1} attempts (seed {params.seed})")
            return graph
    logger.error(f"No quasistable graph within {RETRY_BUDGET} attempts (seed {params.seed})")
    raise GenerationError(f"no quasistable graph within {RETRY_BUDGET} attempts")


def generate_corpus(params: CorpusParams, count: int) -> List[MarkedDualGraph]:
    """count graphs with seeds params.seed, params.seed + 1, ..."""
    return [random_quasistable(replace(params, seed=params.seed + i)) for i in range(count)]
