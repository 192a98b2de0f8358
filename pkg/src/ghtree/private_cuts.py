"""Private cut primitives: noised min s-t cuts and isolating cuts.

The s-t mechanism attaches exponentially distributed noise edges from
every vertex to both endpoints and solves the noised instance exactly,
reporting the true weight of the side it found. The isolating-cut
routine runs the bit-partition scheme on top of that mechanism and, to
keep regions from ballooning, adds a penalty weight between each
region's terminals-of-interest and its contracted outside before the
final combined cut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from ._maxflow import min_cut_source_side
from .dp import Epsilon, PrivacyLedger, Rng, sample_exponential
from .exact import _expand, min_st_cut_exact
from .graph import ContractionMap, CutSide, Graph, contract, cut_weight, make_cut_side


@dataclass(frozen=True)
class IsoCutParams:
    """Budget and shape parameters for one isolating-cuts invocation.

    ``U`` is the terminal universe whose coverage the penalty protects;
    it may differ from the terminal set R being isolated. ``beta`` is
    the failure probability the penalty is calibrated against.
    """

    eps: Epsilon
    beta: float
    U: frozenset[int]
    penalty_const: float = 4.0

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta!r}")
        if self.penalty_const <= 0.0:
            raise ValueError("penalty_const must be positive")
        object.__setattr__(self, "U", frozenset(int(v) for v in self.U))


@dataclass(frozen=True)
class IsoCutsResult:
    cuts: Mapping[int, CutSide]
    total_value: float


def private_min_st_cut(
    g: Graph,
    s: int,
    t: int,
    eps: Epsilon,
    rng: Rng,
    ledger: PrivacyLedger | None = None,
) -> CutSide:
    """Min s-t cut under noise edges, reporting the true cut weight.

    Every vertex other than s and t gets a noise edge to s and one to
    t, each an independent exponential with mean 1/eps stacked onto any
    existing weight. The noised instance is cut exactly and the side
    found is returned with its weight recomputed in the input graph.
    With an infinite budget this is exactly min_st_cut_exact and
    consumes no randomness.
    """
    if not g.has_vertex(s) or not g.has_vertex(t):
        raise ValueError("cut endpoints must be graph vertices")
    if s == t:
        raise ValueError("cut endpoints must differ")
    mean = 0.0 if eps.is_noiseless else 1.0 / eps.value
    if ledger is not None:
        ledger.charge("private_st_cut", 1.0, mean)
    if eps.is_noiseless:
        return min_st_cut_exact(g, s, t).cut
    additions = []
    for v in g.vertices:
        if v == s or v == t:
            continue
        additions.append((v, s, sample_exponential(mean, rng)))
        additions.append((v, t, sample_exponential(mean, rng)))
    noised = Graph(g.vertices, list(g.edges()) + additions)
    side = min_cut_source_side(noised, s, t)
    return CutSide(side=side, value=cut_weight(g, side))


def private_min_ST_cut(
    g: Graph,
    S: Iterable[int],
    T: Iterable[int],
    eps: Epsilon,
    rng: Rng,
    ledger: PrivacyLedger | None = None,
) -> CutSide:
    """Private minimum cut separating vertex set S from vertex set T.

    Contracts each side into a supernode and runs the s-t mechanism.
    Singleton sides skip contraction, so a call with |S| = |T| = 1 is
    bit-for-bit the same as private_min_st_cut under the same stream.
    """
    S = sorted({int(v) for v in S})
    T = sorted({int(v) for v in T})
    if not S or not T:
        raise ValueError("S and T must be nonempty")
    if set(S) & set(T):
        raise ValueError("S and T must be disjoint")
    if not set(S) <= g.vertex_set or not set(T) <= g.vertex_set:
        raise ValueError("S and T must be subsets of the vertex set")
    if len(S) == 1 and len(T) == 1:
        return private_min_st_cut(g, S[0], T[0], eps, rng, ledger)
    work = g
    maps: list[ContractionMap] = []
    if len(S) > 1:
        s_label = max(work.vertices) + 1
        work, cm = contract(work, S, s_label)
        maps.append(cm)
    else:
        s_label = S[0]
    if len(T) > 1:
        t_label = max(work.vertices) + 1
        work, cm = contract(work, T, t_label)
        maps.append(cm)
    else:
        t_label = T[0]
    inner = private_min_st_cut(work, s_label, t_label, eps, rng, ledger)
    side = _expand(inner.side, maps, g)
    return CutSide(side=side, value=cut_weight(g, side))


def private_isolating_cuts(
    g: Graph,
    R: Iterable[int],
    params: IsoCutParams,
    rng: Rng,
    ledger: PrivacyLedger | None = None,
) -> IsoCutsResult:
    """Private minimum isolating cuts for all terminals in R at once.

    Terminals are identified with 0..|R|-1 in vertex order. One private
    S-T cut per bit position refines disjoint regions, then a single
    private cut on the disjoint union of the contracted regions
    produces every output simultaneously. Each of the
    floor(lg(|R|-1)) + 2 private calls runs at eps / (lg|R| + 2).

    Region graphs carry a penalty weight between each vertex of
    region-intersect-U and the region's contracted outside, which
    discourages outputs that swallow most of U. An empty U skips the
    penalty entirely.
    """
    R = sorted({int(v) for v in R})
    if len(R) < 2:
        raise ValueError("isolating cuts need at least two terminals")
    if not set(R) <= g.vertex_set:
        raise ValueError("terminals must be graph vertices")
    if not params.U <= g.vertex_set:
        raise ValueError("penalty universe must be a subset of the vertex set")
    eps_call = params.eps.split(math.log2(len(R)) + 2.0)
    region = {r: set(g.vertices) for r in R}
    rounds = (len(R) - 1).bit_length()
    for i in range(rounds):
        A = [r for idx, r in enumerate(R) if not (idx >> i) & 1]
        B = [r for idx, r in enumerate(R) if (idx >> i) & 1]
        side = private_min_ST_cut(g, A, B, eps_call, rng.child(f"round.{i}"), ledger).side
        for idx, r in enumerate(R):
            if (idx >> i) & 1:
                region[r] -= side
            else:
                region[r] &= side
    if params.U and not params.eps.is_noiseless:
        penalty = (
            params.penalty_const
            * (g.n + math.log2(1.0 / params.beta))
            * math.log2(len(R)) ** 2
            / (params.eps.value * len(params.U))
        )
    else:
        penalty = 0.0
    combined_vertices: list[int] = []
    combined_edges: list[tuple[int, int, float]] = []
    sources: list[int] = []
    sinks: list[int] = []
    backmaps: list[tuple[int, dict[int, int]]] = []
    next_label = 0
    for r in R:
        t_label = max(g.vertices) + 1
        h, _ = contract(g, g.vertex_set - region[r], t_label)
        edges = list(h.edges())
        if penalty > 0.0:
            edges.extend((u, t_label, penalty) for u in sorted(region[r] & params.U))
        relabel = {v: next_label + i for i, v in enumerate(h.vertices)}
        next_label += h.n
        combined_vertices.extend(relabel.values())
        combined_edges.extend((relabel[u], relabel[v], w) for u, v, w in edges)
        sources.append(relabel[r])
        sinks.append(relabel[t_label])
        backmaps.append((r, {relabel[v]: v for v in region[r]}))
    combined = Graph(combined_vertices, combined_edges)
    side = private_min_ST_cut(combined, sources, sinks, eps_call, rng.child("combined"), ledger).side
    cuts: dict[int, CutSide] = {}
    for r, back in backmaps:
        cuts[r] = make_cut_side(g, {orig for new, orig in back.items() if new in side})
    total = sum(cuts[r].value for r in R)
    return IsoCutsResult(cuts=cuts, total_value=total)
