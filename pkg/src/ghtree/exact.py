"""Exact cut oracles: min s-t cuts, isolating cuts, Gomory-Hu trees.

These are the noiseless reference algorithms. They double as
subroutines of the private pipeline, which calls them on graphs that
already carry noise edges. All cut values returned here are recomputed
boundary weights, never solver bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ._maxflow import min_cut_source_side
from .graph import ContractionMap, CutSide, Graph, contract, cut_weight, make_cut_side
from .steiner import SteinerTree, combine_steiner

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class MaxFlowResult:
    """A minimum s-t cut: the side containing s, and its value."""

    cut: CutSide
    value: float


def min_st_cut_exact(g: Graph, s: int, t: int) -> MaxFlowResult:
    """Minimum s-t cut; the side is the minimal one containing s.

    The side is the set of vertices reachable from s in the final
    residual network, so ties always resolve toward the smallest
    s-side. Disconnected pairs get value 0 with s's component as the
    side.
    """
    if not g.has_vertex(s) or not g.has_vertex(t):
        raise ValueError("cut endpoints must be graph vertices")
    if s == t:
        raise ValueError("cut endpoints must differ")
    side = min_cut_source_side(g, s, t)
    value = cut_weight(g, side)
    return MaxFlowResult(cut=CutSide(side=side, value=value), value=value)


def _expand(side: frozenset[int], maps: list[ContractionMap], original: Graph) -> frozenset[int]:
    image = {v: v for v in original.vertices}
    for cm in maps:
        image = {v: cm.forward[x] for v, x in image.items()}
    return frozenset(v for v, x in image.items() if x in side)


def min_ST_cut_exact(g: Graph, S: Iterable[int], T: Iterable[int]) -> MaxFlowResult:
    """Minimum cut separating vertex set S from vertex set T.

    The returned side contains all of S and none of T. Singleton sides
    skip contraction entirely, so min_ST_cut_exact(g, {s}, {t}) is
    exactly min_st_cut_exact(g, s, t).
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
        return min_st_cut_exact(g, S[0], T[0])
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
    res = min_st_cut_exact(work, s_label, t_label)
    side = _expand(res.cut.side, maps, g)
    value = cut_weight(g, side)
    return MaxFlowResult(cut=CutSide(side=side, value=value), value=value)


def isolating_cuts_exact(g: Graph, R: Iterable[int]) -> dict[int, CutSide]:
    """Minimum isolating cuts for every terminal in R simultaneously.

    Runs the bit-partition scheme: terminals are identified with
    0..|R|-1 in vertex order, one min S-T cut per bit position refines
    a disjoint region W_r around each terminal, and a final exact min
    cut inside each region yields S_r. Each S_r contains exactly one
    terminal, the outputs are pairwise disjoint, and each is a minimum
    cut separating its terminal from the rest of R.
    """
    R = sorted({int(v) for v in R})
    if len(R) < 2:
        raise ValueError("isolating cuts need at least two terminals")
    if not set(R) <= g.vertex_set:
        raise ValueError("terminals must be graph vertices")
    region = {r: set(g.vertices) for r in R}
    rounds = (len(R) - 1).bit_length()
    for i in range(rounds):
        A = [r for idx, r in enumerate(R) if not (idx >> i) & 1]
        B = [r for idx, r in enumerate(R) if (idx >> i) & 1]
        side = min_ST_cut_exact(g, A, B).cut.side
        for idx, r in enumerate(R):
            if (idx >> i) & 1:
                region[r] -= side
            else:
                region[r] &= side
    out: dict[int, CutSide] = {}
    for r in R:
        t_label = max(g.vertices) + 1
        h, _ = contract(g, g.vertex_set - region[r], t_label)
        side = min_st_cut_exact(h, r, t_label).cut.side
        out[r] = make_cut_side(g, side)
    return out


def gomory_hu_exact(g: Graph, terminals: Iterable[int] | None = None) -> SteinerTree:
    """Exact Gomory-Hu tree via the classic contraction scheme.

    For any two terminals the minimum edge on their tree path equals
    their minimum cut in g, and splitting the tree there induces an
    optimal cut through the vertex map. Defaults to all vertices as
    terminals; a single-vertex graph yields a single-node tree.
    """
    U = sorted({int(v) for v in terminals} if terminals is not None else g.vertices)
    if not U:
        raise ValueError("terminal set must be nonempty")
    if not set(U) <= g.vertex_set:
        raise ValueError("terminals must be graph vertices")
    return _gh_steiner(g, U)


def _gh_steiner(g: Graph, U: list[int]) -> SteinerTree:
    if len(U) == 1:
        return SteinerTree([U[0]], (), {v: U[0] for v in g.vertices})
    s, t = U[0], U[1]
    res = min_st_cut_exact(g, s, t)
    side = res.cut.side
    x_label = max(g.vertices) + 1
    g_side, _ = contract(g, g.vertex_set - side, x_label)
    y_label = max(g.vertices) + 1
    g_rest, _ = contract(g, side, y_label)
    t_side = _gh_steiner(g_side, [u for u in U if u in side])
    t_rest = _gh_steiner(g_rest, [u for u in U if u not in side])
    return combine_steiner(t_rest, [(t_side, x_label, y_label, res.value)])


def brute_force_min_cut(g: Graph, s: int, t: int) -> MaxFlowResult:
    """Minimum s-t cut by enumerating every side containing s.

    Refuses graphs with more than 20 vertices. Ties resolve to the
    lexicographically smallest side under the vertex order.
    """
    if g.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force refuses graphs with more than {BRUTE_FORCE_LIMIT} vertices")
    if not g.has_vertex(s) or not g.has_vertex(t):
        raise ValueError("cut endpoints must be graph vertices")
    if s == t:
        raise ValueError("cut endpoints must differ")
    others = [v for v in g.vertices if v != s]
    t_bit = 1 << others.index(t)
    best_w = None
    best_side: tuple[int, ...] | None = None
    for mask in range(1 << len(others)):
        if mask & t_bit:
            continue
        side = frozenset([s] + [v for i, v in enumerate(others) if (mask >> i) & 1])
        w = cut_weight(g, side)
        key = tuple(sorted(side))
        if best_w is None or w < best_w or (w == best_w and key < best_side):
            best_w = w
            best_side = key
    cut = CutSide(side=frozenset(best_side), value=best_w)
    return MaxFlowResult(cut=cut, value=best_w)
