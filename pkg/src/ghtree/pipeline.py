"""The private Gomory-Hu pipeline: step, recursion, and final tree.

One step guesses noisy cut values toward a random pivot, carves off
terminal groups whose private isolating cuts look minimal, and keeps
the largest batch. The recursion contracts each carved region (masking
its boundary with noisy edges before descending), recurses on the
rest, and stitches the child trees back together. The final wrapper
runs the recursion on half the budget and spends the other half
noising the tree's edge weights.

Budget accounting mirrors the mechanism structure: one step at budget
e charges e/4 for pivot cut values, e/2 across isolating-cut rounds,
and e/4 across cut-weight releases. The recursion charges each depth
level e/(2 t_max) against its own budget, the per-level worst case
over how a single edge change can land across sibling branches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .dp import Epsilon, PrivacyLedger, Rng, sample_laplace
from .exact import min_st_cut_exact
from .graph import CutSide, Graph, contract
from .private_cuts import IsoCutParams, private_isolating_cuts
from .steiner import SteinerTree, combine_steiner

DEFAULT_C1 = 4.0
DEFAULT_C2 = 4.0
DEFAULT_C_DEPTH = 4.0
DEFAULT_PENALTY_CONST = 4.0


class GHTreeAbort(RuntimeError):
    """Raised when the recursion exceeds its depth cap.

    Carries the seed that produced the run; retrying is the caller's
    explicit decision, never automatic.
    """

    def __init__(self, depth: int, t_max: int, seed: int):
        super().__init__(
            f"tree recursion reached depth {depth} with cap t_max={t_max} (seed {seed}); "
            "rerun with a different seed or a larger depth constant"
        )
        self.depth = depth
        self.t_max = t_max
        self.seed = seed


@dataclass(frozen=True)
class StepParams:
    """Budget and constants for a single carving step."""

    eps: Epsilon
    beta: float
    c1: float = DEFAULT_C1
    c2: float = DEFAULT_C2
    penalty_const: float = DEFAULT_PENALTY_CONST

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta!r}")
        if self.c1 <= 0.0 or self.c2 <= 0.0:
            raise ValueError("threshold constants must be positive")


@dataclass(frozen=True)
class StepOutput:
    """Terminals carved off by one step.

    ``sets`` maps each selected terminal v to its cut side, which
    contains v, never the pivot, and at most 90% of the step's
    terminals. Sides are pairwise disjoint and ``D`` is the union of
    their terminal contents. ``true_weights`` are the sides' exact
    boundary weights in the step's graph.
    """

    D: frozenset[int]
    R_star: tuple[int, ...]
    sets: Mapping[int, CutSide]
    true_weights: Mapping[int, float]


@dataclass(frozen=True)
class RecursionParams:
    """Recursion state: overall budget, current depth, and constants.

    ``n_max`` is the vertex count of the original graph; the depth cap
    t_max = ceil(c_depth * lg(n_max)^2) is derived from it, not from
    the current subgraph.
    """

    eps: Epsilon
    t: int
    n_max: int
    c_depth: float = DEFAULT_C_DEPTH
    c1: float = DEFAULT_C1
    c2: float = DEFAULT_C2
    penalty_const: float = DEFAULT_PENALTY_CONST

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("depth must be nonnegative")
        if self.n_max < 2:
            raise ValueError("n_max must be at least 2")
        if self.c_depth <= 0.0:
            raise ValueError("c_depth must be positive")

    @property
    def t_max(self) -> int:
        return math.ceil(self.c_depth * math.log2(self.n_max) ** 2)

    def deeper(self) -> "RecursionParams":
        return RecursionParams(
            eps=self.eps,
            t=self.t + 1,
            n_max=self.n_max,
            c_depth=self.c_depth,
            c1=self.c1,
            c2=self.c2,
            penalty_const=self.penalty_const,
        )


def gh_tree_step(
    g: Graph,
    s: int,
    U: Iterable[int],
    params: StepParams,
    rng: Rng,
    ledger: PrivacyLedger | None = None,
) -> StepOutput:
    """One carving step at pivot s over terminal set U.

    Noisy pivot cut values are estimated once. Then, over lg|U| + 1
    rounds of geometrically thinned terminal samples, private isolating
    cuts are computed and a terminal is accepted when its noised cut
    weight is within the error allowance of its noised pivot value and
    its side stays under 90% of U. The round covering the most
    terminals wins, earliest round on ties.

    A full run at budget e charges the ledger e/4 + e/2 + e/4 = e, with
    every scheduled slot charged whether or not its round degenerated.
    """
    U_sorted = sorted({int(v) for v in U})
    u_set = frozenset(U_sorted)
    if s not in u_set:
        raise ValueError("pivot must be a terminal")
    if not u_set <= g.vertex_set:
        raise ValueError("terminals must be graph vertices")
    if len(U_sorted) < 2:
        raise ValueError("a step needs at least two terminals")
    eps = params.eps
    k = len(U_sorted)
    levels = math.floor(math.log2(k))
    inv_eps = 0.0 if eps.is_noiseless else 1.0 / eps.value
    err_iso = params.c1 * (g.n + math.log2(1.0 / params.beta)) * math.log2(k) ** 3 * inv_eps
    err_val = params.c2 * k * math.log2(k / params.beta) * inv_eps

    lam_scale = 4.0 * (k - 1) * inv_eps
    lam_rng = rng.child("lambda")
    lam_hat: dict[int, float] = {}
    for v in U_sorted:
        if v == s:
            continue
        lam_hat[v] = min_st_cut_exact(g, s, v).value + sample_laplace(lam_scale, lam_rng)
    if ledger is not None:
        ledger.charge("step.pivot_values", 1.0, lam_scale, k - 1)

    iso_scale = 2.0 * (levels + 1) * inv_eps
    what_scale = 8.0 * (levels + 1) * inv_eps
    R = list(U_sorted)
    best: tuple[frozenset[int], list[int], dict[int, CutSide]] | None = None
    for i in range(levels + 1):
        iso_rng = rng.child(f"iso.{i}")
        what_rng = rng.child(f"cutweights.{i}")
        samp_rng = rng.child(f"resample.{i}")
        sets_i: dict[int, CutSide] = {}
        if len(R) >= 2:
            iso_params = IsoCutParams(
                eps=eps.split(2.0 * (levels + 1)),
                beta=params.beta / (levels + 1),
                U=u_set,
                penalty_const=params.penalty_const,
            )
            sets_i = dict(private_isolating_cuts(g, R, iso_params, iso_rng).cuts)
        if ledger is not None:
            ledger.charge("step.isolating_cuts", 1.0, iso_scale)
        what: dict[int, float] = {}
        for v in sorted(sets_i):
            if v != s:
                what[v] = sets_i[v].value + sample_laplace(what_scale, what_rng)
        if ledger is not None:
            ledger.charge("step.cut_weights", 2.0, what_scale)
        allowance = (2.0 * (levels - i) + 1.0) * err_iso + err_val
        selected = [
            v
            for v in sorted(what)
            if what[v] <= lam_hat[v] + allowance
            and len(sets_i[v].side & u_set) <= 0.9 * k
        ]
        covered = frozenset().union(*(sets_i[v].side & u_set for v in selected)) if selected else frozenset()
        if best is None or len(covered) > len(best[0]):
            best = (covered, selected, sets_i)
        if i < levels:
            rate = min(1.0, 2.0 ** (-(i + 1)))
            R = [s] + [v for v in U_sorted if v != s and samp_rng.uniform() < rate]
            R.sort()
    covered, selected, sets_i = best
    return StepOutput(
        D=covered,
        R_star=tuple(selected),
        sets={v: sets_i[v] for v in selected},
        true_weights={v: sets_i[v].value for v in selected},
    )


def _single_node_tree(vertices: Iterable[int], terminal: int) -> SteinerTree:
    return SteinerTree([terminal], (), {v: terminal for v in vertices})


def _gh_rec(
    g: Graph,
    U: list[int],
    rp: RecursionParams,
    rng: Rng,
    depths: set[int],
) -> SteinerTree:
    if rp.t > rp.t_max:
        raise GHTreeAbort(depth=rp.t, t_max=rp.t_max, seed=rng.seed)
    if len(U) == 1:
        return _single_node_tree(g.vertices, U[0])
    depths.add(rp.t)
    s = U[rng.child("pivot").integer(len(U))]
    step_params = StepParams(
        eps=rp.eps.split(4.0 * rp.t_max),
        beta=1.0 / rp.n_max**3,
        c1=rp.c1,
        c2=rp.c2,
        penalty_const=rp.penalty_const,
    )
    step = gh_tree_step(g, s, U, step_params, rng.child("step"))
    mask_scale = 0.0 if rp.eps.is_noiseless else 8.0 * rp.t_max / rp.eps.value
    children: list[tuple[SteinerTree, int, int, float]] = []
    remainder = g
    for v in step.R_star:
        side = step.sets[v].side
        u_inside = [u for u in U if u in side]
        x_label = max(g.vertices) + 1
        g_v, _ = contract(g, g.vertex_set - side, x_label)
        if len(u_inside) > 1:
            mask_rng = rng.child(f"mask.{v}")
            edges = [(a, b, w) for a, b, w in g_v.edges() if x_label not in (a, b)]
            for u in sorted(side):
                w = max(0.0, g_v.weight(x_label, u) + sample_laplace(mask_scale, mask_rng))
                if w > 0.0:
                    edges.append((x_label, u, w))
            g_v = Graph(g_v.vertices, edges)
            subtree = _gh_rec(g_v, u_inside, rp.deeper(), rng.child(f"branch.{v}"), depths)
        else:
            subtree = _single_node_tree(g_v.vertices, v)
        y_label = max(remainder.vertices) + 1
        remainder, _ = contract(remainder, side, y_label)
        children.append((subtree, x_label, y_label, step.true_weights[v]))
    u_rest = [u for u in U if u not in step.D]
    if len(u_rest) > 1:
        backbone = _gh_rec(remainder, u_rest, rp.deeper(), rng.child("rest"), depths)
    else:
        backbone = _single_node_tree(remainder.vertices, u_rest[0])
    return combine_steiner(backbone, children)


def gh_tree(
    g: Graph,
    U: Iterable[int],
    rp: RecursionParams,
    rng: Rng,
    ledger: PrivacyLedger | None = None,
) -> SteinerTree:
    """Recursive private Gomory-Hu tree over terminal set U.

    Aborts with GHTreeAbort once depth exceeds t_max. Each carved
    region is contracted and descended into with its boundary edges
    masked by clamped Laplace noise toward every inside vertex; the
    uncovered remainder is contracted and handled as the backbone.
    Ledger cost is eps/(2 t_max) per executed depth level, charged once
    per level rather than per branch because sibling subgraphs split
    any single edge difference between at most two of them.
    """
    U_sorted = sorted({int(v) for v in U})
    if not U_sorted:
        raise ValueError("terminal set must be nonempty")
    if not set(U_sorted) <= g.vertex_set:
        raise ValueError("terminals must be graph vertices")
    depths: set[int] = set()
    tree = _gh_rec(g, U_sorted, rp, rng, depths)
    if ledger is not None:
        level_scale = 0.0 if rp.eps.is_noiseless else 2.0 * rp.t_max / rp.eps.value
        for d in sorted(depths):
            ledger.charge(f"gh_tree.level.{d}", 1.0, level_scale)
    return tree


def final_gh_tree(
    g: Graph,
    eps: Epsilon,
    rng: Rng,
    ledger: PrivacyLedger | None = None,
    *,
    c_depth: float = DEFAULT_C_DEPTH,
    c1: float = DEFAULT_C1,
    c2: float = DEFAULT_C2,
    penalty_const: float = DEFAULT_PENALTY_CONST,
) -> SteinerTree:
    """End-to-end private Gomory-Hu tree over all vertices.

    Runs the recursion at half the budget, then spends the other half
    replacing every tree edge weight with a Laplace-noised copy clamped
    at zero. Aborts propagate to the caller with the consumed seed;
    nothing is retried automatically.
    """
    if g.n < 2:
        raise ValueError("need at least two vertices to build a tree")
    rp = RecursionParams(
        eps=eps.split(2.0),
        t=0,
        n_max=g.n,
        c_depth=c_depth,
        c1=c1,
        c2=c2,
        penalty_const=penalty_const,
    )
    tree = gh_tree(g, g.vertices, rp, rng.child("tree"), ledger)
    weight_scale = 0.0 if eps.is_noiseless else 2.0 * (g.n - 1) / eps.value
    weight_rng = rng.child("edge_weights")
    noised = [
        (u, v, max(0.0, w + sample_laplace(weight_scale, weight_rng)))
        for u, v, w in tree.edges
    ]
    if ledger is not None:
        ledger.charge("final.edge_weights", 1.0, weight_scale, g.n - 1)
    return SteinerTree(tree.nodes, noised, tree.f)
