"""Experiment harness: sweep seeds and budgets, measure tree error.

For every (seed, eps) cell the harness builds a private tree, then for
every vertex pair compares the tree's answer against the exact
Gomory-Hu value: side_error is the true weight of the returned side
minus the exact min cut (never negative), value_error is the noisy
reported value minus the exact min cut (signed). Aborted cells are
recorded and skipped, never retried. CSV output is byte-deterministic
for a fixed config.
"""

from __future__ import annotations

import math
import os
import statistics
import time
from dataclasses import dataclass, field
from typing import Mapping

from .applications import tree_query
from .dp import INFINITE, Epsilon, Rng
from .exact import gomory_hu_exact
from .generators import generate
from .graph import Graph
from .io import load_graph
from .pipeline import GHTreeAbort, final_gh_tree
from .steiner import SteinerTree, min_edge_on_path

CSV_HEADER = "pair_s,pair_t,seed,eps,lambda_exact,tree_value,side_true_weight,side_error,value_error"

MODES = ("private", "noiseless", "exact-baseline")

_ENV_CONSTANTS = (
    ("c1", "GHTREE_C1"),
    ("c2", "GHTREE_C2"),
    ("c_depth", "GHTREE_C_DEPTH"),
    ("penalty_const", "GHTREE_PENALTY_CONST"),
)


def env_constants() -> dict[str, float]:
    """Constant overrides taken from GHTREE_* environment variables."""
    out: dict[str, float] = {}
    for key, env in _ENV_CONSTANTS:
        raw = os.environ.get(env)
        if raw is not None and raw != "":
            out[key] = float(raw)
    return out


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep: an instance source, budget grid, seed list, and mode."""

    generator: str | None = None
    params: Mapping[str, float] = field(default_factory=dict)
    input_path: str | None = None
    eps: tuple[float, ...] = (1.0,)
    seeds: tuple[int, ...] = (0,)
    mode: str = "private"
    c1: float = 4.0
    c2: float = 4.0
    c_depth: float = 4.0
    penalty_const: float = 4.0
    out: str | None = None

    def __post_init__(self):
        if (self.generator is None) == (self.input_path is None):
            raise ValueError("config needs exactly one of generator or input")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not self.seeds:
            raise ValueError("need at least one seed")
        if not self.eps:
            raise ValueError("need at least one eps value")
        for e in self.eps:
            if math.isnan(e) or e <= 0.0:
                raise ValueError(f"eps values must be positive, got {e!r}")


@dataclass(frozen=True)
class ExperimentRow:
    pair_s: int
    pair_t: int
    seed: int
    eps: str
    lambda_exact: float
    tree_value: float
    side_true_weight: float
    side_error: float
    value_error: float


@dataclass(frozen=True)
class AbortRecord:
    seed: int
    eps: str
    depth: int


@dataclass
class ExperimentReport:
    rows: list[ExperimentRow]
    aborts: list[AbortRecord]
    max_side_error: float | None
    median_side_error: float | None
    wall_time_s: float

    def max_side_error_by_cell(self) -> dict[tuple[int, str], float]:
        """Worst all-pairs side error per (seed, eps) cell."""
        out: dict[tuple[int, str], float] = {}
        for row in self.rows:
            key = (row.seed, row.eps)
            if key not in out or row.side_error > out[key]:
                out[key] = row.side_error
        return out


def _eps_label(value: float) -> str:
    return repr(float(value))


def _instance(config: ExperimentConfig, seed: int) -> Graph:
    if config.generator is not None:
        return generate(config.generator, config.params, seed)
    return load_graph(config.input_path)


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Run the sweep; aborted cells contribute an AbortRecord, no rows."""
    start = time.perf_counter()
    rows: list[ExperimentRow] = []
    aborts: list[AbortRecord] = []
    for seed in config.seeds:
        g = _instance(config, seed)
        exact_tree = gomory_hu_exact(g)
        pairs = [
            (s, t)
            for i, s in enumerate(g.vertices)
            for t in g.vertices[i + 1 :]
        ]
        lam = {
            (s, t): min_edge_on_path(exact_tree, s, t)[2] for s, t in pairs
        }
        cells: list[tuple[str, SteinerTree]] = []
        if config.mode == "exact-baseline":
            cells.append(("exact", exact_tree))
        else:
            eps_values = [math.inf] if config.mode == "noiseless" else list(config.eps)
            for value in eps_values:
                label = _eps_label(value)
                # Same stream family for every eps cell: paired (common random
                # numbers) runs keep error curves comparable seed by seed.
                rng = Rng(seed)
                try:
                    tree = final_gh_tree(
                        g,
                        INFINITE if math.isinf(value) else Epsilon(value),
                        rng,
                        c_depth=config.c_depth,
                        c1=config.c1,
                        c2=config.c2,
                        penalty_const=config.penalty_const,
                    )
                except GHTreeAbort as abort:
                    aborts.append(AbortRecord(seed=seed, eps=label, depth=abort.depth))
                    continue
                cells.append((label, tree))
        for label, tree in cells:
            for s, t in pairs:
                tree_value, cut = tree_query(tree, g, s, t)
                exact_value = lam[(s, t)]
                rows.append(
                    ExperimentRow(
                        pair_s=s,
                        pair_t=t,
                        seed=seed,
                        eps=label,
                        lambda_exact=exact_value,
                        tree_value=tree_value,
                        side_true_weight=cut.value,
                        side_error=cut.value - exact_value,
                        value_error=tree_value - exact_value,
                    )
                )
    wall = time.perf_counter() - start
    side_errors = [r.side_error for r in rows]
    return ExperimentReport(
        rows=rows,
        aborts=aborts,
        max_side_error=max(side_errors) if side_errors else None,
        median_side_error=statistics.median(side_errors) if side_errors else None,
        wall_time_s=wall,
    )


def write_csv(report: ExperimentReport, path: str) -> None:
    """Rows only, in sweep order; identical configs give identical bytes."""
    lines = [CSV_HEADER]
    for r in report.rows:
        lines.append(
            ",".join(
                (
                    str(r.pair_s),
                    str(r.pair_t),
                    str(r.seed),
                    r.eps,
                    repr(r.lambda_exact),
                    repr(r.tree_value),
                    repr(r.side_true_weight),
                    repr(r.side_error),
                    repr(r.value_error),
                )
            )
        )
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


_SCALAR_KEYS = {"generator", "input", "mode", "out"}
_FLOAT_KEYS = {"c1", "c2", "c_depth", "penalty_const"}


def _parse_seed_list(raw: str, lineno: int) -> tuple[int, ...]:
    seeds: list[int] = []
    for piece in raw.split(","):
        piece = piece.strip()
        if ".." in piece:
            lo_s, hi_s = piece.split("..", 1)
            try:
                lo, hi = int(lo_s), int(hi_s)
            except ValueError:
                raise ValueError(f"line {lineno}: bad seed range {piece!r}") from None
            if hi < lo:
                raise ValueError(f"line {lineno}: empty seed range {piece!r}")
            seeds.extend(range(lo, hi + 1))
        elif piece:
            try:
                seeds.append(int(piece))
            except ValueError:
                raise ValueError(f"line {lineno}: bad seed {piece!r}") from None
    if not seeds:
        raise ValueError(f"line {lineno}: no seeds given")
    return tuple(seeds)


def _parse_eps_list(raw: str, lineno: int) -> tuple[float, ...]:
    values: list[float] = []
    for piece in raw.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            values.append(float(piece))
        except ValueError:
            raise ValueError(f"line {lineno}: bad eps value {piece!r}") from None
    if not values:
        raise ValueError(f"line {lineno}: no eps values given")
    return tuple(values)


def parse_config(path: str) -> ExperimentConfig:
    """Read a key = value config file.

    Unknown keys become generator parameters. Environment constant
    overrides apply first, explicit file keys win. Example:

        generator = erdos-renyi-weighted
        n = 50
        p = 0.2
        eps = 0.5, 1, 2, 4
        seeds = 0..19
        mode = private
        out = results.csv
    """
    fields: dict[str, object] = dict(env_constants())
    params: dict[str, float] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if not key or not value:
                raise ValueError(f"line {lineno}: expected 'key = value'")
            if key in _SCALAR_KEYS:
                fields["input_path" if key == "input" else key] = value
            elif key in _FLOAT_KEYS:
                try:
                    fields[key] = float(value)
                except ValueError:
                    raise ValueError(f"line {lineno}: bad number for {key}") from None
            elif key == "seeds":
                fields["seeds"] = _parse_seed_list(value, lineno)
            elif key == "eps":
                fields["eps"] = _parse_eps_list(value, lineno)
            else:
                try:
                    params[key] = float(value)
                except ValueError:
                    raise ValueError(
                        f"line {lineno}: unknown key {key!r} with non-numeric value"
                    ) from None
    return ExperimentConfig(params=params, **fields)
