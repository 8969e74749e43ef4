"""Single-robot Dubins coverage: directed Dubins graph over passes and a route
visiting every pass exactly once.

Every pass yields two directed nodes (ascending along +y, descending along
-y); node ``2 * g + d`` is group ``g`` in direction ``d``. Routing is an open
generalized TSP: exactly one node per group, free endpoints.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .dubins import Configuration, DubinsPath, dubins_length, dubins_shortest
from .passes import Pass

ASCENDING, DESCENDING = 0, 1
HEADING = (math.pi / 2, 3 * math.pi / 2)
EXACT_LIMIT = 12
IMPROVE_TOL = 1e-9

Solver = Literal["exact", "heuristic"]


class SolverLimitError(ValueError):
    pass


@dataclass(frozen=True)
class DirectedPassNode:
    pass_id: int
    direction: int  # ASCENDING or DESCENDING
    entry: Configuration
    exit: Configuration
    length: float
    midpoint: tuple[float, float]

    @classmethod
    def from_pass(cls, p: Pass, direction: int) -> "DirectedPassNode":
        lo = Configuration(p.center_x, p.y_low, HEADING[direction])
        hi = Configuration(p.center_x, p.y_high, HEADING[direction])
        entry, exit_ = (lo, hi) if direction == ASCENDING else (hi, lo)
        return cls(p.id, direction, entry, exit_, p.length, p.midpoint)

    @property
    def direction_name(self) -> str:
        return "ascending" if self.direction == ASCENDING else "descending"


@dataclass
class DubinsGraph:
    passes: list[Pass]
    radius: float
    nodes: list[DirectedPassNode]
    weights: np.ndarray  # (2n, 2n); inf between nodes of the same pass

    @property
    def n_groups(self) -> int:
        return len(self.passes)

    def arcs(self) -> int:
        return int(np.isfinite(self.weights).sum())


@dataclass
class Route:
    nodes: list[DirectedPassNode]
    transitions: list[DubinsPath]

    @property
    def pass_length(self) -> float:
        return sum(n.length for n in self.nodes)

    @property
    def transition_length(self) -> float:
        return sum(t.total_length for t in self.transitions)

    @property
    def interior_cost(self) -> float:
        return self.pass_length + self.transition_length

    @property
    def pass_ids(self) -> list[int]:
        return [n.pass_id for n in self.nodes]

    def __len__(self) -> int:
        return len(self.nodes)

    @classmethod
    def from_nodes(cls, nodes: Sequence[DirectedPassNode], r: float) -> "Route":
        nodes = list(nodes)
        trans = [dubins_shortest(a.exit, b.entry, r) for a, b in zip(nodes, nodes[1:])]
        return cls(nodes, trans)


def build_dubins_graph(passes: Sequence[Pass], r: float) -> DubinsGraph:
    if not passes:
        raise ValueError("cannot build a Dubins graph without passes")
    if not r > 0:
        raise ValueError(f"turning radius must be positive, got {r!r}")
    passes = list(passes)
    nodes = [DirectedPassNode.from_pass(p, d) for p in passes for d in (ASCENDING, DESCENDING)]
    m = len(nodes)
    w = np.full((m, m), np.inf)
    for i, u in enumerate(nodes):
        for j, v in enumerate(nodes):
            if i // 2 != j // 2:
                w[i, j] = dubins_length(u.exit, v.entry, r)
    return DubinsGraph(passes, float(r), nodes, w)


def sequence_cost(seq: Sequence[int], w: np.ndarray) -> float:
    """Sum of transition weights along a node sequence."""
    seq = np.asarray(seq, dtype=np.int64)
    if len(seq) < 2:
        return 0.0
    return float(w[seq[:-1], seq[1:]].sum())


def solve_exact(w: np.ndarray) -> list[int]:
    """Minimum-weight open path with exactly one node per group (bitmask DP)."""
    m = w.shape[0]
    n = m // 2
    if n > EXACT_LIMIT:
        raise SolverLimitError(f"exact solver limited to {EXACT_LIMIT} passes, got {n}")
    group_bit = 1 << (np.arange(m) // 2)
    full = (1 << n) - 1
    dp = np.full((1 << n, m), np.inf)
    parent = np.full((1 << n, m), -1, dtype=np.int64)
    dp[group_bit, np.arange(m)] = 0.0
    for mask in range(1, full):
        vals = dp[mask]
        if not np.isfinite(vals).any():
            continue
        targets = np.flatnonzero((group_bit & mask) == 0)
        cand = vals[:, None] + w[:, targets]
        src = np.argmin(cand, axis=0)
        best = cand[src, np.arange(len(targets))]
        new_masks = mask | group_bit[targets]
        better = best < dp[new_masks, targets]
        dp[new_masks[better], targets[better]] = best[better]
        parent[new_masks[better], targets[better]] = src[better]
    last = int(np.argmin(dp[full]))
    seq, mask = [last], full
    while parent[mask, seq[-1]] >= 0:
        prev = int(parent[mask, seq[-1]])
        mask ^= int(group_bit[seq[-1]])
        seq.append(prev)
    return seq[::-1]


class _LocalSearch:
    """2-opt (segment reversal with direction flips) and or-opt relocation on an
    open group path, using a zero-cost dummy node at both ends."""

    def __init__(self, w: np.ndarray):
        m = w.shape[0]
        self.dummy = m
        self.w = np.zeros((m + 1, m + 1))
        self.w[:m, :m] = np.where(np.isfinite(w), w, 1e18)
        self._lower: dict[int, np.ndarray] = {}

    def cost(self, seq: list[int]) -> float:
        ext = np.array([self.dummy, *seq, self.dummy])
        return float(self.w[ext[:-1], ext[1:]].sum())

    def best_two_opt(self, seq: list[int]) -> tuple[float, tuple | None]:
        n = len(seq)
        ext = np.array([self.dummy, *seq, self.dummy])
        s = ext[1:n + 1]
        f = s ^ 1
        p = ext[0:n]
        q = ext[2:n + 2]
        w = self.w
        delta = (w[p[:, None], f[None, :]] + w[f[:, None], q[None, :]]
                 - w[p, s][:, None] - w[s, q][None, :])
        lower = self._lower.get(n)
        if lower is None:
            lower = self._lower[n] = np.tri(n, n, -1, dtype=bool)
        delta[lower] = np.inf
        idx = int(np.argmin(delta))
        i, j = divmod(idx, n)
        return float(delta[i, j]), ("2opt", i, j)

    def best_or_opt(self, seq: list[int], max_len: int = 3) -> tuple[float, tuple | None]:
        n = len(seq)
        ext = np.array([self.dummy, *seq, self.dummy])
        w = self.w
        best, move = np.inf, None
        ks = np.arange(n + 1)
        x, y = ext[:-1], ext[1:]
        wxy = w[x, y]
        into = w[x]  # into[k, v]: gap k's left end to v
        out_of = w[:, y]  # out_of[v, k]: v to gap k's right end
        for length in range(1, min(max_len, n - 1) + 1):
            starts = np.arange(1, n - length + 2)  # ext positions of segment heads
            a = ext[starts]
            b = ext[starts + length - 1]
            removal = w[ext[starts - 1], ext[starts + length]] - w[ext[starts - 1], a] - w[b, ext[starts + length]]
            # insertion between ext[k] and ext[k+1], outside the segment and its old gap
            invalid = (ks[None, :] >= starts[:, None] - 1) & (ks[None, :] <= starts[:, None] + length - 1)
            base = removal[:, None] - wxy[None, :]
            fwd = base + into[:, a].T + out_of[b]
            rev = base + into[:, b ^ 1].T + out_of[a ^ 1]
            for flipped, total in ((False, fwd), (True, rev)):
                total[invalid] = np.inf
                idx = int(np.argmin(total))
                r, c = divmod(idx, n + 1)
                if total[r, c] < best:
                    best = float(total[r, c])
                    move = ("oropt", int(starts[r]) - 1, length, c, flipped)
        return best, move

    @staticmethod
    def apply(seq: list[int], move: tuple) -> list[int]:
        if move[0] == "2opt":
            _, i, j = move
            return seq[:i] + [v ^ 1 for v in reversed(seq[i:j + 1])] + seq[j + 1:]
        _, i, length, k, flipped = move
        seg = seq[i:i + length]
        if flipped:
            seg = [v ^ 1 for v in reversed(seg)]
        # k indexes gaps of the extended sequence: gap k sits before seq[k]
        if k < i:
            return seq[:k] + seg + seq[k:i] + seq[i + length:]
        return seq[:i] + seq[i + length:k] + seg + seq[k:]

    def descend(self, seq: list[int]) -> tuple[list[int], float]:
        """Best-improvement descent; or-opt is consulted once 2-opt is exhausted."""
        cost = self.cost(seq)
        if len(seq) < 2:
            return seq, cost
        while True:
            tol = IMPROVE_TOL * max(1.0, cost)
            delta, move = self.best_two_opt(seq)
            if not delta < -tol:
                delta, move = self.best_or_opt(seq)
                if not delta < -tol:
                    return seq, cost
            new_seq = self.apply(seq, move)
            new_cost = self.cost(new_seq)
            assert new_cost <= cost + tol, "local search increased cost"
            seq, cost = new_seq, new_cost


def _greedy(w: np.ndarray, start: int) -> list[int]:
    m = w.shape[0]
    open_ = np.ones(m, dtype=bool)
    seq = [start]
    open_[[start, start ^ 1]] = False
    while open_.any():
        row = np.where(open_, w[seq[-1]], np.inf)
        nxt = int(np.argmin(row))
        seq.append(nxt)
        open_[[nxt, nxt ^ 1]] = False
    return seq


def _perturb(seq: list[int], rng: np.random.Generator) -> list[int]:
    n = len(seq)
    if n >= 4:
        a, b, c = sorted(rng.choice(np.arange(1, n), size=3, replace=False))
        out = seq[:a] + seq[b:c] + seq[a:b] + seq[c:]
    else:
        out = list(seq)
    flip = int(rng.integers(n))
    out[flip] ^= 1
    return out


def solve_heuristic(w: np.ndarray, seed: int = 0, patience: int | None = None) -> list[int]:
    """Seeded greedy construction, then iterated local search.

    Instances of at most three passes are small enough to solve exactly.

    Stops after ``patience`` (default ``2n``) consecutive perturbations that
    fail to improve the incumbent.
    """
    m = w.shape[0]
    n = m // 2
    if n <= 3:
        return solve_exact(w)
    rng = np.random.default_rng(seed)
    ls = _LocalSearch(w)
    best, best_cost = ls.descend(_greedy(w, int(rng.integers(m))))
    patience = 2 * n if patience is None else patience
    stale = 0
    while stale < patience:
        cand, cand_cost = ls.descend(_perturb(best, rng))
        if cand_cost < best_cost - IMPROVE_TOL * max(1.0, best_cost):
            best, best_cost, stale = cand, cand_cost, 0
        else:
            stale += 1
    return best


def solve_route(graph: DubinsGraph, solver: Solver = "heuristic", seed: int = 0) -> Route:
    if solver == "exact":
        seq = solve_exact(graph.weights)
    elif solver == "heuristic":
        seq = solve_heuristic(graph.weights, seed)
    else:
        raise ValueError(f"unknown solver {solver!r}")
    return Route.from_nodes([graph.nodes[i] for i in seq], graph.radius)


def dcs(passes: Sequence[Pass], r: float, solver: Solver = "heuristic", seed: int = 0) -> Route:
    """Single-robot coverage route over ``passes`` (sorted by id first)."""
    ordered = sorted(passes, key=lambda p: p.id)
    return solve_route(build_dubins_graph(ordered, r), solver, seed)


def travel(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Straight-line travel cost between two planar points."""
    return math.hypot(a[0] - b[0], a[1] - b[1])


def route_cost(route: Route, v_s: tuple[float, float]) -> float:
    """Depot leg to the first pass midpoint, the route interior, and the leg back."""
    if not route.nodes:
        raise ValueError("route_cost of an empty route")
    return (travel(v_s, route.nodes[0].midpoint) + route.interior_cost
            + travel(route.nodes[-1].midpoint, v_s))
