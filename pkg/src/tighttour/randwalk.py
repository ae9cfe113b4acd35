"""Self-avoiding tight random walk: repeatedly pick an unused edge through the
last k-1 vertices, uniformly at random, until stuck or out of steps.

The driver retries with derived seeds until a walk covers every ordered
(k-1)-tuple (a spanning walk). The number of steps defaults to
floor(n^(k-1) * ln(n)^2); at desk scale the walk usually exhausts its edges
first, so success rates are far below the asymptotic guarantee.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .hypergraph import Edge, Hypergraph
from .walk import Walk, is_spanning, max_codegree, ordered_tuple_count


def default_walk_steps(n: int, k: int) -> int:
    """floor(n^(k-1) * ln(n)^2), never below the k-1 starting vertices."""
    return max(int(n ** (k - 1) * math.log(n) ** 2), k - 1)


def codegree_threshold(n: int) -> float:
    """ln(n)^3, the sparseness yardstick the walk's max codegree is compared to."""
    return math.log(n) ** 3


class WalkProcess:
    """Mutable state of one run: residual edges, history, suffix index, RNG.

    The suffix index maps each (k-1)-set to the vertices completing an unused
    edge, so a step costs O(degree); it is kept in sync as edges are consumed.
    """

    def __init__(self, graph: Hypergraph, starts: Sequence[int] | None = None,
                 seed: int = 0):
        if graph.num_edges == 0:
            raise ValueError("graph has no edges")
        self.graph = graph
        self._rng = random.Random(seed)
        k, n = graph.k, graph.n
        if starts is None:
            starts = tuple(self._rng.sample(range(1, n + 1), k - 1))
        else:
            starts = tuple(starts)
            if len(starts) != k - 1 or len(set(starts)) != k - 1:
                raise ValueError(f"need {k - 1} distinct starting vertices")
            if min(starts) < 1 or max(starts) > n:
                raise ValueError(f"starting vertices outside 1..{n}")
        self._history: list[int] = list(starts)
        self._residual: set[Edge] = set(graph.edges)
        self._index: dict[tuple[int, ...], set[int]] = {}
        for e in self._residual:
            for i in range(k):
                self._index.setdefault(e[:i] + e[i + 1:], set()).add(e[i])
        self.terminated = False

    @property
    def t(self) -> int:
        return len(self._history)

    @property
    def history(self) -> Walk:
        return Walk(tuple(self._history), self.graph.k, closed=False)

    @property
    def residual(self) -> Hypergraph:
        g = Hypergraph(self.graph.k, self.graph.n)
        g._edges = set(self._residual)
        return g

    def step(self) -> bool:
        """Extend by one vertex; returns False (and freezes) when no edge is left."""
        if self.terminated:
            raise RuntimeError("process already terminated")
        k = self.graph.k
        suffix = tuple(sorted(self._history[-(k - 1):]))
        completions = self._index.get(suffix)
        if not completions:
            self.terminated = True
            return False
        choices = sorted(completions)
        v = choices[self._rng.randrange(len(choices))]
        self._history.append(v)
        e = tuple(sorted(suffix + (v,)))
        self._residual.discard(e)
        for i in range(k):
            s = e[:i] + e[i + 1:]
            bucket = self._index.get(s)
            if bucket is not None:
                bucket.discard(e[i])
                if not bucket:
                    del self._index[s]
        return True

    def run(self, steps: int) -> Walk:
        """Step until the history has `steps` vertices or the process dies."""
        if steps < self.graph.k - 1:
            raise ValueError("steps must be at least k-1")
        while len(self._history) < steps and not self.terminated:
            self.step()
        return self.history


@dataclass(frozen=True)
class WalkAttempt:
    seed: int
    length: int
    terminated_early: bool
    missing_tuples: int


@dataclass(frozen=True)
class SpanningWalkResult:
    walk: Walk
    max_codegree: int
    seed: int
    attempts: tuple[WalkAttempt, ...]


class SpanningWalkFailure(Exception):
    """No attempt produced a spanning walk; carries per-attempt diagnostics."""

    def __init__(self, attempts: Sequence[WalkAttempt]):
        self.attempts = tuple(attempts)
        best = min((a.missing_tuples for a in attempts), default=-1)
        super().__init__(
            f"no spanning walk in {len(self.attempts)} attempts "
            f"(best attempt missed {best} ordered tuples)"
        )


def find_spanning_walk(
    graph: Hypergraph,
    seed: int = 0,
    retries: int = 20,
    steps: int | None = None,
    spanning_cap: int = 2 ** 32,
) -> SpanningWalkResult:
    """Run the process with seeds seed, seed+1, ... and return the first
    spanning walk; raises SpanningWalkFailure with diagnostics otherwise."""
    T = default_walk_steps(graph.n, graph.k) if steps is None else steps
    attempts: list[WalkAttempt] = []
    if graph.num_edges == 0:
        # every attempt would terminate immediately at its start vertices
        total = ordered_tuple_count(graph.n, graph.k - 1)
        raise SpanningWalkFailure([
            WalkAttempt(seed + i, graph.k - 1, True, total - 1) for i in range(retries)
        ])
    for i in range(retries):
        attempt_seed = seed + i
        proc = WalkProcess(graph, starts=None, seed=attempt_seed)
        w = proc.run(T)
        ok, missing = is_spanning(w, graph.n, cap=spanning_cap)
        attempts.append(WalkAttempt(
            seed=attempt_seed,
            length=len(w.vertices),
            terminated_early=proc.terminated,
            missing_tuples=missing,
        ))
        if ok:
            return SpanningWalkResult(
                walk=w,
                max_codegree=max_codegree(w),
                seed=attempt_seed,
                attempts=tuple(attempts),
            )
    raise SpanningWalkFailure(attempts)
