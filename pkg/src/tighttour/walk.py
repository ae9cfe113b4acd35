"""Tight walks: windows, validity, the spanning property, and degree stats.

A walk is a vertex sequence whose consecutive k-windows are edges, with no
edge used twice; closed walks wrap around. Spanning means every ordered
(k-1)-tuple of distinct vertices occurs consecutively at least once — for
closed walks, wraparound occurrences count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .hypergraph import Edge, Hypergraph


@dataclass(frozen=True)
class Walk:
    """Immutable tight-walk value; validity is checked by validate_walk."""

    vertices: tuple[int, ...]
    k: int
    closed: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if self.k < 2:
            raise ValueError("k must be at least 2")

    def __len__(self) -> int:
        return len(self.vertices)


def _window_slices(w: Walk) -> list[tuple[int, ...]]:
    """Raw consecutive k-slices (unsorted); [] for open walks shorter than k."""
    vs, k, ell = w.vertices, w.k, len(w.vertices)
    if not w.closed:
        return [vs[i:i + k] for i in range(ell - k + 1)]
    return [vs[i:i + k] if i + k <= ell else vs[i:] + vs[:i + k - ell]
            for i in range(ell)]


def windows(w: Walk) -> list[Edge]:
    """The walk's k-windows as sorted tuples, in traversal order.

    Open walks yield ell-k+1 windows, closed walks ell (indices mod ell).
    Raises ValueError for walks shorter than k.
    """
    if len(w.vertices) < w.k:
        raise ValueError(f"walk of length {len(w.vertices)} has no {w.k}-windows")
    return [tuple(sorted(s)) for s in _window_slices(w)]


def _windows_or_empty(w: Walk) -> list[Edge]:
    if not w.closed and len(w.vertices) < w.k:
        return []
    return windows(w)


@dataclass(frozen=True)
class WalkReport:
    ok: bool
    index: int | None = None  # 0-based index of the first failing window
    reason: str | None = None


def validate_walk(g: Hypergraph, w: Walk) -> WalkReport:
    """Check every window has k distinct vertices, is an edge of g, no edge repeats.

    Open walks shorter than k are valid with no windows (process start-up states).
    """
    if w.k != g.k:
        return WalkReport(False, None, f"walk k={w.k} differs from graph k={g.k}")
    if not w.closed and len(w.vertices) < w.k:
        return WalkReport(True)
    if w.closed and len(w.vertices) < w.k:
        return WalkReport(False, None, "closed walk shorter than k")
    seen: set[Edge] = set()
    for i, sl in enumerate(_window_slices(w)):
        if len(set(sl)) != w.k:
            return WalkReport(False, i, f"window {sl} has repeated vertices")
        e = tuple(sorted(sl))
        if not g.has_edge(e):
            return WalkReport(False, i, f"window {e} is not an edge")
        if e in seen:
            return WalkReport(False, i, f"edge {e} repeated")
        seen.add(e)
    return WalkReport(True)


def rank_tuple(t: tuple[int, ...], n: int) -> int:
    """Mixed-radix rank of an ordered tuple of distinct vertices in 1..n."""
    r = 0
    for i, v in enumerate(t):
        smaller = sum(1 for u in t[:i] if u < v)
        r = r * (n - i) + (v - 1 - smaller)
    return r


def ordered_tuple_count(n: int, size: int) -> int:
    c = 1
    for i in range(size):
        c *= n - i
    return c


def is_spanning(w: Walk, n: int, cap: int = 2 ** 32) -> tuple[bool, int]:
    """Whether every ordered (k-1)-tuple of distinct vertices in 1..n occurs
    consecutively (with wraparound for closed walks); also the missing count.

    Uses a bitmap over ranked (k-1)-permutations; refuses when n^(k-1)
    exceeds `cap`.
    """
    k = w.k
    if n ** (k - 1) > cap:
        raise ValueError(f"n^(k-1) = {n ** (k - 1)} exceeds the spanning-check cap {cap}")
    total = ordered_tuple_count(n, k - 1)
    bitmap = bytearray((total + 7) // 8)
    covered = 0
    vs, ell = w.vertices, len(w.vertices)
    size = k - 1
    if w.closed:
        positions = range(ell) if ell >= size else range(0)
    else:
        positions = range(ell - size + 1)
    for i in positions:
        t = vs[i:i + size] if i + size <= ell else vs[i:] + vs[:i + size - ell]
        if len(set(t)) != size:
            continue
        r = rank_tuple(t, n)
        byte, bit = divmod(r, 8)
        if not bitmap[byte] >> bit & 1:
            bitmap[byte] |= 1 << bit
            covered += 1
    missing = total - covered
    return missing == 0, missing


def walk_degree(w: Walk, subset: Iterable[int]) -> int:
    """Number of distinct walk edges containing the (k-1)-set `subset`."""
    s = set(subset)
    if len(s) != w.k - 1:
        raise ValueError(f"need a subset of {w.k - 1} vertices")
    return sum(1 for e in set(_windows_or_empty(w)) if s.issubset(e))


def max_codegree(w: Walk) -> int:
    """Maximum, over (k-1)-sets, of the number of distinct walk edges containing it."""
    counts: dict[tuple[int, ...], int] = {}
    for e in set(_windows_or_empty(w)):
        for i in range(w.k):
            s = e[:i] + e[i + 1:]
            counts[s] = counts.get(s, 0) + 1
    return max(counts.values(), default=0)


def parse_walk_text(text: str, k: int, closed: bool) -> Walk:
    """One line of space-separated vertex integers."""
    try:
        vs = tuple(int(tok) for tok in text.split())
    except ValueError:
        raise ValueError(f"walk text has non-integer tokens: {text!r}")
    return Walk(vs, k, closed)


def format_walk_text(w: Walk) -> str:
    return " ".join(str(v) for v in w.vertices)
