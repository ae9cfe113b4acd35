"""k-uniform hypergraphs on vertex set 1..n: queries, generators, file I/O,
and the quasirandomness/connectivity predicates used by the tour pipeline.

Edges are canonical sorted k-tuples held in a set, so membership tests during
walk validation are O(1).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, TextIO

Edge = tuple[int, ...]


class HypergraphFormatError(ValueError):
    """Malformed hypergraph text file."""


def canonical_edge(vertices: Iterable[int], k: int, n: int) -> Edge:
    """Sorted k-tuple of distinct vertices in 1..n; raises ValueError otherwise."""
    e = tuple(sorted(vertices))
    if len(e) != k:
        raise ValueError(f"edge {e} does not have {k} vertices")
    if len(set(e)) != k:
        raise ValueError(f"edge {e} has repeated vertices")
    if e[0] < 1 or e[-1] > n:
        raise ValueError(f"edge {e} has vertices outside 1..{n}")
    return e


class Hypergraph:
    """k-uniform hypergraph with vertices 1..n and a set of k-element edges.

    Queries are read-only and safe to share; mutation (add/remove) is for a
    single owner, e.g. the residual graph of a walk process.
    """

    __slots__ = ("k", "n", "_edges")

    def __init__(self, k: int, n: int, edges: Iterable[Iterable[int]] = ()):
        if k < 2:
            raise ValueError("uniformity k must be at least 2")
        if n < k:
            raise ValueError("need n >= k")
        self.k = k
        self.n = n
        self._edges: set[Edge] = set()
        for e in edges:
            self.add_edge(e)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(self._edges)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self._edges

    def add_edge(self, vertices: Iterable[int]) -> Edge:
        e = canonical_edge(vertices, self.k, self.n)
        if e in self._edges:
            raise ValueError(f"duplicate edge {e}")
        self._edges.add(e)
        return e

    def remove_edge(self, vertices: Iterable[int]) -> None:
        e = tuple(sorted(vertices))
        self._edges.remove(e)

    def copy(self) -> "Hypergraph":
        g = Hypergraph(self.k, self.n)
        g._edges = set(self._edges)
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.k, self.n, self._edges) == (other.k, other.n, other._edges)

    def __repr__(self) -> str:
        return f"Hypergraph(k={self.k}, n={self.n}, m={self.num_edges})"

    def degree(self, subset: Iterable[int]) -> int:
        """Number of edges containing every vertex of `subset` (0 <= |S| <= k).

        degree(()) is the edge count.
        """
        s = tuple(sorted(subset))
        if len(set(s)) != len(s):
            raise ValueError("subset has repeated vertices")
        if len(s) > self.k:
            raise ValueError(f"subset larger than k={self.k}")
        if s and (s[0] < 1 or s[-1] > self.n):
            raise ValueError(f"subset {s} has vertices outside 1..{self.n}")
        if not s:
            return self.num_edges
        ss = set(s)
        return sum(1 for e in self._edges if ss.issubset(e))

    def neighborhood(self, subset: Iterable[int]) -> tuple[int, ...]:
        """Vertices v with subset + {v} an edge; `subset` must have k-1 vertices."""
        s = tuple(sorted(subset))
        if len(s) != self.k - 1 or len(set(s)) != len(s):
            raise ValueError(f"need {self.k - 1} distinct vertices, got {s}")
        if s and (s[0] < 1 or s[-1] > self.n):
            raise ValueError(f"subset {s} has vertices outside 1..{self.n}")
        out = []
        for v in self.vertices():
            if v in s:
                continue
            if tuple(sorted(s + (v,))) in self._edges:
                out.append(v)
        return tuple(out)

    def vertex_degrees(self) -> dict[int, int]:
        d = {v: 0 for v in self.vertices()}
        for e in self._edges:
            for v in e:
                d[v] += 1
        return d


def gen_complete(n: int, k: int) -> Hypergraph:
    """Complete k-graph: all binom(n, k) edges."""
    g = Hypergraph(k, n)
    g._edges = set(itertools.combinations(range(1, n + 1), k))
    return g


def gen_random(n: int, k: int, p: float, seed: int) -> Hypergraph:
    """Each k-subset included independently with probability p; deterministic per seed."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    rng = random.Random(seed)
    g = Hypergraph(k, n)
    g._edges = {
        e for e in itertools.combinations(range(1, n + 1), k) if rng.random() < p
    }
    return g


def tight_cycle_graph(k: int, length: int | None = None) -> Hypergraph:
    """The tight k-uniform cycle on vertices 1..length (default length 2k).

    Edges are the `length` cyclic windows of k consecutive vertices.
    """
    ell = 2 * k if length is None else length
    if ell < k + 1:
        raise ValueError("tight cycle needs length >= k + 1")
    g = Hypergraph(k, ell)
    verts = list(range(1, ell + 1))
    for i in range(ell):
        g.add_edge(verts[i:i + k] + verts[:max(0, i + k - ell)])
    return g


# ---------------------------------------------------------------------------
# Text format: first non-comment line "k n m", then m lines of k vertices.

def save_hypergraph(g: Hypergraph, out: TextIO) -> None:
    """Write the text format; edges sorted lexicographically for bit-exact round trips."""
    out.write(f"{g.k} {g.n} {g.num_edges}\n")
    for e in sorted(g._edges):
        out.write(" ".join(str(v) for v in e) + "\n")


def load_hypergraph(inp: TextIO) -> Hypergraph:
    """Parse the text format; '#' lines are comments; duplicate edges are an error."""
    header: list[int] | None = None
    edges: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(inp, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise HypergraphFormatError(f"line {lineno}: non-integer token in {line!r}")
        if header is None:
            if len(nums) != 3:
                raise HypergraphFormatError(f"line {lineno}: header must be 'k n m'")
            header = nums
            continue
        edges.append(tuple(nums))
    if header is None:
        raise HypergraphFormatError("missing 'k n m' header line")
    k, n, m = header
    if len(edges) != m:
        raise HypergraphFormatError(f"expected {m} edges, found {len(edges)}")
    try:
        g = Hypergraph(k, n)
        for e in edges:
            g.add_edge(e)
    except ValueError as exc:
        raise HypergraphFormatError(str(exc))
    return g


def load_hypergraph_file(path: str) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as f:
        return load_hypergraph(f)


def save_hypergraph_file(g: Hypergraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        save_hypergraph(g, f)


# ---------------------------------------------------------------------------
# Typicality: every family A of up to h many (k-1)-subsets has common
# neighborhood within relative error c of p^|A| * n.

@dataclass(frozen=True)
class TypicalityReport:
    ok: bool
    witness: tuple[tuple[int, ...], ...]
    deviation: float  # relative deviation of the witness family
    families_checked: int
    mode: str


def _neighborhood_masks(g: Hypergraph) -> dict[tuple[int, ...], int]:
    """Bitmask (bit v-1) of the neighborhood of every (k-1)-subset of 1..n."""
    masks: dict[tuple[int, ...], int] = {
        s: 0 for s in itertools.combinations(range(1, g.n + 1), g.k - 1)
    }
    for e in g.edges:
        for i in range(g.k):
            s = e[:i] + e[i + 1:]
            masks[s] |= 1 << (e[i] - 1)
    return masks


def is_typical(
    g: Hypergraph,
    c: float,
    h: int,
    p: float,
    mode: str = "exact",
    seed: int = 0,
    samples: int = 20_000,
    exact_cap: int = 10_000_000,
) -> TypicalityReport:
    """Check (c, h, p)-typicality; returns the worst family as witness.

    Exact mode enumerates every nonempty family with |A| <= h and refuses
    (ValueError, suggesting sampled mode) past `exact_cap` families. Sampled
    mode draws `samples` uniform families from the same universe.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError("need 0 < p <= 1")
    if c <= 0:
        raise ValueError("need c > 0")
    if h < 1:
        raise ValueError("need h >= 1")
    subsets = list(itertools.combinations(range(1, g.n + 1), g.k - 1))
    masks = _neighborhood_masks(g)
    n = g.n

    def families() -> Iterator[tuple[tuple[int, ...], ...]]:
        if mode == "exact":
            for a in range(1, h + 1):
                yield from itertools.combinations(subsets, a)
        elif mode == "sampled":
            rng = random.Random(seed)
            weights = [math.comb(len(subsets), a) for a in range(1, h + 1)]
            sizes = rng.choices(range(1, h + 1), weights=weights, k=samples)
            for a in sizes:
                yield tuple(sorted(rng.sample(subsets, a)))
        else:
            raise ValueError(f"unknown mode {mode!r}")

    if mode == "exact":
        total = sum(math.comb(len(subsets), a) for a in range(1, h + 1))
        if total > exact_cap:
            raise ValueError(
                f"{total} families exceed the exact-mode cap {exact_cap}; use sampled mode"
            )

    ok = True
    worst: tuple[tuple[int, ...], ...] = ()
    worst_dev = -1.0
    checked = 0
    for fam in families():
        checked += 1
        inter = masks[fam[0]]
        for s in fam[1:]:
            inter &= masks[s]
        expected = (p ** len(fam)) * n
        dev = abs(inter.bit_count() - expected)
        rel = dev / expected
        if dev > c * expected:
            ok = False
        if rel > worst_dev or (rel == worst_dev and fam < worst):
            worst_dev = rel
            worst = fam
    return TypicalityReport(ok=ok, witness=worst, deviation=worst_dev,
                            families_checked=checked, mode=mode)


# ---------------------------------------------------------------------------
# Connectedness: the largest alpha such that for every pair of disjoint
# ordered (k-1)-tuples there are >= alpha*n middle vertices bridging them
# through k consecutive edge windows.

def connectedness(
    g: Hypergraph,
    mode: str = "exact",
    seed: int = 0,
    samples: int = 2000,
) -> Fraction:
    """Largest alpha with g alpha-connected (exact), or an upper bound (sampled)."""
    k, n = g.k, g.n
    if n < 2 * k - 1:
        raise ValueError(f"need n >= 2k-1 = {2 * k - 1}")
    edges = g.edges
    nb_cache: dict[tuple[int, ...], int] = {}

    def nb_mask(s: tuple[int, ...]) -> int:
        m = nb_cache.get(s)
        if m is None:
            m = 0
            for v in range(1, n + 1):
                if v not in s and tuple(sorted(s + (v,))) in edges:
                    m |= 1 << (v - 1)
            nb_cache[s] = m
        return m

    def middle_count(fixed: tuple[int, ...]) -> int:
        # fixed = (v_1..v_{k-1}, v_{k+1}..v_{2k-1}); middle vertex completes k windows
        inter = ~0
        for i in range(k):
            window_rest = tuple(sorted(fixed[i:i + k - 1]))
            inter &= nb_mask(window_rest)
            if inter == 0:
                return 0
        return inter.bit_count()

    verts = list(range(1, n + 1))
    if mode == "exact":
        best: int | None = None
        for fixed in itertools.permutations(verts, 2 * k - 2):
            cnt = middle_count(fixed)
            if best is None or cnt < best:
                best = cnt
                if best == 0:
                    break
        assert best is not None
        return Fraction(best, n)
    if mode == "sampled":
        rng = random.Random(seed)
        best = None
        for _ in range(samples):
            fixed = tuple(rng.sample(verts, 2 * k - 2))
            cnt = middle_count(fixed)
            if best is None or cnt < best:
                best = cnt
                if best == 0:
                    break
        assert best is not None
        return Fraction(best, n)
    raise ValueError(f"unknown mode {mode!r}")
