"""The Johnson graph J(n, r) and its stable sets.

Vertices are the r-subsets of [n]; two vertices are adjacent when they
meet in r-1 elements.  Stable sets of J(n, r) are exactly the non-basis
families of sparse paving matroids (after discarding the one stable set
that leaves no basis, which only matters for r in {0, n}).

The enumeration order is pinned: depth-first, vertices in ascending
bitmask order, each stable set emitted before its extensions and
extensions tried smallest-new-vertex first.  Counting and exact-uniform
sampling share one memoized recursion (branch on a max-degree vertex,
split into connected components), so sampling never materializes the
full list of stable sets.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .bits import elements_of, full_mask, iter_bits
from .core import LineStructure, SparsePavingMatroid, _norm_subset
from .errors import BadCardinalityError, BudgetExceededError, NotStableError

DEFAULT_VERTEX_BUDGET = 128  # refuse to build J(n, r) with more vertices than this
EXACT_EXTENSION_CAP = 64  # largest vertex count for exact maximal extensions
GLAUBER_BURN_FACTOR = 100  # default burn-in is this many sweeps times C(n, r)


def max_stable_bound(n: int, r: int) -> Fraction:
    """Upper bound C(n, r) / (n + 1 - r) on the size of a stable set of J(n, r).

    Counting incidences between a stable set and the (r-1)-subsets shows the
    bound; it is attained exactly when a suitable block design exists, e.g.
    the seven triples of fano_triples() for (n, r) = (7, 3).
    """
    if not 0 <= r <= n:
        raise ValueError(f"rank {r} outside 0..{n}")
    return Fraction(comb(n, r), n + 1 - r)


def byskov_bound(n_vertices: int, k: int) -> int:
    """Maximum possible number of maximal independent sets of size k.

    For a graph on N vertices the count of size-k maximal independent sets
    is at most floor(N/k)^(k-a) * (floor(N/k)+1)^a with a = N mod k.
    """
    if k < 1 or k > n_vertices:
        raise ValueError(f"k={k} outside 1..{n_vertices}")
    q, a = divmod(n_vertices, k)
    return q ** (k - a) * (q + 1) ** a


def shadow(family, n: int | None = None) -> tuple[int, ...]:
    """All (r-1)-subsets obtained by deleting one element from a family member."""
    out = set()
    for s in family:
        m = _norm_subset(s, n)
        mm = m
        while mm:
            low = mm & -mm
            mm ^= low
            out.add(m ^ low)
    return tuple(sorted(out))


def local_lym_ok(n: int, r: int, family) -> bool:
    """Exact check of |shadow(A)| / C(n, r-1) >= |A| / C(n, r), by cross-multiplying."""
    if not 1 <= r <= n:
        raise ValueError(f"rank {r} outside 1..{n}")
    masks = {_norm_subset(s, n) for s in family}
    for m in masks:
        if m.bit_count() != r:
            raise BadCardinalityError("family is not r-uniform")
    return len(shadow(masks)) * comb(n, r) >= len(masks) * comb(n, r - 1)


def fano_triples() -> LineStructure:
    """The seven triples of the unique Steiner triple system on seven points.

    Pairwise intersections all have size one, so the family is a stable set
    of J(7, 3) of size 7 = C(7, 3) / 5, meeting max_stable_bound exactly.
    """
    blocks = [
        {1, 2, 3}, {1, 4, 5}, {1, 6, 7},
        {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6},
    ]
    return LineStructure.from_sets(3, blocks, 7)


@dataclass(frozen=True)
class StableSample:
    """One sampled stable set, with provenance of the sampling method."""

    masks: tuple[int, ...]
    exact: bool
    method: str


@dataclass(frozen=True)
class ExtensionResult:
    """Maximal stable superset of the input; exact=False means greedy fallback."""

    masks: tuple[int, ...]
    exact: bool


class JohnsonGraph:
    """J(n, r) with precomputed adjacency bitmasks over vertex indices."""

    def __init__(self, n: int, r: int, budget: int = DEFAULT_VERTEX_BUDGET):
        if not 0 <= r <= n:
            raise ValueError(f"rank {r} outside 0..{n}")
        if comb(n, r) > budget:
            raise BudgetExceededError(
                f"J({n},{r}) has {comb(n, r)} vertices, budget {budget}"
            )
        self.n = n
        self.r = r
        vs = []
        for combo in combinations(range(n), r):
            m = 0
            for c in combo:
                m |= 1 << c
            vs.append(m)
        vs.sort()
        self.vertices: tuple[int, ...] = tuple(vs)
        self.index: dict[int, int] = {m: i for i, m in enumerate(vs)}
        nv = len(vs)
        adj = [0] * nv
        for i in range(nv):
            vi = vs[i]
            for j in range(i + 1, nv):
                if (vi & vs[j]).bit_count() == r - 1:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        self.adj: tuple[int, ...] = tuple(adj)
        self.vertex_count = nv
        self._count_memo: dict[int, int] = {}
        self._best_memo: dict[int, tuple[int, int]] = {}

    # -- index/mask conversions -------------------------------------------

    def indices_of(self, family) -> int:
        """Vertex-index indicator for a family of r-subsets of [n]."""
        ind = 0
        for s in family:
            m = _norm_subset(s, self.n)
            i = self.index.get(m)
            if i is None:
                raise BadCardinalityError(
                    f"{set(elements_of(m))} is not an r-subset of [{self.n}]"
                )
            ind |= 1 << i
        return ind

    def masks_of(self, indicator: int) -> tuple[int, ...]:
        return tuple(self.vertices[i] for i in iter_bits(indicator))

    def indicator_is_stable(self, indicator: int) -> bool:
        for i in iter_bits(indicator):
            if self.adj[i] & indicator:
                return False
        return True

    # -- enumeration --------------------------------------------------------

    def stable_sets(self, size_cap: int | None = None):
        """Yield every stable set (as a tuple of vertex masks) in pinned DFS order."""
        vs = self.vertices
        adj = self.adj
        out: list[int] = []

        def rec(cand: int):
            yield tuple(out)
            if size_cap is not None and len(out) >= size_cap:
                return
            c = cand
            while c:
                low = c & -c
                c ^= low
                i = low.bit_length() - 1
                out.append(vs[i])
                yield from rec(c & ~adj[i])
                out.pop()

        yield from rec(full_mask(self.vertex_count))

    def maximal_stable_sets(self):
        """Yield the stable sets that cannot be extended by any vertex."""
        adj = self.adj
        nv = self.vertex_count
        out: list[int] = []

        def rec(cand: int, ind: int):
            if all(adj[u] & ind for u in range(nv) if not ind >> u & 1):
                yield tuple(out)
            c = cand
            while c:
                low = c & -c
                c ^= low
                i = low.bit_length() - 1
                out.append(self.vertices[i])
                yield from rec(c & ~adj[i], ind | low)
                out.pop()

        yield from rec(full_mask(nv), 0)

    # -- counting and exact sampling ----------------------------------------

    def _components(self, mask: int) -> list[int]:
        adj = self.adj
        comps = []
        rem = mask
        while rem:
            comp = rem & -rem
            frontier = comp
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    f ^= low
                    nxt |= adj[low.bit_length() - 1]
                nxt &= mask & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            rem &= ~comp
        return comps

    def _pivot(self, mask: int) -> tuple[int, int]:
        """Max-degree vertex inside mask (first one on ties) and its degree."""
        adj = self.adj
        best_v, best_d = -1, -1
        m = mask
        while m:
            low = m & -m
            m ^= low
            v = low.bit_length() - 1
            d = (adj[v] & mask).bit_count()
            if d > best_d:
                best_d, best_v = d, v
        return best_v, best_d

    def _count(self, mask: int) -> int:
        if mask == 0:
            return 1
        res = 1
        for comp in self._components(mask):
            res *= self._count_comp(comp)
        return res

    def _count_comp(self, comp: int) -> int:
        got = self._count_memo.get(comp)
        if got is not None:
            return got
        v, d = self._pivot(comp)
        if d == 0:
            res = 1 << comp.bit_count()
        else:
            bit = 1 << v
            res = self._count(comp ^ bit) + self._count(comp & ~self.adj[v] & ~bit)
        self._count_memo[comp] = res
        return res

    def count_stable_sets(self) -> int:
        """Exact number of stable sets, including the empty one."""
        return self._count(full_mask(self.vertex_count))

    def sample_stable_exact(self, rng: random.Random) -> tuple[int, ...]:
        """Draw one stable set exactly uniformly, via the counting recursion."""
        return self.masks_of(self._draw(full_mask(self.vertex_count), rng))

    def _draw(self, mask: int, rng: random.Random) -> int:
        ind = 0
        for comp in self._components(mask):
            ind |= self._draw_comp(comp, rng)
        return ind

    def _draw_comp(self, comp: int, rng: random.Random) -> int:
        v, d = self._pivot(comp)
        if d == 0:
            # isolated vertices are in or out independently, fair coin each
            ind = 0
            m = comp
            while m:
                low = m & -m
                m ^= low
                if rng.getrandbits(1):
                    ind |= low
            return ind
        bit = 1 << v
        without = comp ^ bit
        n_excl = self._count(without)
        if rng.randrange(self._count_comp(comp)) < n_excl:
            return self._draw(without, rng)
        return bit | self._draw(comp & ~self.adj[v] & ~bit, rng)

    # -- approximate sampling -------------------------------------------------

    def sample_stable_glauber(
        self, rng: random.Random, burn_in: int | None = None
    ) -> tuple[int, ...]:
        """Single-site dynamics at fugacity 1, started from the empty set.

        Each step picks a vertex uniformly; a vertex with no chosen neighbor
        is resampled to present/absent with probability 1/2 each.  The chain
        is reversible with the uniform distribution over stable sets as its
        stationary law; burn_in defaults to GLAUBER_BURN_FACTOR * C(n, r).
        """
        if burn_in is None:
            burn_in = GLAUBER_BURN_FACTOR * self.vertex_count
        adj = self.adj
        nv = self.vertex_count
        state = 0
        for _ in range(burn_in):
            v = rng.randrange(nv)
            bit = 1 << v
            if adj[v] & state:
                continue
            if rng.getrandbits(1):
                state |= bit
            else:
                state &= ~bit
        return self.masks_of(state)

    # -- maximal extensions ----------------------------------------------------

    def order_key(self, family) -> tuple[int, int]:
        """Total-order key for stable sets: size first, then vertex indicator.

        For equal sizes, comparing indicators equals comparing the two sorted
        vertex-bitmask lists from the top: the set whose largest unshared
        vertex mask is bigger wins.
        """
        ind = self.indices_of(family)
        return (ind.bit_count(), ind)

    def maximal_extension(
        self, family, exact_cap: int = EXACT_EXTENSION_CAP
    ) -> ExtensionResult:
        """The greatest maximal stable superset under order_key.

        Exact (memoized branch on the top vertex, component split) while the
        graph has at most exact_cap vertices; beyond that a greedy descending
        completion is returned and flagged exact=False.  Because the result
        maximizes a fixed total order over all stable supersets, any stable
        set I' between I and the extension has the same extension.
        """
        ind = self.indices_of(family)
        if not self.indicator_is_stable(ind):
            raise NotStableError("input family is not stable")
        cand = full_mask(self.vertex_count) & ~ind
        for i in iter_bits(ind):
            cand &= ~self.adj[i]
        if self.vertex_count <= exact_cap:
            _, extra = self._best(cand)
            return ExtensionResult(self.masks_of(ind | extra), True)
        chosen = ind
        for v in range(self.vertex_count - 1, -1, -1):
            bit = 1 << v
            if cand & bit and not self.adj[v] & chosen:
                chosen |= bit
        return ExtensionResult(self.masks_of(chosen), False)

    def _best(self, mask: int) -> tuple[int, int]:
        size, ind = 0, 0
        for comp in self._components(mask):
            s, i = self._best_comp(comp)
            size += s
            ind |= i
        return size, ind

    def _best_comp(self, comp: int) -> tuple[int, int]:
        got = self._best_memo.get(comp)
        if got is not None:
            return got
        v = comp.bit_length() - 1
        bit = 1 << v
        rest = comp ^ bit
        s_in, i_in = self._best(rest & ~self.adj[v])
        s_ex, i_ex = self._best(rest)
        res = max((s_in + 1, i_in | bit), (s_ex, i_ex))
        self._best_memo[comp] = res
        return res


_GRAPHS: dict[tuple[int, int], JohnsonGraph] = {}


def johnson_graph(n: int, r: int, budget: int = DEFAULT_VERTEX_BUDGET) -> JohnsonGraph:
    """Shared JohnsonGraph instances so count/sample memos persist per (n, r)."""
    if comb(n, r) > budget:
        raise BudgetExceededError(
            f"J({n},{r}) has {comb(n, r)} vertices, budget {budget}"
        )
    g = _GRAPHS.get((n, r))
    if g is None:
        g = _GRAPHS[(n, r)] = JohnsonGraph(n, r, budget)
    return g


def enumerate_stable_sets(n: int, r: int, size_cap: int | None = None,
                          budget: int = DEFAULT_VERTEX_BUDGET):
    """Stream all stable sets of J(n, r) in the pinned depth-first order."""
    yield from johnson_graph(n, r, budget).stable_sets(size_cap)


def count_sparse_paving(n: int, budget: int = DEFAULT_VERTEX_BUDGET) -> dict[int, int]:
    """Exact counts s_{n,r} of sparse paving matroids on [n] by rank.

    Equals the number of stable sets of J(n, r), except that for r in
    {0, n} the single-vertex graph has two stable sets but only the empty
    one leaves a basis.
    """
    widest = comb(n, n // 2)
    if widest > budget:
        raise BudgetExceededError(
            f"J({n},{n // 2}) has {widest} vertices, budget {budget}"
        )
    out = {}
    for r in range(n + 1):
        raw = johnson_graph(n, r, budget).count_stable_sets()
        out[r] = 1 if r in (0, n) else raw
    return out


def total_sparse_paving(n: int, budget: int = DEFAULT_VERTEX_BUDGET) -> int:
    return sum(count_sparse_paving(n, budget).values())


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from arbitrary labels, for per-task RNG streams.

    Hash-based so that (seed, n, index) streams are independent of the order
    in which census cells are computed, which keeps outputs byte-identical.
    """
    digest = hashlib.sha256(repr(parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def sample_sparse_paving(
    n: int, seed: int, budget: int = DEFAULT_VERTEX_BUDGET
) -> tuple[SparsePavingMatroid, bool]:
    """Draw a uniform sparse paving matroid on [n]; returns (matroid, exact).

    The rank is drawn by the exact per-rank counts s_{n,r} when every J(n, r)
    fits the vertex budget; the stable set is then drawn exactly at that rank.
    Beyond the budget the rank is drawn uniformly and the stable set comes
    from the Glauber chain, and the flag turns False.
    """
    rng = random.Random(seed)
    try:
        counts = count_sparse_paving(n, budget)
    except BudgetExceededError:
        r = rng.randrange(n + 1)
        if r in (0, n):
            return SparsePavingMatroid(n, r, LineStructure(r, ())), False
        g = johnson_graph(n, r, max(budget, comb(n, r)))
        masks = g.sample_stable_glauber(rng)
        return SparsePavingMatroid(n, r, LineStructure.build(r, masks, validate=False)), False
    total = sum(counts.values())
    pick = rng.randrange(total)
    r = 0
    for r in range(n + 1):
        if pick < counts[r]:
            break
        pick -= counts[r]
    if r in (0, n):
        return SparsePavingMatroid(n, r, LineStructure(r, ())), True
    masks = johnson_graph(n, r, budget).sample_stable_exact(rng)
    return SparsePavingMatroid(n, r, LineStructure.build(r, masks, validate=False)), True


def sample_stable_uniform(
    n: int,
    r: int,
    seed: int,
    budget: int = DEFAULT_VERTEX_BUDGET,
    force_glauber: bool = False,
    burn_in: int | None = None,
) -> StableSample:
    """Sample a stable set of J(n, r), uniformly when the graph fits the budget.

    Within budget the draw is exactly uniform (counting-based, no list is
    materialized).  Otherwise, or when force_glauber is set, the Glauber
    chain provides an approximate-uniform draw; the flag on the result says
    which happened.  Equal seeds give identical results.
    """
    rng = random.Random(seed)
    if not force_glauber and comb(n, r) <= budget:
        g = johnson_graph(n, r, budget)
        return StableSample(g.sample_stable_exact(rng), True, "exact-count")
    g = johnson_graph(n, r, max(budget, comb(n, r)))
    return StableSample(g.sample_stable_glauber(rng, burn_in), False, "glauber")
