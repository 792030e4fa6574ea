"""Contractions, restrictions, and minor containment for sparse paving matroids.

Contracting an independent set A sends each non-basis C containing A to
C - A; the images again meet pairwise in at most (r - |A|) - 2 elements,
so every quotient carries a line structure of its own.  Minor search
therefore only ever contracts by independent sets of size exactly
r(M) - r(H) and then deletes down to n(H) elements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb

from .bits import elements_of, iter_bits, mask_of
from .core import LineStructure, SparsePavingMatroid, _norm_subset, make_sparse_paving
from .errors import (
    BadCardinalityError,
    BudgetExceededError,
    DependentContractionSetError,
    MismatchedAmbientError,
    RankDeficientError,
)

DEFAULT_PAIR_BUDGET = 10**8  # cap on C(n, d) * C(n, n_H) candidate pairs


@dataclass(frozen=True)
class PavingQuotient:
    """A contraction (and possibly restriction) of a sparse paving matroid.

    groundset is a mask over the original [n]; dependents are the rank-size
    subsets of the ground set that are dependent.  origin records where the
    quotient came from but does not take part in equality.
    """

    groundset: int
    rank: int
    dependents: tuple[int, ...]
    origin: tuple = field(compare=False, repr=False, default=())

    @property
    def line_structure(self) -> LineStructure:
        return LineStructure.build(self.rank, self.dependents, validate=False)

    @property
    def ground_elements(self) -> tuple[int, ...]:
        return elements_of(self.groundset)

    def is_dependent(self, subset) -> bool:
        m = _norm_subset(subset)
        if m.bit_count() != self.rank:
            raise BadCardinalityError("dependence is tracked for rank-size subsets")
        return m in self.dependents


def contract(m: SparsePavingMatroid, contract_set) -> PavingQuotient:
    """Quotient by an independent set: non-bases through A survive as C - A."""
    a = _norm_subset(contract_set, m.n)
    d = a.bit_count()
    if d > m.r:
        raise DependentContractionSetError(
            f"{set(elements_of(a))} has {d} > rank {m.r} elements, so it is dependent"
        )
    if d == m.r and a in m.nonbases:
        raise DependentContractionSetError(
            f"{set(elements_of(a))} is a non-basis of the matroid"
        )
    deps = tuple(sorted(c & ~a for c in m.nonbases if c & a == a))
    return PavingQuotient(m.groundset & ~a, m.r - d, deps, origin=(m, a))


def restrict(q: PavingQuotient, keep) -> PavingQuotient:
    """Restrict a quotient to a subset of its ground set, keeping the rank.

    Raises RankDeficientError when no rank-size subset of the kept elements
    is independent (the restriction would not have the quotient's rank).
    """
    e = _norm_subset(keep)
    if e & ~q.groundset:
        raise MismatchedAmbientError("kept elements are not all in the quotient ground set")
    deps = tuple(d for d in q.dependents if d & e == d)
    size = e.bit_count()
    if size < q.rank or (size == q.rank and deps):
        raise RankDeficientError(
            f"no independent {q.rank}-subset inside {set(elements_of(e))}"
        )
    return PavingQuotient(e, q.rank, deps, origin=q.origin)


# -- sub-structure embeddings -------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """An injective element map sending every pattern line onto a host line."""

    element_map: tuple[tuple[int, int], ...]
    line_images: tuple[tuple[int, int], ...]

    def map_element(self, e: int) -> int:
        for p, h in self.element_map:
            if p == e:
                return h
        raise KeyError(e)


def _normalize_host(host_lines, r: int) -> list[int]:
    if isinstance(host_lines, LineStructure):
        host_lines = host_lines.masks
    masks = sorted({_norm_subset(s) for s in host_lines})
    for m in masks:
        if m.bit_count() != r:
            raise BadCardinalityError(
                f"host line {set(elements_of(m))} does not have {r} elements"
            )
    return masks


def iter_embeddings(host_lines, pattern: LineStructure):
    """Yield all embeddings of the pattern into the host lines, pinned order.

    Pattern lines are placed in decreasing-degree order (degree counts how
    many other pattern lines a line intersects); candidate host lines are
    tried in ascending mask order, and free elements of a line are matched
    in ascending order on both sides.
    """
    host = _normalize_host(host_lines, pattern.r)
    pat = pattern.masks
    if not pat:
        yield Embedding((), ())
        return
    if len(host) < len(pat):
        return
    degree = [sum(1 for q in pat if q is not p and p & q) for p in pat]
    order = sorted(range(len(pat)), key=lambda i: (-degree[i], pat[i]))
    fwd: dict[int, int] = {}
    used_elems = 0
    used_lines = [False] * len(host)
    images: list[tuple[int, int]] = []

    def place(k: int):
        nonlocal used_elems
        if k == len(order):
            yield Embedding(
                tuple(sorted(fwd.items())),
                tuple(sorted(images)),
            )
            return
        pl = pat[order[k]]
        mapped = [p for p in iter_bits(pl) if p + 1 in fwd]
        free_pat = [p + 1 for p in iter_bits(pl) if p + 1 not in fwd]
        img_mask = 0
        for p in mapped:
            img_mask |= 1 << (fwd[p + 1] - 1)
        for hi, hl in enumerate(host):
            if used_lines[hi]:
                continue
            if img_mask & ~hl:
                continue  # a mapped element of this line lands outside hl
            if used_elems & hl & ~img_mask:
                continue  # hl holds the image of an element not on this line
            free_host = [b + 1 for b in iter_bits(hl & ~img_mask)]
            used_lines[hi] = True
            images.append((pl, hl))
            for perm in permutations(free_host, len(free_pat)):
                add_mask = 0
                for p, h in zip(free_pat, perm):
                    fwd[p] = h
                    add_mask |= 1 << (h - 1)
                used_elems |= add_mask
                yield from place(k + 1)
                used_elems &= ~add_mask
                for p in free_pat:
                    del fwd[p]
            images.pop()
            used_lines[hi] = False

    yield from place(0)


def contains_line_structure(host_lines, pattern: LineStructure) -> Embedding | None:
    """First embedding of the pattern into the host lines, or None."""
    return next(iter_embeddings(host_lines, pattern), None)


def _exact_iso(host_lines, pattern: LineStructure) -> Embedding | None:
    """Embedding that uses every host line (host and pattern have equal counts)."""
    host = sorted(set(host_lines))
    if len(host) != len(pattern.masks):
        return None
    return next(iter_embeddings(host, pattern), None)


# -- minor search --------------------------------------------------------------


@dataclass(frozen=True)
class MinorWitness:
    """A concrete minor occurrence: contract A, keep E', delete the rest.

    iso maps each element of the target matroid's ground set to the kept
    element realizing it in the quotient.
    """

    contracted: int
    kept: int
    deleted: int
    iso: tuple[tuple[int, int], ...]
    embedding: Embedding


def _complete_iso(h: SparsePavingMatroid, kept: int, emb: Embedding) -> tuple[tuple[int, int], ...]:
    support = h.structure.support
    taken = {hv for _, hv in emb.element_map}
    spare = [e for e in elements_of(kept) if e not in taken]
    iso = {p: hv for p, hv in emb.element_map}
    for e in range(1, h.n + 1):
        if not support >> (e - 1) & 1:
            iso[e] = spare.pop(0)
    return tuple(sorted(iso.items()))


def independent_subsets(m: SparsePavingMatroid, size: int):
    """Masks of the independent size-subsets of [n], lexicographic by elements."""
    if size > m.r:
        return
    nb = set(m.nonbases) if size == m.r else ()
    for combo in combinations(range(m.n), size):
        mask = 0
        for c in combo:
            mask |= 1 << c
        if mask not in nb:
            yield mask


def has_minor(
    m: SparsePavingMatroid, h: SparsePavingMatroid, budget: int = DEFAULT_PAIR_BUDGET
) -> MinorWitness | None:
    """Exhaustive, deterministic search for H as a minor of M.

    Tries every independent contraction set of size r(M) - r(H), then every
    n(H)-element subset of the quotient ground set, accepting when the
    dependent sets inside it are isomorphic to the non-bases of H.  Order is
    lexicographic on element tuples; the first witness is returned.
    """
    if h.r > m.r or h.n > m.n:
        raise ValueError("target rank and size must not exceed the host's")
    d = m.r - h.r
    if m.n - d < h.n:
        return None
    if comb(m.n, d) * comb(m.n, h.n) > budget:
        raise BudgetExceededError(
            f"{comb(m.n, d)} x {comb(m.n, h.n)} candidate pairs exceed budget {budget}"
        )
    pattern = h.structure
    want = len(pattern.masks)
    for a in independent_subsets(m, d):
        q = contract(m, a)
        ground = elements_of(q.groundset)
        deps = q.dependents
        for keep_elems in combinations(ground, h.n):
            e = mask_of(keep_elems)
            inside = [dep for dep in deps if dep & e == dep]
            if len(inside) != want:
                continue
            emb = _exact_iso(inside, pattern)
            if emb is None:
                continue
            return MinorWitness(
                contracted=a,
                kept=e,
                deleted=m.groundset & ~a & ~e,
                iso=_complete_iso(h, e, emb),
                embedding=emb,
            )
    return None


def has_uniform_minor(m: SparsePavingMatroid, t: int, k: int) -> MinorWitness | None:
    """Search for a U_{t,k} minor: a k-set with no dependent t-set after contraction."""
    if not 0 <= t <= k:
        raise ValueError(f"uniform target needs 0 <= t <= k, got ({t}, {k})")
    d = m.r - t
    if d < 0 or m.n - d < k:
        return None
    for a in independent_subsets(m, d):
        q = contract(m, a)
        deps = q.dependents
        for keep_elems in combinations(elements_of(q.groundset), k):
            e = mask_of(keep_elems)
            if any(dep & e == dep for dep in deps):
                continue
            return MinorWitness(
                contracted=a,
                kept=e,
                deleted=m.groundset & ~a & ~e,
                iso=tuple((i + 1, el) for i, el in enumerate(keep_elems)),
                embedding=Embedding((), ()),
            )
    return None


@dataclass(frozen=True)
class CleanCopyWitness:
    """A minor occurrence whose kept window contains no stray dependent sets."""

    contracted: int
    kept: int
    embedding: Embedding


def clean_copy_minor(
    m: SparsePavingMatroid, contract_set, h: SparsePavingMatroid
) -> CleanCopyWitness | None:
    """Find H inside M / A as an exact window: embedded lines and nothing else.

    A must be independent of size r(M) - r(H).  The search walks embeddings
    of H's line structure into the quotient's dependents and then looks for
    an n(H)-element window around the image that contains no dependent set
    beyond the embedded ones.
    """
    a = _norm_subset(contract_set, m.n)
    if h.r > m.r:
        raise ValueError("target rank exceeds the host rank")
    if a.bit_count() != m.r - h.r:
        raise BadCardinalityError(
            f"contraction set must have {m.r - h.r} elements, got {a.bit_count()}"
        )
    q = contract(m, a)  # validates independence
    if q.groundset.bit_count() < h.n:
        return None
    deps = q.dependents
    dep_set = set(deps)
    for emb in iter_embeddings(deps, h.structure):
        image = {hl for _, hl in emb.line_images}
        supp = 0
        for hl in image:
            supp |= hl
        extra_pool = elements_of(q.groundset & ~supp)
        need = h.n - supp.bit_count()
        for extra in combinations(extra_pool, need):
            e = supp | mask_of(extra)
            stray = any(dep & e == dep and dep not in image for dep in dep_set)
            if not stray:
                return CleanCopyWitness(contracted=a, kept=e, embedding=emb)
    return None


# -- stock matroids -------------------------------------------------------------


def uniform(t: int, k: int) -> SparsePavingMatroid:
    """U_{t,k}: every t-subset of [k] is a basis."""
    if not 0 <= t <= k:
        raise ValueError(f"uniform matroid needs 0 <= t <= k, got ({t}, {k})")
    return make_sparse_paving(k, t, ())


def whirl3() -> SparsePavingMatroid:
    """Rank-3 whirl: relax one triangle of the complete-graph-K4 cycle matroid.

    Ground set [6], non-bases {1,2,4}, {2,3,5}, {1,3,6}: three lines pairwise
    meeting in a single point, with 4, 5, 6 each on exactly one line.
    """
    return make_sparse_paving(6, 3, [{1, 2, 4}, {2, 3, 5}, {1, 3, 6}])


def lift(h: SparsePavingMatroid, d: int) -> SparsePavingMatroid:
    """Append d fresh elements to every non-basis, raising the rank by d."""
    if d < 0:
        raise ValueError("lift amount must be non-negative")
    new = 0
    for i in range(d):
        new |= 1 << (h.n + i)
    lines = [c | new for c in h.nonbases]
    return make_sparse_paving(h.n + d, h.r + d, LineStructure.build(h.r + d, lines))


def disjoint_lines(r: int, count: int) -> SparsePavingMatroid:
    """count pairwise disjoint r-element lines on [r * count]."""
    if r < 2:
        raise ValueError("lines of fewer than 2 elements cannot be pairwise stable")
    if count < 1:
        raise ValueError("need at least one line")
    lines = []
    for i in range(count):
        lines.append(set(range(i * r + 1, i * r + r + 1)))
    return make_sparse_paving(r * count, r, lines)


def common_core_lines(r: int, count: int) -> SparsePavingMatroid:
    """count lines sharing a fixed (r-2)-element core, fresh pair each.

    common_core_lines(3, 3) gives {1,2,3}, {1,4,5}, {1,6,7} on [7].
    """
    if r < 2:
        raise ValueError(f"rank must be at least 2, got {r}")
    if count < 1:
        raise ValueError("need at least one line")
    core = set(range(1, r - 1))
    lines = []
    for i in range(count):
        a = (r - 2) + 2 * i + 1
        lines.append(core | {a, a + 1})
    return make_sparse_paving(r - 2 + 2 * count, r, lines)
