"""Core types: r-subsets, line structures, and sparse paving matroids.

A sparse paving matroid of rank r on [n] is determined by its set of
non-basis r-subsets, and a family of r-subsets arises this way exactly
when no two members meet in r-1 elements and at least one r-subset is
left over as a basis.  Throughout, subsets are stored as int bitmasks
(element i = bit i-1, see bits.py).
"""
from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass
from math import comb

from .bits import MAX_GROUND, SubsetLike, as_mask, elements_of, full_mask, iter_bits, mask_of
from .errors import (
    BadCardinalityError,
    MismatchedAmbientError,
    NoBasisError,
    NotStableError,
)


@dataclass(frozen=True)
class RSubset:
    """An r-element subset of a fixed ground set [ambient]."""

    mask: int
    ambient: int

    @classmethod
    def of(cls, elements: Iterable[int], ambient: int) -> "RSubset":
        if not 0 <= ambient <= MAX_GROUND:
            raise ValueError(f"ambient {ambient} outside 0..{MAX_GROUND}")
        return cls(mask_of(elements, ambient), ambient)

    @property
    def elements(self) -> tuple[int, ...]:
        return elements_of(self.mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __repr__(self) -> str:
        return f"RSubset({set(self.elements) or '{}'}, n={self.ambient})"


def _norm_subset(subset, n: int | None = None) -> int:
    """Accept RSubset, mask, or element iterable; return a mask."""
    if isinstance(subset, RSubset):
        if n is not None and subset.ambient != n:
            raise MismatchedAmbientError(
                f"subset over [{subset.ambient}], expected [{n}]"
            )
        return subset.mask
    return as_mask(subset, n)


def adjacent(u, v, n: int | None = None) -> bool:
    """True iff two equal-size subsets meet in all but one element.

    This is adjacency in the Johnson graph: |u| = |v| = r and |u & v| = r-1.
    """
    if isinstance(u, RSubset) and isinstance(v, RSubset) and u.ambient != v.ambient:
        raise MismatchedAmbientError(f"ambients differ: {u.ambient} vs {v.ambient}")
    um = _norm_subset(u, n)
    vm = _norm_subset(v, n)
    r = um.bit_count()
    if vm.bit_count() != r:
        raise BadCardinalityError("adjacency needs equal-size subsets")
    return (um & vm).bit_count() == r - 1


def is_stable(family, r: int | None = None, n: int | None = None) -> bool:
    """True iff no two distinct members of the family meet in r-1 elements.

    The family must be r-uniform; r is inferred from the first member when
    not given.  Duplicates are collapsed before checking.
    """
    masks = sorted({_norm_subset(s, n) for s in family})
    if not masks:
        return True
    if r is None:
        r = masks[0].bit_count()
    for m in masks:
        if m.bit_count() != r:
            raise BadCardinalityError("family is not r-uniform")
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if (a & b).bit_count() == r - 1:
                return False
    return True


@dataclass(frozen=True)
class LineStructure:
    """A stable family of r-sets: pairwise intersections have at most r-2 elements."""

    r: int
    masks: tuple[int, ...]

    @classmethod
    def from_sets(cls, r: int, lines, n: int | None = None, validate: bool = True) -> "LineStructure":
        masks = tuple(sorted({_norm_subset(s, n) for s in lines}))
        return cls.build(r, masks, validate=validate)

    @classmethod
    def build(cls, r: int, masks, validate: bool = True) -> "LineStructure":
        masks = tuple(sorted(set(masks)))
        if validate:
            if r < 0:
                raise ValueError("rank must be non-negative")
            for m in masks:
                if m.bit_count() != r:
                    raise BadCardinalityError(
                        f"line {set(elements_of(m))} has {m.bit_count()} elements, expected {r}"
                    )
            for i, a in enumerate(masks):
                for b in masks[i + 1:]:
                    if (a & b).bit_count() == r - 1:
                        raise NotStableError(
                            f"lines {set(elements_of(a))} and {set(elements_of(b))} meet in {r - 1} elements"
                        )
        return cls(r, masks)

    @property
    def lines(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(elements_of(m)) for m in self.masks)

    @property
    def support(self) -> int:
        s = 0
        for m in self.masks:
            s |= m
        return s

    def __len__(self) -> int:
        return len(self.masks)

    def __repr__(self) -> str:
        shown = [set(elements_of(m)) for m in self.masks]
        return f"LineStructure(r={self.r}, lines={shown})"


@dataclass(frozen=True)
class SparsePavingMatroid:
    """A sparse paving matroid given by its non-basis r-subsets of [n]."""

    n: int
    r: int
    structure: LineStructure

    @property
    def nonbases(self) -> tuple[int, ...]:
        return self.structure.masks

    @property
    def nonbasis_sets(self) -> tuple[frozenset[int], ...]:
        return self.structure.lines

    @property
    def groundset(self) -> int:
        return full_mask(self.n)

    def is_basis(self, subset: SubsetLike) -> bool:
        m = _norm_subset(subset, self.n)
        return m.bit_count() == self.r and m not in self._nonbasis_set()

    def _nonbasis_set(self) -> frozenset[int]:
        # cached on first use; object is frozen so stash via __dict__ workaround
        cached = self.__dict__.get("_nbset")
        if cached is None:
            cached = frozenset(self.structure.masks)
            object.__setattr__(self, "_nbset", cached)
        return cached

    def bases(self):
        """Yield basis masks in ascending order."""
        nb = self._nonbasis_set()
        for combo in itertools.combinations(range(self.n), self.r):
            m = 0
            for c in combo:
                m |= 1 << c
            if m not in nb:
                yield m

    def rank(self, subset: SubsetLike) -> int:
        """Rank of a subset, from the defining case analysis.

        Sets smaller than r are independent; a set of size r is dependent
        only if it is a non-basis; any larger set contains a basis (two
        r-subsets differing in one element cannot both be non-bases).
        """
        m = _norm_subset(subset, self.n)
        k = m.bit_count()
        if k < self.r:
            return k
        if k == self.r and m in self._nonbasis_set():
            return self.r - 1
        return self.r

    def __repr__(self) -> str:
        return f"SparsePavingMatroid(n={self.n}, r={self.r}, nonbases={len(self.structure)})"


def make_sparse_paving(n: int, r: int, nonbases) -> SparsePavingMatroid:
    """Validate and build a sparse paving matroid from its non-basis list.

    Raises NotStableError when two non-bases meet in r-1 elements,
    NoBasisError when every r-subset of [n] is declared a non-basis.
    """
    if not 0 <= n <= MAX_GROUND:
        raise ValueError(f"ground set size {n} outside 0..{MAX_GROUND}")
    if not 0 <= r <= n:
        raise ValueError(f"rank {r} outside 0..{n}")
    structure = (
        nonbases
        if isinstance(nonbases, LineStructure)
        else LineStructure.from_sets(r, nonbases, n)
    )
    if structure.r != r:
        raise BadCardinalityError(f"line structure has rank {structure.r}, expected {r}")
    if structure.support >> n:
        raise ValueError("non-basis uses elements outside the ground set")
    if len(structure) == comb(n, r):
        raise NoBasisError(f"all {comb(n, r)} r-subsets declared non-bases")
    return SparsePavingMatroid(n, r, structure)


def verify_matroid_axioms(bases) -> bool:
    """Basis-exchange oracle: does the family satisfy the basis axioms?

    Checks the family is nonempty, equicardinal, and closed under exchange:
    for all B1, B2 and x in B1-B2 there is y in B2-B1 with B1-x+y a basis.
    Works on any family of int sets (or masks); independent of the sparse
    paving machinery, so it can cross-check constructions.
    """
    masks = sorted({as_mask(b) for b in bases})
    if not masks:
        return False
    r = masks[0].bit_count()
    if any(m.bit_count() != r for m in masks):
        return False
    bset = frozenset(masks)
    for b1 in masks:
        for b2 in masks:
            if b1 == b2:
                continue
            take = b2 & ~b1
            give = b1 & ~b2
            g = give
            while g:
                xbit = g & -g
                g ^= xbit
                base = b1 ^ xbit
                t = take
                ok = False
                while t:
                    ybit = t & -t
                    t ^= ybit
                    if (base | ybit) in bset:
                        ok = True
                        break
                if not ok:
                    return False
    return True


@dataclass(frozen=True)
class GeneralMatroid:
    """A matroid stored as an explicit basis list; used as a cross-check oracle."""

    n: int
    bases: tuple[int, ...]

    @classmethod
    def from_bases(cls, n: int, bases, validate: bool = True) -> "GeneralMatroid":
        masks = tuple(sorted({_norm_subset(b, n) for b in bases}))
        if validate and not verify_matroid_axioms(masks):
            raise ValueError("family violates the basis-exchange axioms")
        return cls(n, masks)

    @classmethod
    def from_sparse_paving(cls, m: SparsePavingMatroid) -> "GeneralMatroid":
        return cls(m.n, tuple(m.bases()))

    def rank(self, subset: SubsetLike) -> int:
        s = _norm_subset(subset, self.n)
        return max((s & b).bit_count() for b in self.bases)

    def is_independent(self, subset: SubsetLike) -> bool:
        s = _norm_subset(subset, self.n)
        return any(s & b == s for b in self.bases)


# re-export for callers that only import core
__all__ = [
    "RSubset",
    "LineStructure",
    "SparsePavingMatroid",
    "GeneralMatroid",
    "adjacent",
    "is_stable",
    "make_sparse_paving",
    "verify_matroid_axioms",
    "elements_of",
    "mask_of",
]
