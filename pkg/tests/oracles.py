"""Slow, independent reimplementations used to cross-check the fast paths.

Everything here works on plain frozensets and ranges, never on bitmasks,
so agreement with the library is evidence rather than tautology.  Keep n
small; most of these are exponential on purpose.
"""
from itertools import combinations, permutations


def r_subsets(n, r):
    return [frozenset(c) for c in combinations(range(1, n + 1), r)]


def is_stable_family(family, r):
    fam = [frozenset(a) for a in family]
    return all(
        len(a & b) != r - 1 for i, a in enumerate(fam) for b in fam[i + 1:]
    )


def all_stable_families(n, r):
    """Every stable family of J(n, r) by power-set filtering (n <= 5)."""
    verts = r_subsets(n, r)
    out = []
    for bits in range(1 << len(verts)):
        fam = [verts[i] for i in range(len(verts)) if (bits >> i) & 1]
        if is_stable_family(fam, r):
            out.append(frozenset(fam))
    return out


def stable_families_pruned(n, r):
    """Stable families by set recursion with early pruning; reaches n = 6."""
    verts = r_subsets(n, r)
    out = []

    def rec(i, fam):
        out.append(frozenset(fam))
        for j in range(i, len(verts)):
            v = verts[j]
            if all(len(v & u) != r - 1 for u in fam):
                fam.append(v)
                rec(j + 1, fam)
                fam.pop()

    rec(0, [])
    return out


def maximal_stable_families(n, r):
    fams = all_stable_families(n, r)
    verts = r_subsets(n, r)
    out = []
    for fam in fams:
        extendable = any(
            v not in fam and is_stable_family(list(fam) + [v], r) for v in verts
        )
        if not extendable:
            out.append(fam)
    return out


def shadow_of(family):
    out = set()
    for a in family:
        a = frozenset(a)
        for e in a:
            out.add(a - {e})
    return out


def bases_of(n, r, nonbases):
    nb = {frozenset(x) for x in nonbases}
    return [b for b in r_subsets(n, r) if b not in nb]


def exchange_ok(bases):
    """Basis-exchange axiom, checked literally over frozensets."""
    bl = [frozenset(b) for b in bases]
    if not bl:
        return False
    k = len(bl[0])
    if any(len(b) != k for b in bl):
        return False
    bs = set(bl)
    for b1 in bl:
        for b2 in bl:
            for x in b1 - b2:
                if not any((b1 - {x}) | {y} in bs for y in b2 - b1):
                    return False
    return True


def rank_fn(bases):
    bl = [frozenset(b) for b in bases]

    def rank(x):
        x = frozenset(x)
        return max(len(x & b) for b in bl)

    return rank


def minor_on(bases, contract, keep):
    """Bases of (M / contract) | keep via the rank function; any contract set."""
    rank = rank_fn(bases)
    a = frozenset(contract)
    keep = frozenset(keep) - a
    ra = rank(a)
    best = []
    best_rank = -1
    for size in range(len(keep) + 1):
        for sub in combinations(sorted(keep), size):
            s = frozenset(sub)
            if rank(s | a) - ra == len(s):
                if len(s) > best_rank:
                    best_rank = len(s)
                    best = []
                if len(s) == best_rank:
                    best.append(s)
    return best, best_rank


def matroids_isomorphic(bases1, ground1, bases2, ground2):
    """Exhaustive bijection search; grounds are iterables of elements."""
    g1 = sorted(ground1)
    g2 = sorted(ground2)
    if len(g1) != len(g2):
        return False
    b1 = {frozenset(b) for b in bases1}
    b2 = {frozenset(b) for b in bases2}
    if len(b1) != len(b2):
        return False
    for perm in permutations(g2):
        m = dict(zip(g1, perm))
        if {frozenset(m[e] for e in b) for b in b1} == b2:
            return True
    return False


def has_minor_oracle(m, h):
    """General minor semantics: all independent contract sets, all windows.

    m, h are SparsePavingMatroid-likes exposing n, r, nonbasis_sets.  The
    contract set ranges over independent sets of every size; rank-deficient
    windows are allowed and judged by the resulting basis family.
    """
    mb = bases_of(m.n, m.r, m.nonbasis_sets)
    hb = bases_of(h.n, h.r, h.nonbasis_sets)
    hg = range(1, h.n + 1)
    rank = rank_fn(mb)
    ground = range(1, m.n + 1)
    for asize in range(m.r + 1):
        for a in combinations(ground, asize):
            if rank(a) != asize:
                continue
            rest = [e for e in ground if e not in a]
            if len(rest) < h.n:
                continue
            for keep in combinations(rest, h.n):
                minor_bases, minor_rank = minor_on(mb, a, keep)
                if minor_rank != h.r:
                    continue
                if matroids_isomorphic(minor_bases, keep, hb, hg):
                    return True
    return False


def max_lfree_count(n, r, pattern_sets, contains):
    """Naive ex(n, L): filter all stable families by the library's embedder."""
    best = 0
    for fam in all_stable_families(n, r):
        if contains(fam, pattern_sets) is None and len(fam) > best:
            best = len(fam)
    return best
