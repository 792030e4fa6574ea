"""Census orchestration: verification sweeps, count tables, minor censuses.

Everything here is plumbing around the library: build row dictionaries with
exact rationals inside, render them to CSV or JSON with a fixed field order,
and keep every byte reproducible from (experiment, parameters, seed).
Wall-clock time never enters the rendered output.
"""
from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import johnson
from .bits import elements_of
from .core import SparsePavingMatroid, make_sparse_paving
from .errors import (
    BudgetExceededError,
    MatroidFileError,
    PavingError,
    UnknownTargetError,
)
from .johnson import (
    count_sparse_paving,
    derive_seed,
    johnson_graph,
    sample_sparse_paving,
    total_sparse_paving,
)
from .minors import (
    clean_copy_minor,
    common_core_lines,
    disjoint_lines,
    has_minor,
    independent_subsets,
    uniform,
    whirl3,
)

VERIFY_N_CAP = 7
EXHAUSTIVE_POP_CAP = 20000
EXTENSION_EPSILON = 1  # threshold C(n,r)/((1+eps)*2n) evaluated at eps = 1


# -- matroid files --------------------------------------------------------------


def write_matroid(m: SparsePavingMatroid, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_matroid(m))


def format_matroid(m: SparsePavingMatroid) -> str:
    out = [f"n={m.n} r={m.r}"]
    for c in m.nonbases:
        out.append(" ".join(str(e) for e in elements_of(c)))
    return "\n".join(out) + "\n"


def read_matroid(path) -> SparsePavingMatroid:
    """Parse the one-matroid text format.

    Line 1 is `n=<int> r=<int>`; each later non-blank line is one non-basis
    as ascending space-separated 1-indexed elements; `#` starts a comment.
    Syntax problems raise MatroidFileError; families that parse but violate
    matroid constraints raise the usual construction errors.
    """
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    lines = []
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append(body)
    if not lines:
        raise MatroidFileError(f"{path}: no header line")
    head = lines[0].split()
    if len(head) != 2 or not head[0].startswith("n=") or not head[1].startswith("r="):
        raise MatroidFileError(f"{path}: header must be 'n=<int> r=<int>'")
    try:
        n = int(head[0][2:])
        r = int(head[1][2:])
    except ValueError as exc:
        raise MatroidFileError(f"{path}: bad header numbers") from exc
    nonbases = []
    for body in lines[1:]:
        try:
            elems = [int(tok) for tok in body.split()]
        except ValueError as exc:
            raise MatroidFileError(f"{path}: non-integer token in {body!r}") from exc
        if any(e < 1 or e > n for e in elems):
            raise MatroidFileError(f"{path}: element outside 1..{n} in {body!r}")
        if len(set(elems)) != len(elems):
            raise MatroidFileError(f"{path}: repeated element in {body!r}")
        nonbases.append(set(elems))
    return make_sparse_paving(n, r, nonbases)


# -- target parsing --------------------------------------------------------------


def parse_target(spec: str) -> tuple[str, SparsePavingMatroid]:
    """Resolve a target descriptor to (canonical name, matroid).

    Forms: u:t:k, whirl3, disjoint:r:k, core:r:k, file:<path>.
    """
    parts = spec.split(":")
    try:
        if parts[0] == "u" and len(parts) == 3:
            t, k = int(parts[1]), int(parts[2])
            return f"u:{t}:{k}", uniform(t, k)
        if spec == "whirl3":
            return "whirl3", whirl3()
        if parts[0] == "disjoint" and len(parts) == 3:
            r, k = int(parts[1]), int(parts[2])
            return f"disjoint:{r}:{k}", disjoint_lines(r, k)
        if parts[0] == "core" and len(parts) == 3:
            r, k = int(parts[1]), int(parts[2])
            return f"core:{r}:{k}", common_core_lines(r, k)
        if parts[0] == "file" and len(parts) >= 2:
            path = spec.split(":", 1)[1]
            return f"file:{path}", read_matroid(path)
    except (ValueError, OSError) as exc:
        if isinstance(exc, PavingError):
            raise  # file parsed but breaks a matroid invariant; keep the type
        raise UnknownTargetError(f"bad target {spec!r}: {exc}") from exc
    raise UnknownTargetError(
        f"unknown target {spec!r}; use u:t:k, whirl3, disjoint:r:k, core:r:k, file:path"
    )


# -- populations -----------------------------------------------------------------


def iter_all_matroids(n: int, budget: int = johnson.DEFAULT_VERTEX_BUDGET):
    """All sparse paving matroids on [n], rank ascending, pinned stable-set order."""
    for r in range(n + 1):
        if r in (0, n):
            yield make_sparse_paving(n, r, [])
            continue
        g = johnson_graph(n, r, budget)
        for fam in g.stable_sets():
            yield make_sparse_paving(n, r, fam)


def _population(n: int, samples: int, seed: int, tag: str, cap: int):
    """Yield (matroid, exact_draw) pairs, exhaustively or by seeded sampling."""
    if samples == 0:
        total = total_sparse_paving(n)
        if total > cap:
            raise BudgetExceededError(
                f"exhaustive census over {total} matroids exceeds cap {cap}; "
                f"pass --samples to sample instead"
            )
        for m in iter_all_matroids(n):
            yield m, True
    else:
        for i in range(samples):
            yield sample_sparse_paving(n, derive_seed(seed, tag, n, i))


# -- verify ----------------------------------------------------------------------


def verify_rows(n_max: int) -> list[dict]:
    """Exhaustive small-n check rows for the four counting bounds.

    Checks per (n, r): max-stable (every stable set within C(n,r)/(n+1-r)),
    byskov (size-k maximal stable set counts within the Byskov bound),
    local-lym (cross-multiplied shadow inequality on every stable set);
    per n >= 2: graham-sloane (s_n strictly above 2^(C(n, n/2)/n), compared
    in integers as s_n^n > 2^C).  Bound functions are looked up through the
    johnson module at call time, so a corrupted bound is caught by name.
    """
    if n_max > VERIFY_N_CAP:
        raise BudgetExceededError(f"verify is exhaustive; n_max capped at {VERIFY_N_CAP}")
    rows = []
    for n in range(1, n_max + 1):
        for r in range(n + 1):
            if r in (0, n):
                continue
            g = johnson_graph(n, r)
            nv = len(g.vertices)
            bound = johnson.max_stable_bound(n, r)
            max_seen = 0
            lym_ok = True
            for fam in g.stable_sets():
                if len(fam) > max_seen:
                    max_seen = len(fam)
                if fam and not johnson.local_lym_ok(n, r, fam):
                    lym_ok = False
            rows.append(
                {
                    "check": "max-stable",
                    "n": n,
                    "r": r,
                    "ok": Fraction(max_seen) <= bound,
                    "detail": f"max {max_seen} vs {bound}",
                }
            )
            sizes: dict[int, int] = {}
            for fam in g.maximal_stable_sets():
                sizes[len(fam)] = sizes.get(len(fam), 0) + 1
            bys_ok = True
            worst = ""
            for k, cnt in sorted(sizes.items()):
                if k == 0:
                    continue  # empty graph corner; Byskov needs k >= 1
                allowed = johnson.byskov_bound(nv, k)
                if cnt > allowed:
                    bys_ok = False
                    worst = f"k={k}: {cnt} > {allowed}"
                    break
            rows.append(
                {
                    "check": "byskov",
                    "n": n,
                    "r": r,
                    "ok": bys_ok,
                    "detail": worst or f"{sum(sizes.values())} maximal sets",
                }
            )
            rows.append(
                {
                    "check": "local-lym",
                    "n": n,
                    "r": r,
                    "ok": lym_ok,
                    "detail": "all stable sets",
                }
            )
        if n >= 2:
            total = total_sparse_paving(n)
            c = comb(n, n // 2)
            rows.append(
                {
                    "check": "graham-sloane",
                    "n": n,
                    "r": "",
                    "ok": total**n > 2**c,
                    "detail": f"s_n={total} vs 2^({c}/{n})",
                }
            )
    return rows


VERIFY_FIELDS = ("check", "n", "r", "ok", "detail")


# -- count -----------------------------------------------------------------------


def count_rows(n: int, budget: int = johnson.DEFAULT_VERTEX_BUDGET) -> list[dict]:
    counts = count_sparse_paving(n, budget)
    rows = [{"n": n, "r": r, "count": counts[r]} for r in range(n + 1)]
    rows.append({"n": n, "r": "total", "count": sum(counts.values())})
    return rows


COUNT_FIELDS = ("n", "r", "count")


# -- minor census ----------------------------------------------------------------


def minor_census_rows(
    target_name: str,
    target: SparsePavingMatroid,
    n_values,
    samples: int,
    seed: int,
    exact: bool = True,
    cap: int = EXHAUSTIVE_POP_CAP,
) -> list[dict]:
    """Per-n fraction of matroids containing the target as a minor.

    samples == 0 enumerates all of S_n (small n only); otherwise that many
    seeded draws.  Exact mode decides containment with the exhaustive minor
    search; fast mode only scouts for clean copies, a sound lower bound.
    The rank histogram of the population is recorded alongside.
    """
    rows = []
    for n in n_values:
        hits = 0
        pop = 0
        all_exact = True
        rank_hist: dict[int, int] = {}
        for m, exact_draw in _population(n, samples, seed, "census", cap):
            pop += 1
            all_exact = all_exact and exact_draw
            rank_hist[m.r] = rank_hist.get(m.r, 0) + 1
            if exact:
                hit = m.r >= target.r and m.n >= target.n and has_minor(m, target) is not None
            else:
                hit = _clean_copy_hit(m, target)
            if hit:
                hits += 1
        rows.append(
            {
                "target": target_name,
                "mode": "exact" if exact else "fast",
                "n": n,
                "population": pop,
                "exhaustive": samples == 0,
                "hits": hits,
                "frac": Fraction(hits, pop) if pop else Fraction(0),
                "rank_hist": dict(sorted(rank_hist.items())),
                "exact_draws": all_exact,
            }
        )
    return rows


MINOR_FIELDS = (
    "target",
    "mode",
    "n",
    "population",
    "exhaustive",
    "hits",
    "frac",
    "frac_float",
    "rank_hist",
    "exact_draws",
)


def _clean_copy_hit(m: SparsePavingMatroid, target: SparsePavingMatroid) -> bool:
    d = m.r - target.r
    if d < 0 or m.n < target.n:
        return False
    for a in independent_subsets(m, d):
        if clean_copy_minor(m, a, target) is not None:
            return True
    return False


# -- non-basis lower-bound census ------------------------------------------------


def nonbasis_bound_rows(
    n_values,
    samples: int,
    seed: int,
    cap: int = EXHAUSTIVE_POP_CAP,
) -> list[dict]:
    """Distribution of |C(M)| against the (1/(4n))C(n,r) landmark, per n.

    ratio(M) = 4n|C(M)|/C(n, r(M)); the table reports its mean, coarse
    buckets, the fraction at or above 1, and how often the maximal
    extension of C(M) reaches C(n,r)/(4n) vertices (the eps = 1 point of
    the extension threshold).  Extension sizes fall back to the greedy
    completion on graphs past the exact cap and are flagged.
    """
    rows = []
    for n in n_values:
        pop = 0
        all_exact = True
        ext_exact = True
        ratio_sum = Fraction(0)
        ge_1 = 0
        ext_ge = 0
        buckets = {"lt_half": 0, "half_to_1": 0, "one_to_2": 0, "two_to_4": 0, "ge_4": 0}
        rank_hist: dict[int, int] = {}
        for m, exact_draw in _population(n, samples, seed, "nonbasis", cap):
            pop += 1
            all_exact = all_exact and exact_draw
            rank_hist[m.r] = rank_hist.get(m.r, 0) + 1
            ratio = Fraction(4 * n * len(m.nonbases), comb(n, m.r))
            ratio_sum += ratio
            if ratio >= 1:
                ge_1 += 1
            if ratio < Fraction(1, 2):
                buckets["lt_half"] += 1
            elif ratio < 1:
                buckets["half_to_1"] += 1
            elif ratio < 2:
                buckets["one_to_2"] += 1
            elif ratio < 4:
                buckets["two_to_4"] += 1
            else:
                buckets["ge_4"] += 1
            if m.r in (0, n):
                # one-vertex Johnson graphs: extension is that vertex
                ext_size = 1
            else:
                g = johnson_graph(n, m.r)
                res = g.maximal_extension(m.nonbases)
                ext_exact = ext_exact and res.exact
                ext_size = len(res.masks)
            if Fraction(ext_size) >= Fraction(comb(n, m.r), 4 * n):
                ext_ge += 1
        rows.append(
            {
                "n": n,
                "population": pop,
                "exhaustive": samples == 0,
                "mean_ratio": ratio_sum / pop if pop else Fraction(0),
                "frac_ge_1": Fraction(ge_1, pop) if pop else Fraction(0),
                "frac_below_1": Fraction(pop - ge_1, pop) if pop else Fraction(0),
                "bucket_lt_half": buckets["lt_half"],
                "bucket_half_to_1": buckets["half_to_1"],
                "bucket_one_to_2": buckets["one_to_2"],
                "bucket_two_to_4": buckets["two_to_4"],
                "bucket_ge_4": buckets["ge_4"],
                "ext_ge_thresh_frac": Fraction(ext_ge, pop) if pop else Fraction(0),
                "ext_exact": ext_exact,
                "rank_hist": dict(sorted(rank_hist.items())),
                "exact_draws": all_exact,
            }
        )
    return rows


NONBASIS_FIELDS = (
    "n",
    "population",
    "exhaustive",
    "mean_ratio",
    "mean_ratio_float",
    "frac_ge_1",
    "frac_ge_1_float",
    "frac_below_1",
    "frac_below_1_float",
    "bucket_lt_half",
    "bucket_half_to_1",
    "bucket_one_to_2",
    "bucket_two_to_4",
    "bucket_ge_4",
    "ext_ge_thresh_frac",
    "ext_ge_thresh_frac_float",
    "ext_exact",
    "rank_hist",
    "exact_draws",
)


# -- rendering -------------------------------------------------------------------


def _render_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return ";".join(f"{k}:{val}" for k, val in v.items())
    return v


def render_rows(rows) -> list[dict]:
    """Expand fractions into value + float columns and flatten histograms."""
    out = []
    for row in rows:
        flat = {}
        for k, v in row.items():
            flat[k] = _render_value(v)
            if isinstance(v, Fraction):
                flat[f"{k}_float"] = repr(float(v))
        out.append(flat)
    return out


def rows_to_csv(rows, fields=None) -> str:
    rendered = render_rows(rows)
    if fields is None:
        fields = list(rendered[0].keys()) if rendered else []
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    w.writeheader()
    for row in rendered:
        w.writerow(row)
    return buf.getvalue()


def rows_to_json(rows, fields=None) -> str:
    rendered = render_rows(rows)
    if fields is not None:
        rendered = [{k: row.get(k, "") for k in fields} for row in rendered]
    return json.dumps(rendered, indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class CensusRecord:
    """One experiment run: identity, parameters, rows, and wall time.

    The rows (and their rendering) depend only on (experiment, params,
    seed); runtime_s is observational and excluded from comparisons and
    from rendered bytes.
    """

    experiment: str
    params: dict
    seed: int
    rows: list
    runtime_s: float = field(compare=False, default=0.0)

    def to_csv(self, fields=None) -> str:
        return rows_to_csv(self.rows, fields)

    def to_json(self, fields=None) -> str:
        return rows_to_json(self.rows, fields)


def run_experiment(experiment: str, params: dict, seed: int, fn) -> CensusRecord:
    t0 = time.perf_counter()
    rows = fn()
    return CensusRecord(experiment, params, seed, rows, time.perf_counter() - t0)
