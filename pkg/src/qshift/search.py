"""Pruned, parallel enumeration of four-parameter instantiations.

The search space for base n is every tuple (a, b, c, x, y) in
[1, bound]^5 (bound defaults to n - 1), optionally restricted to
gcd(a,b,c,x,y) = 1 and to x <= y (the relation is symmetric in x, y).
For each tuple the two base-2n quotient terms either hit a vanishing
bracket (degenerate), fail to cancel their numerators, or reduce to a
candidate identity.

Degeneracy and numerator cancellation depend only on the folded
residues of twelve linear expressions in the parameters, so both are
decided for whole (c, x, y) blocks at once with numpy before any exact
arithmetic runs: an atom [e : 2n] vanishes iff e = 0 mod n, and a
numerator atom cancels iff its folded residue is available in the
denominator multiset.  Only tuples surviving this exact prefilter reach
the symbolic reduction, and every emitted identity is re-verified
against partition counts before it is reported.

Results are kept primitive: an identity whose residues all share a
factor d with M is a rescaled copy of a smaller-modulus identity (for
example every surviving base-42 tuple yields a doubled modulus-42
identity), so such results are counted as "imprimitive" and not
emitted.  Tuples whose twelve expressions all share a factor with n are
dropped by the same rule before any exact work.

Work is split into (n, a, b) units processed independently (optionally
by a process pool); the merged result is deterministic and sorted.
"""

from __future__ import annotations

import multiprocessing
from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Iterator, Mapping, Sequence

import numpy as np

from .equivalence import identity_key
from .jacobi import FourParams, derive_identity
from .partitions import PartitionIdentity, verify_identity
from .theta import DegenerateZero

VERIFY_ORDER = 200
DEGENERATE = "degenerate"
IMPRIMITIVE = "imprimitive"
VERIFICATION_FAILED = "verification-failed"


@dataclass(frozen=True)
class SearchConfig:
    """Search space description.

    exponent_bound None means n - 1 for each base n.  workers is the
    number of worker processes; 1 runs everything in-process.
    """

    n_values: tuple[int, ...]
    exponent_bound: int | None = None
    require_gcd1: bool = True
    symmetry_reduction: bool = True
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "n_values",
                           tuple(sorted(set(self.n_values))))
        if not self.n_values:
            raise ValueError("need at least one base")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        for n in self.n_values:
            if self.bound_for(n) < 5:
                raise ValueError(
                    f"exponent bound {self.bound_for(n)} for base {n} "
                    "cannot admit five distinct exponents")

    def bound_for(self, n: int) -> int:
        return self.exponent_bound if self.exponent_bound is not None else n - 1


@dataclass(frozen=True)
class SearchResult:
    found: tuple[tuple[FourParams, PartitionIdentity], ...]
    scanned: int
    histogram: Mapping[str, int]


def enumerate_params(cfg: SearchConfig) -> Iterator[FourParams]:
    """All tuples of the search space in lexicographic (n,a,b,c,x,y) order."""
    for n in cfg.n_values:
        bound = cfg.bound_for(n)
        rng = range(1, bound + 1)
        for a in rng:
            for b in rng:
                for c in rng:
                    for x in rng:
                        for y in rng:
                            if cfg.symmetry_reduction and x > y:
                                continue
                            if cfg.require_gcd1 and gcd(gcd(gcd(a, b), gcd(c, x)), y) != 1:
                                continue
                            yield FourParams(a, b, c, x, y, n)


# ----------------------------------------------------------------------
# one (n, a, b) work unit
# ----------------------------------------------------------------------

def _fold(e, m):
    r = e % m
    return np.minimum(r, m - r)


def _cancels(num, den):
    """Rows where the 4-row numerator multiset embeds into the 16-row
    denominator multiset (columns are candidate tuples)."""
    in_den = (num[:, None, :] == den[None, :, :]).sum(axis=1)
    in_num = (num[:, None, :] == num[None, :, :]).sum(axis=1)
    return (in_den >= in_num).all(axis=0)


def _scan_unit(args):
    n, a, b, bound, require_gcd1, symmetry_reduction = args
    if symmetry_reduction:
        xs, ys = np.triu_indices(bound)
        xs, ys = xs + 1, ys + 1
    else:
        xs, ys = np.meshgrid(np.arange(1, bound + 1), np.arange(1, bound + 1))
        xs, ys = xs.ravel(), ys.ravel()
    npairs = len(xs)
    C = np.repeat(np.arange(1, bound + 1), npairs)
    X = np.tile(xs, bound)
    Y = np.tile(ys, bound)
    if require_gcd1:
        keep = np.gcd(np.gcd(C, X), np.gcd(Y, gcd(a, b))) == 1
        C, X, Y = C[keep], X[keep], Y[keep]
    scanned = len(C)
    hist = Counter()
    found = []
    if scanned == 0:
        return scanned, hist, found

    t1_core = np.stack([b - C, a - X, a - Y, X + Y - b - C])
    t2_core = np.stack([a - C, b - X, b - Y, X + Y - a - C])
    shared = np.stack([np.full_like(C, a - b), C - X, C - Y, X + Y - a - b])
    all12 = np.concatenate([t1_core, t2_core, shared])

    m = 2 * n
    cancel_ok = np.ones(scanned, dtype=bool)
    for core in (t1_core, t2_core):
        den = np.concatenate([core, shared])
        den16 = np.concatenate([_fold(den, m), _fold(den + n, m)])
        cancel_ok &= _cancels(_fold(2 * core, m), den16)
    nondegen = ~(all12 % n == 0).any(axis=0)
    # if every linear expression shares a factor with n, every residue of
    # the would-be identity does too, so it rescales to a smaller modulus
    imprim = np.gcd(np.gcd.reduce(np.abs(all12)), n) > 1
    hist[DEGENERATE] = scanned - int(nondegen.sum())
    hist[IMPRIMITIVE] = int((nondegen & imprim).sum())
    hist["incomplete-cancellation"] = int((nondegen & ~imprim & ~cancel_ok).sum())

    for idx in np.flatnonzero(nondegen & ~imprim & cancel_ok):
        params = FourParams(a, b, int(C[idx]), int(X[idx]), int(Y[idx]), n)
        try:
            der = derive_identity(params)
        except DegenerateZero:
            hist[DEGENERATE] += 1
            continue
        if not der.ok:
            hist[der.reason] += 1
            continue
        ident = der.identity
        if gcd(ident.M, *ident.S, *ident.T) > 1:
            hist[IMPRIMITIVE] += 1
        else:
            hist["ok"] += 1
            if not found or found[-1][1] != ident:
                found.append((params, ident))
    return scanned, hist, found


def _units(cfg: SearchConfig):
    for n in cfg.n_values:
        bound = cfg.bound_for(n)
        for a in range(1, bound + 1):
            for b in range(1, bound + 1):
                yield (n, a, b, bound, cfg.require_gcd1,
                       cfg.symmetry_reduction)


def run_search(cfg: SearchConfig) -> SearchResult:
    """Scan the whole space, dedupe by identity, and sort the results.

    When one identity arises from several parameter tuples the
    lexicographically least tuple is kept.  Each deduplicated identity
    is verified against partition counts at order 200 before it is
    emitted; the emitted list is sorted by (M, S, T).  The histogram
    tallies the outcome of every scanned tuple ("ok" counts tuples whose
    reduction succeeded), plus one "verification-failed" entry per
    deduplicated identity that failed the final check.
    """
    units = list(_units(cfg))
    scanned = 0
    hist = Counter()
    raw = []
    if cfg.workers == 1:
        results = map(_scan_unit, units)
    else:
        pool = multiprocessing.Pool(min(cfg.workers, len(units)))
        results = pool.imap(_scan_unit, units, chunksize=4)
    for unit_scanned, unit_hist, unit_found in results:
        scanned += unit_scanned
        hist.update(unit_hist)
        raw.extend(unit_found)
    if cfg.workers != 1:
        pool.close()
        pool.join()
    seen = {}
    for params, ident in raw:
        seen.setdefault(ident, params)
    found = []
    for ident, params in seen.items():
        if verify_identity(ident, VERIFY_ORDER).ok:
            found.append((params, ident))
        else:
            hist[VERIFICATION_FAILED] += 1
    found.sort(key=lambda pair: (pair[1].M,) + identity_key(pair[1]))
    return SearchResult(tuple(found), scanned, dict(hist))
