"""Scan the parameter space at chosen bases and compare with the catalog.

For each base n the scan enumerates exponent tuples (a, b, c, x, y) up
to the bound (default n - 1), derives the surviving candidates, and
deduplicates the resulting identities.  The catalog entries for the
corresponding moduli 2n are then matched against the findings, so the
output shows exactly which shipped identities the scan rediscovers and
whether it found anything new.

The default bases 16, 20, 23 rediscover the complete catalog at moduli
32, 40, 46 in a few seconds.  Base 42 (modulus 84) scans tens of
millions of tuples and comes back empty in under a minute:

    python3 scripts/search_bases.py --bases 42
"""

import argparse
import json
import sys
import time

from qshift.corpus import load_corpus
from qshift.search import SearchConfig, run_search


def run(bases, bound, workers, out_path) -> int:
    cfg = SearchConfig(n_values=tuple(bases), exponent_bound=bound,
                       workers=workers)
    started = time.perf_counter()
    res = run_search(cfg)
    elapsed = time.perf_counter() - started

    print(f"scanned {res.scanned} admissible tuples in {elapsed:.1f}s")
    for reason in sorted(res.histogram):
        print(f"  {reason}: {res.histogram[reason]}")

    found = {ident: params for params, ident in res.found}
    moduli = {2 * n for n in cfg.n_values}
    catalog = {e.identity: e.label for e in load_corpus()
               if e.identity.M in moduli}

    print(f"\nfound {len(found)} identities; catalog holds "
          f"{len(catalog)} at moduli {sorted(moduli)}")
    for ident in sorted(found, key=lambda i: i.key()):
        params = found[ident]
        label = catalog.get(ident, "NEW")
        print(f"  {label}: params={params.exponents()} n={params.n}")
    missed = [lab for ident, lab in catalog.items() if ident not in found]
    for lab in sorted(missed):
        print(f"  missed: {lab}")

    if out_path:
        records = [{"modulus": i.M, "kind": i.kind, "shift": i.a,
                    "S": sorted(i.S), "T": sorted(i.T),
                    "provenance": {"source": "search",
                                   "params": list(p.exponents()),
                                   "n": p.n}}
                   for i, p in found.items()]
        with open(out_path, "w") as fh:
            json.dump({"bases": list(cfg.n_values), "scanned": res.scanned,
                       "elapsed_s": round(elapsed, 2), "found": records},
                      fh, indent=1)
        print(f"\nwrote {out_path}")
    return 0 if not missed else 1


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--bases", default="16,20,23",
                        help="comma-separated bases n (modulus is 2n)")
    parser.add_argument("--bound", type=int, default=None,
                        help="exponent bound (default: n - 1 per base)")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", default=None,
                        help="write findings to this JSON file")
    args = parser.parse_args()
    bases = [int(b) for b in args.bases.split(",") if b]
    return run(bases, args.bound, args.workers, args.out)


if __name__ == "__main__":
    sys.exit(main())
