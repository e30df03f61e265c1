"""Replay the shipped identity catalog and print a per-modulus table.

Runs the full validation (identity verification at the requested order,
exact re-derivation for parameterized entries, and aux-step replay for
iteration entries) and summarizes results per modulus.  Exits nonzero
if any entry fails.

Usage:
    python3 scripts/verify_catalog.py [--order 1000] [--corpus PATH]
"""

import argparse
import sys
import time
from collections import defaultdict
from dataclasses import dataclass

from qshift.corpus import load_corpus, validate_corpus


@dataclass(frozen=True)
class Config:
    order: int = 1000
    corpus: str | None = None


def run(cfg: Config) -> int:
    entries = load_corpus(cfg.corpus)
    started = time.perf_counter()
    report = validate_corpus(entries, order=cfg.order)
    elapsed = time.perf_counter() - started

    by_modulus = defaultdict(lambda: [0, 0])
    for entry, result in zip(entries, report.results):
        bucket = by_modulus[entry.identity.M]
        bucket[result.ok] += 1

    print(f"{'modulus':>8} {'entries':>8} {'pass':>6} {'fail':>6}")
    for modulus in sorted(by_modulus):
        n_fail, n_pass = by_modulus[modulus]
        print(f"{modulus:>8} {n_pass + n_fail:>8} {n_pass:>6} {n_fail:>6}")
    total = len(report.results)
    failures = report.failures
    print(f"\n{total} entries at order {cfg.order}: "
          f"{total - len(failures)} pass, {len(failures)} fail "
          f"({elapsed:.1f}s)")
    for r in failures:
        print(f"  {r.label}: {r.detail}")
    return 0 if report.ok else 1


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--order", type=int, default=Config.order)
    parser.add_argument("--corpus", default=None,
                        help="catalog path (default: shipped)")
    args = parser.parse_args()
    return run(Config(order=args.order, corpus=args.corpus))


if __name__ == "__main__":
    sys.exit(main())
