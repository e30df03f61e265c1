"""Group every catalog modulus into unit-action equivalence classes.

Two identities at modulus M are equivalent when multiplication by a
unit alpha in U(M), followed by folding into 1..M/2, maps one onto the
other.  The script prints the class decomposition for each modulus and
cross-checks the totals against the counts declared in the catalog
manifest.

Usage:
    python3 scripts/classify_catalog.py [--order 300] [--modulus M]
"""

import argparse
import sys

from qshift.corpus import entries_for_modulus, load_corpus, load_manifest
from qshift.equivalence import classify


def run(order: int, only_modulus: int | None) -> int:
    entries = load_corpus()
    declared = {int(k): v for k, v in
                load_manifest()["classes_per_modulus"].items()}
    moduli = sorted({e.identity.M for e in entries})
    if only_modulus is not None:
        moduli = [m for m in moduli if m == only_modulus]
        if not moduli:
            print(f"no catalog entries for modulus {only_modulus}",
                  file=sys.stderr)
            return 2

    mismatches = 0
    for modulus in moduli:
        block = entries_for_modulus(entries, modulus)
        labels_of = {}
        for e in block:
            labels_of.setdefault(e.identity, []).append(e.label)
        classes = classify([e.identity for e in block], n=order)
        mark = ""
        if declared.get(modulus) != len(classes):
            mark = f"  (declared {declared.get(modulus)})"
            mismatches += 1
        print(f"modulus {modulus}: {len(classes)} classes, "
              f"{len(block)} entries{mark}")
        for k, cls in enumerate(classes, start=1):
            members = sorted(lab for ident in cls
                             for lab in labels_of[ident])
            print(f"  class {k}: {', '.join(members)}")
    return 0 if mismatches == 0 else 1


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--order", type=int, default=300,
                        help="verification order for unit-action images")
    parser.add_argument("--modulus", type=int, default=None,
                        help="restrict to one modulus")
    args = parser.parse_args()
    return run(args.order, args.modulus)


if __name__ == "__main__":
    sys.exit(main())
