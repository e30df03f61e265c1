"""The unit-group action on partition identities and classification.

A unit alpha of Z/MZ acts on an identity by multiplying every residue
of S and T by alpha mod M and folding the result back into the range
1..M/2 (r and M - r index the same residue pair).  The image relation
is rediscovered empirically: the shift and kind of the mapped identity
are inferred from the partition counts and the result is verified
before it is returned, so a failure of the underlying theory would be
reported rather than silently accepted.

Since alpha and M - alpha induce the same folded action, orbits are
enumerated over alpha in 1..M/2 coprime to M.  Classification groups
identities that lie in a common orbit; identities are treated as
ordered pairs (S, T) throughout, with the orientation fixed by the
relation itself (shifted: S is the unshifted side; shiftless: S is the
side with the larger count at n = a).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .partitions import PartitionIdentity, infer_relation, verify_identity

DEFAULT_ORDER = 300


class NotAnIdentity(Exception):
    """The image of an identity under a unit action failed to verify."""


@dataclass(frozen=True)
class UnitAction:
    """Multiplication by alpha on residues mod M."""

    alpha: int
    M: int

    def __post_init__(self):
        if not 1 <= self.alpha < self.M:
            raise ValueError("alpha must lie in 1..M-1")
        if gcd(self.alpha, self.M) != 1:
            raise ValueError(f"alpha={self.alpha} is not a unit mod {self.M}")

    def fold(self, r: int) -> int:
        r = (self.alpha * r) % self.M
        return min(r, self.M - r)

    def apply_set(self, residues: Iterable[int]) -> frozenset[int]:
        return frozenset(self.fold(r) for r in residues)


def identity_key(ident: PartitionIdentity):
    """Deterministic sort key for identities of a common modulus."""
    return (tuple(sorted(ident.S)), tuple(sorted(ident.T)),
            ident.kind, ident.a)


def act(u: UnitAction, ident: PartitionIdentity,
        n: int = DEFAULT_ORDER) -> PartitionIdentity:
    """Map an identity through a unit action and verify the image.

    The folded pair is tried in both orientations, since multiplication
    can exchange which side carries the shift; at most one orientation
    can satisfy a relation, so this is normalization rather than choice.
    """
    if u.M != ident.M:
        raise ValueError("action modulus does not match identity modulus")
    s_img, t_img = u.apply_set(ident.S), u.apply_set(ident.T)
    for S, T in ((s_img, t_img), (t_img, s_img)):
        found = infer_relation(S, T, ident.M, n)
        if found is None:
            continue
        kind, a = found
        image = PartitionIdentity(ident.M, S, T, kind, a)
        if not verify_identity(image, n).ok:
            break
        return image
    raise NotAnIdentity(
        f"alpha={u.alpha} maps the identity to a non-relation (M={ident.M})")


def orbit(ident: PartitionIdentity,
          n: int = DEFAULT_ORDER) -> set[PartitionIdentity]:
    """All images of the identity under U(M), deduplicated."""
    out = set()
    for alpha in range(1, ident.M // 2 + 1):
        if gcd(alpha, ident.M) == 1:
            out.add(act(UnitAction(alpha, ident.M), ident, n))
    return out


def classify(idents: Sequence[PartitionIdentity],
             n: int = DEFAULT_ORDER) -> list[list[PartitionIdentity]]:
    """Partition identities of one modulus into U(M)-equivalence classes.

    Exact duplicates are merged.  Classes are ordered by their
    lexicographically least (S, T) member and members are sorted the
    same way, so the output is independent of input order.
    """
    if not idents:
        return []
    moduli = {i.M for i in idents}
    if len(moduli) != 1:
        raise ValueError(f"identities span several moduli: {sorted(moduli)}")
    remaining = sorted(set(idents), key=identity_key)
    classes = []
    while remaining:
        members = orbit(remaining[0], n)
        classes.append([i for i in remaining if i in members])
        remaining = [i for i in remaining if i not in members]
    classes.sort(key=lambda cls: identity_key(cls[0]))
    return classes
