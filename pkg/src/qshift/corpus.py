"""Loader and validator for the shipped identity catalog.

The catalog at data/catalog.json is a single JSON document: a manifest
header (total entry count, per-modulus counts, per-modulus class counts,
the orientation convention for shiftless entries) and an array of
entries.  Each entry carries a partition identity, the route by which it
is established (direct, iteration, quintuple, or special), and enough
metadata to replay that route mechanically:

    direct / quintuple   four2 parameters whose symbolic reduction must
                         reproduce the identity exactly
    iteration            auxiliary relation instantiations (each a list
                         of theta monomials summing to zero) used by the
                         printed proof of the theorem's representative
                         item; companion items carry an empty list
    special              neither of the above; the notes point at the
                         dedicated check (rogers_ramanujan_check or
                         verify_theorem_72_2)

load_corpus is strict: structural problems raise ParseError,
SchemaViolation, or DuplicateLabel rather than producing half-loaded
entries.  validate_corpus replays every entry numerically and returns a
report instead of raising, so a single bad entry is visible alongside
the rest.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .jacobi import (
    FourParams,
    derive_identity,
    four2_terms,
    four_instance,
    four_instance_signed,
    quintuple_instance,
    reduce_term,
    verify_zero_combination,
)
from .partitions import (
    SHIFTED,
    SHIFTLESS,
    PartitionIdentity,
    verify_identity,
)
from .theta import (
    BRACKET,
    PAREN,
    Atom,
    ThetaMonomial,
    make_monomial,
    monomial_neg,
)

AUX_ORDER = 400
DEFAULT_VALIDATE_ORDER = 500

PROOF_KINDS = ("direct", "iteration", "quintuple", "special")
AUX_KINDS = ("four", "four_signed", "four2", "qp", "bracket")

_KIND_NAMES = {"shifted": SHIFTED, "shiftless": SHIFTLESS}
_ATOM_KINDS = {"b": BRACKET, "p": PAREN}
_ATOM_LETTERS = {BRACKET: "b", PAREN: "p"}


class ParseError(Exception):
    """The file is missing, not JSON, or structurally malformed."""


class SchemaViolation(Exception):
    """An entry is well-formed JSON but semantically invalid."""


class DuplicateLabel(Exception):
    """Two entries share a label."""


# ----------------------------------------------------------------------
# domain types
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AuxStep:
    """One auxiliary relation used inside an iteration proof.

    kind names the generating relation; params are its raw arguments
    (None for a literal bracket identity); terms are theta monomials
    whose series sum to zero.
    """

    kind: str
    params: tuple | None
    n: int
    terms: tuple[ThetaMonomial, ...]


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    identity: PartitionIdentity
    proof: str
    params: FourParams | None
    aux_steps: tuple[AuxStep, ...] | None
    notes: str


@dataclass(frozen=True)
class EntryResult:
    label: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class CorpusReport:
    """Per-entry validation outcomes; ok iff every entry passed."""

    order: int
    results: tuple[EntryResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> tuple[EntryResult, ...]:
        return tuple(r for r in self.results if not r.ok)


# ----------------------------------------------------------------------
# JSON <-> domain conversion
# ----------------------------------------------------------------------

def _mono_from_json(d: dict, where: str) -> ThetaMonomial:
    try:
        sign, qexp = d["sign"], d["qexp"]
        num = [Atom(r, m, _ATOM_KINDS[k]) for r, m, k in d["num"]]
        den = [Atom(r, m, _ATOM_KINDS[k]) for r, m, k in d["den"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{where}: malformed monomial ({exc})") from exc
    if sign not in (1, -1):
        raise SchemaViolation(f"{where}: monomial sign must be +1 or -1")
    return make_monomial(sign, qexp, num, den)


def _mono_to_json(m: ThetaMonomial) -> dict:
    def atoms(ts):
        return [[a.r, a.m, _ATOM_LETTERS[a.kind]] for a in ts]
    return {"sign": m.sign, "qexp": m.qexp,
            "num": atoms(m.num), "den": atoms(m.den)}


def _aux_from_json(d: dict, where: str) -> AuxStep:
    for field in ("kind", "params", "n", "terms"):
        if field not in d:
            raise ParseError(f"{where}: aux step missing field {field!r}")
    kind = d["kind"]
    if kind not in AUX_KINDS:
        raise SchemaViolation(f"{where}: unknown aux kind {kind!r}")
    raw = d["params"]
    if kind == "bracket":
        params = None
    elif kind == "four_signed":
        params = tuple((s, e) for s, e in raw)
    else:
        params = tuple(raw)
    terms = tuple(_mono_from_json(t, where) for t in d["terms"])
    if len(terms) < 2:
        raise SchemaViolation(f"{where}: aux step needs at least two terms")
    return AuxStep(kind, params, d["n"], terms)


def _aux_to_json(step: AuxStep) -> dict:
    if step.kind == "bracket":
        params = None
    elif step.kind == "four_signed":
        params = [list(p) for p in step.params]
    else:
        params = list(step.params)
    return {"kind": step.kind, "params": params, "n": step.n,
            "terms": [_mono_to_json(t) for t in step.terms]}


ENTRY_FIELDS = ("label", "modulus", "kind", "shift", "S", "T",
                "proof", "params", "n", "aux_steps", "notes")


def entry_from_record(rec: dict, where: str = "entry") -> CorpusEntry:
    """Build a CorpusEntry from one decoded JSON record."""
    if not isinstance(rec, dict):
        raise ParseError(f"{where}: entry is not an object")
    for field in ENTRY_FIELDS:
        if field not in rec:
            raise ParseError(f"{where}: missing field {field!r}")
    label = rec["label"]
    where = f"entry {label!r}"
    kind = _KIND_NAMES.get(rec["kind"])
    if kind is None:
        raise SchemaViolation(f"{where}: kind must be shifted or shiftless")
    try:
        identity = PartitionIdentity(rec["modulus"], frozenset(rec["S"]),
                                     frozenset(rec["T"]), kind, rec["shift"])
    except (ValueError, TypeError) as exc:
        raise SchemaViolation(f"{where}: {exc}") from exc
    proof = rec["proof"]
    if proof not in PROOF_KINDS:
        raise SchemaViolation(f"{where}: unknown proof kind {proof!r}")
    wants_params = proof in ("direct", "quintuple")
    if wants_params != (rec["params"] is not None):
        raise SchemaViolation(
            f"{where}: params must be present exactly for "
            f"direct/quintuple proofs")
    params = None
    if wants_params:
        if rec["n"] is None or 2 * rec["n"] != rec["modulus"]:
            raise SchemaViolation(f"{where}: base n must be modulus/2")
        try:
            params = FourParams(*rec["params"], n=rec["n"])
        except (ValueError, TypeError) as exc:
            raise SchemaViolation(f"{where}: bad params ({exc})") from exc
    if (proof == "iteration") != (rec["aux_steps"] is not None):
        raise SchemaViolation(
            f"{where}: aux_steps must be present exactly for "
            f"iteration proofs")
    aux_steps = None
    if rec["aux_steps"] is not None:
        aux_steps = tuple(_aux_from_json(s, where) for s in rec["aux_steps"])
    return CorpusEntry(label, identity, proof, params, aux_steps,
                       rec["notes"])


def entry_to_record(entry: CorpusEntry) -> dict:
    """Serialize a CorpusEntry back to the JSON record schema."""
    ident = entry.identity
    return {
        "label": entry.label,
        "modulus": ident.M,
        "kind": "shifted" if ident.kind == SHIFTED else "shiftless",
        "shift": ident.a,
        "S": sorted(ident.S),
        "T": sorted(ident.T),
        "proof": entry.proof,
        "params": list(entry.params.exponents()) if entry.params else None,
        "n": entry.params.n if entry.params else None,
        "aux_steps": (None if entry.aux_steps is None
                      else [_aux_to_json(s) for s in entry.aux_steps]),
        "notes": entry.notes,
    }


# ----------------------------------------------------------------------
# loading
# ----------------------------------------------------------------------

def _default_path() -> Path:
    return Path(str(resources.files("qshift").joinpath("data/catalog.json")))


def load_manifest(path: str | Path | None = None) -> dict:
    """The manifest header of the catalog document."""
    doc = _read_document(path)
    return doc["manifest"]


def _read_document(path: str | Path | None) -> dict:
    p = Path(path) if path is not None else _default_path()
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p} line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or "entries" not in doc \
            or "manifest" not in doc:
        raise ParseError(f"{p}: expected an object with manifest and entries")
    return doc


def load_corpus(path: str | Path | None = None) -> list[CorpusEntry]:
    """Load and structurally validate the catalog.

    The default path is the catalog shipped inside the package.  The
    entry list must agree with the manifest's total and per-modulus
    counts; labels must be unique.
    """
    doc = _read_document(path)
    entries = []
    seen = set()
    for idx, rec in enumerate(doc["entries"]):
        entry = entry_from_record(rec, where=f"entry #{idx}")
        if entry.label in seen:
            raise DuplicateLabel(entry.label)
        seen.add(entry.label)
        entries.append(entry)
    manifest = doc["manifest"]
    if manifest.get("total") != len(entries):
        raise ParseError(
            f"manifest total {manifest.get('total')} != {len(entries)}")
    per_mod: dict[int, int] = {}
    for e in entries:
        per_mod[e.identity.M] = per_mod.get(e.identity.M, 0) + 1
    declared = {int(k): v for k, v in manifest.get("per_modulus", {}).items()}
    if declared != per_mod:
        raise ParseError("manifest per-modulus counts disagree with entries")
    return entries


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------

def replay_aux_terms(step: AuxStep) -> tuple[ThetaMonomial, ...] | None:
    """Regenerate an aux step's terms from its parameters.

    Returns None for literal bracket steps, which have no generator.
    """
    if step.kind == "four":
        L1, L2, R = four_instance(FourParams(*step.params, n=step.n))
        return (L1, L2, monomial_neg(R))
    if step.kind == "four_signed":
        L1, L2, R = four_instance_signed(step.params, step.n)
        return (L1, L2, monomial_neg(R))
    if step.kind == "four2":
        t1, t2 = four2_terms(FourParams(*step.params, n=step.n))
        return (reduce_term(t1), reduce_term(t2),
                ThetaMonomial(-1, 0, (), ()))
    if step.kind == "qp":
        ex, base = step.params
        L1, L2, R = quintuple_instance(ex, base).qp
        return (L1, monomial_neg(L2), monomial_neg(R))
    return None


def _check_entry(entry: CorpusEntry, order: int) -> EntryResult:
    problems = []
    rep = verify_identity(entry.identity, order)
    if not rep.ok:
        problems.append(f"identity fails at order {order}: first "
                        f"mismatch at exponent {rep.first_fail}, "
                        f"coefficients {rep.witness}")
    if entry.proof in ("direct", "quintuple"):
        d = derive_identity(entry.params)
        if not d.ok:
            problems.append(f"derivation fails: {d.reason}")
        elif d.identity != entry.identity:
            problems.append("derivation yields a different identity")
    if entry.aux_steps:
        for k, step in enumerate(entry.aux_steps):
            expected = replay_aux_terms(step)
            if expected is not None and expected != step.terms:
                problems.append(f"aux step {k} does not match its "
                                f"generator output")
            aux_rep = verify_zero_combination(step.terms, AUX_ORDER)
            if not aux_rep.ok:
                problems.append(f"aux step {k} fails at order {AUX_ORDER}: "
                                f"witness {aux_rep.witness}")
    return EntryResult(entry.label, not problems, "; ".join(problems))


def validate_corpus(entries: Iterable[CorpusEntry],
                    order: int = DEFAULT_VALIDATE_ORDER) -> CorpusReport:
    """Replay every entry: identity verification at the given order,
    exact re-derivation for direct/quintuple proofs, and aux-step checks
    (generator match plus zero-sum at order 400) for iteration proofs.
    """
    results = tuple(_check_entry(e, order) for e in entries)
    return CorpusReport(order, results)


def entries_for_modulus(entries: Sequence[CorpusEntry],
                        modulus: int) -> list[CorpusEntry]:
    return [e for e in entries if e.identity.M == modulus]
