"""Seed parsing, pair certification, and the PairReport record.

A PairReport is the full certification of one constructed pair: exact
cospectrality via characteristic polynomials, an isomorphism verdict
backed by an exhaustive search (or marked undecided past the cap),
the structural hypothesis flags, PET/PST facts about the seed, and a
prediction of the isomorphism verdict where the hypotheses make one.
Reports are plain JSON-able data with no floats, so serialization is
byte-deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import jsonschema

from . import formats
from .constructions import (
    HypothesisReport,
    UnfoldingPair,
    build_reflexive_unfolding,
    build_semireflexive_unfolding,
    build_tripartite_unfolding,
    check_hypotheses,
)
from .equivalence import (
    ISO_CAP,
    PET_CAP,
    PermWitness,
    graph_isomorphic,
    is_pet,
    is_pst,
    quick_non_pet,
)
from .errors import CapExceededError
from .matrix import IntMatrix
from .spectral import char_poly

_MATRIX_SCHEMA = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "array",
        "minItems": 1,
        "items": {"type": "integer", "enum": [0, 1]},
    },
}

SEED_SCHEMAS: dict[int, dict] = {
    1: {
        "type": "object",
        "properties": {
            "V": _MATRIX_SCHEMA,
            "A": _MATRIX_SCHEMA,
            "B": _MATRIX_SCHEMA,
            "D": _MATRIX_SCHEMA,
        },
        "required": ["V", "A", "B", "D"],
        "additionalProperties": False,
    },
    2: {
        "type": "object",
        "properties": {
            "U": _MATRIX_SCHEMA,
            "X": _MATRIX_SCHEMA,
            "B": _MATRIX_SCHEMA,
        },
        "required": ["U", "X", "B"],
        "additionalProperties": False,
    },
    3: {
        "type": "object",
        "properties": {
            "pqr": {
                "type": "array",
                "items": {"type": "integer", "minimum": 1},
                "minItems": 3,
                "maxItems": 3,
            },
            "B": _MATRIX_SCHEMA,
        },
        "required": ["pqr", "B"],
        "additionalProperties": False,
    },
}

KIND_TAGS = {1: "I", 2: "II", 3: "III"}


class SeedSchemaError(ValueError):
    """The seed JSON does not match the construction's schema."""


def validate_seed(kind: int, data: Any) -> None:
    if kind not in SEED_SCHEMAS:
        raise SeedSchemaError(f"unknown construction kind {kind!r}")
    try:
        jsonschema.validate(data, SEED_SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        raise SeedSchemaError(exc.message) from exc
    # jsonschema cannot express rectangularity; IntMatrix will
    for key, value in data.items():
        if key == "pqr":
            continue
        try:
            IntMatrix.from_rows(value)
        except ValueError as exc:
            raise SeedSchemaError(f"matrix {key}: {exc}") from exc


def build_pair(kind: int, data: Any) -> UnfoldingPair:
    """Validate a seed document and run the matching builder."""
    validate_seed(kind, data)
    if kind == 1:
        return build_reflexive_unfolding(
            IntMatrix.from_rows(data["V"]),
            IntMatrix.from_rows(data["A"]),
            IntMatrix.from_rows(data["B"]),
            IntMatrix.from_rows(data["D"]),
        )
    if kind == 2:
        return build_semireflexive_unfolding(
            IntMatrix.from_rows(data["U"]),
            IntMatrix.from_rows(data["X"]),
            IntMatrix.from_rows(data["B"]),
        )
    p, q, r = data["pqr"]
    return build_tripartite_unfolding(p, q, r, IntMatrix.from_rows(data["B"]))


def seed_to_json(pair: UnfoldingPair) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key, value in pair.seed.items():
        if key == "pqr":
            out[key] = list(value)
        else:
            out[key] = value.tolist()
    return out


@dataclass
class PairReport:
    """Certification record for one constructed pair."""

    construction: str
    kind: int
    seed: dict[str, Any]
    vertices: dict[str, int]
    partitions: dict[str, list[int]]
    cospectral: bool
    charpoly: dict[str, Any]
    isomorphic: dict[str, Any]
    hypotheses: dict[str, Any]
    seed_checks: dict[str, Any]
    prediction: dict[str, Any]
    graph6: dict[str, str]

    def to_dict(self) -> dict[str, Any]:
        return {
            "construction": self.construction,
            "kind": self.kind,
            "seed": self.seed,
            "vertices": self.vertices,
            "partitions": self.partitions,
            "cospectral": self.cospectral,
            "charpoly": self.charpoly,
            "isomorphic": self.isomorphic,
            "hypotheses": self.hypotheses,
            "seed_checks": self.seed_checks,
            "prediction": self.prediction,
            "graph6": self.graph6,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _witness_json(w: PermWitness | None) -> dict | None:
    return w.to_dict() if w is not None else None


def _predict(
    hyp: HypothesisReport,
    pet: PermWitness | None,
    pet_decided: bool,
    pst: PermWitness | None,
    pst_decided: bool,
    seed_graphs_iso: bool | None,
) -> dict[str, Any]:
    """What the construction's theory says the isomorphism verdict must be."""
    con = hyp.construction
    if con == "I":
        if hyp.nonpet_implies_noniso and pet_decided and pet is None:
            return {"verdict": "no", "reason": "seed block is non-PET"}
        if hyp.nonpet_implies_noniso and seed_graphs_iso is False:
            return {"verdict": "no", "reason": "diagonal seed graphs are nonisomorphic"}
        return {"verdict": "open", "reason": "no applicable criterion"}
    if con == "II":
        if pet_decided and pet is not None:
            return {"verdict": "yes", "reason": "PET seed lifts to an isomorphism"}
        if hyp.nonpet_implies_noniso and pet_decided and pet is None:
            return {"verdict": "no", "reason": "seed block is non-PET"}
        return {"verdict": "open", "reason": "no applicable criterion"}
    # construction III
    if hyp.equal_ends:
        return {"verdict": "yes", "reason": "outer parts have equal size"}
    if pst_decided and pst is not None:
        return {"verdict": "yes", "reason": "PST seed lifts to an isomorphism"}
    if hyp.nonpet_implies_noniso and pet_decided and pet is None:
        return {"verdict": "no", "reason": "seed block is non-PET"}
    return {"verdict": "open", "reason": "no applicable criterion"}


def certify(
    pair: UnfoldingPair, iso_cap: int = ISO_CAP, pet_cap: int = PET_CAP
) -> PairReport:
    """Run the full certification pipeline on a constructed pair."""
    left, right = pair.left, pair.right
    cp_left = char_poly(left.adj)
    cp_right = char_poly(right.adj)
    cosp = left.n == right.n and cp_left == cp_right

    try:
        witness = graph_isomorphic(left, right, cap=iso_cap)
        verdict = "yes" if witness is not None else "no"
        exhaustive = True
    except CapExceededError:
        witness, verdict, exhaustive = None, "undecided", False

    hyp = check_hypotheses(pair)
    b: IntMatrix = pair.seed["B"]
    try:
        pet = is_pet(b, cap=pet_cap)
        pet_decided = True
    except CapExceededError:
        pet, pet_decided = None, False
    try:
        pst = is_pst(b, cap=pet_cap)
        pst_decided = True
    except CapExceededError:
        pst, pst_decided = None, False

    seed_graphs_iso: bool | None = None
    if pair.construction == "I":
        from .constructions import Graph

        try:
            found = graph_isomorphic(
                Graph(pair.seed["A"]), Graph(pair.seed["D"]), cap=iso_cap
            )
            seed_graphs_iso = found is not None
        except CapExceededError:
            seed_graphs_iso = None

    prediction = _predict(hyp, pet, pet_decided, pst, pst_decided, seed_graphs_iso)

    return PairReport(
        construction=pair.construction,
        kind={"I": 1, "II": 2, "III": 3}[pair.construction],
        seed=seed_to_json(pair),
        vertices={"left": left.n, "right": right.n},
        partitions={
            "left": list(left.partition or ()),
            "right": list(right.partition or ()),
        },
        cospectral=cosp,
        charpoly={
            "left": list(cp_left.coeffs),
            "right": list(cp_right.coeffs),
            "left_digest": cp_left.digest(),
            "right_digest": cp_right.digest(),
        },
        isomorphic={
            "verdict": verdict,
            "exhaustive": exhaustive,
            "witness": _witness_json(witness),
        },
        hypotheses=hyp.to_dict(),
        seed_checks={
            "quick_non_pet": quick_non_pet(b),
            "pet": (pet is not None) if pet_decided else None,
            "pet_witness": _witness_json(pet),
            "pst": (pst is not None) if pst_decided else None,
            "pst_witness": _witness_json(pst),
            "seed_graphs_isomorphic": seed_graphs_iso,
        },
        prediction=prediction,
        graph6={
            "left": formats.graph6(left.adj),
            "right": formats.graph6(right.adj),
        },
    )


def certify_seed(kind: int, data: Any, iso_cap: int = ISO_CAP) -> PairReport:
    """Build from a seed document and certify; the construct pipeline."""
    return certify(build_pair(kind, data), iso_cap=iso_cap)
