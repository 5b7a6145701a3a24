"""Command-line front end.

Subcommands:
  construct  build one pair from a seed file and certify it
  check      PET/PST verdict for a matrix file
  search     sweep all small binary seed blocks under a template
  export     write DOT / graph6 files for a stored pair report

Exit codes: 0 ok, 2 malformed input, 3 construction precondition
violated, 4 search cap exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any

import jsonschema

from . import formats, report
from .equivalence import is_pet, is_pst
from .errors import CapExceededError, PreconditionError
from .matrix import IntMatrix
from .report import SeedSchemaError

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_PRECONDITION = 3
EXIT_CAP = 4

MAX_B_CAP = 4
JOBS_ENV = "COSPEC_JOBS"

_ANY_MATRIX_SCHEMA = {
    "type": "array",
    "minItems": 1,
    "items": {"type": "array", "minItems": 1, "items": {"type": "integer"}},
}

TEMPLATE_SCHEMAS: dict[int, dict] = {
    1: {
        "type": "object",
        "properties": {
            "V": report.SEED_SCHEMAS[1]["properties"]["V"],
            "A": report.SEED_SCHEMAS[1]["properties"]["A"],
            "D": report.SEED_SCHEMAS[1]["properties"]["D"],
            "b_symmetric_only": {"type": "boolean"},
        },
        "required": ["V", "A", "D"],
        "additionalProperties": False,
    },
    2: {
        "type": "object",
        "properties": {
            "U": report.SEED_SCHEMAS[2]["properties"]["U"],
            "X": report.SEED_SCHEMAS[2]["properties"]["X"],
            "b_symmetric_only": {"type": "boolean"},
        },
        "required": ["U", "X"],
        "additionalProperties": False,
    },
    3: {
        "type": "object",
        "properties": {
            "pqr": report.SEED_SCHEMAS[3]["properties"]["pqr"],
            "b_symmetric_only": {"type": "boolean"},
        },
        "required": ["pqr"],
        "additionalProperties": False,
    },
}


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SeedSchemaError(f"cannot read JSON from {path}: {exc}") from exc


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _export_pair_files(
    pair, stem: str, fmt: str, out_dir: Path
) -> list[Path]:
    written = []
    if fmt == "dot":
        for side, graph in (("left", pair.left), ("right", pair.right)):
            path = out_dir / f"{stem}_{side}.dot"
            _write_text(path, formats.dot(graph, name=side))
            written.append(path)
    else:
        path = out_dir / f"{stem}.g6"
        lines = formats.graph6(pair.left.adj) + "\n" + formats.graph6(pair.right.adj) + "\n"
        _write_text(path, lines)
        written.append(path)
    return written


def cmd_construct(args: argparse.Namespace) -> int:
    seed = _load_json(args.seed)
    pair = report.build_pair(args.kind, seed)
    rep = report.certify(pair)
    out = Path(args.out)
    _write_text(out, rep.to_json())
    stem = out.stem
    if args.dot:
        _export_pair_files(pair, stem, "dot", Path(args.dot))
    if args.g6:
        _export_pair_files(pair, stem, "graph6", Path(args.g6))
    print(
        f"{pair.construction}: {pair.left.n}+{pair.right.n} vertices, "
        f"cospectral={rep.cospectral}, isomorphic={rep.isomorphic['verdict']}"
    )
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    data = _load_json(args.matrix)
    try:
        jsonschema.validate(data, _ANY_MATRIX_SCHEMA)
        matrix = IntMatrix.from_rows(data)
    except (jsonschema.ValidationError, ValueError) as exc:
        raise SeedSchemaError(f"matrix file: {exc}") from exc
    if args.what == "pet":
        witness = is_pet(matrix)
        verdict = {"pet": witness is not None}
    else:
        witness = is_pst(matrix)
        verdict = {"pst": witness is not None}
    verdict["witness"] = witness.to_dict() if witness else None
    print(json.dumps(verdict, indent=2, sort_keys=True))
    return EXIT_OK


def _canonical_flat(rows: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Representative of a square 0/1 matrix under simultaneous row/column
    permutation: the lexicographically greatest flattening."""
    n = len(rows)
    best: tuple[int, ...] | None = None
    for perm in itertools.permutations(range(n)):
        flat = tuple(rows[perm[i]][perm[j]] for i in range(n) for j in range(n))
        if best is None or flat > best:
            best = flat
    return best


def _candidate_blocks(kind: int, template: dict, max_b: int):
    """All binary seed blocks B for the sweep, deduplicated and in
    deterministic (shape, then flattened-entry) order."""
    symmetric_only = template.get("b_symmetric_only", False)
    shapes: list[tuple[int, int]]
    if kind == 1:
        p = len(template["A"])
        q = len(template["D"])
        if max(p, q) > max_b:
            raise CapExceededError(
                f"template requires a {p}x{q} block, beyond --max-b {max_b}"
            )
        shapes = [(p, q)]
    else:
        shapes = [(s, s) for s in range(1, max_b + 1)]
    for rows, cols in shapes:
        for bits in itertools.product((0, 1), repeat=rows * cols):
            grid = tuple(
                bits[i * cols : (i + 1) * cols] for i in range(rows)
            )
            if symmetric_only and any(
                grid[i][j] != grid[j][i] for i in range(rows) for j in range(cols)
            ):
                continue
            if rows == cols and _canonical_flat(grid) != bits:
                continue  # keep one representative per conjugation class
            yield grid


def _seed_for_block(kind: int, template: dict, grid) -> dict:
    b = [list(row) for row in grid]
    if kind == 1:
        return {"V": template["V"], "A": template["A"], "B": b, "D": template["D"]}
    if kind == 2:
        return {"U": template["U"], "X": template["X"], "B": b}
    return {"pqr": template["pqr"], "B": b}


def _search_eval(task: tuple[int, dict, tuple]) -> dict | None:
    """Certify one candidate block; keep only cospectral non-isomorphic pairs."""
    kind, template, grid = task
    rep = report.certify_seed(kind, _seed_for_block(kind, template, grid))
    if rep.cospectral and rep.isomorphic["verdict"] == "no":
        return rep.to_dict()
    return None


def _resolve_jobs(args: argparse.Namespace, config: dict) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise SeedSchemaError(f"{JOBS_ENV} must be an integer, got {env!r}")
    if "jobs" in config:
        return max(1, int(config["jobs"]))
    return 1


def cmd_search(args: argparse.Namespace) -> int:
    if args.max_b > MAX_B_CAP:
        raise CapExceededError(f"--max-b is capped at {MAX_B_CAP}")
    if args.max_b < 1:
        raise SeedSchemaError("--max-b must be at least 1")
    config = _load_json(args.config) if args.config else {}
    if not isinstance(config, dict):
        raise SeedSchemaError("config file must hold a JSON object")
    jobs = _resolve_jobs(args, config)
    template = _load_json(args.template)
    try:
        jsonschema.validate(template, TEMPLATE_SCHEMAS[args.kind])
    except jsonschema.ValidationError as exc:
        raise SeedSchemaError(f"template: {exc.message}") from exc
    for key, value in template.items():
        if key in ("pqr", "b_symmetric_only"):
            continue
        try:
            IntMatrix.from_rows(value)
        except ValueError as exc:
            raise SeedSchemaError(f"template matrix {key}: {exc}") from exc

    tasks = [
        (args.kind, template, grid)
        for grid in _candidate_blocks(args.kind, template, args.max_b)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_eval, tasks, chunksize=4))
    else:
        results = [_search_eval(t) for t in tasks]

    entries = [r for r in results if r is not None]
    entries.sort(
        key=lambda e: (
            len(e["seed"]["B"]),
            len(e["seed"]["B"][0]),
            tuple(x for row in e["seed"]["B"] for x in row),
        )
    )
    catalog = {
        "kind": args.kind,
        "max_b": args.max_b,
        "template": template,
        "candidates_checked": len(tasks),
        "entries": entries,
    }
    _write_text(Path(args.out), json.dumps(catalog, indent=2, sort_keys=True) + "\n")
    print(f"checked {len(tasks)} seed blocks, kept {len(entries)}")
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    data = _load_json(args.pair)
    if not isinstance(data, dict) or "kind" not in data or "seed" not in data:
        raise SeedSchemaError("pair file must be a construct report with kind and seed")
    pair = report.build_pair(int(data["kind"]), data["seed"])
    pair_path = Path(args.pair)
    out_dir = Path(args.out_dir) if args.out_dir else pair_path.parent
    written = _export_pair_files(pair, pair_path.stem, args.format, out_dir)
    for path in written:
        print(path)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cospec",
        description="Construct and certify cospectral graph pairs by unfolding.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_construct = sub.add_parser("construct", help="build and certify one pair")
    p_construct.add_argument("kind", type=int, choices=(1, 2, 3))
    p_construct.add_argument("--seed", required=True, help="seed JSON file")
    p_construct.add_argument("--out", required=True, help="report JSON output path")
    p_construct.add_argument("--dot", help="directory for DOT exports")
    p_construct.add_argument("--g6", help="directory for graph6 exports")
    p_construct.set_defaults(func=cmd_construct)

    p_check = sub.add_parser("check", help="PET/PST verdict for a matrix")
    p_check.add_argument("what", choices=("pet", "pst"))
    p_check.add_argument("--matrix", required=True, help="JSON array-of-arrays file")
    p_check.set_defaults(func=cmd_check)

    p_search = sub.add_parser("search", help="sweep small seed blocks")
    p_search.add_argument("kind", type=int, choices=(1, 2, 3))
    p_search.add_argument("--template", required=True, help="template JSON file")
    p_search.add_argument("--max-b", type=int, default=3, dest="max_b")
    p_search.add_argument("--out", required=True, help="catalog JSON output path")
    p_search.add_argument("--jobs", type=int, default=None, help="parallel workers")
    p_search.add_argument("--config", help="optional config JSON (jobs)")
    p_search.set_defaults(func=cmd_search)

    p_export = sub.add_parser("export", help="write DOT/graph6 for a pair report")
    p_export.add_argument("--pair", required=True, help="construct report JSON")
    p_export.add_argument("--format", required=True, choices=("dot", "graph6"))
    p_export.add_argument("--out-dir", dest="out_dir", help="output directory")
    p_export.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SeedSchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
