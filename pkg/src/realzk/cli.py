"""Command-line front end.

JSON is the canonical output (stable key order); the table format is rendered
from the same JSON dict.  Machine-readable errors go to stderr as JSON.

Exit codes: 0 success, 1 route-comparison mismatch, 2 input error,
3 size-limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .bitsets import vertices_of
from .cellular import DEFAULT_CELL_CAP, CellularContext
from .complexes import DEFAULT_M_CAP, SimplicialComplex, load_complex
from .errors import (
    ComplexInconsistencyError,
    InvalidComplexError,
    NotInSpanError,
    SizeLimitError,
)
from .hochster import betti_and_torsion, hochster_table
from .ring import HOCHSTER, ORACLE, build_ring, compare_rings

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_SIZE = 3

COMMANDS = ("validate", "betti", "cohomology", "hochster", "ring", "oracle", "compare")


@dataclass
class RunConfig:
    command: str
    input_path: str
    output_format: str = "json"
    route: str = HOCHSTER
    workers: int = 1
    m_cap: int = DEFAULT_M_CAP
    cell_cap: int = DEFAULT_CELL_CAP
    seed: int = 0
    check: bool = False
    dump_complex: bool = False

    def __post_init__(self):
        if self.m_cap <= 0 or self.cell_cap <= 0:
            raise ValueError("caps must be positive")
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")


def build_parser() -> argparse.ArgumentParser:
    env_m = int(os.environ.get("REALZK_MAX_M", DEFAULT_M_CAP))
    env_cells = int(os.environ.get("REALZK_MAX_CELLS", DEFAULT_CELL_CAP))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="complex file, JSON or plain text")
    common.add_argument("--format", choices=("json", "table"), default="json",
                        help="output format (table is derived from the JSON)")
    common.add_argument("--route", choices=(HOCHSTER, ORACLE), default=HOCHSTER,
                        help="computation route where applicable")
    common.add_argument("--workers", type=int, default=1,
                        help="worker processes for the subset sweep")
    common.add_argument("--max-m", type=int, default=env_m,
                        help="vertex-count cap (env REALZK_MAX_M)")
    common.add_argument("--max-cells", type=int, default=env_cells,
                        help="cell-count cap for the oracle route (env REALZK_MAX_CELLS)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized checks")
    common.add_argument("--check", action="store_true",
                        help="also run the two-route comparison and fail on mismatch")
    parser = argparse.ArgumentParser(
        prog="realzk",
        description="Integer cohomology rings of real moment-angle complexes",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common],
                   help="parse the complex and report closure/ghost diagnostics")
    sub.add_parser("betti", parents=[common],
                   help="Betti numbers and torsion per degree (fast route)")
    sub.add_parser("cohomology", parents=[common],
                   help="betti plus generator representatives")
    sub.add_parser("hochster", parents=[common],
                   help="full table of nonzero subcomplex cohomology")
    sub.add_parser("ring", parents=[common],
                   help="generators and the full cup-product table")
    oracle = sub.add_parser("oracle", parents=[common],
                            help="cohomology via the direct cellular complex")
    oracle.add_argument("--dump-complex", action="store_true",
                        help="include the cochain complex matrices in the output")
    sub.add_parser("compare", parents=[common],
                   help="run both routes and compare rings")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input_path=args.input,
        output_format=args.format,
        route=args.route,
        workers=args.workers,
        m_cap=args.max_m,
        cell_cap=args.max_cells,
        seed=args.seed,
        check=args.check,
        dump_complex=getattr(args, "dump_complex", False),
    )


# -- command bodies -------------------------------------------------------------


def _validate_dict(K: SimplicialComplex) -> dict:
    return {
        "command": "validate",
        "m": K.m,
        "simplices": len(K.simplices),
        "facets": [vertices_of(f) for f in K.facets],
        "ghost_vertices": K.ghost_vertices,
        "warnings": list(K.warnings),
        "ok": True,
    }


def _betti_dict(K: SimplicialComplex, cfg: RunConfig) -> dict:
    table = hochster_table(K, workers=cfg.workers, m_cap=cfg.m_cap)
    bt = betti_and_torsion(table)
    return {
        "command": "betti",
        "betti": {str(p): rank for p, (rank, _) in sorted(bt.items())},
        "torsion": {str(p): tors for p, (_, tors) in sorted(bt.items()) if tors},
        "euler_char": K.euler_char_rz(),
    }


def _cohomology_dict(K: SimplicialComplex, cfg: RunConfig) -> dict:
    table = hochster_table(K, workers=cfg.workers, m_cap=cfg.m_cap)
    bt = betti_and_torsion(table)
    return {
        "command": "cohomology",
        "betti": {str(p): rank for p, (rank, _) in sorted(bt.items())},
        "torsion": {str(p): tors for p, (_, tors) in sorted(bt.items()) if tors},
        "generators": table.to_json_list(),
    }


def _hochster_dict(K: SimplicialComplex, cfg: RunConfig) -> dict:
    table = hochster_table(K, workers=cfg.workers, m_cap=cfg.m_cap)
    return {"command": "hochster", "table": table.to_json_list()}


def _ring_dict(K: SimplicialComplex, cfg: RunConfig) -> dict:
    pres = build_ring(
        K, route=cfg.route, workers=cfg.workers, m_cap=cfg.m_cap, cell_cap=cfg.cell_cap
    )
    out = pres.to_json_dict()
    out["command"] = "ring"
    return out


def _oracle_dict(K: SimplicialComplex, cfg: RunConfig) -> dict:
    ctx = CellularContext(K, cell_cap=cfg.cell_cap)
    groups = []
    for p in range(ctx.max_degree() + 1):
        group = ctx.cohomology(p)
        if group.is_trivial():
            continue
        groups.append(
            {
                "p": p,
                "rank": group.free_rank,
                "torsion": list(group.torsion),
                "generators": [c.render(K.m) for c in ctx.group_representatives(p)],
            }
        )
    out = {"command": "oracle", "cells": [len(g) for g in ctx.grades], "groups": groups}
    if cfg.dump_complex:
        out["complex"] = ctx.complex.to_json_dict()
    return out


def _compare_dict(K: SimplicialComplex, cfg: RunConfig) -> dict:
    ra = build_ring(K, route=HOCHSTER, workers=cfg.workers, m_cap=cfg.m_cap)
    rb = build_ring(K, route=ORACLE, cell_cap=cfg.cell_cap)
    report = compare_rings(ra, rb)
    out = report.to_json_dict()
    out["command"] = "compare"
    return out


_BODIES = {
    "validate": lambda K, cfg: _validate_dict(K),
    "betti": _betti_dict,
    "cohomology": _cohomology_dict,
    "hochster": _hochster_dict,
    "ring": _ring_dict,
    "oracle": _oracle_dict,
    "compare": _compare_dict,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    """Execute a command; writes the report to `out` and errors to `err`."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        K = load_complex(cfg.input_path, m_cap=cfg.m_cap)
    except (InvalidComplexError, OSError, UnicodeDecodeError) as exc:
        _emit_error(err, "input", str(exc))
        return EXIT_INPUT
    except SizeLimitError as exc:
        _emit_error(err, "size-limit", str(exc))
        return EXIT_SIZE
    try:
        report = _BODIES[cfg.command](K, cfg)
        code = EXIT_OK
        if cfg.command == "compare" and not report.get("match", False):
            code = EXIT_MISMATCH
        if cfg.check and cfg.command != "compare":
            check = _compare_dict(K, cfg)
            report["check"] = check
            if not check.get("match", False):
                code = EXIT_MISMATCH
    except SizeLimitError as exc:
        _emit_error(err, "size-limit", str(exc))
        return EXIT_SIZE
    except (ComplexInconsistencyError, NotInSpanError) as exc:
        _emit_error(err, "internal", str(exc))
        return EXIT_INPUT
    print(render(report, cfg.output_format), file=out)
    return code


def _emit_error(err, kind: str, message: str) -> None:
    print(json.dumps({"error": {"type": kind, "message": message}}), file=err)


def render(report: dict, output_format: str) -> str:
    text = json.dumps(report, sort_keys=True)
    if output_format == "json":
        return text
    # the table view is a flat rendering of the same JSON document
    lines = []
    _flatten(json.loads(text), "", lines)
    width = max((len(k) for k, _ in lines), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in lines)


def _flatten(obj, prefix: str, lines: list) -> None:
    if isinstance(obj, dict):
        for k in obj:
            _flatten(obj[k], f"{prefix}{k}." if prefix else f"{k}.", lines)
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, item in enumerate(obj):
            _flatten(item, f"{prefix}{i}.", lines)
    else:
        key = prefix[:-1] if prefix.endswith(".") else prefix
        lines.append((key, json.dumps(obj)))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        _emit_error(sys.stderr, "input", str(exc))
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
