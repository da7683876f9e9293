"""Command-line interface: ``permuframe {irreps,frame,analyze,verify,edges}``.

Exit codes: 0 success, 1 validation error, 2 invariant failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass
from math import factorial
from pathlib import Path

from .cayley import EIGEN_TOL, GROUP_TOL, GeneratingSet, cayley_edges, edges_csv, parse_genset
from .frames import FrameError, build_compatible_frame, frame_bounds, frame_to_json, load_frame, parse_policy
from .perm import GroupOrdering, GroupSizeError, check_group_size, make_ordering
from .ranked import coefficient_report, ingest_rankings
from .verify import check_frame, run_checks
from .young import dimension, format_partition, hook_length_dimension, partitions_of, standard_tableaux

log = logging.getLogger("permuframe")

EXIT_OK, EXIT_INVALID, EXIT_INVARIANT = 0, 1, 2


class InvariantFailure(RuntimeError):
    pass


@dataclass
class RunConfig:
    n: int
    genset: str = "adjacent"
    ordering: str | None = None
    policy: str = "onb"
    source: str = "yor"
    eigen_tol: float = EIGEN_TOL
    group_tol: float = GROUP_TOL
    close_inverses: bool = False
    out: str | None = None
    frame: str | None = None
    signal: str | None = None

    def validate(self, min_n: int = 2) -> None:
        if self.n < min_n:
            raise ValueError(f"n must be at least {min_n}")
        if self.eigen_tol <= 0 or self.group_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.source == "fixture" and self.n != 3:
            raise ValueError("--source fixture is only valid for n=3")

    def group_ordering(self) -> GroupOrdering:
        default = "paper_s3" if self.source == "fixture" else "lex"
        return make_ordering(self.ordering or default, self.n)

    def generating_set(self) -> GeneratingSet:
        return parse_genset(self.n, self.genset, self.close_inverses)


def write_atomic(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def cmd_irreps(cfg: RunConfig) -> int:
    check_group_size(cfg.n)
    rows = []
    for shape in partitions_of(cfg.n):
        d = dimension(shape)
        rows.append({"partition": format_partition(shape), "dim": d,
                     "hook_length": hook_length_dimension(shape),
                     "tableaux": len(standard_tableaux(shape))})
    total = sum(r["dim"] ** 2 for r in rows)
    lines = ["partition,dim"] + [f'"{r["partition"]}",{r["dim"]}' for r in rows]
    lines.append(f"sum_dim_squared,{total}")
    lines.append(f"n_factorial,{factorial(cfg.n)}")
    write_atomic(cfg.out, "\n".join(lines) + "\n")
    if total != factorial(cfg.n):
        raise InvariantFailure(f"sum of squared dimensions {total} != {cfg.n}!")
    return EXIT_OK


def cmd_frame(cfg: RunConfig) -> int:
    cfg.validate()
    S = cfg.generating_set()
    policy = parse_policy(cfg.policy)
    ordering = cfg.group_ordering()
    frame = build_compatible_frame(cfg.n, S, policy, cfg.source, ordering, cfg.eigen_tol, cfg.group_tol)
    checks = check_frame(frame, S, parseval=policy.kind == "onb")
    lower, upper, cond = frame_bounds(frame)
    data = frame_to_json(frame)
    data["bounds"] = {"lower": lower, "upper": upper, "condition": cond}
    data["checks"] = {c.name: {"passed": c.passed, "value": c.value, "tol": c.tol} for c in checks}
    write_atomic(cfg.out, json.dumps(data, indent=1) + "\n")
    for c in checks:
        print(c.line(), file=sys.stderr)
    print(f"atoms={len(frame)} bounds=({lower:.12g}, {upper:.12g}) condition={cond:.12g}",
          file=sys.stderr)
    if not all(c.passed for c in checks):
        raise InvariantFailure("frame failed its invariant checks")
    return EXIT_OK


def cmd_analyze(cfg: RunConfig) -> int:
    if not cfg.frame or not cfg.signal:
        raise ValueError("analyze needs --frame and --signal")
    frame = load_frame(cfg.frame)
    if cfg.n is not None and cfg.n != frame.n:
        raise ValueError(f"--n {cfg.n} does not match the frame (n={frame.n})")
    signal = ingest_rankings(cfg.signal, frame.n, frame.ordering)
    report = coefficient_report(frame, signal)
    write_atomic(cfg.out, report.to_csv())
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    cfg.validate()
    S = cfg.generating_set()
    if cfg.frame:
        frame = load_frame(cfg.frame)
        if frame.n != cfg.n:
            raise ValueError(f"--n {cfg.n} does not match the frame (n={frame.n})")
        source = frame.metadata.get("source") or cfg.source
        checks = run_checks(cfg.n, S, source, frame.ordering, frame)
    else:
        checks = run_checks(cfg.n, S, cfg.source, cfg.group_ordering())
    meta = f"# n={cfg.n} genset={S.describe()} source={cfg.source} " \
           f"eigen_tol={cfg.eigen_tol:g} group_tol={cfg.group_tol:g}"
    write_atomic(cfg.out, "\n".join([meta] + [c.line() for c in checks]) + "\n")
    if not all(c.passed for c in checks):
        raise InvariantFailure("verification failed")
    return EXIT_OK


def cmd_edges(cfg: RunConfig) -> int:
    cfg.validate(min_n=1)
    S = cfg.generating_set()
    ordering = cfg.group_ordering()
    write_atomic(cfg.out, edges_csv(cayley_edges(cfg.n, S, ordering), ordering))
    return EXIT_OK


COMMANDS = {
    "irreps": cmd_irreps,
    "frame": cmd_frame,
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "edges": cmd_edges,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permuframe",
                                     description="Compatible Frobenius-Schur frames on S_n.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=name != "analyze")
        p.add_argument("--genset", default="adjacent",
                       help='adjacent, all_transpositions or "custom:(1 2),(1 3 2),(1 2 3)"')
        p.add_argument("--ordering", default=None, choices=["lex", "paper_s3"],
                       help="vertex ordering (default lex; paper_s3 with --source fixture)")
        p.add_argument("--policy", default="onb", help="onb, repeat:R or custom:FILE.json")
        p.add_argument("--source", default="yor", choices=["yor", "fixture"])
        p.add_argument("--eigen-tol", type=float, default=EIGEN_TOL)
        p.add_argument("--group-tol", type=float, default=GROUP_TOL)
        p.add_argument("--close-inverses", action="store_true",
                       help="add missing inverses to a custom generating set")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--frame", default=None, help="frame JSON (analyze, verify)")
        p.add_argument("--signal", default=None, help="ranking,count CSV (analyze)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = RunConfig(args.n, args.genset, args.ordering, args.policy, args.source,
                    args.eigen_tol, args.group_tol, args.close_inverses, args.out,
                    args.frame, args.signal)
    try:
        return COMMANDS[args.command](cfg)
    except InvariantFailure as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, GroupSizeError, FrameError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
