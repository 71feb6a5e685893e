"""Command line front end.

Subcommands: generate, generate-family, verify, render, example1, oracle.
Every command exits 0 exactly when its check passes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import geometry as geo
from .covers import CoverSystem, EpsilonSchedule, ScheduleError
from .diagram import lift_diagram_3
from .example1 import check_example1
from .family import build_family_diagram
from .serialize import (
    FormatError,
    diagram_to_json,
    dump_json,
    fraction_from_json,
    fraction_to_json,
    load_instance,
    regions_to_json,
    system_to_json,
)
from .verify import (
    ConditionResult,
    VerificationReport,
    generate_instance,
    oracle_trials,
    verify_instance,
)


def _parse_eps(text: str) -> EpsilonSchedule:
    return EpsilonSchedule.build([fraction_from_json(part.strip())
                                  for part in text.split(",")])


def cmd_generate(args) -> int:
    eps = _parse_eps(args.eps) if args.eps else None
    instance = generate_instance(args.l, eps)
    os.makedirs(args.out, exist_ok=True)
    system = CoverSystem(instance.diagram, instance.epsilons, instance.phi_tables)
    realized = geo.RealizedSystem(system)
    enlarged = geo.enlarge_taut_family(realized)
    m_sq = enlarged[0].radius_sq  # level 0 radius is m itself
    dump_json(instance.to_json(), os.path.join(args.out, "instance.json"))
    dump_json(system_to_json(system), os.path.join(args.out, "system.json"))
    dump_json(regions_to_json(realized), os.path.join(args.out, "regions.json"))
    dump_json({
        "schema": 1,
        "m_sq": fraction_to_json(m_sq),
        "radius_sq": [fraction_to_json(m_sq / 4 ** n)
                      for n in range(system.l + 1)],
    }, os.path.join(args.out, "enlargement.json"))
    geo.render_svg(realized, os.path.join(args.out, "covers.svg"), enlarged)
    report = verify_instance(instance)
    print(report.to_text())
    return 0 if report.passed else 1


def cmd_generate_family(args) -> int:
    d = build_family_diagram(args.k)
    payload = {"schema": 1, "diagram": diagram_to_json(d)}
    if args.out:
        dump_json(payload, args.out)
    else:
        json.dump(payload, sys.stdout, indent=1, sort_keys=True)
        print()
    return 0


def _schema_failure_report(message: str) -> VerificationReport:
    report = VerificationReport()
    report.results.append(ConditionResult("schema", "FAIL", message))
    return report


def cmd_verify(args) -> int:
    try:
        instance = load_instance(args.file)
    except (FormatError, ScheduleError, KeyError, ValueError) as exc:
        report = _schema_failure_report(str(exc))
    else:
        report = verify_instance(instance)
    print(report.to_text())
    return 0 if report.passed else 1


def cmd_render(args) -> int:
    instance = load_instance(args.file)
    system = CoverSystem(instance.diagram, instance.epsilons, instance.phi_tables)
    realized = geo.RealizedSystem(system)
    levels = args.level if args.level else None
    geo.render_svg(realized, args.out, levels=levels)
    print("wrote %s" % args.out)
    return 0


def cmd_example1(args) -> int:
    report = check_example1()
    for key in ("total", "domain_size", "image_within_bounds", "image",
                "unused_targets", "block_sizes", "block_sum"):
        print("%-20s %s" % (key, report[key]))
    print("overall              %s" % ("PASS" if report["pass"] else "FAIL"))
    return 0 if report["pass"] else 1


def cmd_oracle(args) -> int:
    instance = load_instance(args.file)
    report = oracle_trials(instance, args.trials, args.seed)
    for key in ("trials", "membership_agree", "map_trials", "map_agree"):
        print("%-20s %s" % (key, report[key]))
    print("overall              %s" % ("PASS" if report["pass"] else "FAIL"))
    return 0 if report["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treechains",
        description="Generate and verify tree-chain cover pipelines.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build an instance and verify it")
    p.add_argument("--l", type=int, required=True, help="pipeline length")
    p.add_argument("--eps", help="comma separated rational schedule, e.g. 3/4,2/3")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("generate-family", help="emit the raw diagram of trees")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_generate_family)

    p = sub.add_parser("verify", help="run the condition report on an instance")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw the realized covers as SVG")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--level", type=int, action="append",
                   help="restrict to a cover level (repeatable)")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("example1", help="check the published pattern table")
    p.set_defaults(func=cmd_example1)

    p = sub.add_parser("oracle", help="randomized cross-validation of the checkers")
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
