# -*- coding: utf-8 -*-
"""
Groupoid Abelianization Workbench - Command Line Entry Point
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from checks import CheckReport
from commands import (
    cmd_abelianize,
    cmd_characters,
    cmd_check,
    cmd_dual,
    cmd_generate,
    cmd_quotient,
    cmd_validate,
)
from constants import (
    DEFAULT_CORPUS_COUNT,
    DEFAULT_SEED,
    DEFAULT_SIZE_BUDGET,
    EXIT_INPUT_ERROR,
    LOG_DATE_FORMAT,
    LOG_FORMAT,
    log_level_for,
)
from generators import NAMED_GENERATORS

logger = logging.getLogger("workbench")


# ────────────────────────────────────────────────
#               Argument Parsing
# ────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupoid-workbench",
        description="Finite groupoids: quotients, abelianization, duals and character checks",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for debug output")
    parser.add_argument("--output", choices=["json", "csv"], default="json",
                        help="output format (csv only for check)")
    parser.add_argument("--output-file", default=None, help="write output here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a GroupoidDocument against the groupoid axioms")
    p.add_argument("path")

    p = sub.add_parser("generate", help="emit a named or random groupoid as a document")
    p.add_argument("name", help=f"one of: {', '.join(sorted(NAMED_GENERATORS))}")
    p.add_argument("--size", type=int, default=2)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--budget", type=int, default=DEFAULT_SIZE_BUDGET)

    p = sub.add_parser("quotient", help="quotient by a normal subgroupoid given as labels")
    p.add_argument("path")
    p.add_argument("labels", nargs="*", help="labels of H (units are added)")

    for name, text in (("abelianize", "G_fix, G^ab and the dual bundle of G^ab"),
                       ("dual", "dual bundle of an abelian group bundle"),
                       ("characters", "all character functionals")):
        p = sub.add_parser(name, help=text)
        p.add_argument("path")

    p = sub.add_parser("check", help="run the check suite on a document or a corpus")
    p.add_argument("path", nargs="?", default=None)
    p.add_argument("--corpus", action="store_true", help="check a seeded random corpus")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--count", type=int, default=DEFAULT_CORPUS_COUNT)
    p.add_argument("--budget", type=int, default=DEFAULT_SIZE_BUDGET)
    p.add_argument("--jobs", type=int, default=1)
    return parser


# ────────────────────────────────────────────────
#               Dispatch
# ────────────────────────────────────────────────

COMMANDS = {
    "validate": lambda a: cmd_validate(a.path),
    "generate": lambda a: cmd_generate(a.name, a.size, a.seed, a.budget),
    "quotient": lambda a: cmd_quotient(a.path, a.labels),
    "abelianize": lambda a: cmd_abelianize(a.path),
    "dual": lambda a: cmd_dual(a.path),
    "characters": lambda a: cmd_characters(a.path),
    "check": lambda a: cmd_check(a.path, (a.seed, a.count) if a.corpus else None, a.budget, a.jobs),
}


def render(payload, output: str) -> str:
    if isinstance(payload, CheckReport):
        if output == "csv":
            return payload.to_csv()
        payload = payload.to_dict()
    elif output == "csv":
        logger.warning("csv output is only available for check; writing json")
    return json.dumps(payload, indent=2, ensure_ascii=False, default=str)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=log_level_for(args.verbose), format=LOG_FORMAT,
                        datefmt=LOG_DATE_FORMAT, stream=sys.stderr)

    if args.command == "check" and args.path is None and not args.corpus:
        logger.error("check needs a document path or --corpus")
        return EXIT_INPUT_ERROR

    code, payload = COMMANDS[args.command](args)
    text = render(payload, args.output)
    if args.output_file:
        with open(args.output_file, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        print(text)
    if isinstance(payload, CheckReport):
        for line in payload.summary_lines():
            logger.info(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
