# -*- coding: utf-8 -*-
"""
Command implementations behind the command-line interface.
Every command returns (exit code, payload); main.py prints the payload.
"""

import functools
import logging
from typing import Any, Callable, Iterable, Optional, Tuple

from abelian_dual import dual_bundle, dual_groupoid
from checks import CheckReport, check_corpus, check_groupoid
from constants import (
    DEFAULT_SIZE_BUDGET,
    ERROR_MESSAGES,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_SEMANTIC_FAILURE,
    SUCCESS_MESSAGES,
)
from convolution_algebra import abelianization_dim, enumerate_characters
from documents import encode, load
from errors import DimensionMismatchError, DocumentError, WorkbenchError
from generators import NAMED_GENERATORS, make_named
from groupoid_core import require_valid, validate
from quotients import abelianize_groupoid, check_normal, is_exact, quotient

logger = logging.getLogger(__name__)

CommandResult = Tuple[int, Any]


def guarded(fn: Callable[..., CommandResult]) -> Callable[..., CommandResult]:
    """Map DocumentError to exit 2 and any other WorkbenchError to exit 1"""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs) -> CommandResult:
        try:
            return fn(*args, **kwargs)
        except DocumentError as e:
            logger.error("%s", e.message)
            return EXIT_INPUT_ERROR, e.to_dict()
        except WorkbenchError as e:
            logger.error("%s", e.message)
            return EXIT_SEMANTIC_FAILURE, e.to_dict()

    return wrapper


# =============================================================================
#                           COMMANDS
# =============================================================================


@guarded
def cmd_validate(path: str) -> CommandResult:
    G = load(path)
    report = validate(G)
    if report.ok:
        return EXIT_OK, {"valid": True, "message": SUCCESS_MESSAGES["valid"],
                         "elements": len(G), "units": len(G.units)}
    return EXIT_SEMANTIC_FAILURE, {"valid": False, "message": ERROR_MESSAGES["invalid_groupoid"],
                                   "violations": report.to_dicts()}


@guarded
def cmd_generate(name: str, size: int = 2, seed: int = 0,
                 budget: int = DEFAULT_SIZE_BUDGET) -> CommandResult:
    if name not in NAMED_GENERATORS:
        return EXIT_INPUT_ERROR, {"error": "UnknownGenerator",
                                  "message": f"{ERROR_MESSAGES['unknown_generator']}: {name}",
                                  "witness": sorted(NAMED_GENERATORS)}
    G = make_named(name, size=size, seed=seed, budget=budget)
    return EXIT_OK, encode(G)


@guarded
def cmd_quotient(path: str, labels: Iterable[str]) -> CommandResult:
    """G/H for H given by labels; the units are always part of H"""
    G = load(path)
    require_valid(G)
    labels = list(labels)
    unknown = [label for label in labels if label not in G.labels]
    if unknown:
        raise DocumentError(ERROR_MESSAGES["unknown_label"], witness=unknown)
    members = G.subset_from_labels(labels).subset | G.units
    ok, message, witness = check_normal(G, members)
    if not ok:
        logger.error("%s: %s", ERROR_MESSAGES["not_normal"], message)
        return EXIT_SEMANTIC_FAILURE, {"error": "NotNormalError", "message": message,
                                       "witness": list(witness)}
    result = quotient(G, members)
    quotient_labels = result.quotient.labels
    return EXIT_OK, {
        "quotient": encode(result.quotient),
        "class_map": {G.labels[a]: quotient_labels[q] for a, q in enumerate(result.class_map)},
        "exact": is_exact(result, members),
    }


@guarded
def cmd_abelianize(path: str) -> CommandResult:
    G = load(path)
    require_valid(G)
    ab = abelianize_groupoid(G)
    bundle = dual_bundle(ab.quotient)
    dim = abelianization_dim(G)
    if dim != len(bundle):
        raise DimensionMismatchError(
            f"commutator ideal rank {dim} disagrees with dual bundle size {len(bundle)}",
            witness={"abelianization_dim": dim, "dual_bundle_size": len(bundle)})
    return EXIT_OK, {
        "g_fix": encode(ab.g_fix),
        "g_ab": encode(ab.quotient),
        "dual_bundle": bundle.to_dict(),
        "abelianization_dim": dim,
    }


@guarded
def cmd_dual(path: str) -> CommandResult:
    G = load(path)
    require_valid(G)
    bundle = dual_bundle(G)
    return EXIT_OK, {"dual_bundle": bundle.to_dict(), "dual_groupoid": encode(dual_groupoid(bundle))}


@guarded
def cmd_characters(path: str) -> CommandResult:
    G = load(path)
    require_valid(G)
    functionals = enumerate_characters(G)
    return EXIT_OK, {
        "count": len(functionals),
        "abelianization_dim": abelianization_dim(G),
        "characters": [phi.to_dict() for phi in functionals],
    }


@guarded
def cmd_check(path: Optional[str] = None, corpus: Optional[Tuple[int, int]] = None,
              budget: int = DEFAULT_SIZE_BUDGET, jobs: int = 1) -> CommandResult:
    """Check suite on one document or on a seeded corpus; exit 1 when any check fails"""
    report = CheckReport()
    if path is not None:
        report.extend(check_groupoid(load(path)))
    if corpus is not None:
        seed, count = corpus
        report.extend(check_corpus(seed, count, budget, jobs))
    if not report.ok:
        logger.error("%s: %d", ERROR_MESSAGES["checks_failed"], len(report.failures()))
        return EXIT_SEMANTIC_FAILURE, report
    logger.info(SUCCESS_MESSAGES["checks_passed"])
    return EXIT_OK, report
