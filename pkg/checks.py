# -*- coding: utf-8 -*-
"""
Check suite: runs the structural theorems against one groupoid or a corpus
and collects the outcomes in a CheckReport
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import pandas as pd

from abelian_dual import (
    char_group_structure,
    characters,
    invariant_factors,
    pairing_is_perfect,
)
from constants import (
    ALL_STATUSES,
    DEFAULT_SIZE_BUDGET,
    EXHAUSTIVE_ARROW_LIMIT,
    GELFAND_CORPUS_COUNT,
    MAX_BUNDLE_POINTS,
    MAX_DUALITY_ORDER,
    MAX_LIBRARY_ORDER,
    MAX_NORMAL_SUBGROUPOIDS,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_SKIP,
    get_status_display,
)
from convolution_algebra import (
    abelian_fiber,
    abelianization_dim,
    abelianization_projection,
    commutator_ideal,
    delta,
    effective_by_kernel,
    enumerate_characters,
    gelfand_transform,
    kernel_meets_diagonal,
    quotient_hom,
    recover_pair,
    restriction_hom,
    unit_element,
    zero,
)
from errors import WorkbenchError
from generators import random_abelian_bundle, random_groupoid
from groupoid_core import FiniteGroupoid, fixed_points, is_effective, validate
from groups import abelian_groups_up_to
from quotients import (
    abelianize_groupoid,
    count_normal_subgroupoids,
    enumerate_normal_subgroupoids,
    interior_isotropy,
    is_abelian_group_bundle,
    is_exact,
    quotient,
)

logger = logging.getLogger(__name__)

# A check returns (passed, witness); witness explains a failure
CheckFn = Callable[[], Tuple[bool, Any]]

SWEEP_CHECKS = ("exactness", "kernel-diagonal", "injectivity")
GROUPOID_CHECKS = ("axioms",) + SWEEP_CHECKS + (
    "homomorphisms", "abelianization", "character-count", "functionals", "recovery",
    "pi-kernel", "ideal-closure", "effectiveness", "gelfand", "duality")


def _plain(value):
    """Tuples and sets become lists so witnesses serialize as JSON"""
    if isinstance(value, (tuple, list, set, frozenset)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


@dataclass
class CheckResult:
    check: str
    subject: str
    status: str
    seconds: float
    witness: Any = None
    message: str = ""


@dataclass
class CheckReport:
    """Outcome of a check run; passes only when no check failed"""

    results: List[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != STATUS_FAIL for r in self.results)

    def run(self, check: str, subject: str, fn: CheckFn) -> bool:
        start = time.perf_counter()
        try:
            passed, witness = fn()
            message = ""
        except WorkbenchError as e:
            passed, witness, message = False, e.witness, e.message
        status = STATUS_PASS if passed else STATUS_FAIL
        self.results.append(CheckResult(check, subject, status, time.perf_counter() - start,
                                        None if passed else _plain(witness), message))
        if not passed:
            logger.warning("%s: %s failed (witness %s)", subject, check, witness)
        return passed

    def skip(self, check: str, subject: str, message: str = ""):
        self.results.append(CheckResult(check, subject, STATUS_SKIP, 0.0, None, message))

    def extend(self, other: "CheckReport"):
        self.results.extend(other.results)

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if r.status == STATUS_FAIL]

    def counts(self) -> Dict[str, int]:
        return {status: sum(1 for r in self.results if r.status == status) for status in ALL_STATUSES}

    def to_frame(self) -> pd.DataFrame:
        columns = ["check", "subject", "status", "seconds", "witness", "message"]
        return pd.DataFrame([asdict(r) for r in self.results], columns=columns)

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False)

    def to_dict(self) -> Dict:
        return {
            "ok": self.ok,
            "summary": self.counts(),
            "checks": [asdict(r) for r in self.results],
        }

    def summary_lines(self) -> List[str]:
        frame = self.to_frame()
        if frame.empty:
            return []
        grouped = frame.groupby(["check", "status"]).size().unstack(fill_value=0)
        lines = []
        for check, row in grouped.iterrows():
            parts = [f"{get_status_display(s)}={int(row[s])}" for s in ALL_STATUSES if s in row and row[s]]
            lines.append(f"{check}: {' '.join(parts)}")
        return lines


# =============================================================================
#                           PER-GROUPOID CHECKS
# =============================================================================


def _normal_sweep(G: FiniteGroupoid):
    """(H, quotient result, kernel of Q) for every normal subgroupoid H"""
    sweep = []
    for H in enumerate_normal_subgroupoids(G):
        result = quotient(G, H)
        hom = quotient_hom(G, H)
        sweep.append((H, result, hom))
    return sweep


def _check_exactness(G, sweep):
    for H, result, _ in sweep:
        if not is_exact(result, H):
            return False, H.carrier.labels()
    return True, None


def _check_kernel_diagonal(G, sweep):
    for H, _, hom in sweep:
        if kernel_meets_diagonal(hom):
            return False, H.carrier.labels()
    return True, None


def _check_injectivity(G, sweep):
    for H, _, hom in sweep:
        if (hom.kernel().dim == 0) != H.is_trivial:
            return False, H.carrier.labels()
    return True, None


def _run_normal_sweep(report: CheckReport, G: FiniteGroupoid):
    """
    Exactness, kernel-diagonal and injectivity over every normal subgroupoid.
    Skipped when G is too large or has more normal subgroupoids than the enumeration cap.
    """
    if len(G) > EXHAUSTIVE_ARROW_LIMIT:
        reason = f"more than {EXHAUSTIVE_ARROW_LIMIT} arrows"
    else:
        total = count_normal_subgroupoids(G)
        reason = (f"capped: {total} normal subgroupoids, limit {MAX_NORMAL_SUBGROUPOIDS}"
                  if total > MAX_NORMAL_SUBGROUPOIDS else None)
    if reason is not None:
        for name in SWEEP_CHECKS:
            report.skip(name, G.name, reason)
        return
    sweep = _normal_sweep(G)
    report.run("exactness", G.name, lambda: _check_exactness(G, sweep))
    report.run("kernel-diagonal", G.name, lambda: _check_kernel_diagonal(G, sweep))
    report.run("injectivity", G.name, lambda: _check_injectivity(G, sweep))


def _check_homomorphisms(G):
    for hom in (restriction_hom(G, fixed_points(G)), quotient_hom(G, interior_isotropy(G))):
        witness = hom.check_multiplicative() or hom.check_star()
        if witness is not None:
            return False, [hom.name, witness]
        if not hom.is_surjective():
            return False, [hom.name, "not surjective"]
    return True, None


def _check_character_count(G, functionals):
    expected = abelianization_dim(G)
    return len(functionals) == expected, {"characters": len(functionals), "ideal_oracle": expected}


def _check_functionals(G, functionals):
    seen = set()
    for phi in functionals:
        witness = phi.check_multiplicative() or phi.check_star()
        if witness is not None:
            return False, [G.labels[phi.x], list(phi.chi.residues), witness]
        if phi.key() in seen:
            return False, [G.labels[phi.x], list(phi.chi.residues), "duplicate"]
        seen.add(phi.key())
    return True, None


def _check_recovery(G, functionals, ab):
    for phi in functionals:
        x, chi = recover_pair(G, phi.exponents, phi.modulus, ab)
        if x != phi.x or chi != phi.chi:
            return False, [G.labels[phi.x], list(phi.chi.residues)]
    return True, None


def _check_pi_kernel(G):
    pi, _ = abelianization_projection(G)
    ideal = commutator_ideal(G)
    kernel = pi.kernel()
    return kernel.same_span(ideal), {"ker_pi": kernel.dim, "commutator_ideal": ideal.dim}


def _check_ideal_closure(G):
    witness = commutator_ideal(G).check_closure()
    return witness is None, witness


def _check_effectiveness(G):
    by_kernel = effective_by_kernel(G)
    return by_kernel == is_effective(G), {"by_kernel": by_kernel, "by_isotropy": is_effective(G)}


def _check_gelfand(G):
    matrix = gelfand_transform(G)
    if not matrix.is_invertible():
        return False, {"log_abs_det": matrix.log_abs_determinant()}
    witness = matrix.check_pointwise()
    if witness is not None:
        return False, witness
    sample = unit_element(G) + sum((delta(G, a, a + 1) for a in G.elements), zero(G))
    return matrix.round_trips(sample), {"round_trip": "inverse transform disagrees"}


def _check_fiber_duality(G, ab):
    for x in fixed_points(G):
        group, _ = abelian_fiber(ab, x)
        ok, witness = _duality(group)
        if not ok:
            return False, [G.labels[x], witness]
    return True, None


def _duality(group):
    chars = characters(group)
    if len(chars) != len(group):
        return False, {"characters": len(chars), "order": len(group)}
    dual_factors, _ = invariant_factors(char_group_structure(chars))
    factors, _ = invariant_factors(group)
    if dual_factors != factors:
        return False, {"factors": factors, "dual_factors": dual_factors}
    if not pairing_is_perfect(group):
        return False, {"pairing": "not perfect"}
    return True, None


def check_groupoid(G: FiniteGroupoid) -> CheckReport:
    """Full suite for one groupoid; everything after a failed axiom check is skipped"""
    report = CheckReport()
    subject = G.name
    validation = validate(G)
    if not report.run("axioms", subject, lambda: (validation.ok, validation.to_dicts()[:1])):
        for name in GROUPOID_CHECKS[1:]:
            report.skip(name, subject, "axioms failed")
        return report

    _run_normal_sweep(report, G)
    report.run("homomorphisms", subject, lambda: _check_homomorphisms(G))

    prepared: Dict[str, Any] = {}

    def abelianize():
        prepared["ab"] = abelianize_groupoid(G)
        prepared["functionals"] = enumerate_characters(G, prepared["ab"])
        return True, None

    if report.run("abelianization", subject, abelianize):
        ab, functionals = prepared["ab"], prepared["functionals"]
        report.run("character-count", subject, lambda: _check_character_count(G, functionals))
        report.run("functionals", subject, lambda: _check_functionals(G, functionals))
        report.run("recovery", subject, lambda: _check_recovery(G, functionals, ab))
    else:
        for name in ("character-count", "functionals", "recovery"):
            report.skip(name, subject, "abelianization failed")
    report.run("pi-kernel", subject, lambda: _check_pi_kernel(G))
    report.run("ideal-closure", subject, lambda: _check_ideal_closure(G))
    report.run("effectiveness", subject, lambda: _check_effectiveness(G))
    if is_abelian_group_bundle(G):
        report.run("gelfand", subject, lambda: _check_gelfand(G))
    else:
        report.skip("gelfand", subject, "not an abelian group bundle")
    if "ab" in prepared:
        report.run("duality", subject, lambda: _check_fiber_duality(G, prepared["ab"]))
    else:
        report.skip("duality", subject, "abelianization failed")
    logger.info("%s: %s", subject, report.counts())
    return report


# =============================================================================
#                           CORPUS
# =============================================================================


def _check_seed(seed: int, size_budget: int) -> CheckReport:
    return check_groupoid(random_groupoid(seed, size_budget))


def _check_bundle(seed: int) -> CheckReport:
    G = random_abelian_bundle(seed, MAX_BUNDLE_POINTS, MAX_LIBRARY_ORDER)
    report = CheckReport()
    report.run("gelfand", G.name, lambda: _check_gelfand(G))
    report.run("character-count", G.name, lambda: _check_character_count(G, enumerate_characters(G)))
    return report


def check_duality_sweep(max_order: int = MAX_DUALITY_ORDER) -> CheckReport:
    report = CheckReport()
    for group in abelian_groups_up_to(max_order):
        report.run("duality", group.name, lambda: _duality(group))
    return report


def check_corpus(seed: int, count: int, size_budget: int = DEFAULT_SIZE_BUDGET,
                 jobs: int = 1, gelfand_count: int = GELFAND_CORPUS_COUNT,
                 duality_order: Optional[int] = MAX_DUALITY_ORDER) -> CheckReport:
    """
    Random groupoids from seeds seed..seed+count-1, a sub-corpus of random
    abelian bundles, and the duality sweep over small abelian groups.
    """
    seeds = list(range(seed, seed + count))
    bundle_seeds = list(range(seed, seed + gelfand_count))
    report = CheckReport()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_check_seed, seeds, [size_budget] * len(seeds)):
                report.extend(part)
            for part in pool.map(_check_bundle, bundle_seeds):
                report.extend(part)
    else:
        for s in seeds:
            report.extend(_check_seed(s, size_budget))
        for s in bundle_seeds:
            report.extend(_check_bundle(s))
    if duality_order:
        report.extend(check_duality_sweep(duality_order))
    logger.info("corpus seed=%d count=%d: %s", seed, count, report.counts())
    return report
