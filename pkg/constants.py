# -*- coding: utf-8 -*-
"""
Constants and configuration for the groupoid abelianization workbench
"""

import os

# =============================================================================
#                           DOCUMENT SCHEMA
# =============================================================================

SCHEMA_VERSION = "groupoid-document/1"

# Exact key set of a GroupoidDocument; anything else is rejected
DOCUMENT_FIELDS = frozenset({
    "schema_version",
    "elements",
    "units",
    "src",
    "rng",
    "comp",
    "inv",
})

# Label used for the identity of every library group
IDENTITY_LABEL = "e"

# =============================================================================
#                           EXIT CODES
# =============================================================================

EXIT_OK = 0
EXIT_SEMANTIC_FAILURE = 1  # axiom failure, non-normal H, failed check
EXIT_INPUT_ERROR = 2  # unreadable file, bad JSON, schema violation, unknown label

# =============================================================================
#                           NUMERICS
# =============================================================================

COMPLEX_TOLERANCE = 1e-9
DETERMINANT_THRESHOLD = 1e-6

# =============================================================================
#                           CORPUS
# =============================================================================

DEFAULT_SEED = 7
DEFAULT_CORPUS_COUNT = 50
DEFAULT_SIZE_BUDGET = 60

# Normal-subgroupoid sweeps only run on groupoids up to this many arrows
EXHAUSTIVE_ARROW_LIMIT = 24

# Largest group order in the built-in library and in random actions
MAX_LIBRARY_ORDER = 12

# Abelian bundles for the Gelfand sub-corpus
MAX_BUNDLE_POINTS = 8
GELFAND_CORPUS_COUNT = 10

# Abelian groups swept by the duality check
MAX_DUALITY_ORDER = 64

# Upper bound on enumerated normal subgroupoids per groupoid
MAX_NORMAL_SUBGROUPOIDS = 512

# =============================================================================
#                           LOGGING
# =============================================================================

LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"
LOG_DATE_FORMAT = "%H:%M:%S"
DEFAULT_LOG_LEVEL = os.environ.get("GROUPOID_LOG_LEVEL", "WARNING").upper()

# =============================================================================
#                           CHECK STATUS
# =============================================================================

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_SKIP = "skip"

ALL_STATUSES = [STATUS_PASS, STATUS_FAIL, STATUS_SKIP]

STATUS_SYMBOL = {
    STATUS_PASS: "✓",
    STATUS_FAIL: "✗",
    STATUS_SKIP: "-",
}

# =============================================================================
#                           MESSAGES
# =============================================================================

ERROR_MESSAGES = {
    "unreadable_file": "cannot read input file",
    "bad_json": "input is not valid JSON",
    "bad_schema": "document does not match the groupoid schema",
    "invalid_groupoid": "groupoid axioms violated",
    "unknown_label": "unknown element label",
    "not_normal": "subgroupoid is not normal",
    "unknown_generator": "unknown generator name",
    "checks_failed": "one or more checks failed",
}

SUCCESS_MESSAGES = {
    "valid": "groupoid is valid",
    "checks_passed": "all checks passed",
}

# =============================================================================
#                           HELPER FUNCTIONS
# =============================================================================


def get_status_display(status):
    """Get symbol + text for a check status"""
    symbol = STATUS_SYMBOL.get(status, "?")
    return f"{symbol} {status}"


def log_level_for(verbosity):
    """Map a -v count onto a logging level name"""
    if verbosity >= 2:
        return "DEBUG"
    if verbosity == 1:
        return "INFO"
    return DEFAULT_LOG_LEVEL


# =============================================================================
#                           EXPORT
# =============================================================================

__all__ = [
    # Schema
    'SCHEMA_VERSION',
    'DOCUMENT_FIELDS',
    'IDENTITY_LABEL',

    # Exit codes
    'EXIT_OK',
    'EXIT_SEMANTIC_FAILURE',
    'EXIT_INPUT_ERROR',

    # Numerics
    'COMPLEX_TOLERANCE',
    'DETERMINANT_THRESHOLD',

    # Corpus
    'DEFAULT_SEED',
    'DEFAULT_CORPUS_COUNT',
    'DEFAULT_SIZE_BUDGET',
    'EXHAUSTIVE_ARROW_LIMIT',
    'MAX_LIBRARY_ORDER',
    'MAX_BUNDLE_POINTS',
    'GELFAND_CORPUS_COUNT',
    'MAX_DUALITY_ORDER',
    'MAX_NORMAL_SUBGROUPOIDS',

    # Logging
    'LOG_FORMAT',
    'LOG_DATE_FORMAT',
    'DEFAULT_LOG_LEVEL',

    # Status
    'STATUS_PASS',
    'STATUS_FAIL',
    'STATUS_SKIP',
    'ALL_STATUSES',
    'STATUS_SYMBOL',

    # Functions
    'get_status_display',
    'log_level_for',

    # Messages
    'ERROR_MESSAGES',
    'SUCCESS_MESSAGES',
]
