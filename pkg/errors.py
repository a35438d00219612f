# -*- coding: utf-8 -*-
"""
Exception hierarchy shared by every workbench module
"""

from typing import Any, Optional


class WorkbenchError(Exception):
    """Base error; carries a human message and an optional witness payload"""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def to_dict(self):
        return {"error": type(self).__name__, "message": self.message, "witness": self.witness}


class InvalidGroupoidError(WorkbenchError):
    """Groupoid tables violate the axioms"""


class NotInvariantError(WorkbenchError):
    """Unit subset is not invariant; witness is an arrow leaving it"""


class NotNormalError(WorkbenchError):
    """Subset is not a normal subgroupoid"""


class NotGroupBundleError(WorkbenchError):
    """Groupoid has arrows between distinct units"""


class NotAbelianError(WorkbenchError):
    """Group or fiber is not commutative; witness is a non-commuting pair"""


class HostMismatchError(WorkbenchError):
    """Algebra operation mixes elements of different groupoids"""


class CharacterError(WorkbenchError):
    """Character functional requested at a non-fixed point or with a non-character"""


class DocumentError(WorkbenchError):
    """Input document cannot be parsed or violates the schema"""


class DimensionMismatchError(WorkbenchError):
    """Two independent computations of the same dimension disagree"""
