"""Exceptions raised by pointlike_lab.

Every library error carries a stable ``code`` and a ``details`` mapping so the
CLI can report it as a structured JSON object.
"""

from typing import Any, Dict, Optional


class PointlikeLabError(Exception):
    """Base class for all domain and validation errors."""

    code = "error"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": str(self), "details": self.details}


class InvalidTable(PointlikeLabError, ValueError):
    code = "invalid_table"


class NonAssociative(PointlikeLabError, ValueError):
    """A multiplication table failed associativity at (i, j, k)."""

    code = "non_associative"

    def __init__(self, i: int, j: int, k: int):
        super().__init__(
            f"table is not associative: ({i}*{j})*{k} != {i}*({j}*{k})",
            {"witness": [i, j, k]},
        )
        self.witness = (i, j, k)


class NotAHomomorphism(PointlikeLabError, ValueError):
    code = "not_a_homomorphism"


class EmptyOperand(PointlikeLabError, ValueError):
    code = "empty_operand"


class BaseMismatch(PointlikeLabError, ValueError):
    code = "base_mismatch"


class CodDomMismatch(PointlikeLabError, ValueError):
    code = "cod_dom_mismatch"


class DomMismatch(PointlikeLabError, ValueError):
    code = "dom_mismatch"


class NotGenerating(PointlikeLabError, ValueError):
    code = "not_generating"


class NotSurjectiveOntoDomain(PointlikeLabError, ValueError):
    code = "not_surjective_onto_domain"


class NotProductClosed(PointlikeLabError, ValueError):
    code = "not_product_closed"


class MorphismConditionViolated(PointlikeLabError, ValueError):
    code = "morphism_condition_violated"


class PointsMismatch(PointlikeLabError, ValueError):
    """A member of the pseudovariety is not a point of the modulus."""

    code = "points_mismatch"


class ParseError(PointlikeLabError, ValueError):
    """Malformed input file; ``line`` is 1-based (0 when not line-specific)."""

    code = "parse_error"

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}", {"line": line, "reason": reason})
        self.line = line
        self.reason = reason


class ExpressionError(PointlikeLabError, ValueError):
    code = "expression_error"


class SizeCap(PointlikeLabError, RuntimeError):
    """A computation would exceed one of the configured limits."""

    code = "size_cap"

    def __init__(self, what: str, value: int, cap: int):
        super().__init__(
            f"{what} = {value} exceeds the configured maximum of {cap}",
            {"what": what, "value": value, "cap": cap},
        )
        self.what = what
        self.value = value
        self.cap = cap
