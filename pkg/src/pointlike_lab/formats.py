"""Text formats: .sgp tables, .rel graphs, modulus expressions and JSON reports.

``.sgp``: the first non-comment line is the order n, followed by n rows of n
space-separated 0-based indices. ``#`` starts a comment; a comment of the form
``# labels: a b c`` names the elements.

``.rel``: one pair ``s t`` per line; a line ``closure`` asks for the graph
generated by the listed pairs instead of requiring them to be closed.

Reports are JSON with sorted keys and no whitespace, so identical inputs give
byte-identical output.
"""

import json
import re
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from pointlike_lab.bitsets import member_list
from pointlike_lab.complexes import SComplex
from pointlike_lab.config import Limits, get_limits
from pointlike_lab.errors import ExpressionError, NotSurjectiveOntoDomain, ParseError, SizeCap
from pointlike_lab.laws import SuiteResult
from pointlike_lab.moduli import (
    BuiltinContext,
    BuiltinModulus,
    ContextKind,
    ContextModulus,
    ContextSpecifier,
    EPApproxContext,
    JoinModulus,
    Modulus,
    ModulusContext,
    ModulusKind,
    RestrictedModulus,
)
from pointlike_lab.pointlikes import Certificate, FptcReport, OracleResult
from pointlike_lab.pseudovarieties import PseudovarietyId
from pointlike_lab.relmorph import RelationalMorphism, graph_closure
from pointlike_lab.semigroup import Semigroup, validate_table

SCHEMA_VERSION = "1"

_LABELS = re.compile(r"^#\s*labels:\s*(.*)$")


def _content_lines(text: str) -> Tuple[List[Tuple[int, str]], Optional[List[str]]]:
    lines = []
    labels = None
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        match = _LABELS.match(stripped)
        if match:
            labels = match.group(1).split()
            continue
        content = stripped.split("#", 1)[0].strip()
        if content:
            lines.append((number, content))
    return lines, labels


def _integers(number: int, content: str) -> List[int]:
    try:
        return [int(token) for token in content.split()]
    except ValueError:
        raise ParseError(number, f"expected integers, got '{content}'")


def parse_semigroup(text: str, limits: Optional[Limits] = None) -> Semigroup:
    """Parse a .sgp table.

    Raises:
        ParseError: On malformed text
        SizeCap: If the declared order exceeds ``max_product_order``
        NonAssociative: Forwarded from validate_table
    """
    lines, labels = _content_lines(text)
    if not lines:
        raise ParseError(0, "missing order line")
    number, content = lines[0]
    header = _integers(number, content)
    if len(header) != 1 or header[0] < 0:
        raise ParseError(number, "first line must be a single nonnegative order")
    order = header[0]
    limits = limits or get_limits()
    if order > limits.max_product_order:
        raise SizeCap("semigroup order", order, limits.max_product_order)
    rows = lines[1:]
    if len(rows) != order:
        last = rows[-1][0] if rows else number
        raise ParseError(last, f"expected {order} table rows, found {len(rows)}")

    table = []
    for number, content in rows:
        row = _integers(number, content)
        if len(row) != order:
            raise ParseError(number, f"expected {order} entries, found {len(row)}")
        for v in row:
            if not 0 <= v < order:
                raise ParseError(number, f"entry {v} is not an element index below {order}")
        table.append(row)
    if labels is not None and len(labels) != order:
        raise ParseError(0, f"expected {order} labels, found {len(labels)}")
    return validate_table(order, table, labels, limits)


def serialize_semigroup(s: Semigroup) -> str:
    """Canonical .sgp text; ``parse_semigroup`` inverts it."""
    lines = []
    if s.labels:
        lines.append("# labels: " + " ".join(s.labels))
    lines.append(str(s.order))
    lines.extend(" ".join(str(v) for v in row) for row in s.table)
    return "\n".join(lines) + "\n"


def parse_relmorph(
    text: str, dom: Semigroup, cod: Semigroup, limits: Optional[Limits] = None
) -> RelationalMorphism:
    """Parse a .rel graph between two parsed semigroups.

    Raises:
        ParseError: On malformed lines or out-of-range indices
        NotProductClosed: If the pairs are not closed and ``closure`` is absent
        NotSurjectiveOntoDomain: If some domain element is unrelated
    """
    lines, _ = _content_lines(text)
    close = False
    pairs = []
    for number, content in lines:
        if content.lower() == "closure":
            close = True
            continue
        values = _integers(number, content)
        if len(values) != 2:
            raise ParseError(number, "expected a pair 's t'")
        s, t = values
        if not 0 <= s < dom.order or not 0 <= t < cod.order:
            raise ParseError(number, f"pair ({s},{t}) is out of range")
        pairs.append((s, t))
    if close:
        pairs = graph_closure(dom, cod, pairs, limits)
        missing = [s for s in dom.elements if s not in {p[0] for p in pairs}]
        if missing:
            raise NotSurjectiveOntoDomain(
                f"domain elements {missing} are not related to anything", {"missing": missing}
            )
    return RelationalMorphism.checked(dom, cod, pairs)


def serialize_relmorph(rho: RelationalMorphism) -> str:
    return "".join(f"{s} {t}\n" for s, t in rho.sorted_pairs())


_TOKEN = re.compile(r"\s*([a-z0-9:\-]+|[(),])", re.IGNORECASE)


@dataclass
class _Tokens:
    items: List[str]
    position: int = 0

    def peek(self) -> Optional[str]:
        return self.items[self.position] if self.position < len(self.items) else None

    def take(self, expected: Optional[str] = None) -> str:
        token = self.peek()
        if token is None:
            raise ExpressionError("unexpected end of expression")
        if expected is not None and token != expected:
            raise ExpressionError(f"expected '{expected}', got '{token}'")
        self.position += 1
        return token


def _tokenize(text: str) -> _Tokens:
    items = []
    position = 0
    text = text.strip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if not match:
            raise ExpressionError(f"unexpected character at position {position} in '{text}'")
        items.append(match.group(1).lower())
        position = match.end()
    return _Tokens(items)


def _parameter(name: str, param: str) -> int:
    try:
        value = int(param)
    except ValueError:
        raise ExpressionError(f"parameter of '{name}' is not an integer")
    return value


def _context_atom(word: str) -> Optional[ContextSpecifier]:
    if word.startswith("ctx:"):
        name = word[len("ctx:"):]
        try:
            return BuiltinContext(ContextKind(name))
        except ValueError:
            raise ExpressionError(f"unknown context '{name}'")
    if word.startswith("epapprox:"):
        pv_text, _, bound = word[len("epapprox:"):].rpartition(":")
        if not pv_text:
            raise ExpressionError("epapprox needs the form epapprox:PV:k")
        return EPApproxContext(PseudovarietyId.parse(pv_text), _parameter("epapprox", bound))
    return None


def _parse_modulus(tokens: _Tokens) -> Modulus:
    word = tokens.take()
    if word in ("join", "restrict"):
        tokens.take("(")
        left = _parse_modulus(tokens)
        tokens.take(",")
        right = _parse_modulus(tokens) if word == "join" else _parse_context(tokens)
        tokens.take(")")
        return JoinModulus(left, right) if word == "join" else RestrictedModulus(left, right)

    context = _context_atom(word)
    if context is not None:
        return ContextModulus(context)

    name, _, param = word.partition(":")
    try:
        kind = ModulusKind(name)
    except ValueError:
        raise ExpressionError(f"unknown modulus '{word}'")
    return BuiltinModulus(kind, _parameter(name, param) if param else None)


def _parse_context(tokens: _Tokens) -> ContextSpecifier:
    word = tokens.peek()
    if word is not None:
        context = _context_atom(word)
        if context is not None:
            tokens.take()
            return context
    return ModulusContext(_parse_modulus(tokens))


def _parse_whole(text: str, parse):
    tokens = _tokenize(text)
    result = parse(tokens)
    if tokens.peek() is not None:
        raise ExpressionError(f"unexpected '{tokens.peek()}' after expression")
    return result


def parse_modulus(text: str) -> Modulus:
    """Parse a modulus expression such as ``join(grp,restrict(jcl,ctx:loc))``.

    Raises:
        ExpressionError: On malformed expressions
    """
    return _parse_whole(text, _parse_modulus)


def parse_context(text: str) -> ContextSpecifier:
    """Parse a context: ``ctx:NAME``, ``epapprox:PV:k`` or a modulus ⟨Λ⟩."""
    return _parse_whole(text, _parse_context)


def faces_to_lists(faces) -> List[List[int]]:
    """Faces as ascending index lists, sorted lexicographically."""
    return sorted(member_list(face) for face in faces)


def complex_to_dict(k: SComplex) -> Dict[str, Any]:
    return {
        "base_order": k.base.order,
        "max_faces": faces_to_lists(k.max_faces),
        "face_count": k.face_count,
    }


def semigroup_to_dict(s: Semigroup) -> Dict[str, Any]:
    result: Dict[str, Any] = {"order": s.order, "table": [list(row) for row in s.table]}
    if s.labels:
        result["labels"] = list(s.labels)
    return result


def relmorph_to_dict(rho: RelationalMorphism) -> Dict[str, Any]:
    return {
        "dom_order": rho.dom.order,
        "cod_order": rho.cod.order,
        "graph": [list(p) for p in rho.sorted_pairs()],
    }


def make_report(command: str, inputs: Dict[str, Any], result: Any) -> Dict[str, Any]:
    return {"schema": SCHEMA_VERSION, "command": command, "inputs": inputs, "result": result}


def emit_json(result: Any) -> str:
    """Deterministic JSON text for a report or any library value."""
    return json.dumps(to_jsonable(result), sort_keys=True, separators=(",", ":"))


def to_jsonable(value: Any) -> Any:
    """Convert library values to JSON-ready structures."""
    if isinstance(value, SComplex):
        return complex_to_dict(value)
    if isinstance(value, Semigroup):
        return semigroup_to_dict(value)
    if isinstance(value, RelationalMorphism):
        return relmorph_to_dict(value)
    if isinstance(value, (Modulus, ContextSpecifier, PseudovarietyId)):
        return str(value)
    if isinstance(value, OracleResult):
        return {
            "value": complex_to_dict(value.value),
            "label": "upper",
            "pseudovariety": value.pseudovariety.name,
            "codomain_bound": value.codomain_bound,
            "codomains_used": value.codomains_used,
            "graphs_intersected": value.graphs_intersected,
            "witness": relmorph_to_dict(value.witness) if value.witness is not None else None,
        }
    if isinstance(value, Certificate):
        return {
            "pseudovariety": value.pseudovariety.name,
            "modulus": value.modulus.expression(),
            "lower": complex_to_dict(value.lower),
            "upper": to_jsonable(value.upper),
            "exact": value.exact,
            "approximate": value.approximate,
            "value": complex_to_dict(value.lower) if value.exact else None,
        }
    if isinstance(value, FptcReport):
        return {
            "context": value.context,
            "modulus": value.modulus,
            "pseudovariety": value.pseudovariety.name,
            "order": value.order,
            "checked": value.checked,
            "counterexamples": value.counterexamples,
            "passed": value.passed,
        }
    if isinstance(value, SuiteResult):
        return {
            "name": value.name,
            "order": value.order,
            "checked": value.checked,
            "violations": list(value.violations),
            "passed": value.passed,
        }
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value
