"""Low-level grammar of problem files: lines, labels, linear combinations.

Every helper reports errors as ``ParseError(line, column, message)`` with
1-based columns into the original line.
"""
import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple
from src.graded.field import Field, FieldElement
from src.utils.errors import FieldError, ParseError

LABEL = r"[A-Za-z_][A-Za-z0-9_']*"
SCALAR = r"\d+(?:/\d+)?"

_LABEL_RE = re.compile(LABEL + r"$")
_TERM_RE = re.compile(rf"(?P<sign>[+-])?\s*(?:(?P<scalar>{SCALAR})\s*\*\s*)?(?P<label>{LABEL})")
_BARE_SCALAR_RE = re.compile(rf"(?P<sign>[+-])?\s*(?P<scalar>{SCALAR})\s*$")


@dataclass(frozen=True)
class Line:
    """A non-blank line with its comment removed."""

    number: int
    text: str

    def column_of(self, fragment: str, start: int = 0) -> int:
        index = self.text.find(fragment, start)
        return index + 1 if index >= 0 else 1

    def words(self) -> List[str]:
        return self.text.split()


def iter_lines(text: str) -> Iterator[Line]:
    """Yield the non-blank lines of a document, comments stripped.

    Raises:
        ParseError: On a non-ASCII character
    """
    normalized = text.replace("\r\n", "\n").replace("\r", "\n")
    for number, raw in enumerate(normalized.split("\n"), start=1):
        for column, char in enumerate(raw, start=1):
            if ord(char) > 127:
                raise ParseError(number, column, f"non-ASCII character {char!r}")
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            yield Line(number, body)


def require_label(word: str, line: Line, start: int = 0) -> str:
    if not _LABEL_RE.match(word):
        raise ParseError(line.number, line.column_of(word, start), f"'{word}' is not a valid name")
    return word


def parse_int(word: str, line: Line, what: str) -> int:
    try:
        return int(word)
    except ValueError:
        raise ParseError(line.number, line.column_of(word), f"{what} must be an integer, got '{word}'")


def parse_scalar(text: str, field: Field, line: Line, column: int) -> FieldElement:
    try:
        return field.parse_scalar(text)
    except FieldError as exc:
        raise ParseError(line.number, column, str(exc))


def split_assignment(line: Line, keyword_end: int = 0) -> Tuple[str, str, int]:
    """Split ``lhs = rhs``; returns (lhs, rhs, column of rhs)."""
    index = line.text.find("=", keyword_end)
    if index < 0:
        raise ParseError(line.number, len(line.text) + 1, "expected '='")
    return line.text[:index], line.text[index + 1:], index + 2


def parse_linear_combination(text: str, field: Field, line: Line, column: int) -> Dict[str, FieldElement]:
    """Parse ``2*f - g + 1/3*h`` (or ``0``) into label -> coefficient.

    Repeated labels are summed; zero coefficients are dropped.

    Args:
        text: The combination
        field: Field of the coefficients
        line: Source line, for error locations
        column: 1-based column where ``text`` starts in the line
    """
    if _BARE_SCALAR_RE.match(text.strip()) and field.is_zero(
            parse_scalar(text.strip().lstrip("+-").strip(), field, line, column)):
        return {}
    out: Dict[str, FieldElement] = {}
    position = 0
    first = True
    while True:
        while position < len(text) and text[position].isspace():
            position += 1
        if position >= len(text):
            break
        match = _TERM_RE.match(text, position)
        if match is None or (not first and match.group("sign") is None):
            raise ParseError(line.number, column + position, "expected a term such as 2*f or - g")
        value = field.one
        if match.group("scalar"):
            value = parse_scalar(match.group("scalar"), field, line, column + match.start("scalar"))
        if match.group("sign") == "-":
            value = -value
        label = match.group("label")
        out[label] = out.get(label, field.zero) + value
        position = match.end()
        first = False
    if first:
        raise ParseError(line.number, column, "empty linear combination")
    return {label: value for label, value in out.items() if not field.is_zero(value)}


def parse_tuple(text: str, line: Line, column: int) -> Tuple[str, ...]:
    """Parse ``(f_d, ..., f_1)``."""
    body = text.strip()
    offset = column + (len(text) - len(text.lstrip()))
    if not (body.startswith("(") and body.endswith(")")):
        raise ParseError(line.number, offset, "expected a tuple such as (g, f)")
    items = [item.strip() for item in body[1:-1].split(",")]
    if not items or any(not item for item in items):
        raise ParseError(line.number, offset, "empty entry in tuple")
    for item in items:
        if not _LABEL_RE.match(item):
            raise ParseError(line.number, line.column_of(item, offset - 1), f"'{item}' is not a valid label")
    return tuple(items)


def parse_coordinates(text: str, field: Field, line: Line, column: int) -> List[FieldElement]:
    """Parse ``[c1 c2 ...]`` into field elements."""
    body = text.strip()
    offset = column + (len(text) - len(text.lstrip()))
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError(line.number, offset, "expected coordinates such as [1 0]")
    coords = []
    for word in body[1:-1].replace(",", " ").split():
        coords.append(parse_scalar(word, field, line, line.column_of(word, offset - 1)))
    return coords
