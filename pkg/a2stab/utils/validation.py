"""Parsing and validation helpers shared by the core modules and the CLI."""

import math
import re

from a2stab.errors import InvalidLevelError, WordParseError
from a2stab.utils.settings import settings

Level = int | float

_LETTERS = frozenset("aAbB")
_INF_TOKENS = frozenset({"inf", "infinity", "∞", "oo"})


def _validate_level(n: Level, finite: bool = False) -> Level:
    """Return ``n`` as an int ``>= 2`` or ``math.inf``; reject anything else."""
    if isinstance(n, float) and math.isinf(n) and n > 0:
        if finite:
            raise InvalidLevelError("operation requires a finite level", n="inf")
        return math.inf
    if isinstance(n, bool) or not isinstance(n, (int, float)) or not math.isfinite(n) or n != int(n):
        raise InvalidLevelError(f"level must be an integer >= 2 or inf, got {n!r}", n=str(n))
    if n < 2:
        raise InvalidLevelError(f"level must be >= 2, got {n}", n=int(n))
    return int(n)


def is_infinite(n: Level) -> bool:
    return isinstance(n, float) and math.isinf(n)


def parse_level(text: str) -> Level:
    """Parse a CLI level literal such as ``"4"`` or ``"inf"``."""
    token = text.strip().lower()
    if token in _INF_TOKENS:
        return math.inf
    try:
        value = int(token)
    except ValueError:
        raise InvalidLevelError(f"level must be an integer >= 2 or inf, got {text!r}", n=text)
    return _validate_level(value)


def parse_complex(text: str) -> complex:
    """
    Parse a complex literal written with ``i`` or ``j``.

    Accepts ``"0.3+0.2i"``, ``"-1"``, ``"i"``, ``"2-i"``, ``"1e-3j"``.
    """
    token = text.strip().replace(" ", "").replace("I", "i").replace("j", "i")
    if not token:
        raise ValueError("empty complex literal")
    token = re.sub(r"(^|[+-])i$", r"\g<1>1i", token)
    try:
        return complex(token.replace("i", "j"))
    except ValueError:
        raise ValueError(f"not a complex number: {text!r}")


def parse_word(text: str, max_length: int | None = None) -> str:
    """
    Expand a braid word over ``{a, A, b, B}`` into a flat letter string.

    Parenthesised groups may carry a non-negative integer power, so
    ``"((ab)^3)"`` expands to ``"ababab"``. Whitespace is ignored. The expansion
    may hold at most ``max_length`` letters (``settings.max_word_length`` by
    default); the limit is checked before a group is repeated.

    Raises
    ------
    WordParseError
        On any other character, unbalanced parentheses, a bad exponent or an
        expansion longer than the limit.

    """
    source = re.sub(r"\s+", "", text)
    limit = settings.max_word_length if max_length is None else max_length
    expanded, pos = _parse_group(source, 0, limit)
    if pos != len(source):
        raise WordParseError(f"unexpected ')' at position {pos}", word=text)
    return expanded


def _check_size(size: int, limit: int, source: str) -> None:
    if size > limit:
        raise WordParseError(f"word expands beyond {limit} letters", word=source, limit=limit)


def _parse_group(source: str, pos: int, limit: int) -> tuple[str, int]:
    out: list[str] = []
    size = 0
    while pos < len(source):
        ch = source[pos]
        if ch in _LETTERS:
            out.append(ch)
            size += 1
            _check_size(size, limit, source)
            pos += 1
        elif ch == "(":
            inner, pos = _parse_group(source, pos + 1, limit)
            if pos >= len(source) or source[pos] != ")":
                raise WordParseError("unbalanced '('", word=source)
            pos += 1
            power = 1
            if pos < len(source) and source[pos] == "^":
                match = re.match(r"\^(\d+)", source[pos:])
                if match is None:
                    raise WordParseError(f"bad exponent at position {pos}", word=source)
                power = int(match.group(1))
                pos += match.end()
            size += len(inner) * power
            _check_size(size, limit, source)
            out.append(inner * power)
        elif ch == ")":
            return "".join(out), pos
        else:
            raise WordParseError(f"invalid letter {ch!r} at position {pos}", word=source)
    return "".join(out), pos


def _validate_simple_index(i: int) -> None:
    if i not in (1, 2):
        raise ValueError(f"simple index must be 1 or 2, got {i!r}")
