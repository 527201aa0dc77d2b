"""Tokenizer for the Cypher subset."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

KEYWORDS = {"MATCH", "WHERE", "RETURN", "AND", "OR", "CONTAINS", "IN", "AS"}

# Recognized so the parser can reject them with a clear message instead of a
# generic syntax error.
UNSUPPORTED_KEYWORDS = {
    "OPTIONAL", "WITH", "ORDER", "BY", "SKIP", "LIMIT", "DISTINCT", "NOT",
    "CREATE", "MERGE", "DELETE", "DETACH", "SET", "REMOVE", "UNWIND", "CALL",
    "UNION", "FOREACH", "DROP", "XOR", "COUNT",
}

_PUNCT = set("()[]{}:,.|=-<>")
_ESCAPES = {"n": "\n", "t": "\t", "\\": "\\", "'": "'", '"': '"'}


class ParseError(Exception):
    def __init__(self, offset: int, found: str, expected: str):
        super().__init__(f"at offset {offset}: found {found!r}, expected {expected}")
        self.offset = offset
        self.found = found
        self.expected = expected


@dataclass(frozen=True)
class Token:
    kind: str  # keyword | identifier | string | int | float | punct | eof
    text: str  # verbatim source slice
    start: int
    end: int
    value: object = None  # decoded value for string/int/float tokens


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in ("'", '"'):
            tokens.append(_lex_string(text, i))
            i = tokens[-1].end
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            tokens.append(_lex_number(text, i))
            i = tokens[-1].end
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "keyword" if word.upper() in KEYWORDS else "identifier"
            tokens.append(Token(kind, word, i, j))
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(Token("punct", ch, i, i + 1))
            i += 1
            continue
        raise ParseError(i, ch, "a valid token")
    tokens.append(Token("eof", "", n, n))
    return tokens


def _lex_string(text: str, start: int) -> Token:
    quote = text[start]
    out = []
    i = start + 1
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            if i + 1 >= len(text):
                break
            out.append(_ESCAPES.get(text[i + 1], text[i + 1]))
            i += 2
            continue
        if ch == quote:
            return Token("string", text[start:i + 1], start, i + 1, value="".join(out))
        out.append(ch)
        i += 1
    raise ParseError(start, text[start:start + 16], "a terminated string literal")


def _lex_number(text: str, start: int) -> Token:
    i = start
    if text[i] == "-":
        i += 1
    while i < len(text) and text[i].isdigit():
        i += 1
    is_float = False
    if i < len(text) and text[i] == "." and i + 1 < len(text) and text[i + 1].isdigit():
        is_float = True
        i += 1
        while i < len(text) and text[i].isdigit():
            i += 1
    if i < len(text) and text[i] in "eE":
        j = i + 1
        if j < len(text) and text[j] in "+-":
            j += 1
        if j < len(text) and text[j].isdigit():
            is_float = True
            i = j
            while i < len(text) and text[i].isdigit():
                i += 1
    lexeme = text[start:i]
    if is_float:
        return Token("float", lexeme, start, i, value=float(lexeme))
    return Token("int", lexeme, start, i, value=int(lexeme))
