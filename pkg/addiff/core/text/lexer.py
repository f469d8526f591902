"""
Tokenizer for the .ad diagram format.
"""

from dataclasses import dataclass, field
from typing import List, Tuple

KEYWORDS = frozenset(
    {
        "activity",
        "input",
        "local",
        "bool",
        "enum",
        "initial",
        "final",
        "action",
        "decision",
        "merge",
        "fork",
        "join",
        "true",
        "false",
    }
)

# longest first so "->" wins over "-" and "<=" over "<"
PUNCTUATION = (
    "->",
    "..",
    "!=",
    "<=",
    ">=",
    "{",
    "}",
    "(",
    ")",
    "[",
    "]",
    ";",
    ":",
    ",",
    "=",
    "<",
    ">",
    "&",
    "|",
    "!",
    "+",
    "-",
)

IDENT = "IDENT"
INT = "INT"
STRING = "STRING"
EOF = "EOF"


@dataclass(frozen=True)
class SourceSpan:
    """1-based position of a token in the source text"""

    line: int
    column: int
    length: int = 0

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class ParseError:
    """A lexical or syntactic error"""

    span: SourceSpan
    message: str
    expected: Tuple[str, ...] = field(default=())

    def __str__(self) -> str:
        text = f"{self.span}: {self.message}"
        if self.expected:
            text += " (expected " + ", ".join(self.expected) + ")"
        return text


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan

    def describe(self) -> str:
        if self.kind == EOF:
            return "end of input"
        return repr(self.text)


def tokenize(text: str) -> Tuple[List[Token], List[ParseError]]:
    """
    Split source text into tokens.

    Args:
        text: The diagram source

    Returns:
        The tokens (always ending with EOF) and the lexical errors found
    """
    tokens: List[Token] = []
    errors: List[ParseError] = []
    line, column, i = 1, 1, 0
    n = len(text)

    def advance(count: int) -> None:
        nonlocal i, line, column
        for _ in range(count):
            if text[i] == "\n":
                line += 1
                column = 1
            else:
                column += 1
            i += 1

    while i < n:
        ch = text[i]
        if ch in " \t\r\n﻿":
            advance(1)
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                advance(1)
            continue

        start = SourceSpan(line, column)
        if ch.isascii() and ch.isalpha():
            j = i
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            tokens.append(Token(word if word in KEYWORDS else IDENT, word, SourceSpan(line, column, j - i)))
            advance(j - i)
            continue
        if ch.isascii() and ch.isdigit():
            j = i
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            tokens.append(Token(INT, text[i:j], SourceSpan(line, column, j - i)))
            advance(j - i)
            continue
        if ch == '"':
            j = i + 1
            chars: List[str] = []
            closed = False
            while j < n and text[j] != "\n":
                if text[j] == "\\" and j + 1 < n and text[j + 1] in '"\\':
                    chars.append(text[j + 1])
                    j += 2
                    continue
                if text[j] == '"':
                    closed = True
                    break
                chars.append(text[j])
                j += 1
            if not closed:
                errors.append(ParseError(start, "unterminated string literal"))
                advance(j - i)
                continue
            tokens.append(Token(STRING, "".join(chars), SourceSpan(line, column, j + 1 - i)))
            advance(j + 1 - i)
            continue

        for punct in PUNCTUATION:
            if text.startswith(punct, i):
                tokens.append(Token(punct, punct, SourceSpan(line, column, len(punct))))
                advance(len(punct))
                break
        else:
            errors.append(ParseError(SourceSpan(line, column, 1), f"unexpected character {ch!r}"))
            advance(1)

    tokens.append(Token(EOF, "", SourceSpan(line, column, 0)))
    return tokens, errors
