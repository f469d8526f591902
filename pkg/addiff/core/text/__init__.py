"""
The .ad text format: tokenizer, parser, serializer and DOT export.
"""

from .dot import export_dot
from .lexer import ParseError, SourceSpan, tokenize
from .parser import parse, parse_or_raise
from .serializer import serialize

__all__ = [
    "ParseError",
    "SourceSpan",
    "export_dot",
    "parse",
    "parse_or_raise",
    "serialize",
    "tokenize",
]
