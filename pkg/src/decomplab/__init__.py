"""decomplab: build, analyze, and label code-structuring exercises."""

from .lang import (
    parse,
    pretty_print,
    ast_equal,
    LangError,
    ParseError,
    DuplicateFunction,
    MissingMain,
    RecursionNotSupported,
)

__version__ = "0.1.0"

__all__ = [
    "parse",
    "pretty_print",
    "ast_equal",
    "LangError",
    "ParseError",
    "DuplicateFunction",
    "MissingMain",
    "RecursionNotSupported",
    "__version__",
]
