"""Tolerant Java/AspectJ tokenizer.

Removes comments, keeps string and character literals as single opaque
tokens, and annotates every token with its source line and brace depth.
Only ``{`` and ``}`` affect depth; angle brackets, parentheses and anything
inside literals never do.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from aoevolve.errors import ParseError

WORD = "word"
NUMBER = "number"
STRING = "string"
CHAR = "char"
PUNCT = "punct"


@dataclass(frozen=True)
class ParseDiagnostic:
    file: str
    line: int
    message: str

    def __str__(self) -> str:
        return f"{self.file}:{self.line}: {self.message}"


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    line: int
    # Brace depth the token sits at; a '{' and its matching '}' share a depth.
    depth: int

    @property
    def is_literal(self) -> bool:
        return self.kind in (STRING, CHAR)

    def is_word(self, *texts: str) -> bool:
        return self.kind == WORD and (not texts or self.text in texts)


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c in "_$"


def _is_ident_part(c: str) -> bool:
    return c.isalnum() or c in "_$"


def strip_noise(text: str, file: str = "<string>", strict: bool = False) -> Tuple[List[Token], List[ParseDiagnostic]]:
    """Tokenize ``text`` with comments removed.

    Unterminated block comments and literals extend to end of input and
    produce a diagnostic (or a :class:`ParseError` when ``strict``). An
    unmatched ``}`` is reported and depth is clamped at zero.
    """
    tokens: List[Token] = []
    diags: List[ParseDiagnostic] = []
    n = len(text)
    i = 0
    line = 1
    depth = 0

    def problem(at_line: int, message: str):
        d = ParseDiagnostic(file, at_line, message)
        if strict:
            raise ParseError([d])
        diags.append(d)

    def emit(kind: str, s: str, at_line: int):
        tokens.append(Token(kind, s, at_line, depth))

    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            i += 1
        elif c.isspace():
            i += 1
        elif text.startswith("//", i):
            j = text.find("\n", i)
            i = n if j < 0 else j
        elif text.startswith("/*", i):
            j = text.find("*/", i + 2)
            if j < 0:
                problem(line, "unterminated block comment; treated as extending to end of file")
                j = n
            else:
                j += 2
            line += text.count("\n", i, j)
            i = j
        elif text.startswith('"""', i):
            start_line = line
            j = i + 3
            while j < n and not text.startswith('"""', j):
                j += 2 if text[j] == "\\" else 1
            if j >= n:
                problem(start_line, "unterminated text block; treated as extending to end of file")
                j = n
            else:
                j += 3
            emit(STRING, text[i:j], start_line)
            line += text.count("\n", i, j)
            i = j
        elif c in "\"'":
            kind = STRING if c == '"' else CHAR
            start_line = line
            j = i + 1
            while j < n and text[j] != c:
                j += 2 if text[j] == "\\" else 1
            if j >= n:
                problem(start_line, f"unterminated {kind} literal; treated as extending to end of file")
                j = n
            else:
                j += 1
            emit(kind, text[i:j], start_line)
            line += text.count("\n", i, j)
            i = j
        elif _is_ident_start(c):
            j = i + 1
            while j < n and _is_ident_part(text[j]):
                j += 1
            emit(WORD, text[i:j], line)
            i = j
        elif c.isdigit():
            j = i + 1
            while j < n and (_is_ident_part(text[j]) or (text[j] == "." and text[j + 1 : j + 2].isdigit())):
                j += 1
            emit(NUMBER, text[i:j], line)
            i = j
        elif c == "{":
            emit(PUNCT, c, line)
            depth += 1
            i += 1
        elif c == "}":
            if depth == 0:
                problem(line, "unmatched '}'")
            else:
                depth -= 1
            emit(PUNCT, c, line)
            i += 1
        else:
            emit(PUNCT, c, line)
            i += 1
    return tokens, diags


def normalized_text(tokens) -> str:
    """Comment-free, whitespace-canonical rendering of a token run."""
    return " ".join(t.text for t in tokens)
