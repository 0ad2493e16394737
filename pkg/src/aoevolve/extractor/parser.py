"""Declaration-level scanner for Java and code-style AspectJ sources.

Works on the token stream from :func:`strip_noise`. Member declarations are
recognized from their header (the tokens up to the first ``{`` or ``;`` at
parenthesis depth zero); bodies are skipped via the brace match table and
only searched for named local types.

Fingerprints cover the declaration's normalized tokens. For classes and
aspects that means the header plus whatever the body holds that is not
itself a tracked child declaration (fields, constructors unless counted,
initializers, skipped intertype members), so editing a method body marks
the method modified but not its class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from aoevolve.differ import advice_key, aspect_key, class_key, compact_expression, method_key, pointcut_key
from aoevolve.errors import ParseError
from aoevolve.extractor.config import ScanConfig
from aoevolve.extractor.lexer import WORD, ParseDiagnostic, Token, normalized_text, strip_noise
from aoevolve.model import Entity, EntityKind, SourceLocation

FNV64_OFFSET = 0xCBF29CE484222325
FNV64_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF

MODIFIERS = frozenset({
    "public", "protected", "private", "static", "final", "abstract", "native",
    "synchronized", "transient", "volatile", "strictfp", "default", "privileged",
    "sealed",
})
TYPE_KEYWORDS = frozenset({"class", "interface", "enum", "aspect", "record"})
LOCAL_TYPE_KEYWORDS = frozenset({"class", "interface", "enum"})
NOT_A_NAME = frozenset({
    "if", "for", "while", "switch", "catch", "synchronized", "return", "new",
    "throw", "try", "do", "else", "super", "this", "assert", "case", "finally",
})


def fnv1a_64(data: bytes) -> int:
    h = FNV64_OFFSET
    for b in data:
        h = ((h ^ b) * FNV64_PRIME) & _MASK64
    return h


def fingerprint(tokens: Sequence[Token]) -> int:
    return fnv1a_64(normalized_text(tokens).encode("utf-8"))


@dataclass
class _Type:
    kind: str  # class | interface | enum | aspect | record | annotation
    name: str
    path: Tuple[str, ...]
    key: str
    entity_kind: Optional[EntityKind]

    @property
    def owns_methods(self) -> bool:
        return self.entity_kind is not None and self.kind != "record"


@dataclass
class _Parser:
    toks: List[Token]
    file: str
    cfg: ScanConfig
    package: str = ""
    diags: List[ParseDiagnostic] = field(default_factory=list)
    found: List[Tuple[int, Entity]] = field(default_factory=list)
    match: Dict[int, int] = field(default_factory=dict)

    def warn(self, tok_index: int, message: str):
        line = self.toks[min(tok_index, len(self.toks) - 1)].line if self.toks else 1
        self.diags.append(ParseDiagnostic(self.file, line, message))

    # -- structure ---------------------------------------------------------

    def match_braces(self):
        stack = []
        for i, t in enumerate(self.toks):
            if t.text == "{":
                stack.append(i)
            elif t.text == "}":
                if not stack:
                    self.warn(i, "unbalanced braces; remainder of file skipped")
                    del self.toks[i:]
                    break
                self.match[stack.pop()] = i
        end = len(self.toks)
        for i in stack:
            self.warn(i, "'{' never closed; block assumed to run to end of file")
            self.match[i] = end

    def is_punct(self, i: int, text: str) -> bool:
        # literal tokens keep their quotes, so text equality implies punctuation
        return 0 <= i < len(self.toks) and self.toks[i].text == text

    def scan_header(self, i: int, end: int) -> int:
        """Index of the first '{' or ';' at parenthesis depth 0, or ``end``."""
        paren = 0
        while i < end:
            t = self.toks[i]
            if t.text == "(":
                paren += 1
            elif t.text == ")":
                paren = max(0, paren - 1)
            elif t.text == "{":
                if paren == 0:
                    return i
                i = self.block_end(i)
            elif t.text == ";" and paren == 0:
                return i
            i += 1
        return end

    def close_paren(self, i: int, end: int) -> int:
        depth = 0
        while i < end:
            t = self.toks[i]
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                depth -= 1
                if depth == 0:
                    return i
            elif t.text == "{":
                i = self.block_end(i)
            i += 1
        return end

    def block_end(self, i: int) -> int:
        return self.match.get(i, len(self.toks))

    # -- headers -----------------------------------------------------------

    def skip_annotation(self, i: int, end: int) -> int:
        """Index just past an annotation starting at ``i`` ('@')."""
        j = i + 1
        if j < end and self.toks[j].kind == WORD:
            j += 1
            while j + 1 < end and self.is_punct(j, ".") and self.toks[j + 1].kind == WORD:
                j += 2
            if j < end and self.is_punct(j, "("):
                j = self.close_paren(j, end) + 1
        return j

    def core_start(self, i: int, end: int) -> Tuple[int, int]:
        """Skip leading annotations and modifiers.

        Returns ``(first non-annotation index, first core index)``.
        """
        first = None
        while i < end:
            t = self.toks[i]
            if self.is_punct(i, "@") and not (i + 1 < end and self.toks[i + 1].is_word("interface")):
                i = self.skip_annotation(i, end)
                continue
            if first is None:
                first = i
            if t.kind == WORD and t.text in MODIFIERS:
                i += 1
                continue
            break
        return (first if first is not None else i), i

    def top_level(self, a: int, b: int, text: str) -> int:
        """First index in [a, b) holding ``text`` outside parentheses, or -1."""
        paren = 0
        for i in range(a, b):
            t = self.toks[i]
            if t.text == text and paren == 0:
                return i
            if t.text == "(":
                paren += 1
            elif t.text == ")":
                paren = max(0, paren - 1)
        return -1

    def arity(self, open_i: int, close_i: int) -> int:
        if close_i <= open_i + 1:
            return 0
        depth = 0
        commas = 0
        for t in self.toks[open_i + 1:close_i]:
            if t.text in ("(", "<", "[", "{"):
                depth += 1
            elif t.text in (")", ">", "]", "}"):
                depth = max(0, depth - 1)
            elif t.text == "," and depth == 0:
                commas += 1
        return commas + 1

    # -- emission ----------------------------------------------------------

    def emit(self, kind, key, name, line_index, span_tokens, order):
        ent = Entity(
            kind=kind,
            identity_key=key,
            display_name=name,
            location=SourceLocation(self.file, self.toks[line_index].line),
            fingerprint=fingerprint(span_tokens),
        )
        self.found.append((order, ent))

    # -- members -----------------------------------------------------------

    def parse_members(self, i: int, end: int, owner: Optional[_Type]) -> List[Tuple[int, int]]:
        """Parse declarations in [i, end); returns child spans (inclusive)."""
        spans: List[Tuple[int, int]] = []
        while i < end:
            if self.is_punct(i, ";"):
                i += 1
                continue
            term = self.scan_header(i, end)
            if term >= end:
                self.warn(i, "incomplete declaration skipped")
                break
            i = self.member(i, term, end, owner, spans)
        return spans

    def member(self, start: int, term: int, end: int, owner: Optional[_Type], spans) -> int:
        toks = self.toks
        brace = toks[term].text == "{"
        after = self.block_end(term) + 1 if brace else term + 1
        first, c = self.core_start(start, term)
        head = toks[c] if c < term else None
        nxt = toks[c + 1] if c + 1 < term else None

        # type declarations
        if head is not None and brace:
            if self.is_punct(c, "@") and nxt is not None and nxt.is_word("interface"):
                if c + 2 < term and toks[c + 2].kind == WORD:
                    return self.parse_type(start, first, c + 1, term, owner, spans, annotation=True)
            elif head.is_word(*TYPE_KEYWORDS) and nxt is not None and nxt.kind == WORD:
                if head.text != "record" or self.is_punct(c + 2, "("):
                    return self.parse_type(start, first, c, term, owner, spans)

        if owner is None:
            if head is not None and head.is_word("package") and not brace:
                self.package = "".join(t.text for t in toks[c + 1:term])
            elif head is not None and head.is_word("import") and not brace:
                pass
            else:
                self.warn(first, "declaration outside any type skipped")
                if brace:
                    spans.extend(self.scan_region(term + 1, after - 1, None))
            return after

        if head is not None and head.is_word("declare"):
            if nxt is not None and nxt.is_word("parents"):
                self.warn(first, "intertype declaration 'declare parents' skipped")
            return after

        if head is not None and head.is_word("pointcut") and nxt is not None and nxt.kind == WORD \
                and self.is_punct(c + 2, "(") and not brace:
            close = self.close_paren(c + 2, term)
            key = pointcut_key(owner.key, nxt.text, self.arity(c + 2, close))
            self.emit(EntityKind.POINTCUT, key, f"{owner.name}.{nxt.text}", first, toks[start:term + 1], start)
            spans.append((start, term))
            return after

        advice = self.advice_kind(c, term) if head is not None else None
        if advice is not None:
            kind_name, colon = advice
            if owner.kind != "aspect":
                self.warn(first, f"{kind_name} advice outside an aspect skipped")
            elif not brace:
                self.warn(first, f"{kind_name} advice without a body skipped")
            else:
                expr = [t.text for t in toks[colon + 1:term]]
                key = advice_key(owner.key, kind_name, expr)
                self.emit(EntityKind.ADVICE, key, f"{owner.name}.{kind_name}: {compact_expression(expr)}",
                          first, toks[start:after], start)
            spans.append((start, after - 1))
            if brace:
                self.scan_region(term + 1, after - 1, owner)
            return after

        eq = self.top_level(c, term, "=")
        if eq >= 0:
            if eq - 3 >= c and toks[eq - 1].kind == WORD and self.is_punct(eq - 2, "."):
                self.warn(first, f"intertype declaration '{toks[eq - 3].text}.{toks[eq - 1].text}' skipped")
            if brace:
                semi = self.field_end(term, end)
                spans.extend(self.scan_region(term, semi, owner))
                return semi + 1
            return after

        paren = self.top_level(c, term, "(")
        if paren > c:
            name_tok = toks[paren - 1]
            if name_tok.kind == WORD and self.is_punct(paren - 2, "."):
                target = toks[paren - 3].text if paren - 3 >= c else "?"
                self.warn(first, f"intertype declaration '{target}.{name_tok.text}' skipped")
                if brace:
                    spans.extend(self.scan_region(term + 1, after - 1, owner))
                return after
            if name_tok.kind != WORD or name_tok.text in NOT_A_NAME:
                self.warn(first, "unrecognized declaration skipped")
                if brace:
                    spans.extend(self.scan_region(term + 1, after - 1, owner))
                return after
            is_ctor = name_tok.text == owner.name
            if brace:
                self.scan_region(term + 1, after - 1, owner)
            if owner.owns_methods and (not is_ctor or self.cfg.count_constructors):
                close = self.close_paren(paren, term)
                key = method_key(owner.key, name_tok.text, self.arity(paren, close))
                self.emit(EntityKind.METHOD, key, f"{owner.name}.{name_tok.text}", first,
                          toks[start:after], start)
                spans.append((start, after - 1))
            return after

        if not brace:
            last = term - 1
            if last - 2 >= c and toks[last].kind == WORD and self.is_punct(last - 1, "."):
                self.warn(first, f"intertype declaration '{toks[last - 2].text}.{toks[last].text}' skipped")
            return after

        if head is None:
            # initializer block; a leading 'static' was consumed as a modifier
            spans.extend(self.scan_region(term + 1, after - 1, owner))
            return after

        self.warn(first, "unrecognized declaration skipped")
        spans.extend(self.scan_region(term + 1, after - 1, owner))
        return after

    def field_end(self, i: int, end: int) -> int:
        """Index of the ';' ending a field whose initializer contains braces."""
        paren = 0
        while i < end:
            t = self.toks[i]
            if t.text == "{":
                i = self.block_end(i)
            elif t.text == "(":
                paren += 1
            elif t.text == ")":
                paren = max(0, paren - 1)
            elif t.text == ";" and paren == 0:
                return i
            i += 1
        self.warn(end - 1 if end else 0, "field initializer not terminated")
        return end

    def advice_kind(self, c: int, term: int) -> Optional[Tuple[str, int]]:
        """``(advice kind, index of ':')`` when the header is an advice header."""
        toks = self.toks
        head = toks[c]
        if head.is_word("before", "after") and self.is_punct(c + 1, "("):
            close = self.close_paren(c + 1, term)
            kind = head.text
            if head.text == "after" and close + 1 < term:
                follow = toks[close + 1]
                if follow.is_word("returning"):
                    kind = "afterReturning"
                elif follow.is_word("throwing"):
                    kind = "afterThrowing"
        else:
            paren = self.top_level(c, term, "(")
            if paren <= c or not toks[paren - 1].is_word("around"):
                return None
            close = self.close_paren(paren, term)
            kind = "around"
        colon = self.top_level(close + 1, term, ":")
        if colon < 0:
            return None
        return kind, colon

    # -- types -------------------------------------------------------------

    def parse_type(self, start, first, kw, term, owner, spans, annotation=False) -> int:
        toks = self.toks
        keyword = "annotation" if annotation else toks[kw].text
        name = toks[kw + 1].text
        path = (owner.path if owner else ()) + (name,)
        if keyword in ("class", "enum"):
            entity_kind = EntityKind.CLASS
        elif keyword in ("interface", "annotation"):
            entity_kind = EntityKind.CLASS if self.cfg.count_interfaces else None
        elif keyword == "aspect":
            entity_kind = EntityKind.ASPECT
        else:
            entity_kind = None
        key = aspect_key(self.package, path) if keyword == "aspect" else class_key(self.package, path)
        ctx = _Type(keyword, name, path, key, entity_kind)

        close = self.block_end(term)
        body = term + 1
        children: List[Tuple[int, int]] = []
        if keyword == "enum":
            semi = self.enum_constants_end(body, close)
            children.extend(self.scan_region(body, semi, ctx))
            body = semi + 1 if semi < close else close
        children.extend(self.parse_members(body, close, ctx))

        if entity_kind is not None:
            excluded = bytearray(close + 1 - start)
            for a, b in children:
                excluded[a - start:b - start + 1] = b"\x01" * (b - a + 1)
            own = [t for off, t in enumerate(toks[start:close + 1]) if not excluded[off]]
            display = ".".join(([self.package] if self.package else []) + list(path))
            self.emit(entity_kind, key, display, first, own, start)
        spans.append((start, close))
        return close + 1

    def enum_constants_end(self, i: int, close: int) -> int:
        paren = 0
        while i < close:
            t = self.toks[i]
            if t.text == "{":
                i = self.block_end(i)
            elif t.text == "(":
                paren += 1
            elif t.text == ")":
                paren = max(0, paren - 1)
            elif t.text == ";" and paren == 0:
                return i
            i += 1
        return close

    def scan_region(self, i: int, end: int, owner: Optional[_Type]) -> List[Tuple[int, int]]:
        """Find named local types inside an opaque code region."""
        spans: List[Tuple[int, int]] = []
        toks = self.toks
        while i < end:
            t = toks[i]
            if (t.kind == WORD and t.text in LOCAL_TYPE_KEYWORDS and i + 1 < end
                    and toks[i + 1].kind == WORD and not self.is_punct(i - 1, ".")):
                term = self.scan_header(i, end)
                if term < end and toks[term].text == "{":
                    start = i
                    while start > 0 and toks[start - 1].is_word("final", "abstract", "static", "strictfp"):
                        start -= 1
                    i = self.parse_type(start, start, i, term, owner, spans)
                    continue
            i += 1
        return spans


def extract_entities(text: str, file: str, cfg: Optional[ScanConfig] = None):
    """Extract all tracked declarations from one source file.

    Returns ``(entities, diagnostics)`` with entities in document order.
    Raises :class:`ParseError` when ``cfg.strict`` and any recovery was needed.
    """
    cfg = cfg or ScanConfig()
    tokens, diags = strip_noise(text, file)
    p = _Parser(tokens, file, cfg)
    p.diags.extend(diags)
    p.match_braces()
    p.parse_members(0, len(p.toks), None)
    if cfg.strict and p.diags:
        raise ParseError(p.diags)
    p.found.sort(key=lambda pair: pair[0])
    return [e for _, e in p.found], p.diags
