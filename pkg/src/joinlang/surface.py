"""Lexing and parsing of the human-facing syntax for `.jt` files.

The surface tree keeps binder names verbatim; they carry no semantic
content and are erased by `core.resolve`.  Spans are byte offsets into
the UTF-8 encoding of the source.
"""

from __future__ import annotations

from dataclasses import dataclass, field


Span = tuple[int, int]


class SourceError(Exception):
    """A lexical or syntax error, with a span and a short message."""

    def __init__(self, span: Span, message: str):
        super().__init__(message)
        self.span = span
        self.message = message


# ---------------------------------------------------------------------------
# Tokens

@dataclass(frozen=True)
class Token:
    kind: str
    span: Span
    text: str = ""
    value: int = 0

    def __repr__(self):
        if self.kind in ("IDENT", "STRING", "TIER"):
            return f"{self.kind} {self.text}"
        if self.kind in ("UNIV", "INT"):
            return f"{self.kind} {self.value}"
        return self.kind


KEYWORDS = {
    "define": "DEFINE",
    "postulate": "POSTULATE",
    "import": "IMPORT",
    "let": "LET",
    "in": "IN",
    "forall": "PI",
    "exists": "SIGMA",
    "fst": "FST",
    "snd": "SND",
    "Id": "ID",
    "refl": "REFL",
    "J": "J",
    "Nat": "NAT",
    "zero": "ZERO",
    "succ": "SUCC",
    "natind": "NATIND",
    "Bool": "BOOL",
    "true": "TRUE",
    "false": "FALSE",
    "boolind": "BOOLIND",
    "Empty": "EMPTY",
    "abort": "ABORT",
    "Unit": "UNIT",
    "star": "STAR",
    "unitind": "UNITIND",
    "GQuot": "GQUOT",
    "gpt": "GPT",
    "gedg": "GEDG",
    "gind": "GIND",
    "gind_edg": "GINDEDG",
    "U0": "UNIV0",
    "U1": "UNIV1",
    "U2": "UNIV2",
}

_SUBSCRIPTS = "₀₁₂₃₄₅₆₇₈₉"


def _ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _ident_cont(ch: str) -> bool:
    return ch.isalnum() or ch in "_'" or ch in _SUBSCRIPTS


def tokenize(source: str) -> list[Token]:
    """Split source text into tokens; comments are dropped, tier directives kept."""
    toks: list[Token] = []
    i = 0
    byte = 0  # running byte offset of source[i]
    n = len(source)

    def blen(s: str) -> int:
        return len(s.encode("utf-8"))

    while i < n:
        ch = source[i]
        start = byte
        if ch in " \t\r\n":
            i += 1
            byte += blen(ch)
            continue
        if source.startswith("--", i):
            while i < n and source[i] != "\n":
                byte += blen(source[i])
                i += 1
            continue
        if source.startswith("{-#", i):
            j = source.find("#-}", i + 3)
            if j < 0:
                raise SourceError((start, start + 3), "unterminated directive")
            inner = source[i + 3 : j].split()
            if len(inner) != 2 or inner[0] != "TIER" or inner[1] not in ("A", "B", "C"):
                raise SourceError(
                    (start, start + blen(source[i : j + 3])),
                    "malformed directive; expected {-# TIER A|B|C #-}",
                )
            byte += blen(source[i : j + 3])
            toks.append(Token("TIER", (start, byte), text=inner[1]))
            i = j + 3
            continue
        if source.startswith("{-", i):
            depth = 1
            j = i + 2
            while j < n and depth > 0:
                if source.startswith("{-", j):
                    depth += 1
                    j += 2
                elif source.startswith("-}", j):
                    depth -= 1
                    j += 2
                else:
                    j += 1
            if depth > 0:
                raise SourceError((start, start + 2), "unterminated block comment")
            byte += blen(source[i:j])
            i = j
            continue
        if source.startswith(":=", i):
            toks.append(Token("ASSIGN", (start, start + 2)))
            i += 2
            byte += 2
            continue
        if source.startswith("->", i):
            toks.append(Token("ARROW", (start, start + 2)))
            i += 2
            byte += 2
            continue
        simple = {
            "(": "LPAREN",
            ")": "RPAREN",
            ":": "COLON",
            ",": "COMMA",
            "→": "ARROW",
            "λ": "LAMBDA",
            "\\": "LAMBDA",
            "Π": "PI",
            "Σ": "SIGMA",
        }
        if ch in simple:
            byte += blen(ch)
            toks.append(Token(simple[ch], (start, byte)))
            i += 1
            continue
        if ch == '"':
            j = i + 1
            while j < n and source[j] != '"':
                if source[j] == "\n":
                    raise SourceError((start, start + 1), "unterminated string literal")
                j += 1
            if j >= n:
                raise SourceError((start, start + 1), "unterminated string literal")
            text = source[i + 1 : j]
            byte += blen(source[i : j + 1])
            toks.append(Token("STRING", (start, byte), text=text))
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            text = source[i:j]
            byte += len(text)
            toks.append(Token("INT", (start, byte), value=int(text)))
            i = j
            continue
        if _ident_start(ch):
            j = i
            while j < n and _ident_cont(source[j]):
                j += 1
            text = source[i:j]
            byte += blen(text)
            i = j
            if text == "_":
                toks.append(Token("HOLE", (start, byte)))
            elif text in KEYWORDS:
                kind = KEYWORDS[text]
                if kind.startswith("UNIV"):
                    toks.append(Token("UNIV", (start, byte), value=int(kind[4])))
                else:
                    toks.append(Token(kind, (start, byte)))
            else:
                toks.append(Token("IDENT", (start, byte), text=text))
            continue
        raise SourceError((start, start + blen(ch)), f"illegal character {ch!r}")
    toks.append(Token("EOF", (byte, byte)))
    return toks


# ---------------------------------------------------------------------------
# Surface terms

@dataclass(frozen=True)
class STerm:
    span: Span = field(compare=False)


@dataclass(frozen=True)
class SVar(STerm):
    name: str


@dataclass(frozen=True)
class SUniv(STerm):
    level: int


@dataclass(frozen=True)
class SPi(STerm):
    binder: str
    dom: STerm
    cod: STerm


@dataclass(frozen=True)
class SSigma(STerm):
    binder: str
    fst: STerm
    snd: STerm


@dataclass(frozen=True)
class SLam(STerm):
    binder: str
    ann: STerm | None
    body: STerm


@dataclass(frozen=True)
class SApp(STerm):
    fn: STerm
    arg: STerm


@dataclass(frozen=True)
class SPair(STerm):
    fst: STerm
    snd: STerm


@dataclass(frozen=True)
class SLet(STerm):
    binder: str
    ann: STerm | None
    bound: STerm
    body: STerm


@dataclass(frozen=True)
class SAnnot(STerm):
    term: STerm
    ty: STerm


@dataclass(frozen=True)
class SHole(STerm):
    pass


@dataclass(frozen=True)
class SPrim(STerm):
    """A saturated primitive form: universe-free keyword with fixed arity."""

    op: str
    args: tuple[STerm, ...]


# op -> arity; 0-ary ops are atoms, the rest collect argument atoms greedily
PRIM_ARITY = {
    "nat": 0, "zero": 0, "bool": 0, "true": 0, "false": 0,
    "empty": 0, "unit": 0, "star": 0, "refl": 0,
    "succ": 1, "fst": 1, "snd": 1,
    "abort": 2, "gquot": 2,
    "id": 3, "gpt": 3, "unitind": 3,
    "natind": 4, "boolind": 4,
    "gedg": 5,
    "j": 6, "gind": 6,
    "gind_edg": 8,
}

_TOKEN_PRIM = {
    "NAT": "nat", "ZERO": "zero", "BOOL": "bool", "TRUE": "true",
    "FALSE": "false", "EMPTY": "empty", "UNIT": "unit", "STAR": "star",
    "REFL": "refl", "SUCC": "succ", "FST": "fst", "SND": "snd",
    "ABORT": "abort", "GQUOT": "gquot", "ID": "id", "GPT": "gpt",
    "UNITIND": "unitind", "NATIND": "natind", "BOOLIND": "boolind",
    "GEDG": "gedg", "J": "j", "GIND": "gind", "GINDEDG": "gind_edg",
}


@dataclass(frozen=True)
class SDecl:
    kind: str  # "define" | "postulate"
    name: str
    params: tuple[tuple[str, STerm], ...]
    ty: STerm
    body: STerm | None
    tier: str | None
    span: Span = field(compare=False)


@dataclass(frozen=True)
class SModule:
    imports: tuple[tuple[str, Span], ...]
    decls: tuple[SDecl, ...]


# ---------------------------------------------------------------------------
# Parser

_ATOM_STARTS = {"IDENT", "UNIV", "INT", "LPAREN", "HOLE"} | set(_TOKEN_PRIM)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise SourceError(tok.span, f"expected {kind}, found {tok!r}")
        return self.next()

    # --- declarations ---

    def module(self) -> SModule:
        imports: list[tuple[str, Span]] = []
        decls: list[SDecl] = []
        while self.peek().kind != "EOF":
            tok = self.peek()
            if tok.kind == "IMPORT":
                self.next()
                s = self.expect("STRING")
                imports.append((s.text, s.span))
                continue
            tier = None
            if tok.kind == "TIER":
                tier = self.next().text
                tok = self.peek()
            if tok.kind not in ("DEFINE", "POSTULATE"):
                raise SourceError(
                    tok.span, f"expected define or postulate, found {tok!r}"
                )
            decls.append(self.declaration(tier))
        return SModule(tuple(imports), tuple(decls))

    def declaration(self, tier: str | None) -> SDecl:
        kw = self.next()  # DEFINE or POSTULATE
        name = self.expect("IDENT")
        params: list[tuple[str, STerm]] = []
        while self.peek().kind == "LPAREN":
            for binder, ty in self.binder_group():
                params.append((binder, ty))
        self.expect("COLON")
        ty = self.term()
        body = None
        if kw.kind == "DEFINE":
            self.expect("ASSIGN")
            body = self.term()
        end = self.toks[self.pos - 1].span[1]
        return SDecl(
            kind="define" if kw.kind == "DEFINE" else "postulate",
            name=name.text,
            params=tuple(params),
            ty=ty,
            body=body,
            tier=tier,
            span=(kw.span[0], end),
        )

    def binder_group(self) -> list[tuple[str, STerm]]:
        """Parse `( x y : T )` into [(x, T), (y, T)]."""
        self.expect("LPAREN")
        names = []
        while self.peek().kind in ("IDENT", "HOLE"):
            tok = self.next()
            names.append("_" if tok.kind == "HOLE" else tok.text)
        if not names:
            raise SourceError(self.peek().span, "expected binder name")
        self.expect("COLON")
        ty = self.term()
        self.expect("RPAREN")
        return [(nm, ty) for nm in names]

    # --- terms ---

    def term(self) -> STerm:
        tok = self.peek()
        if tok.kind == "LAMBDA":
            return self.lam()
        if tok.kind in ("PI", "SIGMA"):
            return self.binder_form(tok.kind)
        if tok.kind == "LET":
            return self.let()
        return self.arrow()

    def lam(self) -> STerm:
        lam = self.expect("LAMBDA")
        binders: list[tuple[str, STerm | None]] = []
        while True:
            tok = self.peek()
            if tok.kind in ("IDENT", "HOLE"):
                self.next()
                binders.append(("_" if tok.kind == "HOLE" else tok.text, None))
            elif tok.kind == "LPAREN":
                for nm, ty in self.binder_group():
                    binders.append((nm, ty))
            else:
                break
        if not binders:
            raise SourceError(self.peek().span, "expected lambda binder")
        self.expect("ARROW")
        body = self.term()
        for nm, ann in reversed(binders):
            body = SLam((lam.span[0], body.span[1]), nm, ann, body)
        return body

    def binder_form(self, kind: str) -> STerm:
        head = self.next()
        groups: list[tuple[str, STerm]] = []
        while self.peek().kind == "LPAREN":
            groups.extend(self.binder_group())
        if not groups:
            raise SourceError(self.peek().span, "expected ( binder : type )")
        self.expect("ARROW")
        body = self.term()
        cls = SPi if kind == "PI" else SSigma
        for nm, ty in reversed(groups):
            body = cls((head.span[0], body.span[1]), nm, ty, body)
        return body

    def let(self) -> STerm:
        kw = self.expect("LET")
        name = self.next()
        if name.kind not in ("IDENT", "HOLE"):
            raise SourceError(name.span, f"expected let binder, found {name!r}")
        ann = None
        if self.peek().kind == "COLON":
            self.next()
            ann = self.term()
        self.expect("ASSIGN")
        bound = self.term()
        self.expect("IN")
        body = self.term()
        binder = "_" if name.kind == "HOLE" else name.text
        return SLet((kw.span[0], body.span[1]), binder, ann, bound, body)

    def arrow(self) -> STerm:
        lhs = self.app()
        if self.peek().kind == "ARROW":
            self.next()
            rhs = self.term()
            return SPi((lhs.span[0], rhs.span[1]), "_", lhs, rhs)
        return lhs

    def app(self) -> STerm:
        head = self.prefix()
        while self.peek().kind in _ATOM_STARTS:
            arg = self.prefix()
            head = SApp((head.span[0], arg.span[1]), head, arg)
        return head

    def prefix(self) -> STerm:
        """An atom, or a primitive keyword applied to its fixed argument count."""
        tok = self.peek()
        op = _TOKEN_PRIM.get(tok.kind)
        if op is None:
            return self.atom()
        self.next()
        arity = PRIM_ARITY[op]
        args = []
        for k in range(arity):
            if self.peek().kind not in _ATOM_STARTS:
                raise SourceError(
                    self.peek().span,
                    f"{op} expects {arity} argument(s), found {k}",
                )
            args.append(self.prefix())
        end = args[-1].span[1] if args else tok.span[1]
        return SPrim((tok.span[0], end), op, tuple(args))

    def atom(self) -> STerm:
        tok = self.next()
        if tok.kind == "IDENT":
            return SVar(tok.span, tok.text)
        if tok.kind == "UNIV":
            return SUniv(tok.span, tok.value)
        if tok.kind == "HOLE":
            return SHole(tok.span)
        if tok.kind == "INT":
            term: STerm = SPrim(tok.span, "zero", ())
            for _ in range(tok.value):
                term = SPrim(tok.span, "succ", (term,))
            return term
        if tok.kind == "LPAREN":
            inner = self.term()
            nxt = self.peek()
            if nxt.kind == "COMMA":
                parts = [inner]
                while self.peek().kind == "COMMA":
                    self.next()
                    parts.append(self.term())
                close = self.expect("RPAREN")
                pair = parts[-1]
                for part in reversed(parts[:-1]):
                    pair = SPair((tok.span[0], close.span[1]), part, pair)
                return pair
            if nxt.kind == "COLON":
                self.next()
                ty = self.term()
                close = self.expect("RPAREN")
                return SAnnot((tok.span[0], close.span[1]), inner, ty)
            self.expect("RPAREN")
            return inner
        raise SourceError(tok.span, f"expected a term, found {tok!r}")


def parse_term(source: str) -> STerm:
    """Parse a single term (used by the CLI normalize command)."""
    parser = _Parser(tokenize(source))
    term = parser.term()
    parser.expect("EOF")
    return term


def parse_module(source: str) -> SModule:
    """Parse a whole `.jt` module into imports and declarations."""
    return _Parser(tokenize(source)).module()
