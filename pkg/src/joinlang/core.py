"""Core term language: de Bruijn syntax, index shifting, scope resolution.

Binder hints and spans are carried for printing and diagnostics only;
they are excluded from equality, so `==` on terms is alpha-equivalence.
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass, field

from . import surface
from .surface import Span, STerm, SDecl


class InternalError(Exception):
    """A broken kernel invariant; never a user-facing error."""


class ResolveError(Exception):
    def __init__(self, span: Span, rule: str, message: str):
        super().__init__(message)
        self.span = span
        self.rule = rule
        self.message = message


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class Term:
    span: Span = field(compare=False, repr=False)


@dataclass(frozen=True)
class Var(Term):
    index: int


@dataclass(frozen=True)
class Global(Term):
    name: str


@dataclass(frozen=True)
class Univ(Term):
    level: int


@dataclass(frozen=True)
class Pi(Term):
    hint: str = field(compare=False)
    dom: Term = field(default=None)
    cod: Term = field(default=None)


@dataclass(frozen=True)
class Lam(Term):
    hint: str = field(compare=False)
    ann: Term | None = field(default=None)
    body: Term = field(default=None)


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Sigma(Term):
    hint: str = field(compare=False)
    fst: Term = field(default=None)
    snd: Term = field(default=None)


@dataclass(frozen=True)
class Pair(Term):
    fst: Term
    snd: Term


@dataclass(frozen=True)
class Fst(Term):
    arg: Term


@dataclass(frozen=True)
class Snd(Term):
    arg: Term


@dataclass(frozen=True)
class IdT(Term):
    ty: Term
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Refl(Term):
    pass


@dataclass(frozen=True)
class JElim(Term):
    """J ty base motive case end path; based path induction."""

    ty: Term
    base: Term
    motive: Term
    case: Term
    end: Term
    path: Term


@dataclass(frozen=True)
class Nat(Term):
    pass


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class Succ(Term):
    arg: Term


@dataclass(frozen=True)
class NatInd(Term):
    motive: Term
    zcase: Term
    scase: Term
    scrut: Term


@dataclass(frozen=True)
class Bool(Term):
    pass


@dataclass(frozen=True)
class TT(Term):
    pass


@dataclass(frozen=True)
class FF(Term):
    pass


@dataclass(frozen=True)
class BoolInd(Term):
    motive: Term
    tcase: Term
    fcase: Term
    scrut: Term


@dataclass(frozen=True)
class Empty(Term):
    pass


@dataclass(frozen=True)
class Abort(Term):
    motive: Term
    scrut: Term


@dataclass(frozen=True)
class Unit(Term):
    pass


@dataclass(frozen=True)
class Star(Term):
    pass


@dataclass(frozen=True)
class UnitInd(Term):
    motive: Term
    ucase: Term
    scrut: Term


@dataclass(frozen=True)
class GQuot(Term):
    verts: Term
    edges: Term


@dataclass(frozen=True)
class GPt(Term):
    verts: Term
    edges: Term
    vertex: Term


@dataclass(frozen=True)
class GEdg(Term):
    verts: Term
    edges: Term
    src: Term
    dst: Term
    edge: Term


@dataclass(frozen=True)
class GInd(Term):
    verts: Term
    edges: Term
    motive: Term
    pcase: Term
    ecase: Term
    scrut: Term


@dataclass(frozen=True)
class GIndEdg(Term):
    verts: Term
    edges: Term
    motive: Term
    pcase: Term
    ecase: Term
    src: Term
    dst: Term
    edge: Term


@dataclass(frozen=True)
class Let(Term):
    hint: str = field(compare=False)
    ann: Term | None = field(default=None)
    bound: Term = field(default=None)
    body: Term = field(default=None)


@dataclass(frozen=True)
class Annot(Term):
    term: Term
    ty: Term


@dataclass(frozen=True)
class Hole(Term):
    pass


@dataclass(frozen=True)
class ResolvedDecl:
    kind: str  # "define" | "postulate"
    name: str
    ty: Term
    body: Term | None
    tier: str | None
    span: Span


# Binder structure per node class: (field, binders-opened) for each subterm.
_SUBTERMS: dict[type, tuple[tuple[str, int], ...]] = {
    Pi: (("dom", 0), ("cod", 1)),
    Sigma: (("fst", 0), ("snd", 1)),
    Lam: (("ann", 0), ("body", 1)),
    App: (("fn", 0), ("arg", 0)),
    Pair: (("fst", 0), ("snd", 0)),
    Fst: (("arg", 0),),
    Snd: (("arg", 0),),
    IdT: (("ty", 0), ("lhs", 0), ("rhs", 0)),
    JElim: (("ty", 0), ("base", 0), ("motive", 0), ("case", 0), ("end", 0), ("path", 0)),
    Succ: (("arg", 0),),
    NatInd: (("motive", 0), ("zcase", 0), ("scase", 0), ("scrut", 0)),
    BoolInd: (("motive", 0), ("tcase", 0), ("fcase", 0), ("scrut", 0)),
    Abort: (("motive", 0), ("scrut", 0)),
    UnitInd: (("motive", 0), ("ucase", 0), ("scrut", 0)),
    GQuot: (("verts", 0), ("edges", 0)),
    GPt: (("verts", 0), ("edges", 0), ("vertex", 0)),
    GEdg: (("verts", 0), ("edges", 0), ("src", 0), ("dst", 0), ("edge", 0)),
    GInd: (("verts", 0), ("edges", 0), ("motive", 0), ("pcase", 0), ("ecase", 0), ("scrut", 0)),
    GIndEdg: (("verts", 0), ("edges", 0), ("motive", 0), ("pcase", 0), ("ecase", 0),
              ("src", 0), ("dst", 0), ("edge", 0)),
    Let: (("ann", 0), ("bound", 0), ("body", 1)),
    Annot: (("term", 0), ("ty", 0)),
}


def _map_subterms(t: Term, fn) -> Term:
    """Rebuild t with fn(subterm, binders_opened) applied to each child."""
    spec = _SUBTERMS.get(type(t))
    if not spec:
        return t
    changes = {}
    for name, bind in spec:
        sub = getattr(t, name)
        if sub is None:
            continue
        new = fn(sub, bind)
        if new is not sub:
            changes[name] = new
    if not changes:
        return t
    kwargs = {f.name: getattr(t, f.name) for f in t.__dataclass_fields__.values()}  # type: ignore[attr-defined]
    kwargs.update(changes)
    return type(t)(**kwargs)


def shift_free(t: Term, cutoff: int, amount: int) -> Term:
    """Adjust free indices >= cutoff by amount; bound indices are untouched."""
    if isinstance(t, Var):
        if t.index < cutoff:
            return t
        if t.index + amount < 0:
            raise InternalError(f"shift underflow on index {t.index}")
        return Var(t.span, t.index + amount)
    return _map_subterms(t, lambda sub, bind: shift_free(sub, cutoff + bind, amount))


def well_scoped(t: Term, depth: int) -> bool:
    """Decide whether every index is below the ambient binder depth."""
    if isinstance(t, Var):
        return 0 <= t.index < depth
    spec = _SUBTERMS.get(type(t))
    if not spec:
        return True
    return all(
        getattr(t, name) is None or well_scoped(getattr(t, name), depth + bind)
        for name, bind in spec
    )


def globals_of(t: Term, acc: set[str] | None = None) -> set[str]:
    """Collect names of all global references in t."""
    if acc is None:
        acc = set()
    if isinstance(t, Global):
        acc.add(t.name)
    spec = _SUBTERMS.get(type(t))
    if spec:
        for name, _ in spec:
            sub = getattr(t, name)
            if sub is not None:
                globals_of(sub, acc)
    return acc


def mentions_gind_edg(t: Term) -> bool:
    if isinstance(t, GIndEdg):
        return True
    spec = _SUBTERMS.get(type(t))
    if not spec:
        return False
    return any(
        getattr(t, name) is not None and mentions_gind_edg(getattr(t, name))
        for name, _ in spec
    )


# ---------------------------------------------------------------------------
# Scope resolution

_PRIM_CLASS: dict[str, type] = {
    "nat": Nat, "zero": Zero, "bool": Bool, "true": TT, "false": FF,
    "empty": Empty, "unit": Unit, "star": Star, "refl": Refl,
}


def resolve_term(globals_: set[str], env: list[str], t: STerm,
                 lenient: bool = False) -> Term:
    """Turn named surface syntax into well-scoped de Bruijn core syntax."""
    sp = t.span
    match t:
        case surface.SVar(name=name):
            for i, binder in enumerate(reversed(env)):
                if binder == name:
                    return Var(sp, i)
            if name in globals_ or lenient:
                return Global(sp, name)
            hint = difflib.get_close_matches(name, sorted(globals_) + env, n=1)
            extra = f"; did you mean {hint[0]}?" if hint else ""
            raise ResolveError(sp, "unbound-identifier", f"unbound identifier {name}{extra}")
        case surface.SUniv(level=level):
            return Univ(sp, level)
        case surface.SPi(binder=b, dom=dom, cod=cod):
            return Pi(sp, b, resolve_term(globals_, env, dom, lenient),
                      resolve_term(globals_, env + [b], cod, lenient))
        case surface.SSigma(binder=b, fst=fst, snd=snd):
            return Sigma(sp, b, resolve_term(globals_, env, fst, lenient),
                         resolve_term(globals_, env + [b], snd, lenient))
        case surface.SLam(binder=b, ann=ann, body=body):
            ann_t = resolve_term(globals_, env, ann, lenient) if ann is not None else None
            return Lam(sp, b, ann_t, resolve_term(globals_, env + [b], body, lenient))
        case surface.SApp(fn=fn, arg=arg):
            return App(sp, resolve_term(globals_, env, fn, lenient),
                       resolve_term(globals_, env, arg, lenient))
        case surface.SPair(fst=fst, snd=snd):
            return Pair(sp, resolve_term(globals_, env, fst, lenient),
                        resolve_term(globals_, env, snd, lenient))
        case surface.SLet(binder=b, ann=ann, bound=bound, body=body):
            ann_t = resolve_term(globals_, env, ann, lenient) if ann is not None else None
            return Let(sp, b, ann_t, resolve_term(globals_, env, bound, lenient),
                       resolve_term(globals_, env + [b], body, lenient))
        case surface.SAnnot(term=term, ty=ty):
            return Annot(sp, resolve_term(globals_, env, term, lenient),
                         resolve_term(globals_, env, ty, lenient))
        case surface.SHole():
            return Hole(sp)
        case surface.SPrim(op=op, args=args):
            parts = [resolve_term(globals_, env, a, lenient) for a in args]
            cls = _PRIM_CLASS.get(op)
            if cls is not None:
                return cls(sp)
            match op:
                case "succ":
                    return Succ(sp, *parts)
                case "fst":
                    return Fst(sp, *parts)
                case "snd":
                    return Snd(sp, *parts)
                case "abort":
                    return Abort(sp, *parts)
                case "gquot":
                    return GQuot(sp, *parts)
                case "id":
                    return IdT(sp, *parts)
                case "gpt":
                    return GPt(sp, *parts)
                case "unitind":
                    return UnitInd(sp, *parts)
                case "natind":
                    return NatInd(sp, *parts)
                case "boolind":
                    return BoolInd(sp, *parts)
                case "gedg":
                    return GEdg(sp, *parts)
                case "j":
                    return JElim(sp, *parts)
                case "gind":
                    return GInd(sp, *parts)
                case "gind_edg":
                    return GIndEdg(sp, *parts)
    raise InternalError(f"unhandled surface node {t!r}")


def resolve_decl(globals_: set[str], d: SDecl) -> ResolvedDecl:
    """Resolve a declaration, folding its parameter telescope into Pi/Lam."""
    if d.name in globals_:
        raise ResolveError(d.span, "duplicate-name", f"duplicate declaration {d.name}")
    env: list[str] = []
    ty: Term = None  # type: ignore[assignment]
    doms = []
    for name, dom in d.params:
        doms.append((name, resolve_term(globals_, env, dom)))
        env.append(name)
    ty = resolve_term(globals_, env, d.ty)
    for name, dom in reversed(doms):
        ty = Pi(d.span, name, dom, ty)
    body: Term | None = None
    if d.body is not None:
        body = resolve_term(globals_, [name for name, _ in d.params], d.body)
        for name, _ in reversed(d.params):
            body = Lam(d.span, name, None, body)
    return ResolvedDecl(d.kind, d.name, ty, body, d.tier, d.span)
