"""Printing of core terms back to surface syntax.

The output reparses to an alpha-equivalent term.  Binder hints are kept
verbatim unless they would shadow an enclosing binder, collide with a
keyword, or capture a global reference; renamed binders get Unicode
subscripts (`x`, `x₁`, ...).  Golden tests compare printed forms
byte-for-byte, so layout choices here are part of the tool's interface.
"""

from __future__ import annotations

from . import core, surface
from .core import Term

_KEYWORDS = frozenset(surface.KEYWORDS)

_SUBSCRIPT = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")

# node class -> (keyword, argument field names)
_PRIMS: dict[type, tuple[str, tuple[str, ...]]] = {
    core.Nat: ("Nat", ()),
    core.Zero: ("zero", ()),
    core.Bool: ("Bool", ()),
    core.TT: ("true", ()),
    core.FF: ("false", ()),
    core.Empty: ("Empty", ()),
    core.Unit: ("Unit", ()),
    core.Star: ("star", ()),
    core.Refl: ("refl", ()),
    core.Succ: ("succ", ("arg",)),
    core.Fst: ("fst", ("arg",)),
    core.Snd: ("snd", ("arg",)),
    core.Abort: ("abort", ("motive", "scrut")),
    core.GQuot: ("GQuot", ("verts", "edges")),
    core.IdT: ("Id", ("ty", "lhs", "rhs")),
    core.GPt: ("gpt", ("verts", "edges", "vertex")),
    core.UnitInd: ("unitind", ("motive", "ucase", "scrut")),
    core.NatInd: ("natind", ("motive", "zcase", "scase", "scrut")),
    core.BoolInd: ("boolind", ("motive", "tcase", "fcase", "scrut")),
    core.GEdg: ("gedg", ("verts", "edges", "src", "dst", "edge")),
    core.JElim: ("J", ("ty", "base", "motive", "case", "end", "path")),
    core.GInd: ("gind", ("verts", "edges", "motive", "pcase", "ecase", "scrut")),
    core.GIndEdg: ("gind_edg", ("verts", "edges", "motive", "pcase", "ecase",
                                "src", "dst", "edge")),
}

_TERM, _APP, _ATOM = 0, 1, 2


def _uses_var(t: Term, index: int) -> bool:
    if isinstance(t, core.Var):
        return t.index == index
    spec = core._SUBTERMS.get(type(t))
    if not spec:
        return False
    return any(
        getattr(t, name) is not None and _uses_var(getattr(t, name), index + bind)
        for name, bind in spec
    )


class _Printer:
    def __init__(self, avoid: frozenset[str]):
        self.avoid = avoid

    def fresh(self, hint: str, env: list[str]) -> str:
        base = hint if hint and hint != "_" else "x"
        if base not in self.avoid and base not in env:
            return base
        k = 1
        while True:
            cand = base + str(k).translate(_SUBSCRIPT)
            if cand not in self.avoid and cand not in env:
                return cand
            k += 1

    def prt(self, t: Term, env: list[str], prec: int) -> str:
        if isinstance(t, core.Var):
            return env[-1 - t.index] if t.index < len(env) else f"?{t.index}"
        if isinstance(t, core.Global):
            return t.name
        if isinstance(t, core.Univ):
            return f"U{t.level}"
        if isinstance(t, core.Hole):
            return "_"
        prim = _PRIMS.get(type(t))
        if prim is not None:
            kw, fields = prim
            if not fields:
                return kw
            parts = [self.prt(getattr(t, f), env, _ATOM) for f in fields]
            return self.wrap(" ".join([kw] + parts), _APP, prec)
        if isinstance(t, core.App):
            fn = self.prt(t.fn, env, _APP)
            arg = self.prt(t.arg, env, _ATOM)
            return self.wrap(f"{fn} {arg}", _APP, prec)
        if isinstance(t, core.Pair):
            parts = [t.fst]
            rest = t.snd
            while isinstance(rest, core.Pair):
                parts.append(rest.fst)
                rest = rest.snd
            parts.append(rest)
            inner = " , ".join(self.prt(p, env, _TERM) for p in parts)
            return f"({inner})"
        if isinstance(t, core.Annot):
            return f"({self.prt(t.term, env, _TERM)} : {self.prt(t.ty, env, _TERM)})"
        if isinstance(t, core.Lam):
            binders = []
            body = t
            while isinstance(body, core.Lam):
                if _uses_var(body.body, 0):
                    name = self.fresh(body.hint, env)
                else:
                    name = "_"
                if body.ann is not None:
                    binders.append(f"({name} : {self.prt(body.ann, env, _TERM)})")
                else:
                    binders.append(name)
                env = env + [name]
                body = body.body
            inner = self.prt(body, env, _TERM)
            return self.wrap(f"λ {' '.join(binders)} → {inner}", _TERM, prec)
        if isinstance(t, core.Pi):
            if not _uses_var(t.cod, 0):
                dom = self.prt(t.dom, env, _APP)
                cod = self.prt(t.cod, env + ["_"], _TERM)
                return self.wrap(f"{dom} → {cod}", _TERM, prec)
            return self.binder_chain(t, env, prec, "Π", core.Pi, "dom", "cod")
        if isinstance(t, core.Sigma):
            return self.binder_chain(t, env, prec, "Σ", core.Sigma, "fst", "snd")
        if isinstance(t, core.Let):
            name = self.fresh(t.hint, env) if _uses_var(t.body, 0) else "_"
            ann = f" : {self.prt(t.ann, env, _TERM)}" if t.ann is not None else ""
            bound = self.prt(t.bound, env, _TERM)
            body = self.prt(t.body, env + [name], _TERM)
            return self.wrap(f"let {name}{ann} := {bound} in {body}", _TERM, prec)
        raise core.InternalError(f"unprintable node {t!r}")

    def binder_chain(self, t: Term, env: list[str], prec: int, head: str,
                     cls: type, dom_field: str, cod_field: str) -> str:
        groups = []
        node = t
        while isinstance(node, cls):
            cod = getattr(node, cod_field)
            if cls is core.Pi and not _uses_var(cod, 0):
                break
            name = self.fresh(node.hint, env) if _uses_var(cod, 0) else "_"
            groups.append(f"({name} : {self.prt(getattr(node, dom_field), env, _TERM)})")
            env = env + [name]
            node = cod
        inner = self.prt(node, env, _TERM)
        return self.wrap(f"{head} {' '.join(groups)} → {inner}", _TERM, prec)

    @staticmethod
    def wrap(text: str, level: int, prec: int) -> str:
        return f"({text})" if level < prec else text


def print_term(t, names: list[str] | None = None,
               reserved: frozenset[str] | str = frozenset()) -> str:
    """Render a core or surface term; `names` label the ambient context."""
    if isinstance(t, surface.STerm):
        t = core.resolve_term(set(), list(names or []), t, lenient=True)
    if isinstance(reserved, str):
        reserved = frozenset((reserved,))
    avoid = frozenset(core.globals_of(t)) | _KEYWORDS | reserved
    return _Printer(avoid).prt(t, list(names or []), _TERM)
