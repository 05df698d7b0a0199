"""Normalization by evaluation.

Terms evaluate into a semantic domain of weak-head values; `quote` reads
beta-normal terms back, and `conv` decides definitional equality with
eta rules for Pi and Sigma (none for Unit, Nat, Bool, Id, GQuot).

Graph-quotient computation: `gind` applied to a point constructor takes
the point method; edges (`gedg`) and the edge-computation witness
(`gind_edg`) are permanently neutral.  Defined globals unfold eagerly,
postulates never do.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass

from . import core
from .core import InternalError, Term

# Checked stdlib types nest deeply; the default CPython limit is too low.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))

_DSPAN = (0, 0)

DEBUG = bool(os.environ.get("JOINLANG_DEBUG"))
_STEP_LIMIT = 50_000_000
_steps = 0


def reset_steps():
    global _steps
    _steps = 0


def _tick():
    global _steps
    _steps += 1
    if _steps > _STEP_LIMIT:
        raise InternalError("evaluation step limit exceeded (kernel bug or diverging input)")


class Value:
    __slots__ = ()


class Closure:
    """A suspended codomain/body: either (env, term) or a host function."""

    __slots__ = ("env", "term", "fn", "glo")

    def __init__(self, glo=None, env=None, term=None, fn=None):
        self.glo = glo
        self.env = env
        self.term = term
        self.fn = fn

    def apply(self, v: Value) -> Value:
        if self.term is not None:
            return evaluate(self.glo, self.env + (v,), self.term)
        return self.fn(v)


def close(fn) -> Closure:
    return Closure(fn=fn)


@dataclass(eq=False)
class VUniv(Value):
    level: int


@dataclass(eq=False)
class VPi(Value):
    hint: str
    dom: Value
    cod: Closure


@dataclass(eq=False)
class VLam(Value):
    hint: str
    body: Closure


@dataclass(eq=False)
class VSigma(Value):
    hint: str
    fst: Value
    snd: Closure


@dataclass(eq=False)
class VPair(Value):
    fst: Value
    snd: Value


@dataclass(eq=False)
class VId(Value):
    ty: Value
    lhs: Value
    rhs: Value


@dataclass(eq=False)
class VSucc(Value):
    pred: Value


@dataclass(eq=False)
class VGQuot(Value):
    verts: Value
    edges: Value


@dataclass(eq=False)
class VGPt(Value):
    verts: Value
    edges: Value
    vertex: Value


class _Const(Value):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


VNat = _Const("VNat")
VZero = _Const("VZero")
VBool = _Const("VBool")
VTrue = _Const("VTrue")
VFalse = _Const("VFalse")
VEmpty = _Const("VEmpty")
VUnit = _Const("VUnit")
VStar = _Const("VStar")
VRefl = _Const("VRefl")


# --- neutral values ---

@dataclass(eq=False)
class HVar:
    level: int


@dataclass(eq=False)
class HGlobal:
    name: str


@dataclass(eq=False)
class HGEdg:
    verts: Value
    edges: Value
    src: Value
    dst: Value
    edge: Value


@dataclass(eq=False)
class HGIndEdg:
    verts: Value
    edges: Value
    motive: Value
    pcase: Value
    ecase: Value
    src: Value
    dst: Value
    edge: Value


@dataclass(eq=False)
class SApp:
    arg: Value


class SFst:
    __slots__ = ()


class SSnd:
    __slots__ = ()


@dataclass(eq=False)
class SNatInd:
    motive: Value
    zcase: Value
    scase: Value


@dataclass(eq=False)
class SBoolInd:
    motive: Value
    tcase: Value
    fcase: Value


@dataclass(eq=False)
class SUnitInd:
    motive: Value
    ucase: Value


@dataclass(eq=False)
class SAbort:
    motive: Value


@dataclass(eq=False)
class SJ:
    ty: Value
    base: Value
    motive: Value
    case: Value
    end: Value


@dataclass(eq=False)
class SGInd:
    verts: Value
    edges: Value
    motive: Value
    pcase: Value
    ecase: Value


@dataclass(eq=False)
class VNeutral(Value):
    head: object
    spine: tuple


class VTop(Value):
    """A defined global applied to a spine, glued to its lazy unfolding.

    Keeps conversion fast: two values with the same head compare by
    their spines first, and only unfold on failure.  Readback always
    forces, so normal forms are fully unfolded.
    """

    __slots__ = ("name", "spine", "_thunk", "_forced")

    def __init__(self, name, spine, thunk):
        self.name = name
        self.spine = spine
        self._thunk = thunk
        self._forced = None

    def forced(self) -> Value:
        if self._forced is None:
            v = self._thunk()
            while isinstance(v, VTop):
                v = v.forced()
            self._forced = v
            self._thunk = None
        return self._forced


def whnf(v: Value) -> Value:
    while isinstance(v, VTop):
        v = v.forced()
    return v


def fresh(depth: int) -> VNeutral:
    return VNeutral(HVar(depth), ())


def _extend(n: VNeutral, item) -> VNeutral:
    return VNeutral(n.head, n.spine + (item,))


# --- eliminators on values ---

def do_app(fn: Value, arg: Value) -> Value:
    if isinstance(fn, VLam):
        return fn.body.apply(arg)
    if isinstance(fn, VNeutral):
        return _extend(fn, SApp(arg))
    if isinstance(fn, VTop):
        return VTop(fn.name, fn.spine + (SApp(arg),),
                    lambda: do_app(fn.forced(), arg))
    raise InternalError(f"application of non-function value {fn!r}")


def do_fst(v: Value) -> Value:
    if isinstance(v, VPair):
        return v.fst
    if isinstance(v, VNeutral):
        return _extend(v, SFst())
    if isinstance(v, VTop):
        return VTop(v.name, v.spine + (SFst(),), lambda: do_fst(v.forced()))
    raise InternalError("fst of non-pair value")


def do_snd(v: Value) -> Value:
    if isinstance(v, VPair):
        return v.snd
    if isinstance(v, VNeutral):
        return _extend(v, SSnd())
    if isinstance(v, VTop):
        return VTop(v.name, v.spine + (SSnd(),), lambda: do_snd(v.forced()))
    raise InternalError("snd of non-pair value")


def do_natind(motive: Value, zcase: Value, scase: Value, scrut: Value) -> Value:
    if DEBUG:
        _tick()
    if scrut is VZero:
        return zcase
    if isinstance(scrut, VSucc):
        rec = do_natind(motive, zcase, scase, scrut.pred)
        return do_app(do_app(scase, scrut.pred), rec)
    if isinstance(scrut, VNeutral):
        return _extend(scrut, SNatInd(motive, zcase, scase))
    if isinstance(scrut, VTop):
        return VTop(scrut.name, scrut.spine + (SNatInd(motive, zcase, scase),),
                    lambda: do_natind(motive, zcase, scase, scrut.forced()))
    raise InternalError("natind on non-numeral value")


def do_boolind(motive: Value, tcase: Value, fcase: Value, scrut: Value) -> Value:
    if scrut is VTrue:
        return tcase
    if scrut is VFalse:
        return fcase
    if isinstance(scrut, VNeutral):
        return _extend(scrut, SBoolInd(motive, tcase, fcase))
    if isinstance(scrut, VTop):
        return VTop(scrut.name, scrut.spine + (SBoolInd(motive, tcase, fcase),),
                    lambda: do_boolind(motive, tcase, fcase, scrut.forced()))
    raise InternalError("boolind on non-boolean value")


def do_unitind(motive: Value, ucase: Value, scrut: Value) -> Value:
    if scrut is VStar:
        return ucase
    if isinstance(scrut, VNeutral):
        return _extend(scrut, SUnitInd(motive, ucase))
    if isinstance(scrut, VTop):
        return VTop(scrut.name, scrut.spine + (SUnitInd(motive, ucase),),
                    lambda: do_unitind(motive, ucase, scrut.forced()))
    raise InternalError("unitind on non-unit value")


def do_abort(motive: Value, scrut: Value) -> Value:
    if isinstance(scrut, VNeutral):
        return _extend(scrut, SAbort(motive))
    if isinstance(scrut, VTop):
        return VTop(scrut.name, scrut.spine + (SAbort(motive),),
                    lambda: do_abort(motive, scrut.forced()))
    raise InternalError("abort on a closed value of Empty")


def do_j(ty: Value, base: Value, motive: Value, case: Value, end: Value,
         path: Value) -> Value:
    if path is VRefl:
        return case
    if isinstance(path, VNeutral):
        return _extend(path, SJ(ty, base, motive, case, end))
    if isinstance(path, VTop):
        return VTop(path.name, path.spine + (SJ(ty, base, motive, case, end),),
                    lambda: do_j(ty, base, motive, case, end, path.forced()))
    raise InternalError("J on non-path value")


def do_gind(verts: Value, edges: Value, motive: Value, pcase: Value,
            ecase: Value, scrut: Value) -> Value:
    if isinstance(scrut, VGPt):
        return do_app(pcase, scrut.vertex)
    if isinstance(scrut, VNeutral):
        return _extend(scrut, SGInd(verts, edges, motive, pcase, ecase))
    if isinstance(scrut, VTop):
        return VTop(scrut.name,
                    scrut.spine + (SGInd(verts, edges, motive, pcase, ecase),),
                    lambda: do_gind(verts, edges, motive, pcase, ecase,
                                    scrut.forced()))
    raise InternalError("gind on non-quotient value")


# --- evaluation ---

def evaluate(glo, env: tuple, t: Term) -> Value:
    """Evaluate a well-typed term in an environment of values."""
    if DEBUG:
        _tick()
    match t:
        case core.Var(index=ix):
            return env[-1 - ix]
        case core.Global(name=name):
            entry = glo[name]
            if entry.is_postulate:
                return VNeutral(HGlobal(name), ())
            return VTop(name, (), entry.value)
        case core.Univ(level=lv):
            return VUniv(lv)
        case core.Pi(hint=h, dom=dom, cod=cod):
            return VPi(h, evaluate(glo, env, dom), Closure(glo, env, cod))
        case core.Lam(hint=h, body=body):
            return VLam(h, Closure(glo, env, body))
        case core.App(fn=fn, arg=arg):
            return do_app(evaluate(glo, env, fn), evaluate(glo, env, arg))
        case core.Sigma(hint=h, fst=fst, snd=snd):
            return VSigma(h, evaluate(glo, env, fst), Closure(glo, env, snd))
        case core.Pair(fst=fst, snd=snd):
            return VPair(evaluate(glo, env, fst), evaluate(glo, env, snd))
        case core.Fst(arg=arg):
            return do_fst(evaluate(glo, env, arg))
        case core.Snd(arg=arg):
            return do_snd(evaluate(glo, env, arg))
        case core.IdT(ty=ty, lhs=lhs, rhs=rhs):
            return VId(evaluate(glo, env, ty), evaluate(glo, env, lhs),
                       evaluate(glo, env, rhs))
        case core.Refl():
            return VRefl
        case core.JElim(ty=ty, base=base, motive=motive, case=case, end=end, path=path):
            return do_j(evaluate(glo, env, ty), evaluate(glo, env, base),
                        evaluate(glo, env, motive), evaluate(glo, env, case),
                        evaluate(glo, env, end), evaluate(glo, env, path))
        case core.Nat():
            return VNat
        case core.Zero():
            return VZero
        case core.Succ(arg=arg):
            return VSucc(evaluate(glo, env, arg))
        case core.NatInd(motive=m, zcase=z, scase=s, scrut=n):
            return do_natind(evaluate(glo, env, m), evaluate(glo, env, z),
                             evaluate(glo, env, s), evaluate(glo, env, n))
        case core.Bool():
            return VBool
        case core.TT():
            return VTrue
        case core.FF():
            return VFalse
        case core.BoolInd(motive=m, tcase=tc, fcase=fc, scrut=b):
            return do_boolind(evaluate(glo, env, m), evaluate(glo, env, tc),
                              evaluate(glo, env, fc), evaluate(glo, env, b))
        case core.Empty():
            return VEmpty
        case core.Abort(motive=m, scrut=e):
            return do_abort(evaluate(glo, env, m), evaluate(glo, env, e))
        case core.Unit():
            return VUnit
        case core.Star():
            return VStar
        case core.UnitInd(motive=m, ucase=u, scrut=x):
            return do_unitind(evaluate(glo, env, m), evaluate(glo, env, u),
                              evaluate(glo, env, x))
        case core.GQuot(verts=v, edges=e):
            return VGQuot(evaluate(glo, env, v), evaluate(glo, env, e))
        case core.GPt(verts=v, edges=e, vertex=x):
            return VGPt(evaluate(glo, env, v), evaluate(glo, env, e),
                        evaluate(glo, env, x))
        case core.GEdg(verts=v, edges=e, src=i, dst=j, edge=r):
            return VNeutral(HGEdg(evaluate(glo, env, v), evaluate(glo, env, e),
                                  evaluate(glo, env, i), evaluate(glo, env, j),
                                  evaluate(glo, env, r)), ())
        case core.GInd(verts=v, edges=e, motive=m, pcase=p, ecase=ec, scrut=x):
            return do_gind(evaluate(glo, env, v), evaluate(glo, env, e),
                           evaluate(glo, env, m), evaluate(glo, env, p),
                           evaluate(glo, env, ec), evaluate(glo, env, x))
        case core.GIndEdg(verts=v, edges=e, motive=m, pcase=p, ecase=ec,
                          src=i, dst=j, edge=r):
            return VNeutral(HGIndEdg(evaluate(glo, env, v), evaluate(glo, env, e),
                                     evaluate(glo, env, m), evaluate(glo, env, p),
                                     evaluate(glo, env, ec), evaluate(glo, env, i),
                                     evaluate(glo, env, j), evaluate(glo, env, r)), ())
        case core.Let(bound=bound, body=body):
            return evaluate(glo, env + (evaluate(glo, env, bound),), body)
        case core.Annot(term=term):
            return evaluate(glo, env, term)
        case core.Hole():
            raise InternalError("evaluation reached a hole")
    raise InternalError(f"unhandled term {t!r}")


# --- readback ---

def quote(depth: int, v: Value) -> Term:
    """Read a value back as a beta-normal core term; unfolds all defines."""
    v = whnf(v)
    match v:
        case VUniv(level=lv):
            return core.Univ(_DSPAN, lv)
        case VPi(hint=h, dom=dom, cod=cod):
            return core.Pi(_DSPAN, h, quote(depth, dom),
                           quote(depth + 1, cod.apply(fresh(depth))))
        case VLam(hint=h, body=body):
            return core.Lam(_DSPAN, h, None,
                            quote(depth + 1, body.apply(fresh(depth))))
        case VSigma(hint=h, fst=fst, snd=snd):
            return core.Sigma(_DSPAN, h, quote(depth, fst),
                              quote(depth + 1, snd.apply(fresh(depth))))
        case VPair(fst=fst, snd=snd):
            return core.Pair(_DSPAN, quote(depth, fst), quote(depth, snd))
        case VId(ty=ty, lhs=lhs, rhs=rhs):
            return core.IdT(_DSPAN, quote(depth, ty), quote(depth, lhs),
                            quote(depth, rhs))
        case VSucc(pred=p):
            return core.Succ(_DSPAN, quote(depth, p))
        case VGQuot(verts=vs, edges=es):
            return core.GQuot(_DSPAN, quote(depth, vs), quote(depth, es))
        case VGPt(verts=vs, edges=es, vertex=x):
            return core.GPt(_DSPAN, quote(depth, vs), quote(depth, es),
                            quote(depth, x))
        case VNeutral(head=head, spine=spine):
            return _quote_neutral(depth, head, spine)
        case _Const():
            consts = {
                VNat: core.Nat, VZero: core.Zero, VBool: core.Bool,
                VTrue: core.TT, VFalse: core.FF, VEmpty: core.Empty,
                VUnit: core.Unit, VStar: core.Star, VRefl: core.Refl,
            }
            return consts[v](_DSPAN)
    raise InternalError(f"unquotable value {v!r}")


def _quote_neutral(depth: int, head, spine: tuple) -> Term:
    q = lambda x: quote(depth, x)
    match head:
        case HVar(level=lv):
            if lv >= depth:
                raise InternalError("variable escapes its scope during readback")
            acc: Term = core.Var(_DSPAN, depth - 1 - lv)
        case HGlobal(name=name):
            acc = core.Global(_DSPAN, name)
        case HGEdg(verts=vs, edges=es, src=i, dst=j, edge=r):
            acc = core.GEdg(_DSPAN, q(vs), q(es), q(i), q(j), q(r))
        case HGIndEdg(verts=vs, edges=es, motive=m, pcase=p, ecase=e, src=i, dst=j, edge=r):
            acc = core.GIndEdg(_DSPAN, q(vs), q(es), q(m), q(p), q(e), q(i), q(j), q(r))
        case _:
            raise InternalError(f"unquotable head {head!r}")
    for item in spine:
        match item:
            case SApp(arg=arg):
                acc = core.App(_DSPAN, acc, q(arg))
            case SFst():
                acc = core.Fst(_DSPAN, acc)
            case SSnd():
                acc = core.Snd(_DSPAN, acc)
            case SNatInd(motive=m, zcase=z, scase=s):
                acc = core.NatInd(_DSPAN, q(m), q(z), q(s), acc)
            case SBoolInd(motive=m, tcase=t, fcase=f):
                acc = core.BoolInd(_DSPAN, q(m), q(t), q(f), acc)
            case SUnitInd(motive=m, ucase=u):
                acc = core.UnitInd(_DSPAN, q(m), q(u), acc)
            case SAbort(motive=m):
                acc = core.Abort(_DSPAN, q(m), acc)
            case SJ(ty=ty, base=b, motive=m, case=c, end=e):
                acc = core.JElim(_DSPAN, q(ty), q(b), q(m), q(c), q(e), acc)
            case SGInd(verts=vs, edges=es, motive=m, pcase=p, ecase=e):
                acc = core.GInd(_DSPAN, q(vs), q(es), q(m), q(p), q(e), acc)
            case _:
                raise InternalError(f"unquotable spine item {item!r}")
    return acc


# --- definitional equality ---

def conv(depth: int, a: Value, b: Value) -> bool:
    """Decide definitional equality of two values of a common type."""
    if a is b:
        return True
    if isinstance(a, VTop):
        if (isinstance(b, VTop) and a.name == b.name
                and _conv_spine(depth, a.spine, b.spine)):
            return True
        return conv(depth, a.forced(), b.forced() if isinstance(b, VTop) else b)
    if isinstance(b, VTop):
        return conv(depth, a, b.forced())
    if isinstance(a, VUniv) and isinstance(b, VUniv):
        return a.level == b.level
    if isinstance(a, VPi) and isinstance(b, VPi):
        if not conv(depth, a.dom, b.dom):
            return False
        x = fresh(depth)
        return conv(depth + 1, a.cod.apply(x), b.cod.apply(x))
    if isinstance(a, VSigma) and isinstance(b, VSigma):
        if not conv(depth, a.fst, b.fst):
            return False
        x = fresh(depth)
        return conv(depth + 1, a.snd.apply(x), b.snd.apply(x))
    # eta for Pi: compare functions by applying to a fresh variable
    if isinstance(a, VLam) or isinstance(b, VLam):
        x = fresh(depth)
        return conv(depth + 1, do_app(a, x), do_app(b, x))
    # eta for Sigma: compare pairs componentwise
    if isinstance(a, VPair) or isinstance(b, VPair):
        return (conv(depth, do_fst(a), do_fst(b))
                and conv(depth, do_snd(a), do_snd(b)))
    if isinstance(a, VSucc) and isinstance(b, VSucc):
        return conv(depth, a.pred, b.pred)
    if isinstance(a, VId) and isinstance(b, VId):
        return (conv(depth, a.ty, b.ty) and conv(depth, a.lhs, b.lhs)
                and conv(depth, a.rhs, b.rhs))
    if isinstance(a, VGQuot) and isinstance(b, VGQuot):
        return conv(depth, a.verts, b.verts) and conv(depth, a.edges, b.edges)
    if isinstance(a, VGPt) and isinstance(b, VGPt):
        return (conv(depth, a.verts, b.verts) and conv(depth, a.edges, b.edges)
                and conv(depth, a.vertex, b.vertex))
    if isinstance(a, VNeutral) and isinstance(b, VNeutral):
        return _conv_neutral(depth, a, b)
    return False


def _conv_fields(depth: int, a, b, fields: tuple[str, ...]) -> bool:
    return all(conv(depth, getattr(a, f), getattr(b, f)) for f in fields)


def _conv_neutral(depth: int, a: VNeutral, b: VNeutral) -> bool:
    ha, hb = a.head, b.head
    if type(ha) is not type(hb):
        return False
    if isinstance(ha, HVar):
        if ha.level != hb.level:
            return False
    elif isinstance(ha, HGlobal):
        if ha.name != hb.name:
            return False
    elif isinstance(ha, HGEdg):
        if not _conv_fields(depth, ha, hb, ("verts", "edges", "src", "dst", "edge")):
            return False
    elif isinstance(ha, HGIndEdg):
        if not _conv_fields(depth, ha, hb,
                            ("verts", "edges", "motive", "pcase", "ecase",
                             "src", "dst", "edge")):
            return False
    else:
        raise InternalError(f"unknown head {ha!r}")
    return _conv_spine(depth, a.spine, b.spine)


def _conv_spine(depth: int, sa: tuple, sb: tuple) -> bool:
    if len(sa) != len(sb):
        return False
    for ia, ib in zip(sa, sb):
        if type(ia) is not type(ib):
            return False
        match ia:
            case SApp():
                if not conv(depth, ia.arg, ib.arg):
                    return False
            case SFst() | SSnd():
                pass
            case SNatInd():
                if not _conv_fields(depth, ia, ib, ("motive", "zcase", "scase")):
                    return False
            case SBoolInd():
                if not _conv_fields(depth, ia, ib, ("motive", "tcase", "fcase")):
                    return False
            case SUnitInd():
                if not _conv_fields(depth, ia, ib, ("motive", "ucase")):
                    return False
            case SAbort():
                if not _conv_fields(depth, ia, ib, ("motive",)):
                    return False
            case SJ():
                if not _conv_fields(depth, ia, ib, ("ty", "base", "motive", "case", "end")):
                    return False
            case SGInd():
                if not _conv_fields(depth, ia, ib,
                                    ("verts", "edges", "motive", "pcase", "ecase")):
                    return False
            case _:
                raise InternalError(f"unknown spine item {ia!r}")
    return True


def normalize(glo, env: tuple, t: Term, depth: int = 0) -> Term:
    """quote after evaluate; the kernel's normal forms."""
    return quote(depth, evaluate(glo, env, t))
