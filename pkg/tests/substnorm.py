"""Independent substitution-based normalizer used as the NbE oracle.

Deliberately shares no machinery with joinlang.nbe: its own shift and
substitution, normal-order reduction directly on core terms.
"""

from __future__ import annotations

from joinlang import core
from joinlang.core import Term

_SPAN = (0, 0)


def shift(t: Term, cutoff: int, amount: int) -> Term:
    if isinstance(t, core.Var):
        if t.index >= cutoff:
            return core.Var(_SPAN, t.index + amount)
        return t
    return core._map_subterms(t, lambda sub, b: shift(sub, cutoff + b, amount))


def _subst(t: Term, j: int, s: Term) -> Term:
    if isinstance(t, core.Var):
        if t.index == j:
            return s
        return t
    return core._map_subterms(t, lambda sub, b: _subst(sub, j + b, shift(s, 0, b)))


def subst_top(body: Term, arg: Term) -> Term:
    return shift(_subst(body, 0, shift(arg, 0, 1)), 0, -1)


def nf(t: Term) -> Term:
    """Full beta-normal form by repeated head reduction, then congruence."""
    t = _whnf(t)
    return core._map_subterms(t, lambda sub, _b: nf(sub))


def _whnf(t: Term) -> Term:
    while True:
        match t:
            case core.App(fn=fn, arg=arg):
                fn = _whnf(fn)
                if isinstance(fn, core.Lam):
                    t = subst_top(fn.body, arg)
                    continue
                return core.App(_SPAN, fn, arg)
            case core.Fst(arg=arg):
                arg = _whnf(arg)
                if isinstance(arg, core.Pair):
                    t = arg.fst
                    continue
                return core.Fst(_SPAN, arg)
            case core.Snd(arg=arg):
                arg = _whnf(arg)
                if isinstance(arg, core.Pair):
                    t = arg.snd
                    continue
                return core.Snd(_SPAN, arg)
            case core.NatInd(motive=m, zcase=z, scase=s, scrut=n):
                n = _whnf(n)
                if isinstance(n, core.Zero):
                    t = z
                    continue
                if isinstance(n, core.Succ):
                    rec = core.NatInd(_SPAN, m, z, s, n.arg)
                    t = core.App(_SPAN, core.App(_SPAN, s, n.arg), rec)
                    continue
                return core.NatInd(_SPAN, m, z, s, n)
            case core.BoolInd(motive=m, tcase=tc, fcase=fc, scrut=b):
                b = _whnf(b)
                if isinstance(b, core.TT):
                    t = tc
                    continue
                if isinstance(b, core.FF):
                    t = fc
                    continue
                return core.BoolInd(_SPAN, m, tc, fc, b)
            case core.UnitInd(motive=m, ucase=u, scrut=x):
                x = _whnf(x)
                if isinstance(x, core.Star):
                    t = u
                    continue
                return core.UnitInd(_SPAN, m, u, x)
            case core.JElim(ty=ty, base=base, motive=m, case=c, end=e, path=p):
                p = _whnf(p)
                if isinstance(p, core.Refl):
                    t = c
                    continue
                return core.JElim(_SPAN, ty, base, m, c, e, p)
            case core.GInd(verts=v, edges=e, motive=m, pcase=pc, ecase=ec, scrut=x):
                x = _whnf(x)
                if isinstance(x, core.GPt):
                    t = core.App(_SPAN, pc, x.vertex)
                    continue
                return core.GInd(_SPAN, v, e, m, pc, ec, x)
            case core.Let(bound=bound, body=body):
                t = subst_top(body, bound)
                continue
            case core.Annot(term=term):
                t = term
                continue
            case _:
                return t
