"""Bidirectional elaboration and typechecking, with assumption tracking.

Universe discipline: levels 0..2, cumulativity by subsumption at
universe leaves in check mode only; `conv` compares levels strictly.
Eliminator motives may land in any universe (their level is read off
the family itself), which is what lets small quotients eliminate into
large types.

The graph-quotient rules: point computation is definitional (in nbe);
the edge rule is the primitive constant `gind_edg`, whose type says
that apd of `gind` along `gedg` is the edge method.  Its transport and
apd are built here with exactly the J-shape the library's `transport`
unfolds to, so the two are convertible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import core, nbe, pretty
from .core import Term, Span
from .nbe import (
    Value, VUniv, VPi, VSigma, VId, VNat, VBool, VEmpty, VUnit, VZero, VSucc,
    VTrue, VFalse, VStar, VRefl, VGQuot, VGPt, VNeutral, VLam, HGEdg,
    close, do_app, do_fst, do_gind, do_j, evaluate, quote, conv, fresh, whnf,
)


@dataclass
class Diagnostic:
    severity: str
    rule: str
    span: Span
    message: str
    expected: str | None = None
    actual: str | None = None
    file: str = "<input>"

    def render(self) -> str:
        msg = self.message
        if self.expected is not None:
            msg += f"; expected {self.expected}"
        if self.actual is not None:
            msg += f", got {self.actual}"
        return msg

    def tsv(self) -> str:
        clean = self.render().replace("\t", " ").replace("\n", " ")
        start, end = self.span
        return f"{self.severity}\t{self.file}\t{start}..{end}\t{self.rule}\t{clean}"

    def human(self) -> str:
        start, end = self.span
        return f"{self.file}:{start}..{end}: {self.severity} [{self.rule}] {self.render()}"


class KernelError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.render())
        self.diagnostic = diagnostic


def _fail(rule: str, span: Span, message: str, expected: str | None = None,
          actual: str | None = None):
    raise KernelError(Diagnostic("error", rule, span, message, expected, actual))


class Declaration:
    """A checked global: elaborated type, body, tier, and assumption set."""

    def __init__(self, glo, name: str, kind: str, ty: Term, body: Term | None,
                 tier: str | None, assumptions: frozenset[str], file: str,
                 span: Span):
        self.glo = glo
        self.name = name
        self.kind = kind
        self.ty = ty
        self.body = body
        self.tier = tier
        self.assumptions = assumptions
        self.file = file
        self.span = span
        self._type_value: Value | None = None
        self._body_value: Value | None = None

    @property
    def is_postulate(self) -> bool:
        return self.kind == "postulate"

    def type_value(self) -> Value:
        if self._type_value is None:
            self._type_value = evaluate(self.glo, (), self.ty)
        return self._type_value

    def value(self) -> Value:
        if self._body_value is None:
            if self.body is None:
                raise core.InternalError(f"postulate {self.name} has no body value")
            self._body_value = evaluate(self.glo, (), self.body)
        return self._body_value


GlobalTable = dict  # name -> Declaration; append-only


@dataclass
class Context:
    glo: GlobalTable
    names: tuple[str, ...] = ()
    types: tuple[Value, ...] = ()
    env: tuple[Value, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.names)

    def bind(self, hint: str, ty: Value) -> "Context":
        return Context(self.glo, self.names + (hint,), self.types + (ty,),
                       self.env + (fresh(self.depth),))

    def bind_def(self, hint: str, ty: Value, value: Value) -> "Context":
        return Context(self.glo, self.names + (hint,), self.types + (ty,),
                       self.env + (value,))

    def lookup(self, index: int) -> Value:
        return self.types[-1 - index]

    def show(self, v: Value) -> str:
        return pretty.print_term(quote(self.depth, v), names=list(self.names),
                                 reserved=frozenset(self.glo))

    def eval(self, t: Term) -> Value:
        return evaluate(self.glo, self.env, t)


def vlam(hint: str, fn) -> VLam:
    return VLam(hint, close(fn))


def vpi(hint: str, dom: Value, fn) -> VPi:
    return VPi(hint, dom, close(fn))


# ---------------------------------------------------------------------------
# Inference

def infer(ctx: Context, t: Term) -> tuple[Term, Value]:
    """Synthesize a type value; returns the elaborated term as well."""
    match t:
        case core.Var(index=ix):
            return t, ctx.lookup(ix)
        case core.Global(name=name):
            entry = ctx.glo.get(name)
            if entry is None:
                raise core.InternalError(f"unresolved global {name}")
            return t, entry.type_value()
        case core.Univ(level=lv):
            if lv >= 2:
                _fail("universe-too-big", t.span, f"U{lv} has no type")
            return t, VUniv(lv + 1)
        case core.Pi(hint=h, dom=dom, cod=cod):
            dom2, i = check_type(ctx, dom)
            cod2, j = check_type(ctx.bind(h, ctx.eval(dom2)), cod)
            if max(i, j) > 2:
                _fail("universe-too-big", t.span,
                      "function type cannot quantify over U2")
            return core.Pi(t.span, h, dom2, cod2), VUniv(max(i, j))
        case core.Sigma(hint=h, fst=fst, snd=snd):
            fst2, i = check_type(ctx, fst)
            snd2, j = check_type(ctx.bind(h, ctx.eval(fst2)), snd)
            if max(i, j) > 2:
                _fail("universe-too-big", t.span,
                      "pair type cannot quantify over U2")
            return core.Sigma(t.span, h, fst2, snd2), VUniv(max(i, j))
        case core.Lam(hint=h, ann=ann, body=body):
            if ann is None:
                _fail("infer-lambda", t.span, "cannot infer an unannotated lambda")
            ann2, lv = check_type(ctx, ann)
            if lv > 2:
                _fail("universe-too-big", ann.span, "lambda cannot bind at U2")
            vdom = ctx.eval(ann2)
            ctx2 = ctx.bind(h, vdom)
            body2, bty = infer(ctx2, body)
            cod = quote(ctx.depth + 1, bty)
            return (core.Lam(t.span, h, ann2, body2),
                    VPi(h, vdom, nbe.Closure(ctx.glo, ctx.env, cod)))
        case core.App(fn=fn, arg=arg):
            fn2, fty = infer(ctx, fn)
            fty = whnf(fty)
            if not isinstance(fty, VPi):
                _fail("app-nonfunction", t.span,
                      "application head is not a function", actual=ctx.show(fty))
            arg2 = check(ctx, arg, fty.dom)
            return core.App(t.span, fn2, arg2), fty.cod.apply(ctx.eval(arg2))
        case core.Fst(arg=arg):
            arg2, pty = infer(ctx, arg)
            pty = whnf(pty)
            if not isinstance(pty, VSigma):
                _fail("proj-nonpair", t.span, "projection from a non-pair",
                      actual=ctx.show(pty))
            return core.Fst(t.span, arg2), pty.fst
        case core.Snd(arg=arg):
            arg2, pty = infer(ctx, arg)
            pty = whnf(pty)
            if not isinstance(pty, VSigma):
                _fail("proj-nonpair", t.span, "projection from a non-pair",
                      actual=ctx.show(pty))
            return core.Snd(t.span, arg2), pty.snd.apply(do_fst(ctx.eval(arg2)))
        case core.Pair():
            _fail("infer-pair", t.span, "cannot infer a bare pair")
        case core.IdT(ty=ty, lhs=lhs, rhs=rhs):
            ty2, i = check_type(ctx, ty)
            if i > 2:
                _fail("universe-too-big", ty.span,
                      "identity types cannot be formed over U2")
            vty = ctx.eval(ty2)
            lhs2 = check(ctx, lhs, vty)
            rhs2 = check(ctx, rhs, vty)
            return core.IdT(t.span, ty2, lhs2, rhs2), VUniv(i)
        case core.Refl():
            _fail("infer-refl", t.span, "cannot infer a bare refl")
        case core.JElim(ty=ty, base=base, motive=motive, case=case, end=end, path=path):
            ty2, lv = check_type(ctx, ty)
            if lv > 2:
                _fail("universe-too-big", ty.span,
                      "path induction cannot range over U2")
            vty = ctx.eval(ty2)
            base2 = check(ctx, base, vty)
            vbase = ctx.eval(base2)
            motive2, _ = check_family(
                ctx, motive, [lambda vs: vty, lambda vs: VId(vty, vbase, vs[0])],
                rule="J-motive")
            vmot = ctx.eval(motive2)
            case2 = check(ctx, case, do_app(do_app(vmot, vbase), VRefl),
                          rule="J-case")
            end2 = check(ctx, end, vty)
            vend = ctx.eval(end2)
            path2 = check(ctx, path, VId(vty, vbase, vend))
            out = core.JElim(t.span, ty2, base2, motive2, case2, end2, path2)
            return out, do_app(do_app(vmot, vend), ctx.eval(path2))
        case core.Nat() | core.Bool() | core.Empty() | core.Unit():
            return t, VUniv(0)
        case core.Zero():
            return t, VNat
        case core.Succ(arg=arg):
            return core.Succ(t.span, check(ctx, arg, VNat)), VNat
        case core.NatInd(motive=motive, zcase=z, scase=s, scrut=n):
            motive2, _ = check_family(ctx, motive, [lambda vs: VNat],
                                      rule="natind-motive")
            vmot = ctx.eval(motive2)
            z2 = check(ctx, z, do_app(vmot, VZero), rule="natind-zero-case")
            sty = vpi("n", VNat,
                      lambda m: vpi("_", do_app(vmot, m),
                                    lambda _r: do_app(vmot, VSucc(m))))
            s2 = check(ctx, s, sty, rule="natind-succ-case")
            n2 = check(ctx, n, VNat)
            return (core.NatInd(t.span, motive2, z2, s2, n2),
                    do_app(vmot, ctx.eval(n2)))
        case core.TT() | core.FF():
            return t, VBool
        case core.BoolInd(motive=motive, tcase=tc, fcase=fc, scrut=b):
            motive2, _ = check_family(ctx, motive, [lambda vs: VBool],
                                      rule="boolind-motive")
            vmot = ctx.eval(motive2)
            tc2 = check(ctx, tc, do_app(vmot, VTrue), rule="boolind-true-case")
            fc2 = check(ctx, fc, do_app(vmot, VFalse), rule="boolind-false-case")
            b2 = check(ctx, b, VBool)
            return (core.BoolInd(t.span, motive2, tc2, fc2, b2),
                    do_app(vmot, ctx.eval(b2)))
        case core.Abort(motive=motive, scrut=e):
            motive2, _ = check_family(ctx, motive, [lambda vs: VEmpty],
                                      rule="abort-motive")
            vmot = ctx.eval(motive2)
            e2 = check(ctx, e, VEmpty)
            return core.Abort(t.span, motive2, e2), do_app(vmot, ctx.eval(e2))
        case core.Star():
            return t, VUnit
        case core.UnitInd(motive=motive, ucase=u, scrut=x):
            motive2, _ = check_family(ctx, motive, [lambda vs: VUnit],
                                      rule="unitind-motive")
            vmot = ctx.eval(motive2)
            u2 = check(ctx, u, do_app(vmot, VStar), rule="unitind-case")
            x2 = check(ctx, x, VUnit)
            return (core.UnitInd(t.span, motive2, u2, x2),
                    do_app(vmot, ctx.eval(x2)))
        case core.GQuot(verts=verts, edges=edges):
            verts2, edges2, _vv, _ve, lv = _gq_parts(ctx, t.span, verts, edges)
            return core.GQuot(t.span, verts2, edges2), VUniv(lv)
        case core.GPt(verts=verts, edges=edges, vertex=x):
            verts2, edges2, vv, ve, _ = _gq_parts(ctx, t.span, verts, edges)
            x2 = check(ctx, x, vv)
            return core.GPt(t.span, verts2, edges2, x2), VGQuot(vv, ve)
        case core.GEdg(verts=verts, edges=edges, src=i, dst=j, edge=r):
            verts2, edges2, vv, ve, _ = _gq_parts(ctx, t.span, verts, edges)
            i2 = check(ctx, i, vv)
            j2 = check(ctx, j, vv)
            vi, vj = ctx.eval(i2), ctx.eval(j2)
            r2 = check(ctx, r, do_app(do_app(ve, vi), vj))
            return (core.GEdg(t.span, verts2, edges2, i2, j2, r2),
                    VId(VGQuot(vv, ve), VGPt(vv, ve, vi), VGPt(vv, ve, vj)))
        case core.GInd(verts=verts, edges=edges, motive=motive, pcase=p,
                       ecase=e, scrut=x):
            parts = _gq_methods(ctx, t.span, verts, edges, motive, p, e)
            verts2, edges2, motive2, p2, e2, vv, ve, vmot, vp = parts
            x2 = check(ctx, x, VGQuot(vv, ve))
            return (core.GInd(t.span, verts2, edges2, motive2, p2, e2, x2),
                    do_app(vmot, ctx.eval(x2)))
        case core.GIndEdg(verts=verts, edges=edges, motive=motive, pcase=p,
                          ecase=e, src=i, dst=j, edge=r):
            parts = _gq_methods(ctx, t.span, verts, edges, motive, p, e)
            verts2, edges2, motive2, p2, e2, vv, ve, vmot, vp = parts
            i2 = check(ctx, i, vv)
            j2 = check(ctx, j, vv)
            vi, vj = ctx.eval(i2), ctx.eval(j2)
            r2 = check(ctx, r, do_app(do_app(ve, vi), vj))
            vr = ctx.eval(r2)
            vecase = ctx.eval(e2)
            edge_path = VNeutral(HGEdg(vv, ve, vi, vj, vr), ())
            gq = VGQuot(vv, ve)
            gpt_i, gpt_j = VGPt(vv, ve, vi), VGPt(vv, ve, vj)
            inner = VId(do_app(vmot, gpt_j),
                        _transport(gq, gpt_i, gpt_j, vmot, edge_path,
                                   do_app(vp, vi)),
                        do_app(vp, vj))
            apd = _apd_of_gind(gq, gpt_i, gpt_j, edge_path, vv, ve, vmot, vp,
                               vecase)
            rhs = do_app(do_app(do_app(vecase, vi), vj), vr)
            out = core.GIndEdg(t.span, verts2, edges2, motive2, p2, e2, i2, j2, r2)
            return out, VId(inner, apd, rhs)
        case core.Let(hint=h, ann=ann, bound=bound, body=body):
            bound2, vty, vbound = _let_parts(ctx, ann, bound)
            ctx2 = ctx.bind_def(h, vty, vbound)
            body2, bty = infer(ctx2, body)
            return core.Let(t.span, h, None, bound2, body2), bty
        case core.Annot(term=term, ty=ty):
            ty2, _ = check_type(ctx, ty)
            vty = ctx.eval(ty2)
            return check(ctx, term, vty), vty
        case core.Hole():
            _fail("hole", t.span, "unsolved hole")
    raise core.InternalError(f"unhandled term in infer: {t!r}")


def _let_parts(ctx: Context, ann: Term | None, bound: Term):
    if ann is not None:
        ann2, _ = check_type(ctx, ann)
        vty = ctx.eval(ann2)
        bound2 = check(ctx, bound, vty)
    else:
        bound2, vty = infer(ctx, bound)
    return bound2, vty, ctx.eval(bound2)


def check_type(ctx: Context, t: Term, rule: str = "not-a-type") -> tuple[Term, int]:
    """Elaborate t and require its type to be a universe; yields the level.

    The literal U2 is a valid classifier even though it has no type of its
    own; it reports the out-of-band level 3, which no formation accepts.
    """
    if isinstance(t, core.Univ) and t.level == 2:
        return t, 3
    t2, ty = infer(ctx, t)
    ty = whnf(ty)
    if not isinstance(ty, VUniv):
        _fail(rule, t.span, "expected a type", expected="a universe",
              actual=ctx.show(ty))
    return t2, ty.level


def check_family(ctx: Context, t: Term, doms: list, rule: str) -> tuple[Term, int]:
    """Check that t is a type family over the given domain telescope.

    Each entry of doms maps the values of the earlier binders to a domain
    value.  Syntactic lambdas are peeled so that the family's universe can
    be read off its body; any leftover prefix must infer to matching Pis.
    Returns the elaborated family and the universe level of its codomain.
    """
    span = t.span
    vals: list[Value] = []
    binders: list[tuple[Span, str]] = []
    ctx2 = ctx
    rest = t
    i = 0
    while i < len(doms) and isinstance(rest, core.Lam):
        dom = doms[i](vals)
        if rest.ann is not None:
            ann2, _ = check_type(ctx2, rest.ann)
            if not conv(ctx2.depth, ctx2.eval(ann2), dom):
                _fail(rule, rest.ann.span, "family binder annotation mismatch",
                      expected=ctx2.show(dom), actual=pretty.print_term(ann2))
        binders.append((rest.span, rest.hint))
        ctx2 = ctx2.bind(rest.hint, dom)
        vals.append(ctx2.env[-1])
        rest = rest.body
        i += 1
    if i == len(doms):
        body2, level = check_type(ctx2, rest, rule=rule)
    else:
        body2, ty = infer(ctx2, rest)
        ty = whnf(ty)
        depth = ctx2.depth
        while i < len(doms):
            if not isinstance(ty, VPi):
                _fail(rule, span, "family has too few arguments",
                      actual=ctx2.show(ty))
            dom = doms[i](vals)
            if not conv(depth, ty.dom, dom):
                _fail(rule, span, "family domain mismatch",
                      expected=ctx2.show(dom), actual=ctx2.show(ty.dom))
            x = fresh(depth)
            vals.append(x)
            ty = whnf(ty.cod.apply(x))
            depth += 1
            i += 1
        if not isinstance(ty, VUniv):
            _fail(rule, span, "family does not land in a universe",
                  actual=ctx2.show(ty))
        level = ty.level
    out = body2
    for bspan, hint in reversed(binders):
        out = core.Lam(bspan, hint, None, out)
    return out, level


def _gq_parts(ctx: Context, span: Span, verts: Term, edges: Term):
    """Shared formation checks for GQuot / gpt / gedg / gind."""
    verts2, lv = check_type(ctx, verts, rule="gquot-level")
    if lv > 1:
        _fail("gquot-level", verts.span,
              "graph vertices must live in U0 or U1", actual=f"U{lv}")
    vv = ctx.eval(verts2)
    edges2, le = check_family(ctx, edges, [lambda vs: vv, lambda vs: vv],
                              rule="gquot-edges")
    if le != lv:
        _fail("gquot-level", edges.span,
              "edge relation level disagrees with vertex level",
              expected=f"U{lv}", actual=f"U{le}")
    ve = ctx.eval(edges2)
    return verts2, edges2, vv, ve, lv


def _transport(gq: Value, src: Value, dst: Value, motive: Value, path: Value,
               base: Value) -> Value:
    # J gq src (\ w _ -> motive w) base dst path; matches the library's
    # `transport` after unfolding, so user edge methods stay convertible.
    jmotive = vlam("w", lambda w: vlam("q", lambda _q: do_app(motive, w)))
    return do_j(gq, src, jmotive, base, dst, path)


def _gq_edge_method_type(vv: Value, ve: Value, vmot: Value, vp: Value) -> Value:
    gq = VGQuot(vv, ve)

    def over_edge(i, j, r):
        path = VNeutral(HGEdg(vv, ve, i, j, r), ())
        gpt_i, gpt_j = VGPt(vv, ve, i), VGPt(vv, ve, j)
        return VId(do_app(vmot, gpt_j),
                   _transport(gq, gpt_i, gpt_j, vmot, path, do_app(vp, i)),
                   do_app(vp, j))

    return vpi("i", vv,
               lambda i: vpi("j", vv,
                             lambda j: vpi("r", do_app(do_app(ve, i), j),
                                           lambda r: over_edge(i, j, r))))


def _apd_of_gind(gq: Value, gpt_i: Value, gpt_j: Value, path: Value,
                 vv: Value, ve: Value, vmot: Value, vp: Value,
                 vecase: Value) -> Value:
    fn = lambda w: do_gind(vv, ve, vmot, vp, vecase, w)
    fx = fn(gpt_i)

    def motive(w):
        return vlam("q", lambda q: VId(
            do_app(vmot, w),
            _transport(gq, gpt_i, w, vmot, q, fx),
            fn(w)))

    return do_j(gq, gpt_i, vlam("w", motive), VRefl, gpt_j, path)


def _gq_methods(ctx: Context, span: Span, verts: Term, edges: Term,
                motive: Term, pcase: Term, ecase: Term):
    verts2, edges2, vv, ve, _ = _gq_parts(ctx, span, verts, edges)
    motive2, _ = check_family(ctx, motive, [lambda vs: VGQuot(vv, ve)],
                              rule="gind-motive")
    vmot = ctx.eval(motive2)
    pty = vpi("v", vv, lambda v: do_app(vmot, VGPt(vv, ve, v)))
    p2 = check(ctx, pcase, pty, rule="gind-point-method")
    vp = ctx.eval(p2)
    ety = _gq_edge_method_type(vv, ve, vmot, vp)
    e2 = check(ctx, ecase, ety, rule="gind-edge-method")
    return verts2, edges2, motive2, p2, e2, vv, ve, vmot, vp


# ---------------------------------------------------------------------------
# Checking

def check(ctx: Context, t: Term, expected: Value,
          rule: str = "type-mismatch") -> Term:
    """Check t against an expected type value."""
    expected = whnf(expected)
    match t:
        case core.Lam(hint=h, ann=ann, body=body):
            if not isinstance(expected, VPi):
                _fail("check-lambda", t.span, "lambda checked against a non-function type",
                      expected=ctx.show(expected))
            if ann is not None:
                ann2, _ = check_type(ctx, ann)
                if not conv(ctx.depth, ctx.eval(ann2), expected.dom):
                    _fail("check-lambda", ann.span,
                          "lambda annotation disagrees with the expected domain",
                          expected=ctx.show(expected.dom))
            ctx2 = ctx.bind(h, expected.dom)
            body2 = check(ctx2, body, expected.cod.apply(ctx2.env[-1]), rule)
            return core.Lam(t.span, h, None, body2)
        case core.Pair(fst=fst, snd=snd):
            if not isinstance(expected, VSigma):
                _fail("check-pair", t.span, "pair checked against a non-pair type",
                      expected=ctx.show(expected))
            fst2 = check(ctx, fst, expected.fst, rule)
            snd2 = check(ctx, snd, expected.snd.apply(ctx.eval(fst2)), rule)
            return core.Pair(t.span, fst2, snd2)
        case core.Refl():
            if not isinstance(expected, VId):
                _fail("check-refl", t.span, "refl checked against a non-identity type",
                      expected=ctx.show(expected))
            if not conv(ctx.depth, expected.lhs, expected.rhs):
                _fail("refl-endpoints", t.span,
                      "refl endpoints are not definitionally equal",
                      expected=ctx.show(expected.lhs),
                      actual=ctx.show(expected.rhs))
            return t
        case core.Let(hint=h, ann=ann, bound=bound, body=body):
            bound2, vty, vbound = _let_parts(ctx, ann, bound)
            ctx2 = ctx.bind_def(h, vty, vbound)
            body2 = check(ctx2, body, expected, rule)
            return core.Let(t.span, h, None, bound2, body2)
        case core.Hole():
            _fail("hole", t.span, "unsolved hole", expected=ctx.show(expected))
        case _:
            t2, actual = infer(ctx, t)
            if isinstance(expected, VUniv):
                actual = whnf(actual)
            if isinstance(actual, VUniv) and isinstance(expected, VUniv):
                if actual.level <= expected.level:
                    return t2
                _fail("universe-too-big", t.span,
                      "universe level exceeds the expected one",
                      expected=ctx.show(expected), actual=ctx.show(actual))
            if conv(ctx.depth, actual, expected):
                return t2
            _fail(rule, t.span, "type mismatch",
                  expected=ctx.show(expected), actual=ctx.show(actual))
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# Declarations

def check_decl(glo: GlobalTable, rdecl: core.ResolvedDecl,
               file: str = "<input>") -> Declaration:
    """Check one resolved declaration and append it to the table."""
    if rdecl.name in glo:
        _fail("duplicate-name", rdecl.span,
              f"duplicate declaration {rdecl.name}")
    ctx = Context(glo)
    ty2, _ = check_type(ctx, rdecl.ty)
    vty = evaluate(glo, (), ty2)
    body2 = None
    if rdecl.body is not None:
        body2 = check(ctx, rdecl.body, vty)
    assumptions: set[str] = set()
    mentioned = core.globals_of(ty2)
    if body2 is not None:
        mentioned |= core.globals_of(body2)
    for name in mentioned:
        assumptions |= glo[name].assumptions
    if rdecl.kind == "postulate":
        assumptions.add(rdecl.name)
    if core.mentions_gind_edg(ty2) or (body2 is not None and core.mentions_gind_edg(body2)):
        assumptions.add("gind_edg")
    decl = Declaration(glo, rdecl.name, rdecl.kind, ty2, body2, rdecl.tier,
                       frozenset(assumptions), file, rdecl.span)
    glo[rdecl.name] = decl
    return decl


def assumptions_of(glo: GlobalTable, name: str) -> list[str]:
    """The transitive postulate set of a checked declaration, sorted."""
    if name not in glo:
        raise KeyError(name)
    return sorted(glo[name].assumptions)


# The postulates a Tier-A definition may reach; `gind_edg` is the trusted
# edge-computation primitive, the rest are the prelude's axioms.
TRUSTED_ASSUMPTIONS = frozenset(
    {"funext00", "funext01", "funext11", "ua0", "ua1", "gind_edg"}
)
