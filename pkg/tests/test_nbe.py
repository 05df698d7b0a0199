import random

import gen
import substnorm
from joinlang import core, nbe
from joinlang.nbe import (
    VLam, VStar, VSucc, VZero, close, conv, do_app, evaluate, fresh, normalize,
    quote,
)
from joinlang.surface import parse_term

SPAN = (0, 0)


def ev(src, env=(), glo=None):
    term = core.resolve_term(set(glo or {}), [], parse_term(src))
    return evaluate(glo or {}, env, term)


def nf(src):
    term = core.resolve_term(set(), [], parse_term(src))
    return normalize({}, (), term)


def test_beta():
    assert ev("(λ x → x) star") is VStar


def test_arithmetic_by_natind():
    four = nf("natind (λ _ → Nat) 2 (λ _ r → succ r) 2")
    assert four == core.resolve_term(set(), [], parse_term("4"))


def test_gind_point_rule():
    v = nf("gind Bool (λ _ _ → Empty) (λ _ → Nat) "
           "(λ b → boolind (λ _ → Nat) 1 2 b) "
           "(λ i j r → abort (λ _ → Nat) r) "
           "(gpt Bool (λ _ _ → Empty) true)")
    assert v == core.resolve_term(set(), [], parse_term("1"))


def test_j_on_refl():
    assert nf("J Nat zero (λ _ _ → Bool) true zero refl") == core.TT(SPAN)


def test_let_unfolds():
    assert ev("let x := star in x") is VStar


def test_quote_star():
    assert quote(0, VStar) == core.Star(SPAN)


def test_quote_neutral_application_indices():
    v = do_app(fresh(0), VStar)
    assert quote(1, v) == core.App(SPAN, core.Var(SPAN, 0), core.Star(SPAN))
    # under one more binder the same level prints as a deeper index
    assert quote(2, v) == core.App(SPAN, core.Var(SPAN, 1), core.Star(SPAN))


def test_quote_eval_idempotent_on_corpus():
    for term in gen.typed_nat_corpus(101, 200):
        once = normalize({}, (), term)
        assert normalize({}, (), once) == once


def test_conv_pi_eta():
    f = fresh(0)
    lam = VLam("x", close(lambda x: do_app(f, x)))
    assert conv(1, lam, f)
    assert conv(1, f, lam)


def test_conv_sigma_eta():
    p = fresh(0)
    from joinlang.nbe import VPair, do_fst, do_snd
    pair = VPair(do_fst(p), do_snd(p))
    assert conv(1, pair, p)


def test_conv_distinct_numerals():
    three = ev("3")
    four = ev("4")
    assert not conv(0, three, four)
    succ3 = VSucc(ev("2"))
    assert conv(0, succ3, three)


def test_conv_gind_point_computation():
    lhs = ev("gind Bool (λ _ _ → Empty) (λ _ → Nat) "
             "(λ b → boolind (λ _ → Nat) 1 2 b) "
             "(λ i j r → abort (λ _ → Nat) r) "
             "(gpt Bool (λ _ _ → Empty) false)")
    rhs = ev("(λ b → boolind (λ _ → Nat) 1 2 b) false")
    assert conv(0, lhs, rhs)


def test_conv_is_reflexive_and_symmetric_on_corpus():
    rng = random.Random(7)
    for term in gen.typed_nat_corpus(55, 60):
        v1 = evaluate({}, (), term)
        v2 = evaluate({}, (), term)
        assert conv(0, v1, v2)
        assert conv(0, v2, v1)


def test_conv_congruence_under_succ():
    a = ev("natind (λ _ → Nat) 1 (λ _ r → succ r) 1")
    b = ev("2")
    assert conv(0, a, b)
    assert conv(0, VSucc(a), VSucc(b))


def test_gedg_is_neutral():
    v = ev("gedg Bool (λ _ _ → Unit) true false star")
    assert isinstance(v, nbe.VNeutral)
    assert isinstance(v.head, nbe.HGEdg)


def test_oracle_agreement_sample():
    for term in gen.typed_nat_corpus(20260811, 300):
        assert normalize({}, (), term) == substnorm.nf(term)


def test_postulates_stay_neutral():
    class FakeDecl:
        is_postulate = True
    glo = {"ax": FakeDecl()}
    v = evaluate(glo, (), core.Global(SPAN, "ax"))
    assert isinstance(v, nbe.VNeutral)
    assert quote(0, v) == core.Global(SPAN, "ax")
