"""Checks of the shipped library: every file elaborates, the definitional
computation rules hold as conversions, levels come out as stated, and the
assumption audit is clean."""

import pytest

from joinlang import core, kernel, manifest, modules, nbe, pretty, surface
from joinlang.kernel import TRUSTED_ASSUMPTIONS, Context
from joinlang.nbe import VUniv, conv, evaluate, whnf

FILES = ["prelude", "graph", "seqcolim", "join", "image", "modified",
         "quotient", "connectivity", "truncation"]


@pytest.fixture(scope="module")
def lib(stdlib_dir):
    loader = modules.Loader(stdlib_dir)
    for name in FILES:
        loader.load_module(name)
    return loader


def infer_in(lib, src):
    term = core.resolve_term(set(lib.glo), [], surface.parse_term(src))
    return kernel.infer(Context(lib.glo), term)


def convertible(lib, a, b):
    va = evaluate(lib.glo, (), core.resolve_term(set(lib.glo), [], surface.parse_term(a)))
    vb = evaluate(lib.glo, (), core.resolve_term(set(lib.glo), [], surface.parse_term(b)))
    return conv(0, va, vb)


def test_all_files_check(lib):
    assert len(lib.glo) == 198


def test_prelude_count_matches_manifest(lib, stdlib_dir):
    entries = manifest.parse_manifest(stdlib_dir / "MANIFEST")
    in_manifest = sum(1 for e in entries if e.file == "prelude.jt")
    parsed = surface.parse_module((stdlib_dir / "prelude.jt").read_text())
    assert len(parsed.decls) == in_manifest


def test_every_declaration_carries_a_tier(lib):
    assert all(d.tier in ("A", "B", "C") for d in lib.glo.values())


# --- definitional computation rules, as conversions ------------------------

def test_pushout_ind_computes_on_pinl(lib):
    assert convertible(
        lib,
        "λ (X Y : U0) (g : X → Y) (P : Pushout Empty X X (empty_map X) (empty_map X) → U0)"
        " (l : Π (x : X) → P (pinl Empty X X (empty_map X) (empty_map X) x))"
        " (r : Π (x : X) → P (pinr Empty X X (empty_map X) (empty_map X) x))"
        " (x : X) → pushout_ind Empty X X (empty_map X) (empty_map X) P l r"
        " (λ e → abort (λ e' → Id (P (pinr Empty X X (empty_map X) (empty_map X) (empty_map X e)))"
        " (transport (Pushout Empty X X (empty_map X) (empty_map X)) P"
        " (pinl Empty X X (empty_map X) (empty_map X) (empty_map X e))"
        " (pinr Empty X X (empty_map X) (empty_map X) (empty_map X e))"
        " (pglue Empty X X (empty_map X) (empty_map X) e) (l (empty_map X e)))"
        " (r (empty_map X e))) e)"
        " (pinl Empty X X (empty_map X) (empty_map X) x)",
        "λ (X Y : U0) (g : X → Y) (P : Pushout Empty X X (empty_map X) (empty_map X) → U0)"
        " (l : Π (x : X) → P (pinl Empty X X (empty_map X) (empty_map X) x))"
        " (r : Π (x : X) → P (pinr Empty X X (empty_map X) (empty_map X) x))"
        " (x : X) → l x")


def test_joinmap_computes_to_f_and_g(lib):
    assert convertible(
        lib,
        "λ (A B X : U0) (f : A → X) (g : B → X) (a : A) →"
        " joinmap A B X f g (jinl A B X f g a)",
        "λ (A B X : U0) (f : A → X) (g : B → X) (a : A) → f a")
    assert convertible(
        lib,
        "λ (A B X : U0) (f : A → X) (g : B → X) (b : B) →"
        " joinmap A B X f g (jinr A B X f g b)",
        "λ (A B X : U0) (f : A → X) (g : B → X) (b : B) → g b")


def test_image_triangle_is_definitional(lib):
    assert convertible(
        lib,
        "λ (A X : U0) (f : A → X) (a : A) → i_f A X f (q_f A X f a)",
        "λ (A X : U0) (f : A → X) (a : A) → f a")


def test_modified_triangle_is_definitional(lib):
    assert convertible(
        lib,
        "λ (A : U0) (f : A → U0) (a : A) →"
        " i'_f A U0 f U0_locally_small (q'_f A U0 f U0_locally_small a)",
        "λ (A : U0) (f : A → U0) (a : A) → f a")


def test_imtower_base_and_step(lib):
    assert convertible(lib, "fst (imtower Bool Unit (constfn Bool Unit star) 0)",
                       "Empty")
    assert convertible(
        lib,
        "fst (imtower Bool Unit (constfn Bool Unit star) 1)",
        "JoinDom Bool Empty Unit (constfn Bool Unit star) (empty_map Unit)")


def test_truncat_base_and_step(lib):
    assert convertible(lib, "truncat 0 Bool", "Unit")
    assert convertible(
        lib,
        "truncat 1 Bool",
        "im' Bool ((Bool → U0)) (λ a → λ b → Unit) (std_exp_ls Bool)")


def test_seqcolim_rec_leg(lib):
    assert convertible(
        lib,
        "λ (A : Nat → U0) (s : Π (n : Nat) → A n → A (succ n)) (Z : U0)"
        " (h : Π (n : Nat) → A n → Z)"
        " (coh : Π (n : Nat) (x : A n) → Id Z (h n x) (h (succ n) (s n x)))"
        " (x : A zero) → seqcolim_rec A s Z h coh (iota A s zero x)",
        "λ (A : Nat → U0) (s : Π (n : Nat) → A n → A (succ n)) (Z : U0)"
        " (h : Π (n : Nat) → A n → Z)"
        " (coh : Π (n : Nat) (x : A n) → Id Z (h n x) (h (succ n) (s n x)))"
        " (x : A zero) → h zero x")


def test_kappa_instantiates_the_edge_at_refl(lib):
    # the cocone coherence is a gedg whose witness pair starts with refl
    decl = lib.glo["kappa"]
    body = decl.body
    while isinstance(body, core.Lam):
        body = body.body
    assert isinstance(body, core.GEdg)
    assert isinstance(body.edge, core.Pair)
    assert isinstance(body.edge.fst, core.Refl)


def test_bool_power_base(lib):
    assert convertible(lib, "bool_power 1", "join Bool Empty")
    assert convertible(lib, "bool_power 0", "Empty")


def test_sphere_zero_is_first_power(lib):
    assert convertible(lib, "sphere 0", "bool_power 1")


# --- level audit ------------------------------------------------------------

@pytest.mark.parametrize("src,level", [
    ("setquot Unit (trivial_rel Unit)", 0),
    ("truncat 2 Bool", 0),
    ("im' Bool U0 (λ _ → Nat) U0_locally_small", 0),
    ("modpb Bool Bool U0 (λ _ → Nat) (λ _ → Bool) U0_locally_small", 0),
    ("isConnType Bool Unit", 1),
    ("isLocallySmall U0", 1),
    ("PropU", 1),
])
def test_level_audit(lib, src, level):
    _, ty = infer_in(lib, src)
    ty = whnf(ty)
    assert isinstance(ty, VUniv) and ty.level == level


# --- assumption audit -------------------------------------------------------

def test_tier_a_uses_only_trusted(lib):
    for name, decl in lib.glo.items():
        if decl.tier == "A" and not decl.is_postulate:
            assert decl.assumptions <= TRUSTED_ASSUMPTIONS, name


def test_spot_assumptions(lib):
    assert kernel.assumptions_of(lib.glo, "idfn") == []
    assert kernel.assumptions_of(lib.glo, "im") == []
    assert kernel.assumptions_of(lib.glo, "U0_locally_small") == ["ua0"]
    assert kernel.assumptions_of(lib.glo, "unit_exp_equiv") == ["funext00"]
    assert "i_f_embed" in kernel.assumptions_of(lib.glo, "i_f_embed")
    assert set(kernel.assumptions_of(lib.glo, "setquot")) == \
        {"exp_locally_small", "propU_locally_small", "ua0"}


def test_postulates_self_assume(lib):
    for name, decl in lib.glo.items():
        if decl.is_postulate:
            assert name in decl.assumptions


# --- subject reduction ------------------------------------------------------

def test_subject_reduction_on_defines(lib):
    # quoting the evaluated body must recheck against the declared type
    ctx = Context(lib.glo)
    for name, decl in lib.glo.items():
        if decl.body is None:
            continue
        normal = nbe.normalize(lib.glo, (), decl.body)
        kernel.check(ctx, normal, decl.type_value())
