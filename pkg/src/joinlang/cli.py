"""Command-line front door: check files, normalize terms, audit assumptions."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import core, kernel, manifest, modules, nbe, pretty, surface
from .kernel import Diagnostic
from .modules import CheckFailure, Loader


def _emit(diag: Diagnostic, fmt: str):
    line = diag.human() if fmt == "human" else diag.tsv()
    print(line, file=sys.stderr)


def _default_root(explicit: str | None, first_path: Path | None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get("JOINLANG_STDLIB")
    if env:
        return Path(env)
    if first_path is not None:
        return first_path if first_path.is_dir() else first_path.parent
    return Path(".")


def cmd_check(args) -> int:
    paths = [Path(p) for p in args.paths]
    root = _default_root(args.root, paths[0] if paths else None)
    try:
        loader = modules.check_paths(root, paths)
    except CheckFailure as failure:
        _emit(failure.diagnostic, args.format)
        return failure.exit_code
    if args.dump_table:
        sys.stdout.write(modules.dump_table(loader.glo))
    return 0


def cmd_normalize(args) -> int:
    path = Path(args.file)
    root = _default_root(args.root, path)
    loader = Loader(root)
    try:
        loader.load_path(path)
        try:
            sterm = surface.parse_term(args.term)
        except surface.SourceError as err:
            diag = Diagnostic("error", "syntax-error", err.span, err.message,
                              file="<term>")
            raise CheckFailure(diag, 2) from None
        term = loader.resolve_in(path.stem, sterm)
        try:
            elab, ty = kernel.infer(kernel.Context(loader.glo), term)
        except kernel.KernelError as err:
            err.diagnostic.file = "<term>"
            raise CheckFailure(err.diagnostic, 1) from None
    except CheckFailure as failure:
        _emit(failure.diagnostic, args.format)
        return failure.exit_code
    reserved = frozenset(loader.glo)
    nf = pretty.print_term(nbe.normalize(loader.glo, (), elab), reserved=reserved)
    ty_printed = pretty.print_term(nbe.quote(0, ty), reserved=reserved)
    print(f"{nf} : {ty_printed}")
    return 0


def _load_stdlib(root: Path):
    entries = manifest.parse_manifest(root / "MANIFEST")
    loader = Loader(root)
    for fname in manifest.manifest_file_order(entries):
        loader.load_path(root / fname)
    return entries, loader


def cmd_assumptions(args) -> int:
    target = Path(args.target)
    if args.audit_tier_a:
        root = Path(args.root) if args.root else target
        try:
            entries, loader = _load_stdlib(root)
        except CheckFailure as failure:
            _emit(failure.diagnostic, args.format)
            return failure.exit_code
        except (OSError, ValueError) as err:
            _emit(Diagnostic("error", "io-error", (0, 0), str(err), file=str(root)),
                  args.format)
            return 2
        problems, tier_b = manifest.tier_a_audit(entries, loader.glo)
        for name in tier_b:
            print(name)
        for problem in problems:
            _emit(Diagnostic("error", "tier-audit", (0, 0), problem,
                             file=str(root)), args.format)
        return 1 if problems else 0
    if not args.name:
        _emit(Diagnostic("error", "usage", (0, 0),
                         "assumptions needs a declaration name", file=str(target)),
              args.format)
        return 1
    root = _default_root(args.root, target)
    loader = Loader(root)
    try:
        loader.load_path(target)
    except CheckFailure as failure:
        _emit(failure.diagnostic, args.format)
        return failure.exit_code
    if args.name not in loader.glo:
        _emit(Diagnostic("error", "unknown-name", (0, 0),
                         f"no declaration named {args.name}", file=str(target)),
              args.format)
        return 1
    for name in kernel.assumptions_of(loader.glo, args.name):
        print(name)
    return 0


def cmd_manifest_audit(args) -> int:
    root = Path(args.stdlib)
    try:
        entries, loader = _load_stdlib(root)
    except CheckFailure as failure:
        _emit(failure.diagnostic, args.format)
        return failure.exit_code
    except (OSError, ValueError) as err:
        _emit(Diagnostic("error", "io-error", (0, 0), str(err), file=str(root)),
              args.format)
        return 2
    decl_files = {name: Path(d.file).name for name, d in loader.glo.items()}
    problems = manifest.cross_check(entries, loader.glo, decl_files)
    # Import order must be topological: every import precedes its importer.
    file_order = manifest.manifest_file_order(entries)
    seen: set[str] = set()
    for fname in file_order:
        mod = surface.parse_module((root / fname).read_text(encoding="utf-8"))
        for imp, _span in mod.imports:
            if f"{imp}.jt" not in seen:
                problems.append(f"{fname} imports {imp} but {imp}.jt is not listed earlier")
        seen.add(fname)
    for problem in problems:
        _emit(Diagnostic("error", "manifest-audit", (0, 0), problem,
                         file=str(root)), args.format)
    if not problems:
        print(f"manifest ok: {len(entries)} declarations in {len(file_order)} files")
    return 1 if problems else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="joinlang",
        description="Typecheck and explore .jt libraries built on graph quotients.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--root", help="directory against which imports resolve")
        p.add_argument("--format", choices=("human", "tsv"), default="tsv",
                       help="diagnostic format on stderr (default tsv)")

    p_check = sub.add_parser("check", help="typecheck files or directories")
    common(p_check)
    p_check.add_argument("--dump-table", action="store_true",
                         help="print the checked declaration table to stdout")
    p_check.add_argument("paths", nargs="+")
    p_check.set_defaults(fn=cmd_check)

    p_norm = sub.add_parser("normalize", help="normalize a term in a file's scope")
    common(p_norm)
    p_norm.add_argument("file")
    p_norm.add_argument("term")
    p_norm.set_defaults(fn=cmd_normalize)

    p_asm = sub.add_parser("assumptions", help="list a declaration's postulates")
    common(p_asm)
    p_asm.add_argument("--audit-tier-a", action="store_true",
                       help="audit the whole library against the trusted set")
    p_asm.add_argument("target", help="file to check, or stdlib dir with --audit-tier-a")
    p_asm.add_argument("name", nargs="?")
    p_asm.set_defaults(fn=cmd_assumptions)

    p_man = sub.add_parser("manifest-audit", help="cross-check MANIFEST and library")
    common(p_man)
    p_man.add_argument("stdlib")
    p_man.set_defaults(fn=cmd_manifest_audit)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
