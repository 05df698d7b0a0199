"""Loading `.jt` files: import resolution, per-file checking, table dumps.

A name is in scope for a file iff it is declared earlier in the same
file or in a transitively imported one, so checking is independent of
the order unrelated files are given in.
"""

from __future__ import annotations

from pathlib import Path

from . import core, kernel, pretty, surface
from .kernel import Diagnostic, GlobalTable, KernelError


class CheckFailure(Exception):
    """A diagnostic plus the process exit code it maps to (1 or 2)."""

    def __init__(self, diagnostic: Diagnostic, exit_code: int):
        super().__init__(diagnostic.render())
        self.diagnostic = diagnostic
        self.exit_code = exit_code


def _io_failure(path: Path, message: str) -> CheckFailure:
    diag = Diagnostic("error", "io-error", (0, 0), message, file=str(path))
    return CheckFailure(diag, 2)


class Loader:
    def __init__(self, root: Path):
        self.root = Path(root)
        self.glo: GlobalTable = {}
        self.visible: dict[str, set[str]] = {}
        self.module_files: dict[str, Path] = {}
        self.order: list[str] = []  # modules in the order they finished checking
        self._stack: list[str] = []

    def module_path(self, name: str) -> Path:
        return self.root / f"{name}.jt"

    def load_module(self, name: str, span=(0, 0), importer: str = "<cli>") -> set[str]:
        """Check root/<name>.jt (once) and return the names visible in it."""
        if name in self.visible:
            return self.visible[name]
        if name in self._stack:
            cycle = " -> ".join(self._stack + [name])
            diag = Diagnostic("error", "import-cycle", span,
                              f"import cycle: {cycle}", file=importer)
            raise CheckFailure(diag, 1)
        path = self.module_path(name)
        if not path.is_file():
            raise _io_failure(path, f"module {name} not found")
        return self._check_source(name, path, path.read_text(encoding="utf-8"))

    def load_path(self, path: Path) -> set[str]:
        """Check a file given by path; its imports resolve against the root."""
        path = Path(path)
        name = path.stem
        if name in self.visible:
            return self.visible[name]
        if not path.is_file():
            raise _io_failure(path, "no such file")
        return self._check_source(name, path, path.read_text(encoding="utf-8"))

    def _check_source(self, name: str, path: Path, source: str) -> set[str]:
        self._stack.append(name)
        try:
            try:
                mod = surface.parse_module(source)
            except surface.SourceError as err:
                diag = Diagnostic("error", "syntax-error", err.span, err.message,
                                  file=str(path))
                raise CheckFailure(diag, 2) from None
            scope: set[str] = set()
            for imp_name, imp_span in mod.imports:
                scope |= self.load_module(imp_name, imp_span, importer=str(path))
            for sdecl in mod.decls:
                try:
                    rdecl = core.resolve_decl(scope | set(self.glo), sdecl)
                    kernel.check_decl(self.glo, rdecl, file=str(path))
                except core.ResolveError as err:
                    diag = Diagnostic("error", err.rule, err.span, err.message,
                                      file=str(path))
                    raise CheckFailure(diag, 1) from None
                except KernelError as err:
                    err.diagnostic.file = str(path)
                    raise CheckFailure(err.diagnostic, 1) from None
                scope.add(sdecl.name)
        finally:
            self._stack.pop()
        self.visible[name] = scope
        self.module_files[name] = path
        self.order.append(name)
        return scope

    def resolve_in(self, name: str, term: surface.STerm) -> core.Term:
        scope = self.visible[name]
        try:
            return core.resolve_term(scope, [], term)
        except core.ResolveError as err:
            diag = Diagnostic("error", err.rule, err.span, err.message,
                              file=str(self.module_files.get(name, "<input>")))
            raise CheckFailure(diag, 1) from None


def check_paths(root: Path, paths: list[Path]) -> Loader:
    """Check files and/or directories of .jt files; raises CheckFailure."""
    loader = Loader(root)
    for path in paths:
        path = Path(path)
        if path.is_dir():
            files = sorted(path.glob("*.jt"))
            if not files:
                raise _io_failure(path, "no .jt files in directory")
            for f in files:
                loader.load_path(f)
        else:
            loader.load_path(path)
    return loader


def dump_table(glo: GlobalTable) -> str:
    """A deterministic, printable dump of the checked declaration table."""
    reserved = frozenset(glo)
    lines = []
    for name, decl in glo.items():
        ty = pretty.print_term(decl.ty, reserved=reserved)
        tier = f" {{-# TIER {decl.tier} #-}}" if decl.tier else ""
        if decl.body is None:
            lines.append(f"postulate {name} : {ty}{tier}")
        else:
            body = pretty.print_term(decl.body, reserved=reserved)
            lines.append(f"define {name} : {ty} := {body}{tier}")
    return "\n".join(lines) + "\n"
