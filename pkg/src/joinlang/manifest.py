"""The shipped library manifest: one record per declaration.

Record format (tab-separated): file, declaration name, tier, anchor.
The audit cross-checks the manifest against the checked library.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .kernel import GlobalTable, TRUSTED_ASSUMPTIONS


@dataclass(frozen=True)
class ManifestEntry:
    file: str
    name: str
    tier: str
    anchor: str


def parse_manifest(path: Path) -> list[ManifestEntry]:
    entries = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise ValueError(f"{path}:{lineno}: expected 4 tab-separated fields")
        file, name, tier, anchor = parts
        if tier not in ("A", "B", "C"):
            raise ValueError(f"{path}:{lineno}: bad tier {tier!r}")
        entries.append(ManifestEntry(file, name, tier, anchor))
    return entries


def manifest_file_order(entries: list[ManifestEntry]) -> list[str]:
    order = []
    for e in entries:
        if e.file not in order:
            order.append(e.file)
    return order


def cross_check(entries: list[ManifestEntry], glo: GlobalTable,
                decl_files: dict[str, str]) -> list[str]:
    """Verify manifest <-> library agreement; returns problem descriptions."""
    problems = []
    listed = {e.name: e for e in entries}
    for e in entries:
        decl = glo.get(e.name)
        if decl is None:
            problems.append(f"manifest entry {e.name} not present in the library")
            continue
        if decl.tier != e.tier:
            problems.append(
                f"{e.name}: manifest tier {e.tier} but source is tagged "
                f"{decl.tier or 'untagged'}")
        if decl_files.get(e.name) != e.file:
            problems.append(
                f"{e.name}: manifest file {e.file} but declared in "
                f"{decl_files.get(e.name)}")
    for name, decl in glo.items():
        if name not in listed:
            problems.append(f"declaration {name} missing from the manifest")
    return problems


def tier_a_audit(entries: list[ManifestEntry], glo: GlobalTable) -> tuple[list[str], list[str]]:
    """The trusted-base audit.

    Every Tier-A define may only reach trusted postulates; Tier-A
    postulates must themselves be trusted.  The set of non-trusted
    postulates in the library must equal the manifest's Tier-B set.
    Returns (problems, sorted tier-B postulate names).
    """
    problems = []
    by_name = {e.name: e for e in entries}
    for name, decl in glo.items():
        entry = by_name.get(name)
        tier = entry.tier if entry else decl.tier
        if tier != "A":
            continue
        if decl.is_postulate:
            if name not in TRUSTED_ASSUMPTIONS:
                problems.append(f"Tier-A postulate {name} is not in the trusted set")
            continue
        leaked = decl.assumptions - TRUSTED_ASSUMPTIONS
        if leaked:
            problems.append(
                f"Tier-A define {name} leaks assumptions: {', '.join(sorted(leaked))}")
    emitted_b = sorted(
        name for name, decl in glo.items()
        if decl.is_postulate and name not in TRUSTED_ASSUMPTIONS
    )
    manifest_b = sorted(e.name for e in entries if e.tier == "B")
    if emitted_b != manifest_b:
        extra = set(emitted_b) - set(manifest_b)
        missing = set(manifest_b) - set(emitted_b)
        if extra:
            problems.append(f"postulates not recorded as Tier B: {', '.join(sorted(extra))}")
        if missing:
            problems.append(f"manifest Tier B entries not postulated: {', '.join(sorted(missing))}")
    return problems, emitted_b
