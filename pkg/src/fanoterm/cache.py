"""Disk cache for enumerated groups, keyed by a hash of the generator set.

The cache stores element matrices in the text grammar together with the
translation permutations and BFS tree, so a load rebuilds the group
without any matrix products.
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path
from typing import Optional, Sequence

from .groups import FinGroup, ProjElem
from .linalg import MatC, mat_from_strings

CACHE_FORMAT = 1


def default_cache_dir() -> Path:
    env = os.environ.get("FANOTERM_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "fanoterm"


def _gen_key(gens: Sequence[MatC]) -> str:
    h = hashlib.sha256()
    h.update(f"v{CACHE_FORMAT}".encode())
    for g in gens:
        for row in ProjElem(g).mat.to_strings():
            h.update("|".join(row).encode())
            h.update(b";")
        h.update(b"#")
    return h.hexdigest()[:24]


def _cache_path(gens: Sequence[MatC], cache_dir) -> Path:
    base = Path(cache_dir) if cache_dir else default_cache_dir()
    return base / f"group-{_gen_key(gens)}.txt"


def store_cached_group(gens: Sequence[MatC], group: FinGroup, cache_dir=None) -> None:
    path = _cache_path(gens, cache_dir)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = [f"format {CACHE_FORMAT}", f"n {group.n}", f"dim {group.dim}",
                 "gens " + " ".join(str(i) for i in group.gen_idx)]
        for e in group.elements:
            lines.append(";".join(",".join(row) for row in e.mat.to_strings()))
        lines.append("parent " + " ".join(str(x) for x in group._parent))
        lines.append("letter " + " ".join(str(x) for x in group._letter))
        for p in group._perms:
            lines.append("perm " + " ".join(str(x) for x in p))
        tmp = path.with_suffix(".tmp")
        tmp.write_text("\n".join(lines) + "\n")
        tmp.replace(path)
    except OSError:
        pass  # caching is best-effort


def load_cached_group(gens: Sequence[MatC], cache_dir=None) -> Optional[FinGroup]:
    path = _cache_path(gens, cache_dir)
    try:
        text = path.read_text()
    except OSError:
        return None
    try:
        lines = text.splitlines()
        assert lines[0] == f"format {CACHE_FORMAT}"
        n = int(lines[1].split()[1])
        dim = int(lines[2].split()[1])
        gen_idx = [int(x) for x in lines[3].split()[1:]]
        elems = []
        for k in range(n):
            rows = [cell.split(",") for cell in lines[4 + k].split(";")]
            elems.append(ProjElem(mat_from_strings(rows), _normalized=True))
        rest = lines[4 + n:]
        parent = [int(x) for x in rest[0].split()[1:]]
        letter = [int(x) for x in rest[1].split()[1:]]
        perms = [[int(x) for x in line.split()[1:]] for line in rest[2:] if line.startswith("perm ")]
        if len(perms) != len(gen_idx) or len(parent) != n:
            return None
        return FinGroup(elems, gen_idx, perms, parent, letter, dim)
    except (AssertionError, IndexError, ValueError):
        return None
