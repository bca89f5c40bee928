"""Data layer: group definitions, rank table, overlays, comparison catalogs.

Matrices live in text files under ``fanoterm/data`` using the cyclotomic
grammar, one file per group; the tables are whitespace-separated columns
with ``#`` comments.  Everything is read-only once loaded.
"""

from __future__ import annotations

import importlib.resources as res
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import data as _data
from .cache import load_cached_group, store_cached_group
from .groups import FinGroup, GroupId
from .linalg import MatC, mat_from_strings

__all__ = [
    "GroupDefinition",
    "CatalogValidationError",
    "group_keys",
    "load_group",
    "build_group",
    "load_rank_rows",
    "load_overlay",
    "load_deformation_catalog",
    "load_fixtures",
    "FixtureRow",
    "OverlayRule",
]


class CatalogValidationError(RuntimeError):
    """A catalog definition failed its order or id check."""


@dataclass(frozen=True)
class GroupDefinition:
    key: str
    name: str
    order: int
    group_id: GroupId
    variant: str
    equation: str
    generators: tuple[MatC, ...]


def _read(name: str) -> str:
    return (res.files(_data) / name).read_text()


@lru_cache(maxsize=None)
def group_keys() -> tuple[str, ...]:
    root = res.files(_data) / "groups"
    return tuple(sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".txt")))


@lru_cache(maxsize=None)
def load_group(key: str) -> GroupDefinition:
    """Parse one group definition file; raises KeyError on unknown keys."""
    if key not in group_keys():
        raise KeyError(f"unknown catalog group {key!r}; known: {', '.join(group_keys())}")
    text = _read(f"groups/{key}.txt")
    header: dict[str, str] = {}
    gens: list[list[list[str]]] = []
    current: Optional[list[list[str]]] = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("generator ") and line.endswith(":"):
            current = []
            gens.append(current)
            continue
        if current is None:
            k, _, v = line.partition(":")
            header[k.strip()] = v.strip()
        else:
            current.append([e.strip() for e in line.split(",")])
    order_s, id_s = header["id"].split(",")
    mats = tuple(mat_from_strings(g) for g in gens)
    for i, m in enumerate(mats):
        if m.det().is_zero:
            raise CatalogValidationError(f"{key}: generator {i + 1} is singular")
    return GroupDefinition(
        key=key,
        name=header["name"],
        order=int(header["order"]),
        group_id=GroupId(int(order_s), int(id_s)),
        variant=header.get("variant", ""),
        equation=header.get("equation", ""),
        generators=mats,
    )


_BUILD_MEMO: dict[str, FinGroup] = {}


def build_group(key: str, cache_dir: Optional[str] = None, no_cache: bool = False,
                cap: int = 250000) -> FinGroup:
    """Enumerate a catalog group (memoized in-process, cached on disk).

    The enumerated order is checked against the definition; a mismatch is
    a validation failure, not a silent fallback.
    """
    cached = _BUILD_MEMO.get(key)
    if cached is not None:
        return cached
    definition = load_group(key)
    group = None
    if not no_cache:
        group = load_cached_group(definition.generators, cache_dir)
    if group is None:
        group = FinGroup.generate(definition.generators, cap=cap)
        if not no_cache:
            store_cached_group(definition.generators, group, cache_dir)
    if group.n != definition.order:
        raise CatalogValidationError(
            f"{key}: enumerated order {group.n} != declared order {definition.order}"
        )
    _BUILD_MEMO[key] = group
    return group


# -- tables -------------------------------------------------------------------


@lru_cache(maxsize=None)
def load_rank_rows() -> tuple[tuple[str, GroupId, int], ...]:
    rows = []
    for line in _read("rkl.table").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        label, order_s, id_s, rank_s = line.split()
        rows.append((label, GroupId(int(order_s), int(id_s)), int(rank_s)))
    return tuple(rows)


@dataclass(frozen=True)
class OverlayRule:
    ambient_key: str
    group_id: GroupId
    min_n3: int
    rank: int


@lru_cache(maxsize=None)
def load_overlay() -> tuple[OverlayRule, ...]:
    rules = []
    for line in _read("overlay.table").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, order_s, id_s, min_n3, rank = line.split()
        rules.append(OverlayRule(key, GroupId(int(order_s), int(id_s)), int(min_n3), int(rank)))
    return tuple(rules)


def _load_b2_table(name: str) -> dict[int, tuple[int, ...]]:
    out: dict[int, tuple[int, ...]] = {}
    for line in _read(name).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [int(x) for x in line.split()]
        out[parts[0]] = tuple(parts[1:])
    return out


@lru_cache(maxsize=None)
def load_deformation_catalog():
    from .deform import KnownClassCatalog

    return KnownClassCatalog(
        fujiki=_load_b2_table("vfuj.table"),
        hilbert_square=_load_b2_table("vk3.table"),
        kummer=_load_b2_table("vkum.table"),
    )


@dataclass(frozen=True)
class FixtureRow:
    group_id: GroupId
    b2: int
    ambient_order: int


@lru_cache(maxsize=None)
def load_fixtures(path: Optional[str] = None) -> tuple[FixtureRow, ...]:
    if path is None:
        text = _read("fixtures.list")
    else:
        with open(path) as fh:
            text = fh.read()
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        order, gid, b2, ambient = (int(x) for x in line.split())
        rows.append(FixtureRow(GroupId(order, gid), b2, ambient))
    return tuple(rows)
