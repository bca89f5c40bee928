"""Finite subgroups of PGL_d built from cyclotomic generator matrices.

A group is enumerated once by breadth-first closure of the projective
classes of its generators.  After enumeration every element is an index;
multiplication walks the element's generator word through per-generator
translation tables, so no matrix arithmetic happens in the hot loops.
All derived data (orderings, class lists, subgroup lattices) is canonical:
two runs produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .cyclo import ONE, CycloNum
from .linalg import MatC, identity

__all__ = [
    "ProjElem",
    "FinGroup",
    "TableGroup",
    "SubgroupHandle",
    "SubgroupClass",
    "GroupView",
    "GroupId",
    "UnidentifiedGroup",
    "Fingerprint",
    "OrderCapExceeded",
    "BudgetExceeded",
    "fingerprint",
    "small_subgroup_counts",
    "identify",
    "quotient_group",
]


class OrderCapExceeded(RuntimeError):
    """Enumeration passed the configured cap (runaway or wrong generators)."""


class BudgetExceeded(RuntimeError):
    """A full subgroup sweep was requested above the enumeration budget."""


# ---------------------------------------------------------------------------
# projective elements


class ProjElem:
    """An invertible matrix normalized modulo scalars.

    The canonical representative scales so the first nonzero entry in
    row-major order equals one; two matrices differing by a scalar
    normalize to the same value.
    """

    __slots__ = ("mat", "_hash")

    def __init__(self, mat: MatC, _normalized: bool = False):
        if not _normalized:
            mat = _normalize(mat)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "_hash", hash(mat))

    def __setattr__(self, name, value):
        raise AttributeError("ProjElem is immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, ProjElem) and self.mat == other.mat

    def __mul__(self, other: "ProjElem") -> "ProjElem":
        return ProjElem(self.mat * other.mat)

    def inv(self) -> "ProjElem":
        return ProjElem(self.mat.inv())

    @property
    def key(self) -> tuple:
        return self.mat.key

    def __repr__(self):
        return f"ProjElem({self.mat!r})"


def _normalize(mat: MatC) -> MatC:
    for row in mat.rows:
        for e in row:
            if not e.is_zero:
                if e is ONE:
                    return mat
                return mat.scale(e.inv())
    raise ZeroDivisionError("zero matrix has no projective class")


# ---------------------------------------------------------------------------
# generic group algorithms over an index interface


class GroupView:
    """Uniform element-index access used by the generic group algorithms.

    ``elements`` are ids valid for ``mult``/``inv``; the identity id is 0
    and is always the first element.
    """

    __slots__ = ("elements", "mult", "inv", "gens", "_order_cache")

    def __init__(self, elements: Sequence[int], mult: Callable[[int, int], int],
                 inv: Callable[[int], int], gens: Sequence[int]):
        self.elements = tuple(elements)
        self.mult = mult
        self.inv = inv
        self.gens = tuple(gens)
        self._order_cache: dict[int, int] = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def order_of(self, x: int) -> int:
        cached = self._order_cache.get(x)
        if cached is not None:
            return cached
        k, y = 1, x
        while y != 0:
            y = self.mult(y, x)
            k += 1
        self._order_cache[x] = k
        return k

    def conj(self, x: int, g: int) -> int:
        return self.mult(self.mult(self.inv(g), x), g)

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        gen_list = sorted({g for g in gens if g != 0})
        seen = {0}
        queue = [0]
        mult = self.mult
        for x in queue:
            for s in gen_list:
                y = mult(x, s)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def bounded_closure(self, gens: Iterable[int], bound: int) -> Optional[frozenset[int]]:
        gen_list = sorted({g for g in gens if g != 0})
        seen = {0}
        queue = [0]
        mult = self.mult
        for x in queue:
            for s in gen_list:
                y = mult(x, s)
                if y not in seen:
                    if len(seen) >= bound:
                        return None
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Orbits of the conjugation action, canonically sorted."""
        seen: set[int] = set()
        classes = []
        for x in self.elements:
            if x in seen:
                continue
            orbit = {x}
            queue = [x]
            for y in queue:
                for g in self.gens:
                    z = self.conj(y, g)
                    if z not in orbit:
                        orbit.add(z)
                        queue.append(z)
            seen |= orbit
            classes.append(tuple(sorted(orbit)))
        classes.sort(key=lambda c: (c[0],))
        return tuple(classes)

    def centralizer_members(self, x: int) -> frozenset[int]:
        mult = self.mult
        return frozenset(h for h in self.elements if mult(h, x) == mult(x, h))

    def normalizer_of_cyclic(self, x: int) -> frozenset[int]:
        powers = set()
        y = x
        while y != 0:
            powers.add(y)
            y = self.mult(y, x)
        powers.add(0)
        return frozenset(h for h in self.elements if self.conj(x, h) in powers)

    def normal_closure(self, seeds: Iterable[int]) -> tuple[frozenset[int], tuple[int, ...]]:
        """Smallest normal subgroup (of this view's group) containing seeds."""
        gen_list = sorted({s for s in seeds if s != 0})
        members = self.closure(gen_list)
        while True:
            new = []
            for s in gen_list:
                for g in self.gens:
                    c = self.conj(s, g)
                    if c not in members:
                        new.append(c)
            if not new:
                return members, tuple(gen_list)
            gen_list = sorted(set(gen_list) | set(new))
            members = self.closure(gen_list)

    def greedy_gens(self, members: frozenset[int]) -> tuple[int, ...]:
        """A small deterministic generating set for a known subgroup."""
        target = len(members)
        gens: list[int] = []
        covered: frozenset[int] = frozenset((0,))
        for x in sorted(members):
            if x not in covered:
                gens.append(x)
                covered = self.closure(gens)
                if len(covered) == target:
                    break
        return tuple(gens)


# ---------------------------------------------------------------------------
# enumerated matrix groups


class FinGroup:
    """A fully enumerated finite subgroup of PGL_d.

    ``elements[0]`` is the identity; the remaining elements are sorted by
    the serialized normal form of their representative matrices, so the
    indexing is reproducible across runs.  The structure is immutable
    after construction and safe to share between threads.
    """

    def __init__(self, elements, gen_elem_idx, perms, parent, letter, dim):
        self.elements: list[ProjElem] = elements
        self.dim = dim
        self.gen_idx: tuple[int, ...] = tuple(gen_elem_idx)
        self._perms: list[list[int]] = perms
        self._parent: list[int] = parent
        self._letter: list[int] = letter
        self._index: dict[ProjElem, int] = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        rword: list[tuple[int, ...]] = [()] * n
        order = sorted(range(1, n), key=lambda i: _depth_chain(parent, i))
        for i in order:
            rword[i] = rword[parent[i]] + (letter[i],)
        self._rword = rword
        inv = [0] * n
        invgen = [p.index(0) for p in perms]
        for i in order:
            inv[i] = self.mult(inv[parent[i]], invgen[letter[i]])
        self._inv = inv
        self.view = GroupView(range(n), self.mult, self.inv, self.gen_idx)

    # -- construction -----------------------------------------------------

    @classmethod
    def generate(cls, gens: Sequence[MatC], cap: int = 250000) -> "FinGroup":
        """Breadth-first closure of the projective classes of the generators."""
        if not gens:
            raise ValueError("at least one generator is required")
        dim = gens[0].dim
        ident = ProjElem(identity(dim), _normalized=True)
        gens_p = []
        for m in gens:
            p = ProjElem(m)
            if p != ident and p not in gens_p:
                gens_p.append(p)
        elems: list[ProjElem] = [ident]
        index: dict[ProjElem, int] = {ident: 0}
        parent, letter = [-1], [-1]
        perms: list[list[int]] = [[] for _ in gens_p]
        queue = [0]
        for x in queue:
            ex = elems[x]
            for a, g in enumerate(gens_p):
                y = g * ex
                yi = index.get(y)
                if yi is None:
                    yi = len(elems)
                    if yi >= cap:
                        raise OrderCapExceeded(
                            f"group closure exceeded the cap of {cap} elements"
                        )
                    elems.append(y)
                    index[y] = yi
                    parent.append(x)
                    letter.append(a)
                    queue.append(yi)
                while len(perms[a]) <= x:
                    perms[a].append(-1)
                perms[a][x] = yi
        n = len(elems)
        # canonical order: identity first, the rest by serialized normal form
        order = [0] + sorted(range(1, n), key=lambda i: elems[i].key)
        relabel = [0] * n
        for new, old in enumerate(order):
            relabel[old] = new
        new_elems = [elems[i] for i in order]
        new_perms = [[relabel[p[old]] for old in order] for p in perms]
        new_parent = [0] * n
        new_letter = [0] * n
        for old in range(1, n):
            new_parent[relabel[old]] = relabel[parent[old]]
            new_letter[relabel[old]] = letter[old]
        gen_elem_idx = [relabel[index[g]] for g in gens_p]
        return cls(new_elems, gen_elem_idx, new_perms, new_parent, new_letter, dim)

    # -- index arithmetic ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.elements)

    def mult(self, i: int, j: int) -> int:
        r = j
        perms = self._perms
        for a in self._rword[i]:
            r = perms[a][r]
        return r

    def inv(self, i: int) -> int:
        return self._inv[i]

    def index_of(self, e: ProjElem) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise KeyError("element does not belong to this group") from None

    def contains(self, e: ProjElem) -> bool:
        return e in self._index

    def element_order(self, i: int) -> int:
        return self.view.order_of(i)

    def conjugacy_classes(self):
        return self.view.conjugacy_classes()

    def subgroup(self, gens: Iterable[int] = (), members: Optional[frozenset[int]] = None) -> "SubgroupHandle":
        if members is None:
            gens_t = tuple(sorted({g for g in gens if g}))
            return SubgroupHandle(self, self.view.closure(gens_t), gens_t)
        return SubgroupHandle(self, frozenset(members), self.view.greedy_gens(frozenset(members)))

    def whole(self) -> "SubgroupHandle":
        return SubgroupHandle(self, frozenset(range(self.n)), self.gen_idx)

    def centralizer(self, i: int) -> "SubgroupHandle":
        return self.subgroup(members=self.view.centralizer_members(i))

    def normalizer_of_cyclic(self, i: int) -> "SubgroupHandle":
        return self.subgroup(members=self.view.normalizer_of_cyclic(i))

    # -- subgroup conjugacy sweep -------------------------------------------

    def subgroup_orbit(self, members: frozenset[int]) -> list[frozenset[int]]:
        """Full conjugation orbit of a subgroup's member set."""
        seen = {members}
        queue = [members]
        for s in queue:
            for g in self.gen_idx:
                ig = self._inv[g]
                t = frozenset(self.mult(self.mult(ig, x), g) for x in s)
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return queue

    def subgroup_conjugacy_classes(self, budget: int = 1000) -> list["SubgroupClass"]:
        """One representative per conjugacy class of subgroups.

        Seeds with the cyclic subgroups, then repeatedly joins class
        representatives with (all conjugates of) cyclic subgroups until a
        fixed point; any subgroup arises this way because a maximal chain
        climbs one extra generator at a time.
        """
        if self.n > budget:
            raise BudgetExceeded(
                f"full sweep of a group of order {self.n} exceeds the budget {budget}"
            )
        view = self.view
        cyclics: dict[frozenset[int], int] = {}
        for x in range(1, self.n):
            powers = set()
            y = x
            while y != 0:
                powers.add(y)
                y = self.mult(y, x)
            powers.add(0)
            fs = frozenset(powers)
            if fs not in cyclics:
                cyclics[fs] = x
        cyclic_list = sorted(cyclics.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))

        class_of: dict[frozenset[int], int] = {}
        classes: list[tuple[frozenset[int], tuple[int, ...], list[frozenset[int]]]] = []

        def register(members: frozenset[int], gens: tuple[int, ...]) -> int:
            known = class_of.get(members)
            if known is not None:
                return known
            orbit = self.subgroup_orbit(members)
            rep = min(orbit, key=lambda s: sorted(s))
            cid = len(classes)
            for s in orbit:
                class_of[s] = cid
            rep_gens = gens if rep == members else view.greedy_gens(rep)
            classes.append((rep, rep_gens, orbit))
            return cid

        register(frozenset((0,)), ())
        for fs, gen in cyclic_list:
            register(fs, (gen,))
        join_memo: dict[frozenset[int], int] = {}
        i = 0
        while i < len(classes):
            rep, rep_gens, _ = classes[i]
            i += 1
            if len(rep) == self.n:
                continue
            for fs, gen in cyclic_list:
                if fs <= rep:
                    continue
                union = rep | fs
                known = join_memo.get(union)
                if known is not None:
                    continue
                members = view.closure(rep_gens + (gen,))
                join_memo[union] = register(members, rep_gens + (gen,))
        order_key = sorted(range(len(classes)), key=lambda c: (len(classes[c][0]), sorted(classes[c][0])))
        out = []
        for idx, cid in enumerate(order_key):
            rep, gens, orbit = classes[cid]
            handle = SubgroupHandle(self, rep, gens)
            out.append(SubgroupClass(index=idx + 1, rep=handle, orbit=tuple(sorted(orbit, key=sorted))))
        return out


def _depth_chain(parent: list[int], i: int) -> int:
    d = 0
    while i > 0:
        i = parent[i]
        d += 1
    return d


# ---------------------------------------------------------------------------
# subgroups


class SubgroupHandle:
    """A subgroup of an enumerated group, held as a member-index set."""

    __slots__ = ("group", "members", "gens", "_view")

    def __init__(self, group: FinGroup, members: frozenset[int], gens: tuple[int, ...]):
        self.group = group
        self.members = members
        self.gens = tuple(gens)
        self._view: Optional[GroupView] = None

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def view(self) -> GroupView:
        if self._view is None:
            self._view = GroupView(
                sorted(self.members), self.group.mult, self.group.inv, self.gens
            )
        return self._view

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __le__(self, other: "SubgroupHandle") -> bool:
        return self.members <= other.members

    def involutions(self) -> list[int]:
        return [x for x in sorted(self.members) if x != 0 and self.view.order_of(x) == 2]

    def __repr__(self):
        return f"SubgroupHandle(order={self.order})"


@dataclass(frozen=True)
class SubgroupClass:
    index: int
    rep: SubgroupHandle
    orbit: tuple[frozenset[int], ...]

    def contains_up_to_conjugacy(self, other: "SubgroupHandle") -> bool:
        return any(other.members <= s for s in self.orbit)


# ---------------------------------------------------------------------------
# abstract (table-backed) groups, used for quotients


class TableGroup:
    """A finite group given by its multiplication table; identity is 0."""

    def __init__(self, table: Sequence[Sequence[int]], gens: Sequence[int]):
        self.table = tuple(tuple(r) for r in table)
        n = len(self.table)
        inv = [0] * n
        for i, row in enumerate(self.table):
            inv[i] = row.index(0)
        self._inv = inv
        self.gen_idx = tuple(gens) if gens else tuple(range(1, n))
        self.view = GroupView(range(n), self.mult, self.inv, self.gen_idx)

    @property
    def n(self) -> int:
        return len(self.table)

    def mult(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self._inv[i]


def quotient_view(view: GroupView, normal_members: frozenset[int]) -> TableGroup:
    """Quotient of a view's group by a normal subgroup, as a table group.

    Cosets are represented by their minimal member; normality of the
    divisor is the caller's responsibility (checked in quotient_group).
    """
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    nm = sorted(normal_members)
    for x in view.elements:
        if x in coset_of:
            continue
        cid = len(reps)
        reps.append(x)
        for n_ in nm:
            coset_of[view.mult(x, n_)] = cid
    m = len(reps)
    table = [[coset_of[view.mult(reps[a], reps[b])] for b in range(m)] for a in range(m)]
    gens = []
    for g in view.gens:
        q = coset_of[g]
        if q and q not in gens:
            gens.append(q)
    return TableGroup(table, gens)


def quotient_group(h: SubgroupHandle, n: SubgroupHandle) -> TableGroup:
    """H/N on minimal coset representatives; verifies N is normal in H."""
    if not n.members <= h.members:
        raise ValueError("divisor is not contained in the subgroup")
    view = h.view
    for g in h.gens:
        for s in n.gens:
            if view.conj(s, g) not in n.members:
                raise ValueError("divisor is not normal in the subgroup")
    hv = GroupView(sorted(h.members), h.group.mult, h.group.inv, h.gens)
    return quotient_view(hv, n.members)


# ---------------------------------------------------------------------------
# fingerprints and identification


@dataclass(frozen=True)
class GroupId:
    order: int
    gid: int

    def __str__(self):
        return f"({self.order},{self.gid})"


@dataclass(frozen=True)
class UnidentifiedGroup:
    order: int
    tier1: tuple

    def __str__(self):
        return f"({self.order},?)"


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism invariants: cheap tier separates almost everything."""

    order: int
    order_histogram: tuple[tuple[int, int], ...]
    class_count: int
    abelian_invariants: tuple[int, ...]
    center_order: int
    derived_sizes: tuple[int, ...]

    @property
    def tier1(self) -> tuple:
        return (
            self.order,
            self.order_histogram,
            self.class_count,
            self.abelian_invariants,
            self.center_order,
            self.derived_sizes,
        )


def _abelian_invariants(q: TableGroup) -> tuple[int, ...]:
    n = q.n
    if n == 1:
        return ()
    orders = [q.view.order_of(x) for x in range(n)]
    primes = set()
    for o in orders:
        m = o
        d = 2
        while d * d <= m:
            if m % d == 0:
                primes.add(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            primes.add(m)
    out = []
    for p in sorted(primes):
        # c_k = number of elements of order dividing p^k determines the
        # partition of the p-part
        k = 1
        prev = sum(1 for o in orders if o == 1)
        lam_conj = []
        while True:
            pk = p**k
            ck = sum(1 for o in orders if pk % o == 0)
            if ck == prev:
                break
            step = 0
            r = ck // prev
            while r > 1:
                r //= p
                step += 1
            lam_conj.append(step)
            prev = ck
            k += 1
        # lam_conj[k-1] = number of cyclic factors with exponent >= k
        for i, cnt in enumerate(lam_conj):
            nxt = lam_conj[i + 1] if i + 1 < len(lam_conj) else 0
            for _ in range(cnt - nxt):
                out.append(p ** (i + 1))
    return tuple(sorted(out))


def _derived_data(view: GroupView) -> tuple[frozenset[int], tuple[int, ...]]:
    comms = set()
    for a in view.gens:
        for b in view.gens:
            c = view.mult(view.mult(view.inv(a), view.inv(b)), view.mult(a, b))
            if c:
                comms.add(c)
    return view.normal_closure(comms)


def fingerprint(view: GroupView) -> Fingerprint:
    n = view.order
    hist: dict[int, int] = {}
    for x in view.elements:
        o = view.order_of(x)
        hist[o] = hist.get(o, 0) + 1
    classes = len(view.conjugacy_classes())
    # abelianization
    dmem, _ = _derived_data(view)
    q = quotient_view(view, dmem)
    ab = _abelian_invariants(q)
    center = sum(
        1
        for x in view.elements
        if all(view.mult(x, g) == view.mult(g, x) for g in view.gens)
    )
    sizes = [n]
    cur_members = frozenset(view.elements)
    cur_gens = view.gens
    while True:
        sub = GroupView(sorted(cur_members), view.mult, view.inv, cur_gens)
        dm, dg = _derived_data(sub)
        if len(dm) == len(cur_members):
            sizes.append(len(dm))
            break
        sizes.append(len(dm))
        if len(dm) == 1:
            break
        cur_members, cur_gens = dm, dg
    return Fingerprint(
        order=n,
        order_histogram=tuple(sorted(hist.items())),
        class_count=classes,
        abelian_invariants=ab,
        center_order=center,
        derived_sizes=tuple(sizes),
    )


def small_subgroup_counts(view: GroupView, max_order: int = 8) -> tuple[int, ...]:
    """Number of subgroups of each order 2..max_order (extension fixpoint)."""
    small = [x for x in view.elements if x and view.order_of(x) <= max_order]
    cyclics: dict[frozenset[int], int] = {}
    for x in small:
        powers = {0}
        y = x
        while y != 0:
            powers.add(y)
            y = view.mult(y, x)
        if len(powers) <= max_order:
            fs = frozenset(powers)
            cyclics.setdefault(fs, x)
    gens_of: dict[frozenset[int], tuple[int, ...]] = {frozenset((0,)): ()}
    for fs, g in cyclics.items():
        gens_of.setdefault(fs, (g,))
    worklist = sorted(gens_of, key=lambda s: (len(s), sorted(s)))
    for h in worklist:
        if len(h) == max_order:
            continue
        for fs, g in cyclics.items():
            if fs <= h:
                continue
            k = view.bounded_closure(gens_of[h] + (g,), max_order + 1)
            if k is not None and len(k) <= max_order and k not in gens_of:
                gens_of[k] = gens_of[h] + (g,)
                worklist.append(k)
    counts = [0] * (max_order - 1)
    for s in gens_of:
        if 2 <= len(s) <= max_order:
            counts[len(s) - 2] += 1
    return tuple(counts)


# identification catalog ------------------------------------------------------

_ID_CATALOG: Optional[dict[int, list[tuple[tuple, Optional[tuple], GroupId]]]] = None

IDENTIFY_ORDER_FLOOR = 2520  # orders at or above this report (order, 0)


def _load_id_catalog() -> dict:
    global _ID_CATALOG
    if _ID_CATALOG is None:
        import ast
        import importlib.resources as res

        from . import data as _data

        table: dict[int, list] = {}
        try:
            text = (res.files(_data) / "idcatalog.data").read_text()
        except FileNotFoundError:
            text = ""
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            ids, t1, t2 = line.split("|")
            order_s, gid_s = ids.split()
            tier1 = ast.literal_eval(t1.strip())
            tier2 = None if t2.strip() == "-" else ast.literal_eval(t2.strip())
            gid = GroupId(int(order_s), int(gid_s))
            table.setdefault(gid.order, []).append((tier1, tier2, gid))
        _ID_CATALOG = table
    return _ID_CATALOG


def identify(view: GroupView):
    """Match a group against the identification catalog.

    Returns a GroupId, with the (order, 0) convention at or above the
    floor where ids are not tracked; an UnidentifiedGroup sentinel carries
    the fingerprint when no catalog entry matches.
    """
    n = view.order
    if n == 1:
        return GroupId(1, 1)
    if n >= IDENTIFY_ORDER_FLOOR:
        return GroupId(n, 0)
    rows = _load_id_catalog().get(n, [])
    if not rows:
        return UnidentifiedGroup(n, fingerprint(view).tier1)
    fp = fingerprint(view)
    hits = [r for r in rows if r[0] == fp.tier1]
    if len(hits) == 1:
        return hits[0][2]
    if len(hits) > 1:
        t2 = small_subgroup_counts(view)
        refined = [r for r in hits if r[1] == t2]
        if len(refined) == 1:
            return refined[0][2]
    return UnidentifiedGroup(n, fp.tier1)
