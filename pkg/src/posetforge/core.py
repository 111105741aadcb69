"""Finite partial orders and the order-theoretic substrate.

Conventions: elements are indices 0..size-1, and smaller means stronger
(p <= q reads "p extends q").  Compatibility, density, predensity and
regular open sets all follow that orientation.

Storage: the default backing is an eagerly computed transitive closure,
one bitmask of lower bounds per element, so leq is a single bit test.
Very large structurally-defined posets (tens of thousands of elements)
use a lazy backing with a pluggable leq; see FinitePoset.from_structural.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import CycleError, SizeError


class FinitePoset:
    """A finite reflexive partial order on labeled elements.

    The relation is validated (reflexive, antisymmetric, transitive) at
    construction.  Instances are immutable and safe to share.
    """

    __slots__ = ("size", "_down", "_lazy_leq", "_minimals", "_minmask_fn",
                 "_minmasks", "_labels")

    def __init__(self, size: int, down: Optional[list[int]] = None, *,
                 lazy_leq: Optional[Callable[[int, int], bool]] = None,
                 minimals: Optional[Sequence[int]] = None,
                 minmask_fn: Optional[Callable[[int], int]] = None,
                 labels: Optional[Sequence[str]] = None):
        if size < 1:
            raise ValueError("poset needs at least one element")
        self.size = size
        self._down = down
        self._lazy_leq = lazy_leq
        self._minimals: Optional[tuple[int, ...]] = (
            tuple(minimals) if minimals is not None else None)
        self._minmask_fn = minmask_fn
        self._minmasks: Optional[list[Optional[int]]] = None
        self._labels = tuple(labels) if labels is not None else None
        if down is None and lazy_leq is None:
            raise ValueError("need either eager masks or a lazy relation")

    # -- construction -------------------------------------------------

    @classmethod
    def from_relations(cls, size: int, relations: Iterable[tuple[int, int]],
                       labels: Optional[Sequence[str]] = None) -> "FinitePoset":
        """Reflexive-transitive closure of the declared pairs (lo <= hi).

        Fails with CycleError rather than silently collapsing a cycle.
        """
        if size < 1:
            raise ValueError("poset needs at least one element")
        below: list[set[int]] = [set() for _ in range(size)]
        for lo, hi in relations:
            if not (0 <= lo < size and 0 <= hi < size):
                raise IndexError(f"relation ({lo},{hi}) out of range for size {size}")
            if lo != hi:
                below[hi].add(lo)
        down = [1 << p for p in range(size)]
        # Fixpoint closure; saturates even in the presence of cycles,
        # which are then rejected by the antisymmetry sweep.
        changed = True
        while changed:
            changed = False
            for p in range(size):
                acc = down[p]
                for q in below[p]:
                    acc |= down[q]
                if acc != down[p]:
                    down[p] = acc
                    changed = True
        for p in range(size):
            row = down[p] & ~(1 << p)
            while row:
                q = (row & -row).bit_length() - 1
                row &= row - 1
                if (down[q] >> p) & 1:
                    raise CycleError(f"elements {p} and {q} would satisfy {p}<={q}<={p}")
        return cls(size, down, labels=labels)

    @classmethod
    def from_down_edges(cls, size: int, edges_down: Sequence[Sequence[int]],
                        labels: Optional[Sequence[str]] = None) -> "FinitePoset":
        """Closure of a cover-style DAG: edges_down[p] lists elements directly
        below p.  Topological single pass; CycleError if the graph cycles."""
        indeg = [0] * size
        above: list[list[int]] = [[] for _ in range(size)]
        for p in range(size):
            for q in edges_down[p]:
                if not (0 <= q < size):
                    raise IndexError(f"edge target {q} out of range")
                if q == p:
                    continue
                above[q].append(p)
                indeg[p] += 1
        order = [p for p in range(size) if indeg[p] == 0]
        seen = 0
        down = [0] * size
        idx = 0
        while idx < len(order):
            p = order[idx]
            idx += 1
            seen += 1
            acc = 1 << p
            for q in edges_down[p]:
                acc |= down[q]
            down[p] = acc
            for r in above[p]:
                indeg[r] -= 1
                if indeg[r] == 0:
                    order.append(r)
        if seen != size:
            raise CycleError("cover graph contains a cycle")
        return cls(size, down, labels=labels)

    @classmethod
    def from_structural(cls, size: int, leq_fn: Callable[[int, int], bool],
                        minimals: Sequence[int],
                        minmask_fn: Optional[Callable[[int], int]] = None,
                        labels: Optional[Sequence[str]] = None) -> "FinitePoset":
        """Lazy backing for posets too large to materialize.

        minmask_fn(p), when given, must return the bitmask (over positions
        in `minimals`) of minimal elements below p.
        """
        return cls(size, None, lazy_leq=leq_fn, minimals=minimals,
                   minmask_fn=minmask_fn, labels=labels)

    # -- basic queries -------------------------------------------------

    @property
    def is_lazy(self) -> bool:
        return self._down is None

    def check_index(self, p: int) -> None:
        if not (0 <= p < self.size):
            raise IndexError(f"element {p} out of range for size {self.size}")

    def leq(self, p: int, q: int) -> bool:
        """p <= q, i.e. p extends q."""
        self.check_index(p)
        self.check_index(q)
        if self._down is not None:
            return (self._down[q] >> p) & 1 == 1
        return self._lazy_leq(p, q)

    def down_mask(self, p: int) -> int:
        if self._down is None:
            raise SizeError("down-sets are not materialized for a lazy poset")
        return self._down[p]

    def iter_down(self, p: int) -> Iterator[int]:
        return iter_bits(self.down_mask(p))

    def label(self, p: int) -> str:
        if self._labels is not None:
            return self._labels[p]
        return str(p)

    def minimals(self) -> tuple[int, ...]:
        if self._minimals is None:
            self._minimals = tuple(p for p in range(self.size)
                                   if self._down[p] == 1 << p)
        return self._minimals

    def minmask(self, p: int) -> int:
        """Bitmask, over positions in minimals(), of minimal elements below p."""
        self.check_index(p)
        if self._minmasks is None:
            self._minmasks = [None] * self.size
        cached = self._minmasks[p]
        if cached is not None:
            return cached
        if self._minmask_fn is not None:
            mask = self._minmask_fn(p)
        elif self._down is not None:
            mins = self.minimals()
            row = self._down[p]
            mask = 0
            for i, m in enumerate(mins):
                if (row >> m) & 1:
                    mask |= 1 << i
        else:
            mins = self.minimals()
            mask = 0
            for i, m in enumerate(mins):
                if self._lazy_leq(m, p):
                    mask |= 1 << i
        self._minmasks[p] = mask
        return mask

    def maximals(self) -> tuple[int, ...]:
        if self._down is None:
            raise SizeError("maximals are not enumerated for a lazy poset")
        covered = 0
        for p in range(self.size):
            covered |= self._down[p] & ~(1 << p)
        return tuple(p for p in range(self.size) if not (covered >> p) & 1)

    def relation_pairs(self) -> Iterator[tuple[int, int]]:
        """All pairs (p, q) with p <= q, p != q."""
        for q in range(self.size):
            row = self.down_mask(q) & ~(1 << q)
            for p in iter_bits(row):
                yield (p, q)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


@dataclass(frozen=True)
class Suborder:
    """A nonempty subset of a poset carrying the induced order."""

    parent: FinitePoset
    members: frozenset[int]
    member_mask: int = field(init=False)

    def __post_init__(self):
        if not self.members:
            raise ValueError("suborder must be nonempty")
        for p in self.members:
            self.parent.check_index(p)
        object.__setattr__(self, "member_mask", mask_of(self.members))

    @classmethod
    def of(cls, parent: FinitePoset, members: Iterable[int]) -> "Suborder":
        return cls(parent, frozenset(members))

    @classmethod
    def full(cls, parent: FinitePoset) -> "Suborder":
        return cls(parent, frozenset(range(parent.size)))

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def compatible_inside(self, p: int, q: int) -> bool:
        """Compatibility with the common lower bound required inside the suborder."""
        parent = self.parent
        if parent._down is not None:
            return bool(parent._down[p] & parent._down[q] & self.member_mask)
        return any(parent.leq(r, p) and parent.leq(r, q) for r in self.members)

    def internal_minimals(self) -> tuple[int, ...]:
        """Members with no other member strictly below them."""
        parent = self.parent
        if parent._down is not None:
            return tuple(p for p in self.sorted_members()
                         if parent._down[p] & self.member_mask == 1 << p)
        out = []
        for p in self.sorted_members():
            if not any(q != p and parent.leq(q, p) for q in self.members):
                out.append(p)
        return tuple(out)

    def induced_poset(self) -> tuple[FinitePoset, dict[int, int]]:
        """The suborder as a standalone poset plus member -> new index map."""
        members = self.sorted_members()
        index = {p: i for i, p in enumerate(members)}
        if self.parent._down is not None:
            # restriction of a valid order needs no revalidation
            down = []
            for q in members:
                row = self.parent._down[q] & self.member_mask
                acc = 0
                for p in iter_bits(row):
                    acc |= 1 << index[p]
                down.append(acc)
            return FinitePoset(len(members), down), index
        rels = [(index[p], index[q]) for p in members for q in members
                if p != q and self.parent.leq(p, q)]
        return FinitePoset.from_relations(len(members), rels), index


@dataclass(frozen=True)
class AntichainSet:
    """A set of pairwise incompatible elements of an ambient poset."""

    elements: frozenset[int]

    @classmethod
    def of(cls, elements: Iterable[int]) -> "AntichainSet":
        return cls(frozenset(elements))

    def sorted_elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))


@dataclass(frozen=True)
class SeparativeQuotient:
    quotient: FinitePoset
    class_map: tuple[int, ...]


# -- operations ------------------------------------------------------


def make_poset(size: int, relations: Iterable[tuple[int, int]]) -> FinitePoset:
    """Poset from declared pairs (lo, hi) meaning lo <= hi."""
    return FinitePoset.from_relations(size, relations)


def compatible(poset: FinitePoset, p: int, q: int) -> bool:
    """True iff some r has r <= p and r <= q."""
    poset.check_index(p)
    poset.check_index(q)
    if poset._down is not None:
        return bool(poset._down[p] & poset._down[q])
    return bool(poset.minmask(p) & poset.minmask(q))


def incompatible(poset: FinitePoset, p: int, q: int) -> bool:
    return not compatible(poset, p, q)


def iter_maximal_antichains(poset: FinitePoset,
                            within: Suborder) -> Iterator[AntichainSet]:
    """Stream the maximal antichains of the induced suborder.

    Antichains are maximal cliques of the suborder-internal
    incompatibility graph; output order is deterministic.  Output size
    is exponential in general.
    """
    members = within.sorted_members()
    k = len(members)
    if k > 64 and poset.size > 4096:
        # incompatibility rows still fit; the clique count is the caller's risk
        pass
    incomp = []
    for i, p in enumerate(members):
        row = 0
        for j, q in enumerate(members):
            if i != j and not within.compatible_inside(p, q):
                row |= 1 << j
        incomp.append(row)

    full = (1 << k) - 1

    def expand(clique: int, cand: int, excl: int):
        if cand == 0 and excl == 0:
            yield clique
            return
        pool = cand | excl
        pivot = (pool & -pool).bit_length() - 1
        best = pivot
        best_deg = -1
        probe = pool
        while probe:
            u = (probe & -probe).bit_length() - 1
            probe &= probe - 1
            deg = (incomp[u] & cand).bit_count()
            if deg > best_deg:
                best_deg = deg
                best = u
        branch = cand & ~incomp[best]
        while branch:
            low = branch & -branch
            v = low.bit_length() - 1
            branch ^= low
            yield from expand(clique | low, cand & incomp[v], excl & incomp[v])
            cand ^= low
            excl |= low

    results = [frozenset(members[i] for i in iter_bits(c))
               for c in expand(0, full, 0)]
    for fs in sorted(results, key=lambda s: tuple(sorted(s))):
        yield AntichainSet(fs)


def maximal_antichains(poset: FinitePoset, within: Suborder) -> list[AntichainSet]:
    """All maximal antichains of the suborder, in deterministic order."""
    return list(iter_maximal_antichains(poset, within))


def is_dense_subset(poset: FinitePoset, subset: Iterable[int]) -> bool:
    """True iff every element has a subset member below it."""
    probe = sorted(set(subset))
    for d in probe:
        poset.check_index(d)
    if poset._down is not None:
        dmask = mask_of(probe)
        return all(poset._down[p] & dmask for p in range(poset.size))
    for p in range(poset.size):
        if not any(poset.leq(d, p) for d in probe):
            return False
    return True


def dense_subset_failure(poset: FinitePoset, subset: Iterable[int]) -> Optional[int]:
    """An element with no subset member below it, or None if dense."""
    probe = sorted(set(subset))
    if poset._down is not None:
        dmask = mask_of(probe)
        for p in range(poset.size):
            if not poset._down[p] & dmask:
                return p
        return None
    for p in range(poset.size):
        if not any(poset.leq(d, p) for d in probe):
            return p
    return None


def is_predense(poset: FinitePoset, subset: Iterable[int], below: int) -> bool:
    """True iff every q <= below is compatible with some subset member.

    Reduction used: q is compatible with d exactly when they share a
    minimal lower bound, so the check collapses to covering the minimal
    elements under `below` by those under subset members.
    """
    poset.check_index(below)
    union = 0
    for d in set(subset):
        poset.check_index(d)
        union |= poset.minmask(d)
    return poset.minmask(below) & ~union == 0


def regular_open_closure(poset: FinitePoset, subset: Iterable[int]) -> frozenset[int]:
    """{p : every q <= p has an extension r <= q inside the subset}.

    Idempotent and monotone; the result is down-closed and regular open.
    In a finite order p belongs exactly when all minimal elements below
    p lie in the subset.
    """
    sub = set(subset)
    for d in sub:
        poset.check_index(d)
    mins = poset.minimals()
    umin = mask_of(i for i, m in enumerate(mins) if m in sub)
    return frozenset(p for p in range(poset.size)
                     if poset.minmask(p) & ~umin == 0)


def separative_quotient(poset: FinitePoset) -> SeparativeQuotient:
    """Collapse elements with identical compatibility behaviour.

    Two elements are identified when they are compatible with exactly
    the same elements; classes are ordered by "every extension of mine
    is compatible with you".  The result is separative.
    """
    masks = [poset.minmask(p) for p in range(poset.size)]
    classes: dict[int, int] = {}
    class_map = []
    for p in range(poset.size):
        key = masks[p]
        if key not in classes:
            classes[key] = len(classes)
        class_map.append(classes[key])
    reps = list(classes.keys())
    k = len(reps)
    rels = [(i, j) for i in range(k) for j in range(k)
            if i != j and reps[i] & ~reps[j] == 0]
    quotient = FinitePoset.from_relations(k, rels)
    return SeparativeQuotient(quotient, tuple(class_map))


def is_separative(poset: FinitePoset) -> bool:
    """Whenever p is not below q, some extension of p is incompatible with q."""
    for p in range(poset.size):
        for q in range(poset.size):
            if poset.leq(p, q):
                continue
            if poset._down is not None:
                found = any(not compatible(poset, r, q)
                            for r in poset.iter_down(p))
            else:
                found = any(poset.leq(r, p) and not compatible(poset, r, q)
                            for r in range(poset.size))
            if not found:
                return False
    return True
