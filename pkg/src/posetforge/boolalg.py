"""Finite Boolean algebras as powerset algebras on atoms.

Elements are bitmasks over atoms, subalgebras are partitions of the atom
set, and the completion of a finite poset is realized as the algebra of
its regular open subsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .config import FREE_ALGEBRA_MAX_GENERATORS, RO_MAX_ELEMENTS
from .core import FinitePoset, iter_bits, mask_of, regular_open_closure
from .errors import AmbientMismatch, SizeError


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    """Powerset algebra on atom_count atoms; elements are atom masks."""

    atom_count: int

    def __post_init__(self):
        if self.atom_count < 1:
            raise ValueError("algebra needs at least one atom")

    @property
    def one(self) -> int:
        return (1 << self.atom_count) - 1

    zero = 0

    def check_element(self, x: int) -> None:
        if not (0 <= x <= self.one):
            raise ValueError(f"{x} is not an element of a {self.atom_count}-atom algebra")

    def meet(self, x: int, y: int) -> int:
        return x & y

    def join(self, x: int, y: int) -> int:
        return x | y

    def minus(self, x: int, y: int) -> int:
        return x & ~y & self.one

    def complement(self, x: int) -> int:
        return ~x & self.one

    def leq(self, x: int, y: int) -> bool:
        return x & ~y == 0

    def atoms(self) -> Iterator[int]:
        return (1 << i for i in range(self.atom_count))

    def elements(self) -> Iterator[int]:
        if self.atom_count > 20:
            raise SizeError("element iteration capped at 2^20")
        return iter(range(self.one + 1))

    def positive_poset(self) -> FinitePoset:
        """The nonzero elements ordered by inclusion, as a poset.

        Element i of the poset is algebra element i+1.
        """
        n = self.one
        rels = [(x - 1, y - 1) for x in range(1, n + 1) for y in range(1, n + 1)
                if x != y and x & ~y == 0]
        return FinitePoset.from_relations(n, rels)


@dataclass(frozen=True)
class PartitionSubalgebra:
    """Subalgebra of a powerset algebra, stored as its atom partition.

    Subalgebra elements are exactly the unions of blocks.
    """

    algebra: FiniteBooleanAlgebra
    blocks: tuple[int, ...]

    def __post_init__(self):
        union = 0
        for b in self.blocks:
            if b == 0:
                raise ValueError("empty block")
            if b & union:
                raise ValueError("blocks overlap")
            union |= b
        if union != self.algebra.one:
            raise ValueError("blocks do not cover the atoms")
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks)))

    def contains(self, x: int) -> bool:
        self.algebra.check_element(x)
        return all(b & ~x == 0 or b & x == 0 for b in self.blocks)

    def elements(self) -> Iterator[int]:
        k = len(self.blocks)
        if k > 20:
            raise SizeError("element iteration capped at 2^20")
        for mask in range(1 << k):
            e = 0
            for j in range(k):
                if (mask >> j) & 1:
                    e |= self.blocks[j]
            yield e

    def positive_elements(self) -> Iterator[int]:
        return (e for e in self.elements() if e)

    def size(self) -> int:
        return 1 << len(self.blocks)


def generated_subalgebra(algebra: FiniteBooleanAlgebra,
                         generators: Iterable[int]) -> PartitionSubalgebra:
    """Smallest subalgebra containing the generators.

    Blocks are the nonempty signed meets over the generator list, i.e.
    the atoms of the generated algebra.
    """
    blocks = [algebra.one]
    for g in generators:
        algebra.check_element(g)
        refined = []
        for b in blocks:
            inside = b & g
            outside = b & ~g
            if inside:
                refined.append(inside)
            if outside:
                refined.append(outside)
        blocks = refined
    return PartitionSubalgebra(algebra, tuple(sorted(blocks)))


def adjoin(sub: PartitionSubalgebra, b: int) -> PartitionSubalgebra:
    """The subalgebra generated by sub together with b."""
    return generated_subalgebra(sub.algebra, list(sub.blocks) + [b])


def is_independent_set(algebra: FiniteBooleanAlgebra,
                       elements: Iterable[int]) -> bool:
    """All signed meets +-x1 . +-x2 ... +-xn are nonzero."""
    xs = list(elements)
    for x in xs:
        algebra.check_element(x)
    for signs in range(1 << len(xs)):
        meet = algebra.one
        for i, x in enumerate(xs):
            meet &= x if (signs >> i) & 1 else algebra.complement(x)
        if meet == 0:
            return False
    return True


def is_independent_over(algebra: FiniteBooleanAlgebra,
                        sub: PartitionSubalgebra, u: int) -> bool:
    """u splits every positive element of the subalgebra: a.u != 0 != a-u.

    Checking the blocks alone suffices since every positive element is a
    union of blocks.
    """
    algebra.check_element(u)
    if sub.algebra != algebra:
        raise AmbientMismatch("subalgebra lives in a different algebra")
    return all(b & u and b & ~u for b in sub.blocks)


def are_codense(algebra: FiniteBooleanAlgebra, first: PartitionSubalgebra,
                second: PartitionSubalgebra) -> bool:
    """Each algebra's positive elements have positive minorants in the other.

    For partition subalgebras this forces block refinement both ways,
    hence equality of the partitions.
    """
    if first.algebra != algebra or second.algebra != algebra:
        raise AmbientMismatch("subalgebras live in different algebras")

    def minorized(source: PartitionSubalgebra, target: PartitionSubalgebra) -> bool:
        # enough to minorize blocks: a union of blocks inherits a minorant
        for a in source.blocks:
            if not any(t and t & ~a == 0 for t in target.blocks):
                return False
        return True

    return minorized(first, second) and minorized(second, first)


@dataclass(frozen=True)
class RegularOpenAlgebra:
    """The completion of a finite poset: all regular open subsets.

    ro_sets are element masks over the source poset, sorted; embed[p] is
    the index in ro_sets of the closure of the cone below p.
    """

    source: FinitePoset
    ro_sets: tuple[int, ...]
    embed: tuple[int, ...]
    _atom_index: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.ro_sets)

    def atom_count(self) -> int:
        return len(self.source.minimals())

    def atoms(self) -> list[int]:
        """Indices of the minimal nonzero regular open sets."""
        mins = self.source.minimals()
        return [self.index_of(self._closure_mask([m])) for m in mins]

    def _closure_mask(self, subset) -> int:
        return mask_of(regular_open_closure(self.source, subset))

    def index_of(self, mask: int) -> int:
        if not self._atom_index:
            for i, m in enumerate(self.ro_sets):
                self._atom_index[m] = i
        return self._atom_index[mask]

    def meet(self, i: int, j: int) -> int:
        return self.index_of(self.ro_sets[i] & self.ro_sets[j])

    def join(self, i: int, j: int) -> int:
        union = self.ro_sets[i] | self.ro_sets[j]
        return self.index_of(self._closure_mask(iter_bits(union)))

    def complement(self, i: int) -> int:
        from .core import compatible

        u = self.ro_sets[i]
        poset = self.source
        away = [p for p in range(poset.size)
                if not any(compatible(poset, p, q) for q in iter_bits(u))]
        return self.index_of(self._closure_mask(away))

    def zero_index(self) -> int:
        return self.index_of(0)

    def one_index(self) -> int:
        return self.index_of(self._closure_mask(range(self.source.size)))

    def as_boolean_algebra(self) -> tuple[FiniteBooleanAlgebra, dict[int, int]]:
        """Isomorphic powerset algebra on the atoms, plus ro-index -> mask map."""
        mins = self.source.minimals()
        algebra = FiniteBooleanAlgebra(len(mins))
        iso = {}
        for i, ro in enumerate(self.ro_sets):
            mask = 0
            for j, m in enumerate(mins):
                if (ro >> m) & 1:
                    mask |= 1 << j
            iso[i] = mask
        return algebra, iso


def completion(poset: FinitePoset) -> RegularOpenAlgebra:
    """All regular open subsets of the poset, with the dense embedding.

    A regular open set is determined by its minimal elements, so the
    algebra has one element per subset of the poset's minimals.
    """
    mins = poset.minimals()
    if len(mins) > 20 or (1 << len(mins)) > RO_MAX_ELEMENTS:
        raise SizeError(f"completion would have 2^{len(mins)} elements")
    ro_sets = []
    for sub in range(1 << len(mins)):
        chosen = [mins[i] for i in range(len(mins)) if (sub >> i) & 1]
        ro_sets.append(mask_of(regular_open_closure(poset, chosen)))
    ro_sets = tuple(sorted(set(ro_sets)))
    embed = []
    for p in range(poset.size):
        cone = [q for q in range(poset.size) if poset.leq(q, p)]
        embed.append(ro_sets.index(mask_of(regular_open_closure(poset, cone))))
    return RegularOpenAlgebra(poset, ro_sets, tuple(embed))


def free_algebra(k: int) -> tuple[FiniteBooleanAlgebra, list[int]]:
    """Powerset algebra on 2^k atoms with k independent generators.

    Atom s encodes a 0-1 string of length k; generator i collects the
    atoms whose i-th bit is 1.
    """
    if k < 0:
        raise ValueError("generator count must be nonnegative")
    if k > FREE_ALGEBRA_MAX_GENERATORS:
        raise SizeError(f"free algebra capped at {FREE_ALGEBRA_MAX_GENERATORS} generators")
    algebra = FiniteBooleanAlgebra(1 << k) if k else FiniteBooleanAlgebra(1)
    generators = []
    for i in range(k):
        g = 0
        for s in range(1 << k):
            if (s >> i) & 1:
                g |= 1 << s
        generators.append(g)
    return algebra, generators
