"""Regular-suborder criteria, projections, and projection-map checking.

Three independent routes decide whether a suborder is regular (its
maximal antichains stay predense in the parent): direct antichain
checking, pseudo-projection search, and comparison of the completions.
They are required to agree; the test suite enforces that against a naive
oracle as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import (AntichainSet, FinitePoset, Suborder, compatible,
                   dense_subset_failure, iter_bits, iter_maximal_antichains,
                   mask_of)
from .boolalg import FiniteBooleanAlgebra, PartitionSubalgebra
from .errors import DomainError
from .report import FAIL, PASS, CheckReport, witness_token

# Suborders at most this large go through honest antichain enumeration.
_ENUMERATION_CUTOFF = 14


@dataclass(frozen=True)
class RegularityVerdict:
    regular: bool
    route: str
    witness_antichain: Optional[AntichainSet] = None
    witness_element: Optional[int] = None


def _minimal_cover_gap(poset: FinitePoset, sub: Suborder) -> Optional[int]:
    """A parent-minimal element incompatible with every suborder member,
    or None when no such element exists."""
    covered = 0
    for m in sub.internal_minimals():
        covered |= poset.minmask(m)
    gap = mask_of(range(len(poset.minimals()))) & ~covered
    if gap == 0:
        return None
    position = next(iter_bits(gap))
    return poset.minimals()[position]


def _greedy_blocking_antichain(poset: FinitePoset, sub: Suborder,
                               blocker: int) -> AntichainSet:
    """A suborder-maximal antichain all of whose members are incompatible
    with the blocker.  Exists whenever the blocker witnesses failure."""
    chosen: list[int] = []
    for q in sub.sorted_members():
        if compatible(poset, q, blocker):
            continue
        if all(not sub.compatible_inside(q, c) for c in chosen):
            chosen.append(q)
    return AntichainSet.of(chosen)


def is_regular_suborder_antichain(poset: FinitePoset,
                                  sub: Suborder) -> RegularityVerdict:
    """Route one: every suborder-maximal antichain is predense in the parent.

    Small suborders are checked by honest enumeration; larger ones by the
    equivalent blocker scan (an antichain fails predensity exactly when
    some element is incompatible with the whole incompatible-part of the
    suborder below it, and parent-minimal blockers suffice).
    """
    if len(sub.members) <= _ENUMERATION_CUTOFF and not poset.is_lazy:
        mins = poset.minimals()
        allmin = mask_of(range(len(mins)))
        for chain in iter_maximal_antichains(poset, sub):
            covered = 0
            for a in chain.elements:
                covered |= poset.minmask(a)
            gap = allmin & ~covered
            if gap:
                element = mins[next(iter_bits(gap))]
                return RegularityVerdict(False, "antichain", chain, element)
        return RegularityVerdict(True, "antichain")
    blocker = _minimal_cover_gap(poset, sub)
    if blocker is None:
        return RegularityVerdict(True, "antichain")
    chain = _greedy_blocking_antichain(poset, sub, blocker)
    return RegularityVerdict(False, "antichain", chain, blocker)


def is_regular_suborder_pseudoprojection(poset: FinitePoset,
                                         sub: Suborder) -> RegularityVerdict:
    """Route two: every parent element b admits a ∈ Q such that all of Q
    below a stays compatible with b.

    A candidate a works exactly when every suborder-minimal element below
    a is compatible with b, and a minimal candidate works first.
    """
    internal = sub.internal_minimals()
    for b in range(poset.size):
        if not any(compatible(poset, m, b) for m in internal):
            chain = _greedy_blocking_antichain(poset, sub, b)
            return RegularityVerdict(False, "pseudoprojection", chain, b)
    return RegularityVerdict(True, "pseudoprojection")


def is_regular_suborder_completion(poset: FinitePoset,
                                   sub: Suborder) -> RegularityVerdict:
    """Route three: compare the completions.

    The completion of a finite order is the powerset of its minimal
    elements; the suborder inclusion induces the map sending each atom of
    the suborder's completion to the parent closure of its cone.  The
    suborder is regular exactly when the image of the atom antichain is
    predense in the parent completion; coarser antichains inherit that.
    Zero and order preservation hold by construction and are asserted.
    """
    parent_atoms = poset.minimals()
    sub_atoms = sub.internal_minimals()
    traces = [poset.minmask(m) for m in sub_atoms]
    assert all(t for t in traces), "atom images must be nonzero"
    covered = 0
    for t in traces:
        covered |= t
    gap = mask_of(range(len(parent_atoms))) & ~covered
    if gap:
        element = parent_atoms[next(iter_bits(gap))]
        chain = _greedy_blocking_antichain(poset, sub, element)
        return RegularityVerdict(False, "completion", chain, element)
    return RegularityVerdict(True, "completion")


def regularity_routes(poset: FinitePoset, sub: Suborder):
    return (is_regular_suborder_antichain(poset, sub),
            is_regular_suborder_pseudoprojection(poset, sub),
            is_regular_suborder_completion(poset, sub))


def pseudo_projection(poset: FinitePoset, sub: Suborder,
                      b: int) -> Optional[int]:
    """Some a ∈ Q with every Q-element below a compatible with b, or None.

    Deterministic tie-break: smallest index.
    """
    poset.check_index(b)
    internal = set(sub.internal_minimals())
    for a in sub.sorted_members():
        good = True
        for m in internal:
            if poset.leq(m, a) and not compatible(poset, m, b):
                good = False
                break
        if good:
            return a
    return None


def upper_projection(algebra: FiniteBooleanAlgebra, sub: PartitionSubalgebra,
                     b: int) -> int:
    """The least subalgebra element above b: union of blocks meeting b."""
    algebra.check_element(b)
    out = 0
    for block in sub.blocks:
        if block & b:
            out |= block
    return out


def lower_projection(algebra: FiniteBooleanAlgebra, sub: PartitionSubalgebra,
                     b: int) -> int:
    """The largest subalgebra element below b: union of blocks inside b."""
    algebra.check_element(b)
    out = 0
    for block in sub.blocks:
        if block & ~b == 0:
            out |= block
    return out


@dataclass(frozen=True)
class ProjectionMap:
    """A map from a dense subset of a source poset into a target poset."""

    source: FinitePoset
    source_dense: tuple[int, ...]
    target: FinitePoset
    mapping: dict[int, int] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "source_dense",
                           tuple(sorted(set(self.source_dense))))
        for q in self.source_dense:
            self.source.check_index(q)
            if q not in self.mapping:
                raise ValueError(f"map not total on declared domain: {q}")
        for q, r in self.mapping.items():
            self.target.check_index(r)

    def apply(self, q: int) -> int:
        return self.mapping[q]

    def mutated(self, rng) -> "ProjectionMap":
        """Copy with one mapping entry redirected to a different target."""
        q = rng.choice(self.source_dense)
        old = self.mapping[q]
        new = rng.choice([r for r in range(self.target.size) if r != old])
        mapping = dict(self.mapping)
        mapping[q] = new
        return ProjectionMap(self.source, self.source_dense, self.target, mapping)


def check_projection_map(src: FinitePoset, pm: ProjectionMap,
                         clauses: Iterable[str] = ("monotone", "lifting", "pullback"),
                         name: str = "projection-map",
                         require_dense: bool = True) -> CheckReport:
    """Verify a claimed projection.

    Checked in order: the declared domain is dense in the source
    (DomainError otherwise), then (i) monotonicity on the domain,
    (ii) the lifting property: whenever r strengthens map(q) there is
    q' <= q in the domain with map(q') <= r, and (iii) the pullback of
    every maximal antichain of the target is predense in the source.

    require_dense=False skips the density precondition for maps whose
    domain is only dense on a documented regime.
    """
    wanted = tuple(clauses)
    dense = pm.source_dense
    if require_dense:
        gap = dense_subset_failure(src, dense)
        if gap is not None:
            raise DomainError(f"declared domain is not dense: nothing below element {gap}")
    results = []
    ok = True

    pos = {q: i for i, q in enumerate(dense)}
    below_in_dense: Optional[list[int]] = None

    def dense_pairs():
        """(stronger, weaker) pairs inside the declared domain."""
        if not src.is_lazy:
            dmask = mask_of(dense)
            for q in dense:
                row = src.down_mask(q) & dmask & ~(1 << q)
                for q2 in iter_bits(row):
                    yield q2, q
        else:
            for q in dense:
                for q2 in dense:
                    if q2 != q and src.leq(q2, q):
                        yield q2, q

    if "monotone" in wanted:
        witness = None
        for q2, q in dense_pairs():
            if not pm.target.leq(pm.apply(q2), pm.apply(q)):
                witness = witness_token(clause="monotone", stronger=q2, weaker=q)
                break
        results.append(("monotone", witness is None, witness))
        ok = ok and witness is None

    if "lifting" in wanted and ok:
        below_in_dense = [0] * len(dense)
        for q2, q in dense_pairs():
            below_in_dense[pos[q]] |= 1 << pos[q2]
        for i, q in enumerate(dense):
            below_in_dense[i] |= 1 << i
        # for each target element r, the domain elements mapping below r;
        # grouped by image since domains are much larger than targets
        by_image: dict[int, int] = {}
        for i, q in enumerate(dense):
            fq = pm.apply(q)
            by_image[fq] = by_image.get(fq, 0) | (1 << i)
        maps_below = [0] * pm.target.size
        for t0, rows in by_image.items():
            for r in range(pm.target.size):
                if pm.target.leq(t0, r):
                    maps_below[r] |= rows
        witness = None
        target_strengthenings = [
            [r for r in range(pm.target.size) if pm.target.leq(r, fq)]
            for fq in range(pm.target.size)]
        for i, q in enumerate(dense):
            for r in target_strengthenings[pm.apply(q)]:
                if below_in_dense[i] & maps_below[r] == 0:
                    witness = witness_token(clause="lifting", q=q, r=r)
                    break
            if witness:
                break
        results.append(("lifting", witness is None, witness))
        ok = ok and witness is None

    if "pullback" in wanted and ok:
        minall = mask_of(range(len(src.minimals())))
        # pullback of an antichain member a: domain elements mapping at or
        # below a (the preimage of the open set a generates)
        premask = [0] * pm.target.size
        image_mask = [0] * pm.target.size
        for q in dense:
            image_mask[pm.apply(q)] |= src.minmask(q)
        for a in range(pm.target.size):
            acc = 0
            for t in range(pm.target.size):
                if pm.target.leq(t, a):
                    acc |= image_mask[t]
            premask[a] = acc
        witness = None
        full_target = Suborder.full(pm.target)
        for chain in iter_maximal_antichains(pm.target, full_target):
            covered = 0
            for a in chain.elements:
                covered |= premask[a]
            if minall & ~covered:
                position = next(iter_bits(minall & ~covered))
                witness = witness_token(clause="pullback",
                                        antichain=chain.sorted_elements(),
                                        unmet=src.minimals()[position])
                break
        results.append(("pullback", witness is None, witness))
        ok = ok and witness is None

    status = PASS if ok else FAIL
    first_witness = next((w for _, good, w in results if not good), None)
    return CheckReport(name=name, status=status, witness=first_witness,
                       details=tuple(results))
