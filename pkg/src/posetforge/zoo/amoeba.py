"""Measure-budget conditions on dyadic open sets, and finite products.

A single-copy condition pairs a union of resolution-r dyadic intervals
with a strictly larger measure budget from the grid {1/2^r .. 1};
extensions grow the set and shrink the budget.  The product instance
takes j-tuples (the all-top tuple is the empty condition).  Caller
supplied positive dyadic sets B induce the covering families D_a
(some copy's complement fits inside B_a) and the budget families E_i
(copy i runs under a budget below one); all measures are exact dyadic
counts, no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..config import max_elements
from ..errors import InputError, SizeError
from ..report import FAIL, PASS, CheckReport, witness_token
from .base import ZooInstance, build_pairwise


@dataclass(frozen=True)
class AmoebaParams:
    resolution: int = 2
    copies: int = 2

    def __post_init__(self):
        if not (1 <= self.resolution <= 4):
            raise ValueError("resolution must be between 1 and 4")
        if not (1 <= self.copies <= 3):
            raise ValueError("copies must be between 1 and 3")


def single_conditions(resolution: int):
    """(interval mask, budget numerator) with measure(mask) < budget."""
    grid = 1 << resolution
    out = []
    for omask in range(1 << grid):
        for dnum in range(1, grid + 1):
            if omask.bit_count() < dnum:
                out.append((omask, dnum))
    return out


def single_leq(q, p) -> bool:
    """q <= p: larger open set, no larger budget."""
    (oq, dq), (op_, dp) = q, p
    return dq <= dp and oq & op_ == op_


def amoeba_poset(params: AmoebaParams, b_sets: tuple[int, ...] = ()) -> ZooInstance:
    """Product of j single-copy amoeba posets with the D/E families.

    b_sets are dyadic interval masks at the instance resolution, one per
    requested covering family; each must have positive measure.
    """
    grid = 1 << params.resolution
    full = (1 << grid) - 1
    for b in b_sets:
        if b & full == 0:
            raise InputError("covering sets must have positive measure")
    singles = single_conditions(params.resolution)
    top = (0, grid)
    conditions = tuple(product(singles, repeat=params.copies))
    if len(conditions) > max_elements():
        raise SizeError(f"{len(conditions)} conditions exceed the element cap")
    encoder = {c: i for i, c in enumerate(conditions)}

    def leq(z, w):
        return all(single_leq(zc, wc) for zc, wc in zip(z, w))

    poset = build_pairwise(conditions, leq)
    name = f"amoeba{params.resolution}x{params.copies}"
    instance = ZooInstance(name=name, poset=poset,
                           decoder=conditions, encoder=encoder)
    instance.extras["params"] = params
    instance.extras["top"] = top
    instance.extras["b_sets"] = tuple(b_sets)

    for i in range(params.copies):
        members = frozenset(
            j for j, c in enumerate(conditions) if c[i][1] < grid)
        instance.dense_sets[f"E{i}"] = members
    for a, b in enumerate(b_sets):
        members = frozenset(
            j for j, c in enumerate(conditions)
            if any((~oc & full) & ~b == 0 for oc, _ in c))
        instance.dense_sets[f"D{a}"] = members
        instance.extra_checks.append(
            (f"D{a}.dense.fresh",
             _regime_density_check(instance, f"D{a}", lambda c: top in c)))
    for i in range(params.copies):
        instance.extra_checks.append(
            (f"E{i}.dense.fresh",
             _regime_density_check(instance, f"E{i}",
                                   lambda c, i=i: c[i] == top)))
    return instance


def _regime_density_check(instance: ZooInstance, label: str, regime):
    """Density of the family below every condition in the stated regime;
    the finite shadow of choosing a coordinate outside the support."""
    def run() -> CheckReport:
        dense = instance.dense_sets[label]
        poset = instance.poset
        for j, cond in enumerate(instance.decoder):
            if not regime(cond):
                continue
            if not any(poset.leq(i, j) for i in dense):
                return CheckReport(name=label, status=FAIL,
                                   witness=witness_token(condition=j))
        return CheckReport(name=label, status=PASS)
    return run


def interval_mask(resolution: int, lo_num: int, hi_num: int) -> int:
    """Dyadic mask for [lo_num/2^r, hi_num/2^r)."""
    if not (0 <= lo_num <= hi_num <= (1 << resolution)):
        raise InputError("interval endpoints out of range")
    mask = 0
    for i in range(lo_num, hi_num):
        mask |= 1 << i
    return mask
