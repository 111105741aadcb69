"""Finite sequences forced to grow pairwise different.

Conditions assign to finitely many indices a bounded sequence of values;
an extension may lengthen rows and add rows, but wherever it writes a
new position on one row of the weaker condition, it must differ from
every other row of the weaker condition defined there.  Restrictions to
index subsets are bundled as suborders.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..config import max_elements
from ..core import Suborder
from ..errors import SizeError
from ..report import FAIL, PASS, CheckReport, witness_token
from .base import ZooInstance, build_pairwise


@dataclass(frozen=True)
class EvDiffParams:
    index_count: int = 2
    value_count: int = 2
    max_len: int = 1

    def __post_init__(self):
        if min(self.index_count, self.value_count, self.max_len) < 1:
            raise ValueError("all bounds must be >= 1")


def all_rows(value_count: int, max_len: int):
    """None plus every value sequence of length <= max_len."""
    rows = [None]
    for length in range(max_len + 1):
        rows.extend(product(range(value_count), repeat=length))
    return rows


def row_extends(zrow, wrow) -> bool:
    if wrow is None:
        return True
    if zrow is None:
        return False
    return zrow[:len(wrow)] == wrow


def evdiff_leq(z, w, enforce_difference: bool = True) -> bool:
    """z <= w in the eventually-different order."""
    if not all(row_extends(zr, wr) for zr, wr in zip(z, w)):
        return False
    if not enforce_difference:
        return True
    present = [i for i, wr in enumerate(w) if wr is not None]
    for a in present:
        za, wa = z[a], w[a]
        for pos in range(len(wa), len(za)):
            for b in present:
                if b == a:
                    continue
                zb = z[b]
                if zb is not None and pos < len(zb) and za[pos] == zb[pos]:
                    return False
    return True


def evdiff_poset(params: EvDiffParams, enforce_difference: bool = True) -> ZooInstance:
    rows = all_rows(params.value_count, params.max_len)
    count = len(rows) ** params.index_count
    if count > max_elements():
        raise SizeError(f"{count} conditions exceed the element cap")
    conditions = tuple(product(rows, repeat=params.index_count))
    encoder = {c: i for i, c in enumerate(conditions)}
    poset = build_pairwise(conditions,
                           lambda z, w: evdiff_leq(z, w, enforce_difference))
    tag = "evdiff" if enforce_difference else "evdiff-nodiff"
    name = f"{tag}{params.index_count}x{params.value_count}x{params.max_len}"
    instance = ZooInstance(name=name, poset=poset,
                           decoder=conditions, encoder=encoder)
    instance.extras["params"] = params
    instance.extras["enforce_difference"] = enforce_difference

    for mask in range(1, 1 << params.index_count):
        idx = [i for i in range(params.index_count) if (mask >> i) & 1]
        label = "".join(str(i) for i in idx)
        members = [j for j, c in enumerate(conditions)
                   if all(c[i] is None or i in idx for i in range(params.index_count))]
        instance.suborders[f"restrict{label}"] = Suborder.of(poset, members)

    if enforce_difference:
        instance.extra_checks.append(
            ("order.control", lambda: _difference_clause_control(params)))
    return instance


def _difference_clause_control(params: EvDiffParams) -> CheckReport:
    """Dropping the difference clause must change the order, and some
    antichain that is maximal without the clause must fail to stay
    maximal (equivalently predense) under the true order."""
    from ..core import FinitePoset, Suborder, compatible, iter_maximal_antichains

    rows = all_rows(params.value_count, params.max_len)
    conditions = tuple(product(rows, repeat=params.index_count))
    true_poset = build_pairwise(conditions, lambda z, w: evdiff_leq(z, w, True))
    loose_poset = build_pairwise(conditions, lambda z, w: evdiff_leq(z, w, False))
    flipped = sum(1 for i in range(len(conditions)) for j in range(len(conditions))
                  if true_poset.leq(i, j) != loose_poset.leq(i, j))
    if flipped == 0:
        return CheckReport(name="order.control", status=FAIL,
                           witness=witness_token(reason="orders identical"))
    full = Suborder.full(loose_poset)
    for chain in iter_maximal_antichains(loose_poset, full):
        for b in range(true_poset.size):
            if all(not compatible(true_poset, b, a) for a in chain.elements):
                return CheckReport(name="order.control", status=PASS)
    return CheckReport(name="order.control", status=FAIL,
                       witness=witness_token(reason="no antichain failure found"))
