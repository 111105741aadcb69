"""Conditions growing columnwise-increasing sequences.

Each condition assigns to finitely many indices a value sequence, all of
one common length; extensions may lengthen the sequences and add
indices, but every freshly written column must be strictly increasing
along the index order of the weaker condition.  Restrictions to index
subsets come bundled with their projection maps, whose declared domain
is the dense set of full-length conditions (shorter conditions lack the
column room the lifting property needs at bounded values).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..config import max_elements
from ..core import Suborder
from ..embeddings import ProjectionMap
from ..errors import SizeError
from .base import ZooInstance, build_pairwise


@dataclass(frozen=True)
class ChainParams:
    index_count: int = 2
    value_bound: int = 3
    max_len: int = 2

    def __post_init__(self):
        if min(self.index_count, self.value_bound, self.max_len) < 1:
            raise ValueError("all bounds must be >= 1")
        if self.index_count > self.value_bound:
            raise ValueError("need value room for one strictly increasing column")


def chain_leq(z, w) -> bool:
    """Coordinatewise extension with new columns strictly increasing
    across the index order of the weaker condition."""
    for zr, wr in zip(z, w):
        if wr is None:
            continue
        if zr is None or zr[:len(wr)] != wr:
            return False
    present = [i for i, wr in enumerate(w) if wr is not None]
    if len(present) < 2:
        return True
    n_w = len(w[present[0]])
    n_z = len(z[present[0]])
    for col in range(n_w, n_z):
        for a, b in zip(present, present[1:]):
            if not z[a][col] < z[b][col]:
                return False
    return True


def chain_poset(params: ChainParams) -> ZooInstance:
    rows_by_len = [list(product(range(params.value_bound), repeat=length))
                   for length in range(params.max_len + 1)]
    conditions = [tuple([None] * params.index_count)]
    for mask in range(1, 1 << params.index_count):
        idx = [i for i in range(params.index_count) if (mask >> i) & 1]
        for length in range(params.max_len + 1):
            for combo in product(rows_by_len[length], repeat=len(idx)):
                cond = [None] * params.index_count
                for i, row in zip(idx, combo):
                    cond[i] = row
                conditions.append(tuple(cond))
    if len(conditions) > max_elements():
        raise SizeError(f"{len(conditions)} conditions exceed the element cap")
    conditions = tuple(conditions)
    encoder = {c: i for i, c in enumerate(conditions)}
    poset = build_pairwise(conditions, chain_leq)
    name = f"chain{params.index_count}x{params.value_bound}x{params.max_len}"
    instance = ZooInstance(name=name, poset=poset,
                           decoder=conditions, encoder=encoder)
    instance.extras["params"] = params

    full_len = [i for i, c in enumerate(conditions)
                if all(r is None or len(r) == params.max_len for r in c)]

    for mask in range(1, 1 << params.index_count):
        idx = frozenset(i for i in range(params.index_count) if (mask >> i) & 1)
        label = "".join(str(i) for i in sorted(idx))
        members = [j for j, c in enumerate(conditions)
                   if all(c[i] is None or i in idx for i in range(params.index_count))]
        sub = Suborder.of(poset, members)
        instance.suborders[f"restrict{label}"] = sub
        target, tindex = sub.induced_poset()
        mapping = {}
        for j in full_len:
            c = conditions[j]
            restricted = tuple(c[i] if i in idx else None
                               for i in range(params.index_count))
            mapping[j] = tindex[encoder[restricted]]
        instance.projection_maps[f"restrict{label}"] = ProjectionMap(
            poset, tuple(full_len), target, mapping)

    return instance
