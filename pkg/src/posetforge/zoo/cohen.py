"""Finite 0-1 conditions ordered by reverse extension.

Conditions are partial functions from a finite coordinate set to {0,1};
stronger means more defined.  Each restriction to a coordinate subset is
bundled both as a suborder and as a projection map, and the meet family
of two restrictions is checked dense in the joint restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..config import max_elements
from ..core import FinitePoset, Suborder, dense_subset_failure
from ..embeddings import ProjectionMap
from ..errors import SizeError
from ..report import FAIL, PASS, CheckReport, witness_token
from .base import ZooInstance


@dataclass(frozen=True)
class CohenParams:
    coords: int = 2

    def __post_init__(self):
        if self.coords < 1:
            raise ValueError("need at least one coordinate")


def _extends(z, w) -> bool:
    return all(wv is None or wv == zv for zv, wv in zip(z, w))


def cohen_poset(params: CohenParams) -> ZooInstance:
    """All partial 0-1 functions on the coordinates, z <= w iff z extends w."""
    k = params.coords
    if 3**k > max_elements():
        raise SizeError(f"3^{k} conditions exceed the element cap")
    conditions = tuple(product((None, 0, 1), repeat=k))
    encoder = {c: i for i, c in enumerate(conditions)}

    def edges_down(cond):
        out = []
        for i in range(k):
            if cond[i] is None:
                for v in (0, 1):
                    out.append(encoder[cond[:i] + (v,) + cond[i + 1:]])
        return out

    poset = FinitePoset.from_down_edges(
        len(conditions), [edges_down(c) for c in conditions],
        labels=[_label(c) for c in conditions])

    instance = ZooInstance(name=f"cohen{k}", poset=poset,
                           decoder=conditions, encoder=encoder)

    for mask in range(1 << k):
        coords = frozenset(i for i in range(k) if (mask >> i) & 1)
        tag = "".join(str(i) for i in sorted(coords)) or "empty"
        members = [i for i, c in enumerate(conditions)
                   if all(c[j] is None or j in coords for j in range(k))]
        sub = Suborder.of(poset, members)
        instance.suborders[f"restrict{tag}"] = sub
        target, tindex = sub.induced_poset()
        mapping = {}
        for i, c in enumerate(conditions):
            restricted = tuple(c[j] if j in coords else None for j in range(k))
            mapping[i] = tindex[encoder[restricted]]
        instance.projection_maps[f"restrict{tag}"] = ProjectionMap(
            poset, tuple(range(len(conditions))), target, mapping)

    instance.extra_checks.append(("meets.dense", lambda: _joint_meet_density(instance, k)))
    return instance


def _label(cond) -> str:
    if all(v is None for v in cond):
        return "{}"
    return "{" + ",".join(f"{i}:{v}" for i, v in enumerate(cond) if v is not None) + "}"


def _joint_meet_density(instance: ZooInstance, k: int) -> CheckReport:
    """For coordinate sets S1, S2: the compatible meets q1*q2 of the two
    restrictions form a dense set in the joint restriction."""
    poset = instance.poset
    conditions = instance.decoder
    for m1 in range(1 << k):
        for m2 in range(1 << k):
            s1 = [i for i, c in enumerate(conditions)
                  if all(v is None or (m1 >> j) & 1 for j, v in enumerate(c))]
            s2 = [i for i, c in enumerate(conditions)
                  if all(v is None or (m2 >> j) & 1 for j, v in enumerate(c))]
            meets = set()
            for i in s1:
                for j in s2:
                    merged = _merge(conditions[i], conditions[j])
                    if merged is not None:
                        meets.add(instance.encoder[merged])
            joint = [i for i, c in enumerate(conditions)
                     if all(v is None or ((m1 | m2) >> j) & 1 for j, v in enumerate(c))]
            jsub, jindex = Suborder.of(poset, joint).induced_poset()
            inside = frozenset(jindex[i] for i in meets)
            gap = dense_subset_failure(jsub, inside)
            if gap is not None:
                return CheckReport(name="meets", status=FAIL,
                                   witness=witness_token(s1=m1, s2=m2, gap=gap))
    return CheckReport(name="meets", status=PASS)


def _merge(c1, c2):
    out = []
    for a, b in zip(c1, c2):
        if a is not None and b is not None and a != b:
            return None
        out.append(a if a is not None else b)
    return tuple(out)
