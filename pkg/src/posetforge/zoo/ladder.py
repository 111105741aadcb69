"""Conditions steering a 0-1 function along ladders at designated points.

A condition pairs a finite partial 0-1 function on {0..n-1} with a
finite set of designated limit points; extending the function must
write zeros on the ladder ranges owned by the committed points that lie
in the distinguished set.  Each cut a below n yields a suborder R_a of
conditions living inside [0, a), together with a witness construction
sending any condition to an R_a condition all of whose R_a extensions
stay compatible with it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..config import max_elements
from ..core import Suborder, compatible, iter_bits
from ..errors import SizeError, WitnessError
from ..report import FAIL, PASS, CheckReport, witness_token
from .base import ZooInstance
from ..core import FinitePoset


@dataclass(frozen=True)
class LadderParams:
    ordinal_bound: int = 8
    limit_points: tuple[int, ...] = (4, 6)
    ladders: tuple[tuple[int, ...], ...] = ((1, 3), (2, 5))
    distinguished: tuple[int, ...] = (4,)

    def __post_init__(self):
        if self.ordinal_bound < 1:
            raise ValueError("ordinal bound must be >= 1")
        if len(self.ladders) != len(self.limit_points):
            raise ValueError("one ladder per limit point")
        for alpha, ladder in zip(self.limit_points, self.ladders):
            if not (0 < alpha < self.ordinal_bound):
                raise ValueError("limit points must lie inside the bound")
            if list(ladder) != sorted(set(ladder)) or not ladder:
                raise ValueError("ladders must be strictly increasing and nonempty")
            if ladder[-1] >= alpha:
                raise ValueError("ladders must stay below their limit point")
        if not set(self.distinguished) <= set(self.limit_points):
            raise ValueError("distinguished points must be limit points")

    def ladder_of(self, alpha: int) -> tuple[int, ...]:
        return self.ladders[self.limit_points.index(alpha)]


def ladder_leq(strong, weak, params: LadderParams) -> bool:
    """(g,t) <= (f,s): g extends f, t contains s, and every point newly
    written by g inside a ladder range owned by s's distinguished points
    carries a zero."""
    g, t = strong
    f, s = weak
    if not set(s) <= set(t):
        return False
    blocked = set()
    for alpha in s:
        if alpha in params.distinguished:
            blocked.update(params.ladder_of(alpha))
    for beta in range(params.ordinal_bound):
        fv, gv = f[beta], g[beta]
        if fv is not None:
            if gv != fv:
                return False
        elif gv is not None and beta in blocked and gv != 0:
            return False
    return True


def ladder_poset(params: LadderParams) -> ZooInstance:
    n = params.ordinal_bound
    count = (3 ** n) * (2 ** len(params.limit_points))
    if count > max_elements():
        raise SizeError(f"{count} conditions exceed the element cap")
    s_options = []
    for mask in range(1 << len(params.limit_points)):
        s_options.append(tuple(sorted(params.limit_points[i]
                                      for i in range(len(params.limit_points))
                                      if (mask >> i) & 1)))
    conditions = [(f, s) for f in product((None, 0, 1), repeat=n)
                  for s in s_options]
    # strong conditions first keeps the closure masks small
    conditions.sort(key=lambda c: (-(sum(v is not None for v in c[0]) + len(c[1])),
                                   tuple(-1 if v is None else v for v in c[0]),
                                   c[1]))
    conditions = tuple(conditions)
    encoder = {c: i for i, c in enumerate(conditions)}

    edges_down: list[list[int]] = [[] for _ in conditions]
    for idx, (f, s) in enumerate(conditions):
        blocked = set()
        for alpha in s:
            if alpha in params.distinguished:
                blocked.update(params.ladder_of(alpha))
        for beta in range(n):
            if f[beta] is None:
                continue
            weaker = encoder[(f[:beta] + (None,) + f[beta + 1:], s)]
            if f[beta] == 0 or beta not in blocked:
                edges_down[weaker].append(idx)
        for alpha in s:
            weaker = encoder[(f, tuple(x for x in s if x != alpha))]
            edges_down[weaker].append(idx)

    poset = FinitePoset.from_down_edges(len(conditions), edges_down)
    instance = ZooInstance(name=f"ladder{n}", poset=poset,
                           decoder=conditions, encoder=encoder)
    instance.extras["params"] = params

    for cut in range(n + 1):
        members = [i for i, (f, s) in enumerate(conditions)
                   if all(v is None for v in f[cut:]) and all(x < cut for x in s)]
        instance.suborders[f"R{cut}"] = Suborder.of(poset, members)

    instance.extra_checks.append(
        ("witness.scan", lambda: witness_scan(instance)))
    instance.extra_checks.append(
        ("witness.control", lambda: witness_negative_control(instance)))
    return instance


def witness(instance: ZooInstance, condition, cut: int, zero_on_y: bool = True):
    """The R_cut condition every R_cut extension of which is compatible
    with the given condition.

    x collects the committed distinguished points at or above the cut; y
    their ladder points below the cut still unwritten; the witness keeps
    the function below the cut, writes zeros on y, and keeps the cut's
    part of the point set.  zero_on_y=False skips the zeros (negative
    control; the result is then not a valid witness).
    """
    params: LadderParams = instance.extras["params"]
    f, s = condition
    if cut in params.distinguished:
        raise WitnessError(f"cut {cut} lies in the distinguished set")
    x = [alpha for alpha in s if alpha in params.distinguished and alpha >= cut]
    y = sorted({beta for alpha in x for beta in params.ladder_of(alpha)
                if beta < cut and f[beta] is None})
    g = list(v if beta < cut else None for beta, v in enumerate(f))
    if zero_on_y:
        for beta in y:
            g[beta] = 0
    t = tuple(alpha for alpha in s if alpha < cut)
    return (tuple(g), t)


def _scan_one(instance: ZooInstance, idx: int, cut: int,
              zero_on_y: bool = True) -> bool:
    """Every R_cut extension of the witness is compatible with condition idx.

    It suffices to scan the strongest extensions: compatibility is
    inherited upward.
    """
    params: LadderParams = instance.extras["params"]
    poset = instance.poset
    condition = instance.decoder[idx]
    w_f, w_t = witness(instance, condition, cut, zero_on_y)
    blocked = set()
    for alpha in w_t:
        if alpha in params.distinguished:
            blocked.update(params.ladder_of(alpha))
    free = [beta for beta in range(cut) if w_f[beta] is None]
    t_full = tuple(alpha for alpha in params.limit_points if alpha < cut)
    for assignment in product((0, 1), repeat=len(free)):
        g = list(w_f)
        legal = True
        for beta, v in zip(free, assignment):
            if beta in blocked and v != 0:
                legal = False
                break
            g[beta] = v
        if not legal:
            continue
        strong = (tuple(g), t_full)
        if not compatible(poset, instance.encoder[strong], idx):
            return False
    return True


def witness_scan(instance: ZooInstance) -> CheckReport:
    params: LadderParams = instance.extras["params"]
    n = params.ordinal_bound
    cuts = [c for c in range(n + 1) if c not in params.distinguished]
    for idx in range(instance.poset.size):
        for cut in cuts:
            if not _scan_one(instance, idx, cut):
                return CheckReport(name="witness.scan", status=FAIL,
                                   witness=witness_token(condition=idx, cut=cut))
    return CheckReport(name="witness.scan", status=PASS)


def witness_negative_control(instance: ZooInstance) -> CheckReport:
    """Skipping the zero writes must break the scan somewhere."""
    params: LadderParams = instance.extras["params"]
    n = params.ordinal_bound
    cuts = [c for c in range(n + 1) if c not in params.distinguished]
    for idx in range(instance.poset.size):
        for cut in cuts:
            if not _scan_one(instance, idx, cut, zero_on_y=False):
                return CheckReport(name="witness.control", status=PASS)
    return CheckReport(name="witness.control", status=FAIL,
                       witness=witness_token(reason="control never failed"))
