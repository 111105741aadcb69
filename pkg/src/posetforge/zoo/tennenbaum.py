"""Finite tree orders with chain-injective colorings, and their cuts.

The bare poset holds pairs (t, <_t) where t is a subset of {0..n-1} and
<_t is a tree order on t respecting the integer order, compared by
reverse extension.  The colored poset additionally carries a coloring
injective on chains.  For every cut a the colored conditions living
inside [0, a) form the suborder D_a; the restriction map to D_a is a
projection on the set E_a of conditions whose colored ancestries below
the cut are already witnessed below the cut.  E_a is dense only where
the cut leaves room, so its density is checked on a slack regime.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..config import max_elements
from ..core import FinitePoset, Suborder, mask_of
from ..embeddings import ProjectionMap
from ..errors import InputError, SizeError
from ..report import FAIL, PASS, CheckReport, witness_token
from .base import ZooInstance


@dataclass(frozen=True)
class TennenbaumParams:
    ordinal_bound: int = 5
    color_count: int = 3
    slack: int = 2

    def __post_init__(self):
        if not (1 <= self.ordinal_bound <= 6):
            raise ValueError("ordinal bound must be between 1 and 6")
        if not (1 <= self.color_count <= 3):
            raise ValueError("color count must be between 1 and 3")


def make_tree_condition(nodes, relation, colors=None, color_count=None):
    """Validated condition; InputError when the relation is not a tree
    order respecting the integer order, or the coloring repeats on a chain."""
    nodes = tuple(sorted(nodes))
    relation = frozenset(relation)
    node_set = set(nodes)
    for a, b in relation:
        if a not in node_set or b not in node_set:
            raise InputError(f"relation pair ({a},{b}) outside the node set")
        if not a < b:
            raise InputError(f"pair ({a},{b}) does not respect the integer order")
    for a, b in relation:
        for c, d in relation:
            if b == c and (a, d) not in relation:
                raise InputError("relation is not transitive")
    for x in nodes:
        pred = sorted(a for a, b in relation if b == x)
        for u, v in zip(pred, pred[1:]):
            if (u, v) not in relation:
                raise InputError(f"predecessors of {x} do not form a chain")
    if colors is not None:
        colors = tuple(colors)
        if len(colors) != len(nodes):
            raise InputError("one color per node")
        if color_count is not None and any(not 0 <= c < color_count for c in colors):
            raise InputError("color out of range")
        cmap = dict(zip(nodes, colors))
        for a, b in relation:
            if cmap[a] == cmap[b]:
                raise InputError(f"chain {a}<{b} repeats color {cmap[a]}")
        return (nodes, relation, colors)
    return (nodes, relation)


def _enumerate_forests(nodes):
    """All tree orders on the given sorted nodes, as ancestor-pair sets.

    Each order is generated once via its parent function: a node's
    predecessors form a chain, whose maximum is the parent.
    """
    out = []

    def rec(i, chains, rel):
        if i == len(nodes):
            out.append((frozenset(rel), tuple(tuple(c) for c in chains)))
            return
        x = nodes[i]
        rec(i + 1, chains + [[]], rel)
        for j in range(i):
            parent_chain = chains[j] + [nodes[j]]
            rec(i + 1, chains + [parent_chain],
                rel + [(a, x) for a in parent_chain])

    rec(0, [], [])
    return out


def tennenbaum_poset(params: TennenbaumParams) -> ZooInstance:
    n = params.ordinal_bound
    c = params.color_count

    bare = []
    colored = []
    for tmask in range(1 << n):
        nodes = tuple(i for i in range(n) if (tmask >> i) & 1)
        for rel, chains in _enumerate_forests(nodes):
            bare.append((nodes, rel))
            colorings = [()]
            for i, x in enumerate(nodes):
                chain_cols = None
                nxt = []
                for partial in colorings:
                    used = {partial[nodes.index(a)] for a in chains[i]}
                    for col in range(c):
                        if col not in used:
                            nxt.append(partial + (col,))
                colorings = nxt
            for cols in colorings:
                colored.append((nodes, rel, cols))
    if len(colored) > max_elements():
        raise SizeError(f"{len(colored)} conditions exceed the element cap")

    colored.sort(key=lambda cond: (-len(cond[0]), cond[0],
                                   sorted(cond[1]), cond[2]))
    colored = tuple(colored)
    encoder = {cond: i for i, cond in enumerate(colored)}

    edges_down: list[list[int]] = [[] for _ in colored]
    for idx, (nodes, rel, cols) in enumerate(colored):
        for drop in nodes:
            rest_nodes = tuple(x for x in nodes if x != drop)
            rest_rel = frozenset((a, b) for a, b in rel if a != drop and b != drop)
            rest_cols = tuple(col for x, col in zip(nodes, cols) if x != drop)
            edges_down[encoder[(rest_nodes, rest_rel, rest_cols)]].append(idx)

    poset = FinitePoset.from_down_edges(len(colored), edges_down)
    instance = ZooInstance(name=f"tennenbaum{n}x{c}", poset=poset,
                           decoder=colored, encoder=encoder)
    instance.extras["params"] = params
    instance.extras["bare_conditions"] = tuple(bare)

    for cut in range(1, n):
        label = f"cut{cut}"
        members = [i for i, (nodes, _, _) in enumerate(colored)
                   if all(x < cut for x in nodes)]
        sub = Suborder.of(poset, members)
        instance.suborders[label] = sub
        target, tindex = sub.induced_poset()

        emembers = [i for i, cond in enumerate(colored)
                    if _in_witnessed_layer(cond, cut)]
        mapping = {}
        for i in emembers:
            nodes, rel, cols = colored[i]
            rnodes = tuple(x for x in nodes if x < cut)
            rrel = frozenset((a, b) for a, b in rel if b < cut)
            rcols = tuple(col for x, col in zip(nodes, cols) if x < cut)
            mapping[i] = tindex[encoder[(rnodes, rrel, rcols)]]
        pm = ProjectionMap(poset, tuple(emembers), target, mapping)
        instance.projection_maps[label] = pm
        instance.projection_clauses[label] = ("monotone", "lifting")
        instance.projection_dense_required[label] = False
        instance.extras[f"E{cut}"] = frozenset(emembers)
        instance.extra_checks.append(
            (f"E{cut}.dense.slack", _slack_density_check(instance, cut)))
    return instance


def _in_witnessed_layer(cond, cut: int) -> bool:
    """Every color appearing above a sub-cut node also appears above it
    inside the cut."""
    nodes, rel, cols = cond
    cmap = dict(zip(nodes, cols))
    for beta in nodes:
        if beta >= cut:
            continue
        above = [g for b, g in rel if b == beta]
        for gamma in above:
            needed = cmap[gamma]
            if not any(g < cut and cmap[g] == needed for g in above):
                return False
    return True


def missing_witness_count(cond, cut: int) -> dict[int, int]:
    """Per sub-cut node, the number of colors above it lacking an
    in-cut witness."""
    nodes, rel, cols = cond
    cmap = dict(zip(nodes, cols))
    out = {}
    for beta in nodes:
        if beta >= cut:
            continue
        above = [g for b, g in rel if b == beta]
        lacking = set()
        for gamma in above:
            v = cmap[gamma]
            if not any(g < cut and cmap[g] == v for g in above):
                lacking.add(v)
        out[beta] = len(lacking)
    return out


def in_slack_regime(cond, cut: int, slack: int) -> bool:
    """Room regime on which E stays dense at finite scale.

    Besides the counting gate (at most cut-slack nodes under the cut),
    every sub-cut node needs a free slot between itself and the cut for
    each unwitnessed color above it; slots are shared downward, giving a
    nested demand condition.  At a limit cut both conditions are
    vacuous, which is why no regime appears in the infinite setting.
    """
    nodes, _, _ = cond
    inside = [x for x in nodes if x < cut]
    if len(inside) > cut - slack:
        return False
    missing = missing_witness_count(cond, cut)
    node_set = set(nodes)
    for beta in inside:
        room = sum(1 for s in range(beta + 1, cut) if s not in node_set)
        demand = sum(m for b, m in missing.items() if b >= beta)
        if room < demand:
            return False
    return True


def _slack_density_check(instance: ZooInstance, cut: int):
    def run() -> CheckReport:
        params: TennenbaumParams = instance.extras["params"]
        emask = mask_of(instance.extras[f"E{cut}"])
        poset = instance.poset
        for i, cond in enumerate(instance.decoder):
            if not in_slack_regime(cond, cut, params.slack):
                continue
            if not poset.down_mask(i) & emask:
                return CheckReport(name=f"E{cut}", status=FAIL,
                                   witness=witness_token(condition=i))
        return CheckReport(name=f"E{cut}", status=PASS)
    return run
