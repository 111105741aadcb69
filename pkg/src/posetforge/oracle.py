"""Naive reference implementations used as ground truth in tests.

Everything here chases definitions with plain loops and shares no logic
with the fast paths it checks.  Performance is a non-goal.
"""

from __future__ import annotations

from itertools import combinations

from .core import FinitePoset, Suborder
from .errors import SizeError


def brute_compatible(poset, p, q):
    for r in range(poset.size):
        if poset.leq(r, p) and poset.leq(r, q):
            return True
    return False


def brute_predense(poset, subset, below):
    subset = list(subset)
    for q in range(poset.size):
        if not poset.leq(q, below):
            continue
        if not any(brute_compatible(poset, q, d) for d in subset):
            return False
    return True


def brute_regular_open(poset, subset):
    """{p : for all q <= p there is r <= q with r in subset}, by triple loop."""
    members = set(subset)
    result = set()
    for p in range(poset.size):
        good = True
        for q in range(poset.size):
            if not poset.leq(q, p):
                continue
            if not any(poset.leq(r, q) and r in members for r in range(poset.size)):
                good = False
                break
        if good:
            result.add(p)
    return frozenset(result)


def brute_dense(poset, subset):
    subset = list(subset)
    for p in range(poset.size):
        if not any(poset.leq(d, p) for d in subset):
            return False
    return True


def _all_antichains(poset, members):
    chains = [frozenset()]
    for size in range(1, len(members) + 1):
        for combo in combinations(members, size):
            ok = True
            for a, b in combinations(combo, 2):
                if any(poset.leq(r, a) and poset.leq(r, b) for r in members):
                    ok = False
                    break
            if ok:
                chains.append(frozenset(combo))
    return chains


def brute_maximal_antichains(poset, within: Suborder):
    """Suborder-internal maximal antichains by full enumeration, no pruning."""
    members = within.sorted_members()
    if len(members) > 20:
        raise SizeError("brute antichain enumeration capped at 20 elements")
    chains = [c for c in _all_antichains(poset, members) if c]
    maximal = []
    for c in chains:
        if not any(c < d for d in chains):
            maximal.append(c)
    return sorted(maximal, key=lambda s: tuple(sorted(s)))


def brute_regularity(poset: FinitePoset, within: Suborder) -> bool:
    """Every suborder-maximal antichain stays predense in the parent."""
    if len(within.members) > 20:
        raise SizeError("brute regularity capped at 20 elements")
    for chain in brute_maximal_antichains(poset, within):
        for b in range(poset.size):
            if not any(brute_compatible(poset, b, a) for a in chain):
                return False
    return True


def brute_game_tree(algebra, horizon: int) -> str:
    """Bounded minimax for the cover game; a stalled play at the horizon
    counts as a win for player II.  Exact once horizon > atom count."""
    if algebra.atom_count > 6:
        raise SizeError("brute game tree capped at 6 atoms")
    one = algebra.one
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def player_one_wins(partial_sum: int, depth: int) -> bool:
        if partial_sum == one:
            return True
        if depth >= horizon:
            return False
        for a in range(1, one + 1):
            replies_all_win = True
            for b in range(1, one + 1):
                if b & ~a:
                    continue
                if not player_one_wins(partial_sum | b, depth + 1):
                    replies_all_win = False
                    break
            if replies_all_win:
                return True
        return False

    return "I" if player_one_wins(0, 0) else "II"


def all_partitions(n: int):
    """Every partition of {0..n-1}, blocks encoded as bitmasks."""
    if n == 0:
        yield []
        return

    def rec(i, blocks):
        if i == n:
            yield [b for b in blocks]
            return
        for j in range(len(blocks)):
            blocks[j] |= 1 << i
            yield from rec(i + 1, blocks)
            blocks[j] &= ~(1 << i)
        blocks.append(1 << i)
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def brute_subalgebra_closure(algebra, generators):
    """Smallest subalgebra containing the generators: enumerate every
    subalgebra of the ambient algebra, intersect their element sets."""
    from .boolalg import PartitionSubalgebra

    if algebra.atom_count > 5:
        raise SizeError("subalgebra enumeration capped at 5 atoms")
    gens = list(generators)
    common: set[int] | None = None
    for blocks in all_partitions(algebra.atom_count):
        elements = set()
        k = len(blocks)
        for mask in range(1 << k):
            e = 0
            for j in range(k):
                if (mask >> j) & 1:
                    e |= blocks[j]
            elements.add(e)
        if not all(g in elements for g in gens):
            continue
        common = elements if common is None else common & elements
    # blocks of the intersection = smallest member containing each atom
    blocks = set()
    for i in range(algebra.atom_count):
        holders = [e for e in common if (e >> i) & 1]
        block = holders[0]
        for e in holders[1:]:
            block &= e
        blocks.add(block)
    return PartitionSubalgebra(algebra, tuple(sorted(blocks)))
