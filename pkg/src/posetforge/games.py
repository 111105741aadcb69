"""Two order games and their exact solvers.

Cover game (on a finite Boolean algebra): player I proposes a nonzero
element, player II answers with a nonzero element below it, and I wins
when the join of II's answers reaches one.  Positions collapse to the
partial join, infinite stalling favours II, and the solver runs an
attractor computation on the finite position graph.

Accumulation game (on a finite poset): the players alternately add
elements to a growing set, and II wins when the play stabilizes on a
set that is a regular suborder.  The solver evaluates the defining
fixpoint over accumulated sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .boolalg import FiniteBooleanAlgebra
from .core import FinitePoset, Suborder, iter_bits
from .config import GAME_G_MAX_ELEMENTS
from .errors import IllegalStrategy, SizeError
from .report import FAIL, PASS, CheckReport, witness_token

PLAYER_I = "I"
PLAYER_II = "II"


@dataclass(frozen=True)
class GameHPosition:
    algebra: FiniteBooleanAlgebra
    partial_sum: int
    to_move: str


@dataclass(frozen=True)
class GameGPosition:
    poset: FinitePoset
    accumulated: frozenset[int]
    to_move: str


@dataclass
class PositionalStrategy:
    """Moves keyed by position.

    Cover game: player I keys are partial sums, player II keys are
    (partial_sum, proposal).  Accumulation game: player I keys are
    (accumulated_mask, last_reply), player II keys are
    (accumulated_mask, last_proposal); -1 stands for "no move yet".
    """

    owner: str
    choice: dict = field(default_factory=dict)

    def move(self, key):
        if key not in self.choice:
            raise IllegalStrategy(f"strategy has no move at position {key!r}")
        return self.choice[key]


@dataclass(frozen=True)
class WellFoundedCertificate:
    """Certificate that the restricted play tree is well-founded.

    When acyclic, rank strictly decreases along every edge of the play
    graph restricted to answers incompatible with for_element; otherwise
    lasso carries a reachable stalled position and the stalling answer.
    """

    for_element: int
    acyclic: bool
    rank: Optional[dict[int, int]] = None
    lasso: Optional[tuple[tuple[int, ...], int]] = None


def _check_proposal(algebra: FiniteBooleanAlgebra, a: int) -> None:
    if not (0 < a <= algebra.one):
        raise IllegalStrategy(f"player I must propose a nonzero element, got {a}")


def _check_reply(algebra: FiniteBooleanAlgebra, a: int, b: int) -> None:
    if not (0 < b <= algebra.one) or b & ~a:
        raise IllegalStrategy(f"player II must answer inside the proposal, got {b} under {a}")


def solve_game_H(algebra: FiniteBooleanAlgebra) -> tuple[str, PositionalStrategy]:
    """Solve the cover game exactly.

    Player I wins from a sum s iff some proposal forces every answer to
    strictly grow the sum toward one; stalled infinite play is a II win.
    Returns the winner from sum zero with a positional winning strategy.
    """
    one = algebra.one
    sums = list(range(one + 1))
    winning = {one}
    strategy_i: dict[int, int] = {}
    changed = True
    while changed:
        changed = False
        for s in sums:
            if s in winning:
                continue
            for a in range(1, one + 1):
                good = True
                for b in _answers(a):
                    if (s | b) == s or (s | b) not in winning:
                        good = False
                        break
                if good:
                    winning.add(s)
                    strategy_i[s] = a
                    changed = True
                    break
    if 0 in winning:
        # make the strategy total on sums, including unreachable ones
        for s in sums:
            if s != one and s not in strategy_i:
                strategy_i[s] = algebra.complement(s)
        return PLAYER_I, PositionalStrategy(PLAYER_I, strategy_i)
    strategy_ii: dict[tuple[int, int], int] = {}
    for s in sums:
        if s in winning:
            continue
        for a in range(1, one + 1):
            pick = None
            for b in _answers(a):
                if (s | b) == s or (s | b) not in winning:
                    pick = b
                    break
            if pick is not None:
                strategy_ii[(s, a)] = pick
    return PLAYER_II, PositionalStrategy(PLAYER_II, strategy_ii)


def _answers(a: int):
    """Nonzero elements below a, ascending."""
    b = a
    out = []
    while b:
        out.append(b)
        b = (b - 1) & a
    return sorted(out)


def complement_strategy(algebra: FiniteBooleanAlgebra) -> PositionalStrategy:
    """Player I proposes the complement of the current sum."""
    choice = {s: algebra.complement(s)
              for s in range(algebra.one) if algebra.complement(s)}
    return PositionalStrategy(PLAYER_I, choice)


def constant_strategy(algebra: FiniteBooleanAlgebra, a: int) -> PositionalStrategy:
    _check_proposal(algebra, a)
    return PositionalStrategy(PLAYER_I, {s: a for s in range(algebra.one)})


def verify_strategy_H(algebra: FiniteBooleanAlgebra,
                      strategy: PositionalStrategy) -> tuple[CheckReport, dict[int, WellFoundedCertificate]]:
    """Decide whether a player-I strategy is winning via the restricted
    play trees: the strategy wins iff for every b the tree of plays whose
    answers stay incompatible with b is well-founded.

    The verdict is also cross-checked against a direct evaluation of the
    strategy on the full play graph; a mismatch raises AssertionError.
    """
    if strategy.owner != PLAYER_I:
        raise IllegalStrategy("verification expects a strategy for player I")
    one = algebra.one
    certificates: dict[int, WellFoundedCertificate] = {}
    all_acyclic = True
    for b in range(1, one + 1):
        cert = _certificate_for(algebra, strategy, b)
        certificates[b] = cert
        all_acyclic = all_acyclic and cert.acyclic

    # independent evaluation on the unrestricted play graph
    reachable = set()
    stack = [0]
    direct_win = True
    while stack:
        s = stack.pop()
        if s in reachable or s == one:
            continue
        reachable.add(s)
        a = strategy.move(s)
        _check_proposal(algebra, a)
        if a & s:
            direct_win = False
            continue
        for bb in _answers(a):
            nxt = s | bb
            if nxt not in reachable:
                stack.append(nxt)
    assert direct_win == all_acyclic, "certificate verdict disagrees with direct play"

    status = PASS if all_acyclic else FAIL
    witness = None
    if not all_acyclic:
        bad = min(b for b, c in certificates.items() if not c.acyclic)
        witness = witness_token(element=bad, stall=certificates[bad].lasso[1])
    report = CheckReport(name="strategy-certificates", status=status, witness=witness)
    return report, certificates


def _certificate_for(algebra: FiniteBooleanAlgebra, strategy: PositionalStrategy,
                     b: int) -> WellFoundedCertificate:
    one = algebra.one
    seen: dict[int, tuple[int, ...]] = {0: (0,)}
    stack = [0]
    while stack:
        s = stack.pop()
        if s == one:
            continue
        a = strategy.move(s)
        _check_proposal(algebra, a)
        for reply in _answers(a):
            if reply & b:
                continue
            nxt = s | reply
            if nxt == s:
                return WellFoundedCertificate(b, False, lasso=(seen[s], reply))
            if nxt not in seen:
                seen[nxt] = seen[s] + (nxt,)
                stack.append(nxt)
    atoms = algebra.atom_count
    rank = {s: atoms - s.bit_count() for s in seen}
    return WellFoundedCertificate(b, True, rank=rank)


def solve_game_G(poset: FinitePoset) -> tuple[str, PositionalStrategy]:
    """Solve the accumulation game by the descending fixpoint

        win(S) = [forall a not in S, exists b: win(S + {a,b})]
                 and [regular(S) or exists b not in S: win(S + {b})]

    where regular(S) is the suborder-regularity verdict.  Player II wins
    the game iff every opening proposal admits a reply landing in a
    winning set.
    """
    from .embeddings import is_regular_suborder_antichain

    n = poset.size
    if n > GAME_G_MAX_ELEMENTS:
        raise SizeError(f"accumulation game capped at {GAME_G_MAX_ELEMENTS} elements")
    full = (1 << n) - 1

    def regular(mask: int) -> bool:
        sub = Suborder.of(poset, iter_bits(mask))
        return is_regular_suborder_antichain(poset, sub).regular

    win: dict[int, bool] = {}
    reply: dict[tuple[int, int], int] = {}      # II's answer to a fresh proposal
    improver: dict[int, int] = {}               # II's move when I stalls
    breaker_at: dict[int, int] = {}             # I's proposal defeating clause one

    for mask in sorted(range(1, full + 1), key=lambda m: -m.bit_count()):
        clause_one = True
        for a in range(n):
            if (mask >> a) & 1:
                continue
            found = None
            for b in range(n):
                if win[mask | (1 << a) | (1 << b)]:
                    found = b
                    break
            if found is None:
                clause_one = False
                breaker_at[mask] = a
                break
            reply[(mask, a)] = found
        if not clause_one:
            win[mask] = False
            continue
        if regular(mask):
            win[mask] = True
            continue
        hold = next((b for b in range(n)
                     if not (mask >> b) & 1 and win[mask | (1 << b)]), None)
        win[mask] = hold is not None
        if hold is not None:
            improver[mask] = hold

    opening: dict[tuple[int, int], int] = {}
    first_breaker = None
    for a in range(n):
        found = next((b for b in range(n) if win[(1 << a) | (1 << b)]), None)
        if found is None:
            first_breaker = a
            break
        opening[(0, a)] = found

    if first_breaker is None:
        choice = dict(opening)
        for mask in range(1, full + 1):
            if not win[mask]:
                continue
            for a in range(n):
                if (mask >> a) & 1:
                    # I stalled; improve when needed, otherwise rest
                    choice[(mask, a)] = improver.get(mask, a)
                elif (mask, a) in reply:
                    choice[(mask, a)] = reply[(mask, a)]
        return PLAYER_II, PositionalStrategy(PLAYER_II, choice)

    # player I: break clause one wherever possible, otherwise stall
    choice_i: dict[tuple[int, int], int] = {(0, -1): first_breaker}
    for mask in range(1, full + 1):
        if win[mask]:
            continue
        move = breaker_at.get(mask)
        if move is None:
            move = next(iter_bits(mask))
        for b in range(-1, n):
            choice_i[(mask, b)] = move
    return PLAYER_I, PositionalStrategy(PLAYER_I, choice_i)


def game_g_winning_sets(poset: FinitePoset) -> dict[int, bool]:
    """The raw fixpoint table, keyed by accumulated-set mask."""
    from .embeddings import is_regular_suborder_antichain

    n = poset.size
    if n > GAME_G_MAX_ELEMENTS:
        raise SizeError(f"accumulation game capped at {GAME_G_MAX_ELEMENTS} elements")
    full = (1 << n) - 1
    win: dict[int, bool] = {}
    for mask in sorted(range(1, full + 1), key=lambda m: -m.bit_count()):
        ok = True
        for a in range(n):
            if (mask >> a) & 1:
                continue
            if not any(win[mask | (1 << a) | (1 << b)] for b in range(n)):
                ok = False
                break
        if ok:
            sub = Suborder.of(poset, iter_bits(mask))
            if not is_regular_suborder_antichain(poset, sub).regular:
                ok = any(not (mask >> b) & 1 and win[mask | (1 << b)]
                         for b in range(n))
        win[mask] = ok
    return win


@dataclass(frozen=True)
class PlayTrace:
    game: str
    rounds: tuple
    winner: str
    note: str


def simulate_play_H(algebra: FiniteBooleanAlgebra, strategy_i: PositionalStrategy,
                    strategy_ii: PositionalStrategy, max_rounds: int) -> PlayTrace:
    """Deterministic round-by-round trace of the cover game."""
    s = 0
    rounds = []
    seen = set()
    for k in range(max_rounds):
        if s == algebra.one:
            return PlayTrace("H", tuple(rounds), PLAYER_I, f"sum reached one at round {k - 1}")
        a = strategy_i.move(s)
        _check_proposal(algebra, a)
        b = strategy_ii.move((s, a))
        _check_reply(algebra, a, b)
        rounds.append((k, a, b, s | b))
        state = (s, a, b)
        if state in seen:
            return PlayTrace("H", tuple(rounds), PLAYER_II, "stabilized below one")
        seen.add(state)
        s |= b
    winner = PLAYER_I if s == algebra.one else PLAYER_II
    note = "sum reached one" if s == algebra.one else "round budget exhausted below one"
    return PlayTrace("H", tuple(rounds), winner, note)


def simulate_play_G(poset: FinitePoset, strategy_i: PositionalStrategy,
                    strategy_ii: PositionalStrategy, max_rounds: int) -> PlayTrace:
    """Trace of the accumulation game; reports the stabilized set and its
    regularity verdict."""
    from .embeddings import is_regular_suborder_antichain

    mask = 0
    last_b = -1
    rounds = []
    seen = set()
    stabilized = False
    for k in range(max_rounds):
        a = strategy_i.move((mask, last_b))
        poset.check_index(a)
        b = strategy_ii.move((mask, a))
        poset.check_index(b)
        new_mask = mask | (1 << a) | (1 << b)
        rounds.append((k, a, b, new_mask))
        state = (new_mask, a, b)
        if new_mask == mask and state in seen:
            stabilized = True
            mask = new_mask
            break
        seen.add(state)
        mask = new_mask
        last_b = b
    sub = Suborder.of(poset, iter_bits(mask))
    regular = is_regular_suborder_antichain(poset, sub).regular
    winner = PLAYER_II if regular else PLAYER_I
    note = (f"stabilized on {sorted(iter_bits(mask))}, "
            f"{'regular' if regular else 'not regular'}")
    if not stabilized:
        note += " (round budget reached)"
    return PlayTrace("G", tuple(rounds), winner, note)
