"""Tagged sequences with a shared relabeling table, projecting onto the
pairwise-different poset.

A condition w has, per index, an optional bounded value sequence and an
optional frozen tag, plus an optional shared table mapping sequences to
values, injective on each length level.  Extensions grow sequences and
the table and freeze tags.  The decoded rows

    row(a) = w's sequence below its tag, table values of its prefixes above

define the projection onto the pairwise-different poset.  Its domain is
the set of saturated conditions: every index carries a sequence and a
tag, the sequences are pairwise distinct of one common length n, tags
run below n, and the table is defined exactly on the initial segments
of the sequences.

The условие universe keeps only conditions refinable to a saturated one
("coverable"); anything else is an artifact of bounding lengths and
values and would break the density the construction is about.  The
bounded value alphabet also forces the projection domain to be
saturated: an unsaturated condition leaves room for a fresh index whose
row may freely copy another row, and such a copy cannot be lifted
through an injective table at bounded alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from ..config import max_elements
from ..core import FinitePoset
from ..embeddings import ProjectionMap
from ..errors import SizeError
from .base import ZooInstance
from .evdiff import EvDiffParams, evdiff_poset


@dataclass(frozen=True)
class SPosetParams:
    index_count: int = 2
    value_count: int = 2
    max_len: int = 2
    tag_bound: int = 2

    def __post_init__(self):
        if min(self.index_count, self.value_count,
               self.max_len, self.tag_bound) < 1:
            raise ValueError("all bounds must be >= 1")
        if self.index_count > self.value_count:
            raise ValueError("need one sequence per index, distinct at each level")
        if self.tag_bound > self.max_len:
            raise ValueError("tags must stay below a reachable common length")
        if self.index_count > 2 or self.value_count > 2 or self.max_len > 2:
            raise SizeError("universe grows too fast beyond 2/2/2")


def _sequences(m: int, max_len: int, exact: int = None):
    if exact is not None:
        return list(product(range(m), repeat=exact))
    out = []
    for length in range(max_len + 1):
        out.extend(product(range(m), repeat=length))
    return out


def _tables(m: int, max_len: int):
    """All shared tables: per length level, a partial injective map from
    the level's sequences into the value alphabet."""
    levels = []
    for length in range(max_len + 1):
        seqs = _sequences(m, max_len, exact=length)
        level_options = [()]
        for size in range(1, m + 1):
            if size > len(seqs):
                break
            from itertools import combinations
            for dom in combinations(seqs, size):
                for values in permutations(range(m), size):
                    level_options.append(tuple(zip(dom, values)))
        levels.append(level_options)
    tables = []
    for combo in product(*levels):
        entries = tuple(sorted((pt, v) for level in combo for pt, v in level))
        tables.append(entries)
    return sorted(set(tables))


def sposet_leq(z, w) -> bool:
    zrows, ztags, zstar = z
    wrows, wtags, wstar = w
    for zr, wr in zip(zrows, wrows):
        if wr is not None and (zr is None or zr[:len(wr)] != wr):
            return False
    for zt, wt in zip(ztags, wtags):
        if wt is not None and zt != wt:
            return False
    if wstar is not None:
        if zstar is None:
            return False
        if not set(wstar) <= set(zstar):
            return False
    return True


def _coverable(cond, params: SPosetParams) -> bool:
    """The condition admits a saturated refinement: some tuple of
    pairwise distinct equal-length sequences extends its rows, dominates
    its tags and prefixes its table points."""
    rows, tags, star = cond
    pts = [pt for pt, _ in star] if star is not None else []
    for n in range(1, params.max_len + 1):
        if any(t is not None and t >= n for t in tags):
            continue
        if any(r is not None and len(r) > n for r in rows):
            continue
        if any(len(pt) > n for pt in pts):
            continue
        for assign in permutations(_sequences(params.value_count, 0, exact=n),
                                   params.index_count):
            if any(r is not None and assign[i][:len(r)] != r
                   for i, r in enumerate(rows)):
                continue
            if all(any(f[:len(pt)] == pt for f in assign) for pt in pts):
                return True
    return False


def _saturated(params: SPosetParams):
    """All projection-domain conditions, with their common length."""
    out = []
    for n in range(1, params.max_len + 1):
        for assign in permutations(_sequences(params.value_count, 0, exact=n),
                                   params.index_count):
            prefix_levels = []
            for length in range(n + 1):
                prefix_levels.append(tuple(sorted({f[:length] for f in assign})))
            for tags in product(range(min(n, params.tag_bound)),
                                repeat=params.index_count):
                for values in product(
                        *[permutations(range(params.value_count), len(level))
                          for level in prefix_levels]):
                    star = tuple(sorted(
                        (pt, v)
                        for level, vals in zip(prefix_levels, values)
                        for pt, v in zip(level, vals)))
                    out.append(((assign, tags, star), n))
    return out


def project_row(rows, tags, star, index: int):
    table = dict(star)
    seq = rows[index]
    tag = tags[index]
    return tuple(seq[i] if i < tag else table[seq[:i + 1]]
                 for i in range(len(seq)))


def s_poset(params: SPosetParams) -> ZooInstance:
    rows = _sequences(params.value_count, params.max_len)
    row_options = [None] + rows
    tag_options = [None] + list(range(params.tag_bound))
    table_options = [None] + _tables(params.value_count, params.max_len)

    conditions = []
    for row_combo in product(row_options, repeat=params.index_count):
        for tag_combo in product(tag_options, repeat=params.index_count):
            for star in table_options:
                cond = (row_combo, tag_combo, star)
                if _coverable(cond, params):
                    conditions.append(cond)
    if len(conditions) > max_elements() * 8:
        raise SizeError(f"{len(conditions)} conditions exceed the element cap")
    conditions = tuple(conditions)
    encoder = {c: i for i, c in enumerate(conditions)}

    saturated = _saturated(params)
    dense_ids = tuple(sorted(encoder[c] for c, _ in saturated))
    minimal_ids = tuple(sorted(encoder[c] for c, n in saturated
                               if n == params.max_len))
    min_pos = {idx: i for i, idx in enumerate(minimal_ids)}

    def leq_fn(i: int, j: int) -> bool:
        return sposet_leq(conditions[i], conditions[j])

    def minmask_fn(i: int) -> int:
        rows_i, tags_i, star_i = conditions[i]
        mask = 0
        for idx in minimal_ids:
            if sposet_leq(conditions[idx], conditions[i]):
                mask |= 1 << min_pos[idx]
        return mask

    poset = FinitePoset.from_structural(len(conditions), leq_fn,
                                        minimals=minimal_ids,
                                        minmask_fn=minmask_fn)

    target = evdiff_poset(EvDiffParams(params.index_count, params.value_count,
                                       params.max_len))
    mapping = {}
    for cond, n in saturated:
        crow, ctag, cstar = cond
        image = tuple(project_row(crow, ctag, cstar, a)
                      for a in range(params.index_count))
        mapping[encoder[cond]] = target.encoder[image]
    pm = ProjectionMap(poset, dense_ids, target.poset, mapping)

    name = (f"spos{params.index_count}x{params.value_count}"
            f"x{params.max_len}t{params.tag_bound}")
    instance = ZooInstance(name=name, poset=poset,
                           decoder=conditions, encoder=encoder)
    instance.extras["params"] = params
    instance.extras["target"] = target
    instance.dense_sets["reading"] = frozenset(dense_ids)
    instance.projection_maps["reading"] = pm
    return instance
