"""Pointwise modular reduction between value posets.

Source conditions are partial functions on a grid of cells with values
below 2^N, ordered by extension; the map reduces every value modulo
2^n and lands in the matching smaller-valued poset.  The reduction is a
projection: values can always be lifted through the mod.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..config import max_elements
from ..embeddings import ProjectionMap
from ..errors import SizeError
from .base import ZooInstance, build_pairwise


@dataclass(frozen=True)
class ModReductionParams:
    value_exponent: int = 2      # values run below 2^value_exponent
    divisor_exponent: int = 1    # reduce modulo 2^divisor_exponent
    coords: int = 1
    positions: int = 2

    def __post_init__(self):
        if self.divisor_exponent > self.value_exponent:
            raise ValueError("divisor exponent cannot exceed the value exponent")
        if min(self.coords, self.positions, self.divisor_exponent) < 1:
            raise ValueError("all bounds must be >= 1")


def _grid_poset(cells: int, values: int, tag: str) -> ZooInstance:
    conditions = tuple(product((None,) + tuple(range(values)), repeat=cells))
    if len(conditions) > max_elements():
        raise SizeError(f"{len(conditions)} conditions exceed the element cap")
    encoder = {c: i for i, c in enumerate(conditions)}

    def extends(z, w):
        return all(wv is None or wv == zv for zv, wv in zip(z, w))

    poset = build_pairwise(conditions, extends)
    return ZooInstance(name=tag, poset=poset, decoder=conditions, encoder=encoder)


def mod_reduction(params: ModReductionParams) -> tuple[ZooInstance, ProjectionMap]:
    """The source instance plus the pointwise-mod projection map.

    The returned instance also carries the map under "mod" and the image
    instance in extras["target"].
    """
    cells = params.coords * params.positions
    big = 1 << params.value_exponent
    small = 1 << params.divisor_exponent
    source = _grid_poset(cells, big, f"modsrc{params.value_exponent}")
    target = _grid_poset(cells, small, f"modimg{params.divisor_exponent}")

    mapping = {}
    for i, cond in enumerate(source.decoder):
        reduced = tuple(None if v is None else v % small for v in cond)
        mapping[i] = target.encoder[reduced]
    pm = ProjectionMap(source.poset, tuple(range(source.poset.size)),
                       target.poset, mapping)
    source.projection_maps["mod"] = pm
    source.extras["target"] = target
    source.extras["params"] = params
    source.name = (f"modred{params.value_exponent}to{params.divisor_exponent}"
                   f"x{params.coords}x{params.positions}")
    return source, pm
