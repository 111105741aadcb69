"""Shared machinery for the poset zoo.

A ZooInstance pairs a finite poset with a decoder back to structured
conditions and with the named suborders, dense sets and projection maps
the construction is supposed to carry.  Every bundled object knows how
to check itself; `checks()` returns the full battery.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..core import FinitePoset, Suborder, is_dense_subset
from ..embeddings import ProjectionMap, check_projection_map, regularity_routes
from ..errors import SizeError
from ..report import FAIL, PASS, CheckReport, witness_token


@dataclass
class ZooInstance:
    name: str
    poset: FinitePoset
    decoder: tuple
    encoder: dict
    suborders: dict[str, Suborder] = field(default_factory=dict)
    dense_sets: dict[str, frozenset] = field(default_factory=dict)
    projection_maps: dict[str, ProjectionMap] = field(default_factory=dict)
    projection_clauses: dict[str, tuple] = field(default_factory=dict)
    projection_dense_required: dict[str, bool] = field(default_factory=dict)
    extra_checks: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def decode(self, index: int):
        return self.decoder[index]

    def encode(self, condition) -> int:
        return self.encoder[condition]

    def checks(self) -> list[tuple[str, Callable[[], CheckReport]]]:
        """Named check callables covering every bundled object."""
        out = []
        for label in sorted(self.suborders):
            out.append((f"{self.name}.sub.{label}.regular",
                        _regularity_check(self, label)))
        for label in sorted(self.dense_sets):
            out.append((f"{self.name}.dense.{label}",
                        _density_check(self, label)))
        for label in sorted(self.projection_maps):
            out.append((f"{self.name}.pmap.{label}",
                        _projection_check(self, label)))
        for label, fn in self.extra_checks:
            out.append((f"{self.name}.{label}", fn))
        return out

    def run_checks(self) -> list[CheckReport]:
        reports = []
        for name, fn in self.checks():
            start = time.perf_counter()
            try:
                report = fn()
            except SizeError as exc:
                report = CheckReport(name=name, status="SKIP",
                                     witness=witness_token(reason=type(exc).__name__))
            report.name = name
            report.timing_ms = (time.perf_counter() - start) * 1000.0
            reports.append(report)
        return reports


def _regularity_check(instance: ZooInstance, label: str):
    def run() -> CheckReport:
        sub = instance.suborders[label]
        verdicts = regularity_routes(instance.poset, sub)
        bits = [v.regular for v in verdicts]
        if all(bits):
            return CheckReport(name=label, status=PASS)
        routes = ",".join(v.route for v in verdicts if not v.regular)
        first = next(v for v in verdicts if not v.regular)
        return CheckReport(name=label, status=FAIL,
                           witness=witness_token(routes=routes,
                                                 element=first.witness_element))
    return run


def _density_check(instance: ZooInstance, label: str):
    def run() -> CheckReport:
        from ..core import dense_subset_failure

        gap = dense_subset_failure(instance.poset, instance.dense_sets[label])
        if gap is None:
            return CheckReport(name=label, status=PASS)
        return CheckReport(name=label, status=FAIL,
                           witness=witness_token(nothing_below=gap))
    return run


def _projection_check(instance: ZooInstance, label: str):
    def run() -> CheckReport:
        pm = instance.projection_maps[label]
        clauses = instance.projection_clauses.get(
            label, ("monotone", "lifting", "pullback"))
        return check_projection_map(
            instance.poset, pm, clauses=clauses, name=label,
            require_dense=instance.projection_dense_required.get(label, True))
    return run


def passing(report: CheckReport) -> bool:
    return report.status == PASS


def build_pairwise(conditions, leq_fn, labels=None) -> FinitePoset:
    """Poset from explicit structural comparison of every pair.

    Suitable for small universes only; the relation needs no closure
    because leq_fn is assumed transitive.
    """
    n = len(conditions)
    down = []
    for j in range(n):
        row = 0
        cj = conditions[j]
        for i in range(n):
            if leq_fn(conditions[i], cj):
                row |= 1 << i
        down.append(row)
    return FinitePoset(n, down, labels=labels)
