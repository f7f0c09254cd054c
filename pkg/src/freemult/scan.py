"""Concordance scans of the three X3 freeness methods over (alpha, m) grids."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .arrangement import x3
from .derivations import Status, decide_free_bruteforce
from .field import Field, QQ
from .homological import classify_predicted, decide_free_homological

SCAN_CAP = 14
METHODS = ("homological", "bruteforce", "predicted")
DEFAULT_RATIONAL_ALPHAS = (-1, 2, 3)


def compositions(total_max: int, parts: int = 6, total_min: int | None = None):
    """Positive integer vectors of length ``parts`` with sum <= total_max, sorted."""
    lo = parts if total_min is None else max(parts, total_min)
    out = []

    def rec(prefix, remaining, left):
        if left == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for v in range(1, remaining - left + 2):
            rec(prefix + [v], remaining - v, left - 1)

    for total in range(lo, total_max + 1):
        rec([], total, parts)
    return sorted(out, key=lambda m: (sum(m), m))


def default_alphas(field: Field):
    if field.is_rational:
        return tuple(field(a) for a in DEFAULT_RATIONAL_ALPHAS)
    return tuple(a for a in field.elements() if a and a != field.one)


def run_methods(alpha, m, field: Field, methods=METHODS) -> dict:
    """Verdict of each requested method on X3(alpha) with multiplicity m."""
    out = {}
    for method in methods:
        if method == "homological":
            out[method] = decide_free_homological(alpha, m, field)
        elif method == "bruteforce":
            out[method] = decide_free_bruteforce(x3(alpha, field, m))
        elif method == "predicted":
            out[method] = classify_predicted(alpha, m, field)
        else:
            raise ValueError(f"unknown method {method!r}")
    return out


def status_of(v) -> Status:
    return v if isinstance(v, Status) else v.status


def agreement(statuses: dict) -> bool | None:
    """True if all definite verdicts agree, False if two disagree, None if none are definite."""
    definite = {s for s in statuses.values() if s is not Status.UNKNOWN}
    if not definite:
        return None
    return len(definite) == 1


@dataclass
class ScanCell:
    alpha: object
    m: tuple
    statuses: dict
    seconds: float = 0.0

    @property
    def agree(self) -> bool:
        return agreement(self.statuses) is not False

    @property
    def unknown(self) -> bool:
        return any(s is Status.UNKNOWN for s in self.statuses.values())

    def to_json(self, field: Field):
        return {
            "alpha": field.to_json(self.alpha),
            "m": list(self.m),
            "verdicts": {k: str(v) for k, v in self.statuses.items()},
            "agree": self.agree,
            "seconds": round(self.seconds, 4),
        }


def _cell(args):
    p, alpha, m, methods = args
    field = Field(p)
    t0 = time.perf_counter()
    res = run_methods(alpha, m, field, methods)
    return ScanCell(alpha, m, {k: status_of(v) for k, v in res.items()}, time.perf_counter() - t0)


@dataclass
class ScanReport:
    field: Field
    max_weight: int
    alphas: tuple
    cells: list = dc_field(default_factory=list)
    seconds: float = 0.0

    @property
    def disagreements(self):
        return [c for c in self.cells if not c.agree]

    @property
    def unknown(self):
        return [c for c in self.cells if c.unknown]

    @property
    def free_cells(self):
        return [c for c in self.cells if c.statuses.get("predicted", c.statuses.get("homological")) is Status.FREE]

    def to_json(self, include_cells: bool = True):
        F = self.field
        out = {
            "field": str(F),
            "max_weight": self.max_weight,
            "alphas": [F.to_json(a) for a in self.alphas],
            "cells": len(self.cells),
            "free_cells": [c.to_json(F) for c in self.free_cells],
            "disagreements": [c.to_json(F) for c in self.disagreements],
            "unknown": [c.to_json(F) for c in self.unknown],
            "seconds": round(self.seconds, 3),
        }
        if include_cells:
            out["grid"] = [c.to_json(F) for c in self.cells]
        return out


def scan(field: Field = QQ, max_weight: int = 10, alphas=None, methods=METHODS, jobs: int = 1,
         cap: int = SCAN_CAP) -> ScanReport:
    """Run every method on every (alpha, m) with sum(m) <= max_weight.

    Cells are evaluated concurrently when ``jobs > 1``; results keep the
    deterministic order of (alpha, weight, m).
    """
    if max_weight > cap:
        raise ValueError(f"weight bound {max_weight} exceeds the cap {cap}")
    alphas = tuple(field(a) for a in alphas) if alphas is not None else default_alphas(field)
    for a in alphas:
        if not a or a == field.one:
            raise ValueError(f"alpha = {field.format(a)} is degenerate")
    work = [(field.p, a, m, tuple(methods)) for a in alphas for m in compositions(max_weight)]
    t0 = time.perf_counter()
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(_cell, work, chunksize=16))
    else:
        cells = [_cell(w) for w in work]
    return ScanReport(field, max_weight, alphas, cells, time.perf_counter() - t0)
