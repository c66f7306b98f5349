"""Exhaustive enumeration of S_{n,r}, its conjugacy classes and color orbits.

Work is sharded by the first entry of omega; every shard returns exact
integer histograms, and histograms merge by addition, so results do not
depend on the shard count or on ``jobs``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from . import kernel
from .conjugacy import FILTER_MAX_N, RPartition, class_size, enumerate_class, omega_cycles
from .perm import DESCENT_ORDER, ParameterError, TotalOrder, group_order
from .stats import Statistic

DEFAULT_CAP = 10**7


class InfeasibleError(RuntimeError):
    """The requested enumeration exceeds the evaluation cap."""


@dataclass(frozen=True)
class Domain:
    """A uniform probability space: the whole group, a class, or a color orbit."""

    n: int
    r: int
    kind: str = "group"
    cycle_type: Optional[RPartition] = None
    colors: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.kind not in ("group", "class", "orbit"):
            raise ParameterError(f"unknown domain kind {self.kind!r}")
        if self.kind == "class":
            lam = self.cycle_type
            if lam is None or lam.n != self.n or lam.r != self.r:
                raise ParameterError(f"class {lam} does not belong to S_({self.n},{self.r})")
        if self.kind == "orbit":
            if self.colors is None or len(self.colors) != self.n or any(
                not 0 <= c < self.r for c in self.colors
            ):
                raise ParameterError("color orbit needs n colors in Z_r")

    @classmethod
    def group(cls, n: int, r: int) -> "Domain":
        return cls(n, r)

    @classmethod
    def conj_class(cls, lam: RPartition) -> "Domain":
        return cls(lam.n, lam.r, "class", cycle_type=lam)

    @classmethod
    def orbit(cls, colors: Sequence[int], r: int) -> "Domain":
        return cls(len(colors), r, "orbit", colors=tuple(colors))

    def size(self) -> int:
        if self.kind == "group":
            return group_order(self.n, self.r)
        if self.kind == "class":
            return class_size(self.cycle_type)
        return math.factorial(self.n)

    def work(self) -> int:
        """Number of element evaluations a full scan costs."""
        if self.kind == "class" and self.n <= FILTER_MAX_N:
            return group_order(self.n, self.r)
        return self.size()

    def describe(self) -> str:
        if self.kind == "group":
            return f"S_({self.n},{self.r})"
        if self.kind == "class":
            return f"C[{self.cycle_type}]"
        return f"Omega[{','.join(map(str, self.colors))}]"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "n": self.n, "r": self.r}
        if self.kind == "class":
            out["cycle_type"] = self.cycle_type.to_json()
        if self.kind == "orbit":
            out["colors"] = list(self.colors)
        return out


def _class_code(lam: RPartition) -> tuple[int, ...]:
    """Counts of cycles by (length, color), flattened; matches ``_row_codes``."""
    counts = [0] * (lam.n * lam.r)
    for length, color in lam.cycles():
        counts[(length - 1) * lam.r + color] += 1
    return tuple(counts)


def _row_codes(omega: Sequence[int], taus: np.ndarray, r: int) -> np.ndarray:
    """For one omega and many colorings, cycle-type codes as rows of counts."""
    n = len(omega)
    cycles = omega_cycles(omega)
    incidence = np.zeros((n, len(cycles)), dtype=np.int64)
    for k, cyc in enumerate(cycles):
        incidence[np.array(cyc) - 1, k] = 1
    cyc_colors = (taus @ incidence) % r
    lengths = np.array([len(c) for c in cycles], dtype=np.int64)
    slots = (lengths[None, :] - 1) * r + cyc_colors
    codes = np.zeros((taus.shape[0], n * r), dtype=np.int64)
    rows = np.repeat(np.arange(taus.shape[0]), len(cycles))
    np.add.at(codes, (rows, slots.ravel()), 1)
    return codes


def batches(domain: Domain, first: Optional[int] = None) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """(omega, tau) batches covering the domain; ``first`` restricts to omega(1) == first."""
    n, r = domain.n, domain.r
    if domain.kind == "class" and n > FILTER_MAX_N:
        xs = [x for x in enumerate_class(domain.cycle_type, "construct")
              if first is None or x.omega[0] == first]
        for k in range(0, len(xs), 4096):
            chunk = xs[k:k + 4096]
            yield (np.array([x.omega for x in chunk], dtype=np.int64),
                   np.array([x.tau for x in chunk], dtype=np.int64))
        return
    taus = kernel.colorings(n, r)
    target = _class_code(domain.cycle_type) if domain.kind == "class" else None
    values = range(1, n + 1) if first is None else [first]
    for head in values:
        rest = [v for v in range(1, n + 1) if v != head]
        for tail in itertools.permutations(rest):
            omega = (head,) + tail
            if domain.kind == "orbit":
                om = np.array([omega], dtype=np.int64)
                tau = np.array([[domain.colors[v - 1] for v in omega]], dtype=np.int64)
                yield om, tau
                continue
            if domain.kind == "class":
                mask = np.all(_row_codes(omega, taus, r) == np.array(target), axis=1)
                if not mask.any():
                    continue
                sel = taus[mask]
            else:
                sel = taus
            yield np.tile(np.array(omega, dtype=np.int64), (sel.shape[0], 1)), sel


def _check_cap(domain: Domain, cap: int) -> None:
    if domain.work() > cap:
        raise InfeasibleError(
            f"{domain.describe()} needs {domain.work()} evaluations, cap is {cap}")


def _shard_hist(args) -> dict[str, Counter]:
    stats, domain, first, order = args
    out = {str(s): Counter() for s in stats}
    for om, tau in batches(domain, first):
        for s in stats:
            vals = kernel.batch_stat(s.name, s.params, om, tau, domain.n, domain.r, order)
            out[str(s)].update(dict(zip(*np.unique(vals, return_counts=True))))
    return {k: Counter({int(v): int(c) for v, c in h.items()}) for k, h in out.items()}


def _run_shards(fn, args: list, jobs: int) -> list:
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, args))
    return [fn(a) for a in args]


def histograms(stats: Sequence[Statistic], domain: Domain, order: TotalOrder = DESCENT_ORDER,
               jobs: int = 1, cap: int = DEFAULT_CAP) -> dict[str, Counter]:
    """Exact value counts of several statistics over a domain."""
    _check_cap(domain, cap)
    for s in stats:
        s.check(domain.n, domain.r)
    args = [(tuple(stats), domain, first, order) for first in range(1, domain.n + 1)]
    total = {str(s): Counter() for s in stats}
    for part in _run_shards(_shard_hist, args, jobs):
        for k, h in part.items():
            total[k].update(h)
    return total


def histogram(stat: Statistic, domain: Domain, **kw) -> Counter:
    return histograms([stat], domain, **kw)[str(stat)]


def _shard_classes(args) -> dict:
    stats, n, r, first = args
    taus = kernel.colorings(n, r)
    out: dict = defaultdict(lambda: {str(s): Counter() for s in stats})
    rest = [v for v in range(1, n + 1) if v != first]
    for tail in itertools.permutations(rest):
        omega = (first,) + tail
        codes = _row_codes(omega, taus, r)
        uniq, inv = np.unique(codes, axis=0, return_inverse=True)
        inv = inv.ravel()
        om = np.tile(np.array(omega, dtype=np.int64), (taus.shape[0], 1))
        vals = {str(s): kernel.batch_stat(s.name, s.params, om, taus, n, r) for s in stats}
        for g, code in enumerate(uniq):
            rows = inv == g
            slot = out[tuple(int(c) for c in code)]
            for k, v in vals.items():
                u, c = np.unique(v[rows], return_counts=True)
                slot[k].update(dict(zip(u.tolist(), c.tolist())))
    return {code: dict(h) for code, h in out.items()}


def class_histograms(stats: Sequence[Statistic], n: int, r: int, jobs: int = 1,
                     cap: int = DEFAULT_CAP) -> dict[RPartition, dict[str, Counter]]:
    """Histograms of each statistic on every conjugacy class, in one pass over the group."""
    _check_cap(Domain.group(n, r), cap)
    from .conjugacy import r_partitions

    by_code = {_class_code(lam): lam for lam in r_partitions(n, r)}
    merged: dict[RPartition, dict[str, Counter]] = {
        lam: {str(s): Counter() for s in stats} for lam in by_code.values()}
    args = [(tuple(stats), n, r, first) for first in range(1, n + 1)]
    for part in _run_shards(_shard_classes, args, jobs):
        for code, h in part.items():
            for k, counts in h.items():
                merged[by_code[code]][k].update(counts)
    return merged
