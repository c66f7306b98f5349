"""Cycle types, r-partitions and conjugacy classes of S_{n,r}."""

from __future__ import annotations

import itertools
import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import kernel
from .perm import (
    ColoredPermutation,
    Letter,
    ParameterError,
    elements,
    group_order,
    permutation_from_cycles,
    to_cycles,
)
from .rng import stream

#: enumerate_class filters the whole group up to this n, and builds cycles directly above it
FILTER_MAX_N = 8


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples, reverse-lexicographic."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class RPartition:
    """An r-tuple of partitions; ``parts[j]`` lists the lengths of cycles of color j."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        parts = tuple(tuple(sorted((int(p) for p in lam), reverse=True)) for lam in self.parts)
        if not parts:
            raise ParameterError("an r-partition needs r >= 1 components")
        if any(p <= 0 for lam in parts for p in lam):
            raise ParameterError("partition parts must be positive")
        if sum(map(sum, parts)) < 1:
            raise ParameterError("r-partition of n = 0")
        object.__setattr__(self, "parts", parts)

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return sum(sum(lam) for lam in self.parts)

    def cycles(self) -> list[tuple[int, int]]:
        """(length, color) for every cycle, longest first within each color."""
        return [(length, j) for j, lam in enumerate(self.parts) for length in lam]

    def min_cycle(self) -> int:
        return min(length for length, _ in self.cycles())

    def __str__(self) -> str:
        return "; ".join(f"{j}:[{','.join(map(str, lam))}]" for j, lam in enumerate(self.parts))

    def to_json(self) -> list[list[int]]:
        return [list(lam) for lam in self.parts]

    @classmethod
    def parse(cls, text: str, r: int | None = None) -> "RPartition":
        """Parse ``"0:[]; 1:[8]; 2:[]"`` or a JSON array of arrays.

        Colors not mentioned in the text form are empty; ``r`` fixes the
        number of components when given.
        """
        text = text.strip()
        if text.startswith("[["):
            parts = json.loads(text)
            if r is not None and len(parts) != r:
                raise ParameterError(f"expected {r} components, got {len(parts)}")
            return cls(tuple(tuple(p) for p in parts))
        found: dict[int, tuple[int, ...]] = {}
        for chunk in filter(None, (c.strip() for c in text.split(";"))):
            m = re.fullmatch(r"(\d+)\s*:\s*\[([\d,\s]*)\]", chunk)
            if not m:
                raise ParameterError(f"bad r-partition component {chunk!r}")
            j = int(m.group(1))
            if j in found:
                raise ParameterError(f"color {j} given twice")
            found[j] = tuple(int(p) for p in re.split(r"[,\s]+", m.group(2).strip()) if p)
        width = r if r is not None else max(found, default=-1) + 1
        if any(j >= width for j in found):
            raise ParameterError(f"color index out of range for r={width}")
        return cls(tuple(found.get(j, ()) for j in range(width)))


def cycle_type(x: ColoredPermutation) -> RPartition:
    dec = to_cycles(x)
    parts: list[list[int]] = [[] for _ in range(x.r)]
    for length, color in zip(dec.lengths(), dec.colors()):
        parts[color].append(length)
    return RPartition(tuple(tuple(p) for p in parts))


def r_partitions(n: int, r: int) -> list[RPartition]:
    """All r-partitions of n, each once, in a fixed order."""
    if n < 1 or r < 1:
        raise ParameterError("need n >= 1 and r >= 1")
    out = []
    for sizes in _compositions(n, r):
        for combo in itertools.product(*(list(_partitions(s)) for s in sizes)):
            out.append(RPartition(tuple(combo)))
    return out


def _compositions(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of n into r parts, first part descending."""
    if r == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, r - 1):
            yield (first,) + rest


def centralizer_order(lam: RPartition) -> int:
    out = 1
    for lengths in lam.parts:
        for length, mult in Counter(lengths).items():
            out *= math.factorial(mult) * (length * lam.r) ** mult
    return out


def class_size(lam: RPartition) -> int:
    return group_order(lam.n, lam.r) // centralizer_order(lam)


def has_no_short_cycles(lam: RPartition, m: int) -> bool:
    """True iff every cycle is longer than m."""
    return all(length > m for length, _ in lam.cycles())


def representative(lam: RPartition) -> ColoredPermutation:
    """Cycles on consecutive values; each cycle carries its color on its first letter."""
    cycles = []
    nxt = 1
    for length, color in lam.cycles():
        cyc = [Letter(nxt + h, 0) for h in range(length)]
        cyc[0] = Letter(nxt, color)
        cycles.append(cyc)
        nxt += length
    return permutation_from_cycles(cycles, lam.n, lam.r)


def enumerate_class(lam: RPartition, method: str = "auto") -> Iterator[ColoredPermutation]:
    """Every element of the class exactly once.

    ``method`` is ``"filter"`` (scan the group), ``"construct"`` (build the
    cycles directly) or ``"auto"`` (filter for n <= FILTER_MAX_N).
    """
    if method == "auto":
        method = "filter" if lam.n <= FILTER_MAX_N else "construct"
    if method == "filter":
        return (x for x in elements(lam.n, lam.r) if cycle_type(x) == lam)
    if method == "construct":
        return _construct_class(lam)
    raise ParameterError(f"unknown enumeration method {method!r}")


def _construct_class(lam: RPartition) -> Iterator[ColoredPermutation]:
    n, r = lam.n, lam.r
    remaining = Counter(lam.cycles())

    def rec(unused: list[int], cycles: list[list[Letter]]):
        if not unused:
            yield permutation_from_cycles(cycles, n, r)
            return
        first, rest = unused[0], unused[1:]
        for (length, color) in sorted(remaining):
            if remaining[(length, color)] == 0:
                continue
            remaining[(length, color)] -= 1
            for others in itertools.permutations(rest, length - 1):
                support = (first,) + others
                left = [v for v in rest if v not in others]
                for cols in itertools.product(range(r), repeat=length - 1):
                    last = (color - sum(cols)) % r
                    cyc = [Letter(v, c) for v, c in zip(support, cols + (last,))]
                    yield from rec(left, cycles + [cyc])
            remaining[(length, color)] += 1

    yield from rec(list(range(1, n + 1)), [])


def class_ids(omega_cycles: Sequence[Sequence[int]], taus: np.ndarray, r: int) -> np.ndarray:
    """Cycle colors of one permutation omega under a batch of colorings.

    Returns an (N, #cycles) array; cycle color = sum of tau over the cycle, mod r.
    """
    n = taus.shape[1]
    incidence = np.zeros((n, len(omega_cycles)), dtype=np.int64)
    for k, cyc in enumerate(omega_cycles):
        for v in cyc:
            incidence[v - 1, k] = 1
    return (taus @ incidence) % r


def omega_cycles(omega: Sequence[int]) -> list[list[int]]:
    n = len(omega)
    seen = [False] * (n + 1)
    out = []
    for s in range(1, n + 1):
        if seen[s]:
            continue
        cyc = []
        i = s
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = omega[i - 1]
        out.append(cyc)
    return out


def sample_class_batch(lam: RPartition, N: int, rng: np.random.Generator):
    """N uniform draws from the class as (omega, tau) arrays, via g x0 g^-1 with g uniform."""
    x0 = representative(lam)
    n, r = lam.n, lam.r
    x_om = np.tile(np.array(x0.omega, dtype=np.int64), (N, 1))
    x_tau = np.tile(np.array(x0.tau, dtype=np.int64), (N, 1))
    g_om, g_tau = kernel.random_elements(rng, N, n, r)
    gi_om, gi_tau = kernel.inverse_batch(g_om, g_tau, r)
    om, tau = kernel.compose_batch(g_om, g_tau, x_om, x_tau, r)
    return kernel.compose_batch(om, tau, gi_om, gi_tau, r)


def sample_class(lam: RPartition, seed: int, stream_id: int = 0) -> ColoredPermutation:
    om, tau = sample_class_batch(lam, 1, stream(seed, stream_id))
    return ColoredPermutation(lam.n, lam.r, tuple(om[0].tolist()), tuple(tau[0].tolist()))
