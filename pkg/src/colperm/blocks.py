"""Young subgroups, their blocks, the conjugation action of J, and ColoredDescents."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .conjugacy import cycle_type, has_no_short_cycles
from .perm import (
    DESCENT_ORDER,
    ColoredPermutation,
    Letter,
    ParameterError,
    TotalOrder,
    format_cycles,
    permutation_from_cycles,
    to_cycles,
)
from .stats import descent_set


class ShortCycleError(ValueError):
    """The element has a cycle of length <= 2k, outside the algorithm's domain."""


class NotInYoungSubgroupError(ValueError):
    pass


@dataclass(frozen=True)
class Blocks:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def block_of(self, v: int) -> tuple[int, ...]:
        for b in self.blocks:
            if b[0] <= v <= b[-1]:
                return b
        raise ParameterError(f"{v} outside [{self.n}]")

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def __str__(self) -> str:
        return " ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


def induced_blocks(indices: Iterable[int], n: int) -> Blocks:
    """Blocks of the Young subgroup generated by (a, a+1) for each index a < n."""
    idx = set(indices)
    if any(not 1 <= a <= n for a in idx):
        raise ParameterError(f"indices {sorted(idx)} not inside [{n}]")
    blocks = []
    cur = [1]
    for v in range(2, n + 1):
        if v - 1 in idx:
            cur.append(v)
        else:
            blocks.append(tuple(cur))
            cur = [v]
    blocks.append(tuple(cur))
    return Blocks(n, tuple(blocks))


def young_order(b: Blocks) -> int:
    return math.prod(math.factorial(len(block)) for block in b.blocks)


def young_subgroup(b: Blocks) -> list[tuple[int, ...]]:
    """All elements of J as image tuples (1-based one-line notation)."""
    out = []
    for choice in itertools.product(*(itertools.permutations(block) for block in b.blocks)):
        img = [0] * b.n
        for block, perm in zip(b.blocks, choice):
            for src, dst in zip(block, perm):
                img[src - 1] = dst
        out.append(tuple(img))
    return out


def j_conjugate(pi: Sequence[int], x: ColoredPermutation, blocks: Optional[Blocks] = None) -> ColoredPermutation:
    """(pi, 0) x (pi, 0)^-1, computed by relabeling cycle entries with pi."""
    if sorted(pi) != list(range(1, x.n + 1)):
        raise ParameterError("pi is not a permutation of [n]")
    if blocks is not None and any(set(pi[v - 1] for v in b) != set(b) for b in blocks.blocks):
        raise NotInYoungSubgroupError(f"{tuple(pi)} does not preserve blocks {blocks}")
    cycles = [[Letter(pi[l.value - 1], l.color) for l in cyc] for cyc in to_cycles(x).cycles]
    return permutation_from_cycles(cycles, x.n, x.r)


def j_orbit(x: ColoredPermutation, blocks: Blocks) -> set[ColoredPermutation]:
    return {j_conjugate(pi, x) for pi in young_subgroup(blocks)}


@dataclass
class ColoredDescentsRun:
    """Result of ColoredDescents with the intermediate cycle states."""

    result: ColoredPermutation
    cycles: list[list[Letter]]
    states: list[list[list[Letter]]] = field(default_factory=list)

    def trace_lines(self) -> list[str]:
        return [format_cycles(s) for s in self.states]


def colored_descents(x: ColoredPermutation, indices: Iterable[int],
                     order: TotalOrder = DESCENT_ORDER,
                     cycles: Optional[Sequence[Sequence[Letter]]] = None) -> ColoredPermutation:
    """The unique element of the J-orbit of x with descents at every index."""
    return run_colored_descents(x, indices, order, cycles).result


def run_colored_descents(x: ColoredPermutation, indices: Iterable[int],
                         order: TotalOrder = DESCENT_ORDER,
                         cycles: Optional[Sequence[Sequence[Letter]]] = None) -> ColoredDescentsRun:
    """Run ColoredDescents, keeping each cycle state.

    ``cycles`` fixes the written rotation of each cycle (used only for the
    trace); by default the canonical cycle notation of x is used.
    """
    idx = sorted(set(indices))
    k = len(idx)
    n, r = x.n, x.r
    blocks = induced_blocks(idx, n)
    if not has_no_short_cycles(cycle_type(x), 2 * k):
        raise ShortCycleError(f"ColoredDescents needs all cycles longer than 2k = {2 * k}")
    if cycles is None:
        cycles = to_cycles(x).cycles
    elif permutation_from_cycles(cycles, n, r) != x:
        raise ParameterError("cycles do not describe x")

    block_index = {v: b for b in blocks.blocks for v in b}
    state = [[Letter(block_index[l.value][0], l.color) for l in cyc] for cyc in cycles]
    states = [[list(c) for c in state]]

    def occurrences():
        for ci, cyc in enumerate(state):
            for pi in range(len(cyc)):
                yield ci, pi

    while True:
        counts = Counter(l.value for cyc in state for l in cyc)
        if all(c == 1 for c in counts.values()):
            break
        best = None
        for ci, pi in occurrences():
            cyc = state[ci]
            j = cyc[pi].value
            prev = cyc[pi - 1].value
            if counts[j] == 1 and counts[prev] > 1 and (best is None or j > best[0]):
                best = (j, prev)
        if best is None:
            raise ShortCycleError("no once-occurring value is preceded by a repeated one")
        block = block_index[best[1]]
        members = [(ci, pi) for ci, pi in occurrences() if state[ci][pi].value in block]
        following = [state[ci][(pi + 1) % len(state[ci])] for ci, pi in members]
        keys = [order.key(f, r) for f in following]
        # a larger following letter forces a smaller value; identical letters tie
        for (ci, pi), key in zip(members, keys):
            rank = sum(1 for other in keys if other > key)
            state[ci][pi] = Letter(block[rank], state[ci][pi].color)
        states.append([list(c) for c in state])

    result = permutation_from_cycles(state, n, r)
    return ColoredDescentsRun(result=result, cycles=[list(c) for c in state], states=states)


def descents_in_orbit(x: ColoredPermutation, indices: Iterable[int],
                      order: TotalOrder = DESCENT_ORDER) -> list[ColoredPermutation]:
    """Brute force: orbit members with descents at every index."""
    idx = set(indices)
    orbit = j_orbit(x, induced_blocks(idx, x.n))
    return sorted((y for y in orbit if idx <= descent_set(y, order)),
                  key=lambda y: (y.omega, y.tau))
