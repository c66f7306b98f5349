"""Partial colored permutations, their indicators, and span-based degree bounds."""

from __future__ import annotations

import itertools
import math
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .conjugacy import RPartition, enumerate_class, has_no_short_cycles
from .moments import FormulaNotApplicableError
from .perm import ColoredPermutation, Letter, ParameterError, elements, group_order
from .stats import Statistic

#: largest group for which indicator vectors are built
DEGREE_CAP = 5000


@dataclass(frozen=True, order=True)
class PartialColoredPermutation:
    """Constraints source^0 -> target^color, with distinct sources and distinct targets."""

    pairs: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        pairs = tuple(sorted((int(s), int(t), int(c)) for s, t, c in self.pairs))
        if len({p[0] for p in pairs}) != len(pairs):
            raise ParameterError("sources must be distinct")
        if len({p[1] for p in pairs}) != len(pairs):
            raise ParameterError("targets must be distinct")
        object.__setattr__(self, "pairs", pairs)

    @property
    def size(self) -> int:
        return len(self.pairs)

    def has_cycle(self) -> bool:
        """True if the sources->targets map closes up a cycle (including fixed points)."""
        nxt = {s: t for s, t, _ in self.pairs}
        for start in nxt:
            v = nxt[start]
            for _ in range(len(nxt)):
                if v == start:
                    return True
                if v not in nxt:
                    break
                v = nxt[v]
        return False

    def check(self, n: int, r: int) -> None:
        if self.size > n or any(not (1 <= s <= n and 1 <= t <= n and 0 <= c < r)
                                for s, t, c in self.pairs):
            raise ParameterError(f"{self} does not fit S_({n},{r})")

    def __str__(self) -> str:
        return "{" + ", ".join(f"{s}->{t}:{c}" for s, t, c in self.pairs) + "}"

    @classmethod
    def parse(cls, text: str) -> "PartialColoredPermutation":
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ParameterError(f"bad partial permutation {text!r}")
        pairs = []
        for chunk in filter(None, (c.strip() for c in body[1:-1].split(","))):
            m = re.fullmatch(r"(\d+)\s*->\s*(\d+)\s*:\s*(\d+)", chunk)
            if not m:
                raise ParameterError(f"bad constraint {chunk!r}")
            pairs.append(tuple(int(g) for g in m.groups()))
        return cls(tuple(pairs))


def satisfies(x: ColoredPermutation, p: PartialColoredPermutation) -> bool:
    return all(x.omega[s - 1] == t and x.tau[s - 1] == c for s, t, c in p.pairs)


def satisfaction_prob_class(p: PartialColoredPermutation, lam: RPartition) -> Fraction:
    """Probability that a uniform element of the class satisfies p.

    Needs all cycles longer than |p|.  A p whose constraints close a cycle
    can never be satisfied there, so it gets 0.
    """
    n, r, m = lam.n, lam.r, p.size
    p.check(n, r)
    if not has_no_short_cycles(lam, m):
        raise FormulaNotApplicableError(f"class {lam} has cycles of length <= {m}")
    if p.has_cycle():
        return Fraction(0)
    return Fraction(1, math.prod(range(n - m, n)) * r**m)


def satisfaction_probabilities(p: PartialColoredPermutation, xs: Iterable[ColoredPermutation]) -> dict:
    """Enumerated Pr[omega sat K], Pr[tau sat kappa], Pr[both] over a finite set."""
    total = k_ok = c_ok = both = 0
    for x in xs:
        total += 1
        a = all(x.omega[s - 1] == t for s, t, _ in p.pairs)
        b = all(x.tau[s - 1] == c for s, _, c in p.pairs)
        k_ok += a
        c_ok += b
        both += a and b
    return {"K": Fraction(k_ok, total), "kappa": Fraction(c_ok, total), "both": Fraction(both, total)}


def all_partials(n: int, r: int, m: int) -> list[PartialColoredPermutation]:
    out = []
    for sources in itertools.combinations(range(1, n + 1), m):
        for targets in itertools.permutations(range(1, n + 1), m):
            for colors in itertools.product(range(r), repeat=m):
                out.append(PartialColoredPermutation(tuple(zip(sources, targets, colors))))
    return out


# --------------------------------------------------------------------------
# decompositions of des, maj, fmaj into size <= 2 indicators


def _descent_pairs(n: int, r: int):
    """Ordered letter pairs (low, high) with low < high in the descent order and distinct values."""
    letters = sorted((Letter(v, c) for v in range(1, n + 1) for c in range(r)),
                     key=lambda l: (l.color, l.value))
    for a, b in itertools.combinations(letters, 2):
        if a.value != b.value:
            yield a, b


def decompose_statistic(name: str, n: int, r: int) -> list[tuple[int, PartialColoredPermutation]]:
    """des, maj or fmaj as a sum of coefficient * indicator, sorted canonically."""
    if name not in ("des", "maj", "fmaj"):
        raise ParameterError(f"no decomposition for {name!r}")
    terms: list[tuple[int, PartialColoredPermutation]] = []
    for i in range(1, n):
        weight = {"des": 1, "maj": i, "fmaj": r * i}[name]
        for low, high in _descent_pairs(n, r):
            terms.append((weight, PartialColoredPermutation(
                ((i, high.value, high.color), (i + 1, low.value, low.color)))))
    if name == "des":
        for j in range(1, n + 1):
            for c in range(1, r):
                terms.append((1, PartialColoredPermutation(((n, j, c),))))
    if name == "fmaj":
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for c in range(1, r):
                    terms.append((c, PartialColoredPermutation(((i, j, c),))))
    terms.sort(key=lambda t: (t[1].size, t[1].pairs))
    return terms


def evaluate_decomposition(terms: Sequence[tuple[int, PartialColoredPermutation]], x: ColoredPermutation) -> int:
    return sum(w for w, p in terms if satisfies(x, p))


# --------------------------------------------------------------------------
# span membership


class SpanBasis:
    """Row-echelon basis of integer vectors over Q, stored sparsely.

    Rows are kept primitive (content 1) and reduced fraction-free; the pivot
    of each row is its lowest column.
    """

    def __init__(self) -> None:
        self.rows: dict[int, dict[int, int]] = {}

    def reduce(self, vec: dict[int, int]) -> dict[int, int]:
        v = {c: a for c, a in vec.items() if a}
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None:
                return v
            a, b = v[p], row[p]
            g = math.gcd(a, b)
            fa, fb = b // g, a // g
            out = {c: fa * x for c, x in v.items()}
            for c, x in row.items():
                y = out.get(c, 0) - fb * x
                if y:
                    out[c] = y
                else:
                    out.pop(c, None)
            g = 0
            for x in out.values():
                g = math.gcd(g, x)
            v = {c: x // g for c, x in out.items()} if g > 1 else out
        return v

    def add(self, vec: dict[int, int]) -> bool:
        """Insert vec; return True if it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        if v[p] < 0:
            v = {c: -x for c, x in v.items()}
        self.rows[p] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, vec: dict[int, int]) -> bool:
        return not self.reduce(vec)


def indicator_vectors(n: int, r: int, m: int) -> tuple[list[ColoredPermutation], dict]:
    """Elements of S_{n,r} in lexicographic order, and the support of every indicator of size <= m."""
    if group_order(n, r) > DEGREE_CAP:
        raise ParameterError(f"S_({n},{r}) too large for exact span computations")
    xs = list(elements(n, r))
    support: dict[PartialColoredPermutation, list[int]] = defaultdict(list)
    for e, x in enumerate(xs):
        for size in range(0, min(m, n) + 1):
            for sources in itertools.combinations(range(1, n + 1), size):
                key = PartialColoredPermutation(
                    tuple((s, x.omega[s - 1], x.tau[s - 1]) for s in sources))
                support[key].append(e)
    return xs, dict(support)


def span_basis(n: int, r: int, m: int) -> tuple[list[ColoredPermutation], SpanBasis]:
    xs, support = indicator_vectors(n, r, m)
    basis = SpanBasis()
    for key in sorted(support, key=lambda p: (p.size, p.pairs)):
        basis.add({e: 1 for e in support[key]})
    return xs, basis


_BASES: dict = {}


def degree_upper_bound_check(stat: Callable[[ColoredPermutation], int] | Statistic | str,
                             m: int, n: int, r: int) -> bool:
    """True iff the statistic is a rational combination of indicators of size <= m."""
    if isinstance(stat, str):
        stat = Statistic.parse(stat)
    if m >= n:
        # size-n indicators are point masses, so everything is in the span
        return True
    key = (n, r, m)
    if key not in _BASES:
        _BASES[key] = span_basis(n, r, m)
    xs, basis = _BASES[key]
    vec = {e: int(stat(x)) for e, x in enumerate(xs)}
    return basis.contains(vec)


def product_statistic(xs: Sequence[int], ys: Sequence[tuple[int, int]]) -> Callable[[ColoredPermutation], int]:
    """X_{a_1}...X_{a_j} Y_{b_1,c_1}...Y_{b_m,c_m} as a plain function."""
    from .stats import descent_set

    def f(x: ColoredPermutation) -> int:
        d = descent_set(x)
        return int(all(a in d for a in xs) and all(x.tau[b - 1] == c for b, c in ys))

    f.__name__ = "X" + ",".join(map(str, xs)) + "Y" + ",".join(f"{b}:{c}" for b, c in ys)
    return f
