"""Exact moments of descent statistics: closed forms, enumeration and generating functions."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .blocks import induced_blocks
from .conjugacy import RPartition, has_no_short_cycles
from .enumeration import DEFAULT_CAP, Domain, histogram, histograms
from .perm import DESCENT_ORDER, ParameterError, TotalOrder
from .qpoly import QPolynomial, fmaj_product
from .stats import Statistic


class FormulaNotApplicableError(ValueError):
    """The class has cycles too short for the closed form to apply."""


def _block_product(blocks) -> Fraction:
    return Fraction(1, math.prod(math.factorial(len(b)) for b in blocks.blocks))


def expect_X_product_group(indices: Iterable[int], n: int, r: int) -> Fraction:
    """E over S_{n,r} of X_{a_1} ... X_{a_k}; repeated indices count once."""
    idx = set(indices)
    if any(not 1 <= a <= n for a in idx):
        raise ParameterError(f"indices {sorted(idx)} not inside [{n}]")
    blocks = induced_blocks(idx, n)
    value = _block_product(blocks)
    if n in idx:
        last = len(blocks.blocks[-1])
        value *= Fraction(r - 1, r) ** last
    return value


def expect_X_product_class(indices: Iterable[int], lam: RPartition) -> Fraction:
    idx = set(indices)
    if not has_no_short_cycles(lam, 2 * len(idx)):
        raise FormulaNotApplicableError(
            f"class {lam} has cycles of length <= {2 * len(idx)}")
    return expect_X_product_group(idx, lam.n, lam.r)


def essential_set(xs: Iterable[int], ys: Iterable[int] = ()) -> set[int]:
    out = set(ys)
    for a in xs:
        out |= {a, a + 1}
    return out


def expect_XY_product(xs: Iterable[int], ys: Sequence[tuple[int, int]], n: int, r: int,
                      lam: Optional[RPartition] = None) -> Fraction:
    """E[X_{a_1} ... X_{a_j} Y_{b_1,c_1} ... Y_{b_m,c_m}] by the essential-set reduction.

    Over the group when ``lam`` is None, else over the class ``lam``, which must
    have no cycles of length <= j + k (j X-factors and k = j + m factors in all,
    after removing repeats).
    """
    X = set(xs)
    if any(not 1 <= a <= n - 1 for a in X):
        raise ParameterError(f"X indices must lie in [{n - 1}]")
    Y: dict[int, int] = {}
    for b, c in ys:
        if not 1 <= b <= n or not 0 <= c < r:
            raise ParameterError(f"Y:{b}:{c} out of range")
        if Y.setdefault(b, c) != c:
            return Fraction(0)
    if lam is not None:
        if (lam.n, lam.r) != (n, r):
            raise ParameterError("class does not match (n, r)")
        bound = 2 * len(X) + len(Y)
        if not has_no_short_cycles(lam, bound):
            raise FormulaNotApplicableError(f"class {lam} has cycles of length <= {bound}")
    return _reduce_xy(frozenset(X), Y, n, r)


def _reduce_xy(X: frozenset, Y: Mapping[int, int], n: int, r: int) -> Fraction:
    ess = essential_set(X)
    stray = [b for b in Y if b not in ess]
    if stray:
        rest = {b: c for b, c in Y.items() if b != stray[0]}
        return Fraction(1, r) * _reduce_xy(X, rest, n, r)
    for a in sorted(X):
        if a in Y and a + 1 in Y:
            if Y[a] < Y[a + 1]:
                return Fraction(0)
            if Y[a] > Y[a + 1]:
                return _reduce_xy(X - {a}, Y, n, r)
    missing = sorted(ess - set(Y))
    if missing:
        b = missing[0]
        return sum((_reduce_xy(X, {**Y, b: c}, n, r) for c in range(r)), Fraction(0))
    # colors are constant on each block: one descending arrangement per J-orbit
    return Fraction(1, r ** len(Y)) * _block_product(induced_blocks(X, n))


def expect_XY_product_printed(xs: Iterable[int], ys: Sequence[tuple[int, int]], n: int, r: int) -> Fraction:
    """The same reduction, ending in the product of 1/|B_i| without factorials.

    Kept only so the two terminal forms can be compared against enumeration.
    """
    X = frozenset(xs)
    Y = dict(ys)

    def rec(X, Y):
        ess = essential_set(X)
        stray = [b for b in Y if b not in ess]
        if stray:
            return Fraction(1, r) * rec(X, {b: c for b, c in Y.items() if b != stray[0]})
        for a in sorted(X):
            if a in Y and a + 1 in Y:
                if Y[a] < Y[a + 1]:
                    return Fraction(0)
                if Y[a] > Y[a + 1]:
                    return rec(X - {a}, Y)
        missing = sorted(ess - set(Y))
        if missing:
            return sum((rec(X, {**Y, missing[0]: c}) for c in range(r)), Fraction(0))
        return Fraction(1, r ** len(Y) * math.prod(len(b) for b in induced_blocks(X, n).blocks))

    return rec(X, Y)


# --------------------------------------------------------------------------
# enumeration


def moment_from_histogram(hist: Mapping[int, int], k: int) -> Fraction:
    total = sum(hist.values())
    if total == 0:
        raise ParameterError("empty domain")
    return Fraction(sum(c * v**k for v, c in hist.items()), total)


def moment_enumerated(stat: Statistic, domain: Domain, k: int, order: TotalOrder = DESCENT_ORDER,
                      jobs: int = 1, cap: int = DEFAULT_CAP) -> Fraction:
    """Exact E[stat^k] over the domain by full enumeration."""
    if k < 0:
        raise ParameterError("moment order must be >= 0")
    return moment_from_histogram(histogram(stat, domain, order=order, jobs=jobs, cap=cap), k)


def polynomial_from_histogram(hist: Mapping[int, int]) -> QPolynomial:
    if not hist:
        return QPolynomial()
    out = [0] * (max(hist) + 1)
    for v, c in hist.items():
        out[v] += c
    return QPolynomial(out)


def gf_distribution(stat: Statistic, domain: Domain, order: TotalOrder = DESCENT_ORDER,
                    jobs: int = 1, cap: int = DEFAULT_CAP) -> QPolynomial:
    """sum over the domain of q^stat."""
    return polynomial_from_histogram(histogram(stat, domain, order=order, jobs=jobs, cap=cap))


@dataclass
class MomentReport:
    statistic: str
    domain: dict
    k: int
    value: Fraction
    method: str

    def to_json(self) -> dict:
        return {
            "statistic": self.statistic,
            "domain": self.domain,
            "k": self.k,
            "value": f"{self.value.numerator}/{self.value.denominator}",
            "method": self.method,
        }


def moment_generating_function(poly: QPolynomial, k: int) -> Fraction:
    """E[stat^k] read off the distribution polynomial."""
    return moment_from_histogram({d: a for d, a in enumerate(poly.coeffs) if a}, k)


def closed_form_moment(stat: str, n: int, r: int, k: int, lam: Optional[RPartition] = None) -> Fraction:
    """E[stat^k] for stat in des/maj by summing closed-form products of X indicators,
    or fmaj by summing the X/Y reduction over the expansion of fmaj^k."""
    if stat in ("des", "maj"):
        weights = {i: (1 if stat == "des" else i) for i in range(1, n + 1)}
        if stat == "maj":
            weights.pop(n)
        if lam is not None and not has_no_short_cycles(lam, 2 * k):
            raise FormulaNotApplicableError(f"class {lam} has cycles of length <= {2 * k}")
        return _power_sum(weights, k, lambda idx: expect_X_product_group(idx, n, r))
    if stat == "fmaj":
        if lam is not None and not has_no_short_cycles(lam, 2 * k):
            raise FormulaNotApplicableError(f"class {lam} has cycles of length <= {2 * k}")
        terms: dict = {("X", i): r * i for i in range(1, n)}
        terms.update({("Y", i, c): c for i in range(1, n + 1) for c in range(1, r)})
        total = Fraction(0)
        for combo, coeff in _expand_power(terms, k).items():
            xs = [t[1] for t in combo if t[0] == "X"]
            ys = [(t[1], t[2]) for t in combo if t[0] == "Y"]
            total += coeff * expect_XY_product(xs, ys, n, r)
        return total
    raise ParameterError(f"no closed form for {stat!r}")


def _expand_power(terms: Mapping, k: int) -> Counter:
    """(sum_t w_t t)^k as a Counter of sorted factor tuples -> coefficient."""
    out: Counter = Counter({(): 1})
    for _ in range(k):
        nxt: Counter = Counter()
        for combo, coeff in out.items():
            for t, w in terms.items():
                nxt[tuple(sorted(combo + (t,)))] += coeff * w
        out = nxt
    return out


def _power_sum(weights: Mapping[int, int], k: int, expect) -> Fraction:
    total = Fraction(0)
    for combo, coeff in _expand_power({i: w for i, w in weights.items()}, k).items():
        total += coeff * expect(set(combo))
    return total


# --------------------------------------------------------------------------
# identity checks


@dataclass
class CheckReport:
    ok: bool
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def verify_eq1(n: int, r: int, D: int = 30, gf: Optional[QPolynomial] = None, **kw) -> CheckReport:
    """Coefficients of gf(des)/(1-q)^(n+1) through q^D against (ir+1)^n."""
    if gf is None:
        gf = gf_distribution(Statistic("des"), Domain.group(n, r), **kw)
    got = gf.series_over_one_minus_q(n + 1, D + 1)
    want = [(i * r + 1) ** n for i in range(D + 1)]
    bad = [i for i in range(D + 1) if got[i] != want[i]]
    return CheckReport(not bad, {"n": n, "r": r, "D": D, "gf": [str(a) for a in gf.coeffs],
                                 "mismatches": bad})


def verify_eq2(n: int, r: int, gf: Optional[QPolynomial] = None, **kw) -> CheckReport:
    """gf(fmaj) over S_{n,r} equals [r]_q [2r]_q ... [nr]_q."""
    if gf is None:
        gf = gf_distribution(Statistic("fmaj"), Domain.group(n, r), **kw)
    want = fmaj_product(n, r)
    return CheckReport(gf == want, {"n": n, "r": r, "gf": [str(a) for a in gf.coeffs],
                                    "product": [str(a) for a in want.coeffs]})


def group_moment_Sn(stat: str, n: int, k: int, **kw) -> Fraction:
    """E over S_n (r = 1) of stat^k."""
    return moment_enumerated(Statistic(stat), Domain.group(n, 1), k, **kw)


def verify_theorem1(lam: RPartition, k: int, stat: str, *, class_hist=None, group_hist=None,
                    sn_hist=None, require_hypothesis: bool = True, **kw) -> CheckReport:
    """E_{C_lam}[stat^k] == E_{S_{n,r}}[stat^k] (and == E_{S_n}[maj_n^k] for maj).

    Precomputed histograms may be passed to share one enumeration across many checks.
    """
    if stat not in ("des", "maj", "fmaj"):
        raise ParameterError(f"theorem check covers des, maj, fmaj, not {stat!r}")
    if require_hypothesis and not has_no_short_cycles(lam, 2 * k):
        raise FormulaNotApplicableError(f"class {lam} has cycles of length <= {2 * k}")
    s = Statistic(stat)
    if class_hist is None:
        class_hist = histogram(s, Domain.conj_class(lam), **kw)
    if group_hist is None:
        group_hist = histogram(s, Domain.group(lam.n, lam.r), **kw)
    on_class = moment_from_histogram(class_hist, k)
    on_group = moment_from_histogram(group_hist, k)
    reports = [
        MomentReport(stat, Domain.conj_class(lam).to_json(), k, on_class, "enumeration"),
        MomentReport(stat, Domain.group(lam.n, lam.r).to_json(), k, on_group, "enumeration"),
    ]
    ok = on_class == on_group
    if stat == "maj":
        if sn_hist is None:
            sn_hist = histogram(s, Domain.group(lam.n, 1), **kw)
        on_sn = moment_from_histogram(sn_hist, k)
        reports.append(MomentReport(stat, Domain.group(lam.n, 1).to_json(), k, on_sn, "enumeration"))
        ok = ok and on_class == on_sn
    return CheckReport(ok, {"class": str(lam), "k": k, "stat": stat,
                            "reports": [rep.to_json() for rep in reports]})
