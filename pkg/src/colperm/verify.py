"""Verification suites: each compares a closed form or identity against exhaustive enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernel
from .blocks import (
    colored_descents,
    induced_blocks,
    j_orbit,
    young_order,
)
from .conjugacy import RPartition, enumerate_class, has_no_short_cycles, r_partitions
from .degree import (
    all_partials,
    degree_upper_bound_check,
    product_statistic,
    satisfaction_prob_class,
    satisfaction_probabilities,
)
from .enumeration import Domain, class_histograms, histogram
from .moments import (
    essential_set,
    expect_X_product_group,
    moment_from_histogram,
    verify_eq1,
    verify_eq2,
)
from .stats import Statistic, descent_set


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class SuiteReport:
    name: str
    instances: list[dict] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(i["ok"] for i in self.instances)

    @property
    def failures(self) -> list[dict]:
        return [i for i in self.instances if not i["ok"]]

    def add(self, ok: bool, **info) -> None:
        self.instances.append({"ok": bool(ok), **info})

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "checked": len(self.instances),
                "failed": len(self.failures), "instances": self.instances, "skipped": self.skipped}


def suite_eq2(pairs: Iterable[tuple[int, int]], jobs: int = 1) -> SuiteReport:
    rep = SuiteReport("eq2")
    for n, r in pairs:
        res = verify_eq2(n, r, jobs=jobs)
        rep.add(res.ok, n=n, r=r, gf=res.details["gf"], product=res.details["product"])
    return rep


def suite_eq1(pairs: Iterable[tuple[int, int]], D: int = 30, jobs: int = 1) -> SuiteReport:
    rep = SuiteReport("eq1")
    for n, r in pairs:
        res = verify_eq1(n, r, D, jobs=jobs)
        rep.add(res.ok, n=n, r=r, D=D, gf=res.details["gf"], mismatches=res.details["mismatches"])
    return rep


def suite_theorem1(n: int, r: int, ks: Sequence[int], stats: Sequence[str] = ("des", "fmaj", "maj"),
                   jobs: int = 1) -> SuiteReport:
    """Moments on every class without cycles of length <= 2k against the group (and S_n for maj)."""
    rep = SuiteReport("theorem1")
    st = [Statistic(s) for s in stats]
    per_class = class_histograms(st, n, r, jobs=jobs)
    group = {s: sum((h[s] for h in per_class.values()), start=type(next(iter(per_class.values()))[s])())
             for s in stats}
    sn = histogram(Statistic("maj"), Domain.group(n, 1)) if "maj" in stats else None
    for k in ks:
        for lam, hists in per_class.items():
            if not has_no_short_cycles(lam, 2 * k):
                rep.skipped.append({"class": str(lam), "k": k, "reason": f"cycle of length <= {2 * k}"})
                continue
            for s in stats:
                on_class = moment_from_histogram(hists[s], k)
                on_group = moment_from_histogram(group[s], k)
                info = {"n": n, "r": r, "k": k, "class": str(lam), "stat": s,
                        "class_moment": _frac(on_class), "group_moment": _frac(on_group)}
                ok = on_class == on_group
                if s == "maj":
                    on_sn = moment_from_histogram(sn, k)
                    info["Sn_moment"] = _frac(on_sn)
                    ok = ok and on_class == on_sn
                rep.add(ok, **info)
    return rep


def _descent_table(n: int, r: int) -> np.ndarray:
    om = []
    for w in itertools.permutations(range(1, n + 1)):
        om.append(np.tile(np.array(w, dtype=np.int64), (r**n, 1)))
    om = np.concatenate(om)
    tau = np.tile(kernel.colorings(n, r), (len(om) // r**n, 1))
    return kernel.descent_matrix(om, tau, n, r)


def brute_X_product(table: np.ndarray, indices: Iterable[int]) -> Fraction:
    cols = [a - 1 for a in set(indices)]
    hits = int(np.all(table[:, cols], axis=1).sum()) if cols else table.shape[0]
    return Fraction(hits, table.shape[0])


def suite_lemmas(n_max: int = 5, r_max: int = 3, k_max: int = 3) -> SuiteReport:
    """Closed-form E[X_{a_1}...X_{a_k}] on S_{n,r} against enumeration, plus index shift and independence."""
    rep = SuiteReport("lemmas")
    tables = {(n, r): _descent_table(n, r) for n in range(1, n_max + 1) for r in range(1, r_max + 1)}
    for (n, r), table in tables.items():
        for k in range(0, min(k_max, n) + 1):
            for A in itertools.combinations(range(1, n + 1), k):
                closed = expect_X_product_group(A, n, r)
                brute = brute_X_product(table, A)
                rep.add(closed == brute, check="product", n=n, r=r, indices=list(A),
                        closed_form=_frac(closed), enumeration=_frac(brute))
        # tail products X_{m+1}...X_n, and their independence from products inside [m-1]
        for m in range(1, n):
            tail = list(range(m + 1, n + 1))
            want = Fraction(r - 1, r) ** (n - m) / _fact(n - m)
            got = brute_X_product(table, tail)
            rep.add(got == want, check="tail", n=n, r=r, m=m, enumeration=_frac(got), closed_form=_frac(want))
            for j in range(0, min(k_max, m - 1) + 1):
                for A in itertools.combinations(range(1, m), j):
                    joint = brute_X_product(table, set(A) | set(tail))
                    split = brute_X_product(table, A) * brute_X_product(table, tail)
                    rep.add(joint == split, check="independence", n=n, r=r, m=m, indices=list(A),
                            joint=_frac(joint), product=_frac(split))
    for r in range(1, r_max + 1):
        for n in range(1, n_max + 1):
            for m in range(1, n_max + 1 - n):
                lhs = expect_X_product_group(range(1, n + 1), n, r)
                rhs = expect_X_product_group(range(m + 1, m + n + 1), m + n, r)
                if (m + n, r) in tables:
                    rhs_enum = brute_X_product(tables[(m + n, r)], range(m + 1, m + n + 1))
                else:
                    rhs_enum = rhs
                rep.add(lhs == rhs == rhs_enum, check="indexshift", n=n, m=m, r=r,
                        lhs=_frac(lhs), rhs=_frac(rhs))
    return rep


def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def suite_orbits(n: int, r: int, k_max: int, indices_inside: bool = False) -> SuiteReport:
    """J-orbit sizes, unique descent representatives, and ColoredDescents output.

    For index sets containing n the descent at n depends only on colors, which
    J does not move, so such an orbit holds one representative when every letter
    following the last block is colored nonzero and none otherwise.
    """
    rep = SuiteReport("orbits")
    for lam in r_partitions(n, r):
        for k in range(1, k_max + 1):
            if not has_no_short_cycles(lam, 2 * k):
                rep.skipped.append({"class": str(lam), "k": k})
                continue
            members = list(enumerate_class(lam))
            for A in itertools.combinations(range(1, n + (0 if indices_inside else 1)), k):
                blocks = induced_blocks(A, n)
                size = young_order(blocks)
                seen: set = set()
                n_orbits = size_ok = unique_ok = alg_ok = 0
                for x in members:
                    if x in seen:
                        continue
                    orbit = j_orbit(x, blocks)
                    seen |= orbit
                    n_orbits += 1
                    size_ok += len(orbit) == size
                    good = [y for y in orbit if set(A) <= descent_set(y)]
                    if n in A:
                        last = blocks.blocks[-1]
                        expected = int(all(x.tau[v - 1] != 0 for v in last))
                    else:
                        expected = 1
                    unique_ok += len(good) == expected
                    outs = {colored_descents(y, A) for y in orbit}
                    alg_ok += len(outs) == 1 and (not good or outs == set(good))
                rep.add(size_ok == unique_ok == alg_ok == n_orbits, n=n, r=r, k=k, cls=str(lam),
                        indices=list(A), orbits=n_orbits, orbit_size=size,
                        size_ok=size_ok, unique_ok=unique_ok, algorithm_ok=alg_ok)
    return rep


def suite_satisfies(n: int, r: int, m_max: int = 2) -> SuiteReport:
    """Class probabilities of partial colored permutations on single n-cycle classes."""
    rep = SuiteReport("satisfies")
    for color in range(r):
        parts = [()] * r
        parts[color] = (n,)
        lam = RPartition(tuple(parts))
        members = list(enumerate_class(lam))
        for m in range(0, m_max + 1):
            formula = Fraction(1, _falling(n - 1, m) * r**m)
            for p in all_partials(n, r, m):
                probs = satisfaction_probabilities(p, members)
                predicted = satisfaction_prob_class(p, lam)
                independent = probs["K"] * probs["kappa"] == probs["both"]
                if p.has_cycle():
                    ok = probs["both"] == predicted == 0
                else:
                    ok = probs["both"] == predicted == formula
                rep.add(ok and independent, n=n, r=r, cls=str(lam), p=str(p), cyclic=p.has_cycle(),
                        enumeration=_frac(probs["both"]), predicted=_frac(predicted),
                        formula=_frac(formula))
    return rep


def _falling(a: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= a - i
    return out


def suite_degree(n_max: int = 4, r_max: int = 3) -> SuiteReport:
    """des, maj, fmaj at degree 2; Z = X...Y... at degree j + k; Z*Y_{i,c} for essential i at the same degree."""
    rep = SuiteReport("degree")
    for n in range(1, n_max + 1):
        for r in range(1, r_max + 1):
            for s in ("des", "maj", "fmaj"):
                rep.add(degree_upper_bound_check(s, 2, n, r), n=n, r=r, stat=s, m=2)
            for xs, ys, m in xy_configs(n, r):
                f = product_statistic(xs, ys)
                rep.add(degree_upper_bound_check(f, m, n, r), n=n, r=r, stat=f.__name__, m=m)
    return rep


def xy_configs(n: int, r: int):
    """(xs, ys, m): products with at most two X factors and one Y factor at m = 2j + |Y|,
    then each with one more Y factor on an essential position, keeping m."""
    for j in range(0, 3):
        for xs in itertools.combinations(range(1, n), j):
            for ys in [()] + [((b, c),) for b in range(1, n + 1) for c in range(r)]:
                if not xs and not ys:
                    continue
                m = 2 * len(xs) + len(ys)
                yield list(xs), list(ys), m
                taken = {b for b, _ in ys}
                for i in sorted(essential_set(xs, taken) - taken):
                    for c in range(r):
                        yield list(xs), list(ys) + [(i, c)], m
