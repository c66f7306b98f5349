"""Acceptance criteria 1-11, each printing one PASS/FAIL line.

Where the literal wording of a criterion is false, the criterion test checks
the corrected statement and a strict xfail test pins down the literal form.
"""

import itertools
import math
import time
from fractions import Fraction

import pytest

from acceptance_log import record
from colperm.asymptotics import mc_class_sample, single_cycle, theoretical_moments
from colperm.conjugacy import RPartition, enumerate_class
from colperm.degree import all_partials, satisfaction_probabilities
from colperm.enumeration import Domain, histograms
from colperm.moments import moment_from_histogram, verify_theorem1
from colperm.stats import Statistic
from colperm import verify as suites

THEOREM_GRID = [(5, 2, (1, 2)), (6, 2, (1, 2)), (7, 2, (1, 2)), (5, 3, (1,)), (6, 3, (1,))]


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def test_criterion_01_fmaj_product():
    pairs = [(n, r) for n in range(1, 7) for r in range(1, 4)] + [(7, 2)]
    with Timer() as t:
        rep = suites.suite_eq2(pairs)
    record(1, rep.ok, f"gf(fmaj) = [r][2r]...[nr] on {len(rep.instances)} groups", t.seconds)
    assert rep.ok, rep.failures
    assert t.seconds < 60


def test_criterion_02_des_series():
    pairs = [(n, r) for n in range(1, 6) for r in range(1, 5)]
    with Timer() as t:
        rep = suites.suite_eq1(pairs, D=30)
    record(2, rep.ok, f"series coefficients through q^30 equal (ir+1)^n on {len(rep.instances)} groups",
           t.seconds)
    assert rep.ok, rep.failures
    assert t.seconds < 30


@pytest.fixture(scope="module")
def theorem_reports():
    out = {}
    start = time.perf_counter()
    for n, r, ks in THEOREM_GRID:
        out[(n, r)] = suites.suite_theorem1(n, r, ks, stats=("des", "fmaj", "maj"))
    return out, time.perf_counter() - start


def _covered(instances):
    return {(i["n"], i["r"], i["k"]) for i in instances}


def test_criterion_03_class_moments_equal_group_moments(theorem_reports):
    reports, seconds = theorem_reports
    inst = [i for rep in reports.values() for i in rep.instances if i["stat"] in ("des", "fmaj")]
    ok = all(i["ok"] for i in inst)
    grid = {(n, r, k) for n, r, ks in THEOREM_GRID for k in ks}
    record(3, ok and _covered(inst) == grid,
           f"{len(inst)} (class, k, stat) checks for des and fmaj over {len(grid)} (n,r,k) cells",
           seconds)
    assert ok, [i for i in inst if not i["ok"]]
    assert _covered(inst) == grid
    assert seconds < 600


def test_criterion_04_maj_matches_symmetric_group(theorem_reports):
    reports, seconds = theorem_reports
    inst = [i for rep in reports.values() for i in rep.instances if i["stat"] == "maj"]
    ok = all(i["ok"] and i["class_moment"] == i["Sn_moment"] for i in inst)
    record(4, ok, f"{len(inst)} class maj moments equal the S_n moments", seconds)
    assert ok
    assert _covered(inst) == {(n, r, k) for n, r, ks in THEOREM_GRID for k in ks}


def test_criterion_05_closed_form_lemmas():
    with Timer() as t:
        rep = suites.suite_lemmas(n_max=5, r_max=3, k_max=3)
    kinds = {i["check"] for i in rep.instances}
    record(5, rep.ok, f"{len(rep.instances)} checks ({', '.join(sorted(kinds))})", t.seconds)
    assert rep.ok, rep.failures
    assert kinds == {"product", "tail", "independence", "indexshift"}
    assert t.seconds < 300


def test_criterion_06_colored_descents():
    from test_blocks import WORKED, WORKED_TRACE
    from colperm.blocks import run_colored_descents
    from colperm.perm import parse_cycles, permutation_from_cycles

    with Timer() as t:
        reps = [suites.suite_orbits(n, 2, 2, indices_inside=True) for n in (5, 6)]
        cycles = parse_cycles(WORKED)
        run = run_colored_descents(permutation_from_cycles(cycles, 9, 3), [1, 2, 4, 5], cycles=cycles)
        trace_ok = run.trace_lines() == WORKED_TRACE
    inst = [i for rep in reps for i in rep.instances]
    orbits = sum(i["orbits"] for i in inst)
    ok = all(r.ok for r in reps) and trace_ok
    record(6, ok, f"{orbits} J-orbits over {len(inst)} (class, index set) pairs; trace matches: {trace_ok}",
           t.seconds)
    assert ok
    assert t.seconds < 300


def test_criterion_06_index_n():
    # with n among the indices the orbit holds one such element exactly when the
    # colors on the last block are all nonzero, and none otherwise
    reps = [suites.suite_orbits(n, 2, 2) for n in (5, 6)]
    assert all(r.ok for r in reps)


@pytest.mark.xfail(strict=True, reason="an orbit holds no element with a descent at n when a color on the last block is 0")
def test_criterion_06_literal_with_index_n():
    lam = RPartition(((5,), ()))
    from colperm.blocks import descents_in_orbit

    assert all(len(descents_in_orbit(x, [5])) == 1 for x in enumerate_class(lam))


def test_criterion_07_satisfaction_probabilities():
    with Timer() as t:
        reps = [suites.suite_satisfies(5, r, m_max=2) for r in (2, 3)]
    inst = [i for rep in reps for i in rep.instances]
    acyclic = [i for i in inst if not i["cyclic"]]
    cyclic = [i for i in inst if i["cyclic"]]
    ok = all(rep.ok for rep in reps)
    record(7, ok, f"{len(acyclic)} acyclic partials match 1/((n-1)...(n-m) r^m); "
                  f"{len(cyclic)} partials closing a cycle have probability 0 (formula not applicable)",
           t.seconds)
    assert ok
    assert t.seconds < 120


@pytest.mark.xfail(strict=True, reason="a constraint i -> i closes a 1-cycle, impossible on an n-cycle class")
def test_criterion_07_literal_all_partials():
    lam = single_cycle(5, 2)
    members = list(enumerate_class(lam))
    for p in all_partials(5, 2, 1):
        assert satisfaction_probabilities(p, members)["both"] == Fraction(1, 8)


def test_criterion_08_degree_bounds():
    with Timer() as t:
        rep = suites.suite_degree(n_max=4, r_max=3)
    record(8, rep.ok, f"{len(rep.instances)} span-membership checks (des/maj/fmaj at m=2, X/Y products at m=j+k)",
           t.seconds)
    assert rep.ok, rep.failures
    assert t.seconds < 300


def _group_moments(n, r):
    stats = [Statistic(s) for s in ("des", "maj", "fmaj")]
    hists = histograms(stats, Domain.group(n, r))
    out = {}
    for s in ("des", "maj", "fmaj"):
        m1 = moment_from_histogram(hists[s], 1)
        out[s] = (m1, moment_from_histogram(hists[s], 2) - m1 * m1)
    return out


def test_criterion_09_mean_and_variance():
    checked = exceptions = 0
    bad = []
    with Timer() as t:
        for n in range(1, 6):
            for r in range(1, 4):
                for s, (mean, var) in _group_moments(n, r).items():
                    th = theoretical_moments(s, n, r)
                    checked += 1
                    if s == "des" and n == 1:
                        # on S_{1,r}, des is Bernoulli((r-1)/r)
                        exceptions += 1
                        if not (th.mu == mean and var == Fraction(r - 1, r * r)):
                            bad.append((s, n, r))
                    elif (th.mu, th.sigma_sq) != (mean, var):
                        bad.append((s, n, r))
    record(9, not bad, f"{checked - exceptions} (stat, n, r) cells exact; des variance at n=1 is (r-1)/r^2, "
                       f"not (n+1)/12 ({exceptions} cells)", t.seconds)
    assert not bad
    assert t.seconds < 120


@pytest.mark.xfail(strict=True, reason="des on S_{1,r} has variance (r-1)/r^2, not 2/12")
def test_criterion_09_literal_n1():
    for r in (1, 2, 3):
        assert _group_moments(1, r)["des"][1] == theoretical_moments("des", 1, r).sigma_sq


def test_criterion_10_clt_proxy():
    N, seed = 200_000, 1
    lines, ok = [], True
    with Timer() as t:
        for stat in ("des", "fmaj"):
            for r in (2, 3):
                s20 = mc_class_sample(stat, single_cycle(20, r), N, seed)
                s60 = mc_class_sample(stat, single_cycle(60, r), N, seed)
                cell = (s60.ks_distance < 0.05 and s60.ks_distance < s20.ks_distance
                        and all(abs(s.std_mean) < 4 / math.sqrt(N) for s in (s20, s60))
                        and all(abs(s.std_variance - 1) < 10 / math.sqrt(N) for s in (s20, s60)))
                ok = ok and cell
                lines.append(f"{stat} r={r}: ks20={s20.ks_distance:.4f} ks60={s60.ks_distance:.4f}")
    record(10, ok, "; ".join(lines) + " (continuity-corrected KS, seed 1)", t.seconds)
    assert ok
    assert t.seconds < 180


@pytest.mark.xfail(strict=True, reason="raw KS of an integer statistic is bounded below by half its largest atom")
def test_criterion_10_literal_raw_ks():
    s = mc_class_sample("des", single_cycle(60, 2), 200_000, 1)
    assert s.ks_raw < 0.05


def test_criterion_11_identity_class_detects_violation():
    with Timer() as t:
        rep = verify_theorem1(RPartition(((1,) * 5, ())), 1, "des", require_hypothesis=False)
    moments = {r["domain"]["kind"]: r["value"] for r in rep.details["reports"]}
    record(11, not rep.ok, f"identity class E[des] = {moments['class']} vs group "
                           f"{moments['group']}: equality fails as expected", t.seconds)
    assert not rep.ok
    assert t.seconds < 1
