"""Acceptance criteria, one test (and one printed PASS/FAIL line) each.

Run with ``pytest -v``; the criterion lines are repeated in the terminal
summary under "acceptance criteria".
"""

import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, SESSION

from adoframes import (bch_compose, build_representation, catalog_keys, catalog_lookup,
                       group_of, invariant_metric_check, jacobi_check, sample_descriptors,
                       verify_a410_closed_form, verify_catalog_entry, verify_identities)
from adoframes.config import DEFAULT
from adoframes.geometry import sample_points
from adoframes.matfunc import eigenvalues, exp_lagrange_sylvester, exp_scaling_squaring
from adoframes.report import NILPOTENT_BCH
from adoframes.symcatalog import flip_sign, symbolic_frame

from test_ado import units

SEED = DEFAULT.seed


def record(number, passed, detail):
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture(scope="module")
def descriptors():
    return sample_descriptors()


@pytest.fixture(scope="module")
def built(descriptors):
    t0 = time.perf_counter()
    reps = [build_representation(d) for d in descriptors]
    return reps, time.perf_counter() - t0


@pytest.fixture(scope="module")
def identity_reports(built):
    return [verify_identities(rep) for rep in built[0]]


def test_criterion_1_catalog_integrity(descriptors):
    t0 = time.perf_counter()
    failures = [d.label() for d in descriptors if not jacobi_check(d.constants)]
    elapsed = time.perf_counter() - t0
    counts = tuple(len(catalog_keys(n)) for n in (2, 3, 4))
    sampled = {d.name for d in descriptors}
    ok = not failures and counts == (2, 9, 24) and sampled == set(catalog_keys()) \
        and elapsed < 1.0
    record(1, ok, f"{len(descriptors)} descriptors from {counts} entries (dims 2/3/4), "
                  f"Jacobi failures {failures or 'none'}, {elapsed:.3f} s < 1 s")
    assert not failures
    assert counts == (2, 9, 24)
    assert sampled == set(catalog_keys())
    assert elapsed < 1.0


def test_criterion_2_representations(descriptors, built):
    reps, elapsed = built
    bad = [d.label() for d, r in zip(descriptors, reps)
           if r.bracket_residual() != 0 or r.rank() != d.dim]
    rep = build_representation(catalog_lookup("A4,10"))
    expected = [units(6, (1, 1, 2)),
                units(6, (1, 1, 3), (1, 3, 5), (-1, 4, 2), (1, 4, 6)),
                units(6, (1, 1, 4), (1, 3, 6), (-1, 4, 5)),
                units(6, (-1, 3, 4), (1, 4, 3), (1, 5, 2), (-2, 5, 6), (2, 6, 5))]
    exact_match = all(np.array_equal(a, b) for a, b in zip(rep.matrices, expected))
    ok = not bad and exact_match and elapsed < 10.0
    record(2, ok, f"{len(reps)} exact builds, bracket residual 0 and rank n "
                  f"(failures {bad or 'none'}); A4,10 equals the listed 6x6 matrices "
                  f"without permutation: {exact_match}; {elapsed:.2f} s < 10 s")
    assert not bad
    assert exact_match
    assert elapsed < 10.0


def test_criterion_3_exponentials(descriptors, built):
    worst = 0.0
    for d, rep in zip(descriptors, built[0]):
        om = rep.numeric()
        rng = np.random.default_rng(SEED)
        draws = rng.normal(size=(20, d.dim))
        draws *= rng.uniform(0, 1, size=(20, 1)) / np.linalg.norm(draws, axis=1, keepdims=True)
        for a in draws:
            m = np.einsum("k,kij->ij", a, om)
            worst = max(worst, float(np.max(np.abs(
                exp_lagrange_sylvester(m) - exp_scaling_squaring(m)))))
    om = build_representation(catalog_lookup("A4,10")).numeric()
    t = 1.3
    spec = eigenvalues(np.einsum("k,kij->ij", [0.4, -0.2, 0.7, t], om))
    want = {0j: 2, 1j * t: 1, -1j * t: 1, 2j * t: 1, -2j * t: 1}
    spec_ok = spec.order == 6 and len(spec.eigenvalues) == 5 and all(
        any(abs(z - w) < 1e-9 and m == mw for w, mw in want.items())
        for z, m in zip(spec.eigenvalues, spec.multiplicities))
    ok = worst < 1e-10 and spec_ok
    record(3, ok, f"Lagrange-Sylvester vs scaling-squaring max deviation {worst:.2e} < 1e-10 "
                  f"over 20 draws per representation; A4,10 spectrum "
                  f"{{0 (x2), +-i t, +-2i t}} reproduced: {spec_ok}")
    assert worst < 1e-10
    assert spec_ok


@pytest.fixture(scope="module")
def closed_form():
    return verify_a410_closed_form(build_representation(catalog_lookup("A4,10")))


def test_criterion_4_closed_form_after_change_of_basis(closed_form):
    assert closed_form.samples == 10
    assert closed_form.intertwined_deviation < 1e-9


@pytest.mark.xfail(strict=True, reason=(
    "the stored A4,10 group matrix is exp(theta.Omega) written in a different basis of "
    "the representation space (fifth basis vector negated, sixth shifted by the "
    "second); the entrywise comparison cannot reach 1e-9. Blocking analysis in "
    "/root/notes/decisions.md"))
def test_criterion_4_closed_form_entrywise(closed_form):
    ok = closed_form.raw_deviation < 1e-9
    record(4, ok, f"entrywise deviation of exp(theta(alpha).Omega) from the stored matrix "
                  f"{closed_form.raw_deviation:.3e} (needs < 1e-9) at {closed_form.samples} "
                  f"alpha with 0.1 < |alpha4| < 2; after the fixed change of basis "
                  f"{closed_form.intertwined_deviation:.2e}. Blocked, see decisions ledger")
    assert ok


def _worst(reports, name):
    return max(r.get(name).residual for r in reports)


def test_criterion_5_composition(descriptors, built, identity_reports):
    ident = _worst(identity_reports, "identity element")
    assoc = _worst(identity_reports, "associativity")
    proj = _worst(identity_reports, "log projection residual")
    bch = 0.0
    for d, rep in zip(descriptors, built[0]):
        if d.name not in NILPOTENT_BCH:
            continue
        pts = sample_points(d.dim, 20, SEED + 3)
        phi, resid = group_of(rep).compose_batch(pts[:10], pts[10:])
        bch = max(bch, float(np.max(np.abs(phi - bch_compose(d.constants, pts[:10], pts[10:])))))
        proj = max(proj, float(np.max(resid)))
    ok = ident < 1e-10 and assoc < 1e-7 and bch < 1e-10 and proj < 1e-8
    record(5, ok, f"phi(a,0)=a and phi(0,a)=a to {ident:.1e} (< 1e-10); associativity "
                  f"{assoc:.1e} (< 1e-7) at 10 triples per algebra; BCH {bch:.1e} "
                  f"(< 1e-10) for {', '.join(NILPOTENT_BCH)}; log projection {proj:.1e} "
                  f"(< 1e-8)")
    assert ident < 1e-10
    assert assoc < 1e-7
    assert bch < 1e-10
    assert proj < 1e-8


def test_criterion_6_frames(identity_reports):
    origin = _worst(identity_reports, "xi(0) = eta(0) = c(0) = I")
    rec_xi = _worst(identity_reports, "recovered C from xi")
    rec_eta = _worst(identity_reports, "recovered D = -C from eta")
    comm = _worst(identity_reports, "[xi, eta] = 0")
    mc = _worst(identity_reports, "d sigma = 1/2 C sigma^sigma")
    conv = all(r.get("step halving convergence").passed for r in identity_reports)
    ok = origin < 1e-7 and rec_xi < 1e-5 and rec_eta < 1e-5 and comm < 1e-5 \
        and mc < 1e-4 and conv
    record(6, ok, f"frames at 0 {origin:.1e} (< 1e-7); C from xi {rec_xi:.1e}, D = -C from "
                  f"eta {rec_eta:.1e} (< 1e-5); [xi, eta] {comm:.1e} (< 1e-5); Maurer-Cartan "
                  f"{mc:.1e} (< 1e-4); second order step halving on every algebra: {conv}")
    assert origin < 1e-7
    assert rec_xi < 1e-5 and rec_eta < 1e-5
    assert comm < 1e-5
    assert mc < 1e-4
    assert conv


def test_criterion_7_symbolic_tables(descriptors):
    failures = []
    for d in descriptors:
        report = verify_catalog_entry(d.name, d.parameters)
        if not report.passed:
            failures.append(d.label())
    frame = symbolic_frame("A4,10")
    faults = []
    for which, index, component, suite in (("eta", 1, 0, "xi-eta commute"),
                                           ("eta", 1, None, "duality"),
                                           ("xi", 2, 0, "xi brackets"),
                                           ("sigma", 0, 1, "structure equation")):
        res = verify_catalog_entry("A4,10", frame=flip_sign(frame, which, index, component))
        s = res.suite(suite)
        faults.append(not s.passed and s.witness is not None)
    ok = not failures and all(faults)
    record(7, ok, f"five exact suites pass for {len(descriptors) - len(failures)} of "
                  f"{len(descriptors)} entries at 20 points, rtol 1e-9; "
                  f"{sum(faults)}/{len(faults)} injected sign flips caught with a witness")
    assert not failures
    assert all(faults)


def test_criterion_8_invariant_metric(descriptors, built):
    worst, flagged, total = 0.0, 0, 0
    for d, rep in zip(descriptors, built[0]):
        if d.dim < 3:
            continue
        rng = np.random.default_rng(SEED + d.dim)
        a = rng.normal(size=(5, d.dim, d.dim))
        gammas = a @ np.swapaxes(a, 1, 2) + d.dim * np.eye(d.dim)
        worst = max(worst, float(np.max(invariant_metric_check(rep, gammas))))

        def varying(pts, n=d.dim):
            out = np.broadcast_to(np.eye(n), pts.shape[:-1] + (n, n)).copy()
            out[..., 0, 0] += pts[..., n - 1]
            return out

        total += 1
        flagged += invariant_metric_check(rep, varying) > DEFAULT.metric_flag
    ok = worst < 1e-4 and flagged == total
    record(8, ok, f"Killing residual (relative to max(1, |g|)) of 5 seeded constant metrics "
                  f"{worst:.1e} (< 1e-4) on "
                  f"{total} 3d/4d algebras; x-dependent metric flagged on {flagged}/{total}")
    assert worst < 1e-4
    assert flagged == total


def test_criterion_9_runtime(request):
    elapsed = time.perf_counter() - SESSION["start"]
    n = len(request.session.items)
    ok = elapsed < 60.0
    record(9, ok, f"{n} tests, this one last, finished {elapsed:.1f} s after the session "
                  f"started (< 60 s, single process)")
    assert ok
