"""Acceptance criteria 1-9; each test prints one PASS/FAIL line.

All tolerances are exact; runtime limits are the pinned budgets.
"""

from __future__ import annotations

import subprocess
import sys
import time

import pytest

from bfcable import checks
from bfcable import paper_objects as po
from fuzz import fuzz_complex, fuzz_type_d

CAT = po.DEFAULT_CATALOG

BUDGET = {1: 1.0, 2: 1.0, 3: 2.0, 5: 5.0, "verify": 30.0}


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
        assert ok, f"{label}: {detail}"
    return emit


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def test_criterion_1_morphism_space(report):
    (dim, t1) = timed(checks.check_mor_dim, CAT)
    (basis, t2) = timed(checks.check_mor_basis, CAT)
    t = t1 + t2
    ok = dim == (10, 10) and basis[0] == basis[1] and t < BUDGET[1]
    report("criterion 1: dim H(Mor(U, J)) = 10, basis independent", ok,
           f"dim={dim[1]} rank={basis[1]['rank']} t={t:.3f}s (<{BUDGET[1]}s)")


def test_criterion_2_longitude_pairing(report):
    (want, got), t = timed(checks.check_longitude_pairing, CAT)
    report("criterion 2: longitude pairing I⊠phi, I⊠psi, I⊠g, I⊠h", want == got and t < BUDGET[2],
           f"t={t:.3f}s (<{BUDGET[2]}s)")


def test_criterion_3_cable_pairing(report):
    (want, got), t = timed(checks.check_cable_pairing, CAT, (2, 3, 5, 10))
    report("criterion 3: cable pairing, p in {2,3,5,10}", want == got and t < BUDGET[3],
           f"t={t:.3f}s (<{BUDGET[3]}s)")


def test_criterion_4_candidate_image(report):
    (want, got), t = timed(checks.check_candidate_image, CAT, (2, 3, 5, 10))
    bad = [k for k in want if want[k] != got.get(k)]
    report("criterion 4: candidate-map image, all four eps", not bad, f"mismatches={bad} t={t:.3f}s")


def test_criterion_5_tau_and_torsion_order(report):
    (want, got), t = timed(checks.check_cable_tau, CAT, (2, 3, 5, 10))
    (w25, g25), t25 = timed(checks.check_cable_tau, CAT, (25,))
    ok = want == got and w25 == g25 and t25 < BUDGET[5]
    report("criterion 5: torsion order = tau = p, witnesses, p in {2,3,5,10,25}", ok,
           f"p=25: {g25[25]} t={t25:.3f}s (<{BUDGET[5]}s)")


def test_criterion_6_hat_surgery(report):
    (want, got), t = timed(checks.check_surgery_hat, CAT, range(1, 7))
    dims = {n: got[n]["dim_J"] for n in got}
    report("criterion 6: hat surgery dims n+8 / n and the map on alpha_k⊗v", want == got,
           f"dim_J={dims} t={t:.3f}s")


def test_criterion_7_correction_terms(report):
    (want, got), t = timed(checks.check_correction_terms, CAT)
    report("criterion 7: V0 over {id, iota, sigma, iota_sigma} = {0,0,0,1}; calibration (0,0)",
           want == got, f"{got} t={t:.3f}s")


def test_criterion_8_disk_maps(report):
    (want, got), t = timed(checks.check_disk_maps, CAT)
    report("criterion 8: disk-map pairs sum to e1+e2; tau(e1+e2) = 1", want == got, f"{got} t={t:.3f}s")


def test_criterion_9_property_suites(report):
    parts = {}
    for cid in ("validators", "alpha-rows", "cable-degeneration", "functoriality"):
        parts[cid] = checks.run_check(cid, CAT).status == "pass"
    sd, sc = fuzz_type_d(240), fuzz_complex(3, 120)
    total = sd.total + sc.total
    rate = (sd.detected + sc.detected) / (sd.relevant + sc.relevant)
    parts["fuzz"] = total >= 200 and rate >= 0.99
    report("criterion 9: validators, fuzz, alpha-rows, degeneration, functoriality", all(parts.values()),
           f"{parts} mutants={total} relevant={sd.relevant + sc.relevant} detected={rate:.1%}")


def test_verify_all_budget(report):
    t = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "bfcable.cli", "verify", "--all"],
                          capture_output=True, text=True)
    t = time.perf_counter() - t
    ok = proc.returncode == 0 and t < BUDGET["verify"]
    report("verify --all: exit 0 within budget", ok, f"exit={proc.returncode} t={t:.2f}s (<{BUDGET['verify']}s)")
