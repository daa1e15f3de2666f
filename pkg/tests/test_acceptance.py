"""Acceptance criteria, one test per criterion.

Each test prints a single ``ACCEPTANCE <n> PASS|FAIL`` line with its timing.
Run directly (``python tests/test_acceptance.py``) for the summary alone.
"""
from __future__ import annotations

import sys
import time
from fractions import Fraction

import pytest

from g2sugawara import g2, gaudin, sugawara, walgebra
from g2sugawara.exact import RationalFunctionU


def _report(n: int, title: str, passed: bool, seconds: float, budget: float, detail: str = "") -> str:
    extra = f" ({detail})" if detail else ""
    return f"ACCEPTANCE {n:2d} {'PASS' if passed else 'FAIL'}: {title}; {seconds:.2f}s of {budget:g}s budget{extra}"


def criterion_1():
    start = time.perf_counter()
    jac = g2.jacobi_failures()
    inv = g2.invariance_failures()
    listed = g2.listed_relations()
    bad = [k for k, v in listed.items() if not v]
    ok = not jac and not inv and not bad
    return ok, time.perf_counter() - start, 1.0, f"{len(listed)} listed relations"


def criterion_2():
    start = time.perf_counter()
    rel = g2.tensor_relations()
    ok = len(rel) == 12 and all(rel.values())
    return ok, time.perf_counter() - start, 1.0, f"{sum(rel.values())}/{len(rel)} identities"


def criterion_3():
    start = time.perf_counter()
    rel = g2.chevalley_relations()
    return all(rel.values()), time.perf_counter() - start, 1.0, f"{len(rel)} relations"


def criterion_4():
    start = time.perf_counter()
    cert = sugawara.verify_casimir((2, 3, 4, 5, 6))
    return cert.ok, time.perf_counter() - start, 60.0, "k = 2..6, all 14 generators"


def criterion_5():
    sugawara._SS_CACHE.clear()
    times = {}
    ok = True
    for tag in sugawara.TAGS:
        start = time.perf_counter()
        cert = sugawara.verify_invariance(tag)
        times[tag] = time.perf_counter() - start
        ok = ok and cert.ok and len(cert.items) == 15
        if tag != "S6" and times[tag] > 60:
            ok = False
    # every single printed coefficient of S6, perturbed, must break invariance
    start = time.perf_counter()
    mutants_caught = 0
    for term in range(len(sugawara.SS_DEFINITIONS["S6"])):
        cert = sugawara.verify_invariance("S6", "all", sugawara.mutated_definition("S6", term))
        mutants_caught += not cert.ok
    control = time.perf_counter() - start
    ok = ok and mutants_caught == len(sugawara.SS_DEFINITIONS["S6"])
    detail = ", ".join(f"{t} {s:.2f}s" for t, s in times.items())
    detail += f"; {mutants_caught}/7 S6 mutants fail ({control:.1f}s)"
    return ok, times["S6"], 900.0, detail


def criterion_6():
    start = time.perf_counter()
    cert = sugawara.verify_corollary_relations()
    return cert.ok, time.perf_counter() - start, 120.0, f"{len(cert.items)} identities"


def criterion_7():
    walgebra._HC_CACHE.clear()
    rel = walgebra.w_relations()
    rel_ok = not any(rel.values())
    start = time.perf_counter()
    walgebra.hc_image("S6")
    s6_time = time.perf_counter() - start
    cert = walgebra.verify_theorem_b()
    return cert.ok and rel_ok, s6_time, 600.0, "w2 verbatim and relations hold" if rel_ok else "w relations fail"


def criterion_8():
    start = time.perf_counter()
    cert = walgebra.verify_screening_kernel()
    return cert.ok and len(cert.items) == 22, time.perf_counter() - start, 120.0, f"{len(cert.items)} kernel checks"


MU_SAMPLES = ((1, 2), (2, -5), (Fraction(1, 2), 3))


def criterion_9():
    start = time.perf_counter()
    cert = gaudin.verify_theorem_c(MU_SAMPLES, pairs="all")
    names = {i.name.split(" ", 1)[1] for i in cert.items}
    named = all(f"[{x},{y}]" in names for x, y in gaudin.NAMED_B_PAIRS)
    return cert.ok and named, time.perf_counter() - start, 1800.0, f"{len(MU_SAMPLES)} regular mu, {len(cert.items)} checks"


def criterion_10():
    start = time.perf_counter()
    ok = True
    weights = ((1, 0), (2, 3), (Fraction(1, 2), -1))
    for tag in ("S2", "S3"):
        for lam in weights:
            cert = gaudin.verify_gaudin_l1(tag, lam, u_samples=(2, 3, 5, 7, 11))
            ok = ok and cert.ok
    return ok, time.perf_counter() - start, 300.0, f"S2, S3 at {len(weights)} weights, 5 u samples"


def criterion_11():
    start = time.perf_counter()
    base = {"ell": 1, "z": ["0"], "lambda": [["3", "0"]], "mu": ["2", "0"]}
    exact = gaudin.GaudinConfig.from_json({**base, "bethe": [{"w": "3/2", "label": 1}]})
    moved = gaudin.GaudinConfig.from_json({**base, "bethe": [{"w": "3/2", "label": 1}]})
    moved.bethe = [(Fraction(3, 2) + Fraction(1, 1000), 1)]
    ok = gaudin.bethe_residuals(exact) == [0] and all(r != 0 for r in gaudin.bethe_residuals(moved))
    ok = ok and isinstance(gaudin.eigenvalue("S2", exact), RationalFunctionU)
    return ok, time.perf_counter() - start, 1.0, "w = 3/2 exact; w = 3/2 + 1/1000 nonzero"


CRITERIA = {
    1: ("structure integrity", criterion_1),
    2: ("tensor identities", criterion_2),
    3: ("Chevalley isomorphism", criterion_3),
    4: ("Casimir centrality", criterion_4),
    5: ("Segal-Sugawara invariance S2..S6 (time is S6)", criterion_5),
    6: ("relations among S2..S5", criterion_6),
    7: ("Harish-Chandra images (time is S6 image)", criterion_7),
    8: ("screening kernels", criterion_8),
    9: ("shift-of-argument commutativity", criterion_9),
    10: ("Gaudin one-site consistency", criterion_10),
    11: ("Bethe residual sanity", criterion_11),
}


def _run(n: int) -> tuple[bool, str]:
    title, fn = CRITERIA[n]
    ok, seconds, budget, detail = fn()
    passed = ok and seconds <= budget
    return passed, _report(n, title, passed, seconds, budget, detail)


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_acceptance(n, capsys):
    passed, line = _run(n)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [_run(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(p for p, _ in results) else 1)
