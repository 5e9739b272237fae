"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
"""

import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import mpmath

from oracles import mp_fraction
from schinzel.cli import main as cli_main
from schinzel.exactnum import CertifiedInterval, interval_log, interval_pi
from schinzel.heights import (
    BoundInputs,
    main_bound,
    solve_log_inequality,
    weil_height_algebraic,
)
from schinzel.exactnum import ball_volume_pi_form
from schinzel.inequalities import check_harmonic_bound, check_inequality
from schinzel.lattice import (
    Lattice,
    lll_reduce,
    orthogonal_lattice,
    successive_minima,
    volume_profile,
)
from schinzel.laurent import (
    LaurentPolynomial,
    difference_set,
    evaluate_at_point,
    maximal_vanishing_subgroups,
    vanishes_on_subgroup,
)
from schinzel.unipoly import cyclotomic
from schinzel.verifier import Instance, torsion_coset_witness, verify_instance
from oracles import subgroup_points


def _report(num, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num}: {status}{' - ' + detail if detail else ''}")
    assert ok, f"acceptance criterion {num} failed: {detail}"


def _schinzel_instance(a_exp):
    f1 = LaurentPolynomial(2, {(1, 0): 1, (0, 0): -2})
    f2 = LaurentPolynomial(2, {(0, 1): 1, (0, 0): -(2 ** a_exp)})
    return Instance(polynomials=(f1, f2), a=(1, a_exp), xi=Fraction(2),
                    claimed_codim=2)


def test_acceptance_1_schinzel_end_to_end(tmp_path):
    ok = True
    details = []
    for a_exp in (2, 10, 100, 1000):
        t0 = time.monotonic()
        rep = verify_instance(_schinzel_instance(a_exp))
        elapsed = time.monotonic() - t0
        good = (rep.hypotheses_met and rep.within_bound
                and rep.witness.vector in ((a_exp, -1), (-a_exp, 1))
                and rep.witness.norm_sq == a_exp ** 2 + 1
                and elapsed < 1.0)
        # the CLI path must exit 0 as well
        inst_path = tmp_path / f"inst_{a_exp}.json"
        inst_path.write_text(json.dumps(_schinzel_instance(a_exp).to_json_dict()))
        import io
        from contextlib import redirect_stdout

        with redirect_stdout(io.StringIO()):
            code = cli_main(["verify", str(inst_path)])
        good = good and code == 0
        ok = ok and good
        details.append(f"a=2^{a_exp} {elapsed * 1000:.0f}ms")
    # bound value for a = 10 against an independent 64-digit oracle
    bound = main_bound(BoundInputs(2, 1, interval_log(1 + 2 ** 10), 2))
    with mpmath.workdps(64):
        ht = mpmath.log(1 + mpmath.mpf(2) ** 10) + 15 * mpmath.log(3)
        oracle = mp_fraction(mpmath.mpf(8) ** 34 * ht * mpmath.log(ht) ** 4, 64)
    ok = ok and bound.lo <= oracle <= bound.hi
    ok = ok and abs(bound.hi - oracle) / oracle < Fraction(1, 10 ** 10)
    _report(1, ok, "Schinzel family a in {2,10,100,1000}; " + ", ".join(details))


def _corpus():
    rng = random.Random(987654321)
    lattices = []
    while len(lattices) < 100:
        rank = 2 + len(lattices) % 5  # ranks 2..6 evenly
        n = rank + 1
        a = tuple(rng.randint(-1000, 1000) for _ in range(n))
        if all(c == 0 for c in a):
            continue
        lattices.append((a, orthogonal_lattice(a)))
    return lattices


CORPUS = None


def _get_corpus():
    global CORPUS
    if CORPUS is None:
        CORPUS = _corpus()
    return CORPUS


def test_acceptance_2_lll_guarantee():
    violations = 0
    for a, lat in _get_corpus():
        n = lat.ambient_dim
        red = lll_reduce(lat)
        minima = successive_minima(lat, lat.rank)
        for j, row in enumerate(red.basis):
            if sum(c * c for c in row) > 2 ** (n - 2) * minima[j]:
                violations += 1
    _report(2, violations == 0,
            f"100 lattices rank 2-6, ||b_j||^2 <= 2^(n-2) lambda_j^2, "
            f"{violations} violations")


def test_acceptance_3_geometry_sandwich():
    violations = 0
    pi256 = interval_pi(256)
    for a, lat in _get_corpus():
        prof = volume_profile(lat)  # Cauchy-Binet asserted inside
        if not prof.vol_inf <= prof.vol_1:
            violations += 1
        k = lat.rank
        minima = successive_minima(lat, k)
        prod_sq = Fraction(math.prod(minima))
        r, h = ball_volume_pi_form(k)
        v_sq = pi256.ipow(h, 300) * (r * r)
        rhs = v_sq.reciprocal() * (Fraction(4) ** k * prof.vol_sq)
        if not prod_sq <= rhs.lo:
            violations += 1
    _report(3, violations == 0,
            f"vol chain + Minkowski with certified pi intervals, "
            f"{violations} violations")


def test_acceptance_4_annexe_suite():
    t0 = time.monotonic()
    failures = []
    for i in range(1, 11):
        chk = check_inequality(i, n_max=200, bits=256)
        if not chk.passed:
            failures.append((i, chk.counterexample))
    harm = check_harmonic_bound(200, bits=256)
    if not harm.passed:
        failures.append((0, harm.counterexample))
    elapsed = time.monotonic() - t0
    ok = not failures and elapsed < 60.0
    _report(4, ok, f"ids 1..10 plus harmonic, n<=200 at 256 bits in {elapsed:.1f}s"
            + (f"; failures {failures}" if failures else ""))


def test_acceptance_5_laurent_lemma_oracle():
    rng = random.Random(24680)
    disagreements = 0
    pairs_done = 0
    while pairs_done < 200:
        n = rng.randint(2, 4)
        gens = [tuple(rng.randint(-2, 2) for _ in range(n))
                for _ in range(rng.randint(1, n - 1))]
        gens = [g for g in gens if any(g)]
        if not gens:
            continue
        try:
            lat = Lattice(sorted(set(gens)), n)
        except ValueError:
            continue
        if rng.random() < 0.5:
            terms = {}
            for _ in range(rng.randint(1, 3)):
                base = tuple(rng.randint(0, 2) for _ in range(n))
                lamb = lat.basis[rng.randrange(lat.rank)]
                shifted = tuple(b + l for b, l in zip(base, lamb))
                c = rng.randint(1, 4)
                terms[base] = terms.get(base, 0) + c
                terms[shifted] = terms.get(shifted, 0) - c
            f = LaurentPolynomial(n, terms)
        else:
            f = LaurentPolynomial(
                n, {tuple(rng.randint(-2, 2) for _ in range(n)): rng.randint(-4, 4)
                    for _ in range(rng.randint(1, 6))})
        if f.is_zero() or len(f.terms) > 6:
            continue
        pairs_done += 1
        claims = vanishes_on_subgroup(f, lat)
        points = subgroup_points(lat, rng, 50)
        values_zero = [evaluate_at_point(f, coords).is_zero() for coords in points]
        if claims and not all(values_zero):
            disagreements += 1
        if not claims:
            found = not all(values_zero)
            tries = 0
            while not found and tries < 30:
                extra = subgroup_points(lat, rng, 5)
                found = any(not evaluate_at_point(f, c).is_zero() for c in extra)
                tries += 1
            if not found:
                disagreements += 1

    # maximality by generator extension on a fixed family
    from schinzel.lattice import row_hnf

    polys = [LaurentPolynomial(2, {(1, 0): 1, (0, 1): -1}),
             LaurentPolynomial(2, {(2, 0): 1, (0, 2): -1})]
    maximal_ok = True
    out = maximal_vanishing_subgroups(polys)
    diffs = [v for v in difference_set(polys) if any(v)]
    for lat in out:
        for d in diffs:
            if lat.contains(d):
                continue
            bigger = Lattice(row_hnf(list(lat.basis) + [d]), lat.ambient_dim)
            if all(vanishes_on_subgroup(f, bigger) for f in polys):
                maximal_ok = False
    _report(5, disagreements == 0 and maximal_ok,
            f"200 (F, Lambda) pairs x 50 points, {disagreements} disagreements; "
            f"maximality {'ok' if maximal_ok else 'violated'}")


def test_acceptance_6_log_inequality():
    rng = random.Random(13579)
    violations = 0
    pairs = 0
    while pairs < 10 ** 4:
        alpha = Fraction(rng.randint(1, 500), rng.randint(1, 8))
        beta = Fraction(rng.randint(1, 500), rng.randint(1, 8))
        if alpha * beta < 3:  # guarantee alpha*beta >= e exactly
            continue
        pairs += 1
        bound = solve_log_inequality(CertifiedInterval.point(alpha),
                                     CertifiedInterval.point(beta), bits=64)
        af, bf = float(alpha), float(beta)
        x = 2.0 * af * math.log(af * bf) + 1.0
        for _ in range(80):
            x = af * math.log(bf * x)
        top = None
        for k in range(1, 1001):
            s = x * (1 - k / 4000.0)
            if s > 0 and s <= af * math.log(bf * s):
                if top is None or s > top:
                    top = s
        if top is not None and Fraction(top) > bound.hi:
            violations += 1
    _report(6, violations == 0,
            f"{pairs} (alpha,beta) pairs x 1000 samples, {violations} violations")


def test_acceptance_7_heights():
    ok = True
    for k in range(1, 21):
        h = weil_height_algebraic(tuple(cyclotomic(k)))
        ok = ok and h.contains(0) and h.width() < Fraction(1, 10 ** 10)
    h2 = weil_height_algebraic((-2, 1))
    with mpmath.workdps(60):
        log2 = mp_fraction(mpmath.log(2), 60)
        golden = mp_fraction(mpmath.log((1 + mpmath.sqrt(5)) / 2) / 2, 60)
    ok = ok and h2.contains(log2)
    h3 = weil_height_algebraic((-1, -1, 1))
    ok = ok and h3.contains(golden)
    _report(7, ok, "20 cyclotomics at width < 1e-10; log 2 and golden-ratio heights")


def test_acceptance_8_torsion_coset_branch():
    f = LaurentPolynomial(2, {(1, 0): 1, (0, 1): -1})
    bad = 0
    for m in range(1, 10 ** 4 + 1):
        inst = Instance(polynomials=(f,), a=(m, m), xi=Fraction(3))
        witnesses = torsion_coset_witness(inst)
        if witnesses != [(1, -1)]:
            bad += 1
            continue
        norm_sq = sum(c * c for c in witnesses[0])
        if not norm_sq == 2 <= 4:  # ||b||_2 = sqrt(2) <= 2 max deg = 2
            bad += 1
    _report(8, bad == 0, f"a=(m,m) for m <= 10^4, witness (1,-1), {bad} failures")


def test_acceptance_9_cli_determinism(tmp_path):
    polys = {"polys": [
        {"nvars": 2, "terms": [{"c": "1", "e": [1, 0]}, {"c": "-2", "e": [0, 0]}]},
        {"nvars": 2, "terms": [{"c": "1", "e": [0, 1]},
                               {"c": "-1024", "e": [0, 0]}]}]}
    inst = dict(polys, a=[1, 10], xi={"rational": "2/1"}, codim=2)
    torsion = dict(polys, a=[1, 10], xi={"rational": "1"}, codim=2)
    pf = tmp_path / "p.json"
    pf.write_text(json.dumps(polys))
    inf = tmp_path / "i.json"
    inf.write_text(json.dumps(inst))
    tf = tmp_path / "t.json"
    tf.write_text(json.dumps(torsion))
    commands = [
        ["analyze", str(pf)],
        ["bound", "--poly-file", str(pf), "--k", "2"],
        ["bound", "--n", "3", "--D", "2", "--h1", "log(7)", "--k", "3"],
        ["lattice", "--a", "3,5,7", "--minima", "--lll", "--filtration"],
        ["lattice", "--a", "1,10", "--minima"],
        ["verify", str(inf)],
        ["verify", str(tf)],
        ["inequalities", "--ids", "3,5,10", "--n-max", "8"],
    ]
    ok = True
    for cmd in commands:
        full = [sys.executable, "-m", "schinzel.cli"] + cmd
        r1 = subprocess.run(full, capture_output=True)
        r2 = subprocess.run(full, capture_output=True)
        ok = ok and r1.stdout == r2.stdout and r1.returncode == r2.returncode
    _report(9, ok, f"{len(commands)} CLI invocations byte-identical across reruns")
