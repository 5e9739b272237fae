import json
import random
from fractions import Fraction

import pytest

from oracles import box_short_vectors
from schinzel.exactnum import CertifiedInterval
from schinzel.heights import BoundInputs, main_bound
from schinzel.laurent import LaurentPolynomial
from schinzel.unipoly import cyclotomic
from schinzel.verifier import (
    Instance,
    bivariate_coprime,
    filtration_report,
    find_orthogonal_witness,
    is_root_of_unity,
    point_on_variety,
    torsion_coset_witness,
    verify_instance,
)


def L(nvars, terms):
    return LaurentPolynomial(nvars, terms)


def schinzel_instance(a_exp: int, xi=Fraction(2), codim=2, shift=0) -> Instance:
    f1 = L(2, {(1, 0): 1, (0, 0): -2})
    f2 = L(2, {(0, 1): 1, (0, 0): -(2 ** a_exp)})
    return Instance(polynomials=(f1, f2), a=(1, a_exp + shift), xi=xi,
                    claimed_codim=codim)


def test_is_root_of_unity():
    assert not is_root_of_unity(Fraction(2))
    assert is_root_of_unity(Fraction(1))
    assert is_root_of_unity(Fraction(-1))
    assert not is_root_of_unity(Fraction(-2, 3))
    assert is_root_of_unity((1, 1, 1))       # x^2 + x + 1
    assert not is_root_of_unity((-1, -1, 1))  # golden ratio
    assert not is_root_of_unity((-2, 1))
    for k in range(1, 13):
        assert is_root_of_unity(tuple(cyclotomic(k)))
    with pytest.raises(ValueError):
        is_root_of_unity(Fraction(0))


def test_point_on_variety_examples():
    inst = schinzel_instance(10)
    assert point_on_variety(inst) == [True, True]
    inst_off = schinzel_instance(10, shift=1)
    assert point_on_variety(inst_off) == [True, False]
    diag = Instance(polynomials=(L(2, {(1, 0): 1, (0, 1): -1}),), a=(5, 5),
                    xi=Fraction(7, 3))
    assert point_on_variety(diag) == [True]


def test_torsion_coset_witness_examples():
    diag = Instance(polynomials=(L(2, {(1, 0): 1, (0, 1): -1}),), a=(3, 3),
                    xi=Fraction(2))
    assert torsion_coset_witness(diag) == [(1, -1)]
    inst = schinzel_instance(10)
    assert torsion_coset_witness(inst) == []
    mono = Instance(polynomials=(L(2, {(2, 1): 3}), L(2, {(0, 1): 5})),
                    a=(1, 1), xi=Fraction(2))
    assert torsion_coset_witness(mono) == []


def test_find_orthogonal_witness_examples():
    w = find_orthogonal_witness((1, 10))
    assert w.vector in ((10, -1), (-10, 1)) and w.norm_sq == 101
    assert w.exact_minimum
    w2 = find_orthogonal_witness((1, 0, 0))
    assert w2.norm_sq == 1 and w2.vector[0] == 0
    w3 = find_orthogonal_witness((3, 4, 5))
    ker = [list(r) for r in __import__("schinzel.lattice", fromlist=["orthogonal_lattice"])
           .orthogonal_lattice((3, 4, 5)).basis]
    oracle = box_short_vectors(ker, 9)
    assert w3.norm_sq == min(sum(c * c for c in v) for v in oracle)
    assert sum(x * y for x, y in zip(w3.vector, (3, 4, 5))) == 0


def test_find_orthogonal_witness_radius_hint():
    hint = CertifiedInterval(Fraction(10), Fraction(11))
    w = find_orthogonal_witness((1, 10), radius_hint=hint)
    assert w.norm_sq == 101


def test_verify_schinzel_instance():
    rep = verify_instance(schinzel_instance(10))
    assert rep.hypotheses_met and rep.within_bound
    assert rep.witness.vector in ((10, -1), (-10, 1))
    assert rep.witness.norm_sq == 101
    assert rep.k == 2 and rep.D == 1
    assert rep.torsion_coset_witnesses == ()
    assert not rep.torsion_flag


def test_verify_torsion_gate():
    rep = verify_instance(schinzel_instance(10, xi=Fraction(1)))
    assert rep.torsion_flag and not rep.hypotheses_met
    assert any("root of unity" in note for note in rep.notes)
    # witness still reported for information
    assert rep.witness.norm_sq == 101


def test_verify_membership_failure():
    rep = verify_instance(schinzel_instance(10, shift=1))
    assert not rep.hypotheses_met
    assert rep.membership_flags == (True, False)
    assert any("misses" in note for note in rep.notes)
    assert rep.witness.norm_sq > 0


def test_verify_codim_auto_justification():
    inst = schinzel_instance(10, codim=None)
    rep = verify_instance(inst)
    assert rep.k == 2
    assert any("justified" in note for note in rep.notes)


def test_verify_deterministic():
    r1 = verify_instance(schinzel_instance(10)).to_json_dict()
    r2 = verify_instance(schinzel_instance(10)).to_json_dict()
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)


def test_verify_algebraic_xi():
    f1 = L(2, {(1, 0): 1, (0, 1): -1})  # x1 - x2 vanishes at (xi^2, xi^2)
    inst = Instance(polynomials=(f1, L(2, {(2, 0): 1, (0, 2): -1})), a=(2, 2),
                    xi=(-1, -1, 1), claimed_codim=2)
    rep = verify_instance(inst)
    assert rep.membership_flags == (True, True)
    assert not rep.torsion_flag


def test_witness_always_orthogonal_and_nonzero():
    rng = random.Random(61)
    for _ in range(25):
        n = rng.randint(2, 5)
        a = tuple(rng.randint(-30, 30) for _ in range(n))
        if all(c == 0 for c in a):
            continue
        w = find_orthogonal_witness(a)
        assert any(w.vector)
        assert sum(x * y for x, y in zip(w.vector, a)) == 0
        assert w.norm_sq == sum(c * c for c in w.vector)


def test_filtration_report_examples():
    bi = BoundInputs(2, 1, CertifiedInterval.point(0), 2)
    rep = filtration_report((1, 10), k=2, bound_inputs=bi)
    assert rep.filtration.minima_sq[0] == (101, 101)
    assert rep.admissible_m == (0,)
    ratio = rep.complement / main_bound(bi)
    assert ratio.ipow(2).lo <= 16 <= ratio.ipow(2).hi
    rep2 = filtration_report((1, 0, 0))
    assert rep2.filtration.degree_intervals == ((1, 1), (1, 1), (1, 1))
    assert rep2.admissible_m == (0, 1)


def test_filtration_report_sandwich_random_z4():
    rng = random.Random(67)
    for _ in range(5):
        a = tuple(rng.randint(-9, 9) for _ in range(4))
        if all(c == 0 for c in a):
            continue
        rep = filtration_report(a)
        filt = rep.filtration
        for i in range(4 - 1):
            lo_i, hi_i = filt.degree_intervals[i]
            s_lo, s_hi = filt.sandwich[i]
            assert s_lo.lo <= hi_i and lo_i <= s_hi.hi


def test_bivariate_coprime():
    f1 = L(2, {(1, 0): 1, (0, 0): -2})
    f2 = L(2, {(0, 1): 1, (0, 0): -1024})
    assert bivariate_coprime(f1, f2)
    # shared factor (x1 - 1)
    g1 = L(2, {(1, 0): 1, (0, 0): -1})
    prod_terms = {}
    for e1, c1 in g1.terms.items():
        for e2, c2 in L(2, {(0, 1): 1, (0, 0): 1}).terms.items():
            key = (e1[0] + e2[0], e1[1] + e2[1])
            prod_terms[key] = prod_terms.get(key, 0) + c1 * c2
    g2 = L(2, prod_terms)  # (x1-1)(x2+1)
    assert not bivariate_coprime(g1, g2)
    # same curve twice
    assert not bivariate_coprime(g1, g1)
    diag = L(2, {(1, 0): 1, (0, 1): -1})
    assert bivariate_coprime(g1, diag)


def test_instance_json_round_trip():
    inst = schinzel_instance(10)
    blob = json.dumps(inst.to_json_dict(), sort_keys=True)
    back = Instance.from_json_dict(json.loads(blob))
    assert back == inst
    alg = Instance(polynomials=(L(2, {(1, 0): 1, (0, 1): -1}),), a=(1, 1),
                   xi=(-1, -1, 1))
    back2 = Instance.from_json_dict(json.loads(json.dumps(alg.to_json_dict())))
    assert back2 == alg
    with pytest.raises(ValueError):
        Instance.from_json_dict({"polys": []})


def test_instance_validation():
    f1 = L(2, {(1, 0): 1, (0, 0): -2})
    with pytest.raises(ValueError):
        Instance(polynomials=(f1,), a=(0, 0), xi=Fraction(2))
    with pytest.raises(ValueError):
        Instance(polynomials=(f1,), a=(1, 1), xi=Fraction(2), claimed_codim=3)
    with pytest.raises(ValueError):
        Instance(polynomials=(), a=(1, 1), xi=Fraction(2))
    with pytest.raises(ValueError):
        Instance(polynomials=(L(1, {(1,): 1, (0,): -1}),), a=(1,), xi=Fraction(2))


def test_witness_is_exact_first_minimum():
    from schinzel.lattice import orthogonal_lattice, successive_minima

    rng = random.Random(71)
    for _ in range(15):
        n = rng.randint(2, 5)
        a = tuple(rng.randint(-40, 40) for _ in range(n))
        if all(c == 0 for c in a):
            continue
        w = find_orthogonal_witness(a)
        assert w.exact_minimum
        lam1 = successive_minima(orthogonal_lattice(a), 1)[0]
        assert w.norm_sq == lam1
