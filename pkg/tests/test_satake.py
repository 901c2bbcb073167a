import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_orbit_image
from satake_params.catalog import glmd, group_specs, resolve
from satake_params.satake import (
    SatakeParameter,
    SpecError,
    admissible_pair_check,
    constant_term_include,
    delta_half,
    eigenvalue_check,
    evaluate_center,
    gl_inner_form_parameter,
    member_S_G,
    normal_form,
    orbit,
    orbit_sum_transfer,
    param_equal,
    pi_star,
    surjectivity_certificate,
    transfer,
    transfer_unnormalized,
)
from satake_params.values import (
    ONE,
    FormalSum,
    FormalValue,
    TorusCharacter,
    parse_tuple,
    parse_value,
    random_character,
)

SPECS = group_specs()
QUASI = [s for s in SPECS if s.is_quasisplit]
INNER = [s for s in SPECS if not s.is_quasisplit]


def spec(name):
    return resolve(name).spec


def param(s, text):
    return SatakeParameter.from_values(s, parse_tuple(text))


def test_quaternion_benchmark():
    s = spec("GLmD(2,2,[1])")
    p = transfer(s, TorusCharacter.trivial(s.kottwitz))
    assert [str(v) for v in p.normal_form.values] == ["q^{-1/2}", "q^{1/2}"]
    assert p == param(s, "(q^{1/2}, q^{-1/2})")


def test_transfer_gl2_d():
    s = spec("GLmD(4,2,[1,1])")
    chi = TorusCharacter(s.kottwitz, (parse_value("η1"), parse_value("η2")))
    p = transfer(s, chi)
    assert p == param(s, "(η1*q^{1/2}, η1*q^{-1/2}, η2*q^{1/2}, η2*q^{-1/2})")


@pytest.mark.parametrize("s", SPECS, ids=lambda s: s.name)
def test_transfer_forms_agree(s):
    rng = random.Random(1)
    for _ in range(5):
        chi = random_character(s.kottwitz, rng, ["a"])
        assert transfer(s, chi) == transfer_unnormalized(s, chi)


def test_quasi_split_transfer_is_identity():
    s = spec("GL(3)")
    chi = random_character(s.kottwitz, random.Random(0), ["a"])
    assert transfer(s, chi).char.values == chi.values


def test_non_member():
    s = spec("GLmD(2,2,[1])")
    res = member_S_G(s, param(s, "(q^2, 1)"))
    assert not res.member
    assert res.certificate
    assert not res.certificate[0]["value"] == "1"
    assert not admissible_pair_check(s, param(s, "(q^2, 1)"))


@pytest.mark.parametrize("name", ["GLmD(2,2,[1])", "GLmD(4,2,[1,1])", "GLmD(3,3,[1])"])
def test_transfers_are_members_with_witnesses(name):
    s = spec(name)
    rng = random.Random(2)
    for _ in range(20):
        chi = random_character(s.kottwitz, rng, ["a", "b"])
        p = transfer(s, chi)
        res = member_S_G(s, p)
        assert res.member
        assert transfer(s, res.witness) == p
        assert admissible_pair_check(s, p)


@pytest.mark.parametrize("name", ["GLmD(2,2,[1])", "GLmD(4,2,[1,1])"])
def test_membership_matches_admissible_pairs(name):
    s = spec(name)
    rng = random.Random(3)
    for _ in range(100):
        p = SatakeParameter(s, random_character(s.lattice, rng, ["a"], height=1))
        assert member_S_G(s, p).member == admissible_pair_check(s, p)


@pytest.mark.parametrize("s", QUASI, ids=lambda s: s.name)
def test_quasi_split_everything_is_a_member(s):
    rng = random.Random(4)
    for _ in range(10):
        p = SatakeParameter(s, random_character(s.lattice, rng, ["a"]))
        assert member_S_G(s, p).member


@pytest.mark.parametrize("s", INNER, ids=lambda s: s.name)
def test_inner_forms_have_smaller_kottwitz_rank(s):
    assert s.lattice.free_rank > s.kottwitz.free_rank


@pytest.mark.parametrize("s", SPECS, ids=lambda s: s.name)
def test_eigenvalue_identity(s):
    for levi in {(), s.minimal_levi, tuple(range(len(s.datum.simple)))}:
        if s.dual.is_stable(levi):
            for value, size in eigenvalue_check(s, levi):
                assert value == FormalValue(size)


def test_delta_half_gl3():
    s = spec("GL(3)")
    assert [str(v) for v in delta_half(s, (0, 1), -1).values] == ["q", "1", "q^{-1}"]
    d = delta_half(s, (0, 1), 1) * delta_half(s, (0, 1), -1)
    assert all(v == ONE for v in d.values)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["GL(3)", "SU3-unram", "Sp(4)", "D4-triality", "A2-swap"]), st.data())
def test_normal_form_is_orbit_invariant(name, data):
    s = spec(name)
    seed = data.draw(st.integers(0, 10 ** 6))
    c = random_character(s.lattice, random.Random(seed), ["a"])
    nf = normal_form(s, c)
    for d in orbit(s, c):
        assert normal_form(s, d) == nf
        assert param_equal(SatakeParameter(s, c), SatakeParameter(s, d))


def test_param_equal_needs_same_group():
    with pytest.raises(SpecError):
        param_equal(param(spec("GL(2)"), "(q,1)"), param(spec("GLmD(2,2,[1])"), "(q,1)"))


def test_evaluate_center():
    s = spec("GL(2)")
    p = param(s, "(a, b)")
    assert evaluate_center(s, {(0, 0): 1}, p) == FormalSum.of(ONE)
    assert evaluate_center(s, {(1, 0): 1}, p) == FormalSum.of(parse_value("a")) + FormalSum.of(parse_value("b"))


def test_orbit_sum_on_division_algebra():
    s = spec("GLmD(2,2,[1])")
    r = orbit_sum_transfer(s, (1,))
    assert r.image == brute_orbit_image(2, [2], 0) == {(1,): 2}
    assert r.multiplier == 2
    assert r.claim_holds


def test_orbit_sum_on_gl2_of_quaternions():
    # the image is 12 times the W(G, A)-orbit sum, not |W(M*, A*)| = 4 times
    s = spec("GLmD(4,2,[1,1])")
    r = orbit_sum_transfer(s, (1, 0))
    assert r.image == brute_orbit_image(4, [2, 2], 0) == {(1, 0): 12, (0, 1): 12}
    assert r.multiplier == 4
    assert r.sigma == {(1, 0): 1, (0, 1): 1}
    assert not r.claim_holds
    # summing over the normalizer of the Levi instead gives the factor 4
    assert r.normalizer_image == {(1, 0): 4, (0, 1): 4}


@pytest.mark.parametrize("name", ["GLmD(2,2,[1])", "GLmD(4,2,[1,1])"])
def test_orbit_sums_span(name):
    cert = surjectivity_certificate(spec(name), 3)
    assert cert["surjective"]
    assert cert["checked"] > 0


def test_constant_term():
    s = spec("GL(4)")
    f = {tuple(int(i == j) for i in range(4)): 1 for j in range(4)}
    assert len(constant_term_include(s, (0,), f)) == 3
    assert len(constant_term_include(s, (0, 2), f)) == 2
    with pytest.raises(SpecError):
        constant_term_include(s, (0,), {(1, 0, 0, 0): 1})


@pytest.mark.parametrize("n,d,parts", [(2, 2, [1]), (4, 2, [1, 1]), (6, 3, [1, 1]), (6, 2, [2, 1]), (8, 2, [1, 2, 1])])
def test_gl_inner_form_formula(n, d, parts):
    twists = [FormalValue.symbol(f"η{i + 1}") for i in range(len(parts))]
    p = gl_inner_form_parameter(n, d, parts, twists)
    s = glmd(n, d, parts)
    assert p == transfer(s, TorusCharacter(s.kottwitz, tuple(twists)))


def test_gl_inner_form_rejects_bad_partition():
    with pytest.raises(SpecError):
        gl_inner_form_parameter(5, 2, [1, 1], [ONE, ONE])


def test_pi_star():
    s = spec("GLmD(2,2,[1])")
    p = transfer(s, TorusCharacter.trivial(s.kottwitz))
    t = pi_star(s, spec("GL(2)"), p)
    assert [str(v) for v in t.normal_form.values] == ["q^{-1/2}", "q^{1/2}"]
    with pytest.raises(SpecError):
        pi_star(s, spec("GL(3)"), p)


def test_spec_json_round_trip():
    from satake_params.satake import GroupSpec
    for s in SPECS:
        back = GroupSpec.from_json(s.to_json())
        assert back.to_json() == s.to_json()
        assert back.kottwitz.divisors == s.kottwitz.divisors


def test_half_integral_values_exact():
    s = spec("GLmD(2,2,[1])")
    p = transfer(s, TorusCharacter.trivial(s.kottwitz))
    assert p.char.values[0].q == Fraction(1, 2)


@pytest.mark.parametrize("s", SPECS, ids=lambda s: s.name)
def test_membership_matches_admissible_pairs_everywhere(s):
    rng = random.Random(6)
    for k in range(40):
        if k % 2:
            c = random_character(s.lattice, rng, ["a"], height=1)
        else:
            c = transfer(s, random_character(s.kottwitz, rng, ["a"])).char
        p = SatakeParameter(s, c)
        assert member_S_G(s, p).member == admissible_pair_check(s, p)


@pytest.mark.parametrize("name", ["GLmD(2,2,[1])", "GLmD(4,2,[1,1])", "SU3-unram", "D4-triality"])
def test_transfer_is_injective_on_orbits(name):
    s = spec(name)
    rng = random.Random(7)
    chars = [random_character(s.kottwitz, rng, ["a"]) for _ in range(15)]
    for c1 in chars:
        for c2 in chars:
            same_orbit = any(TorusCharacter(s.kottwitz, tuple(
                c1.evaluate([row[j] for row in a]) for j in range(s.kottwitz.ngens))) == c2
                for a in s.relative_weyl)
            assert (transfer(s, c1) == transfer(s, c2)) == same_orbit


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_evaluate_center_is_orbit_invariant(seed):
    s = spec("SU3-unram") if seed % 2 else spec("GL(3)")
    rng = random.Random(seed)
    c = random_character(s.lattice, rng, ["a"])
    f = {tuple(rng.randint(-2, 2) for _ in range(s.lattice.ngens)): rng.randint(1, 3)}
    value = evaluate_center(s, f, SatakeParameter(s, c))
    for d in orbit(s, c):
        assert evaluate_center(s, f, SatakeParameter(s, d)) == value


@pytest.mark.parametrize("name", ["GL(3)", "GLmD(4,2,[1,1])", "GLmD(2,2,[1])"])
def test_sorted_normal_form_matches_orbit_minimum(name):
    s = spec(name)
    assert s.full_symmetric
    rng = random.Random(8)
    for _ in range(10):
        c = random_character(s.lattice, rng, ["a", "b"])
        assert normal_form(s, c) == min(orbit(s, c), key=TorusCharacter.key)
