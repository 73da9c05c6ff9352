import random
from fractions import Fraction

import pytest

from asailocal.asai import (
    AsaiInput,
    TwistedPair,
    dichotomy_sign,
    eps_gal_comparison,
    eps_rs,
    gamma_gal,
    gamma_psr,
    gamma_rs,
    l_rs,
    split_eps_check,
)
from asailocal.characters import (
    MultChar,
    Phase,
    restrict_to_F,
    standard_psi,
)
from asailocal.factors import DEFAULT_GRID, approx_equal
from asailocal.padic import EXTENSION_TYPES, PAdicGround, QuadExtension, UNRAMIFIED
from asailocal.tate import tate_gamma
from asailocal.unitgroups import unit_group


def rand_char(K, n, rng, t_den=12):
    G = unit_group(K, n)
    angles = [Fraction(rng.randrange(d), d) for d in G.orders]
    return MultChar.from_angles(K, n, angles, Phase.exact(Fraction(rng.randrange(t_den), t_den)))


def test_gamma_rs_trivial_decomposes_into_tate_factors():
    F = PAdicGround(3)
    E = QuadExtension(F, UNRAMIFIED)
    psi = standard_psi(F)
    from asailocal.characters import psi_to_E

    triv_E = MultChar.trivial(E)
    inp = AsaiInput(E, triv_E, triv_E, psi, E.xi())
    gam = gamma_rs(inp)
    trivF = MultChar.trivial(F)
    want = tate_gamma(trivF, psi) * tate_gamma(trivF, psi) * tate_gamma(
        triv_E, psi_to_E(psi, E, E.xi())
    ).rebase(3)
    ok, dev = approx_equal(gam, want, DEFAULT_GRID, 1e-10)
    assert ok, dev


def test_xi_must_be_trace_zero():
    F = PAdicGround(3)
    E = QuadExtension(F, UNRAMIFIED)
    with pytest.raises(ValueError):
        AsaiInput(E, MultChar.trivial(E), MultChar.trivial(E), standard_psi(F), E.elem(1, 1))


def test_eps_rs_is_monomial_and_matches_corollary():
    rng = random.Random(10)
    for k in range(6):
        p = rng.choice([3, 5])
        F = PAdicGround(p)
        E = QuadExtension(F, EXTENSION_TYPES[k % 3])
        psi = standard_psi(F).shifted(Fraction(rng.choice([1, 2, p])))
        xi = E.xi() * E.embed(Fraction(rng.choice([1, 2, p])))
        mu, nu = rand_char(E, 2, rng), rand_char(E, 2, rng)
        chi = rand_char(F, 1, rng) if k % 2 else None
        inp = AsaiInput(E, mu, nu, psi, xi, chi)
        eps_rs(inp, check=False).as_monomial()  # raises if not monomial
        rep = eps_gal_comparison(inp)
        assert rep["ok"], rep["max_deviation"]


def test_eps_comparison_fully_unramified_is_one():
    # unramified everything, xi a unit (E unramified), c(psi) = 0: both the
    # zeta-side and Galois-side epsilon are 1
    F = PAdicGround(3)
    E = QuadExtension(F, UNRAMIFIED)
    psi = standard_psi(F)
    mu = MultChar.unramified(E, Phase.exact(Fraction(1, 8)))
    nu = MultChar.unramified(E, Phase.exact(Fraction(5, 12)))
    inp = AsaiInput(E, mu, nu, psi, E.xi())
    eps = eps_rs(inp, check=False)
    c, m = eps.as_monomial()
    assert m == 0 and abs(c - 1) < 1e-12
    rep = eps_gal_comparison(inp)
    assert rep["ok"]
    from asailocal.asai import eps_gal

    cg, mg = eps_gal(inp, check=False).as_monomial()
    assert mg == 0 and abs(cg - 1) < 1e-12


def test_downstream_eps_monomial_matches_log_slope():
    # structural (c, m) of a downstream eps agrees with the numeric
    # slope/intercept of log eval
    import cmath
    import math

    rng = random.Random(18)
    F = PAdicGround(3)
    E = QuadExtension(F, EXTENSION_TYPES[1])
    psi = standard_psi(F)
    mu, nu = rand_char(E, 2, rng), rand_char(E, 1, rng)
    eps = eps_rs(AsaiInput(E, mu, nu, psi, E.xi()), check=False)
    c, m = eps.as_monomial()
    v0, v1 = eps.eval(0), eps.eval(1)
    m_hat = -(cmath.log(v1) - cmath.log(v0)).real / math.log(3)
    assert abs(m_hat - m) < 1e-9
    assert abs(v0 - c) < 1e-9 * max(1, abs(c))


def test_gamma_rs_dual_involution():
    # gamma_RS(s, pi) gamma_RS(1-s, pi-dual) = 1
    rng = random.Random(11)
    p = 3
    F = PAdicGround(p)
    psi = standard_psi(F)
    for ext in EXTENSION_TYPES:
        E = QuadExtension(F, ext)
        mu, nu = rand_char(E, 1, rng), rand_char(E, 1, rng)
        g = gamma_rs(AsaiInput(E, mu, nu, psi, E.xi()), check=False)
        gd = gamma_rs(
            AsaiInput(E, mu.inv(), nu.inv(), psi.shifted(-1), E.xi()), check=False
        )
        for s in (0.7, 1.3, 0.4 - 0.8j):
            assert abs(g.eval(s) * gd.eval(1 - s) - 1) < 1e-9


def test_twist_extension_independence():
    rng = random.Random(12)
    for p in (3, 5):
        F = PAdicGround(p)
        psi = standard_psi(F)
        for ext in EXTENSION_TYPES:
            E = QuadExtension(F, ext)
            mu, nu = rand_char(E, 1, rng), rand_char(E, 1, rng)
            chi = rand_char(F, 1, rng)
            inp = AsaiInput(E, mu, nu, psi, E.xi(), chi)
            gA = gamma_rs(inp, check=False, extension_choice=0)
            gB = gamma_rs(inp, check=False, extension_choice=1)
            ok, dev = approx_equal(gA, gB, DEFAULT_GRID, 1e-8)
            assert ok, (p, ext, dev)


def test_l_rs_unramified_euler_product():
    F = PAdicGround(3)
    E = QuadExtension(F, UNRAMIFIED)
    psi = standard_psi(F)
    mu = MultChar.unramified(E, Phase.exact(Fraction(1, 8)))
    nu = MultChar.unramified(E, Phase.exact(Fraction(5, 8)))
    L = l_rs(AsaiInput(E, mu, nu, psi, E.xi()))
    s = 1.1
    a, b = mu.t_full(), nu.t_full()
    # mu|F(p) = mu(p) = a, nu|F(p) = b, and (mu nu^sigma)(pi_E) = a b over q_E = 9
    want = 1 / ((1 - a * 3 ** (-s)) * (1 - b * 3 ** (-s)) * (1 - a * b * 9 ** (-s)))
    assert abs(L.eval(s) - want) < 1e-12
    # ramified third constituent drops out
    mu_r = rand_char(E, 1, random.Random(1))
    L2 = l_rs(AsaiInput(E, mu_r, nu, psi, E.xi()))
    assert len(L2.den) <= 2


def test_theorem_b_assemblies_agree():
    rng = random.Random(13)
    for k in range(6):
        p = rng.choice([3, 5])
        F = PAdicGround(p)
        E = QuadExtension(F, EXTENSION_TYPES[k % 3])
        psi = standard_psi(F)
        mu, nu = rand_char(E, 1, rng), rand_char(E, 1, rng)
        v2 = complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.2, 0.2))
        tau = TwistedPair(rand_char(F, 1, rng), rand_char(F, 1, rng), v2)
        _, rep = gamma_psr(AsaiInput(E, mu, nu, psi, E.xi(), None, tau))
        assert rep["ok"], rep["max_deviation"]


def test_theorem_b_specialization_trivial_twist():
    # tau = 1 boxplus 1: gamma_PSR = |4 xi^4|^{-2s+1} gamma_RS(s)^2 when omega|F = 1
    F = PAdicGround(3)
    E = QuadExtension(F, UNRAMIFIED)
    psi = standard_psi(F)
    mu = MultChar.unramified(E, Phase.exact(Fraction(1, 8)))
    nu = mu.inv()  # omega_pi = 1
    triv = MultChar.trivial(F)
    tau = TwistedPair(triv, triv, 0.0)
    inp = AsaiInput(E, mu, nu, psi, E.xi(), None, tau)
    g_psr, rep = gamma_psr(inp)
    assert rep["ok"]
    g_rs = gamma_rs(AsaiInput(E, mu, nu, psi, E.xi()), check=False)
    xi4 = (E.xi() ** 2).as_F() ** 2 * 4
    w = F.val(xi4)
    from asailocal.factors import NonArchFactor

    pref = NonArchFactor.monomial(3, 3.0 ** float(-w), -2 * w)
    want = pref * g_rs * g_rs
    ok, dev = approx_equal(g_psr, want, DEFAULT_GRID, 1e-9)
    assert ok, dev


def test_dichotomy_requires_trivial_omega():
    rng = random.Random(14)
    F = PAdicGround(3)
    E = QuadExtension(F, UNRAMIFIED)
    psi = standard_psi(F)
    mu, nu = rand_char(E, 1, rng), rand_char(E, 1, rng)
    om = restrict_to_F(mu.mul(nu))
    good = TwistedPair(MultChar.trivial(F), om.inv(), 0.0)
    sgn = dichotomy_sign(AsaiInput(E, mu, nu, psi, E.xi(), None, good))
    assert sgn in (1, -1)
    bad = TwistedPair(MultChar(F, 1, (Fraction(1, 2),), Phase.one()), om.inv(), 0.0)
    if not restrict_to_F(mu.mul(nu)).mul(bad.mu2).mul(bad.nu2).is_trivial():
        with pytest.raises(ValueError):
            dichotomy_sign(AsaiInput(E, mu, nu, psi, E.xi(), None, bad))


def test_dichotomy_all_trivial_is_plus_one():
    F = PAdicGround(3)
    E = QuadExtension(F, UNRAMIFIED)
    psi = standard_psi(F)
    triv_E, triv_F = MultChar.trivial(E), MultChar.trivial(F)
    inp = AsaiInput(E, triv_E, triv_E, psi, E.xi(), None, TwistedPair(triv_F, triv_F, 0.0))
    assert dichotomy_sign(inp) == 1


def test_split_case_identity():
    rng = random.Random(15)
    for p in (3, 5):
        F = PAdicGround(p)
        psi = standard_psi(F)
        for _ in range(3):
            chars = [rand_char(F, rng.randint(0, 1), rng) for _ in range(4)]
            rep = split_eps_check(*chars, psi, Fraction(rng.choice([1, 2, p])))
            assert rep["ok"], rep


def test_dependence_laws_on_grid():
    rng = random.Random(16)
    p = 5
    F = PAdicGround(p)
    E = QuadExtension(F, UNRAMIFIED)
    psi = standard_psi(F)
    mu, nu = rand_char(E, 1, rng), rand_char(E, 1, rng)
    om = restrict_to_F(mu.mul(nu))
    g0 = gamma_rs(AsaiInput(E, mu, nu, psi, E.xi()), check=False)
    for a in (Fraction(2), Fraction(p), Fraction(3 * p)):
        w = F.val(a)
        ga = gamma_rs(AsaiInput(E, mu, nu, psi.shifted(a), E.xi()), check=False)
        gx = gamma_rs(AsaiInput(E, mu, nu, psi, E.xi() * E.embed(a)), check=False)
        for s in DEFAULT_GRID:
            rhs = om.value(a) ** 2 * p ** (-w * (4 * s - 2)) * g0.eval(s)
            assert abs(ga.eval(s) - rhs) / abs(rhs) < 1e-10
            rhs = om.value(a) * p ** (-w * (2 * s - 1)) * g0.eval(s)
            assert abs(gx.eval(s) - rhs) / abs(rhs) < 1e-10


def test_gamma_gal_equals_gamma_rs_up_to_corollary_factor():
    # the gamma version of the Corollary, including a twist
    rng = random.Random(17)
    F = PAdicGround(3)
    psi = standard_psi(F)
    from asailocal.tate import langlands_constant
    from asailocal.asai import _twisted_chars

    for ext in EXTENSION_TYPES:
        E = QuadExtension(F, ext)
        mu, nu = rand_char(E, 1, rng), rand_char(E, 1, rng)
        chi = rand_char(F, 1, rng)
        inp = AsaiInput(E, mu, nu, psi, E.xi(), chi)
        g_rs = gamma_rs(inp, check=False)
        g_gal = gamma_gal(inp, check=False)
        lam = langlands_constant(E, psi)
        mu_t, nu_t = _twisted_chars(inp)
        omega_xi = mu_t.value(inp.xi) * nu_t.value(inp.xi)
        w = F.val((inp.xi * inp.xi).as_F())
        for s in DEFAULT_GRID:
            pref = omega_xi * 3.0 ** (-w * (s - 0.5)) / lam
            assert abs(g_rs.eval(s) - pref * g_gal.eval(s)) / abs(g_rs.eval(s)) < 1e-9
