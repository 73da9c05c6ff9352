"""Brute-force non-archimedean Whittaker functions and Rankin-Selberg zeta
integrals: the oracle side of the factor identities.

Sections of an induced representation are specified by their restriction to
the lower-unipotent big cell; values elsewhere come from the Bruhat
decomposition and B-equivariance.  Whittaker values are exact: every integral
reduces to finitely many character-coset sums (exact roots of unity) plus
geometric tails summed in closed form, so the closed-form identities can be
tested with zero deviation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .characters import AddChar, MultChar, conductor_add, psi_to_E, restrict_to_F
from .cyclotomic import Cyc
from .factors import PoleError
from .padic import EElement, PAdicGround, QuadExtension


class StabilizationError(AssertionError):
    """A truncated shell sum failed to stabilize where it must."""


# ---------------------------------------------------------------------------
# value backends: exact cyclotomic or floating complex
# ---------------------------------------------------------------------------


def _zero(exact):
    return Cyc.zero() if exact else 0j


class _Acc:
    """Mutable sum accumulator: avoids quadratic dict copying in hot loops."""

    __slots__ = ("exact", "terms", "z")

    def __init__(self, exact):
        self.exact = exact
        self.terms = {}
        self.z = 0j

    def add(self, val):
        if self.exact:
            for a, c in val.terms.items():
                self.terms[a] = self.terms.get(a, 0) + c
        else:
            self.z += val

    def result(self):
        return Cyc(self.terms) if self.exact else self.z


def _qpow(q: int, e, exact):
    if exact:
        fe = Fraction(e)
        if fe.denominator == 1:
            return Cyc.rational(Fraction(q) ** int(fe))
        if fe.denominator == 2:
            r = _isqrt(q)
            if r * r == q:
                return Cyc.rational(Fraction(r) ** int(2 * fe))
        raise ValueError(f"{q}^{e} is irrational; exact mode needs even exponents")
    return complex(q ** float(e))


def _isqrt(n: int) -> int:
    r = int(n**0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def _char_val(chi: MultChar, x, exact):
    return chi.cyc(x) if exact else chi.value(x)


def _psi_val(psi: AddChar, x, exact):
    return psi.cyc(x) if exact else psi.value(x)


# ---------------------------------------------------------------------------
# exact character-coset primitives
# ---------------------------------------------------------------------------


def _vol_O(psi: AddChar, exact, cvol=None):
    if cvol is None:
        cvol = Fraction(conductor_add(psi), 2)
    return _qpow(psi.field.q, cvol, exact)


def shell_integral(chi: MultChar, j: int, psi: AddChar, exact=True, cvol=None):
    """S(j) = int_{ord t = j} chi(t) psi(-t) dt; the measure has
    vol(O) = q^cvol (default: self-dual for psi)."""
    K = chi.field
    q = K.q
    c = conductor_add(psi)
    V = _vol_O(psi, exact, cvol)
    n = chi.n
    if n >= 1:
        if j != c - n:
            return _zero(exact)
        acc = _Acc(exact)
        for x in K.shell(j, n):
            acc.add(_char_val(chi, x, exact) * _psi_val(psi, -x, exact))
        return acc.result() * _qpow(q, -(j + n), exact) * V
    pi_j = (K.uniformizer() if isinstance(K, QuadExtension) else Fraction(K.p)) ** j
    if j >= c:
        w = Fraction(1, q**j) - Fraction(1, q ** (j + 1))
        return _char_val(chi, pi_j, exact) * V * (Cyc.rational(w) if exact else float(w))
    if j == c - 1:
        acc = _Acc(exact)
        for x in K.shell(j, 1):
            acc.add(_psi_val(psi, -x, exact))
        return _char_val(chi, pi_j, exact) * V * acc.result() * _qpow(q, -(j + 1), exact)
    return _zero(exact)


def shell_integral_enumerated(
    chi: MultChar, j: int, psi: AddChar, exact=True, extra=1, cvol=None
):
    """Same shell integral by honest enumeration at a refined modulus; used
    for stabilization checks."""
    K = chi.field
    q = K.q
    c = conductor_add(psi)
    V = _vol_O(psi, exact, cvol)
    m = max(chi.n, c - j, 1) + extra
    acc = _Acc(exact)
    for x in K.shell(j, m):
        acc.add(_char_val(chi, x, exact) * _psi_val(psi, -x, exact))
    return acc.result() * _qpow(q, -(j + m), exact) * V


def coset_integral(chi: MultChar, t0, L: int, psi: AddChar, exact=True, cvol=None):
    """CT = int_{t0 + pi^L O} chi(t) psi(-t) dt with ord(t0) < L."""
    K = chi.field
    q = K.q
    c = conductor_add(psi)
    V = _vol_O(psi, exact, cvol)
    T1 = K.val(t0)
    if T1 >= L:
        raise ValueError("coset_integral needs ord(t0) < L")
    J = L - T1
    n = chi.n
    c_eff = c - T1  # conductor of eta -> psi(-t0 eta)
    if c_eff > max(J, n):
        # chi(1+eta) only sees eta mod pi^n, so the fine psi-sum runs over a
        # full coset of pi^max(J,n) O on which psi is a nontrivial character
        return _zero(exact)
    acc = _zero(exact)
    for k in range(J, n):
        m = max(n - k, c_eff - k, 1)
        part = _Acc(exact)
        for eta in K.shell(k, m):
            one_eta = (K.one() if isinstance(K, QuadExtension) else Fraction(1)) + eta
            part.add(
                _char_val(chi, one_eta, exact) * _psi_val(psi, -_mul(K, t0, eta), exact)
            )
        acc = acc + part.result() * _qpow(q, -(k + m), exact)
    Kk = max(J, n)
    if Kk >= c_eff:
        acc = acc + _qpow(q, -Kk, exact)
    inner = acc * V
    pref = (
        _char_val(chi, t0, exact)
        * _psi_val(psi, -t0, exact)
        * _qpow(q, -T1, exact)
    )
    return pref * inner


def _mul(K, x, y):
    if isinstance(K, QuadExtension):
        x = x if isinstance(x, EElement) else K.embed(x)
        y = y if isinstance(y, EElement) else K.embed(y)
        return x * y
    return Fraction(x) * Fraction(y)


# ---------------------------------------------------------------------------
# the big-cell integral
# ---------------------------------------------------------------------------


def bigcell_integral(
    chi: MultChar,
    C_aff: tuple,
    D_aff: tuple,
    psi: AddChar,
    exact=True,
    verify_stability=False,
):
    """int_E chi(C(t)) |C(t)|^{-1} 1[ord D(t) >= ord C(t)] psi(-t) dt for
    affine C(t) = alpha + beta t, D(t) = delta + eps t.

    This is the t-integral behind every Whittaker value of an h = 1_O
    section; the Gauss/geometric structure makes all shell sums finite.
    """
    K = chi.field
    q = K.q
    alpha, beta = C_aff
    delta, epsv = D_aff
    c = conductor_add(psi)
    cvol = Fraction(c, 2)
    V = _vol_O(psi, exact, cvol)
    if _nz(beta):
        psi2 = psi.shifted(_inv(K, beta))
        pref = _psi_val(psi, _div(K, alpha, beta), exact) * _qpow(q, K.val(beta), exact)
        a2 = _sub(K, delta, _div(K, _mul(K, epsv, alpha), beta)) if _nz(epsv) or _nz(delta) else _zero_elem(K)
        b2 = _div(K, epsv, beta) if _nz(epsv) else _zero_elem(K)
        if not _nz(a2):
            raise ValueError("degenerate section matrix (a' = 0 needs det = 0)")
        c2 = conductor_add(psi2)
        n = chi.n
        total = _zero(exact)
        if not _nz(b2) or K.val(b2) >= 0:
            U = K.val(a2)
            if n >= 1:
                jstar = c2 - n
                if jstar <= U:
                    total = total + _qpow(q, jstar, exact) * shell_integral(
                        chi, jstar, psi2, exact, cvol
                    )
                edges = [c2 - n - 1, c2 - n + 1] if verify_stability else []
            else:
                for j in range(c2 - 1, U + 1):
                    total = total + _qpow(q, j, exact) * shell_integral(
                        chi, j, psi2, exact, cvol
                    )
                edges = [c2 - 2] if verify_stability else []
            for j in edges:
                if j <= U and not _is_zero_val(
                    shell_integral_enumerated(chi, j, psi2, exact, cvol=cvol), exact
                ):
                    raise StabilizationError(f"shell {j} failed to vanish")
        else:
            T1 = K.val(a2) - K.val(b2)
            L = T1 - K.val(b2)
            t1 = -_div(K, a2, b2)
            total = _qpow(q, T1, exact) * coset_integral(chi, t1, L, psi2, exact, cvol)
            if verify_stability:
                for j in (T1 - 1, T1 + 1):
                    got = _shell_with_condition_enum(chi, j, a2, b2, psi2, exact, cvol)
                    if not _is_zero_val(got, exact):
                        raise StabilizationError(f"shell {j} failed to vanish")
        return pref * total
    # constant C(t) = alpha
    if not _nz(epsv):
        raise ValueError("degenerate section matrix (C and D both constant)")
    j0 = K.val(alpha)
    L2 = j0 - K.val(epsv)
    t2 = -_div(K, delta, epsv) if _nz(delta) else _zero_elem(K)
    if L2 < c:
        return _zero(exact)
    ball = _psi_val(psi, -t2, exact) * V * _qpow(q, -L2, exact)
    return _char_val(chi, alpha, exact) * _qpow(q, j0, exact) * ball


def _shell_with_condition_enum(chi, j, a2, b2, psi2, exact, cvol=None):
    """Honest enumeration of int_{ord tau = j, ord(a2 + b2 tau) >= j}; a
    stabilization probe only."""
    K = chi.field
    q = K.q
    c2 = conductor_add(psi2)
    m = max(chi.n, c2 - j, K.val(a2) - j + 1, 1 - (K.val(b2) if _nz(b2) else 0), 1) + 1
    acc = _Acc(exact)
    for tau in K.shell(j, m):
        val = _add(K, a2, _mul(K, b2, tau))
        if _nz(val) and K.val(val) < j:
            continue
        acc.add(_char_val(chi, tau, exact) * _psi_val(psi2, -tau, exact))
    return acc.result() * _qpow(q, -(j + m), exact) * _vol_O(psi2, exact, cvol)


def _nz(x) -> bool:
    if isinstance(x, EElement):
        return not x.is_zero()
    return Fraction(x) != 0


def _zero_elem(K):
    return K.zero() if isinstance(K, QuadExtension) else Fraction(0)


def _inv(K, x):
    return x.inv() if isinstance(x, EElement) else 1 / Fraction(x)


def _div(K, x, y):
    return _mul(K, x, _inv(K, y))


def _sub(K, x, y):
    if isinstance(K, QuadExtension):
        x = x if isinstance(x, EElement) else K.embed(x)
        y = y if isinstance(y, EElement) else K.embed(y)
        return x - y
    return Fraction(x) - Fraction(y)


def _add(K, x, y):
    if isinstance(K, QuadExtension):
        x = x if isinstance(x, EElement) else K.embed(x)
        y = y if isinstance(y, EElement) else K.embed(y)
        return x + y
    return Fraction(x) + Fraction(y)


def _is_zero_val(v, exact) -> bool:
    if exact:
        return v.is_zero()
    return abs(v) < 1e-12


# ---------------------------------------------------------------------------
# sections and Whittaker values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InducedSection:
    """A section of Ind(mu, nu) with big-cell profile h = 1_{O_E}:
    f(u_-(x)) = (nu/mu)(x) |x|^{-1} 1_{|x| >= 1}(x) in the paper's
    parametrization (for nu = 1 this is the level-c(mu) test section)."""

    E: QuadExtension
    mu: MultChar
    nu: MultChar
    psi_xi: AddChar

    def chi_ratio(self) -> MultChar:
        return self.nu.mul(self.mu.inv())


def whittaker_value(
    sec: InducedSection,
    M: tuple,
    exact=True,
    verify_stability=False,
):
    """W_{psi_xi, f}(M) for the h = 1_O section, M = ((A,B),(C,D)) over E.

    Computed as mu(det) |det|^{1/2} times the big-cell t-integral; exact.
    """
    E = sec.E
    (A, B), (Cm, Dm) = M
    A, B, Cm, Dm = (x if isinstance(x, EElement) else E.embed(x) for x in (A, B, Cm, Dm))
    det = A * Dm - B * Cm
    if det.is_zero():
        raise ValueError("singular matrix")
    core = bigcell_integral(
        sec.chi_ratio(), (A, Cm), (B, Dm), sec.psi_xi, exact, verify_stability
    )
    pref = _char_val(sec.mu, det, exact) * _qpow(E.q, Fraction(-E.val(det), 2), exact)
    return pref * core


def _mat_mul(E: QuadExtension, M1, M2):
    (a, b), (c, d) = M1
    (e, f), (g, h) = M2
    emb = lambda x: x if isinstance(x, EElement) else E.embed(x)
    a, b, c, d, e, f, g, h = map(emb, (a, b, c, d, e, f, g, h))
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def w1_matrix(E: QuadExtension):
    return ((E.elem(0), E.elem(-1)), (E.elem(1), E.elem(0)))


def lower_unipotent(E: QuadExtension, x):
    return ((E.one(), E.zero()), (x if isinstance(x, EElement) else E.embed(x), E.one()))


def diag_matrix(E: QuadExtension, a, d=1):
    emb = lambda x: x if isinstance(x, EElement) else E.embed(x)
    return ((emb(a), E.zero()), (E.zero(), emb(d)))


def whittaker_from_section(sec: InducedSection, y, exact=True, verify_stability=True):
    """W(diag(y,1)) for the section, with the stabilization check on."""
    return whittaker_value(sec, diag_matrix(sec.E, y), exact, verify_stability)


# -- the paper's averaged test vectors ---------------------------------------


def w_averaged_lower(sec: InducedSection, a, c_level: int, scale_exp: int, exact=True):
    """W of g = q^{scale_exp} * int_{pi^c O_F} rho(u_-(x)) f dx at diag(a,1).

    The x-integral is discretized exactly; the discretization level is
    refined until two consecutive levels agree exactly.
    """
    E = sec.E
    F = E.ground

    def value(m_x: int):
        acc = _Acc(exact)
        for k in range(F.p**m_x):
            x = Fraction(F.p) ** c_level * k
            Mx = _mat_mul(E, diag_matrix(E, a), lower_unipotent(E, x))
            acc.add(whittaker_value(sec, Mx, exact))
        return acc.result() * _qpow(F.q, -(c_level + m_x), exact)

    m = max(1, sec.mu.n)
    prev = value(m)
    for _ in range(4):
        cur = value(m + 1)
        if _is_zero_val(prev - cur, exact):
            return prev * _qpow(F.q, scale_exp, exact)
        prev, m = cur, m + 1
    raise StabilizationError("x-average failed to stabilize")


def w_case1(sec: InducedSection, a, exact=True):
    """The (averaged) vector of the mu|F-ramified case: g = |pi|^{-r} int f.

    Returns W_{psi_xi, g}(diag(a,1)); the closed form is |a| 1_{pi^(c-r) O}(a).
    """
    E = sec.E
    mu = sec.mu
    r = -(-mu.n // E.e)
    c_mu = restrict_to_F(mu).n
    return w_averaged_lower(sec, a, c_mu, scale_exp=r, exact=exact)


def w_case2(sec: InducedSection, a, exact=True):
    """The GL2(O_F)-averaged vector h of the mu|F-unramified case.

    h = sum_{u in O/pi^{r-1}} rho(u_-(pi u)) f + sum_{u in O/pi^r} rho(w1 u_-(u)) f;
    the closed form is (E:mu(a)|a| mu(pi)^r + |a|)-shaped with box supports.
    """
    E = sec.E
    F = E.ground
    mu = sec.mu
    r = -(-mu.n // E.e)
    acc = _Acc(exact)
    for u in range(F.p ** max(r - 1, 0)):
        Mx = _mat_mul(
            E, diag_matrix(E, a), lower_unipotent(E, Fraction(F.p) * u)
        )
        acc.add(whittaker_value(sec, Mx, exact))
    for u in range(F.p**r):
        Mx = _mat_mul(E, diag_matrix(E, a), _mat_mul(E, w1_matrix(E), lower_unipotent(E, u)))
        acc.add(whittaker_value(sec, Mx, exact))
    return acc.result()


def w_rho_w1(sec: InducedSection, y, x, exact=True):
    """rho(w1) W_{psi_xi, f} at [[y, 0], [x, 1]] (the (E:2.2.2) shape)."""
    E = sec.E
    M = _mat_mul(E, ((y, E.zero()), (x, E.one())), w1_matrix(E))
    return whittaker_value(sec, M, exact)


# ---------------------------------------------------------------------------
# spherical Whittaker values and the zeta oracle
# ---------------------------------------------------------------------------


def spherical_whittaker(mu: MultChar, nu: MultChar, psi_xi: AddChar, y) -> complex:
    """W(diag(y,1)) for the spherical section, via the big-cell Fourier
    integral with its finite shell expansion.  Unramified mu, nu only."""
    E: QuadExtension = mu.field
    if mu.n or nu.n:
        raise ValueError("spherical vector needs unramified mu, nu")
    c = conductor_add(psi_xi)
    y = y if isinstance(y, EElement) else E.embed(y)
    if y.is_zero():
        raise ValueError("y must be nonzero")
    n = E.val(y)
    q = E.q
    x_ratio = mu.t_full() / nu.t_full()
    # Ihat(y) = int h(u) psi_xi(-y u) du, h = 1_O + (nu/mu)|.|^{-1} tail,
    # J_w = q^w 1[n-w>=c] - q^{w-1} 1[n-w>=c-1]
    total = complex(1.0 if n >= c else 0.0)
    w = 1
    while n - w >= c - 1:
        j1 = 1 if n - w >= c else 0
        j2 = 1 if n - w >= c - 1 else 0
        jw = q**w * j1 - q ** (w - 1) * j2
        total += x_ratio**w * q ** (-w) * jw
        w += 1
    vol = float(q ** Fraction(c, 2))
    return nu.value(y) * q ** (-n / 2) * total * vol


def spherical_zeta(
    s: complex,
    mu: MultChar,
    nu: MultChar,
    E: QuadExtension,
    eta: Optional[MultChar] = None,
    box_level: int = 0,
    normalize: bool = False,
    strict: bool = False,
) -> complex:
    """Z(s, W, Phi) for the spherical Whittaker vector and the radial box
    Phi = 1[max(|x|,|y|) <= q^{-box_level}], by Iwasawa reduction to a double
    shell series whose tails are geometric and summed in closed form.

    The closed form is the meromorphic continuation; with ``strict`` the
    convergence abscissa is enforced and violations raise PoleError.
    """
    if mu.n or nu.n:
        raise ValueError("spherical oracle needs unramified mu, nu")
    if conductor_add(psi_to_E(AddChar(E.ground, 1), E, E.xi())) != 0:
        raise AssertionError("canonical psi_xi must have conductor 0")
    F = E.ground
    q = F.q
    e = E.e
    qE = E.q
    t_mu = mu.t_full()
    t_nu = nu.t_full()
    x = t_mu / t_nu
    eta_p = eta.value(Fraction(F.p)) if eta is not None else 1.0
    omega_p = mu.value(E.embed(F.p)) * nu.value(E.embed(F.p))
    R = omega_p * eta_p**2 * q ** (-2 * s)
    D = t_nu**e * eta_p * q ** (-s) * 1.0
    if strict:
        import math

        bounds = [
            math.log(abs(omega_p * eta_p**2), q) / 2,
            math.log(abs(t_nu**e * eta_p), q),
            math.log(abs(t_mu**e * eta_p), q),
        ]
        if complex(s).real <= max(bounds):
            raise PoleError(f"series diverges for Re(s) <= {max(bounds)}")
    for r in (R, D, D * x**e):
        if abs(r - 1) < 1e-13:
            raise PoleError(s)
    t2_series = R**box_level / (1 - R)
    if abs(x - 1) > 1e-12:
        A = (1 - x / qE) / (1 - x)
        v_series = A * (1 / (1 - D) - x / (1 - D * x**e))
        norm = A * (1 - x)
    else:
        v_series = (1 - 1 / qE) * (e * D / (1 - D) ** 2 + 1 / (1 - D))
        norm = 1 - 1 / qE
    out = t2_series * v_series
    if normalize:
        out /= norm
    return out


def spherical_gamma_oracle(
    s: complex, mu: MultChar, nu: MultChar, E: QuadExtension, box_level: int = 0
) -> complex:
    """Z(1-s, W (x) omega0^{-1}, Phi^) / Z(s, W, Phi): the functional-equation
    ratio that gamma_RS must reproduce (Phi the radial box)."""
    q = E.ground.q
    omega0_inv = restrict_to_F(mu.mul(nu)).inv()
    num = spherical_zeta(1 - s, mu, nu, E, eta=omega0_inv, box_level=-box_level)
    num *= q ** (-2.0 * box_level)
    den = spherical_zeta(s, mu, nu, E, box_level=box_level)
    return num / den


# ---------------------------------------------------------------------------
# Fourier transforms of 2-D boxes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Box2:
    """coef * bx(x) * by(y) with modulated 1-D boxes over F."""

    bx: "tuple"  # (mult, center, level)
    by: "tuple"
    coef: complex = 1.0

    def value(self, psi: AddChar, x, y) -> complex:
        return self.coef * _box1_value(psi, self.bx, x) * _box1_value(psi, self.by, y)


def _box1_value(psi: AddChar, box, x) -> complex:
    mult, center, level = box
    F: PAdicGround = psi.field
    diff = Fraction(x) - Fraction(center)
    if diff != 0 and F.val(diff) < level:
        return 0j
    return psi.value(Fraction(mult) * Fraction(x)) if mult else 1.0 + 0j


def _box1_fourier(psi: AddChar, box) -> tuple:
    """Transform (m, a, n) -> scaled (a, -m, c-n) under f^(y)=int f psi(xy)dx."""
    mult, center, level = box
    F: PAdicGround = psi.field
    c = conductor_add(psi)
    scale = float(F.q ** Fraction(c, 2)) * F.q ** float(-level)
    phase = psi.value(Fraction(center) * Fraction(mult)) if mult else 1.0
    return (Fraction(center), -Fraction(mult), c - level), scale * phase


def _box1_negate(box_and_scale):
    (mult, center, level), scale = box_and_scale
    return (-mult, -center, level), scale


def fourier_transform_boxes(phi: list, psi: AddChar) -> list:
    """Symplectic transform Phi^(x,y) = int Phi(u,v) psi(uy - vx) du dv for a
    linear combination of 2-D modulated boxes."""
    out = []
    for b in phi:
        new_by, s1 = _box1_fourier(psi, b.bx)
        new_bx, s2 = _box1_negate(_box1_fourier(psi, b.by))
        out.append(Box2(bx=new_bx, by=new_by, coef=b.coef * s1 * s2))
    return out
