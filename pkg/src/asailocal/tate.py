"""Tate local factors L, eps, gamma for characters of F^x and E^x.

gamma is *defined* here by the functional-equation ratio
Z(1-s, chi^{-1}, Phi^) / Z(s, chi, Phi): the closed form returned to callers
is certified at construction against that ratio, evaluated exactly via finite
shell sums with closed-form geometric tails, for several choices of Phi.  A
disagreement is an internal error, not a tolerance failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import AddChar, MultChar, conductor_add
from .cyclotomic import Cyc
from .factors import (
    DEFAULT_GRID,
    NonArchFactor,
    PHI_INDEPENDENCE_TOL,
    PoleError,
)
from .padic import EElement, Field, is_extension

_CHECK_GRID = (0.7, 1.3, 0.4 - 0.8j)


class ConsistencyError(AssertionError):
    """The closed form disagreed with the functional-equation oracle."""


# ---------------------------------------------------------------------------
# L-factors
# ---------------------------------------------------------------------------


def tate_L(chi: MultChar) -> NonArchFactor:
    """L(s, chi): (1 - chi(pi) q^{-s})^{-1} unramified, 1 ramified."""
    q = chi.field.q
    if chi.is_ramified:
        return NonArchFactor.one(q)
    return NonArchFactor.euler_inverse(q, chi.t_full())


def tate_L_dual_reflected(chi: MultChar) -> NonArchFactor:
    """L(1-s, chi^{-1}) as a factor in s."""
    return tate_L(chi.inv()).reflect()


# ---------------------------------------------------------------------------
# Gauss sums
# ---------------------------------------------------------------------------


def gauss_sum_exact(chi: MultChar, psi: AddChar) -> Cyc:
    """sum chi^{-1}(x) psi(x) over the shell ord(x) = c(psi) - c(chi),
    representatives mod pi^{c(psi)}; exact roots of unity."""
    if not chi.is_ramified:
        raise ValueError("no primitive Gauss sum for an unramified character")
    K = chi.field
    n, c = chi.n, conductor_add(psi)
    inv = chi.inv()
    out = Cyc.zero()
    for x in K.shell(c - n, n):
        out = out + Cyc.root(inv.angle_at(x) + psi.angle(x))
    return out


def gauss_sum(chi: MultChar, psi: AddChar) -> complex:
    """Floating-complex Gauss sum; terms are exact roots of unity."""
    if not chi.is_ramified:
        raise ValueError("no primitive Gauss sum for an unramified character")
    K = chi.field
    n, c = chi.n, conductor_add(psi)
    inv = chi.inv()
    out = 0j
    for x in K.shell(c - n, n):
        out += inv.value(x) * psi.value(x)
    return out


# ---------------------------------------------------------------------------
# exact Tate zeta integrals for modulated boxes (the oracle)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModBox:
    """coef * psi(mult * x) * 1_{center + pi^level O}(x)."""

    coef: complex
    mult: object  # field element or 0
    center: object  # field element
    level: int

    def indicator(self, K, x) -> bool:
        diff = _sub(K, x, self.center)
        if _is_zero(diff):
            return True
        return _val(K, diff) >= self.level


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, EElement) else Fraction(x) == 0


def _val(K: Field, x) -> int:
    return K.val(x)


def _sub(K: Field, x, y):
    if is_extension(K):
        x = x if isinstance(x, EElement) else K.embed(x)
        y = y if isinstance(y, EElement) else K.embed(y)
        return x - y
    return Fraction(x) - Fraction(y)


def box_fourier(piece: ModBox, psi: AddChar) -> ModBox:
    """Transform of a modulated box under f^(y) = int f(x) psi(xy) dx,
    with the self-dual measure of psi."""
    K = psi.field
    c = conductor_add(psi)
    vol_box = K.q ** Fraction(c, 2) * Fraction(K.q) ** (-piece.level)
    a, n, m0 = piece.center, piece.level, piece.mult
    coef = piece.coef * float(vol_box) * psi.value(_mul_add(K, a, m0))
    new_center = _neg(K, m0)
    return ModBox(coef=coef, mult=a, center=new_center, level=c - n)


def _mul_add(K, a, m0):
    if _is_zero_like(m0):
        return _zero(K)
    if is_extension(K):
        a = a if isinstance(a, EElement) else K.embed(a)
        m0 = m0 if isinstance(m0, EElement) else K.embed(m0)
        return a * m0
    return Fraction(a) * Fraction(m0)


def _is_zero_like(x) -> bool:
    if isinstance(x, EElement):
        return x.is_zero()
    return Fraction(x) == 0


def _zero(K):
    return K.zero() if is_extension(K) else Fraction(0)


def _neg(K, x):
    if is_extension(K):
        return -(x if isinstance(x, EElement) else K.embed(x))
    return -Fraction(x)


def _shell_char_psi_integral(chi: MultChar, v: int, mult, psi: AddChar, vol_O: float) -> complex:
    """int_{ord x = v} chi(x) psi(mult*x) dx (dx with vol(O) = vol_O)."""
    K = chi.field
    q = K.q
    if _is_zero_like(mult):
        c_eff = None
    else:
        c_eff = conductor_add(psi) - _val(K, mult)
    if chi.is_ramified:
        if c_eff is None:
            return 0j
        if v != c_eff - chi.n:
            return 0j
        out = 0j
        for x in K.shell(v, chi.n):
            out += chi.value(x) * psi.value(_mul_add(K, x, mult))
        return out * vol_O * q ** (-(v + chi.n))
    t = chi.t_full()
    if c_eff is None or v >= c_eff:
        return t**v * vol_O * (q ** (-v) - q ** (-v - 1))
    if v == c_eff - 1:
        # full oscillation except the subleading coset
        phase = 0j
        for x in K.shell(v, 1):
            phase += psi.value(_mul_add(K, x, mult))
        return t**v * vol_O * q ** (-(v + 1)) * phase
    return 0j


def _coset_char_psi_integral(
    chi: MultChar, center, level: int, mult, psi: AddChar, vol_O: float
) -> complex:
    """int_{center + pi^level O} chi(x) psi(mult*x) dx for a coset of units
    (ord(center) < level); exact finite sum."""
    K = chi.field
    q = K.q
    v0 = _val(K, center)
    m = level - v0
    depth = max(chi.n, m)
    if not _is_zero_like(mult):
        depth = max(depth, conductor_add(psi) - _val(K, mult) - v0)
    out = 0j
    seen = 0
    for x in K.shell(v0, depth):
        if not ModBox(1.0, 0, center, level).indicator(K, x):
            continue
        seen += 1
        out += chi.value(x) * psi.value(_mul_add(K, x, mult))
    return out * vol_O * q ** (-(v0 + depth))


def tate_zeta_value(chi: MultChar, psi: AddChar, pieces, s: complex) -> complex:
    """Z(s, chi, Phi) = int chi(x) |x|^s Phi(x) d^x x for Phi a list of
    modulated boxes; d^x x = zeta_K(1) dx / |x|, dx self-dual for psi.

    Geometric tails are summed in closed form, which is also the meromorphic
    continuation outside the convergence half-plane.
    """
    K = chi.field
    q = K.q
    c = conductor_add(psi)
    vol_O = float(q ** Fraction(c, 2))
    zeta1 = 1.0 / (1.0 - 1.0 / q)
    total = 0j
    for piece in pieces:
        a, n, m0 = piece.center, piece.level, piece.mult
        if _is_zero_like(a) or _val(K, a) >= n:
            # box is the ideal pi^n O: sum over shells v >= n
            if chi.is_ramified:
                if _is_zero_like(m0):
                    continue
                v = conductor_add(psi) - _val(K, m0) - chi.n
                if v < n:
                    continue
                shell_val = _shell_char_psi_integral(chi, v, m0, psi, vol_O)
                total += piece.coef * zeta1 * q ** (-v * (s - 1)) * shell_val
            else:
                t = chi.t_full()
                c_eff = None if _is_zero_like(m0) else conductor_add(psi) - _val(K, m0)
                start = n if c_eff is None else max(n, c_eff)
                # geometric part: sum_{v >= start} q^{-v(s-1)} t^v vol q^{-v}(1-1/q)
                r = t * q ** (-s)
                if abs(r - 1) < 1e-13:
                    raise PoleError(s)
                geom = r**start / (1 - r)
                total += piece.coef * zeta1 * vol_O * (1 - 1.0 / q) * geom
                if c_eff is not None and c_eff - 1 >= n:
                    v = c_eff - 1
                    shell_val = _shell_char_psi_integral(chi, v, m0, psi, vol_O)
                    total += piece.coef * zeta1 * q ** (-v * (s - 1)) * shell_val
        else:
            v0 = _val(K, a)
            inner = _coset_char_psi_integral(chi, a, n, m0, psi, vol_O)
            total += piece.coef * zeta1 * q ** (-v0 * (s - 1)) * inner
    return total


def fe_ratio(chi: MultChar, psi: AddChar, pieces, s: complex) -> complex:
    """Z(1-s, chi^{-1}, Phi^) / Z(s, chi, Phi)."""
    hat = [box_fourier(p, psi) for p in pieces]
    num = tate_zeta_value(chi.inv(), psi, hat, 1 - s)
    den = tate_zeta_value(chi, psi, pieces, s)
    if abs(den) < 1e-30:
        raise ZeroDivisionError("test function has vanishing zeta integral")
    return num / den


def _default_test_functions(chi: MultChar, psi: AddChar):
    """Phi = 1_O (unramified chi) or 1_{1+pi^n O} (ramified), plus the
    independence alternates: a unit translate and a shrunk box."""
    K = chi.field
    one = K.one() if is_extension(K) else Fraction(1)
    zero = _zero(K)
    n = chi.n
    if n == 0:
        base = [ModBox(1.0, zero, zero, 0)]
        alt1 = [ModBox(1.0, zero, zero, 1)]
        alt2 = [ModBox(1.0, zero, one, 1)]
    else:
        base = [ModBox(1.0, zero, one, n)]
        u = K.shell(0, 1)[-1]
        alt1 = [ModBox(1.0, zero, u, n)]
        alt2 = [ModBox(1.0, zero, one, n + 1)]
    return base, alt1, alt2


# ---------------------------------------------------------------------------
# gamma and eps
# ---------------------------------------------------------------------------


def tate_gamma(chi: MultChar, psi: AddChar, check: bool = True) -> NonArchFactor:
    """gamma(s, chi, psi), certified against the functional-equation oracle.

    The Phi-independence assertion (base box, unit translate, finer box)
    runs at construction unless ``check`` is disabled.
    """
    K = chi.field
    q = K.q
    c = conductor_add(psi)
    if chi.is_ramified:
        n = chi.n
        G = gauss_sum(chi, psi)
        const = q ** (n - c) * q ** (-n + Fraction(c, 2)) * G
        fac = NonArchFactor.monomial(q, complex(const), n - c)
    else:
        t = chi.t_full()
        const = q ** Fraction(c, 2) * t ** (-c) * q ** (-c)
        fac = NonArchFactor(
            q,
            c=complex(const),
            m=-c,
            num=((t, 1, 0j),),
            den=((1 / t, -1, 1 + 0j),),
        )
    if check:
        _certify_gamma(fac, chi, psi)
    return fac


def _certify_gamma(fac: NonArchFactor, chi: MultChar, psi: AddChar) -> None:
    base, alt1, alt2 = _default_test_functions(chi, psi)
    for s in _CHECK_GRID:
        want = fac.eval(s)
        for pieces in (base, alt1, alt2):
            got = fe_ratio(chi, psi, pieces, s)
            dev = abs(got - want) / max(abs(want), 1e-30)
            if dev > PHI_INDEPENDENCE_TOL:
                raise ConsistencyError(
                    f"gamma oracle mismatch: dev={dev:.3e} at s={s} (Phi={pieces})"
                )


def tate_eps(chi: MultChar, psi: AddChar, check: bool = True) -> NonArchFactor:
    """eps = gamma * L(s,chi) / L(1-s,chi^{-1}); structurally a monomial."""
    gamma = tate_gamma(chi, psi, check=check)
    eps = gamma * tate_L(chi) / tate_L_dual_reflected(chi)
    try:
        eps.as_monomial()
    except ValueError as exc:
        raise ConsistencyError(f"eps is not a monomial: {exc}") from exc
    return eps


def langlands_constant(E, psi: AddChar) -> complex:
    """lambda_{E/F}(psi) := eps(1/2, omega_{E/F}, psi).

    The non-archimedean convention is pinned so that lambda_{C/R}(psi^a) =
    sgn(a) i is the archimedean specialization (see :mod:`asailocal.arch`).
    """
    from .characters import omega_quadratic

    omega = omega_quadratic(E)
    return tate_eps(omega, psi).eval(0.5)


# archimedean Tate factors live with the rest of the R/C machinery; they are
# re-exported here because they are the same atomic building block
def l_eps_arch_real(chi, a: float = 1.0):
    from .arch import l_eps_arch_real as impl

    return impl(chi, a)


def l_eps_arch_complex(chi, a: float = 1.0):
    from .arch import l_eps_arch_complex as impl

    return impl(chi, a)


def langlands_constant_arch(a: float = 1.0) -> complex:
    from .arch import lambda_C_R

    return lambda_C_R(a)
