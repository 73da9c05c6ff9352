"""Additive and multiplicative characters of F^x and E^x.

Unit-part data is exact: a multiplicative character stores root-of-unity
angles (Fractions mod 1) on the generators of (O_K/pi^n)^x, and additive
characters evaluate through the p-adic fractional part, so Gauss-sum
identities fail only through genuine bugs, never rounding.  Conductors are
always recomputed by brute force rather than trusted from constructors.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .cyclotomic import Cyc
from .padic import (
    EElement,
    Field,
    PAdicGround,
    PrecisionError,
    QuadExtension,
    is_extension,
)
from .unitgroups import unit_group


def _angle_exp(theta: Fraction) -> complex:
    return cmath.exp(2j * cmath.pi * float(theta % 1))


class Phase:
    """A complex scalar that remembers an exact root-of-unity angle when it has one."""

    __slots__ = ("angle", "_z")

    def __init__(self, angle: Optional[Fraction] = None, z: Optional[complex] = None):
        self.angle = Fraction(angle) % 1 if angle is not None else None
        self._z = complex(z) if z is not None else None

    @staticmethod
    def exact(angle) -> "Phase":
        return Phase(angle=Fraction(angle))

    @staticmethod
    def approx(z: complex) -> "Phase":
        return Phase(z=z)

    @staticmethod
    def one() -> "Phase":
        return Phase(angle=Fraction(0))

    @property
    def is_exact(self) -> bool:
        return self.angle is not None

    def value(self) -> complex:
        if self.angle is not None:
            return _angle_exp(self.angle)
        return self._z

    def cyc(self) -> Cyc:
        if self.angle is None:
            raise ValueError("phase has no exact angle")
        return Cyc.root(self.angle)

    def __mul__(self, other: "Phase") -> "Phase":
        if self.angle is not None and other.angle is not None:
            return Phase(angle=self.angle + other.angle)
        return Phase(z=self.value() * other.value())

    def __pow__(self, k: int) -> "Phase":
        if self.angle is not None:
            return Phase(angle=self.angle * k)
        return Phase(z=self.value() ** k)

    def inv(self) -> "Phase":
        return self ** (-1)

    def __repr__(self):
        if self.angle is not None:
            return f"Phase(angle={self.angle})"
        return f"Phase(z={self._z})"


# ---------------------------------------------------------------------------
# additive characters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AddChar:
    """psi(x) = e(frac_p(b x)) on F, or e(frac_p(tr(b x))) on E.

    The standard character psi0 (b = 1 on F) has conductor 0; every other
    additive character in scope is a multiplicative shift of it.
    """

    field: Field
    mult: Union[Fraction, int, EElement] = 1

    def _b(self):
        if is_extension(self.field) and not isinstance(self.mult, EElement):
            return self.field.embed(self.mult)
        if not is_extension(self.field):
            return Fraction(self.mult)
        return self.mult

    @property
    def ground(self) -> PAdicGround:
        return self.field.ground if is_extension(self.field) else self.field

    def angle(self, x) -> Fraction:
        """Exact angle in [0,1): psi(x) = e^(2 pi i angle)."""
        b = self._b()
        if is_extension(self.field):
            if not isinstance(x, EElement):
                x = self.field.embed(x)
            arg = (b * x).trace()
        else:
            arg = Fraction(b) * Fraction(x)
        return self.ground.frac_part(arg)

    def value(self, x) -> complex:
        return _angle_exp(self.angle(x))

    def cyc(self, x) -> Cyc:
        return Cyc.root(self.angle(x))

    def __call__(self, x) -> complex:
        return self.value(x)

    def shifted(self, a) -> "AddChar":
        """psi^a, i.e. x -> psi(a x)."""
        b = self._b()
        if is_extension(self.field):
            if not isinstance(a, EElement):
                a = self.field.embed(a)
            return AddChar(self.field, b * a)
        return AddChar(self.field, Fraction(b) * Fraction(a))

    def conductor(self) -> int:
        """Smallest c with psi trivial on pi^c O, verified on shells."""
        return conductor_add(self)

    def to_json(self) -> dict:
        b = self._b()
        if is_extension(self.field):
            return {"field": "E", "mult": [str(b.a), str(b.b)]}
        return {"field": "F", "mult": str(b)}


_CONDUCTOR_CACHE: dict = {}


def conductor_add(psi: AddChar, verify_window: int = 2) -> int:
    """Brute-force conductor of an additive character.

    The formula c = -ord(b) - d(E/F) pins the tail; triviality at v >= c and
    non-triviality at v = c-1 are then checked on shell representatives.
    """
    key = (psi.field, psi._b() if not is_extension(psi.field) else (psi._b().a, psi._b().b))
    if key in _CONDUCTOR_CACHE:
        return _CONDUCTOR_CACHE[key]
    out = _conductor_add_uncached(psi, verify_window)
    _CONDUCTOR_CACHE[key] = out
    return out


def _conductor_add_uncached(psi: AddChar, verify_window: int = 2) -> int:
    K = psi.field
    b = psi._b()
    if is_extension(K):
        c = -K.val(b) - K.different_exponent
    else:
        c = -K.val(b)
    for v in range(c, c + verify_window):
        for x in K.shell(v, 1):
            if psi.angle(x) != 0:
                raise AssertionError("additive conductor formula violated (trivial side)")
    if not any(psi.angle(x) != 0 for x in K.shell(c - 1, 1)):
        raise AssertionError("additive conductor formula violated (nontrivial side)")
    return c


def standard_psi(F: PAdicGround) -> AddChar:
    return AddChar(F, 1)


def psi_to_E(psi: AddChar, E: QuadExtension, xi: Optional[EElement] = None) -> AddChar:
    """psi_xi(x) = psi(tr(xi x)); xi = 1 gives psi o tr."""
    b = Fraction(psi.mult) if not isinstance(psi.mult, EElement) else psi.mult
    mult = E.embed(b) if not isinstance(b, EElement) else b
    if xi is not None:
        mult = mult * xi
    return AddChar(E, mult)


# ---------------------------------------------------------------------------
# multiplicative characters
# ---------------------------------------------------------------------------


class MultChar:
    """chi(x) = t^{ord x} * unit_part(x) * |x|^lam with exact unit-part data.

    ``angles`` are the images (as angles) of the generators of
    (O_K/pi^n)^x, n the minimal conductor.  ``lam`` is kept separate so the
    unitary data stays exact.
    """

    __slots__ = ("field", "n", "angles", "t", "lam")

    def __init__(self, field: Field, n: int, angles, t: Phase, lam=0):
        self.field = field
        self.n = n
        self.angles = tuple(Fraction(a) % 1 for a in angles)
        self.t = t
        self.lam = lam if isinstance(lam, Fraction) else (
            Fraction(lam) if isinstance(lam, int) else complex(lam)
        )
        G = unit_group(field, n)
        if len(self.angles) != len(G.gens):
            raise ValueError("angle vector does not match unit-group generators")

    # -- constructors ---------------------------------------------------------
    @staticmethod
    def from_angles(field: Field, level: int, angles, t: Phase, lam=0) -> "MultChar":
        """Build from data at any level; the conductor is minimized by brute force."""
        raw = MultChar(field, level, angles, t, lam)
        return raw.reduced()

    @staticmethod
    def unramified(field: Field, t: Phase, lam=0) -> "MultChar":
        return MultChar(field, 0, (), t, lam)

    @staticmethod
    def trivial(field: Field) -> "MultChar":
        return MultChar(field, 0, (), Phase.one(), 0)

    # -- conductor --------------------------------------------------------------
    def reduced(self) -> "MultChar":
        """Same character presented at its minimal conductor."""
        n = self.n
        while n >= 1:
            level_gens = self._one_unit_gens_at(n - 1)
            if all(self.unit_angle(g) == 0 for g in level_gens):
                n -= 1
            else:
                break
        if n == self.n:
            return self
        G = unit_group(self.field, n)
        angles = tuple(self.unit_angle(g) for g in G.gens)
        return MultChar(self.field, n, angles, self.t, self.lam)

    def _one_unit_gens_at(self, m: int):
        """Generators of (1+pi^m O)/(1+pi^n O) inside the level-n group."""
        if m == 0:
            return [g for g in unit_group(self.field, self.n).gens]
        return unit_group(self.field, self.n).one_unit_gens(m)

    @property
    def conductor(self) -> int:
        return self.n

    @property
    def is_ramified(self) -> bool:
        return self.n >= 1

    # -- evaluation ----------------------------------------------------------------
    def unit_angle(self, u) -> Fraction:
        """Angle of the unit-part character at a valuation-0 element."""
        if self.n == 0:
            return Fraction(0)
        G = unit_group(self.field, self.n)
        exps = G.dlog(u)
        ang = Fraction(0)
        for e, a in zip(exps, self.angles):
            ang += e * a
        return ang % 1

    def _split(self, x):
        K = self.field
        if is_extension(K):
            if not isinstance(x, EElement):
                x = K.embed(x)
            v = K.val(x)
            u = K.unit_part(x)
        else:
            x = Fraction(x)
            v = K.val(x)
            u = K.unit_part(x)
        return v, u

    def value(self, x) -> complex:
        v, u = self._split(x)
        out = self.t.value() ** v * _angle_exp(self.unit_angle(u))
        lam = self.lam
        if lam != 0:
            out *= self.field.q ** complex(-lam * v)
        return out

    __call__ = value

    def angle_at(self, x) -> Fraction:
        """Exact angle, defined when t is exact and lam = 0 (or x is a unit)."""
        v, u = self._split(x)
        if not self.t.is_exact:
            raise ValueError("character has no exact t")
        if self.lam != 0 and v != 0:
            raise ValueError("twist exponent breaks exactness")
        return (self.t.angle * v + self.unit_angle(u)) % 1

    def cyc(self, x) -> Cyc:
        """Exact value as a cyclotomic number (integer lam only)."""
        v, u = self._split(x)
        if not self.t.is_exact:
            raise ValueError("character has no exact t")
        lam = self.lam
        scale = Fraction(1)
        if lam != 0:
            if not isinstance(lam, Fraction) or lam.denominator != 1:
                raise ValueError("twist exponent breaks exactness")
            scale = Fraction(self.field.q) ** int(-lam * v)
        return Cyc.root(self.t.angle * v + self.unit_angle(u), scale)

    def t_full(self) -> complex:
        """Value at the uniformizer, twist included."""
        return self.t.value() * self.field.q ** complex(-self.lam)

    # -- algebra ----------------------------------------------------------------
    def mul(self, other: "MultChar") -> "MultChar":
        if is_extension(self.field) != is_extension(other.field):
            raise ValueError("characters live on different fields")
        n = max(self.n, other.n)
        G = unit_group(self.field, n)
        angles = tuple(
            (self.unit_angle(g) + other.unit_angle(g)) % 1 for g in G.gens
        )
        lam = _add_lam(self.lam, other.lam)
        return MultChar.from_angles(self.field, n, angles, self.t * other.t, lam)

    __mul__ = mul

    def inv(self) -> "MultChar":
        angles = tuple((-a) % 1 for a in self.angles)
        lam = -self.lam
        return MultChar(self.field, self.n, angles, self.t.inv(), lam)

    def twist_by_norm_power(self, w) -> "MultChar":
        """chi * |.|^w."""
        return MultChar(self.field, self.n, self.angles, self.t, _add_lam(self.lam, w))

    def order_divides(self, k: int) -> bool:
        if self.lam != 0:
            return False
        if any((a * k) % 1 != 0 for a in self.angles):
            return False
        if not self.t.is_exact:
            return abs(self.t.value() ** k - 1) < 1e-12
        return (self.t.angle * k) % 1 == 0

    def is_trivial(self, tol: float = 0.0) -> bool:
        if self.n != 0 or self.lam != 0:
            return False
        if self.t.is_exact:
            return self.t.angle % 1 == 0
        return abs(self.t.value() - 1) <= tol

    def to_json(self) -> dict:
        t = {"angle": str(self.t.angle)} if self.t.is_exact else [
            self.t.value().real,
            self.t.value().imag,
        ]
        lam = (
            str(self.lam)
            if isinstance(self.lam, Fraction)
            else [complex(self.lam).real, complex(self.lam).imag]
        )
        return {
            "field": "E" if is_extension(self.field) else "F",
            "conductor": self.n,
            "unit_part": [str(a) for a in self.angles],
            "t": t,
            "lambda": lam,
        }

    def __repr__(self):
        tag = "E" if is_extension(self.field) else "F"
        return f"MultChar({tag}, n={self.n}, angles={self.angles}, t={self.t}, lam={self.lam})"


def _add_lam(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a + b
    return complex(a) + complex(b)


def mult_char_from_json(obj: dict, field: Field) -> MultChar:
    t = obj.get("t", 1)
    if isinstance(t, dict):
        phase = Phase.exact(Fraction(t["angle"]))
    elif isinstance(t, (list, tuple)):
        phase = Phase.approx(complex(t[0], t[1]))
    else:
        phase = Phase.approx(complex(t))
    lam = obj.get("lambda", 0)
    if isinstance(lam, str):
        lam = Fraction(lam)
    elif isinstance(lam, (list, tuple)):
        lam = complex(lam[0], lam[1])
        if lam.imag == 0 and lam.real == int(lam.real):
            lam = Fraction(int(lam.real))
    n = int(obj.get("conductor", 0))
    angles = [Fraction(a) for a in obj.get("unit_part", [])]
    return MultChar.from_angles(field, n, angles, phase, lam)


# ---------------------------------------------------------------------------
# restriction / extension / Galois operations
# ---------------------------------------------------------------------------


def restrict_to_F(chi: MultChar) -> MultChar:
    """chi|_{F^x} with the conductor recomputed by brute force."""
    E: QuadExtension = chi.field
    if not is_extension(E):
        raise ValueError("restriction needs a character of E^x")
    F = E.ground
    level = max((chi.n + E.e - 1) // E.e, 0)
    G = unit_group(F, level)
    angles = tuple(chi.unit_angle(E.embed(g)) for g in G.gens)
    # chi(p) including the unit part of p / pi^e
    pi = E.uniformizer()
    u_p = E.embed(F.p) * (pi ** E.e).inv()
    t = (chi.t ** E.e) * Phase.exact(chi.unit_angle(u_p))
    lam = chi.lam * 2
    return MultChar.from_angles(F, level, angles, t, lam)


def sigma_conjugate(chi: MultChar) -> MultChar:
    """chi^sigma(x) = chi(x^sigma)."""
    E: QuadExtension = chi.field
    if not is_extension(E):
        raise ValueError("sigma conjugation needs a character of E^x")
    G = unit_group(E, chi.n)
    angles = tuple(chi.unit_angle(g.conj()) for g in G.gens)
    pi = E.uniformizer()
    u = pi.conj() * pi.inv()
    if E.val(u) != 0:
        raise AssertionError("sigma(pi)/pi must be a unit")
    t = chi.t * Phase.exact(chi.unit_angle(u))
    out = MultChar(E, chi.n, angles, t, chi.lam).reduced()
    if out.n != chi.n:
        raise AssertionError("sigma conjugation must preserve the conductor")
    return out


def compose_with_norm(chi: MultChar, E: QuadExtension) -> MultChar:
    """chi o N_{E/F} as a character of E^x."""
    if is_extension(chi.field):
        raise ValueError("compose_with_norm needs a character of F^x")
    F = chi.field
    level = E.e * chi.n
    G = unit_group(E, level)
    angles = tuple(chi.unit_angle(g.norm()) for g in G.gens)
    pi = E.uniformizer()
    npi = pi.norm()
    v = F.val(npi) if npi != 0 else 0
    assert v == 1 if E.e == 2 else v == 2
    t = (chi.t**v) * Phase.exact(chi.unit_angle(F.unit_part(npi)))
    return MultChar.from_angles(E, level, angles, t, chi.lam)


def extend_from_F(chi: MultChar, E: QuadExtension, modulus: Optional[int] = None) -> MultChar:
    """Some character of E^x restricting to chi on F^x.

    The finite-group constraint is solved for the lexicographically smallest
    exponent vector; the uniformizer value takes the smallest consistent
    angle.  Factor definitions downstream must not depend on the choice, and
    that independence is a property test, not an assumption here.
    """
    if is_extension(chi.field):
        raise ValueError("extend_from_F needs a character of F^x")
    F = chi.field
    M = modulus if modulus is not None else E.e * chi.n + 2
    if M < chi.n + 2:
        raise ValueError("modulus too small for a faithful extension")
    G = unit_group(E, M)
    MF = (M + E.e - 1) // E.e
    GF = unit_group(F, MF)
    orders = list(G.orders)
    # unit constraint: angles on G.gens must restrict to chi on the F-generator
    if GF.gens:
        gF = GF.gens[0]
        exps = G.dlog(E.embed(gF))
        target = chi.unit_angle(gF)
        ks = _solve_congruence(exps, orders, target)
    else:
        ks = [0] * len(orders)
    angles = [Fraction(k, d) for k, d in zip(ks, orders)]
    tmp = MultChar(E, M, angles, Phase.one(), 0)
    # uniformizer constraint: chi~(p) = chi(p) once the twist lam/2 is split off
    pi = E.uniformizer()
    u_p = E.embed(F.p) * (pi ** E.e).inv()
    resid = tmp.unit_angle(u_p)
    if chi.t.is_exact:
        # solutions form {base + k/e}; take the smallest angle in [0, 1/e)
        base = (chi.t.angle - resid) / E.e
        t = Phase.exact(base % Fraction(1, E.e))
        assert (t.angle * E.e + resid) % 1 == chi.t.angle % 1
    else:
        t = Phase.approx((chi.t.value() * _angle_exp(-resid)) ** (1.0 / E.e))
    lam = chi.lam / 2 if isinstance(chi.lam, Fraction) else complex(chi.lam) / 2
    out = MultChar.from_angles(E, M, angles, t, lam)
    return out


def _solve_congruence(exps, orders, target: Fraction) -> list[int]:
    """Lexicographically smallest (k_i), k_i in [0, d_i), with
    sum k_i e_i / d_i = target (mod 1)."""
    if not orders:
        if target % 1 != 0:
            raise ValueError("inconsistent character extension")
        return []
    L = 1
    for d in orders:
        L = L * d // _gcd(L, d)
    R = target * L
    if R.denominator != 1:
        raise ValueError("inconsistent character extension (denominator)")
    R = int(R) % L
    cs = [(L // d) * e % L for e, d in zip(exps, orders)]

    def gcd_all(vals):
        g = L
        for v in vals:
            g = _gcd(g, v)
        return g

    ks: list[int] = []
    rem = R
    for i, (c, d) in enumerate(zip(cs, orders)):
        tail_g = gcd_all(cs[i + 1 :]) if i + 1 < len(cs) else L
        found = False
        for k in range(d):
            if (rem - c * k) % _gcd(tail_g, L) == 0:
                ks.append(k)
                rem = (rem - c * k) % L
                found = True
                break
        if not found:
            raise ValueError("inconsistent character extension (no solution)")
    if rem % L != 0:
        raise ValueError("inconsistent character extension (residual)")
    return ks


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def omega_quadratic(E: QuadExtension) -> MultChar:
    """The quadratic character of F^x attached to E/F by class field theory.

    Unramified E gives the unramified order-2 character; ramified E gives the
    Legendre symbol on units with the uniformizer value pinned by
    omega(N(sqrt(d))) = 1.
    """
    F = E.ground
    if E.e == 1:
        return MultChar.unramified(F, Phase.exact(Fraction(1, 2)))
    G = unit_group(F, 1)
    # the generator of (Z/p)^x is a non-residue, so its angle is 1/2
    angles = (Fraction(1, 2),)
    tmp = MultChar(F, 1, angles, Phase.one(), 0)
    n_sqrt_d = E.sqrt_d().norm()  # = -d, valuation 1
    resid = tmp.unit_angle(F.unit_part(n_sqrt_d))
    t = Phase.exact(-resid)
    return MultChar(F, 1, angles, t, 0)
