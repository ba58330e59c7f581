"""Angle schedules for the Trotterized partial anneal, plus exact rational
arithmetic for the T-period of the energy landscape.

The depth-p schedule at anneal time T with normalized diagonal coefficient
c1_hat is the linear ramp

    beta_k  = (tau/p) * (1 - k*c1_hat/p)
    gamma_k = (tau/p) * (k*c1_hat/p),      tau = c1_hat * T,  k = 1..p,

so beta_k + gamma_k = tau/p at every layer. The energy as a function of T
is periodic; a (not necessarily minimal) period is the LCM of the
per-unitary periods rho0/beta_hat_k and rho1/gamma_hat_k, where the hatted
values are the T = 1 angles. That LCM is computed exactly over rational
multiples of pi.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class Schedule:
    p: int
    T: float
    tau: float
    betas: np.ndarray
    gammas: np.ndarray

    @property
    def dt(self):
        return self.tau / self.p


def make_schedule(p: int, T: float, c1_hat: float) -> Schedule:
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if not (0 < c1_hat <= 1):
        raise ValueError(f"c1_hat must be in (0, 1], got {c1_hat}")
    # negative T is allowed: it negates every angle, which leaves energies
    # unchanged and is exercised by the negation-symmetry checks
    tau = c1_hat * T
    k = np.arange(1, p + 1, dtype=np.float64)
    betas = (tau / p) * (1.0 - k * c1_hat / p)
    gammas = (tau / p) * (k * c1_hat / p)
    betas.setflags(write=False)
    gammas.setflags(write=False)
    return Schedule(p=p, T=float(T), tau=float(tau), betas=betas, gammas=gammas)


class RationalAngle:
    """An exact rational multiple of pi, kept symbolic until simulation."""

    __slots__ = ("frac",)

    def __init__(self, num, den=1):
        self.frac = Fraction(num, den)
        if self.frac.denominator <= 0:  # Fraction normalizes; defensive
            raise ValueError("denominator must be positive")

    @property
    def num(self):
        return self.frac.numerator

    @property
    def den(self):
        return self.frac.denominator

    def __float__(self):
        return float(self.frac) * math.pi

    def __eq__(self, other):
        return isinstance(other, RationalAngle) and self.frac == other.frac

    def __hash__(self):
        return hash(("RationalAngle", self.frac))

    def __repr__(self):
        return f"RationalAngle({self.num}/{self.den} * pi)"

    def __str__(self):
        return f"{self.num}/{self.den}"


def default_rho0() -> RationalAngle:
    """Period of the transverse-field mixer unitary in beta: pi/2.

    Shifting any beta_k by pi/2 multiplies the state by a global spin-flip
    string times a phase; the flip commutes with every ZZ phase layer and
    fixes the |-> product state, so the energy is unchanged.
    """
    return RationalAngle(1, 2)


def default_rho1(J2: Fraction) -> RationalAngle:
    """Period of the torus phase unitary in gamma for J1 = 1, J2 = a/b.

    Returns b * (pi/2). For integer weights (b = 1) the conservative 2*pi
    is equally valid since any multiple of a period is a period.
    """
    J2 = Fraction(J2)
    return RationalAngle(J2.denominator, 2)


def _lcm_fractions(values) -> Fraction:
    """LCM over positive fractions a_i/b_i = lcm(a_i) / gcd(b_i)."""
    nums = [abs(v.numerator) for v in values]
    dens = [v.denominator for v in values]
    return Fraction(math.lcm(*nums), math.gcd(*dens))


def period(p: int, c1_hat, rho0: RationalAngle, rho1: RationalAngle):
    """Energy period in T as an exact rational multiple of pi.

    c1_hat must be an exact rational (Fraction or int/str convertible);
    returns None ("period unavailable") when it is not, since a floating
    approximation of the period would silently break periodicity.
    Coefficients that are exactly zero generate the identity for every T
    and impose no constraint, so they are skipped.
    """
    if isinstance(c1_hat, float) and not c1_hat.is_integer():
        # a bare float carries no exact rational intent (e.g. irrational Bx)
        return None
    try:
        c1 = Fraction(c1_hat)
    except (TypeError, ValueError):
        return None
    if not (0 < c1 <= 1):
        raise ValueError(f"c1_hat must be in (0, 1], got {c1}")
    per_unitary = []
    for k in range(1, p + 1):
        beta_hat = (c1 / p) * (1 - Fraction(k) * c1 / p)
        gamma_hat = (c1 / p) * (Fraction(k) * c1 / p)
        if beta_hat != 0:
            per_unitary.append(rho0.frac / beta_hat)
        if gamma_hat != 0:
            per_unitary.append(rho1.frac / gamma_hat)
    return RationalAngle(_lcm_fractions(per_unitary))


def mirror_point(T: float, rho: float) -> float:
    """Reflection rho - T; the energy satisfies E_p(T) = E_p(rho - T)."""
    if not (0 <= T <= rho):
        raise ValueError(f"T={T} outside [0, {rho}]")
    return rho - T
