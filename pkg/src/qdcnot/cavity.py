"""Quantum-dot spin in a double-sided optical microcavity.

At resonance the coupled cavity transmits with a signed coefficient

    t = -2*gamma*kappa / (gamma*(2*kappa + kappa_s) + 4*g^2),   r = 1 + t

and the uncoupled (cold) cavity coefficients t0, r0 are the same
expressions at g = 0.  All rates are quoted in units of the cavity decay
rate kappa.  The photon-spin interaction keeps the spin branch fixed and
flips polarization exactly when it flips propagation direction; hot
transitions scatter with (r1, t1), cold ones with (-t0, -r0).
"""

from __future__ import annotations

from dataclasses import dataclass

from .state import ModeMap


@dataclass(frozen=True)
class CavityParams:
    """Cavity rates; ``kappa`` is the normalization unit (default 1)."""

    g: float
    kappa_s: float
    gamma: float
    kappa: float = 1.0

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        for name in ("g", "kappa_s", "gamma"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative, got {getattr(self, name)}")


@dataclass(frozen=True)
class CavityCoeffs:
    """Magnitudes of the coupled (t1, r1) and uncoupled (t0, r0) response.

    The signed values satisfying r = 1 + t are kept alongside so tests can
    assert the identity without re-deriving signs from magnitudes.
    """

    t1: float
    r1: float
    t0: float
    r0: float
    t_signed: float
    r_signed: float
    t0_signed: float
    r0_signed: float

    @classmethod
    def ideal(cls) -> "CavityCoeffs":
        # perfect spin-dependent routing: hot photons reflect, cold transmit
        return cls(t1=0.0, r1=1.0, t0=1.0, r0=0.0,
                   t_signed=0.0, r_signed=1.0, t0_signed=-1.0, r0_signed=0.0)


def cavity_coeffs(params: CavityParams) -> CavityCoeffs:
    """Evaluate the resonant response for the given rates."""
    p = params
    denom0 = p.gamma * (2 * p.kappa + p.kappa_s)
    if denom0 <= 0:
        raise ValueError(
            "degenerate cavity parameters: gamma*(2*kappa+kappa_s) must be positive"
        )
    t = -2 * p.gamma * p.kappa / (denom0 + 4 * p.g * p.g)
    r = 1 + t
    t0 = -2 * p.gamma * p.kappa / denom0
    r0 = 1 + t0
    return CavityCoeffs(
        t1=abs(t), r1=abs(r), t0=abs(t0), r0=abs(r0),
        t_signed=t, r_signed=r, t0_signed=t0, r0_signed=r0,
    )


def is_strong_coupling(params: CavityParams) -> bool:
    """Strict threshold g > (kappa_s + kappa)/4."""
    return params.g > (params.kappa_s + params.kappa) / 4


# Interaction table over (polarization, direction, spin).  'down'/'up' name
# the propagation direction through the cavity; the spin branch is never
# flipped, and polarization flips exactly when the direction flips.
def interaction_map(c: CavityCoeffs) -> ModeMap:
    t1, r1, t0, r0 = c.t1, c.r1, c.t0, c.r0
    return {
        ("R", "down", "up"): [(("R", "down", "up"), -t0), (("L", "up", "up"), -r0)],
        ("R", "down", "down"): [(("L", "up", "down"), r1), (("R", "down", "down"), t1)],
        ("R", "up", "up"): [(("L", "down", "up"), r1), (("R", "up", "up"), t1)],
        ("R", "up", "down"): [(("R", "up", "down"), -t0), (("L", "down", "down"), -r0)],
        ("L", "down", "up"): [(("R", "up", "up"), r1), (("L", "down", "up"), t1)],
        ("L", "down", "down"): [(("L", "down", "down"), -t0), (("R", "up", "down"), -r0)],
        ("L", "up", "up"): [(("L", "up", "up"), -t0), (("R", "down", "up"), -r0)],
        ("L", "up", "down"): [(("R", "down", "down"), r1), (("L", "up", "down"), t1)],
    }


def qd_interact(
    c: CavityCoeffs, pol: str, direction: str, spin: str
) -> list[tuple[tuple[str, str, str], complex]]:
    """Scatter a single photon basis ket off the spin-cavity unit."""
    if direction not in ("down", "up"):
        raise ValueError(f"photon direction must be 'down' or 'up', got {direction!r}")
    key = (pol, direction, spin)
    table = interaction_map(c)
    if key not in table:
        raise ValueError(f"no interaction rule for {key!r}")
    return [(out, complex(amp)) for out, amp in table[key]]
