"""Baseline and cloner-assisted CNOT circuits, plus the closed-form cross-check.

Wiring of the spin-cavity core (shared by both circuits): the control
photon passes HWP1, is split by CPBS1 into two counter-propagating rails
through the cavity (transmitted R enters travelling down, reflected L
travelling up, with the leakage amplitudes swapped), scatters off the
spin, recombines on the same CPBS1, and exits through HWP2.  The target
photon is injected into the same CPBS1/cavity loop by the switches, with a
spin rotation before and after its pass.  This wiring is pinned down by two
gates it must pass: the error-free limit must produce the exact two-branch
CNOT output (correct gate on the spin-down branch, a spurious minus sign on
the control-L terms of the spin-up branch), and with errors the |R1 R2 up>
output coefficient must reduce to the closed form evaluated by
:func:`rr_up_closed_form`.

The optimized circuit clones the control photon up front, reads the spin
out onto the clone after the core, and uses the clone to drive a
conditional sign flip on the control photon's L component: the spin-up
branch L terms are multiplied by :func:`sign_fix_amplitude` and the global
weight picks up the switch/cloner prefactor.  The readout-and-flip chain is
applied at the amplitude level, exactly where its factors appear in the
circuit's output expression (the sign fix lands only on the two spin-up
control-L coefficients).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cavity import CavityCoeffs, CavityParams, cavity_coeffs, interaction_map
from .devices import (
    ClonerConfig,
    CpbsError,
    HwpError,
    SwitchCoeffs,
    hwp_map,
    spin_hadamard,
    switch_amplitude,
)
from .state import (
    JointState,
    apply_mode_map,
    make_state,
    tensor,
    with_weight,
)

SQRT_HALF = math.sqrt(0.5)

P1, P1_DIR = "p1", "p1_dir"
P2, P2_DIR = "p2", "p2_dir"
SPIN = "spin"
CLONE = "clone"

# electron spin prepared as (|up> - |down>)/sqrt(2)
DEFAULT_SPIN_INIT = (SQRT_HALF, -SQRT_HALF)


@dataclass(frozen=True)
class CnotInputs:
    """Product input: control (alpha, beta), target (delta, gamma_amp), spin."""

    alpha: complex
    beta: complex
    delta: complex
    gamma_amp: complex
    spin_init: tuple[complex, complex] = DEFAULT_SPIN_INIT

    def __post_init__(self):
        for name, (x, y) in (
            ("control", (self.alpha, self.beta)),
            ("target", (self.delta, self.gamma_amp)),
            ("spin_init", self.spin_init),
        ):
            n = abs(x) ** 2 + abs(y) ** 2
            if abs(n - 1) > 1e-9:
                raise ValueError(f"{name} amplitudes not normalized: |.|^2 = {n}")

    @classmethod
    def basis(cls, control: str, target: str, spin_init=DEFAULT_SPIN_INIT) -> "CnotInputs":
        amp = {"R": (1.0, 0.0), "L": (0.0, 1.0)}
        a, b = amp[control]
        d, g = amp[target]
        return cls(a, b, d, g, spin_init)


@dataclass(frozen=True)
class DeviceErrorConfig:
    """All component imperfections of the full circuit."""

    xi1: HwpError = HwpError(0.0)
    xi2: HwpError = HwpError(0.0)
    cpbs1: CpbsError = CpbsError()
    cpbs2: CpbsError = CpbsError()
    cpbs3: CpbsError = CpbsError()
    cpbs4: CpbsError = CpbsError()
    sw1: SwitchCoeffs = SwitchCoeffs()
    sw2: SwitchCoeffs = SwitchCoeffs()
    cloner: ClonerConfig = ClonerConfig(1.0)

    @classmethod
    def uniform(
        cls,
        err: float,
        sw1: SwitchCoeffs = SwitchCoeffs(),
        sw2: SwitchCoeffs = SwitchCoeffs(),
        cloner: ClonerConfig = ClonerConfig(1.0),
    ) -> "DeviceErrorConfig":
        """Every wave-plate and CPBS error set to the same value."""
        c = CpbsError(err, err)
        return cls(HwpError(err), HwpError(err), c, c, c, c, sw1, sw2, cloner)


def _coeffs(cavity: CavityParams | CavityCoeffs) -> CavityCoeffs:
    return cavity if isinstance(cavity, CavityCoeffs) else cavity_coeffs(cavity)


def _loop_split_map(err: CpbsError):
    sr, sl = math.sqrt(err.tau_r), math.sqrt(err.tau_l)
    cr, cl = math.sqrt(1 - err.tau_r), math.sqrt(1 - err.tau_l)
    return {
        "R": [(("R", "down"), cr), (("R", "up"), sr)],
        "L": [(("L", "down"), sl), (("L", "up"), cl)],
    }


def _loop_merge_map(err: CpbsError):
    sr, sl = math.sqrt(err.tau_r), math.sqrt(err.tau_l)
    cr, cl = math.sqrt(1 - err.tau_r), math.sqrt(1 - err.tau_l)
    return {
        ("R", "down"): [("R", cr)],
        ("R", "up"): [("R", sr)],
        ("L", "down"): [("L", sl)],
        ("L", "up"): [("L", cl)],
    }


def _cavity_pass(
    state: JointState, photon: str, dir_factor: str, coeffs: CavityCoeffs, err: CpbsError
) -> JointState:
    """One photon through the CPBS-split cavity loop and back out."""
    state = apply_mode_map(state, photon, _loop_split_map(err), out_mode=(photon, dir_factor))
    state = apply_mode_map(state, (photon, dir_factor, SPIN), interaction_map(coeffs))
    state = apply_mode_map(state, (photon, dir_factor), _loop_merge_map(err), out_mode=(photon,))
    return state


def initial_state(inputs: CnotInputs) -> JointState:
    p1 = make_state(P1, [("R", inputs.alpha), ("L", inputs.beta)])
    p2 = make_state(P2, [("R", inputs.delta), ("L", inputs.gamma_amp)])
    spin = make_state(SPIN, [("up", inputs.spin_init[0]), ("down", inputs.spin_init[1])])
    return tensor(tensor(p1, p2), spin)


def baseline_cnot(
    inputs: CnotInputs,
    cavity: CavityParams | CavityCoeffs,
    err: DeviceErrorConfig = DeviceErrorConfig(),
) -> JointState:
    """Spin-cavity CNOT without the sign fix; uses xi1, xi2 and CPBS1 only."""
    coeffs = _coeffs(cavity)
    s = initial_state(inputs)
    s = apply_mode_map(s, P1, hwp_map(err.xi1))
    s = _cavity_pass(s, P1, P1_DIR, coeffs, err.cpbs1)
    s = apply_mode_map(s, P1, hwp_map(err.xi2))
    s = apply_mode_map(s, SPIN, spin_hadamard())
    s = _cavity_pass(s, P2, P2_DIR, coeffs, err.cpbs1)
    s = apply_mode_map(s, SPIN, spin_hadamard())
    if s.norm_sq() > 1 + 1e-9:
        raise AssertionError(f"output norm exceeds 1: {s.norm_sq()}")
    return s


def sign_fix_amplitude(err: DeviceErrorConfig) -> float:
    """Amplitude of the conditional sign flip on the spin-up control-L terms.

    The readout photon survives CPBS4 with sqrt(1-tau_r4) and the flipped
    control component passes the two conditional-phase CPBSs with
    sqrt(1-tau_l2) and sqrt(1-tau_l3); the flip itself contributes the -1.
    """
    return -math.sqrt(
        (1 - err.cpbs2.tau_l) * (1 - err.cpbs3.tau_l) * (1 - err.cpbs4.tau_r)
    )


def cnot_prefactor(err: DeviceErrorConfig) -> float:
    """Global success amplitude of the optimized circuit.

    The control photon is transmitted through both switches, the target is
    reflected by both, and the cloner succeeds with sqrt(F): the product is
    independent of the input state.
    """
    return (
        switch_amplitude(err.sw1, "I1->O2")
        * switch_amplitude(err.sw1, "I2->O2")
        * switch_amplitude(err.sw2, "I1->O2")
        * switch_amplitude(err.sw2, "I1->O1")
        * math.sqrt(err.cloner.fidelity)
    )


def optimized_cnot(
    inputs: CnotInputs,
    cavity: CavityParams | CavityCoeffs,
    err: DeviceErrorConfig = DeviceErrorConfig(),
) -> JointState:
    """Cloner-assisted CNOT: baseline core, switch routing, conditional sign fix."""
    s = baseline_cnot(inputs, cavity, err)
    s = with_weight(s, s.weight * cnot_prefactor(err))
    flip = sign_fix_amplitude(err)
    s = apply_mode_map(
        s,
        (P1, SPIN),
        {
            ("R", "up"): [(("R", "up"), 1.0)],
            ("R", "down"): [(("R", "down"), 1.0)],
            ("L", "up"): [(("L", "up"), flip)],
            ("L", "down"): [(("L", "down"), 1.0)],
        },
    )
    return s


def spin_to_photon_transfer(
    state: JointState, cpbs4: CpbsError, clone: str = CLONE, spin: str = SPIN
) -> JointState:
    """Read the spin out onto the clone photon.

    The clone factor (the readout photon, in the H/V basis) is consumed
    coherently and re-emitted carrying the spin value: spin-up components
    end with the clone present as |L> (transmitted through CPBS4 with
    sqrt(1-tau_r4), then flipped R -> L), spin-down components end with the
    clone absent (their readout photon is discarded at CPBS4).
    """
    if clone not in state.factors:
        raise ValueError(f"clone photon absent: no factor {clone!r}")
    from .devices import _extract_factor_vector

    vec = _extract_factor_vector(state, clone)
    unknown = set(vec) - {"H", "V"}
    if unknown:
        raise ValueError(f"clone photon must be in the H/V basis, found {sorted(unknown)}")
    consume = {v: [("absent", vec.get(v, 0j).conjugate())] for v in ("H", "V")}
    s = apply_mode_map(state, clone, consume)
    readout = {
        ("absent", "up"): [(("L", "up"), math.sqrt(1 - cpbs4.tau_r))],
        ("absent", "down"): [(("absent", "down"), 1.0)],
    }
    return apply_mode_map(s, (clone, spin), readout)


@dataclass(frozen=True)
class CnotAmplitudes:
    """Output coefficients of the optimized circuit, prefactor removed.

    ``up`` and ``down`` order the photon terms as (RR, RL, LL, LR); the
    sign-fix amplitude multiplies only the LL and LR entries of ``up``.
    ``rr_up_closed`` is the independent closed-form value of ``up[0]``;
    ``rr_up_reference`` is the widely-quoted reference variant of the same
    coefficient, kept verbatim for comparison (it carries three apparent
    transcription slips; see ``closed_form_discrepancy``).
    """

    up: tuple[complex, complex, complex, complex]
    down: tuple[complex, complex, complex, complex]
    sign_fix: float
    prefactor: float
    rr_up_closed: complex
    rr_up_reference: complex


_TERM_ORDER = (("R", "R"), ("R", "L"), ("L", "L"), ("L", "R"))


def extract_branch_amplitudes(state: JointState):
    """((RR, RL, LL, LR) on spin-up, same on spin-down), weight folded in."""
    up = tuple(state.weight * state.amplitude((c, t, "up")) for c, t in _TERM_ORDER)
    down = tuple(state.weight * state.amplitude((c, t, "down")) for c, t in _TERM_ORDER)
    return up, down


def rr_up_closed_form(
    inputs: CnotInputs,
    coeffs: CavityCoeffs,
    err: DeviceErrorConfig,
    reference: bool = False,
) -> complex:
    """Closed form of the |R1 R2 up> output coefficient (prefactor removed).

    The control photon's four CPBS1 path amplitudes combine with the sum
    and difference of the hot/cold cavity responses accumulated over the
    two spin-rotation frames; the target photon contributes its own
    loop-output amplitudes per frame.  With ``reference=True`` three
    coefficients are evaluated in their uncorrected variant: the second
    leakage term of ``path_rr_sum`` enters as tau_l instead of
    sqrt(tau_l), and the leakage difference terms flip (r1 - r0) to
    (r1 + r0).  The corrected variant matches the compositional engine to
    machine precision; both are returned in physical normalization (the
    error-free value is alpha*delta/sqrt(2)).
    """
    a, b = inputs.alpha, inputs.beta
    d, g = inputs.delta, inputs.gamma_amp
    xi1, xi2 = err.xi1.xi, err.xi2.xi
    tr, tl = err.cpbs1.tau_r, err.cpbs1.tau_l
    t1, r1, t0, r0 = coeffs.t1, coeffs.r1, coeffs.t0, coeffs.r0

    # control photon after HWP1, split by CPBS1 into the four loop paths
    a_tr = (a + b) * math.sqrt((1 - tr) * (1 - xi1) / 2)  # R transmitted
    a_rr = (a + b) * math.sqrt(tr * (1 - xi1) / 2)        # R leaked to reflect port
    a_rl = (a - b) * math.sqrt((1 - tl) * (1 + xi1) / 2)  # L reflected
    a_tl = (a - b) * math.sqrt(tl * (1 + xi1) / 2)        # L leaked to transmit port

    cr, cl = math.sqrt(1 - tr), math.sqrt(1 - tl)
    sr, sl = math.sqrt(tr), math.sqrt(tl)
    hot, cold = (t0 + t1, r0 + r1), (t0 - t1, r0 - r1)

    # per-path return amplitudes onto R, summed (spin frames combined) ...
    path_tr_sum = cr * hot[0] + cl * hot[1]
    path_rr_sum = sr * hot[0] + (tl if reference else sl) * hot[1]
    path_rl_sum = cr * hot[1] + cl * hot[0]
    path_tl_sum = sr * hot[1] + sl * hot[0]
    # ... and differenced
    path_tr_diff = cr * cold[0] + cl * cold[1]
    path_rl_diff = cr * cold[1] + cl * cold[0]
    if reference:
        path_rr_diff = sr * (t1 - t0) + tl * (r1 + r0)
        path_tl_diff = sr * (r1 + r0) + sl * (t1 - t0)
    else:
        path_rr_diff = sr * (t1 - t0) + sl * (r1 - r0)
        path_tl_diff = sr * (r1 - r0) + sl * (t1 - t0)

    # target photon's loop output onto R, one value per spin frame
    tgt_sum = d * (t1 * tr - t0 * (1 - tr)) + g * (
        r1 * math.sqrt(tr * tl) - r0 * math.sqrt((1 - tr) * (1 - tl))
    )
    tgt_diff = d * (t1 * (1 - tr) - t0 * tr) + g * (
        r1 * math.sqrt((1 - tr) * (1 - tl)) - r0 * math.sqrt(tr * tl)
    )

    bracket = (
        a_rr * path_rr_sum + a_tl * path_tl_sum - a_tr * path_tr_sum - a_rl * path_rl_sum
    ) * tgt_sum + (
        a_rr * path_rr_diff + a_tl * path_tl_diff - a_tr * path_tr_diff - a_rl * path_rl_diff
    ) * tgt_diff
    return math.sqrt(1 - xi2) / 4 * bracket


def output_amplitudes(
    inputs: CnotInputs,
    cavity: CavityParams | CavityCoeffs,
    err: DeviceErrorConfig,
) -> CnotAmplitudes:
    """Compositional output coefficients plus the closed-form cross-check."""
    coeffs = _coeffs(cavity)
    # run with ideal switches/cloner so the coefficients carry no prefactor
    core_err = DeviceErrorConfig(
        xi1=err.xi1, xi2=err.xi2, cpbs1=err.cpbs1, cpbs2=err.cpbs2,
        cpbs3=err.cpbs3, cpbs4=err.cpbs4,
    )
    out = optimized_cnot(inputs, coeffs, core_err)
    up, down = extract_branch_amplitudes(out)
    return CnotAmplitudes(
        up=up,
        down=down,
        sign_fix=sign_fix_amplitude(err),
        prefactor=cnot_prefactor(err),
        rr_up_closed=rr_up_closed_form(inputs, coeffs, err),
        rr_up_reference=rr_up_closed_form(inputs, coeffs, err, reference=True),
    )


def closed_form_discrepancy(
    inputs: CnotInputs, coeffs: CavityCoeffs, err: DeviceErrorConfig
) -> float:
    """|reference - corrected| closed-form value; zero iff CPBS1 is error-free."""
    return abs(
        rr_up_closed_form(inputs, coeffs, err, reference=True)
        - rr_up_closed_form(inputs, coeffs, err, reference=False)
    )
