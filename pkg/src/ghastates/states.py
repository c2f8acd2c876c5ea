"""Coherent-state construction in the truncated Fock basis.

Two families are built here.  The nonlinear family consists of eigenstates
of the system's lowering operator A, with amplitudes z^n / (N_0 N_1...N_{n-1});
the linear family consists of eigenstates of the canonical lowering operator
D, with the usual exponential-weight amplitudes.  For the bounded ladders
(type1, type2, hydrogen) the label z is already the rescaled r e^{i phi}
with r in [0, 1); the raw eigenvalue differs by sqrt(b).

The hydrogen levels are n^2-fold degenerate and are folded into a single
ket per level; that folding weights the effective ladder by n/(n+1) and the
amplitudes by an extra factor n.  The closed-form normalization constants
below belong to exactly these weighted amplitudes.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConditioningWarning,
    DegenerateSpectrumError,
    DimensionMismatchError,
    RadiusOfConvergenceError,
    TailBoundError,
    WrongSystemError,
)
from .spectrum import SpectrumModel, ladder_coefficient

_TAIL = 1e-14
_MAX_DIM = 2000
_NORM_TOL = 1e-12


@dataclass(frozen=True)
class FockState:
    """Normalized coefficient vector over Fock basis slots.

    ``index_offset`` is the presentation label of the first slot (1 for the
    systems whose conventional level labels start at 1); it never affects
    storage or dynamics.
    """

    coeffs: np.ndarray
    index_offset: int
    spectrum_id: str
    kind: str = "gha"

    def __post_init__(self) -> None:
        c = np.ascontiguousarray(self.coeffs, dtype=complex)
        norm = float(np.linalg.norm(c))
        if abs(norm - 1.0) > _NORM_TOL:
            raise DimensionMismatchError(
                f"state vector norm {norm!r} differs from 1 beyond 1e-12")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]


def basis_state(dim: int, n: int = 0, index_offset: int = 0,
                spectrum_id: str = "harmonic") -> FockState:
    c = np.zeros(dim, dtype=complex)
    c[n] = 1.0
    return FockState(c, index_offset, spectrum_id, kind="basis")


# ---------------------------------------------------------------------------
# ladders and convergence

def state_ladder(spec: SpectrumModel, count: int) -> np.ndarray:
    """Effective ladder coefficients the coherent-state recurrence divides by.

    Equal to the algebra's N_n for every system except hydrogen, whose
    degeneracy folding multiplies N_n by (n+1)/(n+2).
    """
    ladder = np.array([ladder_coefficient(spec, n) for n in range(count)])
    if spec.system == "hydrogen":
        n = np.arange(count)
        ladder = ladder * (n + 1) / (n + 2)
    return ladder


def raw_eigenvalue(spec: SpectrumModel, z: complex) -> complex:
    """Map the user-facing label to the lowering-operator eigenvalue.

    The rescaled label of the bounded ladders absorbs sqrt(b); elsewhere
    the label is used as-is.
    """
    if spec.system in ("type1", "type2", "hydrogen"):
        return complex(z) * math.sqrt(spec.b)
    return complex(z)


def convergence_radius(spec: SpectrumModel) -> float:
    """Radius of the coherent-state series in the user-facing label."""
    if spec.system in ("type1", "type2", "hydrogen"):
        return 1.0
    if spec.system == "q_deformed" and spec.q < 1.0:
        # the ladder coefficients saturate at sqrt(1/(1-q))
        return math.sqrt(1.0 / (1.0 - spec.q))
    return math.inf


def _check_label(spec: SpectrumModel, z: complex) -> None:
    radius = convergence_radius(spec)
    if math.isinf(radius):
        return
    r = abs(z)
    if r >= radius:
        raise RadiusOfConvergenceError(
            f"|z| = {r:.6g} is outside the convergence disk "
            f"(radius {radius:.6g}) for system {spec.system!r}")
    if r >= 0.99 * radius:
        warnings.warn(
            f"|z| = {r:.6g} is within 1% of the convergence radius; the "
            "normalization is nearly singular and precision degrades",
            ConditioningWarning, stacklevel=3)


def _amplitudes(ladder: np.ndarray, z: complex, count: int) -> np.ndarray:
    a = np.empty(count, dtype=complex)
    a[0] = 1.0
    for k in range(1, count):
        step = ladder[k - 1]
        if step == 0.0:
            raise DegenerateSpectrumError(
                f"ladder coefficient N_{k - 1} vanishes; the coherent-state "
                "series is not defined for this spectrum")
        a[k] = a[k - 1] * z / step
    return a


def _adaptive_count(spec: SpectrumModel, z: complex, tail: float) -> int:
    """Smallest length whose analytic tail mass stays below ``tail``.

    Uses the geometric majorant |a_{k+1}|^2/|a_k|^2 <= r^2/N_k^2, valid once
    the ratio has started to decrease (the catalog ladders are monotone).
    """
    r2 = abs(z) ** 2
    if r2 == 0.0:
        return 2
    total = 1.0
    term = 1.0
    prev_ratio = math.inf
    for k in range(_MAX_DIM):
        step = ladder_at(spec, k)
        if step == 0.0:
            raise DegenerateSpectrumError(
                f"ladder coefficient N_{k} vanishes below the requested dim")
        ratio = r2 / (step * step)
        if ratio < 1.0 and ratio <= prev_ratio + 1e-15:
            bound = term * ratio / (1.0 - ratio)
            if bound <= tail * total:
                return max(k + 1, 2)
        term *= ratio
        total += term
        prev_ratio = ratio
    raise TailBoundError(
        f"tail bound {tail:g} not reachable within {_MAX_DIM} levels "
        f"for |z| = {abs(z):.6g}")


def ladder_at(spec: SpectrumModel, n: int) -> float:
    """Single effective ladder coefficient (see :func:`state_ladder`)."""
    step = ladder_coefficient(spec, n)
    if spec.system == "hydrogen":
        step *= (n + 1) / (n + 2)
    return step


# ---------------------------------------------------------------------------
# constructors

def gha_coherent_state(spec: SpectrumModel, z: complex,
                       dim: int | None = None, *,
                       tail: float = _TAIL) -> FockState:
    """Eigenstate of the system's lowering operator, as a Fock vector.

    On finite ladders the series stops one slot below the top level and the
    returned vector carries an explicit zero there, so it composes directly
    with the full (n_max + 1)-dimensional representation.  For infinite
    ladders ``dim`` defaults to the smallest truncation whose analytic tail
    mass is below ``tail``; an explicit smaller ``dim`` is an error.
    """
    z = complex(z)
    _check_label(spec, z)
    zr = raw_eigenvalue(spec, z)

    if spec.max_level is not None:
        support = spec.max_level if spec.system == "morse" else spec.max_level + 1
        full = spec.max_level + 1
        if dim is not None and dim != full:
            raise DimensionMismatchError(
                f"finite ladder states live in dim = n_max + 1 = {full}")
        if support < 1:
            raise DegenerateSpectrumError("the ladder has no room for a "
                                          "coherent state below its top level")
        a = np.zeros(full, dtype=complex)
        a[:support] = _amplitudes(state_ladder(spec, max(support - 1, 0)),
                                  zr, support)
    else:
        needed = _adaptive_count(spec, zr, tail)
        if dim is None:
            dim = needed
        elif dim < needed:
            raise TailBoundError(
                f"dim = {dim} leaves more than {tail:g} analytic tail mass "
                f"at |z| = {abs(z):.6g}; need at least {needed}")
        a = _amplitudes(state_ladder(spec, dim - 1), zr, dim)

    return FockState(a / np.linalg.norm(a), spec.index_offset, spec.system,
                     kind="gha")


def linear_coherent_state(z: complex, dim: int | None = None,
                          index_offset: int = 0, *,
                          tail: float = _TAIL) -> FockState:
    """Exponential-weight coherent state; independent of any spectrum."""
    z = complex(z)
    r2 = abs(z) ** 2
    needed = 2
    if r2 > 0:
        term, total = 1.0, 1.0
        for k in range(_MAX_DIM):
            ratio = r2 / (k + 1)
            if ratio < 1.0 and term * ratio / (1.0 - ratio) <= tail * total:
                needed = max(k + 1, 2)
                break
            term *= ratio
            total += term
        else:
            raise TailBoundError(
                f"tail bound {tail:g} not reachable within {_MAX_DIM} levels")
    if dim is None:
        dim = needed
    elif dim < needed:
        raise TailBoundError(
            f"dim = {dim} is too small for |z| = {abs(z):.6g} at tail "
            f"bound {tail:g}; need at least {needed}")
    ladder = np.sqrt(np.arange(1, dim, dtype=float))
    a = _amplitudes(ladder, z, dim)
    return FockState(a / np.linalg.norm(a), index_offset, "linear",
                     kind="linear")


# ---------------------------------------------------------------------------
# closed forms and checks

def closed_form_normalization(spec: SpectrumModel, r: float) -> float:
    """Closed-form normalization constant N(r) of the nonlinear state.

    Defined as the factor multiplying the unnormalized series, i.e. the
    reciprocal of the series norm; the numerically normalized vector must
    reproduce it to 1e-10 relative.
    """
    if r < 0:
        raise RadiusOfConvergenceError("r must be >= 0")
    s = spec.system
    if s in ("type1", "type2", "hydrogen") and r >= 1.0:
        raise RadiusOfConvergenceError(f"r = {r} is outside [0, 1)")
    x = r * r
    if s == "type1":
        return 1.0 - x
    if s == "type2":
        return math.sqrt((1.0 - x) ** 3 / (1.0 + x))
    if s == "hydrogen":
        return _hydrogen_norm(x)
    if s == "morse":
        total = 0.0
        term = 1.0
        for n in range(spec.max_level):
            if n > 0:
                term *= x / (n * (2.0 * spec.p - n))
            total += term
        return 1.0 / math.sqrt(total)
    if s == "harmonic":
        return math.exp(-0.5 * x)
    raise WrongSystemError(
        f"no closed-form normalization for system {s!r}")


def _hydrogen_norm(x: float) -> float:
    """N(r)^2 = x^2 (1-x)^3 / D(x) with x = r^2 and
    D(x) = 2x(1-2x+3x^2) + 2(1-x)^3 log(1-x).

    The two pieces of D cancel to order x^2, so for small x the equivalent
    expansion D(x) = x^2 + (7/3) x^3 + 12 sum_{k>=4} x^k / (k(k-1)(k-2)(k-3))
    is summed instead of the closed form.
    """
    if x == 0.0:
        return 1.0
    if x > 0.1:
        den = 2.0 * x * (1.0 - 2.0 * x + 3.0 * x * x) \
            + 2.0 * (1.0 - x) ** 3 * math.log1p(-x)
        return math.sqrt(x * x * (1.0 - x) ** 3 / den)
    s = 1.0 + (7.0 / 3.0) * x
    term = x * x
    k = 4
    while True:
        contrib = 12.0 * term / (k * (k - 1) * (k - 2) * (k - 3))
        s += contrib
        if contrib < 1e-18 * s:
            break
        term *= x
        k += 1
    return math.sqrt((1.0 - x) ** 3 / s)


def eigenstate_residual(spec: SpectrumModel, state: FockState,
                        z: complex) -> float:
    """|| (Op - z) |state> || for the lowering operator the state targets.

    ``Op`` is the canonical D for linear states and the system's lowering
    operator for nonlinear ones (hydrogen uses its degeneracy-weighted
    ladder).  ``z`` is the same label passed to the constructor.  Finite
    ladders admit only approximate eigenstates; the residual is reported,
    not asserted.
    """
    c = state.coeffs
    d = state.dim
    if state.kind == "linear":
        ladder = np.sqrt(np.arange(1, d, dtype=float))
        zv = complex(z)
    else:
        count = min(d - 1, spec.max_level) if spec.max_level is not None else d - 1
        ladder = np.zeros(d - 1)
        ladder[:count] = state_ladder(spec, count)
        zv = raw_eigenvalue(spec, z)
    lowered = np.zeros(d, dtype=complex)
    lowered[:-1] = ladder * c[1:]
    return float(np.linalg.norm(lowered - zv * c))


def klauder_continuity_check(spec: SpectrumModel, z: complex,
                             z_prime: complex) -> float:
    """|| |z> - |z'> ||, with both states built at a common truncation."""
    a = gha_coherent_state(spec, z)
    b = gha_coherent_state(spec, z_prime)
    dim = max(a.dim, b.dim)
    if a.dim != dim:
        a = gha_coherent_state(spec, z, dim)
    if b.dim != dim:
        b = gha_coherent_state(spec, z_prime, dim)
    return float(np.linalg.norm(a.coeffs - b.coeffs))


def state_to_csv(state: FockState, path) -> None:
    """Write (index, re, im) rows; indices carry the presentation offset."""
    lines = ["index,re,im"]
    for k, c in enumerate(state.coeffs):
        lines.append(f"{k + state.index_offset},{c.real:.12g},{c.imag:.12g}")
    text = "\n".join(lines) + "\n"
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
