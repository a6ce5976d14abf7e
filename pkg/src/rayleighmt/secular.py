"""Secular determinant of the traction-free surface condition.

Each depth mode contributes a column S(p_k) u_k holding the five boundary
flux amplitudes (t21, t22, L21, L22, S2) it generates at the surface.  A
surface wave exists when some combination of the five modes leaves the
surface flux-free, i.e. when the 5x5 secular matrix A is singular.  The
search objective is F = ln |det A|.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ModeFailureError, NotARootError, RayleighError
from .material import MaterialCoefficients
from .modes import ComplexSpeed, Matrix5, mode_vector
from .spectrum import mode_speeds

#: Objective value reported where the determinant is exactly zero.
F_SENTINEL = -1.0e308

#: Largest sigma_min / sigma_max ratio accepted as a secular root.
ROOT_RATIO_TOL = 1e-6


def assemble_Sp(M: MaterialCoefficients, v: ComplexSpeed, p: complex) -> Matrix5:
    """Boundary flux operator S(p) mapping (U1, U2, A1, A2, B) to
    (t21, t22, L21, L22, S2) amplitudes.

    The matrix is intentionally not symmetric in the coupling entries
    (lambda against (lambda+2mu)p, d3 against d1, eps1 against eps2); the
    rows follow the constitutive fluxes through the surface x2 = 0.
    """
    lam, mu = M.lam, M.mu
    e1, e2 = M.eps1, M.eps2
    e12 = M.eps_long
    vc = complex(v)
    vb = vc * M.beta
    mv = M.m * vc
    return np.array([
        [mu * p, mu, p * e2, e2, 0.0],
        [lam, (lam + 2.0 * mu) * p, e1, p * e12, vb],
        [p * e2, e1, M.d2 * p, M.d3, 0.0],
        [e2, p * e12, M.d1, M.d * p, mv],
        [0.0, vb, 0.0, mv, M.k * p],
    ], dtype=complex)


@dataclass(frozen=True, eq=False)
class SecularMatrix:
    """Secular matrix with the mode bases that generated its columns."""

    A: Matrix5
    modes: tuple


def secular_matrix(M: MaterialCoefficients, v: ComplexSpeed) -> SecularMatrix:
    """Assemble the secular matrix at speed v.

    Column k is S(p_k) u_k with u_k the closed-form kernel vector of mode
    k; the common exponential factor of each mode is dropped, so the
    columns are constant vectors.
    """
    roots = mode_speeds(M)
    modes = tuple(mode_vector(M, v, r) for r in roots)
    cols = [assemble_Sp(M, v, mb.p.p) @ mb.u for mb in modes]
    return SecularMatrix(A=np.stack(cols, axis=1), modes=modes)


def det_elimination(A: Matrix5) -> complex:
    """Determinant by Gaussian elimination with partial pivoting.

    The pivot is the largest entry by magnitude in the active column; ties
    break to the lowest row index, which makes the result deterministic.
    """
    a = [[complex(x) for x in row] for row in np.asarray(A)]
    n = len(a)
    det = complex(1.0)
    for col in range(n):
        piv_row = max(range(col, n), key=lambda r: abs(a[r][col]))
        piv = a[piv_row][col]
        if piv == 0.0:
            return complex(0.0)
        if piv_row != col:
            a[col], a[piv_row] = a[piv_row], a[col]
            det = -det
        det *= piv
        for r in range(col + 1, n):
            factor = a[r][col] / piv
            if factor != 0.0:
                row_r, row_c = a[r], a[col]
                for c in range(col + 1, n):
                    row_r[c] -= factor * row_c[c]
    return det


def det_cofactor(A: Matrix5) -> complex:
    """Determinant by cofactor expansion along the first row.

    Exponential in the matrix size; kept as an independent cross-check of
    the elimination determinant.
    """
    a = [[complex(x) for x in row] for row in np.asarray(A)]

    def expand(rows, cols):
        if len(cols) == 1:
            return a[rows[0]][cols[0]]
        first = rows[0]
        rest = rows[1:]
        total = complex(0.0)
        sign = 1.0
        for i, col in enumerate(cols):
            entry = a[first][col]
            if entry != 0.0:
                sub_cols = cols[:i] + cols[i + 1:]
                total += sign * entry * expand(rest, sub_cols)
            sign = -sign
        return total

    n = len(a)
    return expand(tuple(range(n)), tuple(range(n)))


def secular_det(M: MaterialCoefficients, v: ComplexSpeed) -> complex:
    """Determinant of the secular matrix at speed v."""
    return det_elimination(secular_matrix(M, v).A)


def objective_from_det(det: complex) -> float:
    """Log magnitude of a determinant, with a large negative sentinel at 0."""
    mag = abs(det)
    if mag == 0.0:
        return F_SENTINEL
    return math.log(mag)


def objective_F(M: MaterialCoefficients, v_r: float, v_i: float) -> float:
    """Search objective F(v) = ln |det A(v)| at v = v_r - i v_i.

    Raises
    ------
    ModeFailureError
        Wrapping whatever solver error made the objective undefined at this
        speed sample (inadmissible quadrant, non-decaying branch, repeated
        or shared mode speeds, degenerate kernel).
    """
    try:
        v = ComplexSpeed(v_r, v_i)
        det = secular_det(M, v)
    except (RayleighError, ValueError) as exc:
        raise ModeFailureError(v_r, v_i, exc) from exc
    return objective_from_det(det)


@dataclass(frozen=True, eq=False)
class AmplitudeVector:
    """Mode weights, scaled so the largest component is exactly 1."""

    gamma: np.ndarray


def nullspace_amplitude(A: Matrix5, ratio_tol: float = ROOT_RATIO_TOL) -> AmplitudeVector:
    """Smallest singular direction of A, max-normalized.

    Raises
    ------
    NotARootError
        If sigma_min / sigma_max exceeds ``ratio_tol``, i.e. the matrix is
        not numerically singular.
    """
    _, s, vh = np.linalg.svd(A)
    if s[-1] > ratio_tol * s[0]:
        raise NotARootError(
            f"secular matrix is not singular (sigma ratio {s[-1] / s[0]:.3e} "
            f"> {ratio_tol:.1e})"
        )
    gamma = vh[-1].conj()
    gamma = gamma / gamma[int(np.argmax(np.abs(gamma)))]
    return AmplitudeVector(gamma=gamma)


def amplitudes(M: MaterialCoefficients, v: ComplexSpeed,
               ratio_tol: float = ROOT_RATIO_TOL) -> AmplitudeVector:
    """Mode weights of the surface wave at a converged secular root."""
    return nullspace_amplitude(secular_matrix(M, v).A, ratio_tol)


@dataclass(frozen=True, eq=False)
class FieldState:
    """Field and boundary-flux amplitudes at one space-time point."""

    u1: complex
    u2: complex
    tau1: complex
    tau2: complex
    chi: complex
    traction: np.ndarray  # (t21, t22, L21, L22, S2)


def field_eval(M: MaterialCoefficients, v: ComplexSpeed, gamma: AmplitudeVector,
               kappa: float, x1: float, x2: float, time: float) -> FieldState:
    """Evaluate the surface-wave fields at one point.

    The wave is the superposition of the five depth modes with weights
    ``gamma``, each carried by exp(i kappa (x1 - v t + p_k x2)).  The
    returned traction holds the five boundary flux amplitudes; at a
    converged root and x2 = 0 they cancel for every wavenumber kappa.

    Raises
    ------
    DomainError
        If kappa is not positive or x2 is negative (the half-space is
        x2 >= 0).
    """
    if not kappa > 0.0:
        raise DomainError(f"wavenumber must be positive, got {kappa!r}")
    if x2 < 0.0:
        raise DomainError(f"depth must be nonnegative, got {x2!r}")

    sm = secular_matrix(M, v)
    vc = complex(v)
    fields = np.zeros(5, dtype=complex)
    traction = np.zeros(5, dtype=complex)
    for weight, mb, col in zip(gamma.gamma, sm.modes, sm.A.T):
        phase = cmath.exp(1j * kappa * (x1 - vc * time + mb.p.p * x2))
        fields += weight * phase * mb.u
        traction += weight * phase * col
    traction *= 1j * kappa
    return FieldState(
        u1=fields[0], u2=fields[1], tau1=fields[2], tau2=fields[3], chi=fields[4],
        traction=traction,
    )


def boundary_residual(M: MaterialCoefficients, v: ComplexSpeed,
                      gamma: AmplitudeVector, kappa: float,
                      x1: float = 0.0, time: float = 0.0) -> float:
    """Relative size of the surface traction left by a candidate wave.

    Evaluates the five boundary fluxes at x2 = 0 and divides by the scale
    the individual modes contribute, so the result is wavenumber- and
    phase-independent; at a converged secular root it sits at roundoff
    level for every kappa.
    """
    state = field_eval(M, v, gamma, kappa, x1, 0.0, time)
    sm = secular_matrix(M, v)
    phase_mag = abs(cmath.exp(1j * kappa * (x1 - complex(v) * time)))
    scale = kappa * phase_mag * sum(
        abs(weight) * float(np.linalg.norm(col))
        for weight, col in zip(gamma.gamma, sm.A.T)
    )
    return float(np.linalg.norm(state.traction)) / scale
