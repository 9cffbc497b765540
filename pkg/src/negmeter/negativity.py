"""Negativity from the quartic characteristic equation and the
determinant-based universal entanglement witness.

The quartic 3 N^4 + 6 N^3 + a2 N^2 + a1 N + a0 = 0 has the negativity as its
only positive root for a valid state.  The coefficients are available from
the moments of the partially transposed state or, equivalently, from the
multicopy observable table; the witness needs only a0 and is computable from
an 8-element subset of the observables.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .multicopy import GTable
from .states import PTMoments

TOL_ROOT = 1e-6
TOL_IMAG = 1e-9


class AmbiguousRootsError(ValueError):
    """Noisy coefficients produced more than one positive real root."""

    def __init__(self, roots):
        self.roots = sorted(roots)
        super().__init__(f"multiple positive real roots: {self.roots}")


@dataclass(frozen=True)
class QuarticCoefficients:
    """State-dependent coefficients; a3 = 6 and a4 = 3 are fixed."""

    a0: float
    a1: float
    a2: float

    a3: float = 6.0
    a4: float = 3.0

    def as_dict(self) -> dict:
        return {"a0": self.a0, "a1": self.a1, "a2": self.a2,
                "a3": self.a3, "a4": self.a4}


@dataclass(frozen=True)
class WitnessResult:
    det_pt: float
    entangled: bool
    margin: float


def coeffs_from_moments(m: PTMoments, det_pt: float) -> QuarticCoefficients:
    return QuarticCoefficients(
        a0=48.0 * det_pt,
        a1=4.0 * (1.0 - 3.0 * m.pi2 + 2.0 * m.pi3),
        a2=6.0 * (1.0 - m.pi2),
    )


def det_pt_from_moments(m: PTMoments) -> float:
    """Determinant of the partial transpose from its moments."""
    return (1.0 - 6.0 * m.pi4 + 8.0 * m.pi3 + 3.0 * m.pi2 ** 2 - 6.0 * m.pi2) / 24.0


def a0_from_witness_observables(*, g12: float, g14: float, g13_24: float,
                                g14_23: float, g14_36: float, g14_36_52: float,
                                g13_46_57_28: float, g14_36_58: float) -> float:
    """a0 = 48 det(rho^G) from the 8-element witness observable set.

    Deliberately takes only these eight values, so entanglement detection
    cannot silently depend on the three extra observables that are needed
    for the negativity itself.
    """
    return -16.0 * (
        g12 ** 3 + 2.0 * g14_36_52
        + 3.0 * (g13_24 ** 2 - g12 ** 2 * g14 - g12 * g14_23 + g14 * g14_23)
        - 6.0 * (g13_46_57_28 - g12 * g14_36 + g14_36_58)
    )


def coeffs_from_g(g: GTable) -> QuarticCoefficients:
    """All three coefficients from the 11 observables that fix negativity."""
    a0 = a0_from_witness_observables(
        g12=g.g12, g14=g.g14, g13_24=g.g13_24, g14_23=g.g14_23,
        g14_36=g.g14_36, g14_36_52=g.g14_36_52,
        g13_46_57_28=g.g13_46_57_28, g14_36_58=g.g14_36_58)
    a1 = 24.0 * (g.g12 ** 2 - g.g14_23 - g.g13_24
                 + 2.0 * (g.g13_46 - g.g12 * g.g14 + g.g14_36)) \
        - 32.0 * (g.g12 ** 3 - 3.0 * g.g12 * g.g14_23 + 2.0 * g.g14_36_52)
    a2 = 12.0 * (g.g13 - 2.0 * g.g13_24 + g.g24)
    return QuarticCoefficients(a0=a0, a1=a1, a2=a2)


def _cbrt(z: complex) -> complex:
    if z == 0:
        return 0j
    return cmath.exp(cmath.log(z) / 3.0)


def _cubic_roots(b: float, c: float, d: float):
    """Complex roots of U^3 + b U^2 + c U + d via Cardano."""
    p = c - b * b / 3.0
    q = d - b * c / 3.0 + 2.0 * b ** 3 / 27.0
    disc = cmath.sqrt(q * q / 4.0 + p ** 3 / 27.0)
    u = _cbrt(-q / 2.0 + disc)
    if abs(u) < 1e-30:
        u = _cbrt(-q / 2.0 - disc)
    if abs(u) < 1e-30:
        return [-b / 3.0] * 3
    w = complex(-0.5, 0.8660254037844386)  # primitive cube root of unity
    roots = []
    for k in range(3):
        uk = u * w ** k
        roots.append(uk - p / (3.0 * uk) - b / 3.0)
    return roots


def quartic_roots(c: QuarticCoefficients):
    """The four complex roots of the negativity quartic.

    Closed form: divide by the leading coefficient, depress, factor into two
    quadratics via the resolvent cubic, then polish each root with a few
    Newton steps on the original quartic.
    """
    b2 = c.a2 / 3.0
    b1 = c.a1 / 3.0
    b0 = c.a0 / 3.0
    # depress with N = y - 1/2 (b3 = 2)
    p = b2 - 1.5
    q = b1 - b2 + 1.0
    r = b0 - b1 / 2.0 + b2 / 4.0 - 3.0 / 16.0

    if abs(q) < 1e-14:
        # biquadratic in y
        disc = cmath.sqrt(p * p / 4.0 - r)
        ys = []
        for z in (-p / 2.0 + disc, -p / 2.0 - disc):
            s = cmath.sqrt(z)
            ys.extend((s, -s))
    else:
        # (y^2+uy+v)(y^2-uy+w) with U = u^2 a root of the resolvent cubic
        cands = _cubic_roots(2.0 * p, p * p - 4.0 * r, -q * q)
        big = max(cands, key=abs)
        u = cmath.sqrt(big)
        v = (p + big - q / u) / 2.0
        w = (p + big + q / u) / 2.0
        ys = []
        for uu, vv in ((u, v), (-u, w)):
            disc = cmath.sqrt(uu * uu - 4.0 * vv)
            ys.extend(((-uu + disc) / 2.0, (-uu - disc) / 2.0))

    roots = [y - 0.5 for y in ys]

    def poly(x):
        return (((3.0 * x + 6.0) * x + c.a2) * x + c.a1) * x + c.a0

    def dpoly(x):
        return ((12.0 * x + 18.0) * x + 2.0 * c.a2) * x + c.a1

    polished = []
    for x in roots:
        for _ in range(8):
            d = dpoly(x)
            if abs(d) < 1e-14:
                break
            step = poly(x) / d
            x = x - step
            if abs(step) < 1e-15:
                break
        polished.append(x)
    return polished


def positive_real_roots(c: QuarticCoefficients, tol_imag: float = TOL_IMAG,
                        tol_root: float = TOL_ROOT):
    """Ascending real parts of roots that are positive and (near-)real."""
    return sorted(r.real for r in quartic_roots(c)
                  if abs(r.imag) < tol_imag and r.real > tol_root)


def solve_negativity(c: QuarticCoefficients, tol_root: float = TOL_ROOT) -> float:
    """Unique positive root of the quartic, clamped to [0, 1].

    Returns 0 when no positive real root exists (separable state).  Raises
    :class:`AmbiguousRootsError` when several distinct positive roots
    survive, which can only happen for noisy coefficient estimates; callers
    working with sampled data resolve that case via
    :func:`solve_negativity_noisy`.
    """
    pos = positive_real_roots(c, tol_root=tol_root)
    if not pos:
        return 0.0
    if pos[-1] - pos[0] > tol_root:
        raise AmbiguousRootsError(pos)
    return min(1.0, max(0.0, pos[-1]))


def solve_negativity_noisy(c: QuarticCoefficients, tol: float = 1e-9) -> float:
    """Root selection for sampled coefficients.

    Several positive roots: take the largest (upper-bounding estimator).
    No positive root while a0 < 0 (entanglement certified): nudge a0 up by
    ``tol`` and take the smallest positive root that appears.
    """
    try:
        n = solve_negativity(c)
    except AmbiguousRootsError as err:
        return min(1.0, max(0.0, err.roots[-1]))
    if n == 0.0 and c.a0 < 0.0:
        nudged = QuarticCoefficients(a0=c.a0 + tol, a1=c.a1, a2=c.a2)
        pos = positive_real_roots(nudged)
        if pos:
            return min(1.0, max(0.0, pos[0]))
    return n


def witness(det_pt: float, tol_witness: float = 0.0) -> WitnessResult:
    """Peres-Horodecki verdict: entangled iff det(rho^G) < -tol."""
    return WitnessResult(det_pt=det_pt,
                         entangled=det_pt < -tol_witness,
                         margin=abs(det_pt))


def witness_from_g(g: GTable, tol_witness: float = 0.0) -> WitnessResult:
    a0 = a0_from_witness_observables(
        g12=g.g12, g14=g.g14, g13_24=g.g13_24, g14_23=g.g14_23,
        g14_36=g.g14_36, g14_36_52=g.g14_36_52,
        g13_46_57_28=g.g13_46_57_28, g14_36_58=g.g14_36_58)
    return witness(a0 / 48.0, tol_witness)


def witness_from_moments(m: PTMoments, tol_witness: float = 0.0) -> WitnessResult:
    return witness(det_pt_from_moments(m), tol_witness)
