"""The nine local-unitary invariants that determine two-qubit negativity.

Each invariant is computed two independent ways: directly from the Pauli
decomposition (Bloch vectors and correlation matrix) and from the table of
multicopy singlet-projection expectations.  Agreement of the two routes is
the central identity this package is built around.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .multicopy import GTable, beta_moments_from_g
from .states import PauliDecomposition, PTMoments


@dataclass(frozen=True)
class InvariantSet:
    i1: float
    i2: float
    i3: float
    i4: float
    i5: float
    i7: float
    i8: float
    i12: float
    i14: float

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, f.name) for f in fields(self)])


@dataclass(frozen=True)
class XCombos:
    """The three invariant combinations the moments are built from."""

    x1: float
    x2: float
    x3: float


def levi_civita() -> np.ndarray:
    """The rank-3 antisymmetric symbol as a dense 3x3x3 array."""
    eps = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[i, j, k] = 1.0
        eps[i, k, j] = -1.0
    return eps


def i14_bruteforce(d: PauliDecomposition) -> float:
    """Full 3^6-term contraction with explicit antisymmetric symbols."""
    eps = levi_civita()
    return float(np.einsum("ijk,lmn,i,l,jm,kn", eps, eps, d.s, d.p, d.beta, d.beta))


def invariants_from_decomposition(d: PauliDecomposition) -> InvariantSet:
    """Invariants from (beta, s, p); the double antisymmetric symbol in the
    last invariant is expanded through the six-term Kronecker identity."""
    beta, s, p = d.beta, d.s, d.p
    btb = beta.T @ beta
    sp = float(s @ p)
    tb = float(np.trace(beta))
    tb2 = float(np.trace(beta @ beta))
    pbs = float(p @ beta @ s)
    pb2s = float(p @ beta @ beta @ s)
    return InvariantSet(
        i1=float(np.linalg.det(beta)),
        i2=float(np.trace(btb)),
        i3=float(np.trace(btb @ btb)),
        i4=float(s @ s),
        i5=float((s @ beta) @ (s @ beta)),
        i7=float(p @ p),
        i8=float((beta @ p) @ (beta @ p)),
        i12=float(s @ beta @ p),
        # Kronecker expansion: (s.p) tr^2(beta) + 2 p.beta^2.s
        #                      - (s.p) tr(beta^2) - 2 tr(beta) p.beta.s
        i14=sp * tb * tb + 2.0 * pb2s - sp * tb2 - 2.0 * tb * pbs,
    )


def invariants_from_g(g: GTable) -> InvariantSet:
    """Invariants from the 13 multicopy expectations.

    The third invariant tr[(beta^T beta)^2] is evaluated from its expansion
    into products of singlet projections over four copies:

        1 - 8(g13 + g24) + 16(g13^2 + g24^2) + 64 g13_46
          - 128(g13_46_57 + g24_35_68) + 256 g13_46_57_28
    """
    i1 = -8.0 / 3.0 * (
        g.g12 * (g.g12 * (4.0 * g.g12 - 3.0) + 6.0 * (g.g14 - 2.0 * g.g14_23))
        + 3.0 * g.g14_23 - 6.0 * g.g14_36 + 8.0 * g.g14_36_52
    )
    i2 = 1.0 + 16.0 * g.g13_24 - 4.0 * (g.g13 + g.g24)
    i3 = (1.0 - 8.0 * (g.g13 + g.g24) + 16.0 * (g.g13 ** 2 + g.g24 ** 2)
          + 64.0 * g.g13_46 - 128.0 * (g.g13_46_57 + g.g24_35_68)
          + 256.0 * g.g13_46_57_28)
    i4 = 1.0 - 4.0 * g.g13
    i5 = (-4.0 * g.g24 + 32.0 * g.g13_46 - 64.0 * g.g13_46_57
          + (1.0 - 4.0 * g.g13) ** 2)
    i7 = 1.0 - 4.0 * g.g24
    i8 = (-4.0 * g.g13 + 32.0 * g.g13_46 - 64.0 * g.g24_35_68
          + (1.0 - 4.0 * g.g24) ** 2)
    i12 = 1.0 + 16.0 * g.g13_46 - 4.0 * (g.g13 + g.g24)
    i14 = 16.0 * (
        g.g12 ** 2 * (1.0 - 4.0 * g.g14)
        + 2.0 * g.g12 * (4.0 * g.g14_36 - g.g14)
        - g.g14_23 + 4.0 * g.g14 * g.g14_23
        + 2.0 * g.g14_36 - 8.0 * g.g14_36_58
    )
    return InvariantSet(i1=i1, i2=i2, i3=i3, i4=i4, i5=i5, i7=i7, i8=i8,
                        i12=i12, i14=i14)


def det_beta_from_moments(trb1: float, trb2: float, trb3: float) -> float:
    """det beta from its first three power traces."""
    return trb1 ** 3 / 6.0 + trb3 / 3.0 - trb1 * trb2 / 2.0


def det_beta_from_g(g: GTable) -> float:
    return det_beta_from_moments(*beta_moments_from_g(g))


def x_combos(inv: InvariantSet) -> XCombos:
    return XCombos(
        x1=inv.i2 + inv.i4 + inv.i7,
        x2=inv.i1 + inv.i12,
        x3=inv.i2 ** 2 - inv.i3 + 2.0 * (inv.i5 + inv.i8 + inv.i14 + inv.i4 * inv.i7),
    )


def moments_from_invariants(inv: InvariantSet) -> PTMoments:
    """Moments of the partially transposed state from the invariants."""
    x = x_combos(inv)
    return PTMoments(
        pi2=(1.0 + x.x1) / 4.0,
        pi3=(1.0 + 3.0 * x.x1 + 6.0 * x.x2) / 16.0,
        pi4=(1.0 + 6.0 * x.x1 + 24.0 * x.x2 + x.x1 ** 2 + 2.0 * x.x3) / 64.0,
    )
