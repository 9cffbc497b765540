"""Multicopy singlet-projection observables.

A pairing selects disjoint qubit pairs across up to four identical copies of
a two-qubit state; its observable g is the expectation of the tensor product
of singlet projectors over those pairs.  Qubit q (1-based) belongs to copy
ceil(q/2): odd q is subsystem 1, even q is subsystem 2.

The module evaluates any pairing exactly (einsum contraction plus a dense
kron-built oracle), exposes the canonical 13-observable table, the
cyclic-equivalence rule relating pairings shifted by whole copies, the
correlation-matrix moments in terms of g, and the Cayley-Hamilton closure
that expresses the four-pair ring observable through the 13-element set.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, fields
from functools import reduce

import numpy as np

from .states import bell


class InvalidPairingError(ValueError):
    pass


@dataclass(frozen=True)
class Pairing:
    """Disjoint ordered qubit-index pairs over 2*n_copies qubits."""

    n_copies: int
    pairs: tuple

    def __post_init__(self):
        if self.n_copies not in (1, 2, 3, 4):
            raise InvalidPairingError(f"n_copies must be 1..4, got {self.n_copies}")
        norm = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", norm)
        seen = set()
        n = 2 * self.n_copies
        for a, b in norm:
            for q in (a, b):
                if not 1 <= q <= n:
                    raise InvalidPairingError(f"qubit index {q} outside 1..{n}")
                if q in seen:
                    raise InvalidPairingError(f"qubit index {q} used twice")
                seen.add(q)
            if a == b:
                raise InvalidPairingError(f"degenerate pair ({a}, {b})")

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    def shifted(self, shift: int) -> "Pairing":
        """Shift every qubit index by `shift` modulo 2*n_copies (into 1..N)."""
        n = 2 * self.n_copies
        return Pairing(self.n_copies,
                       tuple(((a - 1 + shift) % n + 1, (b - 1 + shift) % n + 1)
                             for a, b in self.pairs))


def cyclically_equivalent(p1: Pairing, p2: Pairing) -> bool:
    """True iff some even shift of whole copies maps p1 onto p2."""
    if p1.n_copies != p2.n_copies:
        return False
    target = frozenset(frozenset(p) for p in p2.pairs)
    for k in range(1, p1.n_copies + 1):
        shifted = p1.shifted(2 * k)
        if frozenset(frozenset(p) for p in shifted.pairs) == target:
            return True
    return False


# The canonical minimal observable set, in fixed emission order.
PAIRINGS = {
    "g12": Pairing(1, ((1, 2),)),
    "g13": Pairing(2, ((1, 3),)),
    "g14": Pairing(2, ((1, 4),)),
    "g24": Pairing(2, ((2, 4),)),
    "g13_24": Pairing(2, ((1, 3), (2, 4))),
    "g13_46": Pairing(3, ((1, 3), (4, 6))),
    "g14_23": Pairing(2, ((1, 4), (2, 3))),
    "g14_36": Pairing(3, ((1, 4), (3, 6))),
    "g14_36_52": Pairing(3, ((1, 4), (3, 6), (2, 5))),
    "g13_46_57": Pairing(4, ((1, 3), (4, 6), (5, 7))),
    "g24_35_68": Pairing(4, ((2, 4), (3, 5), (6, 8))),
    "g13_46_57_28": Pairing(4, ((1, 3), (4, 6), (5, 7), (2, 8))),
    "g14_36_58": Pairing(4, ((1, 4), (3, 6), (5, 8))),
}

G_FIELDS = tuple(PAIRINGS)


@dataclass(frozen=True)
class GTable:
    """The 13 multicopy singlet-projection expectations."""

    g12: float
    g13: float
    g14: float
    g24: float
    g13_24: float
    g13_46: float
    g14_23: float
    g14_36: float
    g14_36_52: float
    g13_46_57: float
    g24_35_68: float
    g13_46_57_28: float
    g14_36_58: float

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def __getitem__(self, name: str) -> float:
        return getattr(self, name)


def singlet_projector() -> np.ndarray:
    """|psi-><psi-|; equals (I - SWAP)/2 on two qubits."""
    return bell("psi-")


_SWAP = np.array([[1, 0, 0, 0],
                  [0, 0, 1, 0],
                  [0, 1, 0, 0],
                  [0, 0, 0, 1]], dtype=complex)


def _einsum_spec(pairing: Pairing):
    """Einsum subscripts evaluating tr[(x) P_pairs . rho^(x)k].

    Each qubit q carries a row letter x_q and a column letter y_q; unpaired
    qubits share one letter, which traces them out.
    """
    n = 2 * pairing.n_copies
    letters = iter(string.ascii_letters)
    paired = {q for p in pairing.pairs for q in p}
    x = {}
    y = {}
    for q in range(1, n + 1):
        if q in paired:
            x[q] = next(letters)
            y[q] = next(letters)
        else:
            x[q] = y[q] = next(letters)
    subs = []
    # one rho factor per copy, indexed rho[y_odd, y_even, x_odd, x_even]
    for j in range(1, pairing.n_copies + 1):
        a, b = 2 * j - 1, 2 * j
        subs.append(y[a] + y[b] + x[a] + x[b])
    # one projector factor per pair, indexed P[x_a, x_b, y_a, y_b]
    for a, b in pairing.pairs:
        subs.append(x[a] + x[b] + y[a] + y[b])
    return ",".join(subs) + "->"


_SPEC_CACHE: dict = {}


def g_exact(rho: np.ndarray, pairing: Pairing) -> float:
    """Exact expectation of the pairing's projector product on rho^(x)k."""
    spec = _SPEC_CACHE.get(pairing)
    if spec is None:
        spec = _einsum_spec(pairing)
        _SPEC_CACHE[pairing] = spec
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    p4 = singlet_projector().reshape(2, 2, 2, 2)
    operands = [r] * pairing.n_copies + [p4] * pairing.n_pairs
    return float(np.einsum(spec, *operands, optimize=True).real)


def _embed(op: np.ndarray, qubits, n: int) -> np.ndarray:
    """Embed a two-qubit operator on the given (0-based) qubits of n qubits."""
    rest = [q for q in range(n) if q not in qubits]
    full = np.kron(op, np.eye(2 ** len(rest), dtype=complex))
    order = list(qubits) + rest
    inv = np.argsort(order)
    t = full.reshape((2,) * (2 * n))
    t = t.transpose(tuple(inv) + tuple(n + i for i in inv))
    return t.reshape(2 ** n, 2 ** n)


def pairing_operator(pairing: Pairing) -> np.ndarray:
    """Dense tensor-product operator of the pairing on all 2k qubits."""
    n = 2 * pairing.n_copies
    p = singlet_projector()
    mats = [_embed(p, [a - 1, b - 1], n) for a, b in pairing.pairs]
    return reduce(np.matmul, mats, np.eye(2 ** n, dtype=complex))


def g_exact_dense(rho: np.ndarray, pairing: Pairing) -> float:
    """Brute-force oracle: build rho^(x)k in full and trace the operator."""
    rho_k = reduce(np.kron, [np.asarray(rho, dtype=complex)] * pairing.n_copies)
    return float(np.trace(pairing_operator(pairing) @ rho_k).real)


def g_table(rho: np.ndarray) -> GTable:
    """Evaluate all 13 canonical observables exactly."""
    return GTable(**{name: g_exact(rho, pairing) for name, pairing in PAIRINGS.items()})


def beta_moments_from_g(g: GTable):
    """(tr beta, tr beta^2, tr beta^3) of the correlation matrix from g."""
    tb1 = 1.0 - 4.0 * g.g12
    tb2 = 1.0 - 8.0 * g.g14 + 16.0 * g.g14_23
    tb3 = 1.0 - 12.0 * g.g14 + 48.0 * g.g14_36 - 64.0 * g.g14_36_52
    return tb1, tb2, tb3


def g_closure_14365872(g: GTable, det_beta: float) -> float:
    """Four-pair ring observable from the 13-set via the Cayley-Hamilton
    identity for tr beta^4."""
    tb1, tb2, tb3 = beta_moments_from_g(g)
    tb4 = tb1 * tb3 - 0.5 * tb2 * (tb1 * tb1 - tb2) + tb1 * det_beta
    return (tb4 - 1.0 + 16.0 * g.g14 - 32.0 * (2.0 * g.g14_36 + g.g14 ** 2)) / 256.0 \
        + g.g14_36_58
