"""Two-qubit density matrices.

Validation, standard state generators, the partial transpose over the second
qubit, moments of the partially transposed matrix, the Pauli-basis
decomposition, and the eigenvalue-based negativity that serves as the
independent ground truth for everything downstream.

Basis order is |HH>, |HV>, |VH>, |VV> with qubit 1 as the first tensor
factor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

TOL_HERM = 1e-10
TOL_TRACE = 1e-10
TOL_PSD = 1e-10

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

BELL_KINDS = ("psi-", "psi+", "phi+", "phi-")


class StateValidationError(ValueError):
    """A matrix failed density-matrix validation.

    ``violations`` is a list of (name, magnitude) tuples, one per violated
    invariant.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(f"{name} (magnitude {mag:.3e})" for name, mag in self.violations)
        super().__init__(f"invalid density matrix: {msg}")


class NotHermitianError(StateValidationError):
    def __init__(self, magnitude):
        super().__init__([("NotHermitian", magnitude)])


class TraceNotOneError(StateValidationError):
    def __init__(self, magnitude):
        super().__init__([("TraceNotOne", magnitude)])


class NotPositiveError(StateValidationError):
    def __init__(self, magnitude):
        super().__init__([("NotPositive", magnitude)])


class InvalidParameterError(ValueError):
    pass


@dataclass(frozen=True)
class PauliDecomposition:
    """Bloch vectors and correlation matrix of a two-qubit state.

    ``s`` is the Bloch vector of qubit 1, ``p`` of qubit 2 and ``beta`` the
    3x3 real correlation matrix beta_ij = tr[(sigma_i x sigma_j) rho].
    """

    s: np.ndarray
    p: np.ndarray
    beta: np.ndarray


@dataclass(frozen=True)
class PTMoments:
    """Traces of the 2nd, 3rd and 4th power of the partial transpose."""

    pi2: float
    pi3: float
    pi4: float


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def validate(m) -> np.ndarray:
    """Validate a 4x4 complex matrix as a two-qubit density matrix.

    Returns a fresh complex array.  Raises a :class:`StateValidationError`
    subclass naming the violated invariant(s) together with the measured
    violation magnitude.
    """
    arr = np.asarray(m, dtype=complex)
    if arr.shape != (4, 4):
        raise StateValidationError([("BadShape", float(arr.size))])

    violations = []
    herm = float(np.max(np.abs(arr - arr.conj().T)))
    if herm > TOL_HERM:
        violations.append(("NotHermitian", herm))
    tr_err = abs(np.trace(arr) - 1.0)
    if tr_err > TOL_TRACE:
        violations.append(("TraceNotOne", float(tr_err)))
    # Eigenvalues of the Hermitian part; for nearly-Hermitian input this is
    # the relevant PSD check.
    lam_min = float(np.linalg.eigvalsh((arr + arr.conj().T) / 2).min())
    if lam_min < -TOL_PSD:
        violations.append(("NotPositive", -lam_min))

    if len(violations) == 1:
        name, mag = violations[0]
        raise {"NotHermitian": NotHermitianError,
               "TraceNotOne": TraceNotOneError,
               "NotPositive": NotPositiveError}[name](mag)
    if violations:
        raise StateValidationError(violations)
    return arr.copy()


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def bell_ket(kind: str) -> np.ndarray:
    """Maximally entangled basis ket for kind in psi-/psi+/phi+/phi-."""
    inv = 1.0 / np.sqrt(2.0)
    kets = {
        "psi-": np.array([0, inv, -inv, 0], dtype=complex),
        "psi+": np.array([0, inv, inv, 0], dtype=complex),
        "phi+": np.array([inv, 0, 0, inv], dtype=complex),
        "phi-": np.array([inv, 0, 0, -inv], dtype=complex),
    }
    try:
        return kets[kind]
    except KeyError:
        raise InvalidParameterError(
            f"unknown Bell kind {kind!r}; expected one of {BELL_KINDS}") from None


def bell(kind: str) -> np.ndarray:
    """Projector onto one of the four Bell states."""
    k = bell_ket(kind)
    return np.outer(k, k.conj())


def singlet() -> np.ndarray:
    return bell("psi-")


def werner(p: float) -> np.ndarray:
    """Werner state p |psi-><psi-| + (1-p) I/4."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"Werner parameter must be in [0, 1], got {p}")
    return p * singlet() + (1.0 - p) * np.eye(4, dtype=complex) / 4.0


def product(rho_a, rho_b) -> np.ndarray:
    """Product state rho_a x rho_b from two single-qubit density matrices."""
    a = np.asarray(rho_a, dtype=complex)
    b = np.asarray(rho_b, dtype=complex)
    for name, m in (("rho_a", a), ("rho_b", b)):
        if m.shape != (2, 2):
            raise InvalidParameterError(f"{name} must be 2x2")
        if abs(np.trace(m) - 1.0) > 1e-9 or np.max(np.abs(m - m.conj().T)) > 1e-9:
            raise InvalidParameterError(f"{name} is not a single-qubit state")
    return np.kron(a, b)


def haar_unitary(dim: int, seed) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix with the R
    diagonal phase fixed."""
    rng = _rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_local_unitary(seed) -> np.ndarray:
    """U_A x U_B with independent Haar 2x2 factors."""
    rng = _rng(seed)
    return np.kron(haar_unitary(2, rng), haar_unitary(2, rng))


def random_pure(seed) -> np.ndarray:
    """Haar-random two-qubit pure state (first column of a Haar unitary)."""
    u = haar_unitary(4, seed)
    k = u[:, 0]
    return np.outer(k, k.conj())


def random_mixed(seed) -> np.ndarray:
    """Random mixed state induced from a 4x4 Ginibre matrix G via GG^+/tr."""
    rng = _rng(seed)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    m = g @ g.conj().T
    return m / np.trace(m).real


# ---------------------------------------------------------------------------
# Partial transpose, moments, oracle
# ---------------------------------------------------------------------------

def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose over the second qubit: (2i+j, 2k+l) -> (2i+l, 2k+j)."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    return r.transpose(0, 3, 2, 1).reshape(4, 4)


def pt_moments(rho: np.ndarray) -> PTMoments:
    """tr[(rho^G)^n] for n = 2, 3, 4 by matrix powers."""
    g = partial_transpose(rho)
    g2 = g @ g
    return PTMoments(
        pi2=float(np.trace(g2).real),
        pi3=float(np.trace(g2 @ g).real),
        pi4=float(np.trace(g2 @ g2).real),
    )


def pt_eigenvalues(rho: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of the partial transpose."""
    return np.linalg.eigvalsh(partial_transpose(rho))


def negativity_oracle(rho: np.ndarray) -> float:
    """N = 2 max(0, -lambda_min(rho^G)); the independent ground truth."""
    lam_min = float(pt_eigenvalues(rho)[0])
    return 2.0 * max(0.0, -lam_min)


def det_pt_direct(rho: np.ndarray) -> float:
    """Direct determinant of the partial transpose."""
    return float(np.linalg.det(partial_transpose(rho)).real)


# ---------------------------------------------------------------------------
# Pauli decomposition
# ---------------------------------------------------------------------------

def pauli_decompose(rho: np.ndarray) -> PauliDecomposition:
    """Bloch vectors s, p and correlation matrix beta of rho."""
    rho = np.asarray(rho, dtype=complex)
    s = np.array([np.trace(np.kron(sig, SIGMA_0) @ rho).real for sig in PAULIS])
    p = np.array([np.trace(np.kron(SIGMA_0, sig) @ rho).real for sig in PAULIS])
    beta = np.array([
        [np.trace(np.kron(si, sj) @ rho).real for sj in PAULIS]
        for si in PAULIS
    ])
    return PauliDecomposition(s=s, p=p, beta=beta)


def pauli_compose(d: PauliDecomposition) -> np.ndarray:
    """Rebuild rho from its Pauli decomposition (round-trip inverse)."""
    rho = np.eye(4, dtype=complex)
    for i, sig in enumerate(PAULIS):
        rho += d.s[i] * np.kron(sig, SIGMA_0)
        rho += d.p[i] * np.kron(SIGMA_0, sig)
    for i, si in enumerate(PAULIS):
        for j, sj in enumerate(PAULIS):
            rho += d.beta[i, j] * np.kron(si, sj)
    return rho / 4.0


# ---------------------------------------------------------------------------
# State file format
# ---------------------------------------------------------------------------

def state_to_json_dict(rho: np.ndarray) -> dict:
    """{"matrix": [[[re, im] x4] x4]} with all 16 entries emitted."""
    rho = np.asarray(rho, dtype=complex)
    return {"matrix": [[[row[j].real, row[j].imag] for j in range(4)] for row in rho]}


def state_from_json_dict(d: dict) -> np.ndarray:
    entries = d["matrix"]
    m = np.array([[complex(e[0], e[1]) for e in row] for row in entries])
    return validate(m)


def save_state(rho: np.ndarray, path) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_json_dict(rho), fh, indent=1)
        fh.write("\n")


def load_state(path) -> np.ndarray:
    with open(path) as fh:
        return state_from_json_dict(json.load(fh))
