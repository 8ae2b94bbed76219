"""Dense state-vector reference simulator (small n only).

Gate unitaries are reconstructed from a gate's Pauli images alone, by
solving ``U P = P' U`` for the four generators, so this path shares no
lookup tables with the tableau simulator.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import null_space

from .stabsim import BrickworkCircuit, CliffordGate2

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_P = {"I": _I, "X": _X, "Y": _Y, "Z": _Z}

MAX_QUBITS = 14


def pauli_matrix(label: str) -> np.ndarray:
    sign = -1.0 if label.startswith("-") else 1.0
    out = np.array([[1.0 + 0j]])
    for c in label.lstrip("+-"):
        out = np.kron(out, _P[c])
    return sign * out


def gate_unitary(g: CliffordGate2) -> np.ndarray:
    """4x4 unitary (qubit i is the high-order tensor factor), fixed up to global phase."""
    gens = ["XI", "ZI", "IX", "IZ"]
    eqs = []
    for src, dst in zip(gens, g.images()):
        p, q = pauli_matrix(src), pauli_matrix(dst)
        # U p - q U = 0 in column-major vec form
        eqs.append(np.kron(p.T, np.eye(4)) - np.kron(np.eye(4), q))
    ns = null_space(np.vstack(eqs))
    if ns.shape[1] != 1:
        raise AssertionError(f"expected a one-dimensional solution space, got {ns.shape[1]}")
    u = ns[:, 0].reshape(4, 4, order="F")
    return 2.0 * u / np.linalg.norm(u)


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, atol: float = 1e-10) -> bool:
    k = np.unravel_index(np.argmax(abs(b)), b.shape)
    if abs(a[k]) < atol:
        return False
    ph = b[k] / a[k]
    return np.allclose(a * ph, b, atol=atol)


def statevector(c: BrickworkCircuit) -> np.ndarray:
    """Amplitudes as a tensor with one axis per qubit (axis q = qubit q)."""
    if c.n > MAX_QUBITS:
        raise ValueError(f"dense simulation limited to {MAX_QUBITS} qubits")
    psi = np.zeros((2,) * c.n, dtype=complex)
    psi[(0,) * c.n] = 1.0
    cache: dict[int, np.ndarray] = {}
    for layer in c.layers:
        for (i, j), g in layer:
            u = cache.get(g.canonical_index)
            if u is None:
                u = cache[g.canonical_index] = gate_unitary(g).reshape(2, 2, 2, 2)
            psi = np.tensordot(u, psi, axes=([2, 3], [i, j]))
            psi = np.moveaxis(psi, [0, 1], [i, j])
    return psi


def born_table(c: BrickworkCircuit) -> np.ndarray:
    """Probabilities indexed by the int whose bit q is qubit q's outcome."""
    probs = np.abs(statevector(c)) ** 2
    return probs.transpose(tuple(reversed(range(c.n)))).reshape(-1)
