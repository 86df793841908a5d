import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np

from apsbench.constants import PAULI_P, PAULI_Q, PAULI_X, PAULI_Y, PAULI_Z
from apsbench.core.settings import logger, settings
from apsbench.enums.pauli_pair import PauliPair
from apsbench.exc.oracle import ImaginaryExpectationException, StateNormException
from apsbench.schemas.energy import AngleAssignment
from apsbench.schemas.graphs import Graph
from apsbench.utils.validation import check_assignment_matches, check_qubit_cap, check_vertex_in_range

PAIR_OPERATORS: Dict[PauliPair, Tuple[np.ndarray, np.ndarray]] = {
    PauliPair.QP: (PAULI_Q, PAULI_P),
    PauliPair.PQ: (PAULI_P, PAULI_Q),
    PauliPair.ZZ: (PAULI_Z, PAULI_Z),
    PauliPair.XX: (PAULI_X, PAULI_X),
    PauliPair.YY: (PAULI_Y, PAULI_Y),
}

PP = np.kron(PAULI_P, PAULI_P).reshape(2, 2, 2, 2)


@dataclass
class StateVector:
    """
    Dense n-qubit state; axis q of `amplitudes` is qubit q, basis order (|0>, |1>).

    Attributes:
        n (int): Number of qubits.
        amplitudes (np.ndarray): Complex tensor of shape (2,) * n.
    """

    n: int
    amplitudes: np.ndarray

    @classmethod
    def zero(cls, n: int) -> "StateVector":
        """Returns |0...0> on n qubits."""
        amplitudes = np.zeros((2,) * n, dtype=complex)
        amplitudes[(0,) * n] = 1.0
        return cls(n=n, amplitudes=amplitudes)

    @property
    def flat(self) -> np.ndarray:
        """Amplitudes as a 2^n vector, qubit 0 most significant."""
        return self.amplitudes.reshape(-1)

    @property
    def norm(self) -> float:
        """Euclidean norm of the amplitudes."""
        return float(np.linalg.norm(self.flat))


def apply_single(op: np.ndarray, qubit: int, psi: np.ndarray) -> np.ndarray:
    """Applies a 2x2 operator to one axis of the (2,)*n amplitude tensor."""
    return np.moveaxis(np.tensordot(op, psi, axes=([1], [qubit])), 0, qubit)


def apply_pair_rotation(theta: float, i: int, j: int, psi: np.ndarray) -> np.ndarray:
    """
    Applies exp(i theta P_i P_j) = cos(theta) I + i sin(theta) P_i P_j.
    """
    rotated = np.tensordot(PP, psi, axes=([2, 3], [i, j]))
    rotated = np.moveaxis(rotated, [0, 1], [i, j])
    return math.cos(theta) * psi + 1j * math.sin(theta) * rotated


def build_state(g: Graph, angles: AngleAssignment) -> StateVector:
    """
    Builds the magic graph state prod exp(i theta_ij P_i P_j)|0...0>, gates applied in edge-id order.

    Args:
        g (Graph): The graph; one gate per vertex pair.
        angles (AngleAssignment): Angle per edge id.

    Returns:
        StateVector: The normalised state.

    Raises:
        QubitCapExceededException: If n exceeds `ORACLE_MAX_QUBITS`.
        StateNormException: If a gate moves the norm away from 1 by more than `NORM_TOLERANCE`.
    """
    check_qubit_cap(g.n)
    check_assignment_matches(g, angles)
    state = StateVector.zero(g.n)
    psi = state.amplitudes
    for edge_id, edge in enumerate(g.edges):
        psi = apply_pair_rotation(angles[edge_id], edge.u, edge.v, psi)
        norm = float(np.linalg.norm(psi))
        if abs(norm - 1.0) > settings.NORM_TOLERANCE:
            raise StateNormException(norm=norm)
    state.amplitudes = psi
    return state


def pauli_pair_expectation(state: StateVector, pair: PauliPair, i: int, j: int) -> float:
    """
    Returns <A_i B_j> for the Pauli pair AB.

    Raises:
        ImaginaryExpectationException: If the imaginary residue exceeds `IMAGINARY_TOLERANCE`.
    """
    check_vertex_in_range(i, state.n)
    check_vertex_in_range(j, state.n)
    first, second = PAIR_OPERATORS[pair]
    phi = apply_single(second, j, apply_single(first, i, state.amplitudes))
    value = complex(np.vdot(state.amplitudes.reshape(-1), phi.reshape(-1)))
    if abs(value.imag) > settings.IMAGINARY_TOLERANCE:
        raise ImaginaryExpectationException(value=value)
    return value.real


def edge_expectations(state: StateVector, i: int, j: int) -> Tuple[float, float, float]:
    """Returns (<QP>, <PQ>, <ZZ>) of the pair (i, j)."""
    return (
        pauli_pair_expectation(state, PauliPair.QP, i, j),
        pauli_pair_expectation(state, PauliPair.PQ, i, j),
        pauli_pair_expectation(state, PauliPair.ZZ, i, j),
    )


def epr_energy_exact(g: Graph, angles: AngleAssignment) -> float:
    """
    Returns <chi| (1/2) sum w_ij (II + XX + ZZ - YY) |chi> from the state vector.
    """
    simple = g.collapsed()
    state = build_state(simple, angles)
    terms = []
    for edge in simple.edges:
        xx = pauli_pair_expectation(state, PauliPair.XX, edge.u, edge.v)
        zz = pauli_pair_expectation(state, PauliPair.ZZ, edge.u, edge.v)
        yy = pauli_pair_expectation(state, PauliPair.YY, edge.u, edge.v)
        terms.append(edge.w * 0.5 * (1.0 + xx + zz - yy))
    return math.fsum(terms)


class EprHamiltonian:
    """
    Matrix-free H = sum w_ij g_ij with g_ij = 2|Phi+><Phi+| on the pair (i, j).

    g_ij is diagonal 1 on basis states where bits i and j agree, couples |..0..0..> with |..1..1..>
    with amplitude 1, and annihilates states where the bits differ.
    """

    def __init__(self, g: Graph):
        simple = g.collapsed()
        self.n = simple.n
        self.dim = 1 << simple.n
        index = np.arange(self.dim)
        self.diagonal = np.zeros(self.dim)
        self.couplings: List[Tuple[float, np.ndarray, np.ndarray]] = []
        for edge in simple.edges:
            bit_u = 1 << (simple.n - 1 - edge.u)
            bit_v = 1 << (simple.n - 1 - edge.v)
            agree = ((index & bit_u) > 0) == ((index & bit_v) > 0)
            rows = index[agree]
            self.diagonal[rows] += edge.w
            self.couplings.append((edge.w, rows, rows ^ (bit_u | bit_v)))

    def matvec(self, vector: np.ndarray) -> np.ndarray:
        """Returns H @ vector for a real or complex 2^n vector."""
        out = self.diagonal * vector
        for weight, rows, partners in self.couplings:
            out[rows] += weight * vector[partners]
        return out


def max_eigenvalue(g: Graph) -> float:
    """
    Dominant eigenvalue of the EPR Hamiltonian by shifted power iteration.

    Iterates on H + cI with c = w(G) + n from the uniform vector, which overlaps the Perron vector
    since H has non-negative off-diagonal entries. Stops when the Rayleigh quotient moves by less
    than `POWER_ITERATION_TOLERANCE` relative to its size.

    Args:
        g (Graph): The graph.

    Returns:
        float: lambda_max(H).

    Raises:
        QubitCapExceededException: If n exceeds `EIGEN_MAX_QUBITS`.
    """
    check_qubit_cap(g.n, settings.EIGEN_MAX_QUBITS)
    if g.m == 0:
        return 0.0
    hamiltonian = EprHamiltonian(g)
    shift = g.total_weight() + g.n
    vector = np.full(hamiltonian.dim, 1.0 / math.sqrt(hamiltonian.dim))
    rayleigh = float(vector @ hamiltonian.matvec(vector))
    for iteration in range(settings.POWER_ITERATION_MAX_ITER):
        image = hamiltonian.matvec(vector) + shift * vector
        vector = image / np.linalg.norm(image)
        updated = float(vector @ hamiltonian.matvec(vector))
        if abs(updated - rayleigh) < settings.POWER_ITERATION_TOLERANCE * max(1.0, abs(updated)):
            logger.debug(f"Power iteration converged after {iteration + 1} steps: {updated}")
            return updated
        rayleigh = updated
    logger.warning(f"Power iteration hit {settings.POWER_ITERATION_MAX_ITER} iterations; returning {rayleigh}")
    return rayleigh


def dump_amplitudes(state: StateVector, path: Union[str, Path]) -> None:
    """Writes {n, real, imag} JSON with amplitudes in flat basis order (qubit 0 most significant)."""
    flat = state.flat
    Path(path).write_text(json.dumps({"n": state.n, "real": flat.real.tolist(), "imag": flat.imag.tolist()}))
