import math

import numpy as np

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2
QUARTER_PI = math.pi / 4

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID_INPUT = 2

# Single-qubit operators, basis order (|0>, |1>)
PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI_P = (PAULI_X - PAULI_Y) / math.sqrt(2)
PAULI_Q = (PAULI_X + PAULI_Y) / math.sqrt(2)

TABLE_K_RANGES = {
    "I": (2, 10),
    "II": (3, 10),
    "III": (3, 10),
    "IV": (3, 10),
}

TABLE_COLUMNS = {
    "I": ["k", "r_k", "kappa_k"],
    "II": ["k", "p", "n", "m_k", "m_hat_k"],
    "III": ["k", "p", "n", "r_k", "r_hat_k", "m_hat_k"],
    "IV": ["k", "p", "n", "d_w", "r_hat_k", "r_hat_w", "m_hat_k", "m_hat_w"],
    "gap": ["k", "p", "n", "d_w", "r_hat_k", "m_hat_k", "gap", "r_hat_w", "m_hat_w", "gap_w", "violation_candidate"],
}

# Columns that also get a "<name>_rounded" companion at printed precision
ROUNDED_COLUMNS = {
    "r_k": "{:.3f}",
    "kappa_k": "{:.3g}",
    "r_hat_k": "{:.3f}",
    "m_k": "{:.3f}",
    "m_hat_k": "{:.3f}",
    "r_hat_w": "{:.3f}",
    "m_hat_w": "{:.3f}",
    "gap": "{:.3f}",
    "gap_w": "{:.3f}",
}
