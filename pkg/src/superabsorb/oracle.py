"""Brute-force cross-checks in the full 2^N computational basis and in Liouville space.

Nothing here is used on production paths. Bit i of a basis index is 1 when
qubit i is excited. Sizes are capped so every routine finishes in seconds.
"""

from __future__ import annotations

import math

import numpy as np

from .ladder import BathModel, LadderModel, build_rates

MAX_QUBITS = 16
MAX_QUBITS_DENSE = 11
MAX_LADDER_DIM = 64


def _popcounts(n_qubits: int) -> np.ndarray:
    idx = np.arange(2**n_qubits)
    counts = np.zeros_like(idx)
    for i in range(n_qubits):
        counts += (idx >> i) & 1
    return counts


def _check_m(n_qubits, m, cap=MAX_QUBITS):
    if n_qubits > cap:
        raise ValueError(f"N={n_qubits} exceeds the brute-force cap {cap}")
    k = n_qubits / 2 + m
    if abs(k - round(k)) > 1e-9 or not 0 <= round(k) <= n_qubits:
        raise ValueError(f"M={m} out of range for N={n_qubits}")
    return int(round(k))


def build_dicke_state(n_qubits: int, m: float) -> np.ndarray:
    """|N/2, M> as a 2^N amplitude vector: equal weight on all strings with N/2+M excitations."""
    k = _check_m(n_qubits, m)
    mask = _popcounts(n_qubits) == k
    vec = np.zeros(2**n_qubits)
    vec[mask] = 1.0 / math.sqrt(math.comb(n_qubits, k))
    return vec


def apply_lowering(vec: np.ndarray, n_qubits: int) -> np.ndarray:
    """J_- = sum_i sigma_-^(i) acting on a computational-basis amplitude vector."""
    out = np.zeros_like(vec)
    idx = np.arange(vec.size)
    for i in range(n_qubits):
        excited = idx[(idx >> i) & 1 == 1]
        np.add.at(out, excited ^ (1 << i), vec[excited])
    return out


def lowering_matrix_element(n_qubits: int, m: float, m_final: float | None = None) -> float:
    """<M'|J_-|M> by explicit contraction; M' defaults to M - 1."""
    m_final = m - 1 if m_final is None else m_final
    ket = build_dicke_state(n_qubits, m)
    bra = build_dicke_state(n_qubits, m_final)
    return float(bra @ apply_lowering(ket, n_qubits))


def connectivity(n_qubits: int, m: float) -> int:
    """Number of |M-1> basis strings reached from one |M> string by a single lowering: N/2 + M."""
    k = _check_m(n_qubits, m)
    start = (1 << k) - 1  # k lowest qubits excited
    e = np.zeros(2**n_qubits)
    e[start] = 1.0
    return int(np.count_nonzero(apply_lowering(e, n_qubits)))


def dicke_density_matrix(n_qubits: int, weights) -> np.ndarray:
    """sum_M p_M |M><M| in the 2^N basis; ``weights`` in descending-M order."""
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (n_qubits + 1,):
        raise ValueError("one weight per Dicke level expected")
    rho = np.zeros((2**n_qubits, 2**n_qubits))
    for i, w in enumerate(weights):
        if w != 0:
            v = build_dicke_state(n_qubits, n_qubits / 2 - i)
            rho += w * np.outer(v, v)
    return rho


def c_l1_bruteforce(n_qubits: int, weights) -> float:
    """Sum of |off-diagonal| entries of the Dicke-diagonal state in the computational basis."""
    if n_qubits > MAX_QUBITS_DENSE:
        raise ValueError(f"N={n_qubits} exceeds the dense cap {MAX_QUBITS_DENSE}")
    rho = dicke_density_matrix(n_qubits, weights)
    return float(np.abs(rho).sum() - np.abs(np.diag(rho)).sum())


def a_cl_bruteforce(ladder: LadderModel, bath: BathModel, weights, gap_floor=1e-9) -> float:
    """Tr[X rho_sd] with X lifted to the 2^N basis through the Dicke projectors.

    X = sum_M Delta_M^2 gamma_M^up |M><M| + sum_M Delta_M^2 gamma_M^down |M-1><M-1|.
    """
    n = ladder.n_qubits
    if n > 9:
        raise ValueError("a_cl_bruteforce is limited to N <= 9")
    if np.any(ladder.gaps <= 0):
        raise ValueError("a_cl_bruteforce needs all gaps positive")
    rates = build_rates(ladder, bath, gap_floor)
    dim = 2**n
    X = np.zeros((dim, dim))
    dicke = [build_dicke_state(n, m) for m in ladder.levels]
    for link, m in enumerate(ladder.link_m):
        d2 = ladder.gaps[link] ** 2
        upper, lower = dicke[link], dicke[link + 1]
        X += d2 * rates.up_rate[link] * np.outer(upper, upper)
        X += d2 * rates.down_rate[link] * np.outer(lower, lower)
    rho = dicke_density_matrix(n, weights)
    rho_sd = np.diag(np.diag(rho))
    return float(np.trace(X @ rho_sd))


def lindblad_superoperator(hamiltonian: np.ndarray, jumps, rates) -> np.ndarray:
    """Column-stacking Liouvillian: vec(A X B) = (B^T kron A) vec(X)."""
    d = hamiltonian.shape[0]
    eye = np.eye(d)
    L = -1j * (np.kron(eye, hamiltonian) - np.kron(hamiltonian.T, eye))
    for op, rate in zip(jumps, rates):
        if rate == 0:
            continue
        ldl = op.conj().T @ op
        L += rate * (np.kron(op.conj(), op)
                     - 0.5 * np.kron(eye, ldl) - 0.5 * np.kron(ldl.T, eye))
    return L


def expm_taylor(A: np.ndarray, tol: float = 1e-16) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring with a truncated Taylor series.

    Deliberately independent of the Pade routine used by the production code.
    """
    norm = np.linalg.norm(A, 1)
    s = max(0, int(math.ceil(math.log2(norm / 0.25))) + 1) if norm > 0.25 else 0
    B = A / 2.0**s
    out = np.eye(A.shape[0], dtype=np.result_type(A, float))
    term = out.copy()
    for k in range(1, 40):
        term = term @ B / k
        out = out + term
        if np.linalg.norm(term, 1) <= tol * np.linalg.norm(out, 1):
            break
    for _ in range(s):
        out = out @ out
    return out


def ladder_jumps(ladder: LadderModel, bath: BathModel, gap_floor=1e-9):
    """Jump operators and rates of the ladder dissipator, descending-M basis.

    Each link contributes its energy-lowering operator with the (1+n) rate and
    the adjoint with the n rate, so negative gaps swap direction automatically.
    """
    rates = build_rates(ladder, bath, gap_floor)
    d = ladder.dim
    jumps, gammas = [], []
    for link in range(d - 1):
        lower_m = np.zeros((d, d))
        lower_m[link + 1, link] = 1.0  # |M-1><M|
        down = lower_m if ladder.gaps[link] > 0 else lower_m.T
        jumps += [down, down.T]
        gammas += [rates.down_rate[link], rates.up_rate[link]]
    return jumps, gammas


def full_lindblad_evolve(rho: np.ndarray, ladder: LadderModel, bath: BathModel, duration: float,
                         gap_floor=1e-9) -> np.ndarray:
    """Evolve a full ladder density matrix under -i[H, rho] + D[rho] by exact exponentiation."""
    d = ladder.dim
    if d > MAX_LADDER_DIM:
        raise ValueError(f"ladder dimension {d} exceeds {MAX_LADDER_DIM}")
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d, d):
        raise ValueError("density matrix does not match the ladder")
    if np.abs(rho - rho.conj().T).max() > 1e-12:
        raise ValueError("density matrix is not Hermitian")
    jumps, gammas = ladder_jumps(ladder, bath, gap_floor)
    L = lindblad_superoperator(np.diag(ladder.energies).astype(complex), jumps, gammas)
    vec = expm_taylor(L * duration) @ rho.reshape(-1, order="F")
    return vec.reshape(d, d, order="F")
