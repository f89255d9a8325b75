"""Dense symmetric eigenvalues by cyclic Jacobi rotations.

Rotations are scheduled round-robin so each round annihilates n/2 disjoint
off-diagonal pairs at once; a sweep of n-1 rounds visits every pair exactly once.
"""

from __future__ import annotations

import numpy as np


class ConvergenceError(RuntimeError):
    pass


def _round_robin(n):
    """Disjoint pair schedule (circle method). Returns list of (P, Q) index arrays."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a < n and b < n]
        if pairs:
            P, Q = zip(*pairs)
            rounds.append((np.array(P), np.array(Q)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def off_norm(a):
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigenvalues(a, tol=1e-12, max_sweeps=60):
    """Eigenvalues of a real symmetric matrix, ascending.

    Stops once the off-diagonal Frobenius norm is below ``tol * ||a||_F``.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("square matrix required")
    if n <= 1:
        return np.diag(a).copy()
    a = 0.5 * (a + a.T)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n)
    schedule = _round_robin(n)
    for _ in range(max_sweeps):
        if off_norm(a) <= tol * scale:
            break
        for P, Q in schedule:
            apq = a[P, Q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            theta = np.where(active, (a[Q, Q] - a[P, P]) / (2.0 * np.where(active, apq, 1.0)), 0.0)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rp, rq = a[P, :].copy(), a[Q, :].copy()
            a[P, :] = c[:, None] * rp - s[:, None] * rq
            a[Q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, P].copy(), a[:, Q].copy()
            a[:, P] = cp * c - cq * s
            a[:, Q] = cp * s + cq * c
            a[P, Q] = 0.0
            a[Q, P] = 0.0
    else:
        if off_norm(a) > tol * scale:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    return np.sort(np.diag(a))


def symmetrize(gram, op):
    """Similarity transform of a Gram-self-adjoint operator to a symmetric matrix.

    With ``gram = U^T U`` (U upper triangular) returns ``S = U op U^{-1}`` and the
    max absolute asymmetry ``|S - S^T|`` before symmetrization.
    """
    gram = np.asarray(gram, dtype=float)
    op = np.asarray(op, dtype=float)
    if gram.shape[0] == 0:
        return np.zeros((0, 0)), 0.0
    u = np.linalg.cholesky(gram).T
    s = np.linalg.solve(u.T, (u @ op).T).T  # (U op) U^{-1}
    resid = float(np.max(np.abs(s - s.T)))
    return 0.5 * (s + s.T), resid
