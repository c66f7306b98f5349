"""Vectorized evaluation of statistics over batches of colored permutations.

Batches are pairs of integer arrays ``omega`` (values 1..n) and ``tau``
(colors 0..r-1), each of shape ``(N, n)``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .perm import DESCENT_ORDER, OrderKind, ParameterError, TotalOrder


def letter_keys(omega: np.ndarray, tau: np.ndarray, n: int, r: int, order: TotalOrder) -> np.ndarray:
    """Integer sort keys of the one-line letters with the boundary letter (n+1)^0 appended."""
    if order.kind is OrderKind.DESCENT:
        band = tau
        boundary_band = 0
    elif order.kind is OrderKind.ADIN_ROICHMAN:
        band = (r - 1) - tau
        boundary_band = r - 1
    else:
        raise ParameterError("vectorized kernel supports the built-in orders only")
    keys = band.astype(np.int64) * (n + 2) + omega
    boundary = np.full((keys.shape[0], 1), boundary_band * (n + 2) + n + 1, dtype=np.int64)
    return np.concatenate([keys, boundary], axis=1)


def descent_matrix(omega, tau, n: int, r: int, order: TotalOrder = DESCENT_ORDER) -> np.ndarray:
    """Boolean (N, n) array; column i-1 flags a descent at position i."""
    keys = letter_keys(np.asarray(omega), np.asarray(tau), n, r, order)
    return keys[:, :-1] > keys[:, 1:]


def batch_stat(name: str, params: tuple, omega, tau, n: int, r: int,
               order: TotalOrder = DESCENT_ORDER) -> np.ndarray:
    omega = np.asarray(omega)
    tau = np.asarray(tau)
    if name == "col":
        return tau.sum(axis=1).astype(np.int64)
    if name == "Y":
        i, c = params
        return (tau[:, i - 1] == c).astype(np.int64)
    d = descent_matrix(omega, tau, n, r, order)
    if name == "des":
        return d.sum(axis=1).astype(np.int64)
    if name == "X":
        return d[:, params[0] - 1].astype(np.int64)
    m = d[:, : n - 1].astype(np.int64) @ np.arange(1, n, dtype=np.int64)
    if name == "maj":
        return m
    if name == "fmaj":
        return r * m + tau.sum(axis=1).astype(np.int64)
    raise ParameterError(f"unknown statistic {name!r}")


@lru_cache(maxsize=16)
def colorings(n: int, r: int) -> np.ndarray:
    """All r^n colorings, lexicographic, shape (r^n, n)."""
    return np.array(list(itertools.product(range(r), repeat=n)), dtype=np.int64).reshape(r**n, n)


def compose_batch(a_om, a_tau, b_om, b_tau, r: int):
    """Row-wise product a*b of two batches (b applied first)."""
    idx = b_om - 1
    om = np.take_along_axis(a_om, idx, axis=1)
    tau = (np.take_along_axis(a_tau, idx, axis=1) + b_tau) % r
    return om, tau


def inverse_batch(om, tau, r: int):
    N, n = om.shape
    inv_om = np.empty_like(om)
    inv_tau = np.empty_like(tau)
    rows = np.arange(N)[:, None]
    inv_om[rows, om - 1] = np.arange(1, n + 1)[None, :]
    inv_tau[rows, om - 1] = (-tau) % r
    return inv_om, inv_tau


def random_elements(rng: np.random.Generator, N: int, n: int, r: int):
    """N independent uniform elements of S_{n,r}."""
    om = rng.permuted(np.tile(np.arange(1, n + 1, dtype=np.int64), (N, 1)), axis=1)
    tau = rng.integers(0, r, size=(N, n), dtype=np.int64)
    return om, tau
