"""Deterministic Nelder-Mead simplex descent.

Plain derivative-free minimisation with the classical coefficients
(reflection 1, expansion 2, contraction 0.5, shrink 0.5). Vertex ordering
uses a stable sort, so runs are reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SimplexResult:
    x: np.ndarray
    fun: float
    converged: bool
    iterations: int


def minimize_simplex(
    func,
    x0: np.ndarray,
    steps: np.ndarray,
    f_tol: float = 1e-10,
    max_iter: int = 2000,
) -> SimplexResult:
    """Minimise ``func`` starting from ``x0``.

    Args:
        func: Objective mapping a 1-D array to a float.
        x0: Starting point, length >= 1.
        steps: Per-coordinate offsets used to build the initial simplex.
        f_tol: Stop when the spread of vertex objective values falls
            below this (the "simplex diameter in objective").
        max_iter: Iteration cap; hitting it returns converged=False.

    Returns:
        SimplexResult with the best vertex found.
    """
    x0 = np.asarray(x0, dtype=float)
    steps = np.asarray(steps, dtype=float)
    dim = len(x0)
    if dim < 1:
        raise ValueError("simplex needs at least one dimension")
    if len(steps) != dim:
        raise ValueError("steps length must match x0 length")

    verts = np.tile(x0, (dim + 1, 1))
    for i in range(dim):
        verts[i + 1, i] += steps[i]
    fvals = np.array([func(v) for v in verts])

    converged = False
    iterations = 0
    while iterations < max_iter:
        order = np.argsort(fvals, kind="stable")
        verts = verts[order]
        fvals = fvals[order]

        if fvals[-1] - fvals[0] < f_tol:
            converged = True
            break
        iterations += 1

        centroid = verts[:-1].mean(axis=0)
        reflected = centroid + (centroid - verts[-1])
        f_ref = func(reflected)

        if f_ref < fvals[0]:
            expanded = centroid + 2.0 * (centroid - verts[-1])
            f_exp = func(expanded)
            if f_exp < f_ref:
                verts[-1], fvals[-1] = expanded, f_exp
            else:
                verts[-1], fvals[-1] = reflected, f_ref
        elif f_ref < fvals[-2]:
            verts[-1], fvals[-1] = reflected, f_ref
        else:
            contracted = centroid + 0.5 * (verts[-1] - centroid)
            f_con = func(contracted)
            if f_con < fvals[-1]:
                verts[-1], fvals[-1] = contracted, f_con
            else:
                # Shrink everything toward the best vertex.
                for i in range(1, dim + 1):
                    verts[i] = verts[0] + 0.5 * (verts[i] - verts[0])
                    fvals[i] = func(verts[i])

    best = int(np.argmin(fvals))
    return SimplexResult(
        x=verts[best].copy(),
        fun=float(fvals[best]),
        converged=converged,
        iterations=iterations,
    )
