"""Compiled sweep loops for the gridded condition kinds.

Every gridded block is a row-major array of cells with 1-based indices
(a, b); a 1D block has a single column. ``sweep`` evaluates a contiguous
range of flat cell numbers and writes the left-hand sides into ``out``.
"""

import numpy as np

from .._numerics import kernel
from ..scalarfun import f_n, g_k
from ..volbounds import chi_minus, psi_minus, w_dr, w_sg

# Kernel codes. The campaign kinds map onto these; MONSTER variants differ
# only in where the per-cell mu comes from, which is resolved beforehand.
WDR_ROW = 0  # (i,)    w_dr(f3(lam_i)/2, g_k(mu_i), f1(mu_i))
CHI_GRID = 1  # (i, j) chi_minus(k, lam_{i-1}, lam_i, delta_i, E_{j-1}, E_j, mu_i)
PSI_GRID = 2  # (s, t) psi_minus(k, h_{t-1}, h_t, zeta_{s-1}, zeta_s, mu_s)
WSG_ROW = 3  # (s,)    w_sg(f1(zeta_s) + h_p, zeta_{s-1})


@kernel
def cell_value(code, a, b, k, lam, delta, mu_cell, e_grid, h_grid, zeta, mu_zeta):
    if code == WDR_ROW:
        mu = mu_cell[a]
        return w_dr(0.5 * f_n(3, lam[a]), g_k(k, mu), f_n(1, mu))
    if code == CHI_GRID:
        return chi_minus(k, lam[a - 1], lam[a], delta[a], e_grid[b - 1], e_grid[b], mu_cell[a])
    if code == PSI_GRID:
        return psi_minus(k, h_grid[b - 1], h_grid[b], zeta[a - 1], zeta[a], mu_zeta[a])
    if code == WSG_ROW:
        return w_sg(f_n(1, zeta[a]) + h_grid[h_grid.shape[0] - 1], zeta[a - 1])
    raise ValueError("unknown kernel code")


@kernel
def sweep(code, start, stop, row_lo, col_lo, ncols, k, lam, delta, mu_cell,
          e_grid, h_grid, zeta, mu_zeta, threshold, abort, out):
    """Evaluate flat cells [start, stop) into ``out``; return how many were
    written. With ``abort`` set, stop right after the first value that is not
    strictly above ``threshold``."""
    written = 0
    for flat in range(start, stop):
        a = row_lo + flat // ncols
        b = col_lo + flat % ncols
        v = cell_value(code, a, b, k, lam, delta, mu_cell, e_grid, h_grid, zeta, mu_zeta)
        out[written] = v
        written += 1
        if abort and not v > threshold:
            break
    return written


def empty_grid():
    """Placeholder for grids a kernel code does not read."""
    return np.zeros(1)
