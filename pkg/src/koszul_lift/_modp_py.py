"""Pure Python mirror of the compiled row-reduction kernel.

Same pivoting, same normalization, same elimination order as _modp.pyx, so
both backends produce bit-identical reduced forms.  Row operations are
vectorized with numpy; products of two reduced entries stay below 2**62,
inside int64.
"""

import numpy as np

BACKEND = "pure-python"


def rref_mod(a: np.ndarray, p: int, pivots: np.ndarray) -> int:
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv], col:] = a[[piv, rank], col:]
        lead = int(a[rank, col])
        if lead != 1:
            inv = pow(lead, p - 2, p)
            a[rank, col:] = a[rank, col:] * inv % p
        factors = a[:, col].copy()
        factors[rank] = 0
        rows = np.nonzero(factors)[0]
        if rows.size:
            a[np.ix_(rows, range(col, ncols))] = (
                a[np.ix_(rows, range(col, ncols))]
                - np.outer(factors[rows], a[rank, col:])
            ) % p
        pivots[rank] = col
        rank += 1
    return rank
