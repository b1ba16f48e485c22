"""Row-reduction kernels, compiled when available.

The F_p kernel is the hot loop of every hom-space and minimal-model
computation over the quiver backend.  ``WEIGHTLAB_PURE_PYTHON=1`` forces the
fallback; ``BACKEND`` reports which one was loaded.
"""

import os

from . import _fpcore_py

if os.environ.get("WEIGHTLAB_PURE_PYTHON"):
    rref_mod_p = _fpcore_py.rref_mod_p
    BACKEND = "python"
else:
    try:
        from ._fpcore import rref_mod_p
        BACKEND = "cython"
    except ImportError:
        rref_mod_p = _fpcore_py.rref_mod_p
        BACKEND = "python"

rref_mod_p_python = _fpcore_py.rref_mod_p


def rref_rational(rows, ncols):
    """Reduced row echelon form over Q; entries are Fractions."""
    a = [list(r) for r in rows]
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        row = a[r]
        pv = row[c]
        if pv != 1:
            for j in range(c, ncols):
                if row[j]:
                    row[j] = row[j] / pv
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    other = a[i]
                    for j in range(c, ncols):
                        if row[j]:
                            other[j] = other[j] - f * row[j]
        pivots.append(c)
        r += 1
    return a[:r], pivots
