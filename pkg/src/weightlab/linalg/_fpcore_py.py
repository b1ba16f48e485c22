"""Pure-Python row reduction over F_p (fallback for the compiled core)."""


def rref_mod_p(rows, ncols, p):
    """Reduced row echelon form of an integer matrix modulo ``p``.

    Returns ``(nonzero_rows, pivot_columns)``.
    """
    a = [[x % p for x in r] for r in rows]
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
        inv = pow(row[c], -1, p)
        if inv != 1:
            for j in range(c, ncols):
                row[j] = row[j] * inv % p
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    other = a[i]
                    for j in range(c, ncols):
                        if row[j]:
                            other[j] = (other[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots
