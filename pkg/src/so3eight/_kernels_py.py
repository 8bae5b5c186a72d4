"""Pure-Python fraction-free Gauss-Jordan elimination over the integers.

Reference implementation of the elimination kernel.  The compiled module
``_ckernels`` exposes the same functions and must agree with this one
exactly.
"""
from math import gcd


def _normalize(row, lead):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        row = [x // g for x in row]
    if row[lead] < 0:
        row = [-x for x in row]
    return row


def rref_int(rows, ncols):
    """Integer reduced row echelon form.

    Parameters
    ----------
    rows : list of list of int
        Input matrix, row major.  Not modified.
    ncols : int
        Number of columns (needed when ``rows`` is empty).

    Returns
    -------
    (reduced, pivots) where ``reduced`` holds one primitive integer row per
    pivot, with positive pivot entry and zeros in every other pivot column.
    Row space is preserved.
    """
    work = [list(r) for r in rows if any(r)]
    pivots = []
    reduced = []
    for col in range(ncols):
        piv = None
        best = None
        for idx, r in enumerate(work):
            v = r[col]
            if v and (best is None or abs(v) < best):
                piv, best = idx, abs(v)
                if best == 1:
                    break
        if piv is None:
            continue
        prow = _normalize(work.pop(piv), col)
        p = prow[col]
        nz = [c for c in range(col, ncols) if prow[c]]
        nxt = []
        for r in work:
            a = r[col]
            if a:
                g = gcd(p, a)
                mp, ma = p // g, a // g
                r = [mp * x for x in r]
                for c in nz:
                    r[c] -= ma * prow[c]
                if any(r):
                    nxt.append(_normalize_any(r))
            else:
                nxt.append(r)
        work = nxt
        for i, r in enumerate(reduced):
            a = r[col]
            if a:
                g = gcd(p, a)
                mp, ma = p // g, a // g
                r = [mp * x for x in r]
                for c in nz:
                    r[c] -= ma * prow[c]
                reduced[i] = _normalize(r, pivots[i])
        reduced.append(prow)
        pivots.append(col)
        if not work:
            break
    return reduced, pivots


def _normalize_any(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    return [x // g for x in row]


def rank_int(rows, ncols):
    return len(rref_int(rows, ncols)[1])
