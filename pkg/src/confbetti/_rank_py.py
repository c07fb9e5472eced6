"""Pure-Python exact rank kernel.

Rows are reduced against a table of pivot rows keyed by leading column.
Every row is kept primitive (content 1), which keeps the integers small on
the sparse, small-entry matrices produced by the configuration complexes.
"""
from math import gcd


def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for c in row:
            row[c] //= g
    return row


def rank_int_rows(rows, ncols=None):
    """Rank over Q of an integer matrix given as a list of ``{col: value}`` rows.

    ``ncols`` is accepted for signature parity with the compiled kernel.
    """
    pivots = {}
    clean = [{c: v for c, v in src.items() if v} for src in rows]
    for row in sorted(clean, key=len):
        _primitive(row)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            a = piv[lead]
            b = row[lead]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            if fa != 1:
                for c in row:
                    row[c] *= fa
            for c, v in piv.items():
                w = row.get(c, 0) - fb * v
                if w:
                    row[c] = w
                else:
                    row.pop(c, None)
            _primitive(row)
    return len(pivots)
