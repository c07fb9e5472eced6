"""Independent oracles: none of these call into the code paths they check."""
from fractions import Fraction
from itertools import product


def dense_rank(rows):
    """Plain Gauss-Jordan over Fraction on a dense list-of-lists."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    n, m = len(a), len(a[0])
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == n:
            break
    return r


def gf_count(parities, n):
    """Coefficient of t^n in prod 1/(1-t) (even) * (1+t) (odd)."""
    coeffs = [1] + [0] * n
    for odd in parities:
        if odd:
            coeffs = [coeffs[i] + (coeffs[i - 1] if i else 0) for i in range(n + 1)]
        else:
            acc = 0
            out = []
            for c in coeffs:
                acc += c
                out.append(acc)
            coeffs = out
    return coeffs[n]


def enumerate_sym_by_degree(degrees, n):
    """Brute force: every exponent vector with total n, odd exponents <= 1.

    ``degrees`` lists one degree per generator.  Returns {degree: count}.
    """
    bounds = [1 if d % 2 else n for d in degrees]
    out = {}
    for exps in product(*[range(b + 1) for b in bounds]):
        if sum(exps) != n:
            continue
        deg = sum(e * d for e, d in zip(exps, degrees))
        out[deg] = out.get(deg, 0) + 1
    return out


def binom_general(x, k):
    """x choose k for an arbitrary integer x (coefficient of t^k in (1+t)^x)."""
    num = 1
    for i in range(k):
        num *= x - i
    den = 1
    for i in range(1, k + 1):
        den *= i
    return Fraction(num, den)


def perm_koszul_sign(seq, perm, odd):
    """Sign of rearranging ``seq`` into ``[seq[p] for p in perm]`` by counting inversions."""
    s = 1
    for x in range(len(perm)):
        for y in range(x + 1, len(perm)):
            if perm[x] > perm[y] and odd[seq[perm[x]]] and odd[seq[perm[y]]]:
                s = -s
    return s
