"""Small exact linear algebra over :class:`fractions.Fraction`.

Matrices are lists of row lists. Nothing here is clever; the systems we meet
have at most a few dozen rows.
"""

from fractions import Fraction
from math import gcd

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(value):
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"refusing to coerce {type(value).__name__} to an exact rational")


def vec(values):
    return tuple(frac(v) for v in values)


def mat(rows):
    return tuple(tuple(frac(v) for v in row) for row in rows)


def dot(a, b):
    return sum((x * y for x, y in zip(a, b) if x and y), ZERO)


def matvec(A, x):
    return tuple(dot(row, x) for row in A)


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def rref(rows, ncols):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` with the nonzero rows of the echelon form and the
    pivot column of each.
    """
    R = [[frac(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(R):
            break
        p = next((k for k in range(r, len(R)) if R[k][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        pv = R[r][c]
        if pv != 1:
            R[r] = [v / pv for v in R[r]]
        for k in range(len(R)):
            if k != r and R[k][c] != 0:
                f = R[k][c]
                R[k] = [a - f * b for a, b in zip(R[k], R[r])]
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of ``{x : A x = 0}`` as a list of vectors."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve_affine(A, b, ncols):
    """Parametrize ``{x : A x = b}``.

    Returns ``(x0, free, R, pivots)`` where ``x0`` is the solution with all
    free coordinates zero, or ``None`` if the system is inconsistent. Every
    solution is determined by its free coordinates.
    """
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x0 = [ZERO] * ncols
    for row, p in zip(R, pivots):
        x0[p] = row[ncols]
    free = [c for c in range(ncols) if c not in pivots]
    return tuple(x0), free, [row[:ncols] for row in R], pivots


def inverse(A):
    n = len(A)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def primitive(values):
    """Scale a rational vector to the coprime integer vector on the same ray."""
    values = [frac(v) for v in values]
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in values]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def format_fraction(x):
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
