"""
Exact linear programming over the rationals: two-phase dense simplex with
Bland's anti-cycling rule.  Problems are tiny (tens of variables), so the
tableau is kept as plain lists of Fractions.
"""
from fractions import Fraction


class LPError(Exception):
    pass


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    tableau[row] = [x / piv for x in tableau[row]]
    for r in range(len(tableau)):
        if r != row and tableau[r][col] != 0:
            f = tableau[r][col]
            tableau[r] = [a - f * b for a, b in zip(tableau[r], tableau[row])]
    basis[row] = col


def _run_simplex(tableau, basis, cost, ncols):
    """Minimise cost over the tableau in place; Bland's rule throughout.
    cost is the objective row (reduced costs maintained by pivoting)."""
    while True:
        entering = None
        for j in range(ncols):
            if cost[j] < 0:
                entering = j
                break
        if entering is None:
            return
        leaving = None
        best = None
        for i, row in enumerate(tableau):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[leaving])):
                    best = ratio
                    leaving = i
        if leaving is None:
            raise LPError("objective unbounded")
        _pivot(tableau, basis, leaving, entering)
        f = cost[entering]
        cost[:] = [a - f * b for a, b in zip(cost, tableau[leaving])]


def solve_lp(A, b, c):
    """
    min c.x subject to A x = b, x >= 0, all data rational.

    Returns (status, x, value) with status "optimal" or "infeasible";
    raises LPError on an unbounded objective.
    """
    m = len(A)
    n = len(A[0]) if m else len(c)
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    c = [Fraction(x) for x in c] + [Fraction(0)] * (n - len(c))
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]

    # phase 1: artificials n..n+m-1
    total = n + m
    tableau = []
    for i in range(m):
        row = A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        row.append(b[i])
        tableau.append(row)
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * (total + 1)
    for j in range(n):
        cost[j] = -sum(tableau[i][j] for i in range(m))
    cost[-1] = -sum(b)
    _run_simplex(tableau, basis, cost, total)
    if -cost[-1] != 0:
        return "infeasible", None, None

    # drive remaining artificials out of the basis, dropping redundant rows
    keep = []
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tableau[i][j] != 0), None)
            if col is None:
                continue  # redundant constraint
            _pivot(tableau, basis, i, col)
        keep.append(i)
    tableau = [tableau[i][:n] + [tableau[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    # phase 2
    cost = list(c) + [Fraction(0)]
    for i, bi in enumerate(basis):
        if cost[bi] != 0:
            f = cost[bi]
            cost = [a - f * bb for a, bb in zip(cost, tableau[i])]
    _run_simplex(tableau, basis, cost, n)
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        x[bi] = tableau[i][-1]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return "optimal", x, value


def feasible_point(A, b):
    """A rational solution of A x = b, x >= 0, or None."""
    n = len(A[0]) if A else 0
    status, x, _ = solve_lp(A, b, [Fraction(0)] * n)
    return x if status == "optimal" else None
