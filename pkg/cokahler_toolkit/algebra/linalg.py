"""Exact rational linear algebra over sympy's QQ

Vectors are plain lists of QQ elements. Matrices are passed as lists of rows,
either dense (lists) or sparse (dicts mapping column index to value). All
elimination is delegated to sympy's DomainMatrix.
"""

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

ZERO = QQ(0)
ONE = QQ(1)


def to_scalar(value):
    """Convert an int, a (numerator, denominator) pair or a QQ element to QQ"""
    if isinstance(value, tuple):
        return QQ(*value)
    return QQ.convert(value)


def zero_vector(n):
    return [ZERO] * n


def unit_vector(n, i):
    vec = [ZERO] * n
    vec[i] = ONE
    return vec


def is_zero_vector(vec):
    return all(v == 0 for v in vec)


def _domain_matrix(rows, ncols):
    """Build a sparse DomainMatrix from dense or sparse rows"""
    dod = {}
    for i, row in enumerate(rows):
        items = row.items() if isinstance(row, dict) else enumerate(row)
        entries = {j: QQ.convert(v) for j, v in items if v != 0}
        if entries:
            dod[i] = entries
    return DomainMatrix(dod, (len(rows), ncols), QQ)


def _sparse_rows(matrix):
    """Row dicts of a DomainMatrix, keyed by row index"""
    return matrix.to_sparse().rep


def rank(rows, ncols):
    """Rank of the matrix whose rows are given"""
    if not rows or ncols == 0:
        return 0
    return _domain_matrix(rows, ncols).rank()


def rref(rows, ncols):
    """Reduced row echelon form

    Returns:
        (echelon_rows, pivots): the nonzero rows of the RREF as dense lists,
        ordered by pivot column, and the tuple of pivot columns
    """
    if not rows or ncols == 0:
        return [], ()
    reduced, pivots = _domain_matrix(rows, ncols).rref()
    sparse = _sparse_rows(reduced)
    echelon = []
    for i in range(len(pivots)):
        dense = zero_vector(ncols)
        for j, v in sparse.get(i, {}).items():
            dense[j] = v
        echelon.append(dense)
    return echelon, tuple(pivots)


def nullspace(rows, ncols):
    """Basis of {v : row . v = 0 for every row}, in reduced echelon form"""
    if ncols == 0:
        return []
    if not rows or all(is_zero_vector(list(r.values()) if isinstance(r, dict) else r) for r in rows):
        return [unit_vector(ncols, j) for j in range(ncols)]
    kernel = _sparse_rows(_domain_matrix(rows, ncols).nullspace())
    basis = []
    for i in sorted(kernel):
        dense = zero_vector(ncols)
        for j, v in kernel[i].items():
            dense[j] = v
        basis.append(dense)
    echelon, _ = rref(basis, ncols)
    return echelon


def transpose(columns, nrows):
    """Rows of the matrix whose columns are given"""
    return [[col[i] for col in columns] for i in range(nrows)]


def solve(columns, target):
    """Find x with sum_i x[i] * columns[i] == target

    Free variables are set to zero, so the result is deterministic.

    Returns:
        list of QQ coefficients, or None when the system is inconsistent
    """
    n = len(columns)
    m = len(target)
    if m == 0:
        return zero_vector(n)
    augmented = [[col[i] for col in columns] + [target[i]] for i in range(m)]
    echelon, pivots = rref(augmented, n + 1)
    if n in pivots:
        return None
    solution = zero_vector(n)
    for row, pivot in zip(echelon, pivots):
        solution[pivot] = row[n]
    return solution


def complement_indices(rows, ncols):
    """Indices of standard basis vectors completing the row span to the whole space"""
    _, pivots = rref(rows, ncols)
    taken = set(pivots)
    return [j for j in range(ncols) if j not in taken]


def independent_extension(candidates, base_rows, ncols):
    """Greedily pick candidates that are independent modulo the span of base_rows

    Returns:
        list of indices into candidates
    """
    chosen = []
    span = [list(r) for r in base_rows]
    current = rank(span, ncols)
    for idx, vec in enumerate(candidates):
        trial = span + [vec]
        r = rank(trial, ncols)
        if r > current:
            chosen.append(idx)
            span = trial
            current = r
    return chosen


def mat_vec(matrix_rows, vec):
    """Matrix (given by rows) times vector"""
    return [sum((a * b for a, b in zip(row, vec)), ZERO) for row in matrix_rows]


def identity(n):
    return [unit_vector(n, i) for i in range(n)]
