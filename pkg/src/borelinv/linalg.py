"""Dense row reduction over F_q on lists of packed field elements."""

from __future__ import annotations

from .gf import FieldParams


def rref(rows, field: FieldParams, ncols: int):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    A = [list(r) for r in rows if any(r)]
    pivots = []
    prime = field.e == 1
    p = field.p
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(A)):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.inv(A[r][c])
        if prime:
            A[r] = [(x * inv) % p for x in A[r]]
        else:
            A[r] = [field.mul(x, inv) for x in A[r]]
        row = A[r]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                if prime:
                    A[i] = [(x - f * y) % p for x, y in zip(A[i], row)]
                else:
                    A[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[i], row)]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows, field: FieldParams, ncols: int) -> int:
    return len(rref(rows, field, ncols)[1])


def nullspace(rows, field: FieldParams, ncols: int):
    """Basis of {v : A v = 0}, returned in reduced echelon form."""
    R, pivots = rref(rows, field, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for row, pc in zip(R, pivots):
            if row[fcol]:
                v[pc] = field.neg(row[fcol])
        basis.append(v)
    if not basis:
        return []
    E, _ = rref(basis, field, ncols)
    return E


def in_span(vec, rows, field: FieldParams, ncols: int) -> bool:
    base = rank(rows, field, ncols)
    return rank(list(rows) + [vec], field, ncols) == base
