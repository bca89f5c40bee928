"""Exact dense linear algebra over cyclotomic numbers.

Matrices are immutable values; products exploit row sparsity, and the
characteristic polynomial uses Faddeev-LeVerrier so only divisions by
small integers occur.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cyclo import ONE, ZERO, CycloNum, parse_cyclo, rational

__all__ = [
    "MatC",
    "PolyC",
    "identity",
    "diag",
    "perm_mat",
    "scalar_mat",
    "mat_from_strings",
]


class MatC:
    """A dim x dim matrix of canonical cyclotomic entries."""

    __slots__ = ("rows", "dim", "_hash", "_nnz", "_key")

    def __init__(self, rows: Sequence[Sequence[CycloNum]]):
        rows = tuple(tuple(r) for r in rows)
        dim = len(rows)
        if any(len(r) != dim for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_hash", hash(rows))
        object.__setattr__(self, "_nnz", None)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("MatC is immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return isinstance(other, MatC) and self.rows == other.rows

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def nnz(self) -> tuple[tuple[int, ...], ...]:
        """Column indices of the nonzero entries, per row."""
        cached = self._nnz
        if cached is None:
            cached = tuple(
                tuple(j for j, e in enumerate(row) if not e.is_zero) for row in self.rows
            )
            object.__setattr__(self, "_nnz", cached)
        return cached

    @property
    def key(self) -> tuple:
        k = self._key
        if k is None:
            k = tuple(e.key for row in self.rows for e in row)
            object.__setattr__(self, "_key", k)
        return k

    # -- arithmetic -------------------------------------------------------

    def __mul__(self, other: "MatC") -> "MatC":
        if not isinstance(other, MatC):
            return NotImplemented
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        d = self.dim
        arows = self.rows
        brows = other.rows
        bnnz = other.nnz
        out = []
        for i in range(d):
            arow = arows[i]
            acc = [ZERO] * d
            for k in self.nnz[i]:
                aik = arow[k]
                brow = brows[k]
                for j in bnnz[k]:
                    acc[j] = acc[j] + aik * brow[j]
            out.append(acc)
        return MatC(out)

    def scale(self, c: CycloNum) -> "MatC":
        return MatC([[c * e for e in row] for row in self.rows])

    def add(self, other: "MatC") -> "MatC":
        return MatC(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def pow(self, k: int) -> "MatC":
        if k < 0:
            return self.inv().pow(-k)
        out = identity(self.dim)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def transpose(self) -> "MatC":
        return MatC(list(zip(*self.rows)))

    def inv(self) -> "MatC":
        """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
        d = self.dim
        work = [list(row) + [ONE if i == j else ZERO for j in range(d)] for i, row in enumerate(self.rows)]
        for col in range(d):
            piv = None
            for r in range(col, d):
                if not work[r][col].is_zero:
                    piv = r
                    break
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            work[col], work[piv] = work[piv], work[col]
            pinv = work[col][col].inv()
            work[col] = [x * pinv for x in work[col]]
            for r in range(d):
                if r != col and not work[r][col].is_zero:
                    f = work[r][col]
                    work[r] = [x - f * y for x, y in zip(work[r], work[col])]
        return MatC([row[d:] for row in work])

    def trace(self) -> CycloNum:
        t = ZERO
        for i in range(self.dim):
            t = t + self.rows[i][i]
        return t

    def char_poly(self) -> "PolyC":
        """Monic characteristic polynomial det(tI - A), ascending coefficients.

        Faddeev-LeVerrier recursion: only divisions by 1..dim occur.
        """
        d = self.dim
        coeffs = [ONE]  # c_d = 1, descending as we append
        m = identity(d)
        for k in range(1, d + 1):
            am = self * m
            c = am.trace() * rational(Fraction(-1, k))
            coeffs.append(c)
            if k < d:
                m = am.add(scalar_mat(self.dim, c))
        # coeffs = [c_d, c_{d-1}, ..., c_0] for t^d + c_{d-1}... ; reverse
        return PolyC(tuple(reversed(coeffs)))

    def det(self) -> CycloNum:
        c0 = self.char_poly().coeffs[0]
        return c0 if self.dim % 2 == 0 else -c0

    def is_scalar(self) -> Optional[CycloNum]:
        """The scalar lambda when the matrix is lambda*I, else None."""
        lam = self.rows[0][0]
        for i in range(self.dim):
            for j in range(self.dim):
                e = self.rows[i][j]
                if i == j:
                    if e is not lam:
                        return None
                elif not e.is_zero:
                    return None
        return lam

    def to_strings(self) -> list[list[str]]:
        return [[e.to_string() for e in row] for row in self.rows]

    def __repr__(self) -> str:
        body = "; ".join(",".join(e.to_string() for e in row) for row in self.rows)
        return f"MatC[{body}]"


class PolyC:
    """Polynomial with cyclotomic coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[CycloNum]):
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PolyC is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyC) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __mul__(self, other: "PolyC") -> "PolyC":
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return PolyC(out)

    def eval_matrix(self, m: MatC) -> MatC:
        """Horner evaluation of the polynomial at a matrix argument."""
        acc = scalar_mat(m.dim, self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = acc * m
            acc = acc.add(scalar_mat(m.dim, c))
        return acc

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            if k == 0:
                terms.append(c.to_string())
            else:
                mono = "t" if k == 1 else f"t^{k}"
                cs = c.to_string()
                terms.append(mono if cs == "1" else f"-{mono}" if cs == "-1" else f"({cs})*{mono}")
        return " + ".join(reversed(terms)) if terms else "0"


def identity(d: int) -> MatC:
    return MatC([[ONE if i == j else ZERO for j in range(d)] for i in range(d)])


def scalar_mat(d: int, c: CycloNum) -> MatC:
    return MatC([[c if i == j else ZERO for j in range(d)] for i in range(d)])


def diag(entries: Sequence[CycloNum]) -> MatC:
    d = len(entries)
    return MatC([[entries[i] if i == j else ZERO for j in range(d)] for i in range(d)])


def perm_mat(images: Sequence[int], dim: Optional[int] = None) -> MatC:
    """Permutation matrix P with P e_j = e_images[j]."""
    d = dim if dim is not None else len(images)
    images = list(images) + list(range(len(images), d))
    rows = [[ZERO] * d for _ in range(d)]
    for j, i in enumerate(images):
        rows[i][j] = ONE
    return MatC(rows)


def mat_from_strings(rows: Sequence[Sequence[str]]) -> MatC:
    return MatC([[parse_cyclo(s) for s in row] for row in rows])
