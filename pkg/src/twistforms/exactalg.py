"""Exact dense linear algebra over prime fields GF(q) and the rationals.

Matrices are immutable after construction.  Prime-field matrices are stored
as reduced numpy int64 arrays; rational matrices as tuples of Fractions.
Pivoting is always first-nonzero, top-to-bottom / left-to-right, so every
elimination result is deterministic across platforms and thread schedules.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

__all__ = [
    "ExactMatrix",
    "SnakeLedger",
    "is_prime",
    "snake_check",
]


def is_prime(q: int) -> bool:
    """Deterministic Miller-Rabin, valid for all q < 3.3e24."""
    if q < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if q % sp == 0:
            return q == sp
    d, s = q - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, q)
        if x in (1, q - 1):
            continue
        for _ in range(s - 1):
            x = x * x % q
            if x == q - 1:
                break
        else:
            return False
    return True


def _canon_rational(x) -> Fraction | int:
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


class ExactMatrix:
    """Dense matrix over GF(q) (``q`` a prime) or the rationals (``q=None``)."""

    __slots__ = ("rows", "cols", "q", "_a", "_rr")

    def __init__(self, rows, cols, data, q=None):
        self.rows = int(rows)
        self.cols = int(cols)
        self.q = q
        self._rr = None  # cached (rref, pivot columns)
        if q is not None:
            if not is_prime(q):
                raise ValueError("modulus %r is not prime" % (q,))
            a = np.array(data, dtype=np.int64).reshape(self.rows, self.cols) % q
            a.setflags(write=False)
            self._a = a
        else:
            mat = []
            for row in data:
                mat.append(tuple(_canon_rational(x) for x in row))
                if len(mat[-1]) != self.cols:
                    raise ValueError("ragged row in rational matrix")
            if len(mat) != self.rows:
                raise ValueError("row count mismatch")
            self._a = tuple(mat)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_rows(cls, data, q=None):
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, data, q=q)

    @classmethod
    def zeros(cls, rows, cols, q=None):
        return cls(rows, cols, [[0] * cols for _ in range(rows)], q=q)

    @classmethod
    def identity(cls, n, q=None):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)], q=q)

    # -- basic access --------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entry(self, i, j):
        if self.q is not None:
            return int(self._a[i, j])
        return self._a[i][j]

    def row_list(self):
        """Entries as a list of row lists (ints for GF(q), Fraction/int else)."""
        if self.q is not None:
            return [[int(x) for x in row] for row in self._a]
        return [list(row) for row in self._a]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.q != other.q or self.shape != other.shape:
            return False
        if self.q is not None:
            return bool(np.array_equal(self._a, other._a))
        return self._a == other._a

    def __hash__(self):
        return hash((self.q, self.rows, self.cols))

    def is_zero(self):
        if self.q is not None:
            return not self._a.any()
        return all(x == 0 for row in self._a for x in row)

    def __repr__(self):
        tag = "Q" if self.q is None else "GF(%d)" % self.q
        return "ExactMatrix(%dx%d over %s)" % (self.rows, self.cols, tag)

    # -- arithmetic ----------------------------------------------------------

    def transpose(self):
        if self.q is not None:
            return ExactMatrix(self.cols, self.rows, self._a.T, q=self.q)
        data = [[self._a[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return ExactMatrix(self.cols, self.rows, data, q=None)

    def __matmul__(self, other):
        if self.q != other.q:
            raise ValueError("field mismatch in matrix product")
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        if self.q is not None:
            q = self.q
            if self.cols and q * q * self.cols >= 2**63:
                a = self._a.astype(object)
                prod = (a @ other._a.astype(object)) % q
            else:
                prod = (self._a @ other._a) % q
            return ExactMatrix(self.rows, other.cols, prod, q=q)
        b = other._a
        data = []
        for row in self._a:
            data.append(
                [sum(row[k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            )
        return ExactMatrix(self.rows, other.cols, data, q=None)

    def __sub__(self, other):
        if self.q != other.q or self.shape != other.shape:
            raise ValueError("shape/field mismatch in subtraction")
        if self.q is not None:
            return ExactMatrix(self.rows, self.cols, (self._a - other._a) % self.q, q=self.q)
        data = [
            [self._a[i][j] - other._a[i][j] for j in range(self.cols)]
            for i in range(self.rows)
        ]
        return ExactMatrix(self.rows, self.cols, data, q=None)

    def augment(self, other):
        """Horizontal concatenation [self | other]."""
        if self.q != other.q or self.rows != other.rows:
            raise ValueError("shape/field mismatch in augment")
        if self.q is not None:
            return ExactMatrix(
                self.rows, self.cols + other.cols, np.hstack([self._a, other._a]), q=self.q
            )
        data = [list(self._a[i]) + list(other._a[i]) for i in range(self.rows)]
        return ExactMatrix(self.rows, self.cols + other.cols, data, q=None)

    def columns(self, idx):
        """Submatrix of the selected columns, in the given order."""
        if self.q is not None:
            return ExactMatrix(self.rows, len(idx), self._a[:, list(idx)], q=self.q)
        data = [[self._a[i][j] for j in idx] for i in range(self.rows)]
        return ExactMatrix(self.rows, len(idx), data, q=None)

    # -- elimination ---------------------------------------------------------

    def _rref(self):
        """Fully reduced row echelon form and pivot columns (cached)."""
        if self._rr is not None:
            return self._rr
        if self.q is not None:
            r = self._rref_mod()
        else:
            r = self._rref_rational()
        self._rr = r
        return r

    def _rref_mod(self):
        q = self.q
        a = self._a.copy()
        m, n = a.shape
        pivots = []
        r = 0
        for c in range(n):
            if r == m:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                a[[r, i]] = a[[i, r]]
            inv = pow(int(a[r, c]), q - 2, q)
            a[r] = a[r] * inv % q
            others = np.nonzero(a[:, c])[0]
            others = others[others != r]
            if others.size:
                a[others] = (a[others] - np.outer(a[others, c], a[r])) % q
            pivots.append(c)
            r += 1
        return a, pivots

    def _rref_rational(self):
        a = [list(row) for row in self._a]
        m, n = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(n):
            if r == m:
                break
            for i in range(r, m):
                if a[i][c] != 0:
                    break
            else:
                continue
            if i != r:
                a[r], a[i] = a[i], a[r]
            piv = a[r][c]
            if piv != 1:
                a[r] = [_canon_rational(Fraction(x) / piv) for x in a[r]]
            for i in range(m):
                if i != r and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [
                        _canon_rational(a[i][j] - f * a[r][j]) for j in range(n)
                    ]
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self) -> int:
        """Rank over the matrix's field.

        GF(q) uses ordinary row reduction; the rational path clears
        denominators and runs fraction-free (Bareiss) elimination so all
        intermediate values stay integral.
        """
        if self.q is not None:
            if self._rr is not None:
                return len(self._rr[1])
            return len(self._rref_mod()[1])
        return self._rank_bareiss()

    def _rank_bareiss(self) -> int:
        rows = []
        for row in self._a:
            den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
            rows.append([int(x * den) for x in row])
        m, n = self.rows, self.cols
        prev = 1
        r = 0
        for c in range(n):
            if r == m:
                break
            for i in range(r, m):
                if rows[i][c] != 0:
                    break
            else:
                continue
            if i != r:
                rows[r], rows[i] = rows[i], rows[r]
            piv = rows[r][c]
            # Every row below must be updated, zero pivot-column entry or
            # not, so the exact division by the previous pivot stays exact.
            for i in range(r + 1, m):
                fi = rows[i][c]
                rows[i] = [
                    (piv * rows[i][j] - fi * rows[r][j]) // prev for j in range(n)
                ]
            prev = piv
            r += 1
        return r

    def kernel_basis(self) -> "ExactMatrix":
        """Basis of the right kernel, one basis vector per column.

        Column count is ``cols - rank``.  Rational kernels are rescaled to
        coprime integer columns with positive leading entry, so the result
        is canonical for either field.
        """
        rr, pivots = self._rref()
        free = [c for c in range(self.cols) if c not in set(pivots)]
        if self.q is not None:
            q = self.q
            ker = np.zeros((self.cols, len(free)), dtype=np.int64)
            for k, f in enumerate(free):
                ker[f, k] = 1
                for j, pc in enumerate(pivots):
                    ker[pc, k] = (-int(rr[j, f])) % q
            return ExactMatrix(self.cols, len(free), ker, q=q)
        cols = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for j, pc in enumerate(pivots):
                v[pc] = -Fraction(rr[j][f])
            den = lcm(*(x.denominator for x in v))
            w = [int(x * den) for x in v]
            g = 0
            for x in w:
                g = gcd(g, x)
            if g > 1:
                w = [x // g for x in w]
            lead = next((x for x in w if x != 0), 1)
            if lead < 0:
                w = [-x for x in w]
            cols.append(w)
        data = [[cols[k][i] for k in range(len(free))] for i in range(self.cols)]
        return ExactMatrix(self.cols, len(free), data, q=None)

    def solve(self, rhs: "ExactMatrix"):
        """One solution X of self @ X = rhs, or None if inconsistent.

        Free variables are set to zero, so the solution is deterministic.
        """
        if self.q != rhs.q or self.rows != rhs.rows:
            raise ValueError("shape/field mismatch in solve")
        aug = self.augment(rhs)
        rr, pivots = aug._rref()
        if any(p >= self.cols for p in pivots):
            return None
        if self.q is not None:
            x = np.zeros((self.cols, rhs.cols), dtype=np.int64)
            for j, pc in enumerate(pivots):
                x[pc] = rr[j, self.cols :]
            return ExactMatrix(self.cols, rhs.cols, x, q=self.q)
        x = [[Fraction(0)] * rhs.cols for _ in range(self.cols)]
        for j, pc in enumerate(pivots):
            x[pc] = [Fraction(v) for v in rr[j][self.cols :]]
        return ExactMatrix(self.cols, rhs.cols, x, q=None)


# -- snake lemma ------------------------------------------------------------


@dataclass(frozen=True)
class SnakeLedger:
    """Kernel/cokernel dimensions of the three vertical maps plus the
    exactness verdict for the induced six-term sequence."""

    ker1: int
    ker2: int
    ker3: int
    coker1: int
    coker2: int
    coker3: int
    exact: bool

    def alternating_sum(self) -> int:
        return self.ker1 - self.ker2 + self.ker3 - self.coker1 + self.coker2 - self.coker3


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


def snake_check(i_x, q_x, i_y, q_y, f1, f2, f3) -> SnakeLedger:
    """Verify the snake lemma for two short exact rows and three verticals.

    The rows are 0 -> X1 -i_x-> X2 -q_x-> X3 -> 0 and likewise for Y; the
    verticals are f1: X1->Y1, f2: X2->Y2, f3: X3->Y3.  Rejects inputs that
    are not short exact or whose squares do not commute, naming the failing
    condition.  Exactness of the six-term kernel/cokernel sequence is
    certified through rank identities on lifted representatives; the
    connecting map is never materialized.
    """
    _require(q_x.cols == i_x.rows, "top row: shape mismatch between inclusion and quotient")
    _require(q_y.cols == i_y.rows, "bottom row: shape mismatch between inclusion and quotient")
    _require(
        f1.cols == i_x.cols and f1.rows == i_y.cols, "f1 does not match the row end terms"
    )
    _require(
        f2.cols == i_x.rows and f2.rows == i_y.rows, "f2 does not match the row middle terms"
    )
    _require(
        f3.cols == q_x.rows and f3.rows == q_y.rows, "f3 does not match the row end terms"
    )

    _require(i_x.rank() == i_x.cols, "top row: inclusion not injective")
    _require(q_x.rank() == q_x.rows, "top row: quotient not surjective")
    _require((q_x @ i_x).is_zero(), "top row: quotient composed with inclusion nonzero")
    _require(i_x.rank() + q_x.rank() == i_x.rows, "top row: not exact at the middle term")
    _require(i_y.rank() == i_y.cols, "bottom row: inclusion not injective")
    _require(q_y.rank() == q_y.rows, "bottom row: quotient not surjective")
    _require((q_y @ i_y).is_zero(), "bottom row: quotient composed with inclusion nonzero")
    _require(i_y.rank() + q_y.rank() == i_y.rows, "bottom row: not exact at the middle term")

    _require(f2 @ i_x == i_y @ f1, "left square does not commute")
    _require(f3 @ q_x == q_y @ f2, "right square does not commute")

    r1, r2, r3 = f1.rank(), f2.rank(), f3.rank()
    k1, k2, k3 = f1.cols - r1, f2.cols - r2, f3.cols - r3
    c1, c2, c3 = f1.rows - r1, f2.rows - r2, f3.rows - r3

    # Exactness at ker(f2): the image of ker(f1) fills ker(f2) \cap ker(q_x).
    ker2 = f2.kernel_basis()
    im_in_ker3 = (q_x @ ker2).rank()
    ok_k2 = (k2 - im_in_ker3) == k1

    # Image of the connecting map: lift ker(f3) through q_x, push by f2,
    # pull back through i_y, measure modulo im(f1).
    lifted = (f3 @ q_x).kernel_basis()
    pushed = f2 @ lifted
    pulled = i_y.solve(pushed)
    _require(pulled is not None, "pushforward of lifted kernel escapes the bottom inclusion")
    im_delta = pulled.augment(f1).rank() - r1

    ok_k3 = (k3 - im_delta) == im_in_ker3

    # Induced maps on cokernels, via ranks of augmented matrices.
    im_c1_in_c2 = i_y.augment(f2).rank() - r2
    im_c2_in_c3 = q_y.augment(f3).rank() - r3
    ok_c1 = im_delta == c1 - im_c1_in_c2
    ok_c2 = (c2 - im_c2_in_c3) == im_c1_in_c2
    ok_c3 = im_c2_in_c3 == c3

    return SnakeLedger(k1, k2, k3, c1, c2, c3, ok_k2 and ok_k3 and ok_c1 and ok_c2 and ok_c3)
