"""Exact integer linear algebra: Hermite/Smith normal forms, lattices, modular arithmetic.

Everything works over plain Python integers, so results are exact at any
magnitude.  Normal forms return the unimodular transforms alongside the
canonical matrix, which lets callers certify every answer (membership
coefficients, divisibility failures) instead of trusting the algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, NotCoprime, NotInLattice


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a modulo m, in [0, m); in [1, m) whenever m >= 2.

    Raises NotCoprime when gcd(a, m) > 1.
    """
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    g, x, _ = xgcd(a, m)
    if g != 1:
        raise NotCoprime(f"gcd({a}, {m}) = {g} > 1")
    return x % m


def prime_power_exponent(n: int, p: int) -> int | None:
    """Return e with n = p**e, or None when n is not a power of p."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e if n == 1 else None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def smallest_prime_excluding(p: int) -> int:
    q = 2
    while True:
        if q != p and is_prime(q):
            return q
        q += 1


def valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n; n must be nonzero."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


class IntMatrix:
    """Immutable integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    def __setattr__(self, name, value):
        if hasattr(self, "entries"):
            raise AttributeError("IntMatrix is immutable")
        object.__setattr__(self, name, value)

    @classmethod
    def from_rows(cls, rows_list) -> "IntMatrix":
        rows_list = [list(r) for r in rows_list]
        r = len(rows_list)
        c = len(rows_list[0]) if r else 0
        if any(len(row) != c for row in rows_list):
            raise DimensionMismatch("ragged rows")
        return cls(r, c, [e for row in rows_list for e in row])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            [self.at(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.at(k, j) for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, vec) -> tuple:
        """Matrix-vector product."""
        vec = tuple(vec)
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        return tuple(
            sum(self.at(i, k) * vec[k] for k in range(self.cols)) for i in range(self.rows)
        )

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})"


def det(a: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise DimensionMismatch("determinant needs a square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = a.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _clear_pair(a: int, b: int) -> tuple[int, int, int, int]:
    """Coefficients (x, y, a_, b_) of a determinant-1 transform killing b.

    The matrix [[x, y], [-b_, a_]] sends the pair (a, b) to (g, 0) with
    g = gcd(a, b) > 0.  When a already divides b the transform is a plain
    subtraction (y = 0), so the vector carrying a never absorbs the vector
    carrying b; this is what keeps the elimination loops from cycling.
    Requires a != 0.
    """
    if b % a == 0:
        q = b // a
        return (1, 0, 1, q) if a > 0 else (-1, 0, -1, -q)
    g, x, y = xgcd(a, b)
    return x, y, a // g, b // g


def _row_hnf(mat: list[list[int]], m: int, n: int) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite reduction; returns (H, U) with U @ mat = H, det U = +-1."""
    h = [list(r) for r in mat]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, m) if h[i][j]), None)
        if piv is None:
            continue
        if piv != r:
            h[r], h[piv] = h[piv], h[r]
            u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, m):
            if h[i][j] == 0:
                continue
            x, y, a_, b_ = _clear_pair(h[r][j], h[i][j])
            h[r], h[i] = (
                [x * p + y * q for p, q in zip(h[r], h[i])],
                [-b_ * p + a_ * q for p, q in zip(h[r], h[i])],
            )
            u[r], u[i] = (
                [x * p + y * q for p, q in zip(u[r], u[i])],
                [-b_ * p + a_ * q for p, q in zip(u[r], u[i])],
            )
        if h[r][j] < 0:
            h[r] = [-e for e in h[r]]
            u[r] = [-e for e in u[r]]
        for i in range(r):
            q = h[i][j] // h[r][j]
            if q:
                h[i] = [p - q * t for p, t in zip(h[i], h[r])]
                u[i] = [p - q * t for p, t in zip(u[i], u[r])]
        r += 1
        if r == m:
            break
    return h, u


def hnf(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite normal form.

    Returns (H, U) with A @ U = H and U unimodular.  H is in column echelon
    form: pivot rows strictly increase column by column, zero columns trail,
    pivots are positive, entries to the right of a pivot in its row are zero
    and entries to the left are reduced into [0, pivot).
    """
    bt = a.transpose().to_rows()
    h_t, u_t = _row_hnf(bt, a.cols, a.rows)
    h = IntMatrix.from_rows(h_t).transpose() if a.cols else IntMatrix.zero(a.rows, 0)
    u = IntMatrix.from_rows(u_t).transpose() if a.cols else IntMatrix.zero(0, 0)
    return h, u


def is_column_hnf(h: IntMatrix) -> bool:
    """Check the canonical-form predicate that hnf() guarantees."""
    last_pivot_row = -1
    seen_zero_col = False
    for j in range(h.cols):
        col = h.col(j)
        nz = next((i for i, e in enumerate(col) if e), None)
        if nz is None:
            seen_zero_col = True
            continue
        if seen_zero_col or nz <= last_pivot_row:
            return False
        piv = col[nz]
        if piv <= 0:
            return False
        for j2 in range(h.cols):
            v = h.at(nz, j2)
            if j2 < j and not 0 <= v < piv:
                return False
            if j2 > j and v != 0:
                return False
        last_pivot_row = nz
    return True


def snf(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form.

    Returns (D, U, V) with U @ A @ V = D, U and V unimodular, D diagonal with
    nonnegative entries d1 | d2 | ... along the diagonal.
    """
    m, n = a.rows, a.cols
    d = a.to_rows()
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_combine(r0, r1, x, y, a_, b_):
        d[r0], d[r1] = (
            [x * p + y * q for p, q in zip(d[r0], d[r1])],
            [-b_ * p + a_ * q for p, q in zip(d[r0], d[r1])],
        )
        u[r0], u[r1] = (
            [x * p + y * q for p, q in zip(u[r0], u[r1])],
            [-b_ * p + a_ * q for p, q in zip(u[r0], u[r1])],
        )

    def col_combine(c0, c1, x, y, a_, b_):
        for row in d:
            p, q = row[c0], row[c1]
            row[c0], row[c1] = x * p + y * q, -b_ * p + a_ * q
        for row in v:
            p, q = row[c0], row[c1]
            row[c0], row[c1] = x * p + y * q, -b_ * p + a_ * q

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero magnitude in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            d[t], d[bi] = d[bi], d[t]
            u[t], u[bi] = u[bi], u[t]
        if bj != t:
            for row in d:
                row[t], row[bj] = row[bj], row[t]
            for row in v:
                row[t], row[bj] = row[bj], row[t]
        while True:
            for i in range(t + 1, m):
                if d[i][t]:
                    row_combine(t, i, *_clear_pair(d[t][t], d[i][t]))
            for j in range(t + 1, n):
                if d[t][j]:
                    col_combine(t, j, *_clear_pair(d[t][t], d[t][j]))
            if all(d[i][t] == 0 for i in range(t + 1, m)) and all(
                d[t][j] == 0 for j in range(t + 1, n)
            ):
                bad = next(
                    (
                        (i, j)
                        for i in range(t + 1, m)
                        for j in range(t + 1, n)
                        if d[i][j] % d[t][t]
                    ),
                    None,
                )
                if bad is None:
                    break
                # pull the offending row up so the pivot absorbs the gcd
                d[t] = [p + q for p, q in zip(d[t], d[bad[0]])]
                u[t] = [p + q for p, q in zip(u[t], u[bad[0]])]
        if d[t][t] < 0:
            d[t] = [-e for e in d[t]]
            u[t] = [-e for e in u[t]]
        t += 1
    return IntMatrix.from_rows(d), IntMatrix.from_rows(u), IntMatrix.from_rows(v)


@dataclass(frozen=True)
class Membership:
    """Decision with certificate: basis @ coefficients = target when member."""

    member: bool
    coefficients: tuple | None = None


@dataclass(frozen=True)
class PowerSolution:
    """Solvability of e*z = target inside a lattice; root is z's ambient vector."""

    solvable: bool
    root: tuple | None = None


class Lattice:
    """Integer lattice given by a (possibly redundant) generating set.

    Generators are column vectors in Z^ambient_rank.  The canonical basis is
    the column Hermite normal form with zero columns dropped, which makes
    lattice equality decidable and canonicalization idempotent.
    """

    __slots__ = ("ambient_rank", "basis", "_canon")

    def __init__(self, ambient_rank: int, basis=()):
        basis = tuple(tuple(int(x) for x in col) for col in basis)
        for col in basis:
            if len(col) != ambient_rank:
                raise DimensionMismatch(
                    f"basis vector of length {len(col)} in ambient rank {ambient_rank}"
                )
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, name, value):
        raise AttributeError("Lattice is immutable")

    def matrix(self) -> IntMatrix:
        """Generators as columns of an ambient_rank x len(basis) matrix."""
        return IntMatrix(
            self.ambient_rank,
            len(self.basis),
            [col[i] for i in range(self.ambient_rank) for col in self.basis],
        )

    def canonical(self) -> "Lattice":
        if self._canon is None:
            if not self.basis:
                canon = self
            else:
                h, _ = hnf(self.matrix())
                cols = [h.col(j) for j in range(h.cols)]
                cols = [c for c in cols if any(c)]
                canon = Lattice(self.ambient_rank, cols)
            object.__setattr__(self, "_canon", canon)
        return self._canon

    @property
    def rank(self) -> int:
        return len(self.canonical().basis)

    def scale(self, e: int) -> "Lattice":
        if e < 1:
            raise ValueError(f"scale factor must be >= 1, got {e}")
        return Lattice(self.ambient_rank, tuple(tuple(e * x for x in c) for c in self.basis))

    def same_lattice(self, other: "Lattice") -> bool:
        return (
            self.ambient_rank == other.ambient_rank
            and self.canonical().basis == other.canonical().basis
        )

    def contains(self, v) -> Membership:
        """Decide membership; certificate coefficients refer to the original generators."""
        v = tuple(int(x) for x in v)
        if len(v) != self.ambient_rank:
            raise DimensionMismatch("vector length does not match ambient rank")
        if not self.basis:
            return Membership(True, ()) if not any(v) else Membership(False)
        h, u = hnf(self.matrix())
        pivots = []
        for j in range(h.cols):
            col = h.col(j)
            nz = next((i for i, e in enumerate(col) if e), None)
            if nz is not None:
                pivots.append((nz, j))
        y = [0] * h.cols
        resid = list(v)
        pi = 0
        for i in range(self.ambient_rank):
            if pi < len(pivots) and pivots[pi][0] == i:
                _, pcol = pivots[pi]
                piv = h.at(i, pcol)
                if resid[i] % piv:
                    return Membership(False)
                q = resid[i] // piv
                if q:
                    for r2 in range(i, self.ambient_rank):
                        resid[r2] -= q * h.at(r2, pcol)
                y[pcol] = q
                pi += 1
            elif resid[i]:
                return Membership(False)
        return Membership(True, u.apply(y))


def lattice_contains(lattice: Lattice, v) -> Membership:
    """Functional alias for Lattice.contains."""
    return lattice.contains(v)


def power_solvable(z1: Lattice, c_vec, e: int) -> PowerSolution:
    """Decide whether e*z = c has a solution z inside the lattice z1.

    c_vec must itself lie in z1 (the caller's precondition); NotInLattice is
    raised otherwise.  On success the root's ambient coordinates are returned.
    """
    if e < 1:
        raise ValueError(f"exponent must be >= 1, got {e}")
    c_vec = tuple(int(x) for x in c_vec)
    if not z1.contains(c_vec).member:
        raise NotInLattice(f"{c_vec} is not in the given lattice")
    if not z1.scale(e).contains(c_vec).member:
        return PowerSolution(False)
    return PowerSolution(True, tuple(x // e for x in c_vec))
