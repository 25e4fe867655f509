"""Upper unitriangular integer matrices and their congruence reductions.

UTMatrix carries elements of torsion-free nilpotent matrix groups exactly;
ResidueUT carries their images modulo p^k, which are elements of finite
p-groups.  Entrywise reduction is a group homomorphism, so the reductions
realize the whole congruence tower of finite p-quotients.
"""

from __future__ import annotations

from .errors import DimensionMismatch


def _matmul(a, b, n, mod=None):
    out = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(n):
            s = sum(ai[k] * b[k][j] for k in range(i, j + 1)) if j >= i else 0
            row.append(s % mod if mod else s)
        out.append(tuple(row))
    return tuple(out)


def _inverse(rows, n, mod=None):
    # u = I + N with N strictly upper, so u^-1 = I - N + N^2 - ... +- N^(n-1)
    nil = tuple(
        tuple(rows[i][j] if j > i else 0 for j in range(n)) for i in range(n)
    )
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    acc = ident
    power = ident
    sign = 1
    for _ in range(1, n):
        power = _matmul(power, nil, n, mod)
        sign = -sign
        acc = tuple(
            tuple(
                (acc[i][j] + sign * power[i][j]) % mod if mod else acc[i][j] + sign * power[i][j]
                for j in range(n)
            )
            for i in range(n)
        )
    return acc


def _validate_unitriangular(rows, n, mod=None):
    for i in range(n):
        if len(rows[i]) != n:
            raise DimensionMismatch("matrix is not square")
        for j in range(n):
            v = rows[i][j]
            if j < i and v != 0:
                raise ValueError(f"entry ({i},{j}) below the diagonal is {v}, expected 0")
            if j == i and v != 1:
                raise ValueError(f"diagonal entry ({i},{i}) is {v}, expected 1")
            if mod and not 0 <= v < mod:
                raise ValueError(f"entry ({i},{j}) = {v} not reduced into [0, {mod})")


class UTMatrix:
    """Immutable n x n upper unitriangular matrix over the integers."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        _validate_unitriangular(rows, n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("UTMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "UTMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_entries(cls, n: int, entries: dict) -> "UTMatrix":
        """Identity plus the given strictly-upper entries {(i, j): value}."""
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j), v in entries.items():
            if not 0 <= i < j < n:
                raise ValueError(f"({i},{j}) is not a strictly upper position for n={n}")
            rows[i][j] = int(v)
        return cls(rows)

    def __getitem__(self, pos):
        i, j = pos
        return self.rows[i][j]

    def __mul__(self, other: "UTMatrix") -> "UTMatrix":
        if not isinstance(other, UTMatrix):
            return NotImplemented
        if self.n != other.n:
            raise DimensionMismatch(f"dimension mismatch: {self.n} vs {other.n}")
        out = object.__new__(UTMatrix)
        object.__setattr__(out, "n", self.n)
        object.__setattr__(out, "rows", _matmul(self.rows, other.rows, self.n))
        return out

    def inverse(self) -> "UTMatrix":
        out = object.__new__(UTMatrix)
        object.__setattr__(out, "n", self.n)
        object.__setattr__(out, "rows", _inverse(self.rows, self.n))
        return out

    def __pow__(self, e: int) -> "UTMatrix":
        if e < 0:
            return self.inverse() ** (-e)
        result = UTMatrix.identity(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_identity(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.n) for j in range(i + 1, self.n))

    def strict_upper_items(self):
        """Nonzero strictly-upper entries as ((i, j), value) pairs, row-major."""
        return tuple(
            ((i, j), self.rows[i][j])
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.rows[i][j]
        )

    def __eq__(self, other):
        return isinstance(other, UTMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"UTMatrix({[list(r) for r in self.rows]!r})"


def commutator(x: UTMatrix, y: UTMatrix) -> UTMatrix:
    """The commutator x^-1 y^-1 x y (so that g^-1 x g = x * commutator(x, g))."""
    if x.n != y.n:
        raise DimensionMismatch(f"dimension mismatch: {x.n} vs {y.n}")
    return x.inverse() * y.inverse() * x * y


class ResidueUT:
    """Unitriangular matrix with entries reduced into [0, p^k)."""

    __slots__ = ("n", "p", "k", "mod", "rows")

    def __init__(self, rows, p: int, k: int):
        if k < 1:
            raise ValueError(f"level must be >= 1, got {k}")
        mod = p**k
        rows = tuple(tuple(int(x) % mod for x in r) for r in rows)
        n = len(rows)
        _validate_unitriangular(rows, n, mod)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "mod", mod)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("ResidueUT is immutable")

    @classmethod
    def identity(cls, n: int, p: int, k: int) -> "ResidueUT":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], p, k)

    def _wrap(self, rows) -> "ResidueUT":
        out = object.__new__(ResidueUT)
        object.__setattr__(out, "n", self.n)
        object.__setattr__(out, "p", self.p)
        object.__setattr__(out, "k", self.k)
        object.__setattr__(out, "mod", self.mod)
        object.__setattr__(out, "rows", rows)
        return out

    def _check_compatible(self, other: "ResidueUT"):
        if (self.n, self.p, self.k) != (other.n, other.p, other.k):
            raise DimensionMismatch(
                f"incompatible residue matrices: "
                f"(n,p,k)=({self.n},{self.p},{self.k}) vs ({other.n},{other.p},{other.k})"
            )

    def __getitem__(self, pos):
        i, j = pos
        return self.rows[i][j]

    def __mul__(self, other: "ResidueUT") -> "ResidueUT":
        if not isinstance(other, ResidueUT):
            return NotImplemented
        self._check_compatible(other)
        return self._wrap(_matmul(self.rows, other.rows, self.n, self.mod))

    def inverse(self) -> "ResidueUT":
        return self._wrap(_inverse(self.rows, self.n, self.mod))

    def __pow__(self, e: int) -> "ResidueUT":
        if e < 0:
            return self.inverse() ** (-e)
        result = ResidueUT.identity(self.n, self.p, self.k)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_identity(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.n) for j in range(i + 1, self.n))

    def upper_entries(self) -> tuple:
        return tuple(
            self.rows[i][j] for i in range(self.n) for j in range(i + 1, self.n)
        )

    def __eq__(self, other):
        return (
            isinstance(other, ResidueUT)
            and (self.n, self.p, self.k) == (other.n, other.p, other.k)
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.p, self.k, self.rows))

    def __repr__(self):
        return f"ResidueUT({[list(r) for r in self.rows]!r}, p={self.p}, k={self.k})"


def reduce_mod(u: UTMatrix, p: int, k: int) -> ResidueUT:
    """Entrywise reduction modulo p^k; a homomorphism onto a finite p-group."""
    return ResidueUT(u.rows, p, k)


def residue_order_exponent(r: ResidueUT) -> int:
    """Least s with r**(p**s) equal to the identity.

    Always finite: the ambient group of residue matrices is a finite p-group.
    """
    s = 0
    x = r
    bound = r.k * r.n + 1
    while not x.is_identity():
        x = x**r.p
        s += 1
        if s > bound:
            raise RuntimeError("p-power order not found within the theoretical bound")
    return s
