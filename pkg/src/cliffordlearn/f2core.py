"""Linear algebra over GF(2) on int bitsets.

A length-``n`` vector is an arbitrary-precision ``int`` whose bit ``i`` is
coordinate ``i``; a matrix is a tuple of row bitsets. Serialized forms put
index 0 first (leftmost character), so ``BitVec.from_str("100")`` has only
coordinate 0 set.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class BitVec:
    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits {self.bits:#x} do not fit in length {self.n}")

    @classmethod
    def from_str(cls, s: str) -> "BitVec":
        s = s.strip()
        if any(c not in "01" for c in s):
            raise ValueError(f"not a bit string: {s!r}")
        return cls(len(s), sum(1 << i for i, c in enumerate(s) if c == "1"))

    @classmethod
    def zeros(cls, n: int) -> "BitVec":
        return cls(n, 0)

    @classmethod
    def from_bits(cls, values: Sequence[int]) -> "BitVec":
        return cls(len(values), sum((int(v) & 1) << i for i, v in enumerate(values)))

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.n))

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"bit {i} out of range for length {self.n}")
        return (self.bits >> i) & 1

    def __iter__(self) -> Iterator[int]:
        return (self[i] for i in range(self.n))

    def __xor__(self, other: "BitVec") -> "BitVec":
        _check_len(self, other)
        return BitVec(self.n, self.bits ^ other.bits)

    def dot(self, other: "BitVec") -> int:
        _check_len(self, other)
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def with_bit(self, i: int, value: int) -> "BitVec":
        if not 0 <= i < self.n:
            raise IndexError(f"bit {i} out of range for length {self.n}")
        mask = 1 << i
        return BitVec(self.n, (self.bits | mask) if value & 1 else (self.bits & ~mask))


def _check_len(a: BitVec, b: BitVec) -> None:
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} vs {b.n}")


@dataclass(frozen=True)
class F2Matrix:
    """Row-major matrix; ``data[r]`` is the bitset of row ``r``."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError("row count does not match data")
        for r in self.data:
            if r < 0 or r >> self.cols:
                raise ValueError("row does not fit in column count")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[str | BitVec], cols: int | None = None) -> "F2Matrix":
        vecs = [BitVec.from_str(r) if isinstance(r, str) else r for r in rows]
        if cols is None:
            if not vecs:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = vecs[0].n
        if any(v.n != cols for v in vecs):
            raise ValueError("rows of unequal length")
        return cls(len(vecs), cols, tuple(v.bits for v in vecs))

    @classmethod
    def from_columns(cls, columns: Sequence[str | BitVec], rows: int | None = None) -> "F2Matrix":
        vecs = [BitVec.from_str(c) if isinstance(c, str) else c for c in columns]
        if rows is None:
            if not vecs:
                raise ValueError("cannot infer row count of an empty matrix")
            rows = vecs[0].n
        if any(v.n != rows for v in vecs):
            raise ValueError("columns of unequal length")
        return cls(len(vecs), rows, tuple(v.bits for v in vecs)).T

    @property
    def T(self) -> "F2Matrix":
        out = [0] * self.cols
        for r, row in enumerate(self.data):
            while row:
                low = row & -row
                out[low.bit_length() - 1] |= 1 << r
                row ^= low
        return F2Matrix(self.cols, self.rows, tuple(out))

    def row(self, r: int) -> BitVec:
        return BitVec(self.cols, self.data[r])

    def column(self, c: int) -> BitVec:
        if not 0 <= c < self.cols:
            raise IndexError(c)
        return BitVec(self.rows, sum(((row >> c) & 1) << r for r, row in enumerate(self.data)))

    def columns(self) -> list[BitVec]:
        t = self.T
        return [BitVec(self.rows, b) for b in t.data]

    def __getitem__(self, idx: tuple[int, int]) -> int:
        r, c = idx
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(idx)
        return (self.data[r] >> c) & 1

    def matvec(self, v: BitVec) -> BitVec:
        if v.n != self.cols:
            raise ValueError(f"vector length {v.n} != cols {self.cols}")
        return BitVec(self.rows, sum(((row & v.bits).bit_count() & 1) << r for r, row in enumerate(self.data)))

    def rank(self) -> int:
        return len(_echelon(list(self.data))[1])

    def to_strings(self) -> list[str]:
        return [str(self.row(r)) for r in range(self.rows)]


def _echelon(rows: list[int]) -> tuple[list[int], list[int]]:
    """Full (reduced) elimination of row bitsets; returns rows and pivot columns in order.

    Pivot columns are the lowest set bit of each pivot row, i.e. the
    leftmost coordinate, so this is ordinary RREF read left to right.
    """
    rows = list(rows)
    pivots: list[int] = []
    top = 0
    remaining = 0
    for r in rows:
        remaining |= r
    while remaining and top < len(rows):
        col = (remaining & -remaining).bit_length() - 1
        bit = 1 << col
        piv = next(i for i in range(top, len(rows)) if rows[i] & bit)
        rows[top], rows[piv] = rows[piv], rows[top]
        p = rows[top]
        for i in range(len(rows)):
            if i != top and rows[i] & bit:
                rows[i] ^= p
        pivots.append(col)
        top += 1
        remaining = 0
        for r in rows[top:]:
            remaining |= r
        remaining &= ~((bit << 1) - 1)
    return rows, pivots


def rref(m: F2Matrix) -> tuple[F2Matrix, list[int]]:
    rows, pivots = _echelon(list(m.data))
    return F2Matrix(m.rows, m.cols, tuple(rows)), pivots


def rank(m: F2Matrix) -> int:
    return m.rank()


def solve(m: F2Matrix, y: BitVec) -> BitVec | None:
    """Some ``b`` with ``m @ b == y``, or ``None`` when the system is inconsistent."""
    if y.n != m.rows:
        raise ValueError(f"right-hand side has length {y.n}, expected {m.rows}")
    flag = 1 << m.cols
    aug = [row | (flag if (y.bits >> r) & 1 else 0) for r, row in enumerate(m.data)]
    rows, pivots = _echelon(aug)
    if m.cols in pivots:
        return None
    b = 0
    for row, col in zip(rows, pivots):
        if row & flag:
            b |= 1 << col
    return BitVec(m.cols, b)


def nullspace(m: F2Matrix) -> F2Matrix:
    """Basis of ``{b : m @ b == 0}`` as columns of a ``cols x k`` matrix."""
    rows, pivots = _echelon(list(m.data))
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = 1 << free
        for row, col in zip(rows, pivots):
            if (row >> free) & 1:
                v |= 1 << col
        basis.append(BitVec(m.cols, v))
    if not basis:
        return F2Matrix(m.cols, 0, (0,) * m.cols)
    return F2Matrix.from_columns(basis)


class _XorBasis:
    """Incremental independence test keyed by leading (lowest) bit."""

    def __init__(self):
        self._by_pivot: dict[int, int] = {}

    def reduce(self, v: int) -> int:
        while v:
            low = v & -v
            b = self._by_pivot.get(low)
            if b is None:
                return v
            v ^= b
        return 0

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        self._by_pivot[v & -v] = v
        return True

    def __len__(self) -> int:
        return len(self._by_pivot)


def independent_subset(vectors: Sequence[BitVec], n: int | None = None) -> F2Matrix:
    """Columns form a maximal independent subset, first-seen order preserved."""
    if n is None:
        if not vectors:
            raise ValueError("cannot infer dimension of an empty vector list")
        n = vectors[0].n
    basis = _XorBasis()
    kept = []
    for v in vectors:
        if v.n != n:
            raise ValueError("vectors of unequal length")
        if basis.add(v.bits):
            kept.append(v)
    if not kept:
        return F2Matrix(n, 0, (0,) * n)
    return F2Matrix.from_columns(kept)


def orthogonal_complement(basis: F2Matrix) -> F2Matrix:
    """Basis (as columns) of vectors orthogonal to every column of ``basis``."""
    if basis.rank() != basis.cols:
        raise ValueError("basis is not of full column rank")
    return nullspace(basis.T) if basis.cols else F2Matrix.identity(basis.rows)


def span_probability(k: int, n: int) -> float:
    """Chance that ``k`` uniform vectors of ``GF(2)^n`` span the whole space."""
    if k < 0 or n < 0:
        raise ValueError("k and n must be non-negative")
    if k < n:
        return 0.0
    return prod(1.0 - 2.0 ** (j - k) for j in range(n))


def span_probability_exact(k: int, n: int):
    from fractions import Fraction

    if k < n:
        return Fraction(0)
    return prod((Fraction(1) - Fraction(2) ** (j - k) for j in range(n)), start=Fraction(1))


@dataclass(frozen=True, eq=False)
class AffineSubspace:
    """``offset + colspan(basis)`` in ``GF(2)^n``.

    Equality and hashing go through :meth:`canonical`, since many
    (basis, offset) pairs describe one subspace.
    """

    n: int
    basis: F2Matrix
    offset: BitVec

    def __post_init__(self):
        if self.basis.rows != self.n or self.offset.n != self.n:
            raise ValueError("basis/offset dimension does not match n")
        if self.basis.rank() != self.basis.cols:
            raise ValueError("basis is not of full column rank")

    @classmethod
    def from_strings(cls, basis_columns: Sequence[str], offset: str) -> "AffineSubspace":
        t = BitVec.from_str(offset)
        cols = [BitVec.from_str(c) for c in basis_columns]
        basis = F2Matrix.from_columns(cols) if cols else F2Matrix(t.n, 0, (0,) * t.n)
        return cls(t.n, basis, t)

    @classmethod
    def point(cls, t: BitVec) -> "AffineSubspace":
        return cls(t.n, F2Matrix(t.n, 0, (0,) * t.n), t)

    @classmethod
    def full(cls, n: int) -> "AffineSubspace":
        return cls(n, F2Matrix.identity(n), BitVec.zeros(n))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def directions(self) -> list[BitVec]:
        return self.basis.columns()

    def canonical(self) -> tuple[int, tuple[int, ...], int]:
        """(n, RREF direction rows, reduced offset) -- unique per subspace."""
        rows, pivots = _echelon(list(self.basis.T.data))
        t = self.offset.bits
        for row, col in zip(rows, pivots):
            if (t >> col) & 1:
                t ^= row
        return self.n, tuple(rows), t

    def canonical_form(self) -> "AffineSubspace":
        n, rows, t = self.canonical()
        basis = F2Matrix(len(rows), n, rows).T if rows else F2Matrix(n, 0, (0,) * n)
        return AffineSubspace(n, basis, BitVec(n, t))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineSubspace):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def contains(self, x: BitVec) -> bool:
        return solve(self.basis, x ^ self.offset) is not None

    def is_subset_of(self, other: "AffineSubspace") -> bool:
        return other.contains(self.offset) and all(
            solve(other.basis, v) is not None for v in self.directions()
        )

    def translate(self, c: BitVec) -> "AffineSubspace":
        return AffineSubspace(self.n, self.basis, self.offset ^ c)

    def element(self, coeffs: int) -> BitVec:
        """``basis @ coeffs + offset`` with ``coeffs`` an ``m``-bit integer."""
        v = self.offset.bits
        for j, col in enumerate(self._column_bits()):
            if (coeffs >> j) & 1:
                v ^= col
        return BitVec(self.n, v)

    def elements(self) -> Iterator[BitVec]:
        cols = self._column_bits()
        # Gray-code walk: one XOR per element
        v = self.offset.bits
        yield BitVec(self.n, v)
        for i in range(1, 1 << len(cols)):
            v ^= cols[(i & -i).bit_length() - 1]
            yield BitVec(self.n, v)

    def element_ints(self):
        """All members as a numpy int64 array (needs ``n <= 62``)."""
        import numpy as np

        if self.n > 62:
            raise ValueError("element_ints needs n <= 62")
        out = np.array([self.offset.bits], dtype=np.int64)
        for col in self._column_bits():
            out = np.concatenate([out, out ^ np.int64(col)])
        return out

    def _column_bits(self) -> list[int]:
        return list(self.basis.T.data)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "basis": [str(c) for c in self.directions()],
            "offset": str(self.offset),
            "m": self.dim,
        }

    def __repr__(self) -> str:
        return f"AffineSubspace(n={self.n}, basis={[str(c) for c in self.directions()]}, offset='{self.offset}')"


def vectors_from_ints(n: int, values: Iterable[int]) -> list[BitVec]:
    return [BitVec(n, int(v)) for v in values]
