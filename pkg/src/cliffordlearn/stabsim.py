"""Stabilizer-tableau simulation of brickwork Clifford circuits.

Tableau layout follows Aaronson & Gottesman: rows ``0..n-1`` are
destabilizers, rows ``n..2n-1`` stabilizers; each row is a Hermitian Pauli
with bits ``(x, z)`` per qubit (``x=z=1`` is ``Y``) and a sign bit.

Two-qubit gates are stored as lookup tables over the 16 local Pauli
patterns ``(x_i, z_i, x_j, z_j)``, so applying a gate to a whole tableau,
or to a batch of tableaus, is a single gather.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cache
from typing import Iterable, Sequence

import numpy as np

from .f2core import AffineSubspace, BitVec, F2Matrix, _XorBasis, nullspace, solve

NUM_CLIFFORD2 = 11520

_PAULI_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_PAULI = {v: k for k, v in _PAULI_BITS.items()}


# --- two-qubit Clifford group -------------------------------------------------


def _local_omega(u: int, v: int) -> int:
    """Symplectic form on 4-bit patterns ordered (x_i, z_i, x_j, z_j), MSB first."""
    ux_i, uz_i, ux_j, uz_j = (u >> 3) & 1, (u >> 2) & 1, (u >> 1) & 1, u & 1
    vx_i, vz_i, vx_j, vz_j = (v >> 3) & 1, (v >> 2) & 1, (v >> 1) & 1, v & 1
    return (ux_i & vz_i) ^ (uz_i & vx_i) ^ (ux_j & vz_j) ^ (uz_j & vx_j)


def _pattern_to_masks(p: int) -> tuple[int, int]:
    """4-bit local pattern -> (xmask, zmask) with bit 0 = qubit i, bit 1 = qubit j."""
    return ((p >> 3) & 1) | (((p >> 1) & 1) << 1), ((p >> 2) & 1) | ((p & 1) << 1)


def _masks_to_pattern(x: int, z: int) -> int:
    return ((x & 1) << 3) | ((z & 1) << 2) | (((x >> 1) & 1) << 1) | ((z >> 1) & 1)


def _pmul(a: tuple[int, int, int], b: tuple[int, int, int]) -> tuple[int, int, int]:
    """Product of ``i^e X^x Z^z`` operators."""
    x1, z1, e1 = a
    x2, z2, e2 = b
    return x1 ^ x2, z1 ^ z2, (e1 + e2 + 2 * (z1 & x2).bit_count()) % 4


@cache
def _symplectic_columns() -> np.ndarray:
    """All 720 symplectic 4x4 matrices, each as its 4 column patterns."""
    # columns are the images of X_i, Z_i, X_j, Z_j
    found = []
    for c0 in range(1, 16):
        for c1 in range(1, 16):
            if _local_omega(c0, c1) != 1:
                continue
            for c2 in range(1, 16):
                if _local_omega(c0, c2) or _local_omega(c1, c2):
                    continue
                for c3 in range(1, 16):
                    if _local_omega(c2, c3) != 1 or _local_omega(c0, c3) or _local_omega(c1, c3):
                        continue
                    found.append((c0, c1, c2, c3))
    return np.array(found, dtype=np.uint8)


def _encode(cols: Sequence[int], phases: Sequence[int]) -> int:
    # symplectic matrix row-major (entry (r, c) = bit r of column c, r=0 is x_i), then phase bits
    enc = 0
    for r in range(4):
        for c in range(4):
            enc = (enc << 1) | ((int(cols[c]) >> (3 - r)) & 1)
    for p in phases:
        enc = (enc << 1) | (int(p) & 1)
    return enc


@cache
def _gate_catalog() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray, dict[int, int]]:
    """(encodings, columns, phases, table_out, table_flip, enc->index), sorted by encoding."""
    sym = _symplectic_columns()
    entries = []
    for cols in sym:
        for ph in range(16):
            phases = tuple((ph >> (3 - c)) & 1 for c in range(4))
            entries.append((_encode(cols, phases), tuple(int(c) for c in cols), phases))
    entries.sort()
    encs = np.array([e[0] for e in entries], dtype=np.int64)
    cols = np.array([e[1] for e in entries], dtype=np.uint8)
    phases = np.array([e[2] for e in entries], dtype=np.uint8)

    # images with all phase bits 0, per symplectic matrix
    base_out = {}
    for c in sym:
        key = tuple(int(v) for v in c)
        imgs = []
        for col in key:
            x, z = _pattern_to_masks(col)
            imgs.append((x, z, (x & z).bit_count()))
        out = np.zeros(16, dtype=np.uint8)
        flip = np.zeros(16, dtype=np.uint8)
        for pat in range(16):
            acc = (0, 0, 0)
            for g in range(4):
                if (pat >> (3 - g)) & 1:
                    acc = _pmul(acc, imgs[g])
            px, pz = _pattern_to_masks(pat)
            e = (acc[2] + (px & pz).bit_count()) % 4
            e = (e - (acc[0] & acc[1]).bit_count()) % 4
            assert e in (0, 2)
            out[pat] = _masks_to_pattern(acc[0], acc[1])
            flip[pat] = e // 2
        base_out[key] = (out, flip)

    table_out = np.zeros((len(entries), 16), dtype=np.uint8)
    table_flip = np.zeros((len(entries), 16), dtype=np.uint8)
    pats = np.arange(16, dtype=np.uint8)
    for idx, (_, key, ph) in enumerate(entries):
        out, flip = base_out[key]
        phmask = (ph[0] << 3) | (ph[1] << 2) | (ph[2] << 1) | ph[3]
        table_out[idx] = out
        table_flip[idx] = flip ^ (np.bitwise_count(pats & phmask) & 1).astype(np.uint8)
    enc_index = {int(e): i for i, e in enumerate(encs)}
    return encs, cols, phases, table_out, table_flip, enc_index


def _tables() -> tuple[np.ndarray, np.ndarray]:
    cat = _gate_catalog()
    return cat[3], cat[4]


def _parse_pauli2(label: str) -> tuple[int, int]:
    """'+XZ' -> (pattern, sign)."""
    label = label.strip()
    sign = 0
    if label[0] in "+-":
        sign = int(label[0] == "-")
        label = label[1:]
    if len(label) != 2 or any(c not in _PAULI_BITS for c in label):
        raise ValueError(f"bad two-qubit Pauli label {label!r}")
    (xi, zi), (xj, zj) = _PAULI_BITS[label[0]], _PAULI_BITS[label[1]]
    return (xi << 3) | (zi << 2) | (xj << 1) | zj, sign


def _pattern_label(p: int) -> str:
    return _BITS_PAULI[((p >> 3) & 1, (p >> 2) & 1)] + _BITS_PAULI[((p >> 1) & 1, p & 1)]


@dataclass(frozen=True)
class CliffordGate2:
    """Element of the two-qubit Clifford group modulo global phase."""

    canonical_index: int

    def __post_init__(self):
        if not 0 <= self.canonical_index < NUM_CLIFFORD2:
            raise ValueError(f"gate index {self.canonical_index} out of range")

    @classmethod
    def identity(cls) -> "CliffordGate2":
        return cls.from_images(["+XI", "+ZI", "+IX", "+IZ"])

    @classmethod
    def from_images(cls, images: Sequence[str]) -> "CliffordGate2":
        """Gate mapping X_i, Z_i, X_j, Z_j to the given signed Pauli labels."""
        if len(images) != 4:
            raise ValueError("need images of X_i, Z_i, X_j, Z_j")
        parsed = [_parse_pauli2(s) for s in images]
        cols = [p[0] for p in parsed]
        phases = [p[1] for p in parsed]
        enc = _encode(cols, phases)
        try:
            return cls(_gate_catalog()[5][enc])
        except KeyError:
            raise ValueError(f"images {images} do not define a Clifford") from None

    @property
    def symplectic_part(self) -> np.ndarray:
        cols = _gate_catalog()[1][self.canonical_index]
        return np.array([[(int(cols[c]) >> (3 - r)) & 1 for c in range(4)] for r in range(4)], dtype=np.uint8)

    @property
    def phase_bits(self) -> np.ndarray:
        return _gate_catalog()[2][self.canonical_index].copy()

    @property
    def encoding(self) -> int:
        return int(_gate_catalog()[0][self.canonical_index])

    def images(self) -> list[str]:
        cols = _gate_catalog()[1][self.canonical_index]
        ph = self.phase_bits
        return [("-" if ph[c] else "+") + _pattern_label(int(cols[c])) for c in range(4)]

    def conjugate(self, label: str) -> str:
        """Image ``g P g^dagger`` of a signed two-qubit Pauli label."""
        pat, sign = _parse_pauli2(label)
        out, flip = _tables()
        new = int(out[self.canonical_index, pat])
        s = sign ^ int(flip[self.canonical_index, pat])
        return ("-" if s else "+") + _pattern_label(new)


def all_clifford2() -> list[CliffordGate2]:
    return [CliffordGate2(i) for i in range(NUM_CLIFFORD2)]


def random_clifford2(rng: np.random.Generator) -> CliffordGate2:
    return CliffordGate2(int(rng.integers(NUM_CLIFFORD2)))


# --- tableau -----------------------------------------------------------------------


def _phase_exponent(x1: int, z1: int, x2: int, z2: int) -> int:
    """Sum over qubits of the ``i``-exponent picked up by ``P1 * P2`` (Aaronson-Gottesman g)."""
    y1 = x1 & z1
    xo = x1 & ~z1
    zo = z1 & ~x1
    pos = (y1 & z2 & ~x2) | (xo & x2 & z2) | (zo & x2 & ~z2)
    neg = (y1 & x2 & ~z2) | (xo & z2 & ~x2) | (zo & x2 & z2)
    return pos.bit_count() - neg.bit_count()


def _rowmul(a: tuple[int, int, int], b: tuple[int, int, int]) -> tuple[int, int, int]:
    """Row ``b * a`` for commuting Hermitian rows ``(x, z, sign)``."""
    e = 2 * a[2] + 2 * b[2] + _phase_exponent(b[0], b[1], a[0], a[1])
    return a[0] ^ b[0], a[1] ^ b[1], (e % 4) // 2


def _pack(a: np.ndarray) -> list[int]:
    n = a.shape[-1]
    if n <= 62:
        w = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
        return [int(v) for v in a.astype(np.int64) @ w]
    return [sum(int(b) << q for q, b in enumerate(row)) for row in a]


def _unpack(values: Sequence[int], n: int) -> np.ndarray:
    out = np.zeros((len(values), n), dtype=np.uint8)
    for r, v in enumerate(values):
        for q in range(n):
            out[r, q] = (v >> q) & 1
    return out


def _label(x: int, z: int, s: int, n: int) -> str:
    return ("-" if s else "+") + "".join(_BITS_PAULI[((x >> q) & 1, (z >> q) & 1)] for q in range(n))


@dataclass
class StabilizerTableau:
    n: int
    x: np.ndarray
    z: np.ndarray
    r: np.ndarray

    def __post_init__(self):
        shape = (2 * self.n, self.n)
        if self.x.shape != shape or self.z.shape != shape or self.r.shape != (2 * self.n,):
            raise ValueError("tableau arrays have the wrong shape")

    def copy(self) -> "StabilizerTableau":
        return StabilizerTableau(self.n, self.x.copy(), self.z.copy(), self.r.copy())

    @classmethod
    def from_rows(cls, n: int, xs: Sequence[int], zs: Sequence[int], rs: Sequence[int]) -> "StabilizerTableau":
        return cls(n, _unpack(xs, n), _unpack(zs, n), np.array(rs, dtype=np.uint8))

    @classmethod
    def from_stabilizers(cls, labels: Sequence[str]) -> "StabilizerTableau":
        """Build a valid tableau (destabilizers completed) from n stabilizer labels like '+XX'."""
        rows = []
        for lab in labels:
            s = 0
            if lab[0] in "+-":
                s, lab = int(lab[0] == "-"), lab[1:]
            x = z = 0
            for q, c in enumerate(lab):
                bx, bz = _PAULI_BITS[c]
                x |= bx << q
                z |= bz << q
            rows.append((x, z, s))
        n = len(rows)
        if any(len(lab.lstrip("+-")) != n for lab in labels):
            raise ValueError("need n stabilizers on n qubits")
        destabs = _complete_destabilizers(n, [(x, z) for x, z, _ in rows])
        xs = [d[0] for d in destabs] + [r[0] for r in rows]
        zs = [d[1] for d in destabs] + [r[1] for r in rows]
        rs = [0] * n + [r[2] for r in rows]
        t = cls.from_rows(n, xs, zs, rs)
        t.check_invariants()
        return t

    def rows(self) -> tuple[list[int], list[int], list[int]]:
        return _pack(self.x), _pack(self.z), [int(v) for v in self.r]

    def stabilizers(self) -> list[str]:
        xs, zs, rs = self.rows()
        return [_label(xs[i], zs[i], rs[i], self.n) for i in range(self.n, 2 * self.n)]

    def destabilizers(self) -> list[str]:
        xs, zs, rs = self.rows()
        return [_label(xs[i], zs[i], rs[i], self.n) for i in range(self.n)]

    def check_invariants(self) -> None:
        n = self.n
        xs, zs, _ = self.rows()

        def omega(a, b):
            return ((xs[a] & zs[b]) ^ (zs[a] & xs[b])).bit_count() & 1

        for i in range(n, 2 * n):
            for j in range(i + 1, 2 * n):
                if omega(i, j):
                    raise AssertionError(f"stabilizers {i - n} and {j - n} anticommute")
        for i in range(n):
            for j in range(n, 2 * n):
                if omega(i, j) != (j - n == i):
                    raise AssertionError(f"destabilizer {i} / stabilizer {j - n} commutation is wrong")
        full = F2Matrix(2 * n, 2 * n, tuple(x | (z << n) for x, z in zip(xs, zs)))
        if full.rank() != 2 * n:
            raise AssertionError("tableau is singular")

    def affine_support(self) -> AffineSubspace:
        xs, zs, rs = self.rows()
        return _support_from_stabilizers(self.n, xs[self.n:], zs[self.n:], rs[self.n:])

    def measure_all(self, rng: np.random.Generator) -> BitVec:
        return measure_all(self, rng)


def _complete_destabilizers(n: int, stabs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Destabilizer i anticommutes with stabilizer i only (symplectic Gram-Schmidt)."""
    mask = (1 << n) - 1

    def sym(v):
        return v[0] | (v[1] << n)

    def omega(a, b):
        return ((a & mask & (b >> n)) ^ ((a >> n) & b & mask)).bit_count() & 1

    svec = [sym(s) for s in stabs]
    dual = []
    for i in range(n):
        # solve omega(d, s_j) = delta_ij: linear in d, so search via nullspace of the form matrix
        rows = []
        for s in svec:
            # omega(d, s) = d_x . s_z + d_z . s_x  -> row acting on d = (dx | dz)
            rows.append(((s >> n) & mask) | ((s & mask) << n))
        m = F2Matrix(n, 2 * n, tuple(rows))
        b = solve(m, BitVec(n, 1 << i))
        if b is None:
            raise ValueError("stabilizers are not independent")
        dual.append(b.bits)
    # make destabilizers mutually commute: d_i += sum_{j<i} omega(d_i, d_j) s_j
    for i in range(n):
        for j in range(i):
            if omega(dual[i], dual[j]):
                dual[i] ^= svec[j]
    return [(d & mask, d >> n) for d in dual]


def _support_from_stabilizers(n: int, xs: Sequence[int], zs: Sequence[int], rs: Sequence[int]) -> AffineSubspace:
    rows = [(xs[i], zs[i], rs[i]) for i in range(len(xs))]
    top = 0
    for q in range(n):
        bit = 1 << q
        piv = next((i for i in range(top, len(rows)) if rows[i][0] & bit), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        for i in range(len(rows)):
            if i != top and rows[i][0] & bit:
                rows[i] = _rowmul(rows[i], rows[top])
        top += 1
    # rows[top:] are +-Z^v; eigenvalue +1 means v . x == sign
    zonly = rows[top:]
    if not zonly:
        return AffineSubspace.full(n)
    cons = F2Matrix(len(zonly), n, tuple(z for _, z, _ in zonly))
    rhs = BitVec(len(zonly), sum(s << i for i, (_, _, s) in enumerate(zonly)))
    t = solve(cons, rhs)
    if t is None:
        raise AssertionError("inconsistent Z constraints in a valid tableau")
    return AffineSubspace(n, nullspace(cons), t)


def tableau_zero_state(n: int) -> StabilizerTableau:
    if n < 1:
        raise ValueError("need at least one qubit")
    x = np.zeros((2 * n, n), dtype=np.uint8)
    z = np.zeros((2 * n, n), dtype=np.uint8)
    x[np.arange(n), np.arange(n)] = 1
    z[n + np.arange(n), np.arange(n)] = 1
    return StabilizerTableau(n, x, z, np.zeros(2 * n, dtype=np.uint8))


def _apply_pair(x: np.ndarray, z: np.ndarray, r: np.ndarray, gate_ids, i: int) -> None:
    """In-place conjugation on qubits (i, i+1); arrays may carry leading batch dims."""
    out, flip = _tables()
    j = i + 1
    pat = (x[..., i] << 3) | (z[..., i] << 2) | (x[..., j] << 1) | z[..., j]
    g = np.asarray(gate_ids)
    if g.ndim:
        g = g.reshape(g.shape + (1,) * (pat.ndim - g.ndim))
    new = out[g, pat]
    r ^= flip[g, pat]
    x[..., i] = (new >> 3) & 1
    z[..., i] = (new >> 2) & 1
    x[..., j] = (new >> 1) & 1
    z[..., j] = new & 1


def apply_gate(t: StabilizerTableau, g: CliffordGate2, pair: tuple[int, int]) -> StabilizerTableau:
    i, j = pair
    if j != i + 1 or not (0 <= i and j < t.n):
        raise ValueError(f"pair {pair} is not an adjacent in-range pair for n={t.n}")
    out = t.copy()
    _apply_pair(out.x, out.z, out.r, g.canonical_index, i)
    return out


# --- circuits ----------------------------------------------------------------------


def brickwork_pairs(n: int, layer: int) -> list[tuple[int, int]]:
    start = layer % 2
    return [(i, i + 1) for i in range(start, n - 1, 2)]


@dataclass
class BrickworkCircuit:
    n: int
    d: int
    layers: list[list[tuple[tuple[int, int], CliffordGate2]]] = field(default_factory=list)

    def __post_init__(self):
        if self.n < 1 or self.d < 0:
            raise ValueError("need n >= 1 and d >= 0")
        if len(self.layers) != self.d:
            raise ValueError(f"{len(self.layers)} layers for depth {self.d}")
        for ell, layer in enumerate(self.layers):
            pairs = [tuple(p) for p, _ in layer]
            if pairs != brickwork_pairs(self.n, ell):
                raise ValueError(f"layer {ell} does not follow the brickwork pattern: {pairs}")

    @classmethod
    def from_gate_ids(cls, n: int, d: int, ids: Sequence[int]) -> "BrickworkCircuit":
        it = iter(int(v) for v in ids)
        layers = [[(p, CliffordGate2(next(it))) for p in brickwork_pairs(n, ell)] for ell in range(d)]
        return cls(n, d, layers)

    def gate_ids(self) -> list[int]:
        return [g.canonical_index for layer in self.layers for _, g in layer]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "layers": [[{"pair": list(p), "gate": g.canonical_index} for p, g in layer] for layer in self.layers],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> "BrickworkCircuit":
        if not isinstance(doc, dict) or set(doc) != {"n", "d", "layers"}:
            raise ValueError(f"circuit document must have exactly the fields n, d, layers; got {sorted(doc) if isinstance(doc, dict) else type(doc).__name__}")
        n, d, layers = doc["n"], doc["d"], doc["layers"]
        if not isinstance(n, int) or not isinstance(d, int) or not isinstance(layers, list):
            raise ValueError("n and d must be integers and layers a list")
        parsed = []
        for layer in layers:
            if not isinstance(layer, list):
                raise ValueError("each layer must be a list")
            placed = []
            for item in layer:
                if not isinstance(item, dict) or set(item) != {"pair", "gate"}:
                    raise ValueError(f"gate placement must have exactly pair, gate: {item!r}")
                pair = item["pair"]
                if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, int) for v in pair)):
                    raise ValueError(f"bad pair {pair!r}")
                if not isinstance(item["gate"], int):
                    raise ValueError(f"bad gate index {item['gate']!r}")
                placed.append(((pair[0], pair[1]), CliffordGate2(item["gate"])))
            parsed.append(placed)
        return cls(n, d, parsed)

    @classmethod
    def from_json(cls, text: str) -> "BrickworkCircuit":
        return cls.from_dict(json.loads(text))


def run_circuit(c: BrickworkCircuit) -> StabilizerTableau:
    t = tableau_zero_state(c.n)
    for layer in c.layers:
        for (i, _), g in layer:
            _apply_pair(t.x, t.z, t.r, g.canonical_index, i)
    return t


def num_brickwork_gates(n: int, d: int) -> int:
    return sum(len(brickwork_pairs(n, ell)) for ell in range(d))


def draw_brickwork_ids(n: int, d: int, rng: np.random.Generator, restrict_to_first_k: int | None = None) -> np.ndarray:
    """Gate indices for a random brickwork circuit, layer-major."""
    ids = rng.integers(NUM_CLIFFORD2, size=num_brickwork_gates(n, d))
    if restrict_to_first_k is not None:
        ident = CliffordGate2.identity().canonical_index
        pos = 0
        for ell in range(d):
            for i, j in brickwork_pairs(n, ell):
                if j >= restrict_to_first_k:
                    ids[pos] = ident
                pos += 1
    return ids


def random_brickwork(n: int, d: int, rng: np.random.Generator, restrict_to_first_k: int | None = None) -> BrickworkCircuit:
    if n < 2 or d < 0:
        raise ValueError("need n >= 2 and d >= 0")
    if restrict_to_first_k is not None and not 2 <= restrict_to_first_k <= n:
        raise ValueError(f"restrict_to_first_k must lie in [2, {n}]")
    return BrickworkCircuit.from_gate_ids(n, d, draw_brickwork_ids(n, d, rng, restrict_to_first_k))


def run_brickwork_batch(n: int, d: int, ids: np.ndarray, stabilizers_only: bool = True):
    """Simulate many circuits at once; ``ids`` has shape (batch, num_gates).

    Returns ``(x, z, r)`` with shapes (batch, rows, n) / (batch, rows).
    """
    ids = np.asarray(ids)
    b = ids.shape[0]
    t = tableau_zero_state(n)
    lo = n if stabilizers_only else 0
    x = np.repeat(t.x[None, lo:], b, axis=0)
    z = np.repeat(t.z[None, lo:], b, axis=0)
    r = np.repeat(t.r[None, lo:], b, axis=0)
    pos = 0
    for ell in range(d):
        for i, _ in brickwork_pairs(n, ell):
            _apply_pair(x, z, r, ids[:, pos], i)
            pos += 1
    return x, z, r


def supports_from_batch(n: int, x: np.ndarray, z: np.ndarray, r: np.ndarray) -> list[AffineSubspace]:
    """Affine supports from stabilizer-only batch arrays."""
    out = []
    for k in range(x.shape[0]):
        out.append(_support_from_stabilizers(n, _pack(x[k]), _pack(z[k]), [int(v) for v in r[k]]))
    return out


# --- measurement -------------------------------------------------------------------


def measure_all(t: StabilizerTableau, rng: np.random.Generator) -> BitVec:
    """Measure every qubit in the Z basis, in order, on a working copy."""
    n = t.n
    xs, zs, rs = t.rows()
    outcome = 0
    for a in range(n):
        bit = 1 << a
        p = next((i for i in range(n, 2 * n) if xs[i] & bit), None)
        if p is not None:
            row_p = (xs[p], zs[p], rs[p])
            for i in range(2 * n):
                if i != p and xs[i] & bit:
                    e = 2 * rs[i] + 2 * row_p[2] + _phase_exponent(row_p[0], row_p[1], xs[i], zs[i])
                    xs[i] ^= row_p[0]
                    zs[i] ^= row_p[1]
                    rs[i] = (e % 4) // 2
            xs[p - n], zs[p - n], rs[p - n] = xs[p], zs[p], rs[p]
            m = int(rng.integers(2))
            xs[p], zs[p], rs[p] = 0, bit, m
        else:
            acc = (0, 0, 0)
            for i in range(n):
                if xs[i] & bit:
                    acc = _rowmul(acc, (xs[i + n], zs[i + n], rs[i + n]))
            m = acc[2]
        outcome |= m << a
    return BitVec(n, outcome)


# --- uniform global Clifford -------------------------------------------------------


def _randbits(rng: np.random.Generator, k: int) -> int:
    if k <= 62:
        return int(rng.integers(1 << k)) if k else 0
    nbytes = (k + 7) // 8
    return int.from_bytes(rng.bytes(nbytes), "little") & ((1 << k) - 1)


def _combine(basis: Sequence[int], coeffs: int) -> int:
    v = 0
    for j, b in enumerate(basis):
        if (coeffs >> j) & 1:
            v ^= b
    return v


def random_symplectic_pairs(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Uniform symplectic basis ``(v_j, w_j)`` of GF(2)^{2n}: images of X_j, Z_j.

    Vectors pack x in bits ``0..n-1`` and z in bits ``n..2n-1``. Each pair
    is drawn uniformly from the symplectic complement of the earlier pairs,
    which makes the resulting map uniform over Sp(2n).
    """
    mask = (1 << n) - 1

    def omega(u, v):
        return ((u & mask & (v >> n)) ^ ((u >> n) & v & mask)).bit_count() & 1

    comp = [1 << i for i in range(2 * n)]
    pairs = []
    for _ in range(n):
        dim = len(comp)
        v = 0
        while not v:
            v = _combine(comp, _randbits(rng, dim))
        while True:
            w = _combine(comp, _randbits(rng, dim))
            if omega(v, w):
                break
        pairs.append((v, w))
        basis = _XorBasis()
        nxt = []
        for u in comp:
            u2 = u ^ (v if omega(u, w) else 0) ^ (w if omega(u, v) else 0)
            if basis.add(u2):
                nxt.append(u2)
        assert len(nxt) == dim - 2
        comp = nxt
    return pairs


def random_global_clifford_rows(n: int, rng: np.random.Generator) -> tuple[list[int], list[int], list[int]]:
    mask = (1 << n) - 1
    pairs = random_symplectic_pairs(n, rng)
    signs = _randbits(rng, 2 * n)
    xs = [v & mask for v, _ in pairs] + [w & mask for _, w in pairs]
    zs = [v >> n for v, _ in pairs] + [w >> n for _, w in pairs]
    rs = [(signs >> i) & 1 for i in range(2 * n)]
    return xs, zs, rs


def random_global_clifford(n: int, rng: np.random.Generator) -> StabilizerTableau:
    """Tableau of ``U|0...0>`` for ``U`` uniform over the n-qubit Clifford group (mod phase)."""
    if n < 1:
        raise ValueError("need at least one qubit")
    xs, zs, rs = random_global_clifford_rows(n, rng)
    return StabilizerTableau.from_rows(n, xs, zs, rs)


def random_global_support(n: int, rng: np.random.Generator) -> AffineSubspace:
    xs, zs, rs = random_global_clifford_rows(n, rng)
    return _support_from_stabilizers(n, xs[n:], zs[n:], rs[n:])


def affine_support(t: StabilizerTableau) -> AffineSubspace:
    return t.affine_support()


def read_circuit(path) -> BrickworkCircuit:
    with open(path) as fh:
        return BrickworkCircuit.from_json(fh.read())


def write_circuit(c: BrickworkCircuit, path) -> None:
    with open(path, "w") as fh:
        fh.write(json.dumps(c.to_dict(), indent=1))
        fh.write("\n")


__all__: Iterable[str] = [
    "NUM_CLIFFORD2",
    "BrickworkCircuit",
    "CliffordGate2",
    "StabilizerTableau",
    "affine_support",
    "apply_gate",
    "brickwork_pairs",
    "measure_all",
    "random_brickwork",
    "random_clifford2",
    "random_global_clifford",
    "run_circuit",
    "tableau_zero_state",
]
