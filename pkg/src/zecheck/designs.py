"""Exact unitary 2-designs: qudit Clifford enumeration, certification, twirls.

A family is certified exact by its frame potential; the conjugate twirl
averages (g (x) conj(g))^dag M (g (x) conj(g)) over the family, whose
image for an exact 2-design is spanned by the maximally entangled
projector and its complement.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .linalg import DEFAULT_TOL, max_entangled_projector

SUPPORTED_DIMS = (2, 3)
SIZE_CAP = 10_000
DEDUP_DECIMALS = 10

_CACHE_MAGIC = b"ZECDSGN\0"
_CACHE_VERSION = 1


class DesignCacheError(ValueError):
    """Raised when a design cache file is malformed or corrupted."""


@dataclass
class UnitaryFamily:
    """Finite weighted set of d x d unitaries, phase-canonicalized.

    `verified` is set only after `verify_two_design` passes.
    """

    d: int
    members: np.ndarray  # (m, d, d)
    weights: np.ndarray  # (m,)
    verified: bool = field(default=False, compare=False)

    def __len__(self) -> int:
        return self.members.shape[0]


def fourier(d: int) -> np.ndarray:
    k = np.arange(d)
    return np.exp(2j * np.pi * np.outer(k, k) / d) / np.sqrt(d)


def clock(d: int) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


def shift(d: int) -> np.ndarray:
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def qudit_phase(d: int) -> np.ndarray:
    """Diagonal quadratic-phase gate; diag(1, i) for qubits."""
    k = np.arange(d)
    if d == 2:
        return np.diag(np.asarray([1.0, 1.0j], dtype=complex))
    return np.diag(np.exp(2j * np.pi * (k * (k - 1) // 2) / d))


def clifford_generators(d: int) -> list[np.ndarray]:
    return [fourier(d), qudit_phase(d), shift(d), clock(d)]


def canonical_phase(u: np.ndarray, zero_tol: float = 1e-8) -> np.ndarray:
    """Rescale so the first nonzero entry (row-major) is real positive."""
    u = np.asarray(u, dtype=complex)
    flat = u.ravel()
    idx = np.flatnonzero(np.abs(flat) > zero_tol)
    if idx.size == 0:
        raise ValueError("zero matrix has no canonical phase")
    pivot = flat[idx[0]]
    return u * (np.abs(pivot) / pivot)


def _dedup_key(u: np.ndarray) -> bytes:
    # +0.0 folds -0.0 into +0.0 so rounding is byte-stable
    re = np.round(u.real, DEDUP_DECIMALS) + 0.0
    im = np.round(u.imag, DEDUP_DECIMALS) + 0.0
    return re.tobytes() + im.tobytes()


def enumerate_clifford(d: int, cache_dir=None, size_cap: int = SIZE_CAP) -> UnitaryFamily:
    """Close the generator set {F, S, X, Z} under products modulo phase.

    The result carries uniform weights and is verified as an exact
    2-design before being returned (and, if `cache_dir` is given,
    written to or read from a binary cache file).
    """
    if d not in SUPPORTED_DIMS:
        raise ValueError(f"unsupported qudit dimension {d}; expected one of {SUPPORTED_DIMS}")
    cache_path = None
    if cache_dir is not None:
        cache_path = Path(cache_dir) / f"clifford_d{d}.design"
        if cache_path.exists():
            family = load_design_cache(cache_path)
            if family.d != d:
                raise DesignCacheError(f"cache holds d={family.d}, expected d={d}")
            if not verify_two_design(family):
                raise DesignCacheError("cached family fails 2-design verification")
            return family

    gens = [canonical_phase(g) for g in clifford_generators(d)]
    ident = np.eye(d, dtype=complex)
    members: dict[bytes, np.ndarray] = {_dedup_key(ident): ident}
    frontier = [ident]
    while frontier:
        grown = []
        for u in frontier:
            for g in gens:
                v = canonical_phase(u @ g)
                key = _dedup_key(v)
                if key not in members:
                    if len(members) >= size_cap:
                        raise RuntimeError(
                            "closure exceeded the size cap; phase canonicalization is broken"
                        )
                    members[key] = v
                    grown.append(v)
        frontier = grown

    stack = np.stack(list(members.values()))
    family = UnitaryFamily(
        d=d, members=stack, weights=np.full(len(stack), 1.0 / len(stack))
    )
    if not verify_two_design(family):
        raise RuntimeError("enumerated family failed 2-design verification")
    if cache_path is not None:
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        save_design_cache(family, cache_path)
    return family


def frame_potential(family: UnitaryFamily) -> float:
    """sum_{j,k} w_j w_k |tr(g_j^dag g_k)|^4; equals 2 iff exact 2-design."""
    if len(family) == 0:
        raise ValueError("empty family")
    g = family.members
    t = np.abs(np.einsum("iab,jab->ij", g.conj(), g)) ** 4
    return float(family.weights @ t @ family.weights)


def verify_two_design(family: UnitaryFamily, tol: float = DEFAULT_TOL) -> bool:
    """Check unitarity, phase-distinctness, weights and frame potential."""
    g = family.members
    d = family.d
    m = len(family)
    if m == 0 or g.shape != (m, d, d):
        family.verified = False
        return False
    eye = np.eye(d)
    unitary = max(
        float(np.abs(u.conj().T @ u - eye).max()) for u in g
    )
    distinct = len({_dedup_key(canonical_phase(u)) for u in g}) == m
    w = family.weights
    weights_ok = w.min() >= -tol and abs(w.sum() - 1.0) <= tol
    fp_ok = abs(frame_potential(family) - 2.0) <= max(tol, 1e-9)
    ok = unitary <= tol and distinct and weights_ok and fp_ok
    family.verified = bool(ok)
    return family.verified


def conjugate_twirl(family: UnitaryFamily, m: np.ndarray) -> np.ndarray:
    """Weighted average of (g (x) conj(g))^dag m (g (x) conj(g)).

    For an exact 2-design this equals the projection
    tr(m P) P + tr(m (I-P)) (I-P) / (d^2 - 1) with P the maximally
    entangled projector.
    """
    d = family.d
    m = np.asarray(m, dtype=complex)
    if m.shape != (d * d, d * d):
        raise ValueError(f"twirl input must act on two {d}-dimensional factors")
    out = np.zeros_like(m)
    for g, w in zip(family.members, family.weights):
        k = np.kron(g, g.conj())
        out += w * (k.conj().T @ m @ k)
    return out


def isotropic_projection(d: int, m: np.ndarray) -> np.ndarray:
    """Closed form of the exact-2-design conjugate twirl."""
    phi = max_entangled_projector(d)
    comp = np.eye(d * d) - phi
    p_phi = np.trace(phi @ m)
    p_comp = np.trace(comp @ m) / (d * d - 1)
    return p_phi * phi + p_comp * comp


def multiplication_table(family: UnitaryFamily) -> np.ndarray:
    """Index table of pairwise products modulo phase; -1 marks a missing product."""
    index = {_dedup_key(canonical_phase(g)): i for i, g in enumerate(family.members)}
    m = len(family)
    table = np.full((m, m), -1, dtype=int)
    for i, a in enumerate(family.members):
        for j, b in enumerate(family.members):
            table[i, j] = index.get(_dedup_key(canonical_phase(a @ b)), -1)
    return table


def find_minimal_subdesign(family: UnitaryFamily, tol: float = DEFAULT_TOL) -> UnitaryFamily | None:
    """Smallest proper product-closed subset that is still an exact 2-design.

    Searches closures of member pairs; returns None when no proper
    sub-family reaches frame potential 2.
    """
    table = multiplication_table(family)
    if (table < 0).any():
        raise ValueError("family is not closed under products; cannot search subgroups")
    m = len(family)
    best: set[int] | None = None
    for a in range(m):
        for b in range(a, m):
            closed = {a, b}
            frontier = [a, b]
            while frontier:
                nxt = []
                for i in frontier:
                    for j in list(closed):
                        for prod in (table[i, j], table[j, i]):
                            if prod not in closed:
                                closed.add(int(prod))
                                nxt.append(int(prod))
                frontier = nxt
            if len(closed) == m or (best is not None and len(closed) >= len(best)):
                continue
            mats = family.members[sorted(closed)]
            sub = UnitaryFamily(family.d, mats, np.full(len(mats), 1.0 / len(mats)))
            if abs(frame_potential(sub) - 2.0) <= max(tol, 1e-9):
                best = closed
    if best is None:
        return None
    mats = family.members[sorted(best)]
    sub = UnitaryFamily(family.d, mats, np.full(len(mats), 1.0 / len(mats)))
    verify_two_design(sub)
    return sub


def save_design_cache(family: UnitaryFamily, path) -> None:
    """Write one record per member: d, index, interleaved re/im float64 LE."""
    d = family.d
    chunks = []
    for idx, g in enumerate(family.members):
        buf = np.empty(2 * d * d, dtype="<f8")
        buf[0::2] = g.real.ravel()
        buf[1::2] = g.imag.ravel()
        chunks.append(struct.pack("<II", d, idx) + buf.tobytes())
    payload = b"".join(chunks)
    header = _CACHE_MAGIC + struct.pack(
        "<IIII", _CACHE_VERSION, d, len(family), zlib.crc32(payload)
    )
    Path(path).write_bytes(header + payload)


def load_design_cache(path) -> UnitaryFamily:
    raw = Path(path).read_bytes()
    head_len = len(_CACHE_MAGIC) + 16
    if len(raw) < head_len or raw[: len(_CACHE_MAGIC)] != _CACHE_MAGIC:
        raise DesignCacheError(f"not a design cache file: {path}")
    version, d, count, crc = struct.unpack("<IIII", raw[len(_CACHE_MAGIC) : head_len])
    if version != _CACHE_VERSION:
        raise DesignCacheError(f"unsupported cache format version {version}")
    payload = raw[head_len:]
    if zlib.crc32(payload) != crc:
        raise DesignCacheError(f"design cache checksum mismatch: {path}")
    rec_len = 8 + 16 * d * d
    if len(payload) != count * rec_len:
        raise DesignCacheError("design cache payload has the wrong length")
    members = np.empty((count, d, d), dtype=complex)
    for i in range(count):
        rec = payload[i * rec_len : (i + 1) * rec_len]
        rec_d, idx = struct.unpack("<II", rec[:8])
        if rec_d != d or idx != i:
            raise DesignCacheError("design cache record header is inconsistent")
        buf = np.frombuffer(rec[8:], dtype="<f8")
        members[i] = (buf[0::2] + 1j * buf[1::2]).reshape(d, d)
    return UnitaryFamily(d=d, members=members, weights=np.full(count, 1.0 / count))
