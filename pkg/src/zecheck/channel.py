"""The flagged-phase channel family and its n-fold application.

The channel acts on a control register and a data register, both of
dimension d: a unitary drawn from an exact 2-design is applied to the
data register and announced classically, then a controlled phase
P = sum_ij w^{ij} |i><i| (x) |j><j| couples the registers.  The receiver
keeps the control register plus the flag; the environment keeps the
data register plus the flag.

Outputs are classical-quantum: one PSD branch matrix per flag tuple.
For an input sum_i |i>|a_i> and flag j the receiver branch is

    rho[r, c] = <a_c| g_j^dag Z^{r-c} g_j |a_r>

(exponents mod d), i.e. the |r><c| coefficient is <a_c|...|a_r>.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from itertools import product
from pathlib import Path

import numpy as np

from .designs import UnitaryFamily
from .linalg import DEFAULT_TOL

_BSV_MAGIC = b"ZECBSV\0\0"
_BSV_VERSION = 1


@dataclass
class FlaggedPhaseChannel:
    d: int
    design: UnitaryFamily
    phase_gate: np.ndarray  # (d^2, d^2) diagonal
    z_powers: np.ndarray  # (d, d, d); z_powers[l] = clock^l


@dataclass
class BlockStateVector:
    """Pure input for n channel uses, stored per control-register tuple.

    blocks[flat(i_1..i_n)] is the data-register amplitude vector for
    control tuple (i_1..i_n).  A trailing reference register of
    dimension ref_dim may ride along untouched by the channel.
    """

    d: int
    n: int
    blocks: np.ndarray  # (d**n, d**n * ref_dim)
    ref_dim: int = 1

    def __post_init__(self):
        self.blocks = np.asarray(self.blocks, dtype=complex)
        expected = (self.d**self.n, self.d**self.n * self.ref_dim)
        if self.blocks.shape != expected:
            raise ValueError(f"blocks shape {self.blocks.shape}, expected {expected}")

    @property
    def block_len(self) -> int:
        return self.blocks.shape[1]

    def flat_index(self, label) -> int:
        idx = 0
        for i in label:
            idx = idx * self.d + int(i)
        return idx

    def block(self, label) -> np.ndarray:
        return self.blocks[self.flat_index(label)]

    def block_norms(self) -> np.ndarray:
        return np.linalg.norm(self.blocks, axis=1)

    def total_norm(self) -> float:
        return float(np.linalg.norm(self.blocks))

    @classmethod
    def zero(cls, d: int, n: int, ref_dim: int = 1) -> "BlockStateVector":
        return cls(d, n, np.zeros((d**n, d**n * ref_dim), dtype=complex), ref_dim)

    @classmethod
    def from_blocks(cls, d: int, n: int, mapping, ref_dim: int = 1) -> "BlockStateVector":
        """Build from {control tuple: amplitude vector}; missing tuples are zero."""
        out = cls.zero(d, n, ref_dim)
        for label, vec in mapping.items():
            out.blocks[out.flat_index(label)] = np.asarray(vec, dtype=complex)
        return out


@dataclass
class CQState:
    """Classical-quantum output: one weighted branch matrix per flag tuple."""

    d: int
    n: int
    labels: np.ndarray  # (N, n) int
    weights: np.ndarray  # (N,)
    matrices: np.ndarray  # (N, D, D)

    def branches(self):
        for label, w, mat in zip(self.labels, self.weights, self.matrices):
            yield tuple(int(x) for x in label), float(w), mat


def build_channel(d: int, family: UnitaryFamily) -> FlaggedPhaseChannel:
    """Assemble the channel for dimension d from a verified 2-design."""
    if family.d != d:
        raise ValueError(f"family dimension {family.d} does not match d={d}")
    if not family.verified:
        raise ValueError("design family has not passed 2-design verification")
    i, j = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    phase = np.diag(np.exp(2j * np.pi * (i * j).ravel() / d))
    k = np.arange(d)
    z_powers = np.stack([np.diag(np.exp(2j * np.pi * l * k / d)) for l in range(d)])
    block_form = sum(
        np.kron(np.diag(np.eye(d)[m]), z_powers[m]) for m in range(d)
    )
    if np.abs(phase - block_form).max() > DEFAULT_TOL:
        raise AssertionError("phase gate does not match its controlled-clock block form")
    return FlaggedPhaseChannel(d=d, design=family, phase_gate=phase, z_powers=z_powers)


def _zg_stack(channel: FlaggedPhaseChannel) -> np.ndarray:
    # zg[j, l] = Z^l @ g_j
    return np.einsum("lab,jbc->jlac", channel.z_powers, channel.design.members)


def _branch_matrices(channel, psi, complementary: bool):
    d = channel.d
    if psi.d != d:
        raise ValueError(f"state dimension {psi.d} does not match channel d={d}")
    n, ref, m = psi.n, psi.ref_dim, len(channel.design)
    zg = _zg_stack(channel)
    w = channel.design.weights
    ctrl = d**n

    if n == 1:
        b = psi.blocks.reshape(d, d, ref)
        v = np.einsum("jits,isr->jitr", zg, b).reshape(m, d, d * ref)
        if complementary:
            mats = np.einsum("jis,jit->jst", v, v.conj())
        else:
            mats = np.einsum("jis,jks->jik", v, v.conj())
        labels = np.arange(m, dtype=int).reshape(m, 1)
        return labels, w.copy(), mats

    labels = np.array(list(product(range(m), repeat=n)), dtype=int)
    weights = np.prod(w[labels], axis=1)
    side = psi.block_len if complementary else ctrl
    mats = np.empty((len(labels), side, side), dtype=complex)
    if n == 2:
        b = psi.blocks.reshape(d, d, d, d, ref)
        for idx, (j1, j2) in enumerate(labels):
            v = np.einsum("ats,buv,absvr->abtur", zg[j1], zg[j2], b)
            v = v.reshape(ctrl, ctrl * ref)
            mats[idx] = v.T @ v.conj() if complementary else v @ v.conj().T
    else:
        shape = (d,) * n + (ref,)
        for idx, jvec in enumerate(labels):
            v = np.empty((ctrl, ctrl * ref), dtype=complex)
            for flat, ivec in enumerate(product(range(d), repeat=n)):
                vec = psi.blocks[flat].reshape(shape)
                for t in range(n):
                    vec = np.moveaxis(
                        np.tensordot(zg[jvec[t], ivec[t]], vec, axes=(1, t)), 0, t
                    )
                v[flat] = vec.ravel()
            mats[idx] = v.T @ v.conj() if complementary else v @ v.conj().T
    return labels, weights, mats


def apply_n(channel: FlaggedPhaseChannel, psi: BlockStateVector) -> CQState:
    """Receiver-side output of n channel uses, one branch per flag tuple."""
    labels, weights, mats = _branch_matrices(channel, psi, complementary=False)
    return CQState(channel.d, psi.n, labels, weights, mats)


def apply_complementary_n(channel: FlaggedPhaseChannel, psi: BlockStateVector) -> CQState:
    """Environment-side output (data register plus any reference) per flag tuple."""
    labels, weights, mats = _branch_matrices(channel, psi, complementary=True)
    return CQState(channel.d, psi.n, labels, weights, mats)


def cq_overlap(x: CQState, y: CQState) -> float:
    """Hilbert-Schmidt overlap of two classical-quantum outputs.

    Flags are perfectly distinguishable, so only matching labels
    contribute; each pair enters with the product of branch weights.
    """
    if x.n != y.n or x.d != y.d or x.labels.shape != y.labels.shape:
        raise ValueError("branch label sets do not match")
    if not np.array_equal(x.labels, y.labels):
        raise ValueError("branch label sets do not match")
    val = np.einsum(
        "j,jab,jab->", x.weights * y.weights, x.matrices.conj(), y.matrices
    )
    return float(val.real)


def random_block_state(
    d: int,
    n: int,
    rng: np.random.Generator,
    support=None,
    ref_dim: int = 1,
) -> BlockStateVector:
    """Normalized state with Gaussian blocks, optionally confined to a support set."""
    blocks = rng.standard_normal((d**n, d**n * ref_dim)) + 1j * rng.standard_normal(
        (d**n, d**n * ref_dim)
    )
    psi = BlockStateVector(d, n, blocks, ref_dim)
    if support is not None:
        keep = {psi.flat_index(label) for label in support}
        for flat in range(d**n):
            if flat not in keep:
                psi.blocks[flat] = 0.0
    norm = psi.total_norm()
    if norm > 0:
        psi.blocks /= norm
    return psi


def save_block_state(psi: BlockStateVector, path) -> None:
    """Serialize as records: control tuple, then the block's complex pairs."""
    if psi.ref_dim != 1:
        raise ValueError("only states without a reference register are serialized")
    d, n = psi.d, psi.n
    chunks = [_BSV_MAGIC + struct.pack("<III", _BSV_VERSION, d, n)]
    for label in product(range(d), repeat=n):
        block = psi.block(label)
        buf = np.empty(2 * block.size, dtype="<f8")
        buf[0::2] = block.real
        buf[1::2] = block.imag
        chunks.append(struct.pack(f"<{n}I", *label) + buf.tobytes())
    Path(path).write_bytes(b"".join(chunks))


def load_block_state(path) -> BlockStateVector:
    raw = Path(path).read_bytes()
    head = len(_BSV_MAGIC) + 12
    if len(raw) < head or raw[: len(_BSV_MAGIC)] != _BSV_MAGIC:
        raise ValueError(f"not a block-state file: {path}")
    version, d, n = struct.unpack("<III", raw[len(_BSV_MAGIC) : head])
    if version != _BSV_VERSION:
        raise ValueError(f"unsupported block-state format version {version}")
    psi = BlockStateVector.zero(d, n)
    rec_len = 4 * n + 16 * d**n
    payload = raw[head:]
    if len(payload) != rec_len * d**n:
        raise ValueError("block-state payload has the wrong length")
    for i in range(d**n):
        rec = payload[i * rec_len : (i + 1) * rec_len]
        label = struct.unpack(f"<{n}I", rec[: 4 * n])
        buf = np.frombuffer(rec[4 * n :], dtype="<f8")
        psi.blocks[psi.flat_index(label)] = buf[0::2] + 1j * buf[1::2]
    return psi
