"""
Full symmetric eigendecomposition, sector by sector, and an on-disk cache.

Thermal traces need every eigenvalue but no eigenvectors, so the default
path is eigenvalues only. Eigenvectors are kept per total-Sz sector
together with the basis indices they live on.

Cache files are a short text header followed by little-endian float64
(and int64 index) payloads, so reloads are bit-exact. A file that fails
any header or length check is reported with a warning and treated as a
miss.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .chain import (
    ChainSpec,
    build_hamiltonian,
    dimension,
    max_vector_dim,
    sector_index,
    sector_split,
)
from .errors import EigensolverError, InstanceTooLarge

FORMAT_VERSION = "spinwitness-spectrum/1"


@dataclass(frozen=True)
class Sector:
    twice_sz: int
    indices: np.ndarray
    values: np.ndarray
    vectors: np.ndarray | None = None  # columns are eigenvectors


@dataclass(frozen=True)
class SpectralData:
    spec: ChainSpec
    eigenvalues: np.ndarray
    sectors: tuple[Sector, ...] = ()
    meta: dict = field(default_factory=dict)

    @property
    def has_vectors(self) -> bool:
        return bool(self.sectors) and all(sec.vectors is not None for sec in self.sectors)

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def iter_eigenpairs(self):
        """Yield ``(energy, indices, vector)`` for every eigenvector, sector by sector."""
        for sec in self.sectors:
            for k in range(len(sec.values)):
                yield sec.values[k], sec.indices, sec.vectors[:, k]

    def full_vector(self, indices, vec) -> np.ndarray:
        out = np.zeros(self.dim)
        out[indices] = vec
        return out

    def scaled(self, factor: float) -> "SpectralData":
        """Spectrum of the same chain with J multiplied by ``factor`` (> 0)."""
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        spec = self.spec.with_coupling(self.spec.J * factor)
        sectors = tuple(
            Sector(s.twice_sz, s.indices, s.values * factor, s.vectors) for s in self.sectors
        )
        return SpectralData(spec, self.eigenvalues * factor, sectors, _meta(spec))


def fingerprint(spec: ChainSpec) -> str:
    key = f"{FORMAT_VERSION}|{spec.spin.twice_s}|{spec.L}|{spec.J!r}|{int(spec.periodic)}"
    return hashlib.sha256(key.encode()).hexdigest()[:16]


def _meta(spec):
    return {"version": FORMAT_VERSION, "fingerprint": fingerprint(spec)}


def _solve(twice_sz, block, need_vectors):
    try:
        if need_vectors:
            return np.linalg.eigh(block)
        return np.linalg.eigvalsh(block), None
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(twice_sz, str(exc)) from exc


def diagonalize(spec: ChainSpec, need_vectors: bool = False, workers: int = 1) -> SpectralData:
    """All eigenvalues of H (ascending), optionally with per-sector eigenvectors."""
    dim = dimension(spec)
    if need_vectors and dim > max_vector_dim():
        raise InstanceTooLarge(
            f"{spec.describe()}: eigenvectors requested for dimension {dim} > {max_vector_dim()}"
        )
    index = sector_index(spec)
    blocks = sector_split(spec, build_hamiltonian(spec), index)

    def run(item):
        k, block = item
        return k, _solve(k, block, need_vectors)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            solved = dict(pool.map(run, blocks))
    else:
        solved = dict(map(run, blocks))

    sectors = []
    for k, idx in index:
        vals, vecs = solved[k]
        sectors.append(Sector(k, idx, vals, vecs))
    eigenvalues = np.sort(np.concatenate([sec.values for sec in sectors]))
    return SpectralData(spec, eigenvalues, tuple(sectors), _meta(spec))


def ground_energy(sd: SpectralData) -> float:
    if sd.dim == 0:
        raise ValueError("empty spectrum")
    return float(sd.eigenvalues[0])


def multiplicities(values, rtol: float = 1e-9) -> list[tuple[float, int]]:
    """Group sorted eigenvalues into (value, degeneracy) pairs.

    Two neighbours belong to one level when they differ by less than
    ``rtol * max(1, |E|)``.
    """
    values = np.sort(np.asarray(values, dtype=float))
    levels: list[tuple[float, int]] = []
    start = 0
    for k in range(1, len(values) + 1):
        if k == len(values) or values[k] - values[k - 1] > rtol * max(1.0, abs(values[k - 1])):
            levels.append((float(values[start:k].mean()), k - start))
            start = k
    return levels


# -- cache -----------------------------------------------------------------


def cache_path(spec: ChainSpec, directory, kind: str = "vals") -> Path:
    bc = "pbc" if spec.periodic else "obc"
    return Path(directory) / f"s{spec.spin.twice_s}_L{spec.L}_J{spec.J!r}_{bc}_{kind}.bin"


def _header(spec, kind, **extra) -> bytes:
    lines = [
        FORMAT_VERSION,
        f"fingerprint={fingerprint(spec)}",
        f"twice_s={spec.spin.twice_s}",
        f"L={spec.L}",
        f"J={spec.J!r}",
        f"periodic={int(spec.periodic)}",
        f"kind={kind}",
    ]
    lines += [f"{k}={v}" for k, v in extra.items()]
    lines.append("end")
    return ("\n".join(lines) + "\n").encode("ascii")


def _atomic_write(path: Path, payload: bytes):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cache_store(sd: SpectralData, directory) -> list[Path]:
    """Write eigenvalues and, if present, one eigenvector file per sector."""
    spec = sd.spec
    vals = np.ascontiguousarray(sd.eigenvalues, dtype="<f8")
    path = cache_path(spec, directory)
    _atomic_write(path, _header(spec, "vals", count=len(vals)) + vals.tobytes())
    written = [path]
    if sd.has_vectors:
        for sec in sd.sectors:
            kind = f"vecs-sector-{sec.twice_sz}"
            n = len(sec.values)
            payload = (
                np.ascontiguousarray(sec.indices, dtype="<i8").tobytes()
                + np.ascontiguousarray(sec.values, dtype="<f8").tobytes()
                + np.ascontiguousarray(sec.vectors, dtype="<f8").tobytes()
            )
            p = cache_path(spec, directory, kind)
            _atomic_write(p, _header(spec, kind, size=n) + payload)
            written.append(p)
    return written


def _read(path: Path, spec: ChainSpec, kind: str):
    """Return (header dict, payload bytes) or None (with a warning) if unusable."""
    try:
        raw = path.read_bytes()
    except FileNotFoundError:
        return None
    end = raw.find(b"\nend\n")
    if end < 0:
        warnings.warn(f"spectrum cache {path}: header is damaged; ignoring file")
        return None
    try:
        lines = raw[:end].decode("ascii").split("\n")
        header = dict(line.split("=", 1) for line in lines[1:])
        version = lines[0]
    except (UnicodeDecodeError, ValueError):
        warnings.warn(f"spectrum cache {path}: header is unreadable; ignoring file")
        return None
    if version != FORMAT_VERSION or header.get("kind") != kind:
        warnings.warn(f"spectrum cache {path}: format/kind mismatch; ignoring file")
        return None
    if header.get("fingerprint") != fingerprint(spec) or header.get("J") != repr(spec.J):
        return None
    return header, raw[end + len(b"\nend\n"):]


def cache_load(spec: ChainSpec, need_vectors: bool, directory) -> SpectralData | None:
    """Load a cached spectrum; ``None`` on any miss."""
    got = _read(cache_path(spec, directory), spec, "vals")
    if got is None:
        return None
    header, payload = got
    count = int(header.get("count", -1))
    if count != spec.d**spec.L or len(payload) != 8 * count:
        warnings.warn(f"spectrum cache for {spec.describe()}: payload length mismatch; ignoring file")
        return None
    eigenvalues = np.frombuffer(payload, dtype="<f8").astype(float)
    if not need_vectors:
        return SpectralData(spec, eigenvalues, (), _meta(spec))

    sectors = []
    for k, _ in sector_index(spec):
        got = _read(cache_path(spec, directory, f"vecs-sector-{k}"), spec, f"vecs-sector-{k}")
        if got is None:
            return None
        header, payload = got
        n = int(header.get("size", -1))
        if n < 0 or len(payload) != 8 * (2 * n + n * n):
            warnings.warn(f"spectrum cache sector {k} for {spec.describe()}: payload length mismatch")
            return None
        idx = np.frombuffer(payload[: 8 * n], dtype="<i8").astype(np.intp)
        vals = np.frombuffer(payload[8 * n : 16 * n], dtype="<f8").astype(float)
        vecs = np.frombuffer(payload[16 * n :], dtype="<f8").reshape(n, n).astype(float)
        sectors.append(Sector(k, idx, vals, vecs))
    return SpectralData(spec, eigenvalues, tuple(sectors), _meta(spec))


def get_spectrum(spec: ChainSpec, need_vectors: bool = False, cache_dir=None, workers: int = 1):
    """Cached diagonalization. Returns ``(SpectralData, hit)``."""
    if cache_dir is not None:
        sd = cache_load(spec, need_vectors, cache_dir)
        if sd is not None:
            return sd, True
    sd = diagonalize(spec, need_vectors, workers)
    if cache_dir is not None:
        cache_store(sd, cache_dir)
    return sd, False
