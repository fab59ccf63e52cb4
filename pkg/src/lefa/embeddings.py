"""Provider-agnostic sentence-embedding acquisition and cosine similarity.

Two providers are supported: a file-backed store keyed by SHA-256 of the
NFC sentence text (fully deterministic, used for offline tests) and a
generic HTTP embedding service. All similarity math runs in 64-bit floats;
stored vectors may be 32-bit.
"""

from __future__ import annotations

import hashlib
import json
import time
import unicodedata
from dataclasses import dataclass
from enum import Enum

import numpy as np
import requests

from .errors import DimensionMismatch, MissingEmbedding, ParseError, ProviderUnavailable


@dataclass(frozen=True)
class EmbeddingVector:
    values: tuple[float, ...]

    @property
    def dims(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


class ProviderKind(Enum):
    FILE_BACKED = "file"
    HTTP_SERVICE = "http"


@dataclass(frozen=True)
class EmbeddingProviderConfig:
    kind: ProviderKind
    path_or_url: str
    expected_dims: int = 768
    batch_size: int = 32
    timeout_ms: int = 30_000
    retries: int = 2

    def __post_init__(self) -> None:
        if self.expected_dims <= 0:
            raise ValueError("expected_dims must be positive")
        if self.batch_size <= 0:
            raise ValueError("batch_size must be positive")


def text_sha256(text: str) -> str:
    """Hash key for the file-backed store: SHA-256 of the NFC text."""
    return hashlib.sha256(unicodedata.normalize("NFC", text).encode("utf-8")).hexdigest()


def normalize(values) -> EmbeddingVector:
    """L2-normalize a raw vector; zero vectors are rejected."""
    arr = np.asarray(values, dtype=np.float64)
    norm = float(np.linalg.norm(arr))
    if norm == 0.0 or not np.isfinite(norm):
        raise ValueError("cannot normalize a zero or non-finite vector")
    return EmbeddingVector(tuple((arr / norm).tolist()))


def write_store(path, entries: dict[str, list[float]] | list[tuple[str, list[float]]]) -> None:
    """Write a file-backed store: JSONL of {"sha256", "dims", "values"}.

    ``entries`` maps sentence text (not hashes) to raw vectors.
    """
    items = entries.items() if isinstance(entries, dict) else entries
    with open(path, "w", encoding="utf-8") as fh:
        for text, values in items:
            rec = {"sha256": text_sha256(text), "dims": len(values), "values": list(values)}
            fh.write(json.dumps(rec) + "\n")


def read_store(path) -> dict[str, list[float]]:
    store: dict[str, list[float]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                values = [float(v) for v in rec["values"]]
                if int(rec["dims"]) != len(values):
                    raise ValueError("dims field disagrees with values length")
                store[rec["sha256"]] = values
            except (KeyError, ValueError, TypeError) as exc:
                raise ParseError(f"bad embedding record: {exc}", line=lineno) from exc
    return store


def _embed_batch_file(texts: list[str], provider: EmbeddingProviderConfig) -> list[list[float]]:
    try:
        store = read_store(provider.path_or_url)
    except OSError as exc:
        raise ProviderUnavailable(f"cannot read embedding store: {exc}") from exc
    out = []
    for text in texts:
        key = text_sha256(text)
        if key not in store:
            raise MissingEmbedding(key, text)
        out.append(store[key])
    return out


def _embed_batch_http(texts: list[str], provider: EmbeddingProviderConfig) -> list[list[float]]:
    url = provider.path_or_url.rstrip("/") + "/embed"
    timeout = provider.timeout_ms / 1000.0
    vectors: list[list[float]] = []
    session = requests.Session()
    for i in range(0, len(texts), provider.batch_size):
        batch = texts[i : i + provider.batch_size]
        last_error: Exception | None = None
        for _attempt in range(provider.retries + 1):
            try:
                resp = session.post(url, json={"texts": batch}, timeout=timeout)
                if resp.status_code != 200:
                    last_error = ProviderUnavailable(f"HTTP {resp.status_code} from {url}")
                    continue
                payload = resp.json()
                vectors.extend(payload["vectors"])
                last_error = None
                break
            except (requests.RequestException, KeyError, ValueError) as exc:
                last_error = exc
        if last_error is not None:
            raise ProviderUnavailable(f"embedding service failed: {last_error}")
    return vectors


def embed_batch(texts: list[str], provider: EmbeddingProviderConfig) -> list[EmbeddingVector]:
    """Fetch one L2-normalized vector per text, in input order."""
    if not texts:
        return []
    if provider.kind is ProviderKind.FILE_BACKED:
        raw = _embed_batch_file(texts, provider)
    else:
        raw = _embed_batch_http(texts, provider)
    out = []
    for text, values in zip(texts, raw):
        if len(values) != provider.expected_dims:
            raise DimensionMismatch(
                f"expected {provider.expected_dims} dims, got {len(values)} for {text!r}"
            )
        out.append(normalize(values))
    return out


def cosine(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Cosine similarity in [-1, 1]; symmetric and clamped on output."""
    if a.dims != b.dims:
        raise DimensionMismatch(f"dims differ: {a.dims} vs {b.dims}")
    va, vb = a.as_array(), b.as_array()
    na, nb = float(np.linalg.norm(va)), float(np.linalg.norm(vb))
    if na == 0.0 or nb == 0.0:
        raise ValueError("cosine undefined for zero vectors")
    # element-wise product keeps evaluation symmetric in the argument order
    score = float(np.sum(va * vb)) / (na * nb)
    return max(-1.0, min(1.0, score))
