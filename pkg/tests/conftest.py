"""Shared fixtures and helpers for the test suite."""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np
import pytest

from lefa.segmenter import DEFAULT_CONFIG, segment_document, tokenize
from lefa.textmodel import Role, Sentence, Theme


def make_doc(text, doc_id="doc", role=Role.ORIGINAL, theme=Theme.OTHER):
    return segment_document(doc_id, role, theme, text)


def make_sentence(text, index=0):
    return tokenize(Sentence(index=index, text=text, char_span=(0, len(text))), DEFAULT_CONFIG)


def random_unit_vectors(n, dims, seed):
    rng = np.random.default_rng(seed)
    vecs = rng.normal(size=(n, dims))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    return vecs


def write_vector_store(path, texts, dims=8, seed=0):
    """Write a file-backed store with one random unit vector per text."""
    from lefa.embeddings import write_store

    vecs = random_unit_vectors(len(texts), dims, seed)
    write_store(path, [(t, v.tolist()) for t, v in zip(texts, vecs)])
    return vecs


class _JsonHandler(BaseHTTPRequestHandler):
    def do_POST(self):  # noqa: N802 (http.server API)
        length = int(self.headers.get("Content-Length", 0))
        body = json.loads(self.rfile.read(length)) if length else {}
        status, payload = self.server.respond(self.path, body)
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, *args):
        pass


class MockHttpService:
    """In-process HTTP server; `respond(path, body) -> (status, payload)`."""

    def __init__(self, respond):
        self.server = ThreadingHTTPServer(("127.0.0.1", 0), _JsonHandler)
        self.server.respond = respond
        self.requests: list[tuple[str, dict]] = []
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)

    @property
    def url(self):
        host, port = self.server.server_address
        return f"http://{host}:{port}"

    def __enter__(self):
        self.thread.start()
        return self

    def __exit__(self, *exc):
        self.server.shutdown()
        self.server.server_close()


@pytest.fixture
def mock_service():
    def factory(respond):
        return MockHttpService(respond)

    return factory
