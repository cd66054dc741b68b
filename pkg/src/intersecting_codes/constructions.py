"""Explicit intersecting codes: Reed-Solomon arcs, sparse tetrahedra, concatenation, catalogue."""

from __future__ import annotations

import hashlib
import re
from math import gcd
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .catalogue_data import CATALOGUE_SHA256, CATALOGUE_TEXT
from .linalg_codes import LinearCode
from .errors import FieldMismatch
from .finite_field import FieldCtx, expansion_table, gf, make_field


def rs_code(ctx: FieldCtx, n: int, k: int) -> LinearCode:
    """Evaluation code of polynomials of degree < k.

    Points are the first n field elements in canonical order; n = q + 1 adds the point at infinity.
    """
    q = ctx.q
    if not 1 <= k <= n <= q + 1:
        raise ValueError(f"need 1 <= k <= n <= q + 1, got n={n}, k={k}, q={q}")
    pts = np.arange(min(n, q), dtype=np.int64)
    g = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        g[i, : len(pts)] = [ctx.pow(int(x), i) for x in pts]
    if n == q + 1:
        g[k - 1, q] = 1
    return LinearCode(ctx, g)


def rs_arc_code(k: int, q: int) -> LinearCode:
    """[2k - 1, k, k]_q Reed-Solomon code; its columns form an arc."""
    if 2 * k - 1 > q + 1:
        raise ValueError(f"no {2 * k - 1}-point arc from a Reed-Solomon code over GF({q})")
    return rs_code(gf(q), 2 * k - 1, k)


def sparse_tetrahedron(k: int, q: int, edge_chooser: Callable[[int, int], int] | None = None) -> LinearCode:
    """Frame points e_i followed by e_i + c e_j for i < j, with c = chooser(i, j) + 1 (default 1).

    Over GF(2) the third point of every edge is forced and the chooser is ignored.
    """
    if k < 2:
        raise ValueError("a sparse tetrahedron needs k >= 2")
    ctx = gf(q)
    cols = [np.eye(k, dtype=np.int64)[i] for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            idx = 0 if q == 2 or edge_chooser is None else int(edge_chooser(i, j))
            if not 0 <= idx < q - 1:
                raise ValueError(f"edge chooser index {idx} outside [0, {q - 2}]")
            v = np.zeros(k, dtype=np.int64)
            v[i] = 1
            v[j] = idx + 1
            cols.append(v)
    return LinearCode(ctx, np.array(cols).T)


def concatenate(inner: LinearCode, outer: LinearCode) -> LinearCode:
    """Each outer coordinate x becomes expand(x) times the systematic inner generator.

    The outer field must be the degree-k extension of the inner field, k = inner dimension.
    """
    small, big = inner.ctx, outer.ctx
    if big.p != small.p or big.h != small.h * inner.k:
        raise FieldMismatch(f"outer field {big} is not the degree-{inner.k} extension of {small}")
    table = expansion_table(big, small)
    enc = inner.systematic_encoder()
    rows = []
    for g in outer.gen:
        for j in range(inner.k):
            word = big.vmul(g, big.pow(big.alpha, j))
            coords = table[word]  # (N, k)
            rows.append(small.matmul(coords, enc).reshape(-1))
    return LinearCode(small, np.array(rows))


# ---------- catalogue ----------


@dataclass(frozen=True)
class CatalogueEntry:
    name: str
    q: int
    k: int
    n: int
    d: int
    tokens: tuple[tuple[str, ...], ...]
    claim: str = "optimal"

    @property
    def ctx(self) -> FieldCtx:
        return gf(self.q)

    @property
    def matrix(self) -> np.ndarray:
        return decode_tokens(self.ctx, self.tokens)

    def code(self) -> LinearCode:
        return LinearCode(self.ctx, self.matrix)


def decode_token(ctx: FieldCtx, tok: str, alpha: int | None = None) -> int:
    """Field element named by a catalogue token; ``alpha`` overrides the primitive element."""
    a = ctx.alpha if alpha is None else alpha
    if tok == "a":
        return a
    if tok.startswith("a"):
        return ctx.pow(a, int(tok[1:]))
    v = int(tok)
    if not 0 <= v < ctx.p:
        raise ValueError(f"integer token {tok} is not a prime-subfield element of {ctx}")
    return v


def decode_tokens(ctx: FieldCtx, tokens, alpha: int | None = None) -> np.ndarray:
    return np.array([[decode_token(ctx, t, alpha) for t in row] for row in tokens], dtype=np.int64)


_HEADER = re.compile(r"\[(\w+)\] q=(\d+) k=(\d+) n=(\d+) d=(\d+)")


def catalogue_checksum() -> str:
    return hashlib.sha256(CATALOGUE_TEXT.encode()).hexdigest()


@lru_cache(maxsize=1)
def catalogue() -> tuple[CatalogueEntry, ...]:
    if catalogue_checksum() != CATALOGUE_SHA256:
        raise RuntimeError("catalogue data does not match its checksum")
    entries = []
    for block in CATALOGUE_TEXT.strip().split("\n\n"):
        lines = block.strip().splitlines()
        m = _HEADER.fullmatch(lines[0].strip())
        if m is None:
            raise ValueError(f"bad catalogue header {lines[0]!r}")
        name, q, k, n, d = m.group(1), *map(int, m.groups()[1:])
        tokens = tuple(tuple(line.split()) for line in lines[1:])
        if len(tokens) != k or any(len(r) != n for r in tokens):
            raise ValueError(f"catalogue entry {name} has the wrong shape")
        entries.append(CatalogueEntry(name, q, k, n, d, tokens))
    return tuple(entries)


def catalogue_entry(q: int, k: int) -> CatalogueEntry:
    for e in catalogue():
        if (e.q, e.k) == (q, k):
            return e
    raise KeyError(f"no catalogue entry for q={q}, k={k}")


def primitive_elements(ctx: FieldCtx) -> list[int]:
    """All generators of the multiplicative group, ascending."""
    return sorted(int(ctx.exp[j]) for j in range(ctx.q - 1) if gcd(j, ctx.q - 1) == 1)


def extension_of(small: FieldCtx, degree: int) -> FieldCtx:
    return make_field(small.p, small.h * degree)
