"""Bit-packed row sets for fast disjointness and cover tests."""

from __future__ import annotations

import numpy as np

CELL_BUDGET = 1 << 22


def _block(m: int, words: int) -> int:
    return max(1, min(m, CELL_BUDGET // max(1, m * words)))


def pack_rows(rows: np.ndarray) -> np.ndarray:
    """Pack a boolean (m, n) array into (m, ceil(n/64)) uint64 words, bit j of word w = column 64w + j."""
    rows = np.asarray(rows, dtype=bool)
    m, n = rows.shape
    words = max(1, -(-n // 64))
    padded = np.zeros((m, words * 64), dtype=bool)
    padded[:, :n] = rows
    bits = padded.reshape(m, words, 64).astype(np.uint64)
    shifts = np.arange(64, dtype=np.uint64)
    return (bits << shifts).sum(axis=2, dtype=np.uint64)


def full_mask(n: int) -> np.ndarray:
    return pack_rows(np.ones((1, n), dtype=bool))[0]


def first_disjoint_pair(masks: np.ndarray, block: int | None = None) -> tuple[tuple[int, int] | None, int]:
    """Lexicographically least (i, j), i < j, with masks[i] & masks[j] == 0.

    Returns the pair (or None) together with the number of pairs examined.
    """
    m = masks.shape[0]
    block = block or _block(m, masks.shape[1])
    work = 0
    for start in range(0, m, block):
        stop = min(m, start + block)
        chunk = masks[start:stop]
        disjoint = ~np.any(chunk[:, None, :] & masks[None, start:, :], axis=2)
        # only j > i counts
        rel = np.arange(stop - start)[:, None] >= np.arange(m - start)[None, :]
        disjoint &= ~rel
        hits = np.flatnonzero(disjoint.any(axis=1))
        if hits.size:
            i = int(hits[0])
            j = int(np.flatnonzero(disjoint[i])[0])
            work += sum(m - start - r - 1 for r in range(i)) + j - i
            return (start + i, start + j), work
        work += sum(m - r - 1 for r in range(start, stop))
    return None, work


def first_covering_pair(masks: np.ndarray, full: np.ndarray, block: int | None = None) -> tuple[tuple[int, int] | None, int]:
    """Lexicographically least (i, j), i <= j, with masks[i] | masks[j] == full."""
    m = masks.shape[0]
    block = block or _block(m, masks.shape[1])
    work = 0
    for start in range(0, m, block):
        stop = min(m, start + block)
        chunk = masks[start:stop]
        covers = np.all((chunk[:, None, :] | masks[None, start:, :]) == full[None, None, :], axis=2)
        rel = np.arange(stop - start)[:, None] > np.arange(m - start)[None, :]
        covers &= ~rel
        hits = np.flatnonzero(covers.any(axis=1))
        if hits.size:
            i = int(hits[0])
            j = int(np.flatnonzero(covers[i])[0])
            work += sum(m - start - r for r in range(i)) + j - i + 1
            return (start + i, start + j), work
        work += sum(m - r for r in range(start, stop))
    return None, work


def first_nested_pair(masks: np.ndarray, block: int | None = None) -> tuple[tuple[int, int] | None, int]:
    """Lexicographically least ordered (i, j), i != j, with masks[i] a subset of masks[j]."""
    m = masks.shape[0]
    block = block or _block(m, masks.shape[1])
    work = 0
    for start in range(0, m, block):
        stop = min(m, start + block)
        chunk = masks[start:stop]
        nested = ~np.any(chunk[:, None, :] & ~masks[None, :, :], axis=2)
        nested[np.arange(stop - start), np.arange(start, stop)] = False
        hits = np.flatnonzero(nested.any(axis=1))
        if hits.size:
            i = int(hits[0])
            j = int(np.flatnonzero(nested[i])[0])
            work += i * m + j + 1
            return (start + i, start + j), work
        work += (stop - start) * m
    return None, work


def submask_min_index(masks: np.ndarray, n: int) -> np.ndarray:
    """``out[m]`` = least index i with masks[i] a subset of m (or len(masks) if none), for all m < 2^n.

    ``masks`` is a 1-D integer array of n-bit masks.
    """
    size = 1 << n
    sentinel = len(masks)
    out = np.full(size, sentinel, dtype=np.int64)
    np.minimum.at(out, masks.astype(np.int64), np.arange(len(masks), dtype=np.int64))
    for b in range(n):
        view = out.reshape(-1, 2, 1 << b)
        np.minimum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return out
