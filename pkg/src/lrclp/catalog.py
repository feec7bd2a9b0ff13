"""Built-in codes: the two robust LRC examples and small textbook codes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .code import LinearCode, code_from_generator, code_from_parity_check
from .field import FieldMatrix


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    code: LinearCode
    claims: tuple[tuple[int, int, int, int], ...] = ()  # (r, beta, gamma, zeta)
    provenance: str = ""
    labels: tuple[str, ...] = field(default=())  # node labels, coordinate order


def example1() -> LinearCode:
    """Binary [16, 9, 4] product-style code on a 3x3 grid of data nodes.

    Coordinates 0..8 are C1..C9 (row-major grid), 9..15 are P1..P7.  P1..P3
    are row parities, P4..P6 column parities and P7 the parity of all nine
    data bits.
    """
    H = np.zeros((7, 16), dtype=np.int64)
    for j in range(3):
        H[j, 9 + j] = 1
        H[j, 3 * j:3 * j + 3] = 1
    for m in range(3):
        H[3 + m, 12 + m] = 1
        H[3 + m, [m, m + 3, m + 6]] = 1
    H[6, 15] = 1
    H[6, :9] = 1
    return code_from_parity_check(FieldMatrix(H, 2))


EXAMPLE2_PARITIES = {0: (4, 5, 7), 1: (4, 5, 6), 2: (4, 6, 7), 3: (5, 6, 7)}


def example2() -> LinearCode:
    """Binary [8, 4, 4] cube code.

    Coordinates 0..3 are C1..C4 and 4..7 are P1..P4 with
    P1 = C1+C2+C3, P2 = C1+C2+C4, P3 = C2+C3+C4, P4 = C1+C3+C4.
    """
    G = np.zeros((4, 8), dtype=np.int64)
    for i, parities in EXAMPLE2_PARITIES.items():
        G[i, i] = 1
        G[i, list(parities)] = 1
    return code_from_generator(FieldMatrix(G, 2))


def repetition(n: int, q: int = 2) -> LinearCode:
    return code_from_generator(FieldMatrix(np.ones((1, n), dtype=np.int64), q))


def single_parity(n: int, q: int = 2) -> LinearCode:
    G = np.hstack([np.eye(n - 1, dtype=np.int64), np.full((n - 1, 1), q - 1, dtype=np.int64)])
    return code_from_generator(FieldMatrix(G, q))


def hamming_7_4() -> LinearCode:
    H = np.array([[(j >> b) & 1 for j in range(1, 8)] for b in range(3)], dtype=np.int64)
    return code_from_parity_check(FieldMatrix(H, 2))


_STANDARD = {
    "repetition": repetition,
    "single_parity": single_parity,
    "hamming_7_4": hamming_7_4,
}


def standard(name: str, *params) -> LinearCode:
    try:
        build = _STANDARD[name]
    except KeyError:
        raise KeyError(f"unknown standard code {name!r}; known: {', '.join(sorted(_STANDARD))}") from None
    return build(*params)


_LABELS1 = tuple([f"C{i}" for i in range(1, 10)] + [f"P{i}" for i in range(1, 8)])
_LABELS2 = tuple([f"C{i}" for i in range(1, 5)] + [f"P{i}" for i in range(1, 5)])


def entries() -> dict[str, CatalogEntry]:
    return {
        "example1": CatalogEntry(
            "example1", example1(), ((3, 3, 1, 1), (3, 3, 0, 2)),
            "binary [16,9,4] code: row, column and overall parities of a 3x3 grid", _LABELS1),
        "example2": CatalogEntry(
            "example2", example2(), ((3, 3, 0, 7), (3, 3, 1, 4), (3, 3, 2, 2)),
            "binary [8,4,4] cube code", _LABELS2),
        "hamming_7_4": CatalogEntry("hamming_7_4", hamming_7_4(), (), "textbook [7,4,3] Hamming code"),
        "repetition_2": CatalogEntry("repetition_2", repetition(2), (), "binary [2,1,2] repetition"),
        "repetition_3": CatalogEntry("repetition_3", repetition(3), (), "binary [3,1,3] repetition"),
        "repetition_3_q3": CatalogEntry("repetition_3_q3", repetition(3, 3), (), "ternary [3,1,3] repetition"),
        "single_parity_4": CatalogEntry("single_parity_4", single_parity(4), (), "binary [4,3,2] parity code"),
    }


def get(name: str) -> CatalogEntry:
    table = entries()
    if name not in table:
        raise KeyError(f"unknown catalog code {name!r}; known: {', '.join(table)}")
    return table[name]
