"""Named arrangements used by the CLI and the acceptance suite."""
from __future__ import annotations

from .arrangement import Arrangement, ProjLine, singular_points


def two_point_family(p: int, q: int) -> tuple[Arrangement, Arrangement]:
    """(A, B) where B has exactly two multiple points P=(0:0:1), Q=(0:1:0) of
    multiplicities p+1 and q+1, all other points double, and PQ = {x=0} in B;
    A = B minus PQ.

    Lines through P are y - i*x (i = 1..p), lines through Q are z - j*x
    (j = 1..q); they meet pairwise in the distinct points (1:i:j).
    """
    through_p = [ProjLine(-i, 1, 0) for i in range(1, p + 1)]
    through_q = [ProjLine(-j, 0, 1) for j in range(1, q + 1)]
    pq = ProjLine(1, 0, 0)
    B = Arrangement((pq, *through_p, *through_q))
    A = Arrangement((*through_p, *through_q))
    mults = sorted(sp.multiplicity for sp in singular_points(B))
    assert mults == [2] * (p * q) + sorted([p + 1, q + 1]), mults
    return A, B


def _build() -> dict[str, Arrangement]:
    a33, b33 = two_point_family(3, 3)
    return {
        "triangle": Arrangement.from_product("xyz"),
        "pencil-4": Arrangement.from_product("xy(x+y)(x-y)"),
        "near-pencil-5": Arrangement.from_product("xy(x+y)(x-y)z"),
        "paper-2.10": Arrangement.from_product("xyz(x+y)(x-y)(x+4y+z)(y+z)"),
        "paper-3.6": Arrangement.from_product("xyz(x+y)(y+z)(x+2y+z)"),
        "paper-3.3-p3q3-A": a33,
        "paper-3.3-p3q3-B": b33,
    }


CORPUS: dict[str, Arrangement] = _build()


def get(name: str) -> Arrangement:
    try:
        return CORPUS[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(CORPUS)}") from None
