"""Caro-Wei and Selkow lower bounds on the independence number, in exact rationals."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from .graph import Graph


def caro_wei(g: Graph) -> Fraction:
    return sum((Fraction(1, d + 1) for d in g.degrees), Fraction(0))


def selkow_excess(g: Graph, v: int) -> Fraction:
    """``(1/(d(v)+1)) * (d(v)/(d(v)+1) - sum_{u in N(v)} 1/(d(u)+1))``, unclamped.

    Can be negative; :func:`selkow_correction` clips it at zero.
    """
    d = g.degree(v)
    nbr_sum = sum((Fraction(1, g.degree(u) + 1) for u in g.adj[v]), Fraction(0))
    return Fraction(1, d + 1) * (Fraction(d, d + 1) - nbr_sum)


def selkow_correction(g: Graph, v: int) -> Fraction:
    return max(selkow_excess(g, v), Fraction(0))


@dataclass(frozen=True)
class BoundReport:
    cw: Fraction
    selkow: Fraction
    per_vertex_cw_term: tuple[Fraction, ...]
    per_vertex_correction: tuple[Fraction, ...]

    def to_json(self, digits: int = 6) -> dict:
        return {
            "cw": rational_json(self.cw, digits),
            "selkow": rational_json(self.selkow, digits),
            "per_vertex": [
                {
                    "vertex": v,
                    "cw_term": rational_json(t, digits),
                    "correction": rational_json(c, digits),
                }
                for v, (t, c) in enumerate(
                    zip(self.per_vertex_cw_term, self.per_vertex_correction)
                )
            ],
        }


def selkow_bound(g: Graph) -> BoundReport:
    terms = tuple(Fraction(1, d + 1) for d in g.degrees)
    corrections = tuple(selkow_correction(g, v) for v in range(g.n))
    cw = sum(terms, Fraction(0))
    return BoundReport(
        cw=cw,
        selkow=cw + sum(corrections, Fraction(0)),
        per_vertex_cw_term=terms,
        per_vertex_correction=corrections,
    )


# --- rendering ----------------------------------------------------------------


def to_decimal(q: Fraction, digits: int = 6) -> str:
    """Fixed-point rendering, round-half-even. Display only; never compare these."""
    with localcontext() as ctx:
        ctx.prec = max(28, digits + len(str(abs(q.numerator))) + 2)
        value = Decimal(q.numerator) / Decimal(q.denominator)
        return str(value.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN))


def rational_json(q: Fraction, digits: int = 6) -> dict:
    return {"num": q.numerator, "den": q.denominator, "decimal": to_decimal(q, digits)}


def rational_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
