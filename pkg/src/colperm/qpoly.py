"""Polynomials in q with integer coefficients."""

from __future__ import annotations

import json
from math import comb
from typing import Iterable, Sequence


class QPolynomial:
    """Immutable integer polynomial; ``coeffs[d]`` is the coefficient of q^d."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def q_int(cls, i: int) -> "QPolynomial":
        """[i]_q = 1 + q + ... + q^(i-1)."""
        return cls([1] * i)

    @classmethod
    def one(cls) -> "QPolynomial":
        return cls([1])

    @classmethod
    def monomial(cls, d: int, c: int = 1) -> "QPolynomial":
        return cls([0] * d + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, d: int) -> int:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == QPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        m = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(self[d] + other[d] for d in range(m))

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out)

    def __call__(self, q):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * q + a
        return acc

    def series_over_one_minus_q(self, power: int, terms: int) -> list[int]:
        """First ``terms`` coefficients of self / (1-q)^power."""
        return [
            sum(self[d] * comb(i - d + power - 1, power - 1) for d in range(min(i, self.degree) + 1))
            for i in range(terms)
        ]

    def to_json(self) -> str:
        return json.dumps([str(a) for a in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> "QPolynomial":
        return cls(int(a) for a in json.loads(text))

    def __repr__(self) -> str:
        return f"QPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for d, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mono = "" if d == 0 else ("q" if d == 1 else f"q^{d}")
            coef = str(a) if (a != 1 or d == 0) else ""
            terms.append(coef + mono)
        return " + ".join(terms) or "0"


def product(polys: Sequence[QPolynomial]) -> QPolynomial:
    out = QPolynomial.one()
    for p in polys:
        out = out * p
    return out


def q_factorial(n: int) -> QPolynomial:
    return product([QPolynomial.q_int(i) for i in range(1, n + 1)])


def fmaj_product(n: int, r: int) -> QPolynomial:
    """[r]_q [2r]_q ... [nr]_q."""
    return product([QPolynomial.q_int(i * r) for i in range(1, n + 1)])
