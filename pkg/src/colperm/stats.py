"""Descent-based statistics on S_{n,r}: des, maj, col, fmaj and the indicators X_i, Y_{i,c}."""

from __future__ import annotations

from dataclasses import dataclass

from .perm import DESCENT_ORDER, ColoredPermutation, Letter, ParameterError, TotalOrder


def descent_set(x: ColoredPermutation, order: TotalOrder = DESCENT_ORDER) -> frozenset[int]:
    """Positions i in [n] with x(i^0) > x((i+1)^0), where x((n+1)^0) = (n+1)^0."""
    keys = [order.key(Letter(v, c), x.r) for v, c in zip(x.omega, x.tau)]
    keys.append(order.key(Letter(x.n + 1, 0), x.r))
    return frozenset(i for i in range(1, x.n + 1) if keys[i - 1] > keys[i])


def des(x: ColoredPermutation, order: TotalOrder = DESCENT_ORDER) -> int:
    return len(descent_set(x, order))


def maj(x: ColoredPermutation, order: TotalOrder = DESCENT_ORDER) -> int:
    return sum(i for i in descent_set(x, order) if i < x.n)


def col(x: ColoredPermutation, order: TotalOrder = DESCENT_ORDER) -> int:
    return sum(x.tau)


def fmaj(x: ColoredPermutation, order: TotalOrder = DESCENT_ORDER) -> int:
    return x.r * maj(x, order) + col(x)


_BASIC = {"des": des, "maj": maj, "col": col, "fmaj": fmaj}


@dataclass(frozen=True)
class Statistic:
    """A named statistic; serializes as ``des``, ``maj``, ``col``, ``fmaj``, ``X:i`` or ``Y:i:c``."""

    name: str
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        arity = {"X": 1, "Y": 2}.get(self.name, 0)
        if self.name not in _BASIC and self.name not in ("X", "Y"):
            raise ParameterError(f"unknown statistic {self.name!r}")
        if len(self.params) != arity:
            raise ParameterError(f"statistic {self.name} takes {arity} parameters")

    def check(self, n: int, r: int) -> None:
        if self.name == "X" and not 1 <= self.params[0] <= n:
            raise ParameterError(f"X index {self.params[0]} outside [{n}]")
        if self.name == "Y":
            i, c = self.params
            if not 1 <= i <= n or not 0 <= c < r:
                raise ParameterError(f"Y:{i}:{c} out of range for S_({n},{r})")

    def __call__(self, x: ColoredPermutation, order: TotalOrder = DESCENT_ORDER) -> int:
        if self.name in _BASIC:
            return _BASIC[self.name](x, order)
        self.check(x.n, x.r)
        if self.name == "X":
            return int(self.params[0] in descent_set(x, order))
        i, c = self.params
        return int(x.tau[i - 1] == c)

    def __str__(self) -> str:
        return ":".join([self.name, *map(str, self.params)])

    @classmethod
    def parse(cls, text: str) -> "Statistic":
        head, *rest = text.strip().split(":")
        try:
            params = tuple(int(p) for p in rest)
        except ValueError:
            raise ParameterError(f"bad statistic {text!r}") from None
        return cls(head, params)

    def max_value(self, n: int, r: int) -> int:
        """Upper bound on the statistic over S_{n,r}."""
        return {
            "des": n,
            "maj": n * (n - 1) // 2,
            "col": n * (r - 1),
            "fmaj": r * n * (n - 1) // 2 + n * (r - 1),
        }.get(self.name, 1)


def indicator_X(i: int) -> Statistic:
    if i < 1:
        raise ParameterError(f"position {i} out of range")
    return Statistic("X", (i,))


def indicator_Y(i: int, c: int) -> Statistic:
    if i < 1 or c < 0:
        raise ParameterError(f"Y:{i}:{c} out of range")
    return Statistic("Y", (i, c))


DES, MAJ, COL, FMAJ = (Statistic(s) for s in ("des", "maj", "col", "fmaj"))
