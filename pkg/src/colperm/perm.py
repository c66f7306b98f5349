"""Colored permutations: the group S_{n,r} = Z_r wr S_n.

An element is a pair ``(omega, tau)`` acting on colored letters by
``(omega, tau)(i^c) = omega(i)^(tau(i) + c)``.  All public indexing is
1-based.  The cycle notation lists images: in ``(x1^c1 x2^c2 ...)`` the
letter following ``x_h`` is the image of ``x_h^0``.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence


class ParameterError(ValueError):
    """Raised for invalid (n, r) or mismatched group parameters."""


class MalformedCyclesError(ValueError):
    """Raised when a cycle decomposition does not describe a bijection of [n]."""


def _check_nr(n: int, r: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    if not isinstance(r, int) or r < 1:
        raise ParameterError(f"r must be a positive integer, got {r!r}")


@dataclass(frozen=True, order=True)
class Letter:
    """The colored letter ``value^color``."""

    value: int
    color: int

    def __str__(self) -> str:
        return f"{self.value}^{self.color}"


@dataclass(frozen=True)
class ColoredPermutation:
    n: int
    r: int
    omega: tuple[int, ...]
    tau: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_nr(self.n, self.r)
        omega = tuple(int(v) for v in self.omega)
        tau = tuple(int(c) % self.r for c in self.tau)
        if len(omega) != self.n or len(tau) != self.n:
            raise ParameterError("omega and tau must have length n")
        if sorted(omega) != list(range(1, self.n + 1)):
            raise ParameterError(f"omega is not a permutation of [{self.n}]: {omega}")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "tau", tau)

    @classmethod
    def identity(cls, n: int, r: int) -> "ColoredPermutation":
        return cls(n, r, tuple(range(1, n + 1)), (0,) * n)

    @classmethod
    def from_letters(cls, letters: Sequence[Letter], r: int) -> "ColoredPermutation":
        """Build from one-line notation."""
        return cls(len(letters), r, tuple(l.value for l in letters), tuple(l.color for l in letters))

    def one_line(self) -> tuple[Letter, ...]:
        return tuple(Letter(v, c) for v, c in zip(self.omega, self.tau))

    def __call__(self, letter: Letter) -> Letter:
        return act(self, letter)

    def __mul__(self, other: "ColoredPermutation") -> "ColoredPermutation":
        return compose(self, other)

    def __str__(self) -> str:
        return format_one_line(self)


def compose(a: ColoredPermutation, b: ColoredPermutation) -> ColoredPermutation:
    """Return ``a b``, i.e. apply ``b`` first."""
    if a.n != b.n or a.r != b.r:
        raise ParameterError(f"cannot compose S_({a.n},{a.r}) with S_({b.n},{b.r})")
    omega = tuple(a.omega[w - 1] for w in b.omega)
    tau = tuple((a.tau[w - 1] + t) % a.r for w, t in zip(b.omega, b.tau))
    return ColoredPermutation(a.n, a.r, omega, tau)


def inverse(x: ColoredPermutation) -> ColoredPermutation:
    omega = [0] * x.n
    tau = [0] * x.n
    for i, (w, t) in enumerate(zip(x.omega, x.tau), start=1):
        # x maps i^0 to w^t, so the inverse maps w^0 to i^(-t)
        omega[w - 1] = i
        tau[w - 1] = (-t) % x.r
    return ColoredPermutation(x.n, x.r, tuple(omega), tuple(tau))


def act(x: ColoredPermutation, letter: Letter) -> Letter:
    if not (1 <= letter.value <= x.n):
        raise ParameterError(f"letter {letter} outside [{x.n}]")
    i = letter.value - 1
    return Letter(x.omega[i], (x.tau[i] + letter.color) % x.r)


def elements(n: int, r: int) -> Iterator[ColoredPermutation]:
    """All of S_{n,r} in lexicographic order of (omega, tau)."""
    _check_nr(n, r)
    colorings = list(itertools.product(range(r), repeat=n))
    for omega in itertools.permutations(range(1, n + 1)):
        for tau in colorings:
            yield ColoredPermutation(n, r, omega, tau)


def group_order(n: int, r: int) -> int:
    _check_nr(n, r)
    out = r**n
    for i in range(2, n + 1):
        out *= i
    return out


# --------------------------------------------------------------------------
# cycle notation


@dataclass(frozen=True)
class CycleDecomposition:
    n: int
    r: int
    cycles: tuple[tuple[Letter, ...], ...]

    def __post_init__(self) -> None:
        _check_nr(self.n, self.r)
        seen = [l.value for cyc in self.cycles for l in cyc]
        if any(len(cyc) == 0 for cyc in self.cycles):
            raise MalformedCyclesError("empty cycle")
        if sorted(seen) != list(range(1, self.n + 1)):
            raise MalformedCyclesError(f"cycle values do not partition [{self.n}]: {sorted(seen)}")
        if any(not (0 <= l.color < self.r) for cyc in self.cycles for l in cyc):
            raise MalformedCyclesError(f"color outside Z_{self.r}")

    def lengths(self) -> list[int]:
        return [len(c) for c in self.cycles]

    def colors(self) -> list[int]:
        return [sum(l.color for l in c) % self.r for c in self.cycles]

    def __str__(self) -> str:
        return format_cycles(self.cycles)


def to_cycles(x: ColoredPermutation) -> CycleDecomposition:
    """Canonical cycle notation.

    Each cycle starts with the image of its smallest value, so that the
    smallest value itself is written last; cycles are sorted by minimum.
    """
    seen = [False] * (x.n + 1)
    cycles = []
    for start in range(1, x.n + 1):
        if seen[start]:
            continue
        cyc = []
        i = start
        while True:
            seen[i] = True
            img = Letter(x.omega[i - 1], x.tau[i - 1])
            cyc.append(img)
            i = img.value
            if i == start:
                break
        cycles.append(tuple(cyc))
    return CycleDecomposition(x.n, x.r, tuple(cycles))


def from_cycles(c: CycleDecomposition) -> ColoredPermutation:
    return permutation_from_cycles(c.cycles, c.n, c.r)


def permutation_from_cycles(cycles: Sequence[Sequence[Letter]], n: int, r: int) -> ColoredPermutation:
    """Read a colored permutation off (not necessarily canonical) cycles."""
    CycleDecomposition(n, r, tuple(tuple(c) for c in cycles))  # validation only
    omega = [0] * n
    tau = [0] * n
    for cyc in cycles:
        for h, letter in enumerate(cyc):
            nxt = cyc[(h + 1) % len(cyc)]
            omega[letter.value - 1] = nxt.value
            tau[letter.value - 1] = nxt.color
    return ColoredPermutation(n, r, tuple(omega), tuple(tau))


# --------------------------------------------------------------------------
# total orders on colored letters


class OrderKind(enum.Enum):
    DESCENT = "descent"
    ADIN_ROICHMAN = "adin-roichman"
    CUSTOM = "custom"


@dataclass(frozen=True)
class TotalOrder:
    """A total order on colored letters given by a sort key.

    ``DESCENT``: 1^0 < 2^0 < ... < 1^1 < 2^1 < ...  (colors ascending).
    ``ADIN_ROICHMAN``: 1^(r-1) < 2^(r-1) < ... < 1^0 < 2^0 < ... (colors descending).
    The boundary letter (n+1)^0 sits just above n^0 in both.
    """

    kind: OrderKind = OrderKind.DESCENT
    rank: Optional[Callable[[Letter, int], tuple]] = None

    def key(self, letter: Letter, r: int) -> tuple:
        if self.kind is OrderKind.DESCENT:
            return (letter.color, letter.value)
        if self.kind is OrderKind.ADIN_ROICHMAN:
            return (-letter.color, letter.value)
        if self.rank is None:
            raise ParameterError("custom order needs a rank function")
        return self.rank(letter, r)


DESCENT_ORDER = TotalOrder(OrderKind.DESCENT)
ADIN_ROICHMAN_ORDER = TotalOrder(OrderKind.ADIN_ROICHMAN)


def compare(order: TotalOrder, a: Letter, b: Letter, r: int) -> int:
    """Three-way comparison: -1, 0 or 1."""
    ka, kb = order.key(a, r), order.key(b, r)
    return (ka > kb) - (ka < kb)


def order_by_name(name: str) -> TotalOrder:
    try:
        kind = OrderKind(name)
    except ValueError:
        raise ParameterError(f"unknown order {name!r}") from None
    if kind is OrderKind.CUSTOM:
        raise ParameterError("custom orders are library-only")
    return TotalOrder(kind)


# --------------------------------------------------------------------------
# text formats

_LETTER = re.compile(r"(\d+)\s*\^\s*\{?\s*(\d+)\s*\}?")


def format_letters(letters: Sequence[Letter]) -> str:
    return " ".join(str(l) for l in letters)


def format_one_line(x: ColoredPermutation) -> str:
    return format_letters(x.one_line())


def format_cycles(cycles: Sequence[Sequence[Letter]]) -> str:
    return "".join("(" + format_letters(c) + ")" for c in cycles)


def parse_letters(text: str) -> list[Letter]:
    text = text.strip().strip("[]")
    tokens = [t for t in re.split(r"[\s,]+", text) if t]
    out = []
    for tok in tokens:
        m = _LETTER.fullmatch(tok)
        if not m:
            raise ValueError(f"bad colored letter {tok!r}")
        out.append(Letter(int(m.group(1)), int(m.group(2))))
    return out


def parse_cycles(text: str) -> list[list[Letter]]:
    groups = re.findall(r"\(([^()]*)\)", text)
    if not groups or re.sub(r"\([^()]*\)", "", text).strip():
        raise ValueError(f"bad cycle notation {text!r}")
    return [parse_letters(g) for g in groups]


def parse_element(text: str, r: int, n: Optional[int] = None) -> ColoredPermutation:
    """Parse one-line ("3^1 8^0 ...") or cycle ("(3^1 5^0)(...)") notation."""
    text = text.strip()
    if text.startswith("("):
        cycles = parse_cycles(text)
        size = sum(len(c) for c in cycles)
        if n is not None and n != size:
            raise ParameterError(f"element has {size} letters, expected n={n}")
        return permutation_from_cycles(cycles, size, r)
    letters = parse_letters(text)
    if n is not None and n != len(letters):
        raise ParameterError(f"element has {len(letters)} letters, expected n={n}")
    return ColoredPermutation.from_letters(letters, r)
