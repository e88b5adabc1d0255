"""Exact arithmetic in the Chow ring of projective space.

``A_*P^N`` is identified with ``Z[H]/(H^(N+1))``; a class is stored as its
coefficient vector indexed by *codimension*, so ``coeffs[i]`` multiplies
``H^i`` and the dimension-``k`` piece lives at index ``N - k``.

On top of the ring structure this module provides the graded operations
used throughout: the alternating-sign dual, the ``Pic`` action
``a (x) L = sum a^i / c(L)^i`` and the involutions
``i_{n,L}(a) = c(L)^n . (dual(a) (x) L)``.

Everything stays in ``Z``: the only series ever inverted are ``1 + mH``
(or products of them), whose leading coefficient is a unit.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable


def generalized_binomial(a: int, k: int) -> int:
    """Binomial coefficient ``C(a, k)`` for any integer ``a``.

    Returns 0 for ``k < 0``; otherwise the falling factorial
    ``a (a-1) ... (a-k+1) / k!``, which is an integer for every ``a``.

    >>> generalized_binomial(-1, 2)
    1
    >>> generalized_binomial(3, 5)
    0
    """
    if k < 0:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= a - i
        den *= i + 1
    return num // den


@dataclass(frozen=True)
class LineBundle:
    """The line bundle ``O(twist)`` on ``P^N``, with ``c(O(m)) = 1 + mH``."""

    twist: int

    def tensor(self, other: LineBundle) -> LineBundle:
        return LineBundle(self.twist + other.twist)

    def dual(self) -> LineBundle:
        return LineBundle(-self.twist)


@dataclass(frozen=True)
class ChowClass:
    ambient_dim: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.ambient_dim < 0:
            raise ValueError(f"ambient dimension must be >= 0, got {self.ambient_dim}")
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.ambient_dim + 1:
            raise ValueError(
                f"expected {self.ambient_dim + 1} coefficients for P^{self.ambient_dim}, "
                f"got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, N: int) -> ChowClass:
        return cls(N, (0,) * (N + 1))

    @classmethod
    def one(cls, N: int) -> ChowClass:
        return cls(N, (1,) + (0,) * N)

    @classmethod
    def hyperplane_power(cls, N: int, i: int, coeff: int = 1) -> ChowClass:
        """``coeff * H^i``; zero when ``i > N``."""
        c = [0] * (N + 1)
        if 0 <= i <= N:
            c[i] = coeff
        elif i < 0:
            raise ValueError("negative power of H")
        return cls(N, tuple(c))

    @classmethod
    def from_series(cls, N: int, coeffs: Iterable[int]) -> ChowClass:
        """Truncate (or zero-pad) an arbitrary coefficient sequence to ``P^N``."""
        c = list(coeffs)[: N + 1]
        c += [0] * (N + 1 - len(c))
        return cls(N, tuple(c))

    def codim(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i <= self.ambient_dim else 0

    def dim(self, k: int) -> int:
        """Coefficient of the dimension-``k`` piece, i.e. of ``H^(N-k)``."""
        return self.codim(self.ambient_dim - k)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: ChowClass) -> None:
        if not isinstance(other, ChowClass):
            raise TypeError(f"expected ChowClass, got {type(other).__name__}")
        if other.ambient_dim != self.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: P^{self.ambient_dim} vs P^{other.ambient_dim}"
            )

    def __add__(self, other: ChowClass) -> ChowClass:
        self._check(other)
        return ChowClass(self.ambient_dim, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: ChowClass) -> ChowClass:
        self._check(other)
        return ChowClass(self.ambient_dim, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> ChowClass:
        return ChowClass(self.ambient_dim, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowClass(self.ambient_dim, tuple(other * a for a in self.coeffs))
        return ring_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __str__(self) -> str:
        return format_class(self)


def ring_product(a: ChowClass, b: ChowClass) -> ChowClass:
    """Product in ``Z[H]/(H^(N+1))``; terms past ``H^N`` are dropped."""
    a._check(b)
    N = a.ambient_dim
    out = [0] * (N + 1)
    bc = b.coeffs
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j in range(N + 1 - i):
                out[i + j] += ai * bc[j]
    return ChowClass(N, tuple(out))


def unit_inverse(a: ChowClass) -> ChowClass:
    """Multiplicative inverse of a class whose constant term is +1 or -1."""
    c0 = a.coeffs[0]
    if c0 not in (1, -1):
        raise ValueError(f"leading coefficient {c0} is not a unit in Z")
    N = a.ambient_dim
    inv = [0] * (N + 1)
    inv[0] = c0
    # a * inv = 1  =>  inv_k = -c0 * sum_{i=1..k} a_i inv_{k-i}
    for k in range(1, N + 1):
        s = 0
        for i in range(1, k + 1):
            s += a.coeffs[i] * inv[k - i]
        inv[k] = -c0 * s
    return ChowClass(N, tuple(inv))


@lru_cache(maxsize=4096)
def _line_power(N: int, m: int, k: int) -> tuple[int, ...]:
    return tuple(generalized_binomial(k, i) * m**i for i in range(N + 1))


def chern_power(L: LineBundle, k: int, N: int) -> ChowClass:
    """``c(L)^k = (1 + mH)^k`` in ``A_*P^N`` for any integer ``k``."""
    return ChowClass(N, _line_power(N, L.twist, k))


def dual(a: ChowClass) -> ChowClass:
    return ChowClass(a.ambient_dim, tuple(-c if i & 1 else c for i, c in enumerate(a.coeffs)))


def tensor_line(a: ChowClass, L: LineBundle) -> ChowClass:
    """The ``Pic`` action: the codimension-``i`` piece is divided by ``c(L)^i``."""
    m = L.twist
    if m == 0:
        return a
    N = a.ambient_dim
    out = [0] * (N + 1)
    for i, ai in enumerate(a.coeffs):
        if ai:
            series = _line_power(N, m, -i)
            for j in range(N + 1 - i):
                out[i + j] += ai * series[j]
    return ChowClass(N, tuple(out))


def involution(a: ChowClass, n: int, L: LineBundle) -> ChowClass:
    """``i_{n,L}(a) = c(L)^n . (dual(a) (x) L)``; squares to the identity."""
    return ring_product(chern_power(L, n, a.ambient_dim), tensor_line(dual(a), L))


def degree(a: ChowClass) -> int:
    """Pushforward to a point: the coefficient of ``H^N``."""
    return a.coeffs[-1]


# --- text / JSON forms -------------------------------------------------------

def format_class(a: ChowClass) -> str:
    """Canonical text form, e.g. ``1 + 3H - 1H^2``; the zero class prints as ``0``."""
    parts = []
    for i, c in enumerate(a.coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else ("H" if i == 1 else f"H^{i}")
        body = f"{abs(c)}{mono}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"


def format_dimensions(a: ChowClass) -> str:
    """Dimension-indexed annotation, e.g. ``[0]=1 [1]=5`` (never parsed back)."""
    N = a.ambient_dim
    items = [f"[{N - i}]={c}" for i, c in enumerate(a.coeffs) if c]
    return " ".join(reversed(items)) if items else "0"


_TERM = re.compile(
    r"\s*([+-])?\s*(\d+)?\s*(\*)?\s*(?:(H)(?:\s*\^\s*(\d+))?)?\s*"
)


def _parse_terms(text: str) -> dict[int, int]:
    s = text.strip()
    if not s:
        raise ValueError("empty class literal")
    terms: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, star, h, exp = m.groups()
        if m.end() == pos or (num is None and h is None):
            raise ValueError(f"cannot parse class literal {text!r} at column {pos + 1}")
        if sign is None and not first:
            raise ValueError(f"missing '+' or '-' before column {pos + 1} in {text!r}")
        if star and (num is None or h is None):
            raise ValueError(f"misplaced '*' in {text!r}")
        coeff = int(num) if num is not None else 1
        if sign == "-":
            coeff = -coeff
        power = 0 if h is None else (int(exp) if exp is not None else 1)
        terms[power] = terms.get(power, 0) + coeff
        pos = m.end()
        first = False
    return terms


def parse_class(text: str, ambient_dim: int | None = None) -> ChowClass:
    """Parse a class from either its text form or a JSON array ``[c0, ..., cN]``.

    Without ``ambient_dim`` the text form is read in ``P^e`` where ``e`` is
    the largest exponent present; the JSON form always fixes ``N`` by its
    length.
    """
    s = text.strip()
    if s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ValueError(f"bad JSON class literal: {exc}") from None
        return class_from_json(data, ambient_dim)
    terms = _parse_terms(s)
    top = max(terms)
    N = top if ambient_dim is None else ambient_dim
    if top > N:
        raise ValueError(f"term H^{top} exceeds ambient dimension {N}")
    c = [0] * (N + 1)
    for p, v in terms.items():
        c[p] += v
    return ChowClass(N, tuple(c))


def class_from_json(data, ambient_dim: int | None = None) -> ChowClass:
    if not isinstance(data, list) or not data:
        raise ValueError("class JSON must be a non-empty array of integers")
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in data):
        raise ValueError("class JSON entries must be integers")
    if ambient_dim is not None and len(data) != ambient_dim + 1:
        raise ValueError(
            f"class array has {len(data)} entries, expected {ambient_dim + 1} for P^{ambient_dim}"
        )
    return ChowClass(len(data) - 1, tuple(data))


def class_to_json(a: ChowClass) -> list[int]:
    return list(a.coeffs)
