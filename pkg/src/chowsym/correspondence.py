"""Correspondences on ``P^N x P^N``.

``A_*(P^N x P^N) = Z[x, y]/(x^(N+1), y^(N+1))`` with ``x`` pulled back from
the first factor and ``y`` from the second.  A correspondence acts by
``beta -> q_*(alpha . p^*beta)``; since ``q_*`` sends ``x^N`` to 1 and every
other power of ``x`` to 0, the pushforward is "multiply, then read off
the coefficient of ``x^N``".

``grid[i][j]`` is the coefficient of ``x^i y^j``.  The grid always covers
the full ``(N+1) x (N+1)`` basis: the involutive correspondences below have
nonzero entries with ``i + j > N`` (already for ``N = 1``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .chowring import ChowClass, generalized_binomial

__all__ = [
    "Correspondence",
    "compose",
    "diagonal",
    "format_correspondence",
    "from_matrix",
    "generalized_binomial",
    "involutive_correspondence",
    "parse_correspondence",
    "pullback",
    "pushforward",
    "to_matrix",
]

Matrix = tuple[tuple[int, ...], ...]


def _as_grid(rows, size: int) -> Matrix:
    grid = tuple(tuple(int(v) for v in row) for row in rows)
    if len(grid) != size or any(len(row) != size for row in grid):
        raise ValueError(f"expected a {size}x{size} grid")
    return grid


@dataclass(frozen=True)
class Correspondence:
    ambient_dim: int
    grid: Matrix

    def __post_init__(self):
        if self.ambient_dim < 0:
            raise ValueError("ambient dimension must be >= 0")
        object.__setattr__(self, "grid", _as_grid(self.grid, self.ambient_dim + 1))

    @classmethod
    def zero(cls, N: int) -> Correspondence:
        return cls(N, ((0,) * (N + 1),) * (N + 1))

    def __add__(self, other: Correspondence) -> Correspondence:
        _check_dims(self.ambient_dim, other.ambient_dim)
        return Correspondence(
            self.ambient_dim,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.grid, other.grid)),
        )

    def __rmul__(self, k: int) -> Correspondence:
        if not isinstance(k, int):
            return NotImplemented
        return Correspondence(self.ambient_dim, tuple(tuple(k * a for a in r) for r in self.grid))

    def __str__(self) -> str:
        return format_correspondence(self)


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise ValueError(f"ambient dimension mismatch: P^{a} vs P^{b}")


def _product_truncated(grid: Matrix, beta_x: Sequence[int], N: int) -> list[list[int]]:
    # alpha(x, y) * beta(x) in Z[x,y]/(x^(N+1), y^(N+1))
    out = [[0] * (N + 1) for _ in range(N + 1)]
    for i, row in enumerate(grid):
        for k, b in enumerate(beta_x):
            if b and i + k <= N:
                target = out[i + k]
                for j, a in enumerate(row):
                    target[j] += a * b
    return out


def pushforward(alpha: Correspondence, beta: ChowClass) -> ChowClass:
    """``alpha_*(beta) = q_*(alpha . p^*beta)``."""
    _check_dims(alpha.ambient_dim, beta.ambient_dim)
    N = alpha.ambient_dim
    prod = _product_truncated(alpha.grid, beta.coeffs, N)
    return ChowClass(N, tuple(prod[N]))


def pullback(alpha: Correspondence, gamma: ChowClass) -> ChowClass:
    """``alpha^*(gamma) = p_*(alpha . q^*gamma)``: multiply by ``gamma(y)``, read off ``y^N``."""
    _check_dims(alpha.ambient_dim, gamma.ambient_dim)
    N = alpha.ambient_dim
    transposed = tuple(zip(*alpha.grid))
    prod = _product_truncated(transposed, gamma.coeffs, N)
    return ChowClass(N, tuple(prod[N]))


def to_matrix(alpha: Correspondence) -> Matrix:
    """Matrix of ``alpha_*`` on ``1, H, ..., H^N``; column ``j`` is the image of ``H^j``."""
    N = alpha.ambient_dim
    g = alpha.grid
    return tuple(tuple(g[N - j][i] for j in range(N + 1)) for i in range(N + 1))


def from_matrix(M) -> Correspondence:
    """The unique correspondence whose pushforward has matrix ``M``."""
    size = len(M)
    if size < 1:
        raise ValueError("empty matrix")
    M = _as_grid(M, size)
    N = size - 1
    grid = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            grid[N - j][i] = M[i][j]
    return Correspondence(N, grid)


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    cols = tuple(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def compose(outer: Correspondence, inner: Correspondence) -> Correspondence:
    """``outer o inner``, characterised by ``(outer o inner)_* = outer_* o inner_*``."""
    _check_dims(outer.ambient_dim, inner.ambient_dim)
    return from_matrix(_matmul(to_matrix(outer), to_matrix(inner)))


def diagonal(N: int) -> Correspondence:
    """Class of the diagonal, ``sum_j x^(N-j) y^j``."""
    if N < 1:
        raise ValueError("diagonal needs N >= 1")
    grid = [[0] * (N + 1) for _ in range(N + 1)]
    for j in range(N + 1):
        grid[N - j][j] = 1
    return Correspondence(N, grid)


def involutive_correspondence(N: int, n: int, m: int) -> Correspondence:
    """The correspondence inducing ``i_{n,O(m)}`` on ``A_*P^N``.

    ``a_{N-j, i} = (-1)^j C(n-j, i-j) m^(i-j)``, with ``m^0 = 1`` also for
    ``m = 0``.
    """
    if N < 1:
        raise ValueError("involutive correspondences need N >= 1")
    grid = [[0] * (N + 1) for _ in range(N + 1)]
    for j in range(N + 1):
        sign = -1 if j % 2 else 1
        for i in range(j, N + 1):
            grid[N - j][i] = sign * generalized_binomial(n - j, i - j) * m ** (i - j)
    return Correspondence(N, grid)


# --- text form ---------------------------------------------------------------

def format_correspondence(alpha: Correspondence) -> str:
    """Polynomial in ``x``, ``y``, e.g. ``x + x*y - y``.

    Terms are ordered by decreasing power of ``x``, then increasing power
    of ``y``; unit coefficients are omitted.
    """
    N = alpha.ambient_dim
    parts = []
    for i in range(N, -1, -1):
        for j in range(N + 1):
            c = alpha.grid[i][j]
            if not c:
                continue
            factors = []
            if i:
                factors.append("x" if i == 1 else f"x^{i}")
            if j:
                factors.append("y" if j == 1 else f"y^{j}")
            mono = "*".join(factors)
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"


_FACTOR = re.compile(r"\s*(\d+|[xy])\s*(?:\^\s*(\d+))?\s*")


def parse_correspondence(text: str, ambient_dim: int | None = None) -> Correspondence:
    """Parse the text form; ``N`` defaults to the largest exponent present (at least 1)."""
    s = text.strip()
    if not s:
        raise ValueError("empty correspondence literal")
    terms: dict[tuple[int, int], int] = {}
    pos = 0
    first = True
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        sign = 1
        if pos < len(s) and s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ValueError(f"missing '+' or '-' before column {pos + 1} in {text!r}")
        coeff, ex, ey = 1, 0, 0
        seen = False
        while True:
            m = _FACTOR.match(s, pos)
            if not m:
                raise ValueError(f"cannot parse correspondence {text!r} at column {pos + 1}")
            tok, exp = m.groups()
            if tok.isdigit():
                if exp is not None:
                    raise ValueError(f"exponent on a number in {text!r}")
                coeff *= int(tok)
            elif tok == "x":
                ex += int(exp) if exp is not None else 1
            else:
                ey += int(exp) if exp is not None else 1
            seen = True
            pos = m.end()
            if pos < len(s) and s[pos] == "*":
                pos += 1
                continue
            break
        if not seen:
            raise ValueError(f"empty term in {text!r}")
        terms[(ex, ey)] = terms.get((ex, ey), 0) + sign * coeff
        first = False
    top = max(max(e) for e in terms)
    N = max(top, 1) if ambient_dim is None else ambient_dim
    if top > N:
        raise ValueError(f"exponent {top} exceeds ambient dimension {N}")
    grid = [[0] * (N + 1) for _ in range(N + 1)]
    for (i, j), c in terms.items():
        grid[i][j] += c
    return Correspondence(N, grid)


CORRESPONDENCE_SCHEMA = {
    "type": "object",
    "required": ["ambient", "grid"],
    "additionalProperties": False,
    "properties": {
        "ambient": {"type": "integer", "minimum": 1},
        "grid": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}},
        },
    },
}


def from_json(data: dict) -> Correspondence:
    return Correspondence(data["ambient"], data["grid"])


def to_json(alpha: Correspondence) -> dict:
    return {"ambient": alpha.ambient_dim, "grid": [list(r) for r in alpha.grid]}
