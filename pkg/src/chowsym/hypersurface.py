"""Characteristic classes of a hypersurface ``X`` of degree ``d`` in ``P^N``.

Every class is computed from two inputs: the degree (so ``O(X) = O(d)`` and
``[X] = dH``) and the Segre class ``s(X_s, P^N)`` of the singular scheme,
pushed forward to ``A_*P^N``.  Segre classes are supplied by the caller or
by one of the closed-form models in :func:`from_model`; nothing here
computes them from equations.

The CSM class is Aluffi's formula

    c_SM(X) = c(TM)/c(O(X)) . ([X] + s(X_s,M)^dual (x) O(X))

and the remaining classes are built from the same ingredients.  The
identities linking them through the involutions ``i_{n,O(d)}`` are not
used to compute anything; they are what the test-suite checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .bundles import chern_total, cotangent, tangent, tensor_by_line
from .chowring import (
    ChowClass,
    LineBundle,
    chern_power,
    degree,
    dual,
    ring_product,
    tensor_line,
)

MODEL_TAGS = ("smooth", "points", "linear", "explicit")
SIGN_CONVENTIONS = ("derived", "paper")


@dataclass(frozen=True)
class HypersurfaceModel:
    ambient_dim: int
    degree: int
    segre_singular: ChowClass
    model_tag: Optional[str] = None

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("a hypersurface needs ambient dimension >= 1")
        if self.degree < 1:
            raise ValueError(f"degree must be >= 1, got {self.degree}")
        if self.segre_singular.ambient_dim != self.ambient_dim:
            raise ValueError("Segre class lives in the wrong ambient space")
        if self.segre_singular.coeffs[0] != 0:
            raise ValueError("Segre class of the singular scheme has a codimension-0 term")
        if self.model_tag is not None and self.model_tag not in MODEL_TAGS:
            raise ValueError(f"unknown model tag {self.model_tag!r}")
        if self.model_tag == "smooth" and not self.segre_singular.is_zero():
            raise ValueError("smooth model with nonzero Segre class")

    @property
    def line_bundle(self) -> LineBundle:
        return LineBundle(self.degree)

    @property
    def fundamental_class(self) -> ChowClass:
        return ChowClass.hyperplane_power(self.ambient_dim, 1, self.degree)


def from_model(
    N: int,
    d: int,
    model: str,
    *,
    count: int | None = None,
    dim: int | None = None,
    segre=None,
) -> HypersurfaceModel:
    """Build a hypersurface from a closed-form description of ``X_s``.

    ``smooth``
        empty singular scheme.
    ``points``
        ``count`` reduced points: ``s = count * H^N``.
    ``linear``
        a reduced linear subspace of dimension ``dim``; it is regularly
        embedded with normal bundle ``O(1)^(N-dim)``, so
        ``s = (1+H)^-(N-dim) . H^(N-dim)``.
    ``explicit``
        ``segre`` given as a codimension-indexed coefficient sequence.
    """
    if model == "smooth":
        s = ChowClass.zero(N)
    elif model == "points":
        if count is None or count < 1:
            raise ValueError("points model needs count >= 1")
        s = ChowClass.hyperplane_power(N, N, count)
    elif model == "linear":
        if dim is None or not 0 <= dim <= N - 1:
            raise ValueError(f"linear model needs 0 <= dim <= {N - 1}, got {dim}")
        c = N - dim
        s = ring_product(chern_power(LineBundle(1), -c, N), ChowClass.hyperplane_power(N, c))
    elif model == "explicit":
        if segre is None:
            raise ValueError("explicit model needs a Segre vector")
        s = segre if isinstance(segre, ChowClass) else ChowClass(N, tuple(segre))
    else:
        raise ValueError(f"unknown model {model!r}; expected one of {', '.join(MODEL_TAGS)}")
    return HypersurfaceModel(N, d, s, model)


def _cTM_over_cOX(X: HypersurfaceModel) -> ChowClass:
    N = X.ambient_dim
    return ring_product(chern_total(tangent(N)), chern_power(X.line_bundle, -1, N))


def _c_cotangent_twisted(X: HypersurfaceModel) -> ChowClass:
    # c(T*M (x) O(X))
    return chern_total(tensor_by_line(cotangent(X.ambient_dim), X.line_bundle))


def fulton(X: HypersurfaceModel) -> ChowClass:
    return ring_product(_cTM_over_cOX(X), X.fundamental_class)


def csm(X: HypersurfaceModel) -> ChowClass:
    twisted = tensor_line(dual(X.segre_singular), X.line_bundle)
    return ring_product(_cTM_over_cOX(X), X.fundamental_class + twisted)


def milnor(X: HypersurfaceModel) -> ChowClass:
    """Milnor class ``c_SM - c_F``, evaluated directly from the Segre class."""
    twisted = tensor_line(dual(X.segre_singular), X.line_bundle)
    return ring_product(_cTM_over_cOX(X), twisted)


def alpha_n(X: HypersurfaceModel, n: int) -> ChowClass:
    """``c(T*M (x) O(X)) c(O(X))^(n+1-N) . s(X_s, M)``."""
    N = X.ambient_dim
    c = ring_product(_c_cotangent_twisted(X), chern_power(X.line_bundle, n + 1 - N, N))
    return ring_product(c, X.segre_singular)


def nu_n(X: HypersurfaceModel, n: int) -> ChowClass:
    """``c(T*M (x) O(X)) c(O(X))^(n-N) . (-[X])``; independent of the Segre class."""
    N = X.ambient_dim
    c = ring_product(_c_cotangent_twisted(X), chern_power(X.line_bundle, n - N, N))
    return ring_product(c, -X.fundamental_class)


def le_class(X: HypersurfaceModel) -> ChowClass:
    N = X.ambient_dim
    c = ring_product(chern_power(X.line_bundle, 1, N), _c_cotangent_twisted(X))
    return ring_product(c, X.segre_singular)


def mu_class(X: HypersurfaceModel) -> ChowClass:
    return ring_product(_c_cotangent_twisted(X), X.segre_singular)


def aluffi_class(X: HypersurfaceModel) -> ChowClass:
    """Aluffi class of the singular scheme, ``c(O(X)) . M(X)``."""
    return ring_product(chern_power(X.line_bundle, 1, X.ambient_dim), milnor(X))


def euler_char(X: HypersurfaceModel) -> int:
    return degree(csm(X))


def swap_components(a: ChowClass, d: int, convention: str = "derived") -> ChowClass:
    """Dimension-wise binomial transform exchanging Milnor and Le classes.

    The dimension-``k`` piece of the result is

        sum_j  sign(j, k) * C(j+k, j) * (dH)^j . a_{j+k}

    over all ``j`` with ``j + k <= N``.  With ``convention="derived"`` the
    sign is ``(-1)^(N-k-j)``, which makes this transform coincide with
    ``i_{N,O(d)}``.  ``convention="paper"`` uses ``(-1)^(j+k)`` instead; the
    two differ by the global factor ``(-1)^N``.

    The same transform maps Le to Milnor and Milnor to Le, and it is its own
    inverse under either convention.
    """
    if convention not in SIGN_CONVENTIONS:
        raise ValueError(f"unknown sign convention {convention!r}")
    N = a.ambient_dim
    out = [0] * (N + 1)
    for k in range(N + 1):
        total = 0
        for j in range(N - k + 1):
            e = N - k - j if convention == "derived" else j + k
            sign = -1 if e % 2 else 1
            total += sign * comb(j + k, j) * d**j * a.dim(j + k)
        out[N - k] = total
    return ChowClass(N, tuple(out))


def milnor_components_from_le(X: HypersurfaceModel, convention: str = "derived") -> ChowClass:
    return swap_components(le_class(X), X.degree, convention)


def le_components_from_milnor(X: HypersurfaceModel, convention: str = "derived") -> ChowClass:
    return swap_components(milnor(X), X.degree, convention)


# --- JSON input --------------------------------------------------------------

def _variant(model: str, field: str | None, spec: dict | None) -> dict:
    props = {"model": {"const": model}}
    then: dict = {"properties": props, "additionalProperties": False}
    if field is not None:
        props[field] = spec
        then["required"] = [field]
    return {"if": {"properties": {"model": {"const": model}}}, "then": then}


HYPERSURFACE_SCHEMA = {
    "type": "object",
    "required": ["ambient", "degree", "singular"],
    "additionalProperties": False,
    "properties": {
        "ambient": {"type": "integer", "minimum": 1},
        "degree": {"type": "integer", "minimum": 1},
        "singular": {
            "type": "object",
            "required": ["model"],
            "properties": {"model": {"enum": list(MODEL_TAGS)}},
            "allOf": [
                _variant("smooth", None, None),
                _variant("points", "count", {"type": "integer", "minimum": 1}),
                _variant("linear", "dim", {"type": "integer", "minimum": 0}),
                _variant("explicit", "segre",
                         {"type": "array", "items": {"type": "integer"}, "minItems": 1}),
            ],
        },
    },
}


def from_json(data: dict) -> HypersurfaceModel:
    """Build a model from a schema-valid hypersurface document.

    Range errors the schema cannot express are raised as ``ValueError`` with
    the offending field name leading the message.
    """
    N = data["ambient"]
    d = data["degree"]
    sing = data["singular"]
    kind = sing["model"]
    if kind == "explicit":
        segre = sing["segre"]
        if len(segre) != N + 1:
            raise ValueError(f"singular.segre: has {len(segre)} entries, expected {N + 1} for P^{N}")
        if segre[0] != 0:
            raise ValueError("singular.segre: codimension-0 entry must be 0")
    if kind == "linear" and sing["dim"] > N - 1:
        raise ValueError(f"singular.dim: must be at most {N - 1} in P^{N}, got {sing['dim']}")
    return from_model(N, d, kind, count=sing.get("count"), dim=sing.get("dim"),
                      segre=sing.get("segre"))


def to_json(X: HypersurfaceModel) -> dict:
    tag = X.model_tag or "explicit"
    s = X.segre_singular
    if tag == "smooth":
        sing = {"model": "smooth"}
    elif tag == "points":
        sing = {"model": "points", "count": degree(s)}
    elif tag == "linear":
        codim = next(i for i, c in enumerate(s.coeffs) if c)
        sing = {"model": "linear", "dim": X.ambient_dim - codim}
    else:
        sing = {"model": "explicit", "segre": list(s.coeffs)}
    return {"ambient": X.ambient_dim, "degree": X.degree, "singular": sing}
