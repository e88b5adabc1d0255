"""Randomised exact checks of every identity the library is built on.

Each :class:`Identity` draws plain-data cases (ints and int lists) from a
``random.Random`` seeded by ``"<seed>:<identity name>"``, so a run is
reproducible and identities do not perturb each other's streams.  A failing
case is shrunk greedily before being reported.
"""

from __future__ import annotations

import contextlib
import json
import random
import sys
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import bundles, chowring, correspondence, hypersurface
from .chowring import ChowClass, LineBundle

Case = dict


@dataclass
class Identity:
    name: str
    generate: Callable[[random.Random, int], Case]
    check: Callable[[Case], bool]
    min_dim: int = 0


@dataclass
class Outcome:
    name: str
    cases: int = 0
    skipped_dims: list[int] = field(default_factory=list)
    counterexample: Case | None = None
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None


# --- random data --------------------------------------------------------------

def _coeffs(rng: random.Random, N: int, lo: int = -9, hi: int = 9) -> list[int]:
    return [rng.randint(lo, hi) for _ in range(N + 1)]


def _roots(rng: random.Random) -> list[list[int]]:
    return [[rng.randint(-3, 3), rng.randint(-3, 3)] for _ in range(rng.randint(0, 5))]


def _grid(rng: random.Random, N: int) -> list[list[int]]:
    return [_coeffs(rng, N, -5, 5) for _ in range(N + 1)]


def _cls(case: Case, key: str = "a") -> ChowClass:
    return ChowClass(case["N"], tuple(case[key]))


def _bundle(case: Case, key: str = "roots") -> bundles.VirtualBundle:
    return bundles.VirtualBundle(case["N"], tuple((t, m) for t, m in case[key]))


def _model_case(rng: random.Random, N: int) -> Case:
    kind = rng.choice(["smooth", "points", "linear", "explicit"])
    case = {"N": N, "d": rng.randint(1, 5), "kind": kind, "n": rng.randint(-4, N + 3)}
    if kind == "points":
        case["count"] = rng.randint(1, 5)
    elif kind == "linear":
        case["dim"] = rng.randint(0, N - 1)
    elif kind == "explicit":
        case["segre"] = [0] + _coeffs(rng, N - 1)
    return case


def _model(case: Case) -> hypersurface.HypersurfaceModel:
    return hypersurface.from_model(
        case["N"], case["d"], case["kind"],
        count=case.get("count"), dim=case.get("dim"), segre=case.get("segre"),
    )


# --- identities ---------------------------------------------------------------

def _chowring_identities() -> list[Identity]:
    def gen_a_n_m(rng, N):
        return {"N": N, "a": _coeffs(rng, N), "n": rng.randint(-4, 4), "m": rng.randint(-3, 3)}

    def roundtrip(c):
        a, L = _cls(c), LineBundle(c["m"])
        return chowring.involution(chowring.involution(a, c["n"], L), c["n"], L) == a

    def dual_twice(c):
        a = _cls(c)
        return chowring.dual(chowring.dual(a)) == a

    def dual_is_trivial_involution(c):
        a = _cls(c)
        return chowring.involution(a, c["n"], LineBundle(0)) == chowring.dual(a)

    def gen_action(rng, N):
        return {"N": N, "a": _coeffs(rng, N), "m1": rng.randint(-3, 3), "m2": rng.randint(-3, 3)}

    def action_law(c):
        a, L, M = _cls(c), LineBundle(c["m1"]), LineBundle(c["m2"])
        lhs = chowring.tensor_line(chowring.tensor_line(a, L), M)
        return lhs == chowring.tensor_line(a, L.tensor(M))

    def gen_pair(rng, N):
        c = gen_a_n_m(rng, N)
        c["b"] = _coeffs(rng, N)
        return c

    def linearity(c):
        a, b, L, n = _cls(c), _cls(c, "b"), LineBundle(c["m"]), c["n"]
        return (
            chowring.involution(a + b, n, L)
            == chowring.involution(a, n, L) + chowring.involution(b, n, L)
            and chowring.dual(a + b) == chowring.dual(a) + chowring.dual(b)
            and chowring.tensor_line(a + b, L)
            == chowring.tensor_line(a, L) + chowring.tensor_line(b, L)
        )

    def gen_unit(rng, N):
        a = _coeffs(rng, N)
        a[0] = rng.choice([1, -1])
        return {"N": N, "a": a}

    def inverse(c):
        a = _cls(c)
        return chowring.ring_product(a, chowring.unit_inverse(a)) == ChowClass.one(c["N"])

    return [
        Identity("chowring.involution_roundtrip", gen_a_n_m, roundtrip),
        Identity("chowring.dual_involutive", gen_a_n_m, dual_twice),
        Identity("chowring.dual_is_i_n_O", gen_a_n_m, dual_is_trivial_involution),
        Identity("chowring.tensor_action_law", gen_action, action_law),
        Identity("chowring.linearity", gen_pair, linearity),
        Identity("chowring.unit_inverse", gen_unit, inverse),
    ]


def _bundle_identities() -> list[Identity]:
    def gen(rng, N):
        return {"N": N, "roots": _roots(rng), "a": _coeffs(rng, N), "m": rng.randint(-3, 3)}

    def eq_dual(c):
        E, a = _bundle(c), _cls(c)
        lhs = chowring.dual(chowring.ring_product(bundles.chern_total(E), a))
        rhs = chowring.ring_product(bundles.chern_total(bundles.dual_bundle(E)), chowring.dual(a))
        return lhs == rhs

    def eq_tensor(c):
        E, a, L = _bundle(c), _cls(c), LineBundle(c["m"])
        lhs = chowring.tensor_line(chowring.ring_product(bundles.chern_total(E), a), L)
        factor = chowring.ring_product(
            bundles.chern_total(bundles.tensor_by_line(E, L)),
            chowring.chern_power(L, -bundles.rank(E), c["N"]),
        )
        return lhs == chowring.ring_product(factor, chowring.tensor_line(a, L))

    def gen_two(rng, N):
        return {"N": N, "roots": _roots(rng), "roots2": _roots(rng)}

    def multiplicative(c):
        E, F = _bundle(c), _bundle(c, "roots2")
        return bundles.chern_total(E + F) == chowring.ring_product(
            bundles.chern_total(E), bundles.chern_total(F)
        )

    def dual_chern(c):
        E = _bundle(c)
        return bundles.chern_total(bundles.dual_bundle(E)) == chowring.dual(bundles.chern_total(E))

    return [
        Identity("bundles.dual_formula", gen, eq_dual),
        Identity("bundles.tensor_formula", gen, eq_tensor),
        Identity("bundles.chern_multiplicative", gen_two, multiplicative),
        Identity("bundles.dual_bundle_chern", gen, dual_chern),
    ]


def _hypersurface_identities() -> list[Identity]:
    H = hypersurface

    def mcs(c):
        X, n = _model(c), c["n"]
        M, a, L = H.milnor(X), H.alpha_n(X, n), X.line_bundle
        return M == chowring.involution(a, n, L) and a == chowring.involution(M, n, L)

    def csm_duality(c):
        X, n = _model(c), c["n"]
        partner = H.nu_n(X, n) + H.alpha_n(X, n)
        L = X.line_bundle
        return (H.csm(X) == chowring.involution(partner, n, L)
                and partner == chowring.involution(H.csm(X), n, L))

    def fulton_partner(c):
        X, n = _model(c), c["n"]
        return H.fulton(X) == chowring.involution(H.nu_n(X, n), n, X.line_bundle)

    def aluffi(c):
        X, n = _model(c), c["n"]
        A, a, L = H.aluffi_class(X), H.alpha_n(X, n), X.line_bundle
        return A == chowring.involution(a, n + 1, L) and a == chowring.involution(A, n + 1, L)

    def consistency(c):
        X = _model(c)
        N = c["N"]
        return (
            H.milnor(X) == H.csm(X) - H.fulton(X)
            and H.le_class(X) == H.alpha_n(X, N)
            and H.mu_class(X) == H.alpha_n(X, N - 1)
            and H.milnor(X) == chowring.involution(H.mu_class(X), N - 1, X.line_bundle)
        )

    def components(c):
        X = _model(c)
        N, d = c["N"], c["d"]
        le, M = H.le_class(X), H.milnor(X)
        sign = -1 if N % 2 else 1
        return (
            H.milnor_components_from_le(X) == M
            and H.le_components_from_milnor(X) == le
            and H.swap_components(H.milnor_components_from_le(X), d) == le
            and H.milnor_components_from_le(X, "paper") == sign * M
            and H.le_components_from_milnor(X, "paper") == sign * le
        )

    def gen_smooth(rng, N):
        return {"N": N, "d": rng.randint(1, 5), "kind": "smooth", "n": rng.randint(-4, N + 3)}

    def smooth(c):
        X = _model(c)
        zero = ChowClass.zero(c["N"])
        return (
            H.milnor(X) == zero and H.le_class(X) == zero and H.mu_class(X) == zero
            and H.aluffi_class(X) == zero and H.csm(X) == H.fulton(X)
        )

    return [
        Identity("hypersurface.theorem_mcs", _model_case, mcs, 1),
        Identity("hypersurface.csm_duality", _model_case, csm_duality, 1),
        Identity("hypersurface.fulton_partner", _model_case, fulton_partner, 1),
        Identity("hypersurface.aluffi_corollary", _model_case, aluffi, 1),
        Identity("hypersurface.consistency", _model_case, consistency, 1),
        Identity("hypersurface.component_formulas", _model_case, components, 1),
        Identity("hypersurface.smooth_degeneracy", gen_smooth, smooth, 1),
    ]


def _correspondence_identities() -> list[Identity]:
    C = correspondence

    def gen_nm(rng, N):
        return {"N": N, "n": rng.randint(-3, 3), "m": rng.randint(-3, 3)}

    def realization(c):
        N = c["N"]
        alpha = C.involutive_correspondence(N, c["n"], c["m"])
        L = LineBundle(c["m"])
        return all(
            C.pushforward(alpha, ChowClass.hyperplane_power(N, j))
            == chowring.involution(ChowClass.hyperplane_power(N, j), c["n"], L)
            for j in range(N + 1)
        )

    def involutive(c):
        alpha = C.involutive_correspondence(c["N"], c["n"], c["m"])
        return C.compose(alpha, alpha) == C.diagonal(c["N"])

    def gen_grids(rng, N):
        return {"N": N, "g": _grid(rng, N), "h": _grid(rng, N), "a": _coeffs(rng, N),
                "b": _coeffs(rng, N)}

    def _corr(c, key):
        return C.Correspondence(c["N"], c[key])

    def bijection(c):
        alpha = _corr(c, "g")
        M = tuple(tuple(r) for r in c["h"])
        return C.from_matrix(C.to_matrix(alpha)) == alpha and C.to_matrix(C.from_matrix(M)) == M

    def functorial(c):
        a, b = _corr(c, "g"), _corr(c, "h")
        beta = _cls(c)
        return (
            C.to_matrix(C.compose(a, b)) == C._matmul(C.to_matrix(a), C.to_matrix(b))
            and C.pushforward(C.compose(a, b), beta) == C.pushforward(a, C.pushforward(b, beta))
        )

    def bilinear(c):
        a, b = _corr(c, "g"), _corr(c, "h")
        x, y = _cls(c), _cls(c, "b")
        return (
            C.pushforward(a + b, x) == C.pushforward(a, x) + C.pushforward(b, x)
            and C.pushforward(a, x + y) == C.pushforward(a, x) + C.pushforward(a, y)
            and C.pullback(a + b, x) == C.pullback(a, x) + C.pullback(b, x)
            and C.pullback(a, x + y) == C.pullback(a, x) + C.pullback(a, y)
        )

    def diagonal_identity(c):
        beta = _cls(c)
        D = C.diagonal(c["N"])
        return C.pushforward(D, beta) == beta and C.pullback(D, beta) == beta

    return [
        Identity("correspondence.operator_realization", gen_nm, realization, 1),
        Identity("correspondence.involutive", gen_nm, involutive, 1),
        Identity("correspondence.bijection", gen_grids, bijection, 1),
        Identity("correspondence.functoriality", gen_grids, functorial, 1),
        Identity("correspondence.bilinearity", gen_grids, bilinear, 1),
        Identity("correspondence.diagonal_identity", gen_grids, diagonal_identity, 1),
    ]


def _format_identities() -> list[Identity]:
    def gen(rng, N):
        return {"N": N, "a": _coeffs(rng, N), "g": _grid(rng, N)}

    def class_roundtrip(c):
        a = _cls(c)
        text = chowring.format_class(a)
        return (
            chowring.parse_class(text, c["N"]) == a
            and chowring.format_class(chowring.parse_class(text, c["N"])) == text
            and chowring.parse_class(json.dumps(chowring.class_to_json(a))) == a
        )

    def corr_roundtrip(c):
        alpha = correspondence.Correspondence(c["N"], c["g"])
        text = correspondence.format_correspondence(alpha)
        return correspondence.parse_correspondence(text, c["N"]) == alpha

    return [
        Identity("format.class_roundtrip", gen, class_roundtrip),
        Identity("format.correspondence_roundtrip", gen, corr_roundtrip, 1),
    ]


def all_identities() -> list[Identity]:
    return (
        _chowring_identities()
        + _bundle_identities()
        + _hypersurface_identities()
        + _correspondence_identities()
        + _format_identities()
    )


# --- running and shrinking ----------------------------------------------------

def _holds(identity: Identity, case: Case) -> bool | None:
    """True/False for a valid case, None when the case is not well-formed."""
    try:
        return bool(identity.check(case))
    except (ValueError, IndexError, KeyError):
        return None


def _toward_zero(v: int) -> list[int]:
    if v == 0:
        return []
    out = [0]
    half = int(v / 2)
    if half not in (0, v):
        out.append(half)
    step = v - (1 if v > 0 else -1)
    if step not in out:
        out.append(step)
    return out


def _value_candidates(v) -> Iterator:
    if isinstance(v, int):
        yield from _toward_zero(v)
    elif isinstance(v, list):
        for i in range(len(v)):
            yield v[:i] + v[i + 1:]
        for i, item in enumerate(v):
            for smaller in _value_candidates(item):
                yield v[:i] + [smaller] + v[i + 1:]


def _candidates(case: Case) -> Iterator[Case]:
    N = case["N"]
    if N > 0:
        smaller = {"N": N - 1}
        for k, v in case.items():
            if k == "N":
                continue
            if isinstance(v, list) and len(v) == N + 1:
                v = [row[:N] if isinstance(row, list) and len(row) == N + 1 else row
                     for row in v[:N]]
            smaller[k] = v
        yield smaller
    for k, v in case.items():
        if k == "N":
            continue
        for cand in _value_candidates(v):
            yield {**case, k: cand}


def shrink(identity: Identity, case: Case, budget: int = 2000) -> Case:
    current = case
    improved = True
    while improved and budget > 0:
        improved = False
        for cand in _candidates(current):
            budget -= 1
            if budget <= 0:
                break
            if _holds(identity, cand) is False:
                current = cand
                improved = True
                break
    return current


def run_identity(identity: Identity, seed: int, max_dim: int, cases: int) -> Outcome:
    rng = random.Random(f"{seed}:{identity.name}")
    outcome = Outcome(identity.name)
    for N in range(0, max_dim + 1):
        if N < identity.min_dim:
            outcome.skipped_dims.append(N)
            continue
        for _ in range(cases):
            case = identity.generate(rng, N)
            try:
                ok = bool(identity.check(case))
            except Exception as exc:  # an exception on a generated case is a bug
                outcome.error = f"{type(exc).__name__}: {exc}"
                ok = False
            outcome.cases += 1
            if not ok:
                outcome.counterexample = shrink(identity, case)
                return outcome
    return outcome


def run_all(seed: int, max_dim: int, cases: int = 50,
            identities: list[Identity] | None = None) -> list[Outcome]:
    return [run_identity(i, seed, max_dim, cases) for i in (identities or all_identities())]


# --- mutation hook --------------------------------------------------------------

def _mutant_dual(a: ChowClass) -> ChowClass:
    # drops the sign flip in codimension 1 only
    return ChowClass(a.ambient_dim, tuple(
        -c if (i & 1 and i != 1) else c for i, c in enumerate(a.coeffs)
    ))


MUTANTS = {"dual-sign": ("dual", _mutant_dual)}


@contextlib.contextmanager
def injected_mutant(name: str | None):
    """Temporarily replace a library function everywhere it has been imported."""
    if name is None:
        yield
        return
    attr, replacement = MUTANTS[name]
    original = getattr(chowring, attr)
    patched = []
    for mod in list(sys.modules.values()):
        if getattr(mod, "__name__", "").startswith(__package__) and getattr(mod, attr, None) is original:
            setattr(mod, attr, replacement)
            patched.append(mod)
    try:
        yield
    finally:
        for mod in patched:
            setattr(mod, attr, original)
