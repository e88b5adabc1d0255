import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from chowsym.chowring import ChowClass, LineBundle, involution
from chowsym.correspondence import (
    Correspondence,
    compose,
    diagonal,
    format_correspondence,
    from_json,
    from_matrix,
    involutive_correspondence,
    parse_correspondence,
    pullback,
    pushforward,
    to_json,
    to_matrix,
)


def corr(text, N=None):
    return parse_correspondence(text, N)


def C(N, *coeffs):
    return ChowClass.from_series(N, coeffs)


@st.composite
def grids(draw, min_dim=1, max_dim=5, lo=-5, hi=5):
    N = draw(st.integers(min_dim, max_dim))
    row = st.lists(st.integers(lo, hi), min_size=N + 1, max_size=N + 1)
    return Correspondence(N, tuple(draw(st.lists(row, min_size=N + 1, max_size=N + 1))))


@st.composite
def grid_and_class(draw, max_dim=5):
    alpha = draw(grids(max_dim=max_dim))
    N = alpha.ambient_dim
    beta = ChowClass(N, tuple(draw(st.lists(st.integers(-9, 9), min_size=N + 1, max_size=N + 1))))
    return alpha, beta


class TestInvolutiveCorrespondence:
    def test_examples(self):
        assert involutive_correspondence(1, 0, 0) == corr("x - y")
        assert involutive_correspondence(1, 1, 1) == corr("x + x*y - y")
        assert involutive_correspondence(2, 0, 0) == corr("x^2 - x*y + y^2")

    def test_high_terms_present(self):
        # the x*y entry has i + j = 2 > N = 1
        assert involutive_correspondence(1, 1, 1).grid[1][1] == 1

    def test_needs_positive_dimension(self):
        with pytest.raises(ValueError):
            involutive_correspondence(0, 1, 1)

    @pytest.mark.parametrize("N", range(1, 9))
    def test_realizes_involution(self, N):
        for n in range(-3, 4):
            for m in range(-3, 4):
                alpha = involutive_correspondence(N, n, m)
                for j in range(N + 1):
                    Hj = ChowClass.hyperplane_power(N, j)
                    assert pushforward(alpha, Hj) == involution(Hj, n, LineBundle(m))

    @pytest.mark.parametrize("N", range(1, 9))
    def test_squares_to_diagonal(self, N):
        for n in range(-3, 4):
            for m in range(-3, 4):
                alpha = involutive_correspondence(N, n, m)
                assert compose(alpha, alpha) == diagonal(N)


class TestPushPull:
    def test_diagonal(self):
        beta = C(3, 4, -1, 0, 7)
        assert pushforward(diagonal(3), beta) == beta
        assert pullback(diagonal(3), beta) == beta

    def test_dual_operator(self):
        assert pushforward(corr("x - y"), C(1, 3, 5)) == C(1, 3, -5)
        assert pullback(corr("x - y"), C(1, 3, 5)) == C(1, -3, 5)

    def test_involution_operator(self):
        b0, b1 = 4, -7
        alpha = corr("x + x*y - y")
        assert pushforward(alpha, C(1, b0, b1)) == C(1, b0, b0 - b1)
        assert pushforward(alpha, C(1, b0, b1)) == involution(C(1, b0, b1), 1, LineBundle(1))

    def test_pullback_example(self):
        assert pullback(corr("x*y"), C(1, 6, 2)) == C(1, 0, 6)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            pushforward(diagonal(2), C(1, 1, 1))
        with pytest.raises(ValueError):
            compose(diagonal(2), diagonal(1))

    @settings(max_examples=30)
    @given(grid_and_class(max_dim=4))
    def test_against_sympy(self, ab):
        alpha, beta = ab
        grid = [list(r) for r in alpha.grid]
        assert list(pushforward(alpha, beta).coeffs) == oracles.pushforward(grid, list(beta.coeffs))
        assert list(pullback(alpha, beta).coeffs) == oracles.pullback(grid, list(beta.coeffs))

    @given(grid_and_class())
    def test_entry_law(self, ab):
        alpha, beta = ab
        N = alpha.ambient_dim
        expected = [sum(alpha.grid[N - j][i] * beta.coeffs[j] for j in range(N + 1)) for i in range(N + 1)]
        assert list(pushforward(alpha, beta).coeffs) == expected

    @given(grid_and_class(), st.integers(-4, 4))
    def test_bilinear(self, ab, k):
        alpha, beta = ab
        other = from_matrix(tuple(tuple(reversed(r)) for r in to_matrix(alpha)))
        assert pushforward(alpha + other, beta) == pushforward(alpha, beta) + pushforward(other, beta)
        assert pushforward(alpha, beta + k * beta) == (1 + k) * pushforward(alpha, beta)
        assert pullback(alpha + other, beta) == pullback(alpha, beta) + pullback(other, beta)


class TestMatrices:
    def test_examples(self):
        assert to_matrix(diagonal(3)) == tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
        assert to_matrix(corr("x - y")) == ((1, 0), (0, -1))
        assert to_matrix(corr("x + x*y - y")) == ((1, 0), (1, -1))

    def test_compose_examples(self):
        assert compose(corr("x - y"), corr("x - y")) == corr("x + y")
        assert compose(corr("x + x*y - y"), corr("x + x*y - y")) == diagonal(1)
        alpha = corr("3*x - x*y + 2*y + 5")
        assert compose(alpha, diagonal(1)) == alpha
        assert compose(diagonal(1), alpha) == alpha

    @given(grids())
    def test_bijection(self, alpha):
        assert from_matrix(to_matrix(alpha)) == alpha
        M = alpha.grid
        assert to_matrix(from_matrix(M)) == M

    @given(grids(max_dim=4), st.data())
    def test_functoriality(self, alpha, data):
        beta = data.draw(grids(alpha.ambient_dim, alpha.ambient_dim))
        AB = compose(alpha, beta)
        cls = ChowClass.hyperplane_power(alpha.ambient_dim, data.draw(st.integers(0, alpha.ambient_dim)))
        assert pushforward(AB, cls) == pushforward(alpha, pushforward(beta, cls))

    @settings(max_examples=25)
    @given(grids(max_dim=3), st.data())
    def test_compose_matches_push_pull_product(self, alpha, data):
        beta = data.draw(grids(alpha.ambient_dim, alpha.ambient_dim))
        expected = oracles.compose_push_pull([list(r) for r in alpha.grid], [list(r) for r in beta.grid])
        assert [list(r) for r in compose(alpha, beta).grid] == expected


class TestTextForm:
    @pytest.mark.parametrize("text,N,grid", [
        ("x - y", 1, ((0, -1), (1, 0))),
        ("x + x*y - y", 1, ((0, -1), (1, 1))),
        ("x^2 - x*y + y^2", 2, ((0, 0, 1), (0, -1, 0), (1, 0, 0))),
        ("3*x*y + 2", 1, ((2, 0), (0, 3))),
        ("0", 1, ((0, 0), (0, 0))),
    ])
    def test_parse(self, text, N, grid):
        assert parse_correspondence(text) == Correspondence(N, grid)

    def test_canonical(self):
        assert format_correspondence(involutive_correspondence(1, 1, 1)) == "x + x*y - y"
        assert format_correspondence(diagonal(2)) == "x^2 + x*y + y^2"
        assert format_correspondence(Correspondence.zero(2)) == "0"

    @pytest.mark.parametrize("bad", ["", "x +", "x y", "z", "x^3", "2^2*x", "x**2"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_correspondence(bad, 2)

    @given(grids(min_dim=1, max_dim=6, lo=-1000, hi=1000))
    def test_roundtrip(self, alpha):
        text = format_correspondence(alpha)
        assert parse_correspondence(text, alpha.ambient_dim) == alpha
        assert from_json(to_json(alpha)) == alpha
