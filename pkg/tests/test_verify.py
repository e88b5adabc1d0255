import random

from chowsym import chowring, hypersurface
from chowsym.chowring import ChowClass
from chowsym.verify import (
    Identity,
    all_identities,
    injected_mutant,
    run_all,
    run_identity,
    shrink,
)


def test_names_are_unique():
    names = [i.name for i in all_identities()]
    assert len(names) == len(set(names))


def test_all_hold():
    outcomes = run_all(seed=11, max_dim=4, cases=10)
    assert all(o.passed for o in outcomes), [o for o in outcomes if not o.passed]


def test_deterministic():
    a = [(o.name, o.cases) for o in run_all(3, 3, 5)]
    b = [(o.name, o.cases) for o in run_all(3, 3, 5)]
    assert a == b


def test_streams_are_per_identity():
    ids = all_identities()
    first = ids[0]
    rng_alone = random.Random(f"5:{first.name}")
    case = first.generate(rng_alone, 3)
    rng_again = random.Random(f"5:{first.name}")
    assert first.generate(rng_again, 3) == case


def test_shrinker_minimizes():
    # fails whenever some coefficient exceeds 3
    ident = Identity("toy", lambda rng, N: {"N": N, "a": [rng.randint(-9, 9) for _ in range(N + 1)]},
                     lambda c: max(c["a"]) <= 3)
    small = shrink(ident, {"N": 4, "a": [0, 9, -7, 8, 5]})
    assert small == {"N": 0, "a": [4]}


def test_failure_reports_counterexample():
    ident = Identity("toy", lambda rng, N: {"N": N, "a": [rng.randint(-9, 9) for _ in range(N + 1)]},
                     lambda c: sum(c["a"]) < 30)
    out = run_identity(ident, seed=0, max_dim=6, cases=50)
    assert not out.passed
    assert sum(out.counterexample["a"]) >= 30


def test_exception_in_check_is_a_failure():
    def boom(c):
        raise ZeroDivisionError("x")
    out = run_identity(Identity("boom", lambda rng, N: {"N": N}, boom), 0, 1, 1)
    assert not out.passed and out.error.startswith("ZeroDivisionError")


def test_mutant_patch_is_scoped():
    original = chowring.dual
    with injected_mutant("dual-sign"):
        assert chowring.dual is not original
        assert hypersurface.dual is chowring.dual
        assert chowring.dual(ChowClass(2, (1, 1, 1))) != original(ChowClass(2, (1, 1, 1)))
    assert chowring.dual is original and hypersurface.dual is original
