import pytest

from twincsp import BraidWord, CanonicalForm, SeededRng, default_params


@pytest.fixture
def params():
    return default_params()


def rng_from(tag: int) -> SeededRng:
    return SeededRng.from_int(tag)


def random_word(n: int, length: int, rng: SeededRng, indices=None) -> BraidWord:
    """Uniform signed letters; indices defaults to the full generator range."""
    idx = list(indices) if indices is not None else list(range(1, n))
    letters = tuple(rng.rand_sign() * rng.choice(idx) for _ in range(length))
    return BraidWord(n, letters)


def rewrite_equivalent(word: BraidWord, rng: SeededRng, steps: int = 50) -> BraidWord:
    """Apply relation rewrites and free insertions/cancellations; the result
    is a different word for the same group element."""
    letters = list(word.letters)
    n = word.n
    for _ in range(steps):
        op = rng.rand_below(4)
        if op == 0 and len(letters) >= 2:
            # far-commutation swap
            spots = [i for i in range(len(letters) - 1)
                     if abs(abs(letters[i]) - abs(letters[i + 1])) >= 2]
            if spots:
                i = spots[rng.rand_below(len(spots))]
                letters[i], letters[i + 1] = letters[i + 1], letters[i]
                continue
        if op == 1 and len(letters) >= 3:
            # braid relation on a same-sign aba run
            spots = []
            for i in range(len(letters) - 2):
                a, b, c = letters[i], letters[i + 1], letters[i + 2]
                if a == c and abs(abs(a) - abs(b)) == 1 and (a > 0) == (b > 0):
                    spots.append(i)
            if spots:
                i = spots[rng.rand_below(len(spots))]
                a, b = letters[i], letters[i + 1]
                letters[i : i + 3] = [b, a, b]
                continue
        if op == 2:
            # free insertion
            i = rng.rand_below(len(letters) + 1)
            v = rng.rand_sign() * (1 + rng.rand_below(n - 1))
            letters[i:i] = [v, -v]
            continue
        # free cancellation
        spots = [i for i in range(len(letters) - 1) if letters[i] == -letters[i + 1]]
        if spots:
            i = spots[rng.rand_below(len(spots))]
            del letters[i : i + 2]
    return BraidWord(n, tuple(letters))


def assert_left_weighted(cf: CanonicalForm) -> None:
    """Structural validity of a canonical form, factor by factor."""
    for f in cf.factors:
        assert not f.is_identity(), "identity factor in normal form"
        assert not f.is_half_twist(), "half-twist factor not extracted"
    for a, b in zip(cf.factors, cf.factors[1:]):
        assert b.starting_set() <= a.finishing_set(), (
            f"pair not left-weighted: S={sorted(b.starting_set())} "
            f"F={sorted(a.finishing_set())}"
        )
