import random

import pytest

from schur_scope import weyl
from schur_scope.cartan import preset
from schur_scope.hurwitz import (
    Factorization,
    Ternary,
    apply_braid_word,
    braid_move,
    canonical_factorization,
    factorization_count_formula,
    full_twist_identity_check,
    hurwitz_orbit,
    is_prefix_of_coxeter,
    normality_probe,
    stabilizer_check,
    standard_stabilizer_words,
    word_inverse,
)

ORBIT_SIZES = {"A2": 3, "B2": 4, "G2": 6, "A3": 16, "B3": 27, "A4": 125, "D4": 162}


def _random_factorization(C, rng, moves=8):
    f = canonical_factorization(C)
    word = tuple(
        rng.choice([1, -1]) * rng.randint(1, C.n - 1) for _ in range(moves)
    )
    return apply_braid_word(f, word)


def test_factorization_validates_product():
    A2 = preset("A2")
    s1 = weyl.simple_reflection(A2, 1)
    with pytest.raises(ValueError):
        Factorization((s1, s1), weyl.coxeter_element(A2))


def test_braid_move_formula_instance():
    A2 = preset("A2")
    f = canonical_factorization(A2)
    moved = braid_move(f, 1)
    assert moved.roots() == ((1, 1), (1, 0))  # (s1 s2 s1, s1)
    s1 = weyl.simple_reflection(A2, 1).matrix
    s2 = weyl.simple_reflection(A2, 2).matrix
    conjugated = weyl.compose(weyl.compose(s1, s2), s1)
    assert moved.parts[0].matrix == conjugated


def test_braid_move_inverse_roundtrip():
    rng = random.Random(4)
    for name in ("A3", "B3", "universal:3:2"):
        C = preset(name)
        for _ in range(20):
            f = _random_factorization(C, rng)
            for i in range(1, C.n):
                assert braid_move(braid_move(f, i), i, inverse=True) == f
                assert braid_move(braid_move(f, i, inverse=True), i) == f


def test_sigma1_cubed_fixes_a2():
    assert stabilizer_check((1, 1, 1), preset("A2"))


def test_apply_braid_word_empty_and_range():
    A3 = preset("A3")
    f = canonical_factorization(A3)
    assert apply_braid_word(f, ()) == f
    with pytest.raises(ValueError):
        apply_braid_word(f, (3,))
    with pytest.raises(ValueError):
        apply_braid_word(f, (0,))


def test_braid_relations_on_canonical():
    A3 = preset("A3")
    f = canonical_factorization(A3)
    assert apply_braid_word(f, (1, 2, 1)) == apply_braid_word(f, (2, 1, 2))
    A4 = preset("A4")
    g = canonical_factorization(A4)
    assert apply_braid_word(g, (1, 3)) == apply_braid_word(g, (3, 1))


def test_braid_relations_on_random_factorizations():
    rng = random.Random(5)
    for name in ("A3", "B3", "A4"):
        C = preset(name)
        for _ in range(100):
            f = _random_factorization(C, rng)
            for i in range(1, C.n - 1):
                assert apply_braid_word(f, (i, i + 1, i)) == apply_braid_word(
                    f, (i + 1, i, i + 1)
                )
            for i in range(1, C.n - 1):
                for j in range(i + 2, C.n):
                    assert apply_braid_word(f, (i, j)) == apply_braid_word(f, (j, i))


def test_orbit_sizes_and_completeness():
    for name, size in ORBIT_SIZES.items():
        orbit = hurwitz_orbit(canonical_factorization(preset(name)))
        assert orbit.complete
        assert len(orbit) == size


def test_orbit_respects_node_cap():
    U = preset("universal:2:2")
    orbit = hurwitz_orbit(canonical_factorization(U), node_cap=25)
    assert not orbit.complete
    assert len(orbit) <= 25


def test_orbit_deterministic():
    A3 = preset("A3")
    first = hurwitz_orbit(canonical_factorization(A3))
    second = hurwitz_orbit(canonical_factorization(A3))
    assert first.factorizations == second.factorizations


def test_orbit_size_is_order_independent():
    # Coxeter elements of different orders are conjugate, so their
    # factorization orbits have the same size.
    assert len(hurwitz_orbit(canonical_factorization(preset("A3"), (3, 1, 2)))) == 16
    assert len(hurwitz_orbit(canonical_factorization(preset("B3"), (2, 1, 3)))) == 27


def test_count_formula():
    assert factorization_count_formula(preset("B3")) == 27
    assert factorization_count_formula(preset("D4")) == 162
    assert factorization_count_formula(preset("F4")) == 432
    with pytest.raises(ValueError):
        factorization_count_formula(preset("affine-A2"))


def test_orbit_matches_formula():
    for name in ORBIT_SIZES:
        C = preset(name)
        assert len(hurwitz_orbit(canonical_factorization(C))) == (
            factorization_count_formula(C)
        )


def test_prefix_simple_generator():
    for name in ("A3", "B3", "universal:3:2"):
        C = preset(name)
        t = weyl.simple_reflection(C, 1)
        verdict = is_prefix_of_coxeter(t, C)
        assert verdict.answer is Ternary.YES
        assert verdict.factorization.parts[0] == t


def test_prefix_conjugate_reflection():
    A3 = preset("A3")
    t = weyl.reflection_for_root(A3, (0, 1, 1))  # s2 s3 s2
    verdict = is_prefix_of_coxeter(t, A3)
    assert verdict.answer is Ternary.YES
    assert verdict.factorization.parts[0] == t


def test_prefix_universal_rank2():
    U = preset("universal:2:2")
    t = weyl.reflection_for_root(U, (2, 1))  # s1 s2 s1
    verdict = is_prefix_of_coxeter(t, U)
    assert verdict.answer is Ternary.YES


def test_prefix_yes_for_all_orbit_components():
    # Rank <= 4 finite presets; the remaining rank-4 ones are covered
    # reflection-by-reflection in the route cross-check test below.
    for name in ("A2", "B2", "G2", "A3", "B3", "A4", "D4"):
        C = preset(name)
        for f in hurwitz_orbit(canonical_factorization(C)).factorizations:
            for part in f.parts:
                assert is_prefix_of_coxeter(part, C).answer is Ternary.YES


def test_prefix_rejects_non_reflection():
    B2 = preset("B2")
    with pytest.raises(ValueError):
        is_prefix_of_coxeter(weyl.identity(2), B2)
    with pytest.raises(ValueError):
        is_prefix_of_coxeter(weyl.coxeter_element(B2), B2)


def test_stabilizer_examples():
    assert stabilizer_check((1,) * 3, preset("A2"))
    assert stabilizer_check((1,) * 6, preset("G2"))
    assert not stabilizer_check((1,) * 3, preset("G2"))
    assert stabilizer_check((1, 2) * 12, preset("A3"))  # (sigma2 sigma1)^12, nh = 12


def test_standard_stabilizer_words_pass():
    for name in ("A3", "B3", "D4"):
        C = preset(name)
        words, skipped = standard_stabilizer_words(C)
        assert not skipped
        for entry in words:
            assert stabilizer_check(entry.word, C), entry.label


def test_standard_stabilizer_words_skip_non_finite():
    words, skipped = standard_stabilizer_words(preset("universal:3:2"))
    assert not words
    assert len(skipped) == 5


def test_full_twist_identity():
    A3 = preset("A3")
    for k in (-2, -1, 0, 1, 2):
        assert full_twist_identity_check(A3, k=k)
    U = preset("universal:3:2")
    for k in (-2, -1, 1, 2):
        assert full_twist_identity_check(U, k=k)


def test_word_inverse_cancels():
    rng = random.Random(6)
    A3 = preset("A3")
    f = canonical_factorization(A3)
    for _ in range(50):
        word = tuple(rng.choice([1, -1]) * rng.randint(1, 2) for _ in range(6))
        assert apply_braid_word(apply_braid_word(f, word), word_inverse(word)) == f


def test_normality_probe_a3_witness():
    witness = normality_probe(preset("A3"))
    assert witness is not None
    A3 = preset("A3")
    assert stabilizer_check(witness.stabilizing, A3)
    conjugated = (
        word_inverse(witness.conjugator) + witness.stabilizing + witness.conjugator
    )
    assert not stabilizer_check(conjugated, A3)


def test_normality_probe_a2_not_found():
    assert normality_probe(preset("A2")) is None


def test_normality_probe_b3_witness():
    assert normality_probe(preset("B3")) is not None


def test_normality_probe_requires_finite():
    with pytest.raises(ValueError):
        normality_probe(preset("universal:3:2"))


def test_prefix_routes_cross_checked_on_all_reflections():
    # is_prefix_of_coxeter runs the length route and the orbit route for
    # finite types and raises on disagreement; drive it over every reflection
    # of every finite preset up to rank 4.
    for name in ("A2", "B2", "C2", "G2", "A3", "B3", "C3", "A4", "B4", "D4", "F4"):
        C = preset(name)
        for t in weyl.reflections(C):
            verdict = is_prefix_of_coxeter(t, C)
            assert verdict.answer is not Ternary.UNKNOWN
            if verdict.answer is Ternary.YES:
                assert verdict.factorization.parts[0] == t
