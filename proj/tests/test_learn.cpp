#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubesense/families.hpp"
#include "cubesense/fourier.hpp"
#include "cubesense/learn.hpp"

using namespace cubesense;

TEST_CASE("samples are reproducible and correctly labeled") {
    const auto f = random_fn(5, 3);
    const auto a = draw_samples(f, 100, 17);
    const auto b = draw_samples(f, 100, 17);
    CHECK(a.points == b.points);
    CHECK(a.labels == b.labels);
    for (std::size_t i = 0; i < a.points.size(); ++i)
        CHECK(a.labels[i] == f.value(a.points[i]));
    const auto c = draw_samples(f, 100, 18);
    CHECK(a.points != c.points);
    CHECK_THROWS_AS(draw_samples(f, 0, 1), std::invalid_argument);
}

TEST_CASE("parity is learned exactly at full degree") {
    const auto f = parity_fn(2);
    const auto h = lmn_learn(draw_samples(f, 200, 7), 2, 2);
    CHECK(hypothesis_error(h, f) == Rational{0});
}

TEST_CASE("constants are learned from tiny samples") {
    const auto f = BooleanFunction::constant(4, -1);
    const auto h = lmn_learn(draw_samples(f, 50, 3), 4, 0);
    CHECK(hypothesis_error(h, f) == Rational{0});
}

TEST_CASE("exact truncation at the full degree has zero error") {
    // with d = n the empirical estimates converge; at m large enough wrt 2^n
    // the sign recovers f everywhere for these sizes
    for (std::uint64_t seed : {1, 4}) {
        const auto f = random_fn(3, seed);
        const auto h = lmn_learn(draw_samples(f, 20000, seed + 1), 3, 3);
        CHECK(hypothesis_error(h, f) == Rational{0});
    }
}

TEST_CASE("low-sensitivity target learns under the degree budget") {
    const auto f = address_tree_fn(7);  // s <= dt = 3
    const auto h = lmn_learn(draw_samples(f, 50000, 42), 7, 6);
    const Rational err = hypothesis_error(h, f);
    CHECK(err <= Rational{1, 10});
}

TEST_CASE("hypothesis structure and tie breaking") {
    const auto f = parity_fn(3);
    const auto h = lmn_learn(draw_samples(f, 500, 9), 3, 2);
    // all subsets of size <= 2
    CHECK(h.subsets.size() == 7);
    CHECK(h.degree == 2);
    CHECK_THROWS_AS(lmn_learn(draw_samples(f, 10, 1), 3, 4), std::invalid_argument);
    const auto g = random_fn(4, 2);
    CHECK_THROWS_AS(hypothesis_error(h, g), std::invalid_argument);

    // a polynomial that is exactly zero evaluates to +1
    Hypothesis zero;
    zero.n = 2;
    zero.degree = 0;
    zero.samples = 1;
    zero.subsets = {0};
    zero.numerators = {0};
    CHECK(zero.evaluate(0) == +1);
    CHECK(zero.evaluate(3) == +1);
}

TEST_CASE("random guesses sit near half error against parity") {
    // a constant +1 hypothesis disagrees with parity on exactly half the cube
    Hypothesis h;
    h.n = 4;
    h.degree = 0;
    h.samples = 1;
    h.subsets = {0};
    h.numerators = {1};
    CHECK(hypothesis_error(h, parity_fn(4)) == Rational{1, 2});
}
