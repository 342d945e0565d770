#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubesense/dtree.hpp"
#include "cubesense/families.hpp"
#include "cubesense/fourier.hpp"
#include "cubesense/sensitivity.hpp"
#include "cubesense/treewalk.hpp"

using namespace cubesense;

TEST_CASE("family parsing") {
    const auto spec = parse_family("or_ham_parity:3,2");
    CHECK(spec.name == "or_ham_parity");
    REQUIRE(spec.params.size() == 2);
    CHECK(spec.params[0] == 3);
    CHECK(spec.params[1] == 2);
    CHECK(parse_family("parity:4").params.size() == 1);
    CHECK_THROWS_AS(parse_family("parity:x"), std::invalid_argument);
    CHECK_THROWS_AS(make_family(parse_family("nosuch:1")), std::invalid_argument);
    CHECK_THROWS_AS(make_family(parse_family("parity:1,2")), std::invalid_argument);
}

TEST_CASE("basic families") {
    CHECK(make_family({"parity", {3}}) == parity_fn(3));
    CHECK(and_fn(2).value(3) == -1);
    CHECK(and_fn(2).value(2) == +1);
    CHECK(or_fn(3).value(0) == +1);
    CHECK(or_fn(3).value(5) == -1);
    CHECK(dictator_fn(4, 3).dim() == 1);
    CHECK_THROWS_AS(dictator_fn(3, 4), std::invalid_argument);
}

TEST_CASE("addressing gap: shallow tree, full tree sensitivity") {
    for (int n : {3, 7}) {
        const auto f = address_tree_fn(n);
        int h = 0;
        while ((1 << h) - 1 < n) ++h;
        CHECK(decision_tree_depth(f) == h);
        CHECK(tree_sensitivity(f) == n);
    }
    CHECK_THROWS_AS(address_tree_fn(4), std::invalid_argument);
}

TEST_CASE("hamming code indicator") {
    const auto h3 = hamming_fn(3);
    // codeword set {000, 111}
    CHECK(h3.bit(0));
    CHECK(h3.bit(7));
    for (std::uint32_t x : {1u, 2u, 3u, 4u, 5u, 6u}) CHECK(!h3.bit(x));
    const auto st = sensitivity_stats(h3, 1);
    CHECK(st.s0 == 1);
    CHECK(st.s1 == 3);

    const auto st7 = sensitivity_stats(hamming_fn(7), 1);
    CHECK(st7.s0 == 1);
    CHECK(st7.s1 == 7);
    // 2^m/(m+1) codewords at distance >= 3
    int words = 0;
    const auto h7 = hamming_fn(7);
    for (std::uint32_t x = 0; x < 128; ++x) words += h7.bit(x);
    CHECK(words == 16);

    CHECK_THROWS_AS(hamming_fn(4), std::invalid_argument);
}

TEST_CASE("composed code family") {
    const auto f = or_ham_parity_fn(3, 1);
    CHECK(f.arity() == 9);
    CHECK(max_sensitivity(f) == 3);  // m * l

    const auto g = or_ham_parity_fn(3, 2);
    CHECK(g.arity() == 18);
    CHECK(max_sensitivity(g) == 6);

    // Fourier weight at level m(m+1)/2 * l of at least m^-m / 2
    const auto w = level_weights(f);
    CHECK(w[6] >= Rational{1, 54});
    CHECK_THROWS_AS(or_ham_parity_fn(4, 1), std::invalid_argument);
}

TEST_CASE("hadamard selector") {
    const auto g = hadamard_gadget_fn(8);
    CHECK(g.arity() == 8);
    // the x-half 0000 matches codeword 0, so the output is y_0
    CHECK(g.bit(0b00010000) == 1);
    CHECK(g.bit(0b00000000) == 0);
    // non-codeword x-half gives +1 regardless of y
    CHECK(g.bit(0b11110001) == 0);
    CHECK_THROWS_AS(hadamard_gadget_fn(6), std::invalid_argument);
}

TEST_CASE("parity-row DNF grid") {
    const auto h = dnf_parity_rows_fn(2, 2);
    CHECK(h.arity() == 4);
    // -1 iff some row x_{i1} xor x_{i2} is odd
    CHECK(h.bit(0b0001));
    CHECK(h.bit(0b0100));
    CHECK(!h.bit(0b0000));
    CHECK(!h.bit(0b0011));
    const auto st = sensitivity_stats(h, 2);
    CHECK(st.sk >= Rational{4});  // (rows * width / 2)^rows
}

TEST_CASE("seeded families are reproducible") {
    CHECK(random_fn(6, 9) == random_fn(6, 9));
    CHECK(random_fn(6, 9) != random_fn(6, 10));
    CHECK(random_width_dnf_fn(6, 2, 3, 4) == random_width_dnf_fn(6, 2, 3, 4));
    CHECK_THROWS_AS(random_width_dnf_fn(4, 5, 2, 1), std::invalid_argument);
}
