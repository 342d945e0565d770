#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "cubesense/boolean_function.hpp"
#include "cubesense/rng.hpp"

using namespace cubesense;

TEST_CASE("build and evaluate fix the sign convention") {
    // identity on one variable: f(0) = +1, f(1) = -1
    const auto f = BooleanFunction::from_bits(1, {0, 1});
    CHECK(f.evaluate(Point{0}) == +1);
    CHECK(f.evaluate(Point{1}) == -1);

    // AND at two variables: -1 only at 11
    const auto g = BooleanFunction::from_bits(2, {0, 0, 0, 1});
    CHECK(g.evaluate(Point{3}) == -1);
    CHECK(g.evaluate(Point{1}) == +1);
    CHECK(g.evaluate(Point{2}) == +1);

    // parity of two variables at 10 (index 2): odd weight
    const auto p = BooleanFunction::from_bits(2, {0, 1, 1, 0});
    CHECK(p.evaluate(Point{2}) == -1);

    CHECK_THROWS_AS(BooleanFunction::from_bits(2, {0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(g.evaluate(Point{4}), std::out_of_range);
    Caps small;
    small.table = 3;
    CHECK_THROWS_AS(BooleanFunction::from_bits(4, std::vector<std::uint8_t>(16, 0), small),
                    CapacityError);
}

TEST_CASE("support dimensions") {
    const auto parity3 = BooleanFunction::from_bits(3, {0, 1, 1, 0, 1, 0, 0, 1});
    CHECK(parity3.support_dims().mask == 0b111u);
    CHECK(parity3.dim() == 3);

    const auto c = BooleanFunction::constant(3, +1);
    CHECK(c.support_dims().empty());
    CHECK(c.dim() == 0);
    CHECK(c.is_constant());

    // f(x) = (-1)^{x_2} on three variables
    std::vector<std::uint8_t> bits(8);
    for (int x = 0; x < 8; ++x) bits[x] = (x >> 1) & 1;
    const auto dict = BooleanFunction::from_bits(3, bits);
    CHECK(dict.support_dims().mask == 0b010u);
    CHECK(dict.dim() == 1);
}

TEST_CASE("restrict_coord drops one coordinate") {
    const auto g = BooleanFunction::from_bits(2, {0, 0, 0, 1});  // AND
    const auto fixed1 = g.restrict_coord(2, 1);
    CHECK(fixed1.arity() == 1);
    CHECK(fixed1.bit(0) == 0);
    CHECK(fixed1.bit(1) == 1);
    const auto fixed0 = g.restrict_coord(2, 0);
    CHECK(fixed0.is_constant());
}

TEST_CASE("truth-table file format round trip is bit exact") {
    Rng rng(7);
    for (int n : {1, 2, 3, 5, 7, 10}) {
        std::vector<std::uint64_t> words((std::uint64_t{1} << std::max(0, n - 6)));
        for (auto& w : words) w = rng.next();
        const auto f = BooleanFunction::from_words(n, words);
        std::stringstream ss;
        write_table(ss, f);
        const auto g = read_table(ss);
        CHECK(g == f);
    }
}

TEST_CASE("table hex encoding is LSB-first") {
    // bits 0..3 = 0,1,1,0 -> digit 6; bits 4..7 = 1,0,0,1 -> digit 9
    const auto f = BooleanFunction::from_bits(3, {0, 1, 1, 0, 1, 0, 0, 1});
    CHECK(to_table_hex(f) == "69");
    CHECK(from_table_hex(3, "69") == f);

    const auto one_var = BooleanFunction::from_bits(1, {0, 1});
    CHECK(to_table_hex(one_var) == "2");

    CHECK_THROWS_AS(from_table_hex(3, "691"), std::invalid_argument);
    CHECK_THROWS_AS(from_table_hex(3, "6z"), std::invalid_argument);
}

TEST_CASE("malformed table files fail loudly") {
    std::stringstream ss("m=3\nff\n");
    CHECK_THROWS_AS(read_table(ss), std::invalid_argument);
    std::stringstream ss2("n=2\n");
    CHECK_THROWS_AS(read_table(ss2), std::invalid_argument);
}
