#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cubesense/dtree.hpp"
#include "cubesense/families.hpp"
#include "cubesense/fourier.hpp"
#include "cubesense/restrictions.hpp"
#include "cubesense/sensitivity.hpp"

using namespace cubesense;

TEST_CASE("enumeration hits every restriction once") {
    CHECK(restriction_count(2, 1) == 4);
    CHECK(restriction_count(3, 3) == 1);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    std::uint64_t count = 0;
    for_each_restriction(4, 2, [&](const Restriction& rho) {
        ++count;
        CHECK(rho.live_count() == 2);
        CHECK((rho.fixed & rho.live) == 0u);
        seen.insert({rho.live, rho.fixed});
    });
    CHECK(count == restriction_count(4, 2));
    CHECK(seen.size() == count);

    Caps tiny;
    tiny.restriction_enum = 8;
    CHECK_THROWS_AS(for_each_restriction(4, 2, [](const Restriction&) {}, tiny), CapacityError);
}

TEST_CASE("sampling is deterministic per seed and uniform-ish") {
    Rng a(42), b(42);
    for (int i = 0; i < 50; ++i) {
        const Restriction ra = sample_restriction(5, 2, a);
        const Restriction rb = sample_restriction(5, 2, b);
        CHECK(ra == rb);
        CHECK(ra.live_count() == 2);
        CHECK((ra.fixed & ra.live) == 0u);
    }
}

TEST_CASE("apply relabels live coordinates in increasing order") {
    const auto a2 = and_fn(2);
    // x2 fixed to 1 leaves the identity on x1
    const auto id = apply_restriction(a2, Restriction{2, 0b01, 0b10});
    CHECK(id.arity() == 1);
    CHECK(id.value(0) == +1);
    CHECK(id.value(1) == -1);
    // x2 fixed to 0 is constant +1
    CHECK(apply_restriction(a2, Restriction{2, 0b01, 0b00}).is_constant());

    // parity with the top variable fixed to 1 is negated parity
    const auto p3 = parity_fn(3);
    const auto neg = apply_restriction(p3, Restriction{3, 0b011, 0b100});
    for (std::uint32_t y = 0; y < 4; ++y)
        CHECK(neg.value(y) == -parity_fn(2).value(y));

    CHECK_THROWS_AS(apply_restriction(a2, Restriction{3, 1, 0}), std::invalid_argument);
}

TEST_CASE("exhaustive stats: frozen small cases") {
    const auto a2 = and_fn(2);
    const auto s = restriction_stats(a2, 1, 1, RestrictionEvent::kSensitivityAtLeast);
    CHECK(s.probability == Rational{1, 2});
    CHECK(s.exhaustive);

    const auto d = restriction_stats(a2, 1, 1, RestrictionEvent::kDegreeEquals);
    CHECK(d.probability == Rational{1, 2});

    // every restriction of parity is a parity of full degree
    for (int k = 1; k <= 4; ++k) {
        const auto p = restriction_stats(parity_fn(4), k, k, RestrictionEvent::kDegreeEquals);
        CHECK(p.probability == Rational{1});
    }
}

TEST_CASE("event monotonicity across measures") {
    // depth dominates both degree and sensitivity pointwise
    for (std::uint64_t seed : {3, 9, 27}) {
        const auto f = random_fn(4, seed);
        for (int k = 1; k <= 3; ++k) {
            for (int j = 1; j <= k; ++j) {
                const auto ps =
                    restriction_stats(f, k, j, RestrictionEvent::kSensitivityAtLeast);
                const auto pd = restriction_stats(f, k, j, RestrictionEvent::kDegreeAtLeast);
                const auto pt = restriction_stats(f, k, j, RestrictionEvent::kDepthAtLeast);
                CHECK(pt.probability >= pd.probability);
                CHECK(pt.probability >= ps.probability);
            }
        }
    }
}

TEST_CASE("monte carlo estimates converge to the exact value") {
    const auto f = random_fn(5, 77);
    for (int k : {2, 3}) {
        const auto exact =
            restriction_stats(f, k, 2, RestrictionEvent::kSensitivityAtLeast);
        const auto mc = restriction_stats(f, k, 2, RestrictionEvent::kSensitivityAtLeast,
                                          SampleMode{20000, 123});
        CHECK(!mc.exhaustive);
        CHECK(mc.samples == 20000);
        const double gap = std::abs(static_cast<double>(mc.probability - exact.probability));
        CHECK(gap <= 5.0 * std::max(mc.std_error, 1e-4));
    }
    CHECK_THROWS_AS(restriction_stats(f, 2, 1, RestrictionEvent::kSensitivityAtLeast,
                                      SampleMode{0, 1}),
                    std::invalid_argument);
}

TEST_CASE("bound checks: frozen rows") {
    const auto a2 = and_fn(2);
    const auto sk = bound_check(a2, 1, 1, BoundTheorem::kSensitivityMoment);
    CHECK(sk.lower == Rational{1, 2});
    CHECK(sk.observed == Rational{1, 2});
    CHECK(sk.upper == Rational{1});
    CHECK(sk.pass);

    const auto ik = bound_check(a2, 1, 1, BoundTheorem::kInfluenceMoment);
    CHECK(ik.lower == Rational{1, 2});
    CHECK(ik.observed == Rational{1, 2});
    CHECK(ik.upper == Rational{1, 2});
    CHECK(ik.pass);

    const auto c = BooleanFunction::constant(3, +1);
    for (auto t : {BoundTheorem::kSensitivityMoment, BoundTheorem::kInfluenceMoment,
                   BoundTheorem::kTreeSensitivity, BoundTheorem::kSwitching}) {
        const auto b = bound_check(c, 2, 1, t);
        CHECK(b.observed == Rational{0});
        CHECK(b.lower == Rational{0});
        CHECK(b.pass);
    }
    CHECK_THROWS_AS(bound_check(a2, 1, 2, BoundTheorem::kSwitching), std::invalid_argument);
}

TEST_CASE("all four sandwiches hold for sampled functions and named families") {
    std::vector<BooleanFunction> funcs;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) funcs.push_back(random_fn(4, seed));
    funcs.push_back(hamming_fn(3));
    funcs.push_back(address_tree_fn(3));
    funcs.push_back(dnf_parity_rows_fn(2, 2));
    for (const auto& f : funcs) {
        for (int k = 1; k <= f.arity(); ++k) {
            for (int j = 1; j <= k; ++j) {
                for (auto t : {BoundTheorem::kSensitivityMoment, BoundTheorem::kTreeSensitivity})
                    CHECK(bound_check(f, k, j, t).pass);
            }
            CHECK(bound_check(f, k, k, BoundTheorem::kInfluenceMoment).pass);
            CHECK(bound_check(f, k, k, BoundTheorem::kSwitching).pass);
        }
    }
}

TEST_CASE("report-only rows are flagged conditional") {
    const auto f = random_fn(4, 5);
    for (auto t : {BoundTheorem::kDepthUnconditional, BoundTheorem::kDepthConditional,
                   BoundTheorem::kMomentConditional}) {
        const auto b = bound_check(f, 3, 2, t);
        CHECK(b.conditional);
    }
    const auto row = bound_check_csv_row(bound_check(f, 3, 2, BoundTheorem::kDepthConditional));
    CHECK(row.find("conditional") != std::string::npos);
    CHECK(std::string(bound_check_csv_header()) == "n,k,j,measure,lower,observed,upper,pass");
}
