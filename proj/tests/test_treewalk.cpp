#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <map>
#include <vector>

#include "cubesense/dtree.hpp"
#include "cubesense/families.hpp"
#include "cubesense/rng.hpp"
#include "cubesense/serialize.hpp"
#include "cubesense/treewalk.hpp"

using namespace cubesense;

namespace {

// Independent oracle: test the tree conditions on an explicit vertex subset.
bool subset_is_sensitive_tree(const BooleanFunction& f, const std::vector<std::uint32_t>& s) {
    if (s.size() < 2) return false;
    std::vector<std::pair<int, int>> edges;  // indices into s
    std::uint32_t labels = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const std::uint32_t diff = s[i] ^ s[j];
            if (std::popcount(diff) != 1) continue;
            if (f.bit(s[i]) == f.bit(s[j])) return false;  // induced edge not sensitive
            if (labels & diff) return false;               // repeated direction
            labels |= diff;
            edges.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
    if (edges.size() + 1 != s.size()) return false;
    std::vector<int> comp(s.size(), -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (auto [a, b] : edges) {
            const int other = a == v ? b : (b == v ? a : -1);
            if (other >= 0 && comp[other] < 0) {
                comp[other] = 0;
                stack.push_back(other);
            }
        }
    }
    for (int c : comp)
        if (c < 0) return false;
    return true;
}

// Oracle values of ts and the per-size counts by brute force over subsets.
std::pair<int, std::map<int, std::uint64_t>> brute_force_trees(const BooleanFunction& f) {
    const int size = static_cast<int>(f.table_size());
    int ts = 0;
    std::map<int, std::uint64_t> counts;
    for (std::uint32_t mask = 1; mask < (1u << size); ++mask) {
        std::vector<std::uint32_t> subset;
        for (int v = 0; v < size; ++v)
            if ((mask >> v) & 1) subset.push_back(v);
        if (subset.size() < 2 || subset.size() > static_cast<std::size_t>(f.arity()) + 1)
            continue;
        if (subset_is_sensitive_tree(f, subset)) {
            const int edges = static_cast<int>(subset.size()) - 1;
            ts = std::max(ts, edges);
            ++counts[edges];
        }
    }
    return {ts, counts};
}

}  // namespace

TEST_CASE("induced_tree validates the definition") {
    const auto p2 = parity_fn(2);
    const auto t = induced_tree(p2, {0, 1, 3});
    CHECK(t.edges.size() == 2);
    CHECK(t.labels.count() == 2);

    // the full square closes a cycle
    CHECK_THROWS_AS(induced_tree(p2, {0, 1, 2, 3}), std::invalid_argument);
    // single vertices are not trees
    CHECK_THROWS_AS(induced_tree(p2, {0}), std::invalid_argument);
    // disconnected pair
    CHECK_THROWS_AS(induced_tree(p2, {0, 3}), std::invalid_argument);
    // non-sensitive induced edge
    CHECK_THROWS_AS(induced_tree(and_fn(2), {0, 1}), std::invalid_argument);
}

TEST_CASE("proper walk detection") {
    const auto p2 = parity_fn(2);
    CHECK(is_proper_walk(p2, Walk{0, {1, 2}}));  // 00 -> 10 -> 11
    CHECK_FALSE(is_proper_walk(BooleanFunction::constant(2, +1), Walk{0, {1}}));
    CHECK(is_proper_walk(BooleanFunction::constant(2, +1), Walk{0, {}}));
    // 00 is not sensitive to coordinate 2 under AND
    CHECK_FALSE(is_proper_walk(and_fn(2), Walk{0, {2}}));
    // 01 -> 11 -> 10 crosses a sensitive edge at each first flip
    CHECK(is_proper_walk(and_fn(2), Walk{1, {2, 1}}));
    // 11 -> 10 -> 00 first-flips coordinate 2 at the insensitive vertex 10
    CHECK_FALSE(is_proper_walk(and_fn(2), Walk{3, {1, 2}}));
    CHECK_THROWS_AS(is_proper_walk(p2, Walk{0, {3}}), std::invalid_argument);
}

TEST_CASE("tree sensitivity on named functions") {
    for (int n : {1, 2, 3, 4}) CHECK(tree_sensitivity(parity_fn(n)) == n);
    CHECK(tree_sensitivity(and_fn(3)) == 3);  // star at 111
    CHECK(tree_sensitivity(BooleanFunction::constant(3, +1)) == 0);
    CHECK(tree_sensitivity(address_tree_fn(7)) == 7);

    CHECK(tree_sensitivity_at(and_fn(3), Point{7}) == 3);
    CHECK(tree_sensitivity_at(and_fn(3), Point{0}) == 0);
    // every vertex of parity sits in a spanning star
    for (std::uint32_t x = 0; x < 8; ++x)
        CHECK(tree_sensitivity_at(parity_fn(3), Point{x}) == 3);

    Caps tiny;
    tiny.tree_search = 2;
    CHECK_THROWS_AS(tree_sensitivity(parity_fn(3), tiny), CapacityError);
}

TEST_CASE("tree sensitivity and counts match brute force") {
    Rng rng(31);
    for (int n : {2, 3, 4}) {
        for (int trial = 0; trial < (n == 4 ? 6 : 12); ++trial) {
            std::vector<std::uint8_t> bits(std::size_t{1} << n);
            for (auto& b : bits) b = rng.bit();
            const auto f = BooleanFunction::from_bits(n, bits);
            const auto [ts_oracle, counts_oracle] = brute_force_trees(f);
            CHECK(tree_sensitivity(f) == ts_oracle);
            const auto counts = count_sensitive_trees_up_to(f, n);
            for (int j = 1; j <= n; ++j) {
                const auto it = counts_oracle.find(j);
                CHECK(counts[j] == (it == counts_oracle.end() ? 0 : it->second));
            }
            // ts at each point never exceeds ts and hits it somewhere
            int best = 0;
            for (std::uint32_t x = 0; x < f.table_size(); ++x)
                best = std::max(best, tree_sensitivity_at(f, Point{x}));
            CHECK(best == ts_oracle);
        }
    }
}

TEST_CASE("tree counts: frozen examples") {
    const auto p2 = parity_fn(2);
    CHECK(count_sensitive_trees(p2, 1) == 4);  // the four cube edges
    CHECK(count_sensitive_trees(p2, 2) == 4);  // one two-edge path per center
    CHECK(count_sensitive_trees(BooleanFunction::constant(3, -1), 2) == 0);
}

TEST_CASE("classification: maximality and orchards") {
    // spanning star of parity: nothing remains outside the labels
    const auto p3 = parity_fn(3);
    const auto star = induced_tree(p3, {0, 1, 2, 4});
    const auto c = classify_tree(p3, star);
    CHECK(c.maximal);
    CHECK(c.orchard == OrchardStatus::kYes);

    // single edge of AND under 111: the top vertex is sensitive elsewhere
    const auto a3 = and_fn(3);
    const auto edge = induced_tree(a3, {3, 7});
    const auto ce = classify_tree(a3, edge);
    CHECK_FALSE(ce.maximal);

    // maximum-size trees always sit in orchards
    for (std::uint64_t seed : {5, 6, 7}) {
        const auto f = random_fn(3, seed);
        const int ts = tree_sensitivity(f);
        if (ts == 0) continue;
        const auto [ts_oracle, counts] = brute_force_trees(f);
        REQUIRE(ts == ts_oracle);
        const int size = static_cast<int>(f.table_size());
        for (std::uint32_t mask = 1; mask < (1u << size); ++mask) {
            if (std::popcount(mask) != ts + 1) continue;
            std::vector<std::uint32_t> subset;
            for (int v = 0; v < size; ++v)
                if ((mask >> v) & 1) subset.push_back(v);
            if (!subset_is_sensitive_tree(f, subset)) continue;
            CHECK(classify_tree(f, induced_tree(f, subset)).orchard == OrchardStatus::kYes);
        }
    }

    // over the orchard-shift cap the check reports unverified
    Caps tight;
    tight.orchard_shift = 0;
    CHECK(classify_tree(a3, edge, tight).orchard == OrchardStatus::kUnverified);
}

TEST_CASE("orchard label sets intersect") {
    // any two orchards share a label; scan all maximal-size trees of small
    // random functions and of every pair of verified orchards
    Rng rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::uint8_t> bits(8);
        for (auto& b : bits) b = rng.bit();
        const auto f = BooleanFunction::from_bits(3, bits);
        std::vector<std::uint32_t> orchard_labels;
        for (std::uint32_t mask = 1; mask < 256; ++mask) {
            std::vector<std::uint32_t> subset;
            for (int v = 0; v < 8; ++v)
                if ((mask >> v) & 1) subset.push_back(v);
            if (subset.size() < 2 || !subset_is_sensitive_tree(f, subset)) continue;
            const auto tree = induced_tree(f, subset);
            if (classify_tree(f, tree).orchard == OrchardStatus::kYes)
                orchard_labels.push_back(tree.labels.mask);
        }
        for (std::size_t i = 0; i < orchard_labels.size(); ++i)
            for (std::size_t j = i + 1; j < orchard_labels.size(); ++j)
                CHECK((orchard_labels[i] & orchard_labels[j]) != 0u);
    }
}

TEST_CASE("non-orchard trees have a non-maximal shift") {
    Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::uint8_t> bits(8);
        for (auto& b : bits) b = rng.bit();
        const auto f = BooleanFunction::from_bits(3, bits);
        for (std::uint32_t mask = 1; mask < 256; ++mask) {
            std::vector<std::uint32_t> subset;
            for (int v = 0; v < 8; ++v)
                if ((mask >> v) & 1) subset.push_back(v);
            if (subset.size() < 2 || !subset_is_sensitive_tree(f, subset)) continue;
            const auto tree = induced_tree(f, subset);
            if (classify_tree(f, tree).orchard != OrchardStatus::kNo) continue;
            // some shifted copy must fail maximality
            const std::uint32_t complement = 7u & ~tree.labels.mask;
            bool found_nonmaximal_shift = false;
            std::uint32_t v = complement;
            for (;;) {
                bool shiftable = true;
                for (std::uint32_t x : tree.vertices)
                    shiftable = shiftable && f.bit(x) == f.bit(x ^ v);
                if (shiftable) {
                    std::vector<std::uint32_t> moved;
                    for (std::uint32_t x : tree.vertices) moved.push_back(x ^ v);
                    if (!classify_tree(f, induced_tree(f, moved)).maximal)
                        found_nonmaximal_shift = true;
                }
                if (v == 0) break;
                v = (v - 1) & complement;
            }
            CHECK(found_nonmaximal_shift);
        }
    }
}

TEST_CASE("full-dimension walks") {
    for (int n : {1, 2, 3, 4}) {
        const auto p = parity_fn(n);
        const Walk w = full_dim_proper_walk(p);
        CHECK(is_proper_walk(p, w));
        CHECK(w.dimension() == n);
        CHECK(w.length() <= static_cast<std::size_t>(n) * (n + 1) / 2);
    }
    const auto a3 = and_fn(3);
    const Walk w = full_dim_proper_walk(a3);
    CHECK(is_proper_walk(a3, w));
    CHECK(w.dimension() == 3);

    CHECK_THROWS_AS(full_dim_proper_walk(dictator_fn(2, 1)), std::invalid_argument);

    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = random_fn(5, rng.next());
        if (f.dim() != 5) continue;
        const Walk fw = full_dim_proper_walk(f);
        CHECK(is_proper_walk(f, fw));
        CHECK(fw.dimension() == 5);
        CHECK(fw.length() <= 15u);
    }
}

TEST_CASE("3n walks for full-depth functions") {
    const auto p2 = parity_fn(2);
    const Walk w2 = proper_walk_3n(p2);
    CHECK(is_proper_walk(p2, w2));
    CHECK(w2.dimension() == 2);
    CHECK(w2.length() <= 6u);

    const auto a3 = and_fn(3);
    const Walk w3 = proper_walk_3n(a3);
    CHECK(is_proper_walk(a3, w3));
    CHECK(w3.dimension() == 3);
    CHECK(w3.length() <= 9u);

    // dt(addressing) < n
    CHECK_THROWS_AS(proper_walk_3n(address_tree_fn(3)), std::invalid_argument);

    Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const auto f = random_fn(4, rng.next());
        if (decision_tree_depth(f) != 4) continue;
        const Walk w = proper_walk_3n(f);
        CHECK(is_proper_walk(f, w));
        CHECK(w.dimension() == 4);
        CHECK(w.length() <= 12u);
    }
}

TEST_CASE("spanning tree sensitivity yields a 2n tour walk") {
    // whenever ts(f) = n, touring a spanning sensitive tree (each edge twice)
    // is a proper walk of dimension n and length exactly 2n
    Rng rng(404);
    int verified = 0;
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::uint8_t> bits(8);
        for (auto& b : bits) b = rng.bit();
        const auto f = BooleanFunction::from_bits(3, bits);
        if (tree_sensitivity(f) != 3) continue;
        // locate one spanning sensitive tree by brute force
        std::optional<SensitiveTree> spanning;
        for (std::uint32_t mask = 1; mask < 256 && !spanning; ++mask) {
            if (std::popcount(mask) != 4) continue;
            std::vector<std::uint32_t> subset;
            for (int v = 0; v < 8; ++v)
                if ((mask >> v) & 1) subset.push_back(v);
            if (subset_is_sensitive_tree(f, subset)) spanning = induced_tree(f, subset);
        }
        REQUIRE(spanning.has_value());
        // Euler tour from the first vertex
        Walk w;
        w.start = spanning->vertices[0];
        std::vector<bool> seen(spanning->vertices.size(), false);
        auto idx = [&](std::uint32_t v) {
            return std::lower_bound(spanning->vertices.begin(), spanning->vertices.end(), v) -
                   spanning->vertices.begin();
        };
        auto tour = [&](auto&& self, std::uint32_t u) -> void {
            seen[idx(u)] = true;
            for (const auto& e : spanning->edges) {
                const std::uint32_t other = e.a == u ? e.b : (e.b == u ? e.a : u);
                if (other == u || seen[idx(other)]) continue;
                w.flips.push_back(e.coord);
                self(self, other);
                w.flips.push_back(e.coord);
            }
        };
        tour(tour, w.start);
        CHECK(w.length() == 6u);  // 2n
        CHECK(w.dimension() == 3);
        CHECK(is_proper_walk(f, w));
        ++verified;
    }
    CHECK(verified > 0);
}

TEST_CASE("minimum proper walk lengths") {
    CHECK(min_proper_walk(parity_fn(2)) == 2);
    CHECK(min_proper_walk(and_fn(2)) == 2);
    CHECK(!min_proper_walk(BooleanFunction::constant(3, +1)).has_value());
    CHECK(!min_proper_walk(dictator_fn(3, 1)).has_value());
    // the minimum can never beat the dimension
    Rng rng(123);
    for (int trial = 0; trial < 15; ++trial) {
        const auto f = random_fn(4, rng.next());
        if (f.dim() != 4) continue;
        const auto len = min_proper_walk(f);
        REQUIRE(len.has_value());
        CHECK(*len >= 4);
        CHECK(*len <= static_cast<int>(full_dim_proper_walk(f).length()));
    }
}

TEST_CASE("walk encoding: frozen two-variable example") {
    const auto p2 = parity_fn(2);
    const Restriction rho{2, 0b11, 0};
    const WalkEncoding enc = encode_walk(p2, rho);
    CHECK(enc.k == 2);
    CHECK(enc.phase_ends == std::vector<int>{2});
    CHECK(enc.tour_bits.size() == 4);
    CHECK(enc.cube_bits.size() == 2);
    CHECK(enc.neighbor_indices.size() == 2);
    CHECK(decode_walk(p2, enc, 2) == rho);

    // wire-format round trip
    const WalkEncoding parsed = walk_encoding_from_json(to_json(enc), 2);
    CHECK(parsed == enc);
    CHECK(decode_walk(p2, parsed, 2) == rho);
}

TEST_CASE("walk encoding round trips over every qualifying restriction") {
    Rng rng(2024);
    for (int n : {4, 5}) {
        for (int k : {2, 3}) {
            for (int trial = 0; trial < 8; ++trial) {
                const auto f = random_fn(n, rng.next());
                const EncodingScan scan = encoding_bijection_scan(f, k);
                CHECK(scan.roundtrip_failures == 0);
                CHECK(scan.duplicate_encodings == 0);
                CHECK(scan.observed <= scan.bound);
                CHECK(scan.pass);
            }
        }
    }
}

TEST_CASE("corrupted encodings fail to decode") {
    const auto f = random_fn(4, 500);
    // find one qualifying restriction
    std::optional<Restriction> found;
    for_each_restriction(4, 2, [&](const Restriction& rho) {
        if (found) return;
        if (decision_tree_depth(apply_restriction(f, rho)) == 2) found = rho;
    });
    REQUIRE(found.has_value());
    const WalkEncoding enc = encode_walk(f, *found);

    WalkEncoding bad = enc;
    bad.neighbor_indices[0] = 99;  // past every sensitivity
    CHECK_THROWS_AS(decode_walk(f, bad, 2), DecodeError);

    WalkEncoding short_b = enc;
    short_b.tour_bits.pop_back();
    CHECK_THROWS_AS(decode_walk(f, short_b, 2), DecodeError);

    WalkEncoding bad_k = enc;
    bad_k.phase_ends.back() = 1;
    CHECK_THROWS_AS(decode_walk(f, bad_k, 2), DecodeError);

    // replayable but outside the encoder's image: the in-cube walk bits are
    // perturbed, so no restriction encodes to this tuple
    WalkEncoding bent = enc;
    bent.cube_bits[0] ^= 1;
    CHECK_THROWS_AS(decode_walk(f, bent, 2), DecodeError);

    // restrictions without full restricted depth are rejected up front
    CHECK_THROWS_AS(encode_walk(address_tree_fn(3), Restriction{3, 0b111, 0}),
                    std::invalid_argument);
}
