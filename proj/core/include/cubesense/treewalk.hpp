#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cubesense/boolean_function.hpp"
#include "cubesense/rational.hpp"
#include "cubesense/restrictions.hpp"

namespace cubesense {

// A set of points whose induced hypercube subgraph is a tree, every induced
// edge sensitive, all edge directions distinct. The vertex set determines the
// tree, so vertices are kept sorted and edges derived.
struct SensitiveTree {
    int n = 0;
    std::vector<std::uint32_t> vertices;  // sorted ascending
    struct Edge {
        std::uint32_t a = 0;  // a < b
        std::uint32_t b = 0;
        int coord = 0;  // 1-based direction
    };
    std::vector<Edge> edges;
    CoordSet labels;  // the edge directions; size() == edges.size()
};

// Builds the tree induced by the vertex set, or throws std::invalid_argument
// when the set does not induce a sensitive tree.
SensitiveTree induced_tree(const BooleanFunction& f, std::vector<std::uint32_t> vertices);

// A walk in the cube: a start point and the 1-based coordinates flipped, in
// order. Dimension is the number of distinct coordinates flipped.
struct Walk {
    std::uint32_t start = 0;
    std::vector<int> flips;

    std::size_t length() const { return flips.size(); }
    int dimension() const;
    std::vector<std::uint32_t> vertices() const;  // length()+1 points
    std::uint32_t end() const;
};

// True iff the first flip along every coordinate direction leaves a vertex
// sensitive to that coordinate.
bool is_proper_walk(const BooleanFunction& f, const Walk& w);

// ts(f) and ts(f,x): the largest label-set size of a sensitive tree (through
// x). Constants have no sensitive tree; both return 0 for them.
int tree_sensitivity(const BooleanFunction& f, const Caps& caps = default_caps());
int tree_sensitivity_at(const BooleanFunction& f, Point x, const Caps& caps = default_caps());

// Number of vertex sets inducing sensitive trees with exactly j edges.
std::uint64_t count_sensitive_trees(const BooleanFunction& f, int j,
                                    const Caps& caps = default_caps());
std::vector<std::uint64_t> count_sensitive_trees_up_to(const BooleanFunction& f, int j_max,
                                                       const Caps& caps = default_caps());

enum class OrchardStatus { kYes, kNo, kUnverified };

struct TreeClass {
    bool maximal = false;
    OrchardStatus orchard = OrchardStatus::kUnverified;
};

// maximal: no vertex of the tree is sensitive outside the label set.
// orchard: the tree shifts by every vector supported off its labels; checked
// exhaustively when the complement has at most caps.orchard_shift coordinates,
// reported unverified otherwise (sampling could only refute a universal).
TreeClass classify_tree(const BooleanFunction& f, const SensitiveTree& t,
                        const Caps& caps = default_caps());

// For a function depending on all n coordinates: a proper walk of dimension n
// and length at most n(n+1)/2, built by growing a sensitive coordinate set and
// shifting the visited set toward the nearest externally sensitive vertex.
Walk full_dim_proper_walk(const BooleanFunction& f, const Caps& caps = default_caps());

// For a function with dt(f) = n: a proper walk of dimension n and length at
// most 3n, built by recursively touring a maximum sensitive tree (which sits
// in an orchard), walking inside its label cube, and recursing on a
// restriction of full remaining depth. All choices are canonical, so the walk
// is a deterministic function of f.
Walk proper_walk_3n(const BooleanFunction& f, const Caps& caps = default_caps());

// Minimum length of a proper walk of dimension n (BFS over (vertex, flipped
// set) states), or nullopt when dim(f) < n.
std::optional<int> min_proper_walk(const BooleanFunction& f, const Caps& caps = default_caps());

// Encoding of the canonical full-depth walk of f_rho: start vertex, phase
// boundary indicator, tree-traversal bits, in-cube walk bits, and sensitive
// neighbor indices (1-based ranks among a vertex's sensitive neighbors in
// coordinate order).
struct WalkEncoding {
    int n = 0;
    int k = 0;
    std::uint32_t v0 = 0;
    std::vector<int> phase_ends;              // ascending, subset of [1..k], last = k
    std::vector<std::uint8_t> tour_bits;      // 2k bits; 1 = descend, 0 = back up
    std::vector<std::uint8_t> cube_bits;      // k bits over each phase's sorted labels
    std::vector<int> neighbor_indices;        // k entries in [1 .. s(f)]

    friend bool operator==(const WalkEncoding&, const WalkEncoding&) = default;
};

struct DecodeError : std::runtime_error {
    explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

// Requires dt(f_rho) = live count of rho. The encoding determines rho
// uniquely; decode_walk inverts it.
WalkEncoding encode_walk(const BooleanFunction& f, const Restriction& rho,
                         const Caps& caps = default_caps());
Restriction decode_walk(const BooleanFunction& f, const WalkEncoding& enc, int k,
                        const Caps& caps = default_caps());

// Exhaustive bijection audit at one k: encodes every restriction with full
// restricted depth, round-trips it, and checks pairwise distinctness plus the
// counting bound Pr[dt(f_rho) = k] <= (32 s)^k / C(n,k).
struct EncodingScan {
    int n = 0;
    int k = 0;
    std::uint64_t qualifying = 0;
    std::uint64_t roundtrip_failures = 0;
    std::uint64_t duplicate_encodings = 0;
    Rational observed;  // Pr[dt(f_rho) = k]
    Rational bound;     // (32 s)^k / C(n,k)
    bool pass = false;
};

EncodingScan encoding_bijection_scan(const BooleanFunction& f, int k,
                                     const Caps& caps = default_caps());

}  // namespace cubesense
