#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubesense {

// Size limits for the exhaustive algorithms. Every limit is configuration:
// callers may pass a modified copy to work above (or below) the defaults.
struct Caps {
    int table = 24;           // max arity for a materialized truth table / spectrum
    int dtree = 16;           // minimax decision-tree solver
    int tree_search = 16;     // sensitive-tree DFS (ts, counting, classification)
    int walk_3n = 12;         // recursive 3n proper-walk construction
    int min_walk = 12;        // BFS over (vertex, flipped-set) states
    int full_dim_walk = 16;   // inductive full-dimension walk
    int orchard_shift = 20;   // max count of free coordinates checked exhaustively
    std::uint64_t restriction_enum = std::uint64_t{1} << 26;  // max |R_{k,n}| enumerated
};

inline const Caps& default_caps() {
    static const Caps caps{};
    return caps;
}

// Thrown when an input exceeds a cap; the message names the violated cap.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

inline void require_cap(bool ok, const std::string& cap_name, const std::string& detail) {
    if (!ok) throw CapacityError("capacity exceeded (" + cap_name + "): " + detail);
}

}  // namespace cubesense
