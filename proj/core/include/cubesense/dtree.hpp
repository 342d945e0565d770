#pragma once

#include <cstdint>
#include <vector>

#include "cubesense/boolean_function.hpp"

namespace cubesense {

// Exact deterministic decision-tree depth: 0 for constants, otherwise
// 1 + min_i max_b dt(f|_{x_i=b}). Memoized on the canonical restricted truth
// table, so different restriction paths reaching the same subfunction share
// work. The memo is confined to one call; concurrent calls are independent.
int decision_tree_depth(const BooleanFunction& f, const Caps& caps = default_caps());

// Witness tree of depth exactly dt(f). Ties between first queries are broken
// toward the lowest coordinate index.
struct DecisionTree {
    struct Node {
        int query = 0;  // 1-based coordinate; 0 marks a leaf
        int value = 0;  // leaf value, +1 or -1
        int lo = -1;    // child for bit 0
        int hi = -1;    // child for bit 1
    };
    std::vector<Node> nodes;
    int root = -1;
    int depth = 0;

    int evaluate(std::uint32_t x) const;
};

DecisionTree optimal_tree(const BooleanFunction& f, const Caps& caps = default_caps());

}  // namespace cubesense
