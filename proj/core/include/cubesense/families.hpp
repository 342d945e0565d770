#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubesense/boolean_function.hpp"

namespace cubesense {

// Parsed "name:p1,p2[,seed]" family selector. Parameter ranges are validated
// per family by make_family.
struct FamilySpec {
    std::string name;
    std::vector<std::int64_t> params;
};

FamilySpec parse_family(const std::string& text);
BooleanFunction make_family(const FamilySpec& spec, const Caps& caps = default_caps());

// Table bit 1 encodes value -1 throughout (the global 0 -> +1 convention).
BooleanFunction parity_fn(int n, const Caps& caps = default_caps());
BooleanFunction and_fn(int n, const Caps& caps = default_caps());
BooleanFunction or_fn(int n, const Caps& caps = default_caps());
BooleanFunction dictator_fn(int n, int coord, const Caps& caps = default_caps());

// Complete binary tree with n = 2^h - 1 internal nodes labeled x_1..x_n in
// search order; the n+1 leaves alternate +1/-1 from the left.
BooleanFunction address_tree_fn(int n, const Caps& caps = default_caps());

// Indicator of the distance-3 code on m = 2^r - 1 bits whose check matrix
// columns are the binary encodings of 1..m; codewords map to -1.
BooleanFunction hamming_fn(int m, const Caps& caps = default_caps());

// OR of m code indicators, each fed by m blocks of l-bit parities; arity is
// m*m*l with variable (i,j,t) at index ((i-1)m + (j-1))l + t.
BooleanFunction or_ham_parity_fn(int m, int l, const Caps& caps = default_caps());

// First half selects one of n/2 Walsh codewords; on a match the output is the
// selected second-half bit, otherwise +1. n must be a power of two.
BooleanFunction hadamard_gadget_fn(int n, const Caps& caps = default_caps());

// k x w grid, -1 iff some row has odd parity; computable by a width-w DNF.
BooleanFunction dnf_parity_rows_fn(int rows, int width, const Caps& caps = default_caps());

BooleanFunction random_fn(int n, std::uint64_t seed, const Caps& caps = default_caps());

// DNF with `terms` random width-`width` terms over n variables.
BooleanFunction random_width_dnf_fn(int n, int width, int terms, std::uint64_t seed,
                                    const Caps& caps = default_caps());

}  // namespace cubesense
