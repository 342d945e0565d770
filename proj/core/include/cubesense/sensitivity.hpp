#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cubesense/boolean_function.hpp"
#include "cubesense/rational.hpp"

namespace cubesense {

// s(f,x): number of Hamming neighbors with the opposite value.
int point_sensitivity(const BooleanFunction& f, Point x);

int max_sensitivity(const BooleanFunction& f);

// s0/s1 are maxima over the inputs with table bit 0 (value +1) and bit 1
// (value -1) respectively; sk and sffk are the exact order-k moments.
struct SensitivityStats {
    int k = 1;
    int s = 0;
    int s0 = 0;
    int s1 = 0;
    Rational sk;
    Rational sffk;
};

SensitivityStats sensitivity_stats(const BooleanFunction& f, int k);

// The subgraph of the hypercube induced by the edges where f changes value.
// Every sensitive edge appears once as (x, coord) with x < x ^ e_coord.
// component[x] is -1 for isolated vertices, else a label in [0, comp count);
// direction_masks[c] collects the edge directions present in component c.
struct SensitivityGraph {
    int n = 0;
    std::vector<std::pair<std::uint32_t, int>> edges;
    std::vector<std::int32_t> component;
    std::vector<std::uint32_t> direction_masks;

    int component_count() const { return static_cast<int>(direction_masks.size()); }
};

SensitivityGraph sensitivity_graph(const BooleanFunction& f);

// cdim(f): max over components of the number of distinct edge directions;
// 0 for constant functions (all components are isolated vertices).
int component_dimension(const BooleanFunction& f);

}  // namespace cubesense
