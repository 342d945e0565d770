#pragma once

#include <cstdint>
#include <vector>

namespace cubesense {

// Measures of every m-variable function, indexed by the packed truth table.
// Restriction scans with few live variables reduce to lookups here. Built
// lazily once per process; m is capped at 4 (65536 tables).
struct MeasureTables {
    int m = 0;
    std::vector<std::uint8_t> max_sens;
    std::vector<std::uint8_t> deg;
    std::vector<std::uint8_t> dt;
    std::vector<std::uint8_t> ts;
    std::vector<std::uint8_t> cdim;
};

inline constexpr int kMeasureTableMaxArity = 4;

const MeasureTables& measure_tables(int m);

}  // namespace cubesense
