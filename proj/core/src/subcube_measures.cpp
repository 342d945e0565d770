#include "cubesense/subcube_measures.hpp"

#include <array>
#include <bit>
#include <mutex>
#include <stdexcept>

#include "cubesense/boolean_function.hpp"
#include "cubesense/sensitivity.hpp"
#include "cubesense/treewalk.hpp"

namespace cubesense {

namespace {

inline int tbl_bit(std::uint32_t table, int x) { return (table >> x) & 1; }

// Table of f|_{x_var=b} (0-based var) for an m-variable packed table.
std::uint32_t restrict_small(std::uint32_t table, int m, int var, int b) {
    std::uint32_t out = 0;
    const int half = 1 << (m - 1);
    const int lo = (1 << var) - 1;
    for (int y = 0; y < half; ++y) {
        const int x = (y & lo) | ((y & ~lo) << 1) | (b << var);
        out |= static_cast<std::uint32_t>(tbl_bit(table, x)) << y;
    }
    return out;
}

int small_point_sens(std::uint32_t table, int m, int x) {
    int s = 0;
    for (int i = 0; i < m; ++i) s += tbl_bit(table, x) != tbl_bit(table, x ^ (1 << i));
    return s;
}

BooleanFunction small_function(std::uint32_t table, int m) {
    std::vector<std::uint8_t> bits(std::size_t{1} << m);
    for (std::size_t x = 0; x < bits.size(); ++x) bits[x] = tbl_bit(table, static_cast<int>(x));
    return BooleanFunction::from_bits(m, bits);
}

MeasureTables build(int m) {
    MeasureTables t;
    t.m = m;
    const std::uint64_t count = std::uint64_t{1} << (1 << m);
    const int points = 1 << m;
    t.max_sens.resize(count);
    t.deg.resize(count);
    t.dt.resize(count);
    t.ts.resize(count);
    t.cdim.resize(count);

    const MeasureTables* smaller = m > 1 ? &measure_tables(m - 1) : nullptr;

    std::vector<int> wht(points);
    for (std::uint64_t tab = 0; tab < count; ++tab) {
        const auto table = static_cast<std::uint32_t>(tab);

        int smax = 0;
        for (int x = 0; x < points; ++x) smax = std::max(smax, small_point_sens(table, m, x));
        t.max_sens[tab] = static_cast<std::uint8_t>(smax);

        for (int x = 0; x < points; ++x) wht[x] = tbl_bit(table, x) ? -1 : 1;
        for (int len = 1; len < points; len <<= 1)
            for (int i = 0; i < points; i += len << 1)
                for (int j = i; j < i + len; ++j) {
                    const int u = wht[j], v = wht[j + len];
                    wht[j] = u + v;
                    wht[j + len] = u - v;
                }
        int deg = 0;
        for (int s = 0; s < points; ++s)
            if (wht[s] != 0) deg = std::max(deg, std::popcount(static_cast<unsigned>(s)));
        t.deg[tab] = static_cast<std::uint8_t>(deg);

        if (smax == 0) {
            t.dt[tab] = 0;
        } else if (m == 1) {
            t.dt[tab] = 1;
        } else {
            int best = m;
            for (int var = 0; var < m && best > 1; ++var) {
                const int d0 = smaller->dt[restrict_small(table, m, var, 0)];
                const int d1 = smaller->dt[restrict_small(table, m, var, 1)];
                best = std::min(best, 1 + std::max(d0, d1));
            }
            t.dt[tab] = static_cast<std::uint8_t>(best);
        }
    }

    // Tree sensitivity and component dimension go through the generic code;
    // at m <= 4 the per-table graphs are tiny.
    for (std::uint64_t tab = 0; tab < count; ++tab) {
        if (t.max_sens[tab] == 0) {
            t.ts[tab] = 0;
            t.cdim[tab] = 0;
            continue;
        }
        const BooleanFunction f = small_function(static_cast<std::uint32_t>(tab), m);
        t.ts[tab] = static_cast<std::uint8_t>(tree_sensitivity(f));
        t.cdim[tab] = static_cast<std::uint8_t>(component_dimension(f));
    }
    return t;
}

}  // namespace

const MeasureTables& measure_tables(int m) {
    if (m < 1 || m > kMeasureTableMaxArity)
        throw std::invalid_argument("measure tables cover arities 1.." +
                                    std::to_string(kMeasureTableMaxArity));
    static std::array<MeasureTables, kMeasureTableMaxArity + 1> tables;
    static std::array<std::once_flag, kMeasureTableMaxArity + 1> flags;
    std::call_once(flags[m], [m] { tables[m] = build(m); });
    return tables[m];
}

}  // namespace cubesense
