#include "cubesense/sensitivity.hpp"

#include <numeric>
#include <stdexcept>

namespace cubesense {

int point_sensitivity(const BooleanFunction& f, Point x) {
    if (x.index >= f.table_size()) throw std::out_of_range("point index past 2^n");
    const bool b = f.bit(x.index);
    int s = 0;
    for (int i = 0; i < f.arity(); ++i)
        s += b != f.bit(x.index ^ (std::uint64_t{1} << i));
    return s;
}

int max_sensitivity(const BooleanFunction& f) {
    int best = 0;
    for (std::uint64_t x = 0; x < f.table_size(); ++x)
        best = std::max(best, point_sensitivity(f, Point{static_cast<std::uint32_t>(x)}));
    return best;
}

SensitivityStats sensitivity_stats(const BooleanFunction& f, int k) {
    if (k < 1) throw std::invalid_argument("moment order must be >= 1");
    SensitivityStats st;
    st.k = k;
    BigInt sum_pow = 0, sum_ff = 0;
    for (std::uint64_t x = 0; x < f.table_size(); ++x) {
        const int s = point_sensitivity(f, Point{static_cast<std::uint32_t>(x)});
        st.s = std::max(st.s, s);
        if (f.bit(x)) st.s1 = std::max(st.s1, s);
        else st.s0 = std::max(st.s0, s);
        sum_pow += ipow(s, k);
        sum_ff += falling_factorial(s, k);
    }
    const BigInt denom = pow2(f.arity());
    st.sk = Rational{sum_pow, denom};
    st.sffk = Rational{sum_ff, denom};
    return st;
}

SensitivityGraph sensitivity_graph(const BooleanFunction& f) {
    SensitivityGraph g;
    g.n = f.arity();
    const std::uint64_t size = f.table_size();
    for (std::uint64_t x = 0; x < size; ++x) {
        const bool b = f.bit(x);
        for (int i = 0; i < g.n; ++i) {
            const std::uint64_t y = x | (std::uint64_t{1} << i);
            if (y != x && b != f.bit(y))
                g.edges.emplace_back(static_cast<std::uint32_t>(x), i + 1);
        }
    }

    // Union-find over the endpoints of sensitive edges.
    std::vector<std::uint32_t> parent(size);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& [x, coord] : g.edges) {
        std::uint32_t a = find(x), b = find(x ^ coord_bit(coord));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    g.component.assign(size, -1);
    for (const auto& [x, coord] : g.edges) {
        for (std::uint32_t v : {x, x ^ coord_bit(coord)}) {
            std::uint32_t root = find(v);
            if (g.component[root] < 0) {
                g.component[root] = static_cast<std::int32_t>(g.direction_masks.size());
                g.direction_masks.push_back(0);
            }
            g.component[v] = g.component[root];
        }
        g.direction_masks[g.component[x]] |= coord_bit(coord);
    }
    return g;
}

int component_dimension(const BooleanFunction& f) {
    const SensitivityGraph g = sensitivity_graph(f);
    int best = 0;
    for (std::uint32_t mask : g.direction_masks) best = std::max(best, std::popcount(mask));
    return best;
}

}  // namespace cubesense
