#include "cubesense/learn.hpp"

#include <bit>
#include <stdexcept>

#include "cubesense/rng.hpp"

namespace cubesense {

LabeledSample draw_samples(const BooleanFunction& f, std::uint64_t m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("sample count must be >= 1");
    LabeledSample s;
    s.n = f.arity();
    s.seed = seed;
    s.points.reserve(m);
    s.labels.reserve(m);
    Rng rng(seed);
    for (std::uint64_t i = 0; i < m; ++i) {
        const auto x = static_cast<std::uint32_t>(rng.below(f.table_size()));
        s.points.push_back(x);
        s.labels.push_back(f.value(x));
    }
    return s;
}

int Hypothesis::evaluate(std::uint32_t x) const {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        const int sign = std::popcount(subsets[i] & x) & 1 ? -1 : 1;
        acc += sign * numerators[i];
    }
    return acc < 0 ? -1 : +1;
}

Hypothesis lmn_learn(const LabeledSample& sample, int n, int d) {
    if (d < 0 || d > n) throw std::invalid_argument("degree bound must lie in [0, n]");
    if (sample.points.size() != sample.labels.size() || sample.points.empty())
        throw std::invalid_argument("sample is empty or inconsistent");
    Hypothesis h;
    h.n = n;
    h.degree = d;
    h.samples = sample.points.size();
    for (std::uint32_t set = 0; set < (std::uint32_t{1} << n); ++set)
        if (std::popcount(set) <= d) h.subsets.push_back(set);
    h.numerators.assign(h.subsets.size(), 0);
    for (std::size_t i = 0; i < sample.points.size(); ++i) {
        const std::uint32_t x = sample.points[i];
        const std::int64_t label = sample.labels[i];
        for (std::size_t c = 0; c < h.subsets.size(); ++c) {
            const int sign = std::popcount(h.subsets[c] & x) & 1 ? -1 : 1;
            h.numerators[c] += sign * label;
        }
    }
    return h;
}

Rational hypothesis_error(const Hypothesis& h, const BooleanFunction& f) {
    if (h.n != f.arity()) throw std::invalid_argument("hypothesis arity mismatch");
    std::uint64_t wrong = 0;
    for (std::uint64_t x = 0; x < f.table_size(); ++x)
        wrong += h.evaluate(static_cast<std::uint32_t>(x)) != f.value(x);
    return Rational{BigInt{wrong}, pow2(f.arity())};
}

}  // namespace cubesense
