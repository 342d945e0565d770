#pragma once

#include <cstdint>
#include <vector>

#include "cubesense/boolean_function.hpp"
#include "cubesense/rational.hpp"

namespace cubesense {

// Uniform labeled examples, reproducible from the recorded seed.
struct LabeledSample {
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> points;
    std::vector<int> labels;  // +-1, labels[i] = f(points[i])
};

LabeledSample draw_samples(const BooleanFunction& f, std::uint64_t m, std::uint64_t seed);

// Sign of the degree-d empirical Fourier truncation. Coefficient estimates
// are exact dyadic means: numerator over the sample count, so evaluation and
// the learned hypothesis are bit-reproducible.
struct Hypothesis {
    int n = 0;
    int degree = 0;
    std::uint64_t samples = 0;
    std::vector<std::uint32_t> subsets;       // all |S| <= degree, ascending
    std::vector<std::int64_t> numerators;     // sum of f(x) chi_S(x) over the sample

    // Sign of the truncated polynomial; exact zero breaks to +1.
    int evaluate(std::uint32_t x) const;
};

// Estimates every coefficient of degree at most d from the sample.
Hypothesis lmn_learn(const LabeledSample& sample, int n, int d);

// Exact disagreement fraction over all 2^n points.
Rational hypothesis_error(const Hypothesis& h, const BooleanFunction& f);

}  // namespace cubesense
