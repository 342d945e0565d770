#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubesense/boolean_function.hpp"
#include "cubesense/rational.hpp"

namespace cubesense {

// Checks runnable over the whole space of n-variable functions. Asserted
// checks correspond to proven statements and may fail the suite; report
// checks summarize open questions and never fail.
enum ScanCheck : std::uint32_t {
    kCheckMomentIdentities = 1u << 0,   // order 1 and 2 moments coincide (asserted)
    kCheckDegreeFullTree = 1u << 1,     // deg = n forces ts = n (asserted)
    kCheckTreeVsDepth = 1u << 2,        // ts(ts+1)/2 >= dt (asserted)
    kCheckMeasureChain = 1u << 3,       // cdim >= ts >= s and s <= dt <= dim (asserted)
    kCheckTreeCountBound = 1u << 4,     // |S_j| <= 4^j sum s(x)^j for j <= 4 (asserted)
    kCheckSandwichBounds = 1u << 5,     // all restriction sandwiches, 1<=j<=k<=n (asserted)
    kCheckEntropyBounds = 1u << 6,      // level entropy bounds (asserted, 1e-9 slack)
    kCheckOrder3Gap = 1u << 7,          // order-3 moments may differ (report)
    kCheckDepthVsTree = 1u << 8,        // ts - dt margin (report; open conjecture)
    kCheckMomentRatio = 1u << 9,        // max I^k/s^k for k = 3,4 (report)
};

constexpr std::uint32_t kScanChecksCore = kCheckMomentIdentities | kCheckDegreeFullTree |
                                          kCheckTreeVsDepth | kCheckMeasureChain |
                                          kCheckTreeCountBound;
constexpr std::uint32_t kScanChecksReports =
    kCheckOrder3Gap | kCheckDepthVsTree | kCheckMomentRatio;
constexpr std::uint32_t kScanChecksAll = kScanChecksCore | kCheckSandwichBounds |
                                         kCheckEntropyBounds | kScanChecksReports;

struct CheckOutcome {
    std::string name;
    bool asserted = true;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::optional<std::uint64_t> witness;  // least function index involved
    std::string detail;                    // extremal values, report-style notes
};

struct ScanOptions {
    std::uint32_t checks = kScanChecksCore;
    bool long_run = false;                      // allow the 2^32-function space at n = 5
    std::optional<std::uint64_t> sample_count;  // sampled scan instead of exhaustive
    std::uint64_t seed = 0;
    std::string checkpoint_path;                // long-run progress file
};

struct ScanReport {
    int n = 0;
    std::uint64_t functions = 0;
    bool sampled = false;
    std::vector<CheckOutcome> checks;

    bool all_asserted_pass() const;
};

ScanReport scan_all(int n, const ScanOptions& options, const Caps& caps = default_caps());

// I^k / s^k as an exact rational; 0 when the function is constant.
Rational moment_ratio(const BooleanFunction& f, int k, const Caps& caps = default_caps());

// The falling-moment bound (32 s)^k k! and the spectral tail at 64 s k.
struct TailBoundReport {
    int k = 0;
    int sensitivity = 0;
    Rational iffk;
    Rational moment_bound;
    bool moment_pass = false;
    int tail_level = 0;
    Rational tail;
    Rational tail_limit;  // 2^-k
    bool tail_pass = false;
};

TailBoundReport tail_bound_check(const BooleanFunction& f, int k,
                                 const Caps& caps = default_caps());

// Spectral entropy against influence: the proven 3*I level bound (asserted
// with float slack), the per-level entropy-vs-L1 bound, and the reported
// 2 log s margin whose additive constant is measured, not asserted.
struct EntropyReport {
    int n = 0;
    double entropy = 0.0;
    Rational influence;
    double level_entropy_sum = 0.0;  // sum_k W^k log2(1/W^k)
    bool level_sum_pass = false;     // <= 3 I + 1e-9
    bool per_level_pass = false;     // entropy-vs-L1 at every level
    double ei_margin = 0.0;          // H - 2 I log2(max(s,2))
    double ei_constant = 0.0;        // (H - 2 I log2 s) / I, the measured additive term
};

EntropyReport entropy_checks(const BooleanFunction& f, const Caps& caps = default_caps());

}  // namespace cubesense
