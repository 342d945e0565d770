#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "cubesense/boolean_function.hpp"
#include "cubesense/rational.hpp"
#include "cubesense/rng.hpp"

namespace cubesense {

// A point of R_{k,n}: k live coordinates, the rest fixed to bits. fixed has
// zeros on the live positions.
struct Restriction {
    int n = 0;
    std::uint32_t live = 0;
    std::uint32_t fixed = 0;

    int live_count() const { return std::popcount(live); }

    // Embeds a point of the k-dimensional subcube: bit j of local lands on the
    // j-th live coordinate in increasing order.
    std::uint32_t subcube_point(std::uint32_t local) const;

    friend bool operator==(const Restriction&, const Restriction&) = default;
};

// |R_{k,n}| = C(n,k) * 2^(n-k).
std::uint64_t restriction_count(int n, int k);

// Exhaustive enumeration in a fixed order: live sets ascending as masks,
// fixed assignments ascending within each set. Capacity-checked.
void for_each_restriction(int n, int k, const std::function<void(const Restriction&)>& fn,
                          const Caps& caps = default_caps());

// Uniform draw; identical seeds give identical streams.
Restriction sample_restriction(int n, int k, Rng& rng);

// f restricted to the subcube of rho, live coordinates relabeled in
// increasing order (canonical for memoized depth computations).
BooleanFunction apply_restriction(const BooleanFunction& f, const Restriction& rho);

// Table bits of the restricted function as an integer; k <= 5 only.
std::uint32_t restricted_table_bits(const BooleanFunction& f, const Restriction& rho);

enum class RestrictionEvent {
    kSensitivityAtLeast,
    kDegreeAtLeast,
    kDegreeEquals,
    kDepthAtLeast,
    kDepthEquals,
    kTreeSensAtLeast,
};

std::string event_name(RestrictionEvent e);

struct SampleMode {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};

struct RestrictionStats {
    RestrictionEvent event;
    int n = 0;
    int k = 0;
    int j = 0;
    Rational probability;  // exact when exhaustive, empirical otherwise
    bool exhaustive = true;
    std::uint64_t samples = 0;   // 0 in exhaustive mode
    double std_error = 0.0;      // 0 in exhaustive mode
};

// Probability over rho <- R_{k,n} of the event at threshold j; exhaustive
// unless a sample mode is given.
RestrictionStats restriction_stats(const BooleanFunction& f, int k, int j, RestrictionEvent event,
                                   const std::optional<SampleMode>& mode = std::nullopt,
                                   const Caps& caps = default_caps());

// The restriction-probability sandwiches. The first four are proven and
// asserted; the "depth" family is derived/conditional and report-only.
enum class BoundTheorem {
    kSensitivityMoment,   // sk: sff_j/ff(n,j) <= Pr[s >= j] <= 2^k C(k,j) sff_j/ff(n,j)
    kInfluenceMoment,     // ik: iff_k/ff(n,k) <= Pr[deg = k] <= 2^(2k-2) iff_k/ff(n,k)
    kTreeSensitivity,     // ts: sff_j/ff(n,j) <= Pr[ts >= j] <= C(k,j) 2^(k+2j) s^j/C(n,j)
    kSwitching,           // Pr[dt = k] <= (32 s)^k / C(n,k)
    kDepthUnconditional,  // Pr[dt >= j] upper via the square-root depth bound (report)
    kDepthConditional,    // Pr[dt >= j] upper assuming full tree sensitivity (report)
    kMomentConditional,   // iff_k <= 8^k k! s^k (report)
};

std::string theorem_name(BoundTheorem t);
std::optional<BoundTheorem> theorem_from_name(std::string_view name);

struct BoundCheck {
    BoundTheorem theorem;
    int n = 0;
    int k = 0;
    int j = 0;
    Rational lower;
    Rational observed;
    Rational upper;
    bool conditional = false;  // report-only row, never asserted
    bool pass = false;         // lower <= observed <= upper
};

BoundCheck bound_check(const BooleanFunction& f, int k, int j, BoundTheorem theorem,
                       const Caps& caps = default_caps());

// CSV row "n,k,j,measure,lower,observed,upper,pass" per the bounds interface.
std::string bound_check_csv_row(const BoundCheck& b);
inline const char* bound_check_csv_header() { return "n,k,j,measure,lower,observed,upper,pass"; }

}  // namespace cubesense
