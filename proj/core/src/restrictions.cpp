#include "cubesense/restrictions.hpp"

#include <cmath>
#include <stdexcept>

#include "cubesense/dtree.hpp"
#include "cubesense/fourier.hpp"
#include "cubesense/sensitivity.hpp"
#include "cubesense/subcube_measures.hpp"
#include "cubesense/treewalk.hpp"

namespace cubesense {

namespace {

// Bits of value distributed to the set positions of mask, lowest first.
// Monotone in value, so ascending assignments enumerate ascending points.
std::uint32_t deposit_bits(std::uint32_t value, std::uint32_t mask) {
    std::uint32_t out = 0;
    int j = 0;
    for (std::uint32_t m = mask; m; m &= m - 1, ++j)
        if ((value >> j) & 1) out |= m & -m;
    return out;
}

void validate_restriction(const BooleanFunction& f, const Restriction& rho) {
    if (rho.n != f.arity()) throw std::invalid_argument("restriction arity mismatch");
    const std::uint32_t full =
        rho.n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << rho.n) - 1;
    if ((rho.live & ~full) || (rho.fixed & ~full) || (rho.fixed & rho.live))
        throw std::invalid_argument("restriction bits out of range");
}

struct EventCounter {
    const BooleanFunction& f;
    RestrictionEvent event;
    int j;
    const Caps& caps;

    bool holds(const Restriction& rho) const {
        const int k = rho.live_count();
        if (k <= kMeasureTableMaxArity && k >= 1) {
            const std::uint32_t table = restricted_table_bits(f, rho);
            const MeasureTables& mt = measure_tables(k);
            switch (event) {
                case RestrictionEvent::kSensitivityAtLeast: return mt.max_sens[table] >= j;
                case RestrictionEvent::kDegreeAtLeast: return mt.deg[table] >= j;
                case RestrictionEvent::kDegreeEquals: return mt.deg[table] == j;
                case RestrictionEvent::kDepthAtLeast: return mt.dt[table] >= j;
                case RestrictionEvent::kDepthEquals: return mt.dt[table] == j;
                case RestrictionEvent::kTreeSensAtLeast: return mt.ts[table] >= j;
            }
        }
        if (k == 0) {
            switch (event) {
                case RestrictionEvent::kSensitivityAtLeast:
                case RestrictionEvent::kDegreeAtLeast:
                case RestrictionEvent::kDepthAtLeast:
                case RestrictionEvent::kTreeSensAtLeast: return j <= 0;
                case RestrictionEvent::kDegreeEquals:
                case RestrictionEvent::kDepthEquals: return j == 0;
            }
        }
        const BooleanFunction g = apply_restriction(f, rho);
        switch (event) {
            case RestrictionEvent::kSensitivityAtLeast: return max_sensitivity(g) >= j;
            case RestrictionEvent::kDegreeAtLeast: return degree(g, caps) >= j;
            case RestrictionEvent::kDegreeEquals: return degree(g, caps) == j;
            case RestrictionEvent::kDepthAtLeast: return decision_tree_depth(g, caps) >= j;
            case RestrictionEvent::kDepthEquals: return decision_tree_depth(g, caps) == j;
            case RestrictionEvent::kTreeSensAtLeast: return tree_sensitivity(g, caps) >= j;
        }
        return false;
    }
};

}  // namespace

std::uint32_t Restriction::subcube_point(std::uint32_t local) const {
    return fixed | deposit_bits(local, live);
}

std::uint64_t restriction_count(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
    return static_cast<std::uint64_t>(binomial(n, k)) << (n - k);
}

void for_each_restriction(int n, int k, const std::function<void(const Restriction&)>& fn,
                          const Caps& caps) {
    const std::uint64_t total = restriction_count(n, k);
    require_cap(total <= caps.restriction_enum,
                "restriction count <= " + std::to_string(caps.restriction_enum),
                "|R| = " + std::to_string(total));
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::uint32_t live = k == 0 ? 0 : (std::uint32_t{1} << k) - 1;
    for (;;) {
        const std::uint32_t rest = full & ~live;
        const std::uint32_t assignments = std::uint32_t{1} << (n - k);
        for (std::uint32_t a = 0; a < assignments; ++a)
            fn(Restriction{n, live, deposit_bits(a, rest)});
        if (k == 0) break;
        // Gosper's hack: next mask with k bits.
        const std::uint32_t c = live & -live;
        const std::uint32_t r = live + c;
        live = (((r ^ live) >> 2) / c) | r;
        if (live > full) break;
    }
}

Restriction sample_restriction(int n, int k, Rng& rng) {
    if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
    // Partial Fisher-Yates for the live set, then per-coordinate fixed bits.
    std::vector<int> coords(n);
    for (int i = 0; i < n; ++i) coords[i] = i;
    std::uint32_t live = 0;
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(rng.below(n - i));
        std::swap(coords[i], coords[j]);
        live |= std::uint32_t{1} << coords[i];
    }
    std::uint32_t fixed = 0;
    for (std::uint32_t m = ((std::uint32_t{1} << n) - 1) & ~live; m; m &= m - 1)
        if (rng.below(2)) fixed |= m & -m;
    return Restriction{n, live, fixed};
}

BooleanFunction apply_restriction(const BooleanFunction& f, const Restriction& rho) {
    validate_restriction(f, rho);
    const int k = rho.live_count();
    if (k == 0) throw std::invalid_argument("restriction leaves no live variable");
    std::vector<std::uint8_t> bits(std::uint64_t{1} << k);
    for (std::uint32_t y = 0; y < bits.size(); ++y) bits[y] = f.bit(rho.subcube_point(y));
    return BooleanFunction::from_bits(k, bits);
}

std::uint32_t restricted_table_bits(const BooleanFunction& f, const Restriction& rho) {
    validate_restriction(f, rho);
    const int k = rho.live_count();
    if (k > 5) throw std::invalid_argument("restricted table bits need k <= 5");
    std::uint32_t table = 0;
    for (std::uint32_t y = 0; y < (std::uint32_t{1} << k); ++y)
        table |= static_cast<std::uint32_t>(f.bit(rho.subcube_point(y))) << y;
    return table;
}

std::string event_name(RestrictionEvent e) {
    switch (e) {
        case RestrictionEvent::kSensitivityAtLeast: return "sensitivity>=j";
        case RestrictionEvent::kDegreeAtLeast: return "degree>=j";
        case RestrictionEvent::kDegreeEquals: return "degree=j";
        case RestrictionEvent::kDepthAtLeast: return "dtdepth>=j";
        case RestrictionEvent::kDepthEquals: return "dtdepth=j";
        case RestrictionEvent::kTreeSensAtLeast: return "treesens>=j";
    }
    return "?";
}

RestrictionStats restriction_stats(const BooleanFunction& f, int k, int j, RestrictionEvent event,
                                   const std::optional<SampleMode>& mode, const Caps& caps) {
    if (k < 0 || k > f.arity()) throw std::invalid_argument("need 0 <= k <= n");
    RestrictionStats st;
    st.event = event;
    st.n = f.arity();
    st.k = k;
    st.j = j;
    const EventCounter counter{f, event, j, caps};
    if (!mode) {
        std::uint64_t hits = 0;
        for_each_restriction(
            f.arity(), k, [&](const Restriction& rho) { hits += counter.holds(rho); }, caps);
        st.probability = Rational{BigInt{hits}, BigInt{restriction_count(f.arity(), k)}};
        return st;
    }
    if (mode->count == 0) throw std::invalid_argument("sample count must be >= 1");
    Rng rng(mode->seed);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < mode->count; ++i)
        hits += counter.holds(sample_restriction(f.arity(), k, rng));
    st.exhaustive = false;
    st.samples = mode->count;
    st.probability = Rational{BigInt{hits}, BigInt{mode->count}};
    const double p = static_cast<double>(hits) / static_cast<double>(mode->count);
    st.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(mode->count));
    return st;
}

std::string theorem_name(BoundTheorem t) {
    switch (t) {
        case BoundTheorem::kSensitivityMoment: return "sk";
        case BoundTheorem::kInfluenceMoment: return "ik";
        case BoundTheorem::kTreeSensitivity: return "ts";
        case BoundTheorem::kSwitching: return "switching";
        case BoundTheorem::kDepthUnconditional: return "sf";
        case BoundTheorem::kDepthConditional: return "sf-conj1";
        case BoundTheorem::kMomentConditional: return "sf-conj2";
    }
    return "?";
}

std::optional<BoundTheorem> theorem_from_name(std::string_view name) {
    if (name == "sk") return BoundTheorem::kSensitivityMoment;
    if (name == "ik") return BoundTheorem::kInfluenceMoment;
    if (name == "ts") return BoundTheorem::kTreeSensitivity;
    if (name == "switching") return BoundTheorem::kSwitching;
    if (name == "sf") return BoundTheorem::kDepthUnconditional;
    if (name == "sf-conj1") return BoundTheorem::kDepthConditional;
    if (name == "sf-conj2") return BoundTheorem::kMomentConditional;
    return std::nullopt;
}

BoundCheck bound_check(const BooleanFunction& f, int k, int j, BoundTheorem theorem,
                       const Caps& caps) {
    const int n = f.arity();
    if (j < 1 || j > k || k > n) throw std::invalid_argument("need 1 <= j <= k <= n");

    BoundCheck out;
    out.theorem = theorem;
    out.n = n;
    out.k = k;
    out.j = j;
    out.conditional = theorem == BoundTheorem::kDepthUnconditional ||
                      theorem == BoundTheorem::kDepthConditional ||
                      theorem == BoundTheorem::kMomentConditional;

    // Exact sensitivity sums over the cube.
    BigInt sff_j = 0, s_pow_j = 0, s_pow_k = 0;
    int smax = 0;
    for (std::uint64_t x = 0; x < f.table_size(); ++x) {
        const int s = point_sensitivity(f, Point{static_cast<std::uint32_t>(x)});
        smax = std::max(smax, s);
        sff_j += falling_factorial(s, j);
        s_pow_j += ipow(s, j);
        s_pow_k += ipow(s, k);
    }
    const BigInt n_points = pow2(n);

    switch (theorem) {
        case BoundTheorem::kSensitivityMoment: {
            out.lower = Rational{sff_j, n_points * falling_factorial(n, j)};
            out.upper = out.lower * Rational{pow2(k) * binomial(k, j)};
            out.observed =
                restriction_stats(f, k, j, RestrictionEvent::kSensitivityAtLeast, {}, caps)
                    .probability;
            break;
        }
        case BoundTheorem::kInfluenceMoment: {
            const Rational iffk = influence_moment(spectrum(f, caps), k, true);
            out.lower = iffk / Rational{falling_factorial(n, k)};
            out.upper = out.lower * Rational{pow2(2 * k - 2)};
            out.observed =
                restriction_stats(f, k, k, RestrictionEvent::kDegreeEquals, {}, caps).probability;
            break;
        }
        case BoundTheorem::kTreeSensitivity: {
            out.lower = Rational{sff_j, n_points * falling_factorial(n, j)};
            out.upper = Rational{binomial(k, j) * pow2(k + 2 * j) * s_pow_j,
                                 n_points * binomial(n, j)};
            out.observed =
                restriction_stats(f, k, j, RestrictionEvent::kTreeSensAtLeast, {}, caps)
                    .probability;
            break;
        }
        case BoundTheorem::kSwitching: {
            out.lower = 0;
            out.upper = Rational{ipow(BigInt{32} * smax, k), binomial(n, k)};
            out.observed =
                restriction_stats(f, k, k, RestrictionEvent::kDepthEquals, {}, caps).probability;
            break;
        }
        case BoundTheorem::kDepthUnconditional: {
            // dt >= j forces tree sensitivity >= q where q(q+1)/2 >= j.
            int q = 1;
            while (q * (q + 1) / 2 < j) ++q;
            BigInt s_pow_q = 0;
            for (std::uint64_t x = 0; x < f.table_size(); ++x)
                s_pow_q += ipow(point_sensitivity(f, Point{static_cast<std::uint32_t>(x)}), q);
            out.lower = Rational{sff_j, n_points * falling_factorial(n, j)};
            out.upper =
                Rational{binomial(k, q) * pow2(k + 2 * q) * s_pow_q, n_points * binomial(n, q)};
            out.observed =
                restriction_stats(f, k, j, RestrictionEvent::kDepthAtLeast, {}, caps).probability;
            break;
        }
        case BoundTheorem::kDepthConditional: {
            out.lower = Rational{sff_j, n_points * falling_factorial(n, j)};
            out.upper = Rational{binomial(k, j) * pow2(k + 2 * j) * s_pow_j,
                                 n_points * binomial(n, j)};
            out.observed =
                restriction_stats(f, k, j, RestrictionEvent::kDepthAtLeast, {}, caps).probability;
            break;
        }
        case BoundTheorem::kMomentConditional: {
            out.lower = 0;
            out.observed = influence_moment(spectrum(f, caps), k, true);
            out.upper = Rational{ipow(BigInt{8}, k) * factorial(k) * s_pow_k, n_points};
            break;
        }
    }
    out.pass = out.lower <= out.observed && out.observed <= out.upper;
    return out;
}

std::string bound_check_csv_row(const BoundCheck& b) {
    return std::to_string(b.n) + "," + std::to_string(b.k) + "," + std::to_string(b.j) + "," +
           theorem_name(b.theorem) + "," + rat_string(b.lower) + "," + rat_string(b.observed) +
           "," + rat_string(b.upper) + "," +
           (b.conditional ? "conditional" : (b.pass ? "true" : "false"));
}

}  // namespace cubesense
