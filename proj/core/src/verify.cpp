#include "cubesense/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cubesense/dtree.hpp"
#include "cubesense/fourier.hpp"
#include "cubesense/parallel.hpp"
#include "cubesense/rng.hpp"
#include "cubesense/sensitivity.hpp"
#include "cubesense/subcube_measures.hpp"
#include "cubesense/treewalk.hpp"

namespace cubesense {

namespace {

using i128 = __int128;

// Everything the checks need about one n-variable function, in plain ints.
struct FnMeasures {
    int n = 0;
    std::uint64_t table = 0;
    int points = 0;
    int smax = 0, deg = 0, dt = 0, ts = 0, cdim = 0, dim = 0;
    std::int64_t s_pow[6] = {0};    // sum_x s(x)^j, j = 0..5
    std::int64_t s_ff[6] = {0};     // sum_x ff(s(x), j)
    std::int64_t m_pow[6] = {0};    // sum_S c_S^2 |S|^j
    std::int64_t level_sq[6] = {0};  // sum_{|S|=j} c_S^2
    int wht[32] = {0};
    int sens[32] = {0};
};

inline int table_bit(std::uint64_t table, int x) { return (table >> x) & 1; }

FnMeasures compute_measures(int n, std::uint64_t table, bool need_hard) {
    FnMeasures m;
    m.n = n;
    m.table = table;
    m.points = 1 << n;

    std::uint32_t support = 0;
    for (int x = 0; x < m.points; ++x) {
        int s = 0;
        for (int i = 0; i < n; ++i) {
            if (table_bit(table, x) != table_bit(table, x ^ (1 << i))) {
                ++s;
                support |= 1u << i;
            }
        }
        m.sens[x] = s;
        m.smax = std::max(m.smax, s);
        std::int64_t pw = 1, ff = 1;
        for (int j = 1; j <= 5; ++j) {
            pw *= s;
            ff *= std::max(0, s - (j - 1));
            m.s_pow[j] += pw;
            m.s_ff[j] += ff;
        }
    }
    m.dim = std::popcount(support);

    for (int x = 0; x < m.points; ++x) m.wht[x] = table_bit(table, x) ? -1 : 1;
    for (int len = 1; len < m.points; len <<= 1)
        for (int i = 0; i < m.points; i += len << 1)
            for (int j = i; j < i + len; ++j) {
                const int u = m.wht[j], v = m.wht[j + len];
                m.wht[j] = u + v;
                m.wht[j + len] = u - v;
            }
    for (int s = 0; s < m.points; ++s) {
        const std::int64_t sq = std::int64_t{m.wht[s]} * m.wht[s];
        const int lev = std::popcount(static_cast<unsigned>(s));
        m.level_sq[lev] += sq;
        if (sq) m.deg = std::max(m.deg, lev);
        std::int64_t pw = sq;
        for (int j = 1; j <= 5; ++j) {
            pw *= lev;
            m.m_pow[j] += pw;
        }
    }

    if (need_hard) {
        if (n <= kMeasureTableMaxArity) {
            const MeasureTables& mt = measure_tables(n);
            m.dt = mt.dt[table];
            m.ts = mt.ts[table];
            m.cdim = mt.cdim[table];
        } else {
            std::vector<std::uint8_t> bits(m.points);
            for (int x = 0; x < m.points; ++x) bits[x] = table_bit(table, x);
            const BooleanFunction f = BooleanFunction::from_bits(n, bits);
            m.dt = decision_tree_depth(f);
            m.ts = tree_sensitivity(f);
            m.cdim = component_dimension(f);
        }
    }
    return m;
}

struct ReportExtreme {
    // numerator/denominator of the best ratio seen, lowest witness on ties
    std::int64_t num = 0;
    std::int64_t den = 1;
    std::optional<std::uint64_t> witness;

    void offer(std::int64_t n2, std::int64_t d2, std::uint64_t w) {
        if (d2 == 0) return;
        const i128 lhs = i128(n2) * den, rhs = i128(num) * d2;
        if (!witness || lhs > rhs) {
            num = n2;
            den = d2;
            witness = w;
        }
    }
    void merge(const ReportExtreme& o) {
        if (o.witness) offer(o.num, o.den, *o.witness);
    }
};

struct ScanState {
    std::uint64_t checked = 0;
    std::uint64_t v_moments = 0, v_degts = 0, v_treedt = 0, v_chain = 0, v_peres = 0,
                  v_sandwich = 0, v_entropy = 0;
    std::optional<std::uint64_t> w_moments, w_degts, w_treedt, w_chain, w_peres, w_sandwich,
        w_entropy;
    std::uint64_t order3_count = 0;
    std::optional<std::uint64_t> order3_witness;
    std::uint64_t depth_over_tree = 0;
    int min_margin = std::numeric_limits<int>::max();
    std::optional<std::uint64_t> margin_witness;
    ReportExtreme ratio3, ratio4;

    static void bump(std::uint64_t& v, std::optional<std::uint64_t>& w, std::uint64_t idx) {
        ++v;
        if (!w || idx < *w) w = idx;
    }

    void merge(const ScanState& o) {
        checked += o.checked;
        auto take = [](std::uint64_t& v, std::optional<std::uint64_t>& w, std::uint64_t ov,
                       const std::optional<std::uint64_t>& ow) {
            v += ov;
            if (ow && (!w || *ow < *w)) w = ow;
        };
        take(v_moments, w_moments, o.v_moments, o.w_moments);
        take(v_degts, w_degts, o.v_degts, o.w_degts);
        take(v_treedt, w_treedt, o.v_treedt, o.w_treedt);
        take(v_chain, w_chain, o.v_chain, o.w_chain);
        take(v_peres, w_peres, o.v_peres, o.w_peres);
        take(v_sandwich, w_sandwich, o.v_sandwich, o.w_sandwich);
        take(v_entropy, w_entropy, o.v_entropy, o.w_entropy);
        take(order3_count, order3_witness, o.order3_count, o.order3_witness);
        depth_over_tree += o.depth_over_tree;
        if (o.min_margin < min_margin) {
            min_margin = o.min_margin;
            margin_witness = o.margin_witness;
        }
        ratio3.merge(o.ratio3);
        ratio4.merge(o.ratio4);
    }
};

// Subcube embeddings for every live set, precomputed once per scan.
struct RestrictionPlan {
    struct LiveSet {
        std::uint32_t live = 0;
        std::uint32_t rest = 0;
        std::vector<int> cube_points;  // deposit(y, live) for y < 2^k
        std::vector<int> rest_points;  // deposit(a, rest) for a < 2^(n-k)
    };
    int n = 0;
    std::vector<std::vector<LiveSet>> by_k;  // index k = 1..n

    explicit RestrictionPlan(int n_) : n(n_), by_k(n_ + 1) {
        const std::uint32_t full = (1u << n) - 1;
        for (std::uint32_t live = 1; live <= full; ++live) {
            const int k = std::popcount(live);
            LiveSet ls;
            ls.live = live;
            ls.rest = full & ~live;
            ls.cube_points.resize(std::size_t{1} << k);
            for (std::uint32_t y = 0; y < ls.cube_points.size(); ++y) {
                std::uint32_t p = 0;
                int j = 0;
                for (std::uint32_t mm = live; mm; mm &= mm - 1, ++j)
                    if ((y >> j) & 1) p |= mm & -mm;
                ls.cube_points[y] = static_cast<int>(p);
            }
            ls.rest_points.resize(std::size_t{1} << (n - k));
            for (std::uint32_t a = 0; a < ls.rest_points.size(); ++a) {
                std::uint32_t p = 0;
                int j = 0;
                for (std::uint32_t mm = ls.rest; mm; mm &= mm - 1, ++j)
                    if ((a >> j) & 1) p |= mm & -mm;
                ls.rest_points[a] = static_cast<int>(p);
            }
            by_k[k].push_back(std::move(ls));
        }
    }
};

std::int64_t ff_int(int x, int k) {
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) r *= std::max(0, x - i);
    return r;
}

std::int64_t binom_int(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_function(const FnMeasures& m, std::uint32_t checks, const RestrictionPlan* plan,
                    ScanState& st) {
    const std::uint64_t idx = m.table;
    const int n = m.n;
    const std::int64_t pts = m.points;

    if (checks & kCheckMomentIdentities) {
        if (m.m_pow[1] != m.s_pow[1] * pts || m.m_pow[2] != m.s_pow[2] * pts)
            ScanState::bump(st.v_moments, st.w_moments, idx);
    }
    if (checks & kCheckOrder3Gap) {
        if (m.m_pow[3] != m.s_pow[3] * pts)
            ScanState::bump(st.order3_count, st.order3_witness, idx);
    }
    if (checks & kCheckDegreeFullTree) {
        if (m.deg == n && m.ts != n) ScanState::bump(st.v_degts, st.w_degts, idx);
    }
    if (checks & kCheckTreeVsDepth) {
        if (m.ts * (m.ts + 1) / 2 < m.dt) ScanState::bump(st.v_treedt, st.w_treedt, idx);
    }
    if (checks & kCheckMeasureChain) {
        const bool ok = m.cdim >= m.ts && m.ts >= m.smax && m.smax <= m.dt && m.deg <= m.dt &&
                        m.dt <= m.dim;
        if (!ok) ScanState::bump(st.v_chain, st.w_chain, idx);
    }
    if (checks & kCheckDepthVsTree) {
        if (m.dt > m.ts) ++st.depth_over_tree;
        if (m.ts - m.dt < st.min_margin) {
            st.min_margin = m.ts - m.dt;
            st.margin_witness = idx;
        }
    }
    if (checks & kCheckMomentRatio) {
        if (m.s_pow[3] > 0) st.ratio3.offer(m.m_pow[3], m.s_pow[3] * pts, idx);
        if (m.s_pow[4] > 0) st.ratio4.offer(m.m_pow[4], m.s_pow[4] * pts, idx);
    }
    if (checks & kCheckTreeCountBound) {
        std::vector<std::uint8_t> bits(m.points);
        for (int x = 0; x < m.points; ++x) bits[x] = table_bit(m.table, x);
        const BooleanFunction f = BooleanFunction::from_bits(n, bits);
        const int jmax = std::min(n, 4);
        const auto counts = count_sensitive_trees_up_to(f, jmax);
        bool ok = true;
        std::int64_t four_pow = 1;
        for (int j = 1; j <= jmax && ok; ++j) {
            four_pow *= 4;
            ok = i128(counts[j]) <= i128(four_pow) * m.s_pow[j];
        }
        if (!ok) ScanState::bump(st.v_peres, st.w_peres, idx);
    }
    if (checks & kCheckSandwichBounds) {
        bool ok = true;
        for (int k = 1; k <= n && ok; ++k) {
            std::int64_t cnt_s_ge[6] = {0}, cnt_ts_ge[6] = {0};
            std::int64_t cnt_deg_eq = 0, cnt_dt_eq = 0;
            if (k == n) {
                for (int j = 1; j <= k; ++j) {
                    cnt_s_ge[j] = m.smax >= j;
                    cnt_ts_ge[j] = m.ts >= j;
                }
                cnt_deg_eq = m.deg == k;
                cnt_dt_eq = m.dt == k;
            } else {
                const MeasureTables& mt = measure_tables(k);
                for (const auto& ls : plan->by_k[k]) {
                    for (int rp : ls.rest_points) {
                        std::uint32_t table = 0;
                        for (std::size_t y = 0; y < ls.cube_points.size(); ++y)
                            table |= static_cast<std::uint32_t>(
                                         table_bit(m.table, ls.cube_points[y] | rp))
                                     << y;
                        const int rs = mt.max_sens[table];
                        const int rts = mt.ts[table];
                        for (int j = 1; j <= k; ++j) {
                            cnt_s_ge[j] += rs >= j;
                            cnt_ts_ge[j] += rts >= j;
                        }
                        cnt_deg_eq += mt.deg[table] == k;
                        cnt_dt_eq += mt.dt[table] == k;
                    }
                }
            }
            const std::int64_t r_count = binom_int(n, k) << (n - k);
            // degree event against the influence falling moment
            std::int64_t iffk = 0;
            for (int lev = k; lev <= n; ++lev) iffk += m.level_sq[lev] * ff_int(lev, k);
            const i128 mid_deg = i128(cnt_deg_eq) * pts * pts * ff_int(n, k);
            ok = ok && i128(iffk) * r_count <= mid_deg;
            ok = ok && mid_deg <= i128(iffk) * r_count * (std::int64_t{1} << (2 * k - 2));
            // full restricted depth against max sensitivity
            i128 sw = 1;
            for (int i = 0; i < k; ++i) sw *= 32 * m.smax;
            ok = ok && i128(cnt_dt_eq) * binom_int(n, k) <= sw * r_count;
            for (int j = 1; j <= k && ok; ++j) {
                const i128 mid_s = i128(cnt_s_ge[j]) * pts * ff_int(n, j);
                ok = ok && i128(m.s_ff[j]) * r_count <= mid_s;
                ok = ok && mid_s <= i128(m.s_ff[j]) * r_count * binom_int(k, j) *
                                        (std::int64_t{1} << k);
                // tree sensitivity: the same lower bound, tree-count upper bound
                ok = ok && i128(m.s_ff[j]) * r_count <= i128(cnt_ts_ge[j]) * pts * ff_int(n, j);
                ok = ok && i128(cnt_ts_ge[j]) * pts * binom_int(n, j) <=
                               i128(binom_int(k, j)) * (std::int64_t{1} << (k + 2 * j)) *
                                   m.s_pow[j] * r_count;
            }
        }
        if (!ok) ScanState::bump(st.v_sandwich, st.w_sandwich, idx);
    }
    if (checks & kCheckEntropyBounds) {
        const double denom = std::ldexp(1.0, 2 * n);
        double lhs = 0.0;
        for (int lev = 0; lev <= n; ++lev) {
            if (!m.level_sq[lev]) continue;
            const double w = static_cast<double>(m.level_sq[lev]) / denom;
            lhs -= w * std::log2(w);
        }
        const double influence = static_cast<double>(m.m_pow[1]) / denom;
        bool ok = lhs <= 3.0 * influence + 1e-9;
        for (int lev = 0; lev <= n && ok; ++lev) {
            if (!m.level_sq[lev]) continue;
            double h = 0.0, l1 = 0.0;
            for (int s = 0; s < m.points; ++s) {
                if (std::popcount(static_cast<unsigned>(s)) != lev || !m.wht[s]) continue;
                const double p = static_cast<double>(std::int64_t{m.wht[s]} * m.wht[s]) / denom;
                h -= p * std::log2(p);
                l1 += std::abs(static_cast<double>(m.wht[s])) / static_cast<double>(m.points);
            }
            const double w = static_cast<double>(m.level_sq[lev]) / denom;
            ok = h <= 2.0 * w * std::log2(l1) + 2.0 * w * std::log2(1.0 / w) + 1e-9;
        }
        if (!ok) ScanState::bump(st.v_entropy, st.w_entropy, idx);
    }
    ++st.checked;
}

}  // namespace

bool ScanReport::all_asserted_pass() const {
    for (const auto& c : checks)
        if (c.asserted && c.violations) return false;
    return true;
}

ScanReport scan_all(int n, const ScanOptions& options, const Caps& caps) {
    (void)caps;
    if (n < 1 || n > 5) throw std::invalid_argument("scan covers 1 <= n <= 5");
    const bool exhaustive = !options.sample_count.has_value();
    if (n == 5 && exhaustive && !options.long_run)
        throw CapacityError(
            "capacity exceeded (scan n <= 4): the 2^32-function space at n=5 needs long-run "
            "mode or sampling");

    const std::uint64_t total =
        exhaustive ? (n == 5 ? (std::uint64_t{1} << 32) : (std::uint64_t{1} << (1 << n)))
                   : *options.sample_count;
    const bool need_hard =
        options.checks & (kCheckDegreeFullTree | kCheckTreeVsDepth | kCheckMeasureChain |
                          kCheckDepthVsTree | kCheckSandwichBounds);
    const RestrictionPlan plan(n);

    // Warm the per-arity measure tables before forking workers.
    if (n <= kMeasureTableMaxArity || (options.checks & kCheckSandwichBounds))
        for (int a = 1; a <= std::min(n, kMeasureTableMaxArity); ++a) measure_tables(a);

    std::uint64_t start = 0;
    ScanState carried;
    // Long runs persist progress between blocks; short scans never checkpoint.
    const bool use_checkpoint = !options.checkpoint_path.empty() && exhaustive;
    if (use_checkpoint) {
        std::ifstream in(options.checkpoint_path);
        if (in) {
            nlohmann::json j;
            in >> j;
            start = j.value("next", std::uint64_t{0});
            carried.checked = j.value("checked", std::uint64_t{0});
            auto counter = [&](const char* key, std::uint64_t& v,
                              std::optional<std::uint64_t>& w) {
                v = j.value(key, std::uint64_t{0});
                const std::string wk = std::string(key) + "_w";
                if (j.contains(wk)) w = j[wk].get<std::uint64_t>();
            };
            counter("v_moments", carried.v_moments, carried.w_moments);
            counter("v_degts", carried.v_degts, carried.w_degts);
            counter("v_treedt", carried.v_treedt, carried.w_treedt);
            counter("v_chain", carried.v_chain, carried.w_chain);
            counter("v_peres", carried.v_peres, carried.w_peres);
            counter("v_sandwich", carried.v_sandwich, carried.w_sandwich);
            counter("v_entropy", carried.v_entropy, carried.w_entropy);
            counter("order3", carried.order3_count, carried.order3_witness);
            counter("depth_over_tree", carried.depth_over_tree, carried.margin_witness);
            carried.min_margin = j.value("min_margin", carried.min_margin);
            carried.ratio3.num = j.value("r3_num", std::int64_t{0});
            carried.ratio3.den = j.value("r3_den", std::int64_t{1});
            if (j.contains("r3_w")) carried.ratio3.witness = j["r3_w"].get<std::uint64_t>();
            carried.ratio4.num = j.value("r4_num", std::int64_t{0});
            carried.ratio4.den = j.value("r4_den", std::int64_t{1});
            if (j.contains("r4_w")) carried.ratio4.witness = j["r4_w"].get<std::uint64_t>();
        }
    }

    const std::uint64_t block_size = std::min<std::uint64_t>(total, std::uint64_t{1} << 22);
    Rng sample_rng(options.seed);
    std::vector<std::uint64_t> sampled_tables;
    if (!exhaustive) {
        sampled_tables.resize(total);
        const std::uint64_t mask =
            (n == 5) ? 0xffffffffull : ((std::uint64_t{1} << (1 << n)) - 1);
        for (auto& t : sampled_tables) t = sample_rng.next() & mask;
    }

    for (std::uint64_t block_start = start; block_start < total; block_start += block_size) {
        const std::uint64_t block_end = std::min(total, block_start + block_size);
        const std::uint64_t chunk = 1024;
        const std::uint64_t span = block_end - block_start;
        std::vector<ScanState> parts((span + chunk - 1) / chunk);
        parallel_chunks(span, chunk, [&](std::uint64_t ci, std::uint64_t b, std::uint64_t e) {
            ScanState local;
            for (std::uint64_t i = b; i < e; ++i) {
                const std::uint64_t table =
                    exhaustive ? block_start + i : sampled_tables[block_start + i];
                const FnMeasures m = compute_measures(n, table, need_hard);
                check_function(m, options.checks, &plan, local);
            }
            parts[ci] = std::move(local);
        });
        for (const auto& p : parts) carried.merge(p);
        if (use_checkpoint) {
            nlohmann::json j{{"next", block_end}, {"checked", carried.checked}};
            auto counter = [&](const char* key, std::uint64_t v,
                              const std::optional<std::uint64_t>& w) {
                j[key] = v;
                if (w) j[std::string(key) + "_w"] = *w;
            };
            counter("v_moments", carried.v_moments, carried.w_moments);
            counter("v_degts", carried.v_degts, carried.w_degts);
            counter("v_treedt", carried.v_treedt, carried.w_treedt);
            counter("v_chain", carried.v_chain, carried.w_chain);
            counter("v_peres", carried.v_peres, carried.w_peres);
            counter("v_sandwich", carried.v_sandwich, carried.w_sandwich);
            counter("v_entropy", carried.v_entropy, carried.w_entropy);
            counter("order3", carried.order3_count, carried.order3_witness);
            counter("depth_over_tree", carried.depth_over_tree, carried.margin_witness);
            j["min_margin"] = carried.min_margin;
            j["r3_num"] = carried.ratio3.num;
            j["r3_den"] = carried.ratio3.den;
            if (carried.ratio3.witness) j["r3_w"] = *carried.ratio3.witness;
            j["r4_num"] = carried.ratio4.num;
            j["r4_den"] = carried.ratio4.den;
            if (carried.ratio4.witness) j["r4_w"] = *carried.ratio4.witness;
            std::ofstream out(options.checkpoint_path);
            out << j.dump() << "\n";
        }
    }

    ScanReport report;
    report.n = n;
    report.functions = carried.checked;
    report.sampled = !exhaustive;
    auto add = [&](std::uint32_t flag, const std::string& name, bool asserted, std::uint64_t v,
                   const std::optional<std::uint64_t>& w, const std::string& detail = "") {
        if (!(options.checks & flag)) return;
        CheckOutcome c;
        c.name = name;
        c.asserted = asserted;
        c.checked = carried.checked;
        c.violations = v;
        c.witness = w;
        c.detail = detail;
        report.checks.push_back(std::move(c));
    };
    add(kCheckMomentIdentities, "moment-identities", true, carried.v_moments, carried.w_moments);
    add(kCheckDegreeFullTree, "full-degree-full-tree", true, carried.v_degts, carried.w_degts);
    add(kCheckTreeVsDepth, "tree-sens-vs-depth", true, carried.v_treedt, carried.w_treedt);
    add(kCheckMeasureChain, "measure-chain", true, carried.v_chain, carried.w_chain);
    add(kCheckTreeCountBound, "tree-count-bound", true, carried.v_peres, carried.w_peres);
    add(kCheckSandwichBounds, "restriction-sandwiches", true, carried.v_sandwich,
        carried.w_sandwich);
    add(kCheckEntropyBounds, "entropy-bounds", true, carried.v_entropy, carried.w_entropy);
    add(kCheckOrder3Gap, "order3-moment-gap", false, carried.order3_count,
        carried.order3_witness, "count of functions with differing order-3 moments");
    if (options.checks & kCheckDepthVsTree) {
        CheckOutcome c;
        c.name = "depth-vs-tree-report";
        c.asserted = false;
        c.checked = carried.checked;
        c.violations = carried.depth_over_tree;
        c.witness = carried.margin_witness;
        c.detail = carried.min_margin == std::numeric_limits<int>::max()
                       ? ""
                       : "min ts-dt margin = " + std::to_string(carried.min_margin);
        report.checks.push_back(std::move(c));
    }
    if (options.checks & kCheckMomentRatio) {
        CheckOutcome c;
        c.name = "moment-ratio-report";
        c.asserted = false;
        c.checked = carried.checked;
        c.violations = 0;
        std::string d;
        if (carried.ratio3.witness)
            d += "max I3/s3 = " +
                 rat_string(Rational{BigInt{carried.ratio3.num}, BigInt{carried.ratio3.den}}) +
                 " at table " + std::to_string(*carried.ratio3.witness);
        if (carried.ratio4.witness)
            d += (d.empty() ? "" : "; ") + std::string("max I4/s4 = ") +
                 rat_string(Rational{BigInt{carried.ratio4.num}, BigInt{carried.ratio4.den}}) +
                 " at table " + std::to_string(*carried.ratio4.witness);
        c.detail = d;
        report.checks.push_back(std::move(c));
    }
    return report;
}

Rational moment_ratio(const BooleanFunction& f, int k, const Caps& caps) {
    if (k < 1) throw std::invalid_argument("moment order must be >= 1");
    const SensitivityStats st = sensitivity_stats(f, k);
    if (st.sk == 0) return 0;
    return influence_moment(spectrum(f, caps), k, false) / st.sk;
}

TailBoundReport tail_bound_check(const BooleanFunction& f, int k, const Caps& caps) {
    if (k < 1) throw std::invalid_argument("moment order must be >= 1");
    TailBoundReport r;
    r.k = k;
    r.sensitivity = max_sensitivity(f);
    const Spectrum s = spectrum(f, caps);
    r.iffk = influence_moment(s, k, true);
    r.moment_bound = Rational{ipow(BigInt{32} * r.sensitivity, k) * factorial(k)};
    r.moment_pass = r.iffk <= r.moment_bound;

    r.tail_level = 64 * r.sensitivity * k;
    const auto levels = s.level_coeff_squares();
    BigInt tail_num = 0;
    // Level 0 is the constant term itself; the tail of interest starts above
    // it (only the s = 0 case is affected).
    const int from = std::max(r.tail_level, 1);
    for (int lev = std::min(from, s.n + 1); lev <= s.n; ++lev) tail_num += levels[lev];
    r.tail = Rational{tail_num, pow2(2 * s.n)};
    r.tail_limit = Rational{1, pow2(k)};
    r.tail_pass = r.tail <= r.tail_limit;
    return r;
}

EntropyReport entropy_checks(const BooleanFunction& f, const Caps& caps) {
    EntropyReport r;
    r.n = f.arity();
    const Spectrum s = spectrum(f, caps);
    const auto levels = s.level_coeff_squares();
    r.entropy = spectral_entropy(s);
    r.influence = influence_moment(s, 1, false);
    const double influence = static_cast<double>(r.influence);

    const double denom = std::ldexp(1.0, 2 * s.n);
    double lhs = 0.0;
    for (int lev = 0; lev <= s.n; ++lev) {
        if (levels[lev] == 0) continue;
        const double w = static_cast<double>(levels[lev]) / denom;
        lhs -= w * std::log2(w);
    }
    r.level_entropy_sum = lhs;
    r.level_sum_pass = lhs <= 3.0 * influence + 1e-9;

    r.per_level_pass = true;
    std::vector<double> level_h(s.n + 1, 0.0), level_l1(s.n + 1, 0.0);
    for (std::size_t set = 0; set < s.coeffs.size(); ++set) {
        if (!s.coeffs[set]) continue;
        const int lev = std::popcount(set);
        const double p = static_cast<double>(std::int64_t{s.coeffs[set]} * s.coeffs[set]) / denom;
        level_h[lev] -= p * std::log2(p);
        level_l1[lev] += std::abs(static_cast<double>(s.coeffs[set])) /
                         static_cast<double>(std::int64_t{1} << s.n);
    }
    for (int lev = 0; lev <= s.n; ++lev) {
        if (levels[lev] == 0) continue;
        const double w = static_cast<double>(levels[lev]) / denom;
        if (level_h[lev] > 2.0 * w * std::log2(level_l1[lev]) + 2.0 * w * std::log2(1.0 / w) + 1e-9)
            r.per_level_pass = false;
    }

    const int smax = max_sensitivity(f);
    r.ei_margin = r.entropy - 2.0 * influence * std::log2(std::max(smax, 2));
    r.ei_constant = influence > 0 ? r.ei_margin / influence : 0.0;
    return r;
}

}  // namespace cubesense
