#include "cubesense/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cubesense/dtree.hpp"
#include "cubesense/families.hpp"
#include "cubesense/fourier.hpp"
#include "cubesense/learn.hpp"
#include "cubesense/parallel.hpp"
#include "cubesense/sensitivity.hpp"
#include "cubesense/serialize.hpp"
#include "cubesense/subcube_measures.hpp"
#include "cubesense/treewalk.hpp"
#include "cubesense/verify.hpp"

namespace cubesense::cli {

namespace {

using json = nlohmann::ordered_json;

struct InputOpts {
    std::string family;
    std::string table_path;
};

void add_input_options(CLI::App* cmd, InputOpts& in) {
    auto* fam = cmd->add_option("--family", in.family, "family spec, name:p1,p2[,seed]");
    auto* tab = cmd->add_option("--table", in.table_path, "truth-table file");
    fam->excludes(tab);
    tab->excludes(fam);
}

BooleanFunction load_input(const InputOpts& in) {
    if (in.family.empty() == in.table_path.empty())
        throw std::invalid_argument("exactly one of --family/--table is required");
    if (!in.family.empty()) return make_family(parse_family(in.family));
    return read_table_file(in.table_path);
}

void pretty_print(const json& j, std::ostream& os, int indent) {
    const std::string pad(indent, ' ');
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object() || (value.is_array() && !value.empty() && value[0].is_object())) {
                os << pad << key << ":\n";
                pretty_print(value, os, indent + 2);
            } else {
                os << pad << key << " = " << value.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& item : j) {
            os << pad << "-\n";
            pretty_print(item, os, indent + 2);
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

void emit(const json& j, bool pretty, const std::string& out_path, std::ostream& out) {
    std::ostringstream buf;
    if (pretty) pretty_print(j, buf, 0);
    else buf << j.dump() << "\n";
    if (out_path.empty()) {
        out << buf.str();
    } else {
        std::ofstream os(out_path);
        if (!os) throw std::invalid_argument("cannot write output file: " + out_path);
        os << buf.str();
    }
}

void emit_text(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream os(out_path);
        if (!os) throw std::invalid_argument("cannot write output file: " + out_path);
        os << text;
    }
}

// Seeded family instance i: the trailing seed parameter advanced by i.
BooleanFunction replicate_instance(const FamilySpec& spec, std::uint64_t i) {
    if (spec.name != "random" && spec.name != "random_width_dnf")
        throw std::invalid_argument("--replicate needs a seeded family (random, random_width_dnf)");
    FamilySpec inst = spec;
    inst.params.back() += static_cast<std::int64_t>(i);
    return make_family(inst);
}

json analyze_report(const BooleanFunction& f, bool with_levels) {
    const Caps& caps = default_caps();
    const SensitivityStats st = sensitivity_stats(f, 1);
    const SensitivityGraph g = sensitivity_graph(f);
    int cdim = 0;
    for (std::uint32_t mask : g.direction_masks) cdim = std::max(cdim, std::popcount(mask));

    json j;
    j["n"] = f.arity();
    j["dim"] = f.dim();
    j["s"] = st.s;
    j["s0"] = st.s0;
    j["s1"] = st.s1;
    j["deg"] = degree(f);
    j["cdim"] = cdim;
    j["edges"] = g.edges.size();
    j["components"] = g.component_count();

    std::vector<std::string> skipped;
    std::optional<int> dt, ts;
    if (f.arity() <= caps.dtree) dt = decision_tree_depth(f);
    else skipped.push_back("dt");
    if (f.arity() <= caps.tree_search) ts = tree_sensitivity(f);
    else skipped.push_back("ts");
    if (dt) j["dt"] = *dt;
    if (ts) j["ts"] = *ts;
    if (!skipped.empty()) j["skipped"] = skipped;

    bool ok = j["deg"].get<int>() <= f.dim() && cdim >= st.s;
    if (dt) ok = ok && j["deg"].get<int>() <= *dt && *dt <= f.dim() && st.s <= *dt;
    if (ts) ok = ok && cdim >= *ts && *ts >= st.s;
    if (dt && ts) ok = ok && (*ts) * (*ts + 1) / 2 >= *dt;
    j["invariants_ok"] = ok;

    if (with_levels) {
        json levels = json::array();
        for (const auto& w : level_weights(f)) levels.push_back(rat_string(w));
        j["levels"] = levels;
    }
    return j;
}

int run_analyze(const InputOpts& in, bool levels, bool pretty, const std::string& out_path,
                std::ostream& out) {
    const BooleanFunction f = load_input(in);
    const json j = analyze_report(f, levels);
    emit(j, pretty, out_path, out);
    return j["invariants_ok"].get<bool>() ? 0 : 1;
}

int run_moments(const InputOpts& in, int k, int max_k, bool tail_check, int dnf_width,
                bool pretty, const std::string& out_path, std::ostream& out) {
    const BooleanFunction f = load_input(in);
    bool ok = true;
    json j;
    j["n"] = f.arity();
    if (max_k == 0) {
        const json single = json::parse(to_json(influence_moments(f, k)));
        if (!tail_check && dnf_width == 0) {
            emit(single, pretty, out_path, out);
            return 0;
        }
        j = single;
    } else {
        json rows = json::array();
        for (int kk = 1; kk <= max_k; ++kk)
            rows.push_back(json::parse(to_json(influence_moments(f, kk))));
        j["moments"] = rows;
    }
    if (tail_check) {
        json rows = json::array();
        const int upto = max_k == 0 ? k : max_k;
        for (int kk = 1; kk <= upto; ++kk) {
            const TailBoundReport r = tail_bound_check(f, kk);
            ok = ok && r.moment_pass && r.tail_pass;
            rows.push_back(json::parse(to_json(r)));
        }
        j["tails"] = rows;
    }
    if (dnf_width > 0) {
        const int n = f.arity();
        const int w = dnf_width;
        const int order = max_k == 0 ? k : max_k;
        // Exact sensitivity tail against 2^(-s0/w): cross-powered integers.
        std::vector<std::uint64_t> ge(n + 2, 0);
        for (std::uint64_t x = 0; x < f.table_size(); ++x)
            ++ge[point_sensitivity(f, Point{static_cast<std::uint32_t>(x)})];
        for (int s0 = n - 1; s0 >= 0; --s0) ge[s0] += ge[s0 + 1];
        json tail_rows = json::array();
        bool tails_ok = true;
        for (int s0 = w + 1; s0 <= n; ++s0) {
            // count/2^n <= 2^(-s0/w)  <=>  count^w * 2^s0 <= 2^(nw)
            const bool pass =
                ipow(BigInt{ge[s0]}, w) * pow2(s0) <= pow2(n * w);
            tails_ok = tails_ok && pass;
            json row{{"s0", s0},
                     {"count", ge[s0]},
                     {"probability", rat_string(Rational{BigInt{ge[s0]}, pow2(n)})},
                     {"pass", pass}};
            tail_rows.push_back(std::move(row));
        }
        const SensitivityStats st = sensitivity_stats(f, order);
        const Rational grid_lower =
            Rational{ipow(BigInt{order} * w, order), pow2(order)};
        const bool grid_pass = st.sk >= grid_lower;
        const double c_measured =
            std::pow(static_cast<double>(st.sk), 1.0 / order) / (double(order) * w);
        json dnf{{"width", w},
                 {"order", order},
                 {"sk", rat_string(st.sk)},
                 {"grid_lower", rat_string(grid_lower)},
                 {"grid_lower_pass", grid_pass},
                 {"c_measured", c_measured},
                 {"tails", tail_rows},
                 {"tails_pass", tails_ok}};
        j["dnf"] = dnf;
        ok = ok && tails_ok && grid_pass;
    }
    j["pass"] = ok;
    emit(j, pretty, out_path, out);
    return ok ? 0 : 1;
}

int run_restrict(const InputOpts& in, int k, int j_thresh, const std::string& measure,
                 const std::string& event_kind, const std::string& mode, std::uint64_t count,
                 std::optional<std::uint64_t> seed, bool pretty, const std::string& out_path,
                 std::ostream& out) {
    const BooleanFunction f = load_input(in);
    RestrictionEvent event;
    if (measure == "sensitivity") event = RestrictionEvent::kSensitivityAtLeast;
    else if (measure == "degree")
        event = event_kind == "eq" ? RestrictionEvent::kDegreeEquals
                                   : RestrictionEvent::kDegreeAtLeast;
    else if (measure == "dtdepth")
        event = event_kind == "eq" ? RestrictionEvent::kDepthEquals
                                   : RestrictionEvent::kDepthAtLeast;
    else if (measure == "treesens") event = RestrictionEvent::kTreeSensAtLeast;
    else throw std::invalid_argument("unknown measure: " + measure);

    std::optional<SampleMode> sample;
    if (mode == "sample") {
        if (!seed) throw std::invalid_argument("sample mode requires --seed");
        sample = SampleMode{count, *seed};
    } else if (mode != "exhaustive") {
        throw std::invalid_argument("mode must be exhaustive or sample");
    }
    const RestrictionStats st = restriction_stats(f, k, j_thresh, event, sample);
    emit(json::parse(to_json(st)), pretty, out_path, out);
    return 0;
}

int run_bounds(const InputOpts& in, int k, int j_opt, const std::string& theorem, int max_k,
               std::uint64_t replicate, int suite_arity, bool csv, bool pretty,
               const std::string& out_path, std::ostream& out) {
    std::vector<BoundTheorem> theorems;
    if (theorem == "all") {
        theorems = {BoundTheorem::kSensitivityMoment, BoundTheorem::kInfluenceMoment,
                    BoundTheorem::kTreeSensitivity, BoundTheorem::kSwitching};
    } else {
        const auto t = theorem_from_name(theorem);
        if (!t) throw std::invalid_argument("unknown theorem: " + theorem);
        theorems = {*t};
    }

    // The work list: an explicit function, a replicated seeded family, the
    // named suite, or any mix.
    std::vector<std::pair<std::string, BooleanFunction>> inputs;
    if (!in.family.empty() || !in.table_path.empty()) {
        if (replicate > 0) {
            const FamilySpec spec = parse_family(in.family);
            for (std::uint64_t i = 0; i < replicate; ++i) {
                FamilySpec inst = spec;
                inst.params.back() += static_cast<std::int64_t>(i);
                std::string label = inst.name + ":";
                for (std::size_t p = 0; p < inst.params.size(); ++p)
                    label += (p ? "," : "") + std::to_string(inst.params[p]);
                inputs.emplace_back(label, make_family(inst));
            }
        } else {
            inputs.emplace_back(in.family.empty() ? in.table_path : in.family, load_input(in));
        }
    }
    if (suite_arity > 0)
        for (const auto& fam : named_family_suite(suite_arity))
            inputs.emplace_back(fam, make_family(parse_family(fam)));
    if (inputs.empty()) throw std::invalid_argument("no input functions for bounds");

    std::uint64_t violations = 0;
    json rows = json::array();
    std::string csv_text = std::string(bound_check_csv_header()) + "\n";
    const bool aggregate = inputs.size() > 1;
    for (const auto& [label, f] : inputs) {
        const int n = f.arity();
        std::vector<std::pair<int, int>> kjs;
        if (max_k > 0) {
            for (int kk = 1; kk <= std::min(n, max_k); ++kk)
                for (int jj = 1; jj <= kk; ++jj) kjs.emplace_back(kk, jj);
        } else {
            kjs.emplace_back(k, j_opt == 0 ? k : j_opt);
        }
        for (const auto& [kk, jj] : kjs) {
            for (const BoundTheorem t : theorems) {
                // Equality-event theorems are single rows per k.
                if ((t == BoundTheorem::kInfluenceMoment || t == BoundTheorem::kSwitching ||
                     t == BoundTheorem::kMomentConditional) &&
                    jj != kk)
                    continue;
                const BoundCheck b = bound_check(f, kk, jj, t);
                if (!b.conditional && !b.pass) ++violations;
                csv_text += bound_check_csv_row(b) + "\n";
                if (!aggregate || !b.pass) {
                    json row = json::parse(to_json(b));
                    row["input"] = label;
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    if (csv) {
        emit_text(csv_text, out_path, out);
    } else {
        json j{{"inputs", inputs.size()},
               {"violations", violations},
               {"pass", violations == 0},
               {"rows", rows}};
        emit(j, pretty, out_path, out);
    }
    return violations == 0 ? 0 : 1;
}

int run_trees(const InputOpts& in, int max_j, const std::string& vertices_csv, bool pretty,
              const std::string& out_path, std::ostream& out) {
    const BooleanFunction f = load_input(in);
    if (!vertices_csv.empty()) {
        std::vector<std::uint32_t> verts;
        std::stringstream ss(vertices_csv);
        for (std::string tok; std::getline(ss, tok, ',');)
            verts.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        const SensitiveTree t = induced_tree(f, verts);
        const TreeClass c = classify_tree(f, t);
        json j{{"n", f.arity()},
               {"vertices", t.vertices},
               {"labels", t.labels.coords()},
               {"maximal", c.maximal},
               {"orchard", c.orchard == OrchardStatus::kYes
                               ? "yes"
                               : (c.orchard == OrchardStatus::kNo ? "no" : "unverified")}};
        emit(j, pretty, out_path, out);
        return 0;
    }
    const int n = f.arity();
    const int upto = max_j == 0 ? std::min(n, 4) : max_j;
    const auto counts = count_sensitive_trees_up_to(f, upto);
    BigInt s_pow = 0;
    json rows = json::array();
    bool ok = true;
    for (int j = 1; j <= upto; ++j) {
        s_pow = 0;
        for (std::uint64_t x = 0; x < f.table_size(); ++x)
            s_pow += ipow(point_sensitivity(f, Point{static_cast<std::uint32_t>(x)}), j);
        const BigInt bound = ipow(BigInt{4}, j) * s_pow;
        const bool pass = BigInt{counts[j]} <= bound;
        ok = ok && pass;
        rows.push_back(json{{"j", j},
                            {"count", counts[j]},
                            {"bound", bound.str()},
                            {"pass", pass}});
    }
    json j{{"n", n}, {"ts", tree_sensitivity(f)}, {"counts", rows}, {"pass", ok}};
    emit(j, pretty, out_path, out);
    return ok ? 0 : 1;
}

int run_walk(const InputOpts& in, const std::string& kind, std::uint64_t replicate, bool pretty,
             const std::string& out_path, std::ostream& out) {
    if (replicate > 0) {
        if (kind == "min") throw std::invalid_argument("--replicate applies to full/short walks");
        const FamilySpec spec = parse_family(in.family);
        std::uint64_t eligible = 0, violations = 0;
        for (std::uint64_t i = 0; i < replicate; ++i) {
            const BooleanFunction f = replicate_instance(spec, i);
            const int n = f.arity();
            if (kind == "short") {
                if (decision_tree_depth(f) != n) continue;
                ++eligible;
                const Walk w = proper_walk_3n(f);
                if (!is_proper_walk(f, w) || w.dimension() != n ||
                    w.length() > 3 * static_cast<std::size_t>(n))
                    ++violations;
            } else {
                if (f.dim() != n) continue;
                ++eligible;
                const Walk w = full_dim_proper_walk(f);
                if (!is_proper_walk(f, w) || w.dimension() != n ||
                    w.length() > static_cast<std::size_t>(n) * (n + 1) / 2)
                    ++violations;
            }
        }
        json j{{"kind", kind},
               {"replicates", replicate},
               {"eligible", eligible},
               {"violations", violations},
               {"pass", violations == 0}};
        emit(j, pretty, out_path, out);
        return violations == 0 ? 0 : 1;
    }

    const BooleanFunction f = load_input(in);
    const int n = f.arity();
    if (kind == "min") {
        const auto len = min_proper_walk(f);
        json j{{"kind", "min"}, {"n", n}};
        if (len) j["min_length"] = *len;
        else j["min_length"] = nullptr;
        emit(j, pretty, out_path, out);
        return 0;
    }
    Walk w;
    std::size_t bound;
    if (kind == "short") {
        w = proper_walk_3n(f);
        bound = 3 * static_cast<std::size_t>(n);
    } else if (kind == "full") {
        w = full_dim_proper_walk(f);
        bound = static_cast<std::size_t>(n) * (n + 1) / 2;
    } else {
        throw std::invalid_argument("kind must be full, short, or min");
    }
    json j{{"kind", kind}, {"n", n}};
    j["walk"] = json::parse(to_json(w));
    j["length"] = w.length();
    j["dimension"] = w.dimension();
    j["length_bound"] = bound;
    j["proper"] = is_proper_walk(f, w);
    emit(j, pretty, out_path, out);
    return 0;
}

int run_encode(const InputOpts& in, int k, std::uint64_t replicate, const std::string& live_csv,
               std::uint32_t point, bool pretty, const std::string& out_path, std::ostream& out) {
    if (!live_csv.empty()) {
        const BooleanFunction f = load_input(in);
        std::uint32_t live = 0;
        std::stringstream ss(live_csv);
        for (std::string tok; std::getline(ss, tok, ',');) {
            const int coord = std::stoi(tok);
            if (coord < 1 || coord > f.arity())
                throw std::invalid_argument("live coordinate out of range: " + tok);
            live |= coord_bit(coord);
        }
        const Restriction rho{f.arity(), live, point & ~live};
        const WalkEncoding enc = encode_walk(f, rho);
        const Restriction back = decode_walk(f, enc, rho.live_count());
        json j = json::parse(to_json(enc));
        j["roundtrip_ok"] = back == rho;
        emit(j, pretty, out_path, out);
        return j["roundtrip_ok"].get<bool>() ? 0 : 1;
    }
    if (replicate > 0) {
        const FamilySpec spec = parse_family(in.family);
        std::uint64_t qualifying = 0, failures = 0, duplicates = 0, mismatched = 0;
        for (std::uint64_t i = 0; i < replicate; ++i) {
            const BooleanFunction f = replicate_instance(spec, i);
            const EncodingScan s = encoding_bijection_scan(f, k);
            qualifying += s.qualifying;
            failures += s.roundtrip_failures;
            duplicates += s.duplicate_encodings;
            mismatched += s.pass ? 0 : 1;
        }
        json j{{"k", k},
               {"replicates", replicate},
               {"qualifying", qualifying},
               {"roundtrip_failures", failures},
               {"duplicate_encodings", duplicates},
               {"failed_instances", mismatched},
               {"pass", mismatched == 0}};
        emit(j, pretty, out_path, out);
        return mismatched == 0 ? 0 : 1;
    }
    const BooleanFunction f = load_input(in);
    const EncodingScan s = encoding_bijection_scan(f, k);
    emit(json::parse(to_json(s)), pretty, out_path, out);
    return s.pass ? 0 : 1;
}

int run_scan(const std::vector<int>& ns, const std::string& checks_csv, bool long_run,
             std::optional<std::uint64_t> sample, std::uint64_t seed,
             const std::string& checkpoint, bool pretty, const std::string& out_path,
             std::ostream& out) {
    std::uint32_t checks = 0;
    std::stringstream ss(checks_csv);
    for (std::string tok; std::getline(ss, tok, ',');) {
        if (tok == "core") checks |= kScanChecksCore;
        else if (tok == "all") checks |= kScanChecksAll;
        else if (tok == "bounds") checks |= kCheckSandwichBounds;
        else if (tok == "entropy") checks |= kCheckEntropyBounds;
        else if (tok == "reports") checks |= kScanChecksReports;
        else if (tok == "moments") checks |= kCheckMomentIdentities;
        else if (tok == "degts") checks |= kCheckDegreeFullTree;
        else if (tok == "streedt") checks |= kCheckTreeVsDepth;
        else if (tok == "chain") checks |= kCheckMeasureChain;
        else if (tok == "peres") checks |= kCheckTreeCountBound;
        else throw std::invalid_argument("unknown check group: " + tok);
    }
    ScanOptions opt;
    opt.checks = checks;
    opt.long_run = long_run;
    opt.sample_count = sample;
    opt.seed = seed;
    opt.checkpoint_path = checkpoint;
    bool ok = true;
    json scans = json::array();
    for (int n : ns) {
        const ScanReport r = scan_all(n, opt);
        ok = ok && r.all_asserted_pass();
        scans.push_back(json::parse(to_json(r)));
    }
    if (ns.size() == 1) emit(scans[0], pretty, out_path, out);
    else emit(json{{"scans", scans}, {"pass", ok}}, pretty, out_path, out);
    return ok ? 0 : 1;
}

int run_entropy(const InputOpts& in, int suite_arity, bool pretty, const std::string& out_path,
                std::ostream& out) {
    if (suite_arity > 0) {
        json rows = json::array();
        bool ok = true;
        for (const auto& fam : named_family_suite(suite_arity)) {
            const BooleanFunction f = make_family(parse_family(fam));
            const EntropyReport r = entropy_checks(f);
            ok = ok && r.level_sum_pass && r.per_level_pass;
            json row = json::parse(to_json(r));
            row["family"] = fam;
            rows.push_back(std::move(row));
        }
        json j{{"suite_arity", suite_arity}, {"rows", rows}, {"pass", ok}};
        emit(j, pretty, out_path, out);
        return ok ? 0 : 1;
    }
    const BooleanFunction f = load_input(in);
    const EntropyReport r = entropy_checks(f);
    emit(json::parse(to_json(r)), pretty, out_path, out);
    return r.level_sum_pass && r.per_level_pass ? 0 : 1;
}

int run_learn(const InputOpts& in, int d, std::uint64_t samples, std::uint64_t seed,
              const std::string& eps_text, bool pretty, const std::string& out_path,
              std::ostream& out) {
    const BooleanFunction f = load_input(in);
    Rational eps;
    if (eps_text.find('.') != std::string::npos) {
        // decimal literal -> exact rational
        const auto dot = eps_text.find('.');
        const std::string whole = eps_text.substr(0, dot), frac = eps_text.substr(dot + 1);
        BigInt den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        eps = Rational{BigInt{(whole.empty() ? "0" : whole) + frac}, den};
    } else {
        eps = parse_rational(eps_text);
    }
    const LabeledSample sample = draw_samples(f, samples, seed);
    const Hypothesis h = lmn_learn(sample, f.arity(), d);
    const Rational err = hypothesis_error(h, f);
    const bool pass = err <= eps;
    json j{{"n", f.arity()},
           {"d", d},
           {"m", samples},
           {"seed", seed},
           {"error", rat_string(err)},
           {"error_float", static_cast<double>(err)},
           {"eps", rat_string(eps)},
           {"pass", pass}};
    emit(j, pretty, out_path, out);
    return pass ? 0 : 1;
}

}  // namespace

std::vector<std::string> named_family_suite(int max_arity) {
    static const std::vector<std::pair<std::string, int>> all = {
        {"parity:2", 2},          {"parity:3", 3},          {"parity:5", 5},
        {"parity:12", 12},        {"and:2", 2},             {"and:3", 3},
        {"and:5", 5},             {"or:3", 3},              {"or:6", 6},
        {"dictator:5,3", 5},      {"address_tree:3", 3},    {"address_tree:7", 7},
        {"hamming:3", 3},         {"hamming:7", 7},         {"or_ham_parity:3,1", 9},
        {"or_ham_parity:3,2", 18},{"hadamard_gadget:4", 4}, {"hadamard_gadget:8", 8},
        {"dnf_parity_rows:2,2", 4},{"dnf_parity_rows:2,3", 6},{"dnf_parity_rows:3,3", 9},
        {"dnf_parity_rows:3,4", 12},{"random_width_dnf:6,2,3,11", 6},
    };
    std::vector<std::string> out;
    for (const auto& [name, arity] : all)
        if (arity <= max_arity) out.push_back(name);
    return out;
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Boolean function sensitivity and Fourier toolkit"};
    app.require_subcommand(1);

    bool pretty = false;
    std::string out_path;
    app.add_flag("--pretty", pretty, "aligned text output instead of JSON");
    app.add_option("--out", out_path, "write the report to a file");

    InputOpts in;
    bool levels = false;
    auto* analyze = app.add_subcommand("analyze", "complexity measures of one function");
    add_input_options(analyze, in);
    analyze->add_flag("--levels", levels, "include exact level weights");

    int k = 1, max_k = 0, dnf_width = 0;
    bool tail_check = false;
    auto* moments = app.add_subcommand("moments", "influence and sensitivity moments");
    add_input_options(moments, in);
    moments->add_option("-k", k, "moment order");
    moments->add_option("--max-k", max_k, "emit orders 1..max-k");
    moments->add_flag("--tail-check", tail_check, "check falling-moment and spectral-tail bounds");
    moments->add_option("--dnf-width", dnf_width, "check width-w DNF sensitivity tails");

    int j_thresh = 1;
    std::string measure = "sensitivity", event_kind = "ge", mode = "exhaustive";
    std::uint64_t count = 0;
    std::optional<std::uint64_t> seed_opt;
    auto* restrict_cmd = app.add_subcommand("restrict", "restricted-function event probability");
    add_input_options(restrict_cmd, in);
    restrict_cmd->add_option("-k", k, "live variables")->required();
    restrict_cmd->add_option("-j", j_thresh, "threshold");
    restrict_cmd->add_option("--measure", measure, "sensitivity|degree|dtdepth|treesens");
    restrict_cmd->add_option("--event", event_kind, "ge|eq");
    restrict_cmd->add_option("--mode", mode, "exhaustive|sample");
    restrict_cmd->add_option("--count", count, "sample count");
    restrict_cmd->add_option("--seed", seed_opt, "sample seed (required for sampling)");

    int j_opt = 0, suite_arity = 0;
    std::string theorem = "all";
    std::uint64_t replicate = 0;
    bool csv = false;
    auto* bounds = app.add_subcommand("bounds", "restriction probability sandwiches");
    add_input_options(bounds, in);
    bounds->add_option("-k", k, "live variables");
    bounds->add_option("-j", j_opt, "threshold (default k)");
    bounds->add_option("--theorem", theorem, "sk|ik|ts|switching|sf|sf-conj1|sf-conj2|all");
    bounds->add_option("--max-k", max_k, "all 1 <= j <= k <= min(n, max-k)");
    bounds->add_option("--replicate", replicate, "seeded family instances");
    bounds->add_option("--suite", suite_arity, "add the named family suite up to this arity");
    bounds->add_flag("--csv", csv, "CSV rows instead of JSON");

    int max_j = 0;
    std::string vertices_csv;
    auto* trees = app.add_subcommand("trees", "sensitive-tree counts and classification");
    add_input_options(trees, in);
    trees->add_option("--max-j", max_j, "count tree sizes 1..max-j (default min(n,4))");
    trees->add_option("--vertices", vertices_csv, "classify the tree on these points");

    std::string kind = "short";
    auto* walk = app.add_subcommand("walk", "proper-walk constructions");
    add_input_options(walk, in);
    walk->add_option("--kind", kind, "full|short|min")->required();
    walk->add_option("--replicate", replicate, "seeded family instances");

    std::string live_csv;
    std::uint32_t point = 0;
    auto* encode = app.add_subcommand("encode", "switching-lemma walk encoding");
    add_input_options(encode, in);
    encode->add_option("-k", k, "live variables");
    encode->add_option("--replicate", replicate, "seeded family instances");
    encode->add_option("--live", live_csv, "encode one restriction: live coordinates");
    encode->add_option("--point", point, "fixed bits for the single restriction");

    std::vector<int> scan_ns;
    std::string checks_csv = "core";
    bool long_run = false;
    std::optional<std::uint64_t> sample_opt;
    std::uint64_t scan_seed = 0;
    std::string checkpoint;
    auto* scan = app.add_subcommand("scan", "exhaustive function-space checks");
    scan->add_option("-n", scan_ns, "arity, repeatable (<= 4; 5 needs --long-run or --sample)")
        ->required();
    scan->add_option("--checks", checks_csv, "core|bounds|entropy|reports|all or named checks");
    scan->add_flag("--long-run", long_run, "allow the exhaustive n=5 space");
    auto* scan_sample = scan->add_option("--sample", sample_opt,
                                         "sampled scan of this many functions");
    scan->add_option("--seed", scan_seed, "sampling seed (required with --sample)");
    scan_sample->needs(scan->get_option("--seed"));
    scan->add_option("--checkpoint", checkpoint, "long-run progress file");

    auto* entropy = app.add_subcommand("entropy", "spectral entropy bounds");
    add_input_options(entropy, in);
    entropy->add_option("--suite", suite_arity, "run the named family suite up to this arity");

    int degree_opt = 0;
    std::uint64_t samples = 0, learn_seed = 0;
    std::string eps_text = "1/10";
    auto* learn = app.add_subcommand("learn", "low-degree learner from uniform samples");
    add_input_options(learn, in);
    learn->add_option("--degree", degree_opt, "estimate coefficients up to this degree")
        ->required();
    learn->add_option("--samples", samples, "number of labeled samples")->required();
    learn->add_option("--seed", learn_seed, "sample seed")->required();
    learn->add_option("--eps", eps_text, "target error (rational or decimal)");

    // Parent-level --pretty/--out stay valid after the subcommand name.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (analyze->parsed()) return run_analyze(in, levels, pretty, out_path, out);
        if (moments->parsed())
            return run_moments(in, k, max_k, tail_check, dnf_width, pretty, out_path, out);
        if (restrict_cmd->parsed())
            return run_restrict(in, k, j_thresh, measure, event_kind, mode, count, seed_opt,
                                pretty, out_path, out);
        if (bounds->parsed())
            return run_bounds(in, k, j_opt, theorem, max_k, replicate, suite_arity, csv, pretty,
                              out_path, out);
        if (trees->parsed()) return run_trees(in, max_j, vertices_csv, pretty, out_path, out);
        if (walk->parsed()) return run_walk(in, kind, replicate, pretty, out_path, out);
        if (encode->parsed())
            return run_encode(in, k, replicate, live_csv, point, pretty, out_path, out);
        if (scan->parsed())
            return run_scan(scan_ns, checks_csv, long_run, sample_opt, scan_seed, checkpoint,
                            pretty, out_path, out);
        if (entropy->parsed()) return run_entropy(in, suite_arity, pretty, out_path, out);
        if (learn->parsed())
            return run_learn(in, degree_opt, samples, learn_seed, eps_text, pretty, out_path,
                             out);
        err << "no subcommand\n";
        return 2;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DecodeError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "unexpected error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cubesense::cli
