#include "cubesense/serialize.hpp"

#include <nlohmann/json.hpp>

namespace cubesense {

namespace {
using json = nlohmann::ordered_json;

std::string bits_string(const std::vector<std::uint8_t>& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}
}  // namespace

std::string to_json(const MomentReport& r) {
    json j{{"n", r.n},
           {"k", r.k},
           {"Ik", rat_string(r.ik)},
           {"Iffk", rat_string(r.iffk)},
           {"sk", rat_string(r.sk)},
           {"sffk", rat_string(r.sffk)}};
    return j.dump();
}

std::string to_json(const Walk& w) {
    json j{{"start", w.start}, {"flips", w.flips}};
    return j.dump();
}

std::string to_json(const WalkEncoding& e) {
    json j{{"v0", e.v0},
           {"K", e.phase_ends},
           {"b", bits_string(e.tour_bits)},
           {"c", bits_string(e.cube_bits)},
           {"beta", e.neighbor_indices}};
    return j.dump();
}

WalkEncoding walk_encoding_from_json(const std::string& text, int n) {
    json j = json::parse(text);
    WalkEncoding e;
    e.n = n;
    e.v0 = j.at("v0").get<std::uint32_t>();
    e.phase_ends = j.at("K").get<std::vector<int>>();
    for (char c : j.at("b").get<std::string>()) e.tour_bits.push_back(c == '1');
    for (char c : j.at("c").get<std::string>()) e.cube_bits.push_back(c == '1');
    e.neighbor_indices = j.at("beta").get<std::vector<int>>();
    e.k = static_cast<int>(e.cube_bits.size());
    return e;
}

std::string to_json(const RestrictionStats& s) {
    json j{{"event", event_name(s.event)},
           {"n", s.n},
           {"k", s.k},
           {"j", s.j},
           {"probability", rat_string(s.probability)},
           {"exhaustive", s.exhaustive}};
    if (!s.exhaustive) {
        j["samples"] = s.samples;
        j["std_error"] = s.std_error;
    }
    return j.dump();
}

std::string to_json(const BoundCheck& b) {
    json j{{"theorem", theorem_name(b.theorem)},
           {"n", b.n},
           {"k", b.k},
           {"j", b.j},
           {"lower", rat_string(b.lower)},
           {"observed", rat_string(b.observed)},
           {"upper", rat_string(b.upper)},
           {"conditional", b.conditional},
           {"pass", b.pass}};
    return j.dump();
}

std::string to_json(const EncodingScan& s) {
    json j{{"n", s.n},
           {"k", s.k},
           {"qualifying", s.qualifying},
           {"roundtrip_failures", s.roundtrip_failures},
           {"duplicate_encodings", s.duplicate_encodings},
           {"observed", rat_string(s.observed)},
           {"bound", rat_string(s.bound)},
           {"pass", s.pass}};
    return j.dump();
}

std::string to_json(const TailBoundReport& r) {
    json j{{"k", r.k},
           {"s", r.sensitivity},
           {"Iffk", rat_string(r.iffk)},
           {"moment_bound", rat_string(r.moment_bound)},
           {"moment_pass", r.moment_pass},
           {"tail_level", r.tail_level},
           {"tail", rat_string(r.tail)},
           {"tail_limit", rat_string(r.tail_limit)},
           {"tail_pass", r.tail_pass}};
    return j.dump();
}

std::string to_json(const EntropyReport& r) {
    json j{{"n", r.n},
           {"entropy", r.entropy},
           {"influence", rat_string(r.influence)},
           {"level_entropy_sum", r.level_entropy_sum},
           {"level_sum_pass", r.level_sum_pass},
           {"per_level_pass", r.per_level_pass},
           {"ei_margin", r.ei_margin},
           {"ei_constant", r.ei_constant}};
    return j.dump();
}

std::string to_json(const ScanReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json jc{{"name", c.name},
                {"asserted", c.asserted},
                {"checked", c.checked},
                {"violations", c.violations}};
        if (c.witness) jc["witness"] = *c.witness;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        checks.push_back(std::move(jc));
    }
    json j{{"n", r.n}, {"functions", r.functions}, {"sampled", r.sampled}, {"checks", checks}};
    return j.dump();
}

}  // namespace cubesense
