#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cubesense/boolean_function.hpp"
#include "cubesense/cli.hpp"
#include "cubesense/families.hpp"
#include "cubesense/parallel.hpp"

using namespace cubesense;
using json = nlohmann::json;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunResult r;
    r.code = cli::execute(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace

TEST_CASE("analyze over a family and over a table file") {
    const auto r = run({"analyze", "--family", "parity:3"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["s"] == 3);
    CHECK(j["deg"] == 3);
    CHECK(j["dt"] == 3);
    CHECK(j["ts"] == 3);
    CHECK(j["cdim"] == 3);
    CHECK(j["invariants_ok"] == true);

    const std::string path = "cli_table_test.txt";
    write_table_file(path, and_fn(2));
    const auto rt = run({"analyze", "--table", path});
    CHECK(rt.code == 0);
    CHECK(json::parse(rt.out)["s"] == 2);
    std::remove(path.c_str());
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"analyze"}).code == 2);  // no input source
    CHECK(run({"analyze", "--family", "nosuch:1"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"walk", "--family", "parity:3", "--kind", "bogus"}).code == 2);
    CHECK(run({"restrict", "--family", "parity:3", "-k", "1", "--mode", "sample", "--count",
               "10"})
              .code == 2);  // sampling without a seed
    // capacity: the 3n walk tops out at 12 variables
    CHECK(run({"walk", "--family", "parity:13", "--kind", "short"}).code == 2);
}

TEST_CASE("moments subcommand emits the report schema") {
    const auto r = run({"moments", "--family", "and:3", "-k", "3"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["n"] == 3);
    CHECK(j["k"] == 3);
    CHECK(j["Ik"] == "27/8");
    CHECK(j["Iffk"] == "3/8");
    CHECK(j["sk"] == "15/4");
    CHECK(j["sffk"] == "3/4");
}

TEST_CASE("bounds subcommand emits rows and CSV") {
    const auto r = run({"bounds", "--family", "and:2", "-k", "1", "-j", "1", "--theorem", "sk"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["rows"][0]["lower"] == "1/2");
    CHECK(j["rows"][0]["observed"] == "1/2");
    CHECK(j["rows"][0]["upper"] == "1/1");

    const auto c = run({"bounds", "--family", "and:2", "-k", "1", "-j", "1", "--theorem", "sk",
                        "--csv"});
    CHECK(c.code == 0);
    CHECK(c.out.rfind("n,k,j,measure,lower,observed,upper,pass\n", 0) == 0);
    CHECK(c.out.find("2,1,1,sk,1/2,1/2,1/1,true") != std::string::npos);
}

TEST_CASE("scan subcommand asserts the core checks") {
    const auto r = run({"scan", "-n", "3", "--checks", "core"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["functions"] == 256);
    for (const auto& c : j["checks"])
        if (c["asserted"] == true) CHECK(c["violations"] == 0);
}

TEST_CASE("learn subcommand") {
    const auto r = run({"learn", "--family", "parity:2", "--degree", "2", "--samples", "200",
                        "--seed", "5", "--eps", "0.01"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["error"] == "0/1");
    CHECK(j["pass"] == true);
}

TEST_CASE("identical argv and seeds give byte-identical output across workers") {
    const std::vector<std::string> cases[] = {
        {"bounds", "--family", "random:4,11", "--replicate", "40", "--max-k", "3", "--theorem",
         "all"},
        {"walk", "--family", "random:4,7", "--kind", "short", "--replicate", "50"},
        {"encode", "--family", "random:4,3", "-k", "2", "--replicate", "25"},
        {"learn", "--family", "address_tree:7", "--degree", "6", "--samples", "20000", "--seed",
         "42", "--eps", "1/10"},
        {"scan", "-n", "3", "--checks", "all"},
    };
    for (const auto& args : cases) {
        set_worker_count(1);
        const auto one = run(args);
        set_worker_count(8);
        const auto eight = run(args);
        set_worker_count(0);
        CHECK(one.code == eight.code);
        CHECK(one.out == eight.out);
        const auto again = run(args);
        CHECK(again.out == one.out);
    }
}

TEST_CASE("pretty output renders flat key-value lines") {
    const auto r = run({"analyze", "--family", "parity:2", "--pretty"});
    CHECK(r.code == 0);
    CHECK(r.out.find("s = 2") != std::string::npos);
    CHECK(r.out.find('{') == std::string::npos);
}

TEST_CASE("out flag writes the report to a file") {
    const std::string path = "cli_out_test.json";
    const auto r = run({"analyze", "--family", "parity:2", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream is(path);
    json j;
    is >> j;
    CHECK(j["s"] == 2);
    std::remove(path.c_str());
}

TEST_CASE("walk and encoding JSON schemas") {
    const auto w = run({"walk", "--family", "parity:2", "--kind", "short"});
    CHECK(w.code == 0);
    const json jw = json::parse(w.out);
    CHECK(jw["walk"].contains("start"));
    CHECK(jw["walk"]["flips"].is_array());
    CHECK(jw["proper"] == true);

    const auto e = run({"encode", "--family", "parity:2", "--live", "1,2", "--point", "0"});
    CHECK(e.code == 0);
    const json je = json::parse(e.out);
    CHECK(je["v0"] == 0);
    CHECK(je["K"] == json::array({2}));
    CHECK(je["b"].get<std::string>().size() == 4);
    CHECK(je["c"].get<std::string>().size() == 2);
    CHECK(je["beta"].is_array());
    CHECK(je["roundtrip_ok"] == true);

    CHECK(run({"encode", "--family", "parity:2", "--live", "1,5", "--point", "0"}).code == 2);
}

TEST_CASE("named family suite filters by arity") {
    const auto s9 = cli::named_family_suite(9);
    for (const auto& name : s9) CHECK(make_family(parse_family(name)).arity() <= 9);
    CHECK(s9.size() > 10);
    const auto s4 = cli::named_family_suite(4);
    CHECK(s4.size() < s9.size());
}
