#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "bilem/field_csv.hpp"
#include "bilem/radial_ode.hpp"

// Integration tests drive the installed binary exactly the way a user
// would: spawn, capture, parse, and validate against the shipped schemas.

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(BILEM_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    const int rc = pclose(pipe);
    res.status = WEXITSTATUS(rc);
    return res;
}

// Minimal structural validator for the subset of JSON Schema the shipped
// files use: type, required, properties, items, enum, oneOf.
bool validates(const json& value, const json& schema);

bool type_matches(const json& value, const std::string& t) {
    if (t == "object") return value.is_object();
    if (t == "array") return value.is_array();
    if (t == "string") return value.is_string();
    if (t == "boolean") return value.is_boolean();
    if (t == "integer") return value.is_number_integer();
    if (t == "number") return value.is_number();
    return false;
}

bool validates(const json& value, const json& schema) {
    if (schema.contains("oneOf")) {
        int hits = 0;
        for (const auto& alt : schema["oneOf"])
            if (validates(value, alt)) ++hits;
        return hits == 1;
    }
    if (schema.contains("type") && !type_matches(value, schema["type"].get<std::string>()))
        return false;
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& e : schema["enum"]) found = found || e == value;
        if (!found) return false;
    }
    if (schema.contains("required"))
        for (const auto& k : schema["required"])
            if (!value.contains(k.get<std::string>())) return false;
    if (schema.contains("properties"))
        for (const auto& [k, sub] : schema["properties"].items())
            if (value.contains(k) && !validates(value.at(k), sub)) return false;
    if (schema.contains("items") && value.is_array())
        for (const auto& item : value)
            if (!validates(item, schema["items"])) return false;
    return true;
}

json load_schema(const std::string& name) {
    const fs::path path = fs::path(BILEM_SOURCE_DIR) / "docs" / "schemas" / name;
    std::ifstream is(path);
    REQUIRE(is.good());
    return json::parse(is);
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("bilem_test_" + name);
}

}  // namespace

TEST_CASE("exponents: schema-valid JSON, sentinel serialization, determinism") {
    const RunResult r = run_cli("exponents --n 13 --p 3");
    REQUIRE(r.status == 0);
    const json v = json::parse(r.out);
    CHECK(validates(v, load_schema("exponents.schema.json")));
    CHECK(v["K0"] == 504.0);
    CHECK(v["minStableDimension"] == 19);
    CHECK(v["singularStable"] == false);
    CHECK(v["stableByExponent"] == false);
    CHECK(v["stableByDimension"] == false);

    const json inf = json::parse(run_cli("exponents --n 12 --p 5").out);
    CHECK(inf["pC"] == "inf");

    // byte-identical repeats
    CHECK(run_cli("exponents --n 13 --p 3").out == r.out);

    const RunResult csv = run_cli("exponents --n 13 --p 3 --csv");
    REQUIRE(csv.status == 0);
    CHECK(csv.out.rfind("name,value\n", 0) == 0);
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run_cli("exponents --n 13").status == 2);
    CHECK(run_cli("").status == 2);
    CHECK(run_cli("frobnicate").status == 2);
}

TEST_CASE("domain errors exit with status 1") {
    CHECK(run_cli("shoot --n 13 --p 1.5 --a 1").status == 1);  // subcritical
    CHECK(run_cli("energy --input /nonexistent.csv --radii 1:2:10").status == 1);
}

TEST_CASE("shoot -> energy -> pohozaev -> blowdown pipeline over CSV") {
    const fs::path field = temp_file("field.csv");
    const RunResult shoot =
        run_cli("shoot --n 13 --p 3 --a 1 --field-csv " + field.string());
    REQUIRE(shoot.status == 0);
    const json sj = json::parse(shoot.out);
    CHECK(validates(sj, load_schema("shoot-summary.schema.json")));
    CHECK(std::abs(sj["decayExponent"].get<double>() + 2.0) < 0.05);
    CHECK(sj["finalEvent"] == "none");

    {
        std::ifstream is(field);
        std::string first;
        std::getline(is, first);
        CHECK(first.rfind("# bilem-field n=13 p=3", 0) == 0);
        std::string header;
        std::getline(is, header);
        CHECK(header == "r,u,du,v,dv");
    }

    const fs::path eprof = temp_file("eprof.csv");
    const RunResult energy = run_cli("energy --input " + field.string() +
                                     " --radii log:0.5:20:60 --out-csv " + eprof.string());
    REQUIRE(energy.status == 0);
    const json ej = json::parse(energy.out);
    CHECK(validates(ej, load_schema("energy-verdict.schema.json")));
    CHECK(ej["monotone"] == true);
    {
        std::ifstream is(eprof);
        std::string header;
        std::getline(is, header);
        CHECK(header == "r,E,dE,lowerBound");
    }

    const RunResult poho = run_cli("pohozaev --input " + field.string() + " --R 1,5,20");
    REQUIRE(poho.status == 0);
    const json pj = json::parse(poho.out);
    CHECK(validates(pj, load_schema("pohozaev-summary.schema.json")));
    CHECK(pj["maxRelative"].get<double>() <= 1e-6);

    const RunResult blow =
        run_cli("blowdown --input " + field.string() + " --lambdas 0.7,1.9 --r1 1 --r2 2");
    REQUIRE(blow.status == 0);
    const json bj = json::parse(blow.out);
    CHECK(validates(bj, load_schema("blowdown-summary.schema.json")));
    CHECK(bj["maxScalingError"].get<double>() <= 1e-6);

    fs::remove(field);
    fs::remove(eprof);
}

TEST_CASE("negative-exponent field CSV drives the energy variant") {
    // hand the profile over as a file, the way a user would supply one
    const fs::path field = temp_file("neg.csv");
    {
        using namespace bilem;
        const RadialField hom = negative_homogeneous_field(
            {7, 3.0}, std::vector<double>{[] {
                std::vector<double> g;
                for (int i = 0; i < 400; ++i)
                    g.push_back(0.05 * std::pow(10.0 / 0.05, i / 399.0));
                return g;
            }()});
        write_field_csv(field.string(), hom);
    }
    const RunResult r =
        run_cli("energy --input " + field.string() + " --radii log:0.1:8:80 --negative-exponent");
    REQUIRE(r.status == 0);
    const json v = json::parse(r.out);
    CHECK(v["variant"] == "negative-exponent");
    CHECK(v["monotone"] == true);
    fs::remove(field);
}

TEST_CASE("bad option values exit with the usage status") {
    CHECK(run_cli("shoot --n 13 --p 3 --a 1 --tol -1").status == 2);
    CHECK(run_cli("branch --n 6 --p 3 --grid 2").status == 2);
}

TEST_CASE("branch summary validates and finds the fold") {
    const RunResult r = run_cli("branch --n 6 --p 3 --grid 60");
    REQUIRE(r.status == 0);
    const json v = json::parse(r.out);
    CHECK(validates(v, load_schema("branch-summary.schema.json")));
    CHECK(v["foldIndex"].get<int>() > 0);
    CHECK(v["lambdaStar"].get<double>() > 0.0);
    CHECK(v["stalled"] == false);
}

TEST_CASE("branch exports a field that pohozaev consumes with the adjusted potential") {
    const fs::path field = temp_file("navier_field.csv");
    const RunResult br =
        run_cli("branch --n 6 --p 3 --grid 512 --field-csv " + field.string());
    REQUIRE(br.status == 0);
    {
        std::ifstream is(field);
        std::string meta;
        std::getline(is, meta);
        CHECK(meta.find("kind=navier") != std::string::npos);
        CHECK(meta.find("lambda=") != std::string::npos);
    }
    const RunResult poho = run_cli("pohozaev --input " + field.string() + " --R 0.5,1");
    REQUIRE(poho.status == 0);
    const json pj = json::parse(poho.out);
    // second-order discretization: well under 1e-5 at this grid
    CHECK(pj["maxRelative"].get<double>() <= 1e-5);
    fs::remove(field);
}

TEST_CASE("verify-all passes at (13, 3) and prints one line per check") {
    const RunResult r = run_cli("verify-all --n 13 --p 3");
    CHECK(r.status == 0);
    int lines = 0, passes = 0;
    for (std::size_t pos = 0; pos < r.out.size();) {
        const std::size_t next = r.out.find('\n', pos);
        if (next == std::string::npos) break;
        const std::string line = r.out.substr(pos, next - pos);
        if (!line.empty()) {
            ++lines;
            if (line.rfind("PASS", 0) == 0) ++passes;
        }
        pos = next + 1;
    }
    CHECK(lines == 8);
    CHECK(passes == 8);
}
