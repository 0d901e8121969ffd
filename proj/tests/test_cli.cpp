#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vortexbound/cli.hpp"
#include "vortexbound/config.hpp"
#include "vortexbound/errors.hpp"

using namespace vortexbound;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "vortexbound_test_cli";
    fs::create_directories(dir);
    return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("exit codes") {
    CHECK(call({}).code == cli::kValidation);
    CHECK(call({"--help"}).code == cli::kOk);
    CHECK(call({"spectrum", "--gamma2", "-1"}).code == cli::kValidation);
    CHECK(call({"spectrum", "--gamma2", "abc"}).code == cli::kValidation);
    CHECK(call({"spectrum", "--gamma2", "6", "--method", "fast"}).code == cli::kValidation);
    CHECK(call({"nosuch"}).code == cli::kValidation);
    CHECK(call({"--tol", "0.5", "specfun-check"}).code == cli::kValidation);
    const Result r = call({"presets", "--name", "nothing"});
    CHECK(r.code == cli::kValidation);
    CHECK(r.err.find("error:") == 0);
    CHECK(r.out.empty());
}

TEST_CASE("accuracy failures map to the solver exit code") {
    const Result r = call({"specfun-check", "--lmin", "80", "--lmax", "80", "--n", "1"});
    CHECK(r.code == cli::kSolver);
    CHECK(r.err.find("accuracy error") == 0);
}

TEST_CASE("csv headers") {
    Result r = call({"spectrum", "--gamma2", "6", "--lmax", "2", "--pmax", "2", "--method", "closed"});
    REQUIRE(r.code == 0);
    CHECK(first_line(r.out) == "gamma2,ell,p,class,eps,q,E_over_n0g12,E_over_hbar_omega,physical");
    CHECK(r.out.find(",deep,") != std::string::npos);
    r = call({"profile", "--gamma2", "6", "--n", "10"});
    REQUIRE(r.code == 0);
    CHECK(first_line(r.out) == "r,phi_variational,phi_ode,veff_l0,veff_l1,veff_l2,veff_l3");
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 11);
    r = call({"onset-table", "--lmax", "0", "--pmax", "1"});
    REQUIRE(r.code == 0);
    CHECK(first_line(r.out) == "ell,p,c,ln_inv_r,residual");
    r = call({"regime-diagram", "--nx", "2", "--ny", "2"});
    REQUIRE(r.code == 0);
    CHECK(first_line(r.out) == "r_over_xi,gamma2,n_states");
    r = call({"specfun-check", "--n", "3"});
    REQUIRE(r.code == 0);
    CHECK(first_line(r.out) == "lambda,K,Kprime,K1,K1_asym");
    r = call({"compare", "--gamma2", "2", "--radius", "60", "--lmax", "0"});
    REQUIRE(r.code == 0);
    CHECK(first_line(r.out) == "gamma2,ell,p,eps_numeric,eps_exactmatch,eps_closedform");
}

TEST_CASE("sweep") {
    const Result r = call({"spectrum", "--sweep", "2:6:3", "--lmax", "0", "--pmax", "0", "--method", "closed"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\n2,0,0,") != std::string::npos);
    CHECK(r.out.find("\n4,0,0,") != std::string::npos);
    CHECK(r.out.find("\n6,0,0,") != std::string::npos);
    CHECK(call({"spectrum", "--sweep", "2:6"}).code == cli::kValidation);
}

TEST_CASE("json and toml configs are equivalent to flags") {
    const Result flags = call({"spectrum", "--gamma2", "4", "--lmax", "1", "--pmax", "3", "--method", "closed"});
    REQUIRE(flags.code == 0);
    const fs::path js = scratch("cfg.json");
    write(js, R"({"gamma2": 4, "lmax": 1, "pmax": 3, "method": "closed"})");
    const fs::path tm = scratch("cfg.toml");
    write(tm, "# depth\ngamma2 = 4\nlmax = 1\npmax = 3\nmethod = \"closed\"\n");
    CHECK(call({"--config", js.string(), "spectrum"}).out == flags.out);
    CHECK(call({"--config", tm.string(), "spectrum"}).out == flags.out);
    // Command-line flags win over the file.
    const Result over = call({"--config", js.string(), "spectrum", "--pmax", "1"});
    CHECK(over.out == call({"spectrum", "--gamma2", "4", "--lmax", "1", "--pmax", "1", "--method", "closed"}).out);
}

TEST_CASE("config errors") {
    const fs::path bad = scratch("bad.json");
    write(bad, R"({"gamma2": 4, "colour": "red"})");
    const Result r = call({"--config", bad.string(), "spectrum"});
    CHECK(r.code == cli::kValidation);
    CHECK(r.err.find("colour") != std::string::npos);
    write(bad, "{not json");
    CHECK(call({"--config", bad.string(), "spectrum"}).code == cli::kValidation);
    CHECK(call({"--config", scratch("missing.json").string(), "spectrum"}).code == cli::kValidation);
    CHECK_THROWS_AS(parse_config_json(R"({"a": {"b": 1}})"), ValidationError);
    CHECK_THROWS_AS(parse_config_toml("[table]\na = 1\n"), ValidationError);
    const ConfigValues v = parse_config_toml("a = 1.5 # note\nb = 'x'\nc = true\n");
    CHECK(v.at("a") == "1.5");
    CHECK(v.at("b") == "x");
    CHECK(v.at("c") == "true");
}

TEST_CASE("--out writes the data file") {
    const fs::path out = scratch("onset.csv");
    fs::remove(out);
    const Result r = call({"--out", out.string(), "onset-table", "--lmax", "0", "--pmax", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == call({"onset-table", "--lmax", "0", "--pmax", "0"}).out);
}

TEST_CASE("presets") {
    Result r = call({"presets"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.is_array());
    CHECK(doc.size() >= 2);
    for (const auto& e : doc) {
        for (const char* k : {"name", "description", "m1", "m2", "mass_ratio"}) CHECK(e.contains(k));
    }
    r = call({"presets", "--name", "yb7li", "--g11", "1e-40", "--g12", "5e-41", "--n0", "1e14"});
    REQUIRE(r.code == 0);
    doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.size() == 1);
    for (const char* k : {"xi", "mu", "gamma2", "kappa2", "zeta", "xi_hat", "omega"}) CHECK(doc[0]["scales"].contains(k));
    CHECK(doc[0].contains("decoupling_ratio"));
    CHECK(doc[0].contains("n0g12_nK"));
    CHECK(call({"presets", "--name", "yb7li", "--g11", "1e-40"}).code == cli::kValidation);
}
