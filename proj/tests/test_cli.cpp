#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "doctest.h"
#include "oracle/frozen.hpp"
#include "repulse/cli.hpp"

using namespace repulse;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
    json j() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    int c = run_cli(args, o, e);
    return {c, o.str(), e.str()};
}

// each test case works in its own scratch directory
struct Scratch {
    fs::path old = fs::current_path();
    fs::path dir;
    explicit Scratch(const std::string& name) {
        dir = fs::temp_directory_path() / ("repulse_cli_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
        fs::current_path(dir);
    }
    ~Scratch() {
        fs::current_path(old);
        fs::remove_all(dir);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

double num(const json& j, const char* key) { return std::stod(j.at(key).get<std::string>()); }

}  // namespace

TEST_CASE("salpha") {
    Scratch s("salpha");
    auto r = run({"salpha", "--alpha", "4", "--tol", "1e-12"});
    REQUIRE(r.code == exit_ok);
    json j = r.j();
    CHECK(j.at("alpha") == 4);
    double lo = num(j, "s_lo"), hi = num(j, "s_hi");
    CHECK(lo <= 1.4142135623730950);
    CHECK(1.4142135623730951 <= hi);
    CHECK(hi - lo <= 1e-12);
    for (const char* k : {"s_pow_alpha_lo", "s_pow_alpha_hi", "energy_lo", "energy_hi"}) CHECK(j.at(k).is_string());
    CHECK(num(j, "s_pow_alpha_lo") <= 4.0);
    CHECK(4.0 <= num(j, "s_pow_alpha_hi"));

    REQUIRE(fs::exists("salpha.manifest.json"));
    json m = json::parse(slurp("salpha.manifest.json"));
    CHECK(m.at("command") == "salpha");
    CHECK(m.at("parameters").at("alpha") == 4);
    CHECK(m.at("versions").contains("repulse"));
    CHECK(m.at("outputs").empty());
    CHECK(m.contains("started"));
    CHECK(m.contains("finished"));

    json j12 = run({"salpha", "--alpha", "12"}).j();
    CHECK(num(j12, "s_pow_alpha_lo") >= 19.0);
    CHECK(num(j12, "s_pow_alpha_hi") <= 21.0);

    CHECK(run({"salpha", "--alpha", "7"}).code == exit_invalid);
    CHECK(run({"salpha", "--alpha", "2"}).code == exit_invalid);
    CHECK(run({"salpha", "--alpha", "4", "--tol", "0"}).code == exit_invalid);
    CHECK(run({"salpha"}).code == exit_invalid);
    CHECK(run({"frobnicate"}).code == exit_invalid);
    CHECK(run({"--help"}).code == exit_ok);
}

TEST_CASE("energy, psi, psihat") {
    Scratch s("values");
    auto e = run({"energy", "--alpha", "4", "--t", "1.4142135623730950488"});
    REQUIRE(e.code == exit_ok);
    json j = e.j();
    // lattice sum and closed form overlap
    CHECK(num(j, "energy_lo") <= num(j, "closed_form_hi"));
    CHECK(num(j, "closed_form_lo") <= num(j, "energy_hi"));
    CHECK(num(j, "energy_lo") == doctest::Approx(2.0374002319141));
    CHECK(fs::exists("energy.manifest.json"));
    CHECK(run({"energy", "--alpha", "4", "--t", "-1"}).code == exit_invalid);
    CHECK(run({"energy", "--alpha", "4", "--t", "abc"}).code == exit_invalid);

    json p = run({"psi", "--alpha", "6", "--x", "3"}).j();
    CHECK(num(p, "psi_lo") <= num(p, "F_hi"));
    CHECK(num(p, "F_lo") <= num(p, "psi_hi"));
    CHECK(num(p, "psi_hi") - num(p, "psi_lo") < 1e-9);

    json h = run({"psihat", "--alpha", "4", "--xi", "1.2"}).j();
    CHECK(h.at("psihat_lo") == "0");
    CHECK(h.at("psihat_hi") == "0");
    json h0 = run({"psihat", "--alpha", "4", "--xi", "0.25"}).j();
    CHECK(num(h0, "psihat_lo") > 0.0);
}

TEST_CASE("certify") {
    Scratch s("certify");
    auto all4 = run({"certify", "--alpha", "4", "--inequality", "all", "--out", "c4.json"});
    CHECK(all4.code == exit_ok);
    json c4 = json::parse(slurp("c4.json"));
    REQUIRE(c4.size() == 3);
    for (auto& c : c4) CHECK(c.at("status") == "verified");
    CHECK(all4.j().at("verified") == 3);
    json m = json::parse(slurp("c4.json.manifest.json"));
    CHECK(m.at("outputs") == json::array({"c4.json"}));
    for (auto& f : m.at("outputs")) CHECK(fs::exists(f.get<std::string>()));

    CHECK(run({"certify", "--alpha", "6", "--inequality", "L", "--out", "l6.json"}).code == exit_ok);
    CHECK(run({"certify", "--alpha", "6", "--inequality", "T", "--max-depth", "0", "--out", "t0.json"}).code ==
          exit_inconclusive);
    json t0 = json::parse(slurp("t0.json"));
    CHECK(t0[0].at("status") == "inconclusive");

    CHECK(run({"certify", "--alpha", "6", "--inequality", "psi4"}).code == exit_invalid);
    CHECK(run({"certify", "--alpha", "4", "--inequality", "eta1"}).code == exit_invalid);
    CHECK(run({"certify", "--alpha", "5"}).code == exit_invalid);
    CHECK(run({"certify", "--inequality", "bogus"}).code == exit_invalid);
    CHECK(run({"certify", "--max-depth", "-1"}).code == exit_invalid);

    SUBCASE("default menu") {
        auto r = run({"certify"});
        CHECK(r.code == exit_ok);
        json cs = json::parse(slurp("certificates.json"));
        CHECK(cs.size() == 3 + 5 * 5);
        std::set<int> alphas;
        for (auto& c : cs) alphas.insert(c.at("alpha").get<int>());
        CHECK(alphas == std::set<int>{4, 6, 8, 10, 12, 14});
        auto eta1 = run({"certify", "--inequality", "eta1", "--out", "e1.json"});
        CHECK(eta1.code == exit_ok);
        CHECK(json::parse(slurp("e1.json")).size() == 5);
    }
    SUBCASE("several alphas and threads") {
        auto r = run({"--threads", "3", "certify", "--alpha", "8", "10", "--inequality", "eta2", "--out", "e2.json"});
        CHECK(r.code == exit_ok);
        json cs = json::parse(slurp("e2.json"));
        REQUIRE(cs.size() == 2);
        CHECK(cs[1].at("alpha") == 10);
    }
}

TEST_CASE("simulate") {
    Scratch s("simulate");
    const double s4 = std::sqrt(2.0), s6 = std::stod(frozen::s_alpha.at(6));

    auto r = run({"simulate", "--alpha", "4", "--rho", "8", "--length", "30", "--seed", "7", "--csv", "a.csv", "--svg",
                  "a.svg"});
    REQUIRE(r.code == exit_ok);
    json j = r.j();
    CHECK(j.at("particles") == 240);
    CHECK(j.at("converged") == true);
    CHECK(j.at("clusters").get<int>() >= 19);
    CHECK(j.at("clusters").get<int>() <= 23);
    CHECK(std::fabs(j.at("mean_spacing").get<double>() / s4 - 1) < 0.1);
    long total = 0;
    for (auto& [k, v] : j.at("count_histogram").items()) total += std::stol(k) * v.get<long>();
    CHECK(total == 240);
    json m = json::parse(slurp("a.csv.manifest.json"));
    CHECK(m.at("outputs") == json::array({"a.csv", "a.svg"}));
    CHECK(m.at("parameters").at("seed") == 7);

    SUBCASE("byte-identical reruns") {
        run({"simulate", "--alpha", "4", "--rho", "8", "--length", "30", "--seed", "7", "--csv", "b.csv", "--svg",
             "b.svg", "--threads", "2"});
        CHECK(slurp("a.csv") == slurp("b.csv"));
        CHECK(slurp("a.svg") == slurp("b.svg"));
    }
    SUBCASE("default seed is 7") {
        run({"simulate", "--alpha", "4", "--rho", "8", "--length", "30", "--csv", "d.csv", "--svg", "d.svg"});
        CHECK(slurp("a.csv") == slurp("d.csv"));
    }
    SUBCASE("alpha 6") {
        json k = run({"simulate", "--alpha", "6", "--rho", "10", "--length", "30", "--seed", "1"}).j();
        CHECK(std::fabs(k.at("mean_spacing").get<double>() / s6 - 1) < 0.1);
        CHECK(fs::exists("simulate.csv"));
        CHECK(fs::exists("simulate.svg"));
    }
    SUBCASE("two particles") {
        json k = run({"simulate", "--alpha", "4", "--rho", "0.02", "--length", "100", "--seed", "1"}).j();
        CHECK(k.at("particles") == 2);
        CHECK(k.at("mean_spacing").get<double>() == doctest::Approx(50.0).epsilon(1e-6));
    }
    SUBCASE("seed from the environment") {
        ::setenv("REPULSE_SEED", "3", 1);
        json k = run({"simulate", "--alpha", "4", "--rho", "2", "--length", "5", "--seed", "9"}).j();
        CHECK(k.at("seed") == 3);
        ::setenv("REPULSE_SEED", "three", 1);
        CHECK(run({"simulate", "--alpha", "4", "--rho", "2", "--length", "5"}).code == exit_invalid);
        ::unsetenv("REPULSE_SEED");
    }
    SUBCASE("rounding and failures") {
        auto w = run({"simulate", "--alpha", "4", "--rho", "2.03", "--length", "5"});
        CHECK(w.code == exit_ok);
        CHECK(w.err.find("warning") != std::string::npos);
        CHECK(w.j().at("particles") == 10);
        CHECK(run({"simulate", "--alpha", "4", "--rho", "8", "--length", "30", "--iters", "2"}).code ==
              exit_not_converged);
        CHECK(fs::exists("simulate.csv.manifest.json"));
        CHECK(run({"simulate", "--alpha", "4", "--rho", "0.01", "--length", "10"}).code == exit_invalid);
        CHECK(run({"simulate", "--alpha", "3", "--rho", "1", "--length", "10"}).code == exit_invalid);
    }
}
