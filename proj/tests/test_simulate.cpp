#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracle/frozen.hpp"
#include "oracle/oracle.hpp"
#include "repulse/interval.hpp"
#include "repulse/potential.hpp"
#include "repulse/simulate.hpp"

using namespace repulse;
using oracle::q128;

namespace {

// all images of all pairs, except each particle with itself in the home cell
q128 brute_energy(int a, const std::vector<double>& x, double L) {
    const long K = static_cast<long>(std::ceil(40000.0 / L));
    q128 total = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) {
            q128 d = (q128)x[i] - x[j];
            for (long k = K; k >= 1; --k) total += oracle::f_alpha(a, fabsq(d + k * (q128)L)) + oracle::f_alpha(a, fabsq(d - k * (q128)L));
            if (i != j) total += oracle::f_alpha(a, fabsq(d));
        }
    return total / x.size();
}

std::vector<double> uniform(std::size_t n, double L, unsigned seed) {
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> u(0.0, L);
    std::vector<double> x(n);
    for (double& v : x) v = u(g);
    return x;
}

Configuration config(int a, double L, std::vector<double> x) {
    Configuration c;
    c.alpha = a;
    c.L = L;
    c.positions = std::move(x);
    c.rho = c.positions.size() / L;
    return c;
}

double s_of(int a) { return std::stod(frozen::s_alpha.at(a)); }

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("repulse_test_" + name)).string();
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("real potential") {
    CHECK(f_real(4, 0.0) == 1.0);
    CHECK(f_real(4, 1.0) == 0.5);
    CHECK(f_real(6, 2.0) == doctest::Approx(1.0 / 65));
    CHECK(f_real_prime(4, 1.0) == doctest::Approx(-1.0));
    CHECK(f_real_prime(4, -1.0) == doctest::Approx(1.0));
    CHECK(f_real_prime(6, 0.0) == 0.0);
    CHECK(f_real_prime(200, 1e10) == 0.0);
}

TEST_CASE("periodic energy against brute-force image sums") {
    for (int a : {4, 6, 10})
        for (double L : {1.0, 3.0, 10.0, 30.0}) {
            auto x = uniform(7, L, static_cast<unsigned>(a * 100 + L));
            double e = periodic_energy(config(a, L, x));
            q128 ref = brute_energy(a, x, L);
            CAPTURE(a);
            CAPTURE(L);
            CHECK(std::fabs(e - (double)ref) < 1e-11 * std::max(1.0, (double)ref));
        }
}

TEST_CASE("periodic energy examples") {
    SUBCASE("two antipodal particles") {
        for (double L : {20.0, 50.0, 100.0}) {
            double e = periodic_energy(config(4, L, {0.0, L / 2}));
            double d = 2 * f_real(4, L / 2);
            CHECK(std::fabs(e - d) < f_real(4, L / 2));
        }
    }
    SUBCASE("translation invariance") {
        const double L = 12.5;
        auto x = uniform(20, L, 3);
        double e0 = periodic_energy(config(6, L, x));
        for (double shift : {0.3, 5.0, 12.4}) {
            auto y = x;
            for (double& v : y) v = std::fmod(v + shift, L);
            CHECK(periodic_energy(config(6, L, y)) == doctest::Approx(e0).epsilon(1e-13));
        }
    }
    SUBCASE("explicit cutoff") {
        auto c = config(4, 5.0, uniform(5, 5.0, 9));
        // the two-term remainder drops about 2 sum_{j>=K+1/2} (jL)^-3alpha per pair
        const double far = periodic_energy(c, 40);
        CHECK(std::fabs(periodic_energy(c, 1) - far) < 5 * 2 * std::pow(1.5 * 5.0, -12) * 2.0);
        CHECK(std::fabs(periodic_energy(c, 3) - far) < 1e-13);
        CHECK_THROWS_AS(periodic_energy(c, 0), DomainError);
    }
    SUBCASE("gradient matches differences") {
        const double L = 7.0;
        auto x = uniform(9, L, 5);
        PeriodicPair pp(4, L, PeriodicPair::default_cutoff(L));
        std::vector<double> g;
        energy_and_gradient(pp, x, &g);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double h = 1e-6;
            auto p = x, m = x;
            p[i] += h;
            m[i] -= h;
            double fd = (energy_and_gradient(pp, p, nullptr) - energy_and_gradient(pp, m, nullptr)) / (2 * h);
            CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("clustered configuration") {
    SUBCASE("one per cluster is the spacing-s lattice") {
        auto c = theorem_configuration(4, 1, 8);
        REQUIRE(c.positions.size() == 8);
        for (std::size_t i = 1; i < 8; ++i) CHECK(c.positions[i] - c.positions[i - 1] == doctest::Approx(std::sqrt(2.0)));
    }
    SUBCASE("energy is n times the lattice sum minus the self term") {
        for (int a : {4, 6, 8})
            for (int n : {1, 2, 3, 4}) {
                auto c = theorem_configuration(a, n, 8);
                CHECK(c.positions.size() == std::size_t(8 * n));
                CHECK(c.rho * c.L == doctest::Approx(8.0 * n).epsilon(1e-15));
                q128 s = c.L / 8;
                q128 ref = n * oracle::lattice_energy(a, s) / s - 1;
                CHECK(std::fabs(c.energy_per_particle - (double)ref) < 1e-12);
                // same bookkeeping through the interval lattice energy
                Interval t(c.L / 8);
                Interval e = Interval(n) * lattice_energy(a, t).total() / t - Interval(1);
                CHECK(e.lo - 1e-12 <= c.energy_per_particle);
                CHECK(c.energy_per_particle <= e.hi + 1e-12);
            }
    }
    SUBCASE("single-particle perturbations never lower the energy") {
        for (int a : {4, 6})
            for (int n : {1, 2, 3, 4}) {
                auto c = theorem_configuration(a, n, 12);
                for (std::size_t i = 0; i < c.positions.size(); i += n)
                    for (double d : {-0.05, 0.05}) {
                        auto p = c;
                        p.positions[i] = std::fmod(p.positions[i] + d + p.L, p.L);
                        CHECK(periodic_energy(p) >= c.energy_per_particle);
                    }
            }
    }
    CHECK_THROWS_AS(theorem_configuration(4, 0, 8), DomainError);
    CHECK_THROWS_AS(theorem_configuration(4, 2, 1), DomainError);
    CHECK_THROWS_AS(theorem_configuration(5, 2, 8), DomainError);
}

TEST_CASE("relaxation") {
    SUBCASE("two particles end half a cell apart") {
        auto r = relax(4, 0.02, 100.0, 1);
        REQUIRE(r.config.positions.size() == 2);
        CHECK(r.converged);
        CHECK(r.config.positions[1] - r.config.positions[0] == doctest::Approx(50.0).epsilon(1e-6));
    }
    SUBCASE("bookkeeping and monotone trace") {
        auto r = relax(6, 2.0, 11.0, 4);
        CHECK(r.config.positions.size() == 22);
        CHECK(r.config.rho * r.config.L == doctest::Approx(22.0));
        CHECK(std::is_sorted(r.config.positions.begin(), r.config.positions.end()));
        for (double p : r.config.positions) CHECK((p >= 0.0 && p < 11.0));
        REQUIRE(r.energy_trace.size() >= 2);
        for (std::size_t i = 1; i < r.energy_trace.size(); ++i) CHECK(r.energy_trace[i] <= r.energy_trace[i - 1]);
        CHECK(r.energy_trace.back() == r.config.energy_per_particle);
        CHECK(r.config.energy_per_particle == doctest::Approx(periodic_energy(r.config)).epsilon(1e-12));
        CHECK(r.grad_max <= RelaxOptions{}.grad_tol);
    }
    SUBCASE("seed determinism, thread independence") {
        RelaxOptions one, four;
        four.threads = 4;
        auto a = relax(4, 8.0, 10.0, 11, one);
        auto b = relax(4, 8.0, 10.0, 11, one);
        auto c = relax(4, 8.0, 10.0, 11, four);
        CHECK(a.config.positions == b.config.positions);
        CHECK(a.config.positions == c.config.positions);
        CHECK(a.energy_trace == c.energy_trace);
        CHECK(a.config.seed == 11);
        auto d = relax(4, 8.0, 10.0, 12, one);
        CHECK(a.config.positions != d.config.positions);
    }
    SUBCASE("non-convergence is flagged") {
        RelaxOptions o;
        o.iters = 1;
        auto r = relax(4, 8.0, 30.0, 7, o);
        CHECK_FALSE(r.converged);
        CHECK(r.grad_max > o.grad_tol);
        CHECK(r.iterations == 1);
    }
    SUBCASE("basin hopping never ends higher") {
        RelaxOptions o;
        o.basin_hops = 3;
        auto plain = relax(4, 4.0, 12.0, 3);
        auto hop = relax(4, 4.0, 12.0, 3, o);
        CHECK(hop.config.energy_per_particle <= plain.config.energy_per_particle);
    }
    SUBCASE("invalid input") {
        CHECK_THROWS_AS(relax(4, 8.0, 30.1, 1), DomainError);
        CHECK_THROWS_AS(relax(5, 8.0, 30.0, 1), DomainError);
        CHECK_THROWS_AS(relax(4, -1.0, 30.0, 1), DomainError);
        RelaxOptions o;
        o.iters = 0;
        CHECK_THROWS_AS(relax(4, 8.0, 30.0, 1, o), DomainError);
    }
}

TEST_CASE("relaxed energies respect the clustered lower bound") {
    for (int a : {4, 6})
        for (int n : {2, 3, 4}) {
            auto th = theorem_configuration(a, n, 12);
            for (unsigned seed = 1; seed <= 5; ++seed) {
                auto r = relax(a, n / s_of(a), th.L, seed);
                CAPTURE(a);
                CAPTURE(n);
                CAPTURE(seed);
                CHECK(r.config.positions.size() == th.positions.size());
                CHECK(r.config.energy_per_particle >= th.energy_per_particle - 1e-9);
            }
        }
}

TEST_CASE("cluster detection") {
    SUBCASE("clustered lattice") {
        auto c = theorem_configuration(4, 3, 10);
        auto rep = detect_clusters(c, s_of(4) / 2);
        REQUIRE(rep.clusters.size() == 10);
        REQUIRE(rep.mean_spacing);
        CHECK(*rep.mean_spacing == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(rep.spacing_cv < 1e-12);
        CHECK(rep.count_histogram == std::map<long, long>{{3, 10}});
    }
    SUBCASE("uniform lattice with a small threshold") {
        std::vector<double> x;
        for (int i = 0; i < 16; ++i) x.push_back(i * 0.5);
        auto rep = detect_clusters(config(4, 8.0, x), 0.4);
        CHECK(rep.clusters.size() == 16);
        CHECK(rep.count_histogram == std::map<long, long>{{1, 16}});
    }
    SUBCASE("one cluster has no spacing") {
        auto rep = detect_clusters(config(4, 10.0, {4.9, 5.0, 5.1}), 1.0);
        REQUIRE(rep.clusters.size() == 1);
        CHECK(rep.clusters[0].center == doctest::Approx(5.0));
        CHECK_FALSE(rep.mean_spacing);
    }
    SUBCASE("cluster across the cell boundary") {
        auto rep = detect_clusters(config(4, 10.0, {0.1, 5.0, 9.9}), 1.0);
        REQUIRE(rep.clusters.size() == 2);
        CHECK(rep.clusters[0].center == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(rep.clusters[0].count == 2);
        CHECK(*rep.mean_spacing == doctest::Approx(5.0));
    }
    SUBCASE("counts add up, centers sorted and distinct") {
        auto r = relax(4, 6.0, 15.0, 2);
        auto rep = detect_clusters(r.config, s_of(4) / 2);
        long total = 0;
        for (auto& c : rep.clusters) total += c.count;
        CHECK(total == 90);
        for (std::size_t i = 1; i < rep.clusters.size(); ++i) CHECK(rep.clusters[i - 1].center < rep.clusters[i].center);
    }
    CHECK_THROWS_AS(detect_clusters(config(4, 1.0, {}), 0.0), DomainError);
    CHECK(detect_clusters(config(4, 1.0, {}), 0.5).clusters.empty());
}

TEST_CASE("cluster statistics of relaxed cells") {
    SUBCASE("alpha 4, rho 8") {
        auto r = relax(4, 8.0, 30.0, 7);
        CHECK(r.converged);
        auto rep = detect_clusters(r.config, s_of(4) / 2);
        CHECK(rep.clusters.size() >= 19);
        CHECK(rep.clusters.size() <= 23);
        REQUIRE(rep.mean_spacing);
        CHECK(std::fabs(*rep.mean_spacing / std::sqrt(2.0) - 1) < 0.1);
    }
    SUBCASE("alpha 6, rho 10") {
        auto r = relax(6, 10.0, 30.0, 1);
        CHECK(r.converged);
        auto rep = detect_clusters(r.config, s_of(6) / 2);
        REQUIRE(rep.mean_spacing);
        CHECK(std::fabs(*rep.mean_spacing / s_of(6) - 1) < 0.1);
    }
}

TEST_CASE("export") {
    SUBCASE("csv round trip") {
        auto r = relax(4, 4.0, 5.0, 8);
        std::string p = tmp_path("roundtrip.csv");
        write_csv(r.config, p);
        std::ifstream in(p);
        std::string header;
        std::getline(in, header);
        CHECK(header == "position");
        CHECK(read_csv(p) == r.config.positions);
        std::filesystem::remove(p);
    }
    SUBCASE("one circle per cluster") {
        Configuration c = config(4, 30.0, {});
        ClusterReport rep;
        for (int i = 0; i < 23; ++i) rep.clusters.push_back({i * 30.0 / 23, 10});
        std::string svg = render_svg(c, rep);
        CHECK(count_of(svg, "<circle") == 23);
        CHECK(svg.find("width=\"900\" height=\"120\" viewBox=\"-15 -2 30 4\"") != std::string::npos);
        CHECK(svg.find("<text") != std::string::npos);
        CHECK(svg.find("r=\"0.316228\"") != std::string::npos);
    }
    SUBCASE("empty configuration gives an axis only") {
        std::string svg = render_svg(config(4, 10.0, {}), ClusterReport{});
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(svg.find("</svg>") != std::string::npos);
        CHECK(count_of(svg, "<circle") == 0);
        CHECK(count_of(svg, "<line") >= 2);
    }
    SUBCASE("files on disk") {
        auto c = theorem_configuration(4, 2, 6);
        auto rep = detect_clusters(c, s_of(4) / 2);
        std::string pc = tmp_path("fig.csv"), ps = tmp_path("fig.svg");
        export_files(c, rep, pc, ps);
        std::ifstream in(ps);
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(count_of(ss.str(), "<circle") == 6);
        CHECK(read_csv(pc).size() == 12);
        std::filesystem::remove(pc);
        std::filesystem::remove(ps);
        CHECK_THROWS(write_csv(c, "/nonexistent-dir/x.csv"));
    }
}
