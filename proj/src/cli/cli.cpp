#include "repulse/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include "repulse/auxfn.hpp"
#include "repulse/certify.hpp"
#include "repulse/certify_json.hpp"
#include "repulse/interval.hpp"
#include "repulse/potential.hpp"
#include "repulse/simulate.hpp"

#ifndef REPULSE_VERSION
#define REPULSE_VERSION "unknown"
#endif

namespace repulse {

namespace {

using json = nlohmann::ordered_json;

const std::vector<int> kDefaultMenu = {4, 6, 8, 10, 12, 14};
const std::vector<std::string> kInequalities = {"T", "L", "psi4", "eta0", "eta1", "eta2", "w", "all"};

std::string utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << body;
    if (!f.flush()) throw std::runtime_error("write failed for " + path);
}

struct Manifest {
    explicit Manifest(std::string c) : command(std::move(c)) {}

    std::string command;
    json parameters = json::object();
    std::vector<std::string> outputs;
    std::string started = utc_now();

    void write(const std::string& path) const {
        json j;
        j["command"] = command;
        j["parameters"] = parameters;
        j["versions"] = {{"repulse", REPULSE_VERSION}};
        j["outputs"] = outputs;
        j["started"] = started;
        j["finished"] = utc_now();
        write_text(path, j.dump(2) + "\n");
    }
};

void put(json& j, const std::string& key, const Interval& v) {
    j[key + "_lo"] = fmt_double(v.lo);
    j[key + "_hi"] = fmt_double(v.hi);
}

Interval positive_decimal(const std::string& s, const char* what) {
    Interval v = decimal(s);
    if (!(v.lo > 0.0)) throw DomainError(std::string(what) + " must be positive");
    return v;
}

PotentialContext context_for(int alpha) {
    require_even_alpha(alpha);
    return alpha == 4 ? alpha4_context() : solve_s_alpha(alpha);
}

bool applicable(const std::string& which, int alpha) {
    if (which == "w" || which == "psi4") return alpha == 4;
    if (which == "L" || which == "eta0" || which == "eta1" || which == "eta2") return alpha >= 6;
    return alpha >= 4;
}

std::vector<Certificate> certify_named(const std::string& which, int alpha, const BnbPolicy& p) {
    require_even_alpha(alpha);
    if (!applicable(which, alpha))
        throw DomainError(which + (alpha == 4 ? " is not part of the alpha = 4 proof" : " applies to alpha = 4 only"));
    if (which == "all") return certify_all(alpha, p);
    if (which == "w") return {certify_w_inequality(Interval((1.0 - alpha4_context().F1).lo), p)};
    if (which == "psi4") return {certify_psi4_le_F4(p)};
    if (which == "T") return {alpha >= 12 ? certify_T_large(alpha, p) : certify_T(context_for(alpha), p)};
    if (which == "L") return {alpha >= 12 ? certify_L_large(alpha, p) : certify_L(context_for(alpha), p)};
    if (which == "eta0") return {alpha >= 12 ? certify_eta0_large(alpha, p) : certify_eta0(context_for(alpha), p)};
    if (which == "eta1") return {alpha > 1000 ? certify_eta1_large(alpha, p) : certify_eta1(context_for(alpha), p)};
    // eta2
    if (alpha >= 16) {
        Certificate c = certify_allthestars_large(alpha, p);
        c.inequality_id = InequalityId::eta_ge2;
        return {c};
    }
    return {certify_eta_ge2(context_for(alpha), p)};
}

int exit_for(const std::vector<Certificate>& cs) {
    bool inconclusive = false;
    for (const Certificate& c : cs) {
        if (c.status == Status::failed) return exit_failed;
        if (c.status == Status::inconclusive) inconclusive = true;
    }
    return inconclusive ? exit_inconclusive : exit_ok;
}

std::string sibling_manifest(const std::string& output) { return output + ".manifest.json"; }

struct Options {
    unsigned threads = 1;
    std::string manifest;

    int alpha = 0;
    double tol = 1e-12;
    long N = 0;
    std::string t, x, xi;

    std::vector<int> alphas;
    std::string inequality = "all";
    int max_depth = BnbPolicy{}.max_depth;
    std::int64_t budget = BnbPolicy{}.budget;
    std::string out = "certificates.json";

    double rho = 0.0, length = 0.0;
    std::uint64_t seed = 7;
    long iters = RelaxOptions{}.iters;
    double grad_tol = RelaxOptions{}.grad_tol;
    int basin_hops = 0;
    std::optional<double> gap;
    std::string csv = "simulate.csv", svg = "simulate.svg";
};

int cmd_salpha(const Options& o, std::ostream& out) {
    Manifest m{"salpha"};
    m.parameters = {{"alpha", o.alpha}, {"tol", fmt_double(o.tol)}};
    if (!(o.tol > 0.0)) throw DomainError("tol must be positive");
    require_even_alpha(o.alpha);
    PotentialContext ctx = solve_s_alpha(o.alpha, o.tol);
    Interval e = lattice_energy(o.alpha, ctx.s_alpha).total();
    json j;
    j["alpha"] = o.alpha;
    put(j, "s", ctx.s_alpha);
    put(j, "s_pow_alpha", ctx.s_pow_alpha);
    put(j, "energy", e);
    out << j.dump(2) << "\n";
    m.write(o.manifest.empty() ? "salpha.manifest.json" : o.manifest);
    return exit_ok;
}

int cmd_energy(const Options& o, std::ostream& out) {
    Manifest m{"energy"};
    const long N = o.N > 0 ? o.N : 64;
    m.parameters = {{"alpha", o.alpha}, {"t", o.t}, {"N", N}};
    require_even_alpha(o.alpha);
    Interval t = positive_decimal(o.t, "t");
    LatticeEnergyTerms terms = lattice_energy(o.alpha, t, N);
    json j;
    j["alpha"] = o.alpha;
    j["t"] = o.t;
    j["N"] = N;
    put(j, "energy", terms.total());
    put(j, "head", terms.head);
    put(j, "tail", terms.tail);
    if (o.alpha == 4) put(j, "closed_form", closed_form_energy_alpha4(t));
    out << j.dump(2) << "\n";
    m.write(o.manifest.empty() ? "energy.manifest.json" : o.manifest);
    return exit_ok;
}

int cmd_psi(const Options& o, std::ostream& out, bool hat) {
    Manifest m{hat ? "psihat" : "psi"};
    const long N = o.N > 0 ? o.N : 256;
    const std::string& arg = hat ? o.xi : o.x;
    m.parameters = {{"alpha", o.alpha}, {hat ? "xi" : "x", arg}, {"N", N}};
    AuxCoefficients aux = make_aux(context_for(o.alpha), N);
    Interval at = decimal(arg);
    json j;
    j["alpha"] = o.alpha;
    j[hat ? "xi" : "x"] = arg;
    j["N"] = N;
    if (hat) {
        put(j, "psihat", psi_hat(aux, at));
    } else {
        put(j, "psi", psi(aux, at));
        put(j, "F", F_alpha(aux.ctx, at));
    }
    out << j.dump(2) << "\n";
    m.write(o.manifest.empty() ? m.command + ".manifest.json" : o.manifest);
    return exit_ok;
}

int cmd_certify(const Options& o, std::ostream& out) {
    Manifest m{"certify"};
    const bool menu = o.alphas.empty();
    const std::vector<int>& alphas = menu ? kDefaultMenu : o.alphas;
    m.parameters = {{"alpha", alphas},         {"inequality", o.inequality}, {"max_depth", o.max_depth},
                    {"budget", o.budget},      {"threads", o.threads},       {"out", o.out}};
    BnbPolicy p;
    p.max_depth = o.max_depth;
    p.budget = o.budget;
    p.threads = o.threads;

    std::vector<Certificate> all;
    for (int a : alphas) {
        if (menu && !applicable(o.inequality, a)) continue;
        for (Certificate& c : certify_named(o.inequality, a, p)) all.push_back(std::move(c));
    }
    write_text(o.out, certificates_json(all).dump(2) + "\n");
    m.outputs.push_back(o.out);

    std::map<std::string, int> tally;
    for (const Certificate& c : all) ++tally[to_string(c.status)];
    json j;
    j["out"] = o.out;
    j["certificates"] = all.size();
    for (const char* s : {"verified", "failed", "inconclusive"}) j[s] = tally[s];
    out << j.dump(2) << "\n";
    m.write(o.manifest.empty() ? sibling_manifest(o.out) : o.manifest);
    return exit_for(all);
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
    Manifest m{"simulate"};
    require_even_alpha(o.alpha);
    if (!(o.length > 0.0) || !(o.rho > 0.0)) throw DomainError("rho and length must be positive");
    std::uint64_t seed = o.seed;
    if (const char* env = std::getenv("REPULSE_SEED")) {
        std::size_t used = 0;
        std::string s(env);
        try {
            seed = std::stoull(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw DomainError("REPULSE_SEED is not an unsigned integer: " + s);
    }
    const double product = o.rho * o.length;
    const double count = std::nearbyint(product);
    if (count < 1) throw DomainError("rho * length rounds to no particles");
    if (std::fabs(product - count) > 1e-9 * count)
        err << "warning: rho * length = " << product << " rounded to " << count << " particles\n";
    const double rho = count / o.length;

    m.parameters = {{"alpha", o.alpha},     {"rho", fmt_double(rho)},   {"length", fmt_double(o.length)},
                    {"seed", seed},         {"iters", o.iters},         {"grad_tol", fmt_double(o.grad_tol)},
                    {"basin_hops", o.basin_hops}, {"threads", o.threads}, {"csv", o.csv},
                    {"svg", o.svg}};

    RelaxOptions ro;
    ro.iters = o.iters;
    ro.grad_tol = o.grad_tol;
    ro.threads = o.threads;
    ro.basin_hops = o.basin_hops;
    RelaxResult r = relax(o.alpha, rho, o.length, seed, ro);

    const double gap = o.gap ? *o.gap : context_for(o.alpha).s_alpha.mid() / 2.0;
    m.parameters["gap"] = fmt_double(gap);
    ClusterReport rep = detect_clusters(r.config, gap);
    export_files(r.config, rep, o.csv, o.svg);
    for (const std::string& f : {o.csv, o.svg})
        if (!f.empty()) m.outputs.push_back(f);

    json j;
    j["alpha"] = o.alpha;
    j["rho"] = rho;
    j["length"] = o.length;
    j["seed"] = seed;
    j["particles"] = r.config.positions.size();
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["grad_max"] = r.grad_max;
    j["energy_per_particle"] = r.config.energy_per_particle;
    j["clusters"] = rep.clusters.size();
    j["mean_spacing"] = rep.mean_spacing ? json(*rep.mean_spacing) : json(nullptr);
    j["spacing_cv"] = rep.spacing_cv;
    json hist = json::object();
    for (auto [size, n] : rep.count_histogram) hist[std::to_string(size)] = n;
    j["count_histogram"] = hist;
    j["csv"] = o.csv;
    j["svg"] = o.svg;
    out << j.dump(2) << "\n";

    std::string where = !o.manifest.empty() ? o.manifest : !o.csv.empty() ? sibling_manifest(o.csv)
                                                       : !o.svg.empty() ? sibling_manifest(o.svg)
                                                                        : "simulate.manifest.json";
    m.write(where);
    if (!r.converged) {
        err << "relaxation did not converge: max gradient " << r.grad_max << " after " << r.iterations
            << " iterations\n";
        return exit_not_converged;
    }
    return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal spacing, auxiliary function, certificates and particle simulations for f(x) = 1/(1+x^alpha)",
                 "repulse"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--manifest", o.manifest, "where to write the run manifest");

    auto* salpha = app.add_subcommand("salpha", "enclose s_alpha, s_alpha^alpha and the lattice energy at s_alpha");
    salpha->add_option("--alpha", o.alpha)->required();
    salpha->add_option("--tol", o.tol, "target width of the s_alpha enclosure");

    auto* energy = app.add_subcommand("energy", "lattice energy sum_n t f(t n)");
    energy->add_option("--alpha", o.alpha)->required();
    energy->add_option("--t", o.t, "spacing, as a decimal")->required();
    energy->add_option("--N", o.N, "explicit terms |n| <= N (default 64)");

    auto* psi = app.add_subcommand("psi", "auxiliary function psi at x");
    psi->add_option("--alpha", o.alpha)->required();
    psi->add_option("--x", o.x, "point, as a decimal")->required();
    psi->add_option("--N", o.N, "interpolation terms (default 256)");

    auto* psihat = app.add_subcommand("psihat", "Fourier transform of psi at xi");
    psihat->add_option("--alpha", o.alpha)->required();
    psihat->add_option("--xi", o.xi, "frequency, as a decimal")->required();
    psihat->add_option("--N", o.N, "interpolation terms (default 256)");

    auto* certify = app.add_subcommand("certify", "branch-and-bound certificates");
    certify->add_option("--alpha", o.alphas, "one or more alphas (default 4 6 8 10 12 14)");
    certify->add_option("--inequality", o.inequality)->check(CLI::IsMember(kInequalities));
    certify->add_option("--max-depth", o.max_depth)->check(CLI::NonNegativeNumber);
    certify->add_option("--budget", o.budget, "box budget")->check(CLI::PositiveNumber);
    certify->add_option("--out", o.out, "certificate JSON file");

    auto* simulate = app.add_subcommand("simulate", "relax particles on a periodic cell and report clusters");
    simulate->add_option("--alpha", o.alpha)->required();
    simulate->add_option("--rho", o.rho)->required();
    simulate->add_option("--length", o.length)->required();
    simulate->add_option("--seed", o.seed, "overridden by REPULSE_SEED");
    simulate->add_option("--iters", o.iters)->check(CLI::PositiveNumber);
    simulate->add_option("--grad-tol", o.grad_tol)->check(CLI::PositiveNumber);
    simulate->add_option("--basin-hops", o.basin_hops)->check(CLI::NonNegativeNumber);
    simulate->add_option("--gap", o.gap, "cluster gap threshold (default s_alpha/2)")->check(CLI::PositiveNumber);
    simulate->add_option("--csv", o.csv);
    simulate->add_option("--svg", o.svg);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try {
        if (salpha->parsed()) return cmd_salpha(o, out);
        if (energy->parsed()) return cmd_energy(o, out);
        if (psi->parsed()) return cmd_psi(o, out, false);
        if (psihat->parsed()) return cmd_psi(o, out, true);
        if (certify->parsed()) return cmd_certify(o, out);
        return cmd_simulate(o, out, err);
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << "\n";
        return exit_invalid;
    } catch (const SolverError& e) {
        err << "solver: " << e.what() << "\n";
        return exit_solver;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failed;
    }
}

}  // namespace repulse
