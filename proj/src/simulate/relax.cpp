#include <algorithm>
#include <cmath>
#include <random>

#include "repulse/interval.hpp"
#include "repulse/potential.hpp"
#include "repulse/simulate.hpp"

namespace repulse {

namespace {

double wrap(double x, double L) {
    double y = x - L * std::floor(x / L);
    return y >= L || y < 0.0 ? 0.0 : y;
}

// uniform in [0, 1) from the top 53 bits, independent of the standard library
double unit(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1p-53; }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

struct Descent {
    std::vector<double> x;
    double E = 0.0;
    double gmax = 0.0;
    long iterations = 0;
    bool converged = false;
};

Descent descend(const PeriodicPair& pp, std::vector<double> x, const RelaxOptions& opt, std::vector<double>& trace) {
    const double L = pp.L();
    std::vector<double> g, gn, xn(x.size());
    double E = energy_and_gradient(pp, x, &g, opt.threads);
    trace.push_back(E);
    double step = 1.0;
    std::vector<double> s_prev, y_prev;
    Descent out;
    // weak interactions (sparse cells) are judged against their own energy scale
    auto tol_at = [&](double e) {
        double pair = e - pp.self();
        return pair > 0.0 ? opt.grad_tol * std::min(1.0, pair) : opt.grad_tol;
    };
    bool stalled = false;
    long it = 0;
    for (; it < opt.iters; ++it) {
        if (max_abs(g) <= tol_at(E)) {
            out.converged = true;
            break;
        }
        if (!s_prev.empty()) {
            double sy = dot(s_prev, y_prev);
            step = sy > 0.0 ? dot(s_prev, s_prev) / sy : 2.0 * step;
            step = std::clamp(step, 1e-12, 1e6);
        }
        const double gg = dot(g, g), gm = max_abs(g);
        double En = 0.0;
        bool accepted = false;
        // stop once the move is below the resolution of the positions
        while (step * gm > 1e-16 * L) {
            for (std::size_t i = 0; i < x.size(); ++i) xn[i] = wrap(x[i] - step * g[i], L);
            En = energy_and_gradient(pp, xn, &gn, opt.threads);
            bool armijo = En < E && En <= E - 1e-4 * step * gg;
            // below the energy resolution, accept a level step that still lowers the gradient
            bool level = En <= E && dot(gn, gn) < gg;
            if (armijo || level) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            stalled = true;
            break;
        }
        s_prev.assign(x.size(), 0.0);
        y_prev.assign(x.size(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            s_prev[i] = -step * g[i];
            y_prev[i] = gn[i] - g[i];
        }
        x.swap(xn);
        g.swap(gn);
        E = En;
        trace.push_back(E);
    }
    out.iterations = it;
    out.gmax = max_abs(g);
    out.converged = out.converged || out.gmax <= tol_at(E) || (stalled && out.gmax <= opt.grad_tol);
    out.E = E;
    out.x = std::move(x);
    return out;
}

}  // namespace

RelaxResult relax_from(int alpha, double L, std::vector<double> positions, const RelaxOptions& opt) {
    require_even_alpha(alpha);
    if (opt.iters < 1) throw DomainError("relax needs iters >= 1");
    const int K = opt.image_cutoff > 0 ? opt.image_cutoff : PeriodicPair::default_cutoff(L);
    PeriodicPair pp(alpha, L, K);
    for (double& p : positions) p = wrap(p, L);

    RelaxResult r;
    Descent best = descend(pp, std::move(positions), opt, r.energy_trace);
    long total = best.iterations;
    if (opt.basin_hops > 0) {
        std::mt19937_64 gen(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(best.x.size()));
        const double kick = L / static_cast<double>(std::max<std::size_t>(best.x.size(), 1)) / 2.0;
        for (int h = 0; h < opt.basin_hops; ++h) {
            std::vector<double> y = best.x;
            for (double& v : y) v = wrap(v + kick * (2.0 * unit(gen) - 1.0), L);
            std::vector<double> trace;
            Descent d = descend(pp, std::move(y), opt, trace);
            total += d.iterations;
            if (d.E < best.E) {
                best = std::move(d);
                r.energy_trace.push_back(best.E);
            }
        }
    }

    std::sort(best.x.begin(), best.x.end());
    r.config.positions = std::move(best.x);
    r.config.L = L;
    r.config.alpha = alpha;
    r.config.rho = static_cast<double>(r.config.positions.size()) / L;
    r.config.energy_per_particle = best.E;
    r.grad_max = best.gmax;
    r.iterations = total;
    r.converged = best.converged;
    return r;
}

RelaxResult relax(int alpha, double rho, double L, std::uint64_t seed, const RelaxOptions& opt) {
    if (!(L > 0.0) || !(rho > 0.0)) throw DomainError("relax needs positive rho and L");
    const double count = rho * L;
    const double n = std::nearbyint(count);
    if (std::fabs(count - n) > 1e-9 * std::max(1.0, n) || n < 1) throw DomainError("rho * L must be a positive integer");
    std::mt19937_64 gen(seed);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = unit(gen) * L;
    std::sort(x.begin(), x.end());
    RelaxResult r = relax_from(alpha, L, std::move(x), opt);
    r.config.seed = seed;
    return r;
}

Configuration clustered_lattice(int alpha, double spacing, int n_per_cluster, int m_clusters) {
    if (n_per_cluster < 1 || m_clusters < 2) throw DomainError("need n >= 1 per cluster and m >= 2 clusters");
    Configuration c;
    c.alpha = alpha;
    c.L = m_clusters * spacing;
    for (int r = 0; r < m_clusters; ++r)
        for (int k = 0; k < n_per_cluster; ++k) c.positions.push_back(r * spacing);
    c.rho = static_cast<double>(c.positions.size()) / c.L;
    c.energy_per_particle = periodic_energy(c);
    return c;
}

Configuration theorem_configuration(int alpha, int n_per_cluster, int m_clusters) {
    require_even_alpha(alpha);
    double s = alpha == 4 ? std::sqrt(2.0) : solve_s_alpha(alpha).s_alpha.mid();
    return clustered_lattice(alpha, s, n_per_cluster, m_clusters);
}

}  // namespace repulse
