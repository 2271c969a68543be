#include <algorithm>
#include <cmath>

#include "repulse/interval.hpp"
#include "repulse/simulate.hpp"

namespace repulse {

namespace {

// mean of a run that may cross the cut, measured from its first member
double run_mean(const std::vector<double>& p, double L) {
    double sum = 0.0;
    for (double v : p) {
        double d = v - p.front();
        if (d < 0.0) d += L;
        sum += d;
    }
    double m = p.front() + sum / static_cast<double>(p.size());
    if (m >= L) m -= L;
    return m >= L || m < 0.0 ? 0.0 : m;
}

}  // namespace

ClusterReport detect_clusters(const Configuration& cfg, double gap_threshold) {
    if (!(gap_threshold > 0.0)) throw DomainError("gap threshold must be positive");
    const double L = cfg.L;
    ClusterReport rep;
    std::vector<double> x = cfg.positions;
    if (x.empty()) return rep;
    for (double& v : x) v -= L * std::floor(v / L);
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();

    // start after the widest gap so no cluster straddles the cut
    std::size_t start = 0;
    double widest = x[0] + L - x[n - 1];
    for (std::size_t i = 1; i < n; ++i)
        if (x[i] - x[i - 1] > widest) {
            widest = x[i] - x[i - 1];
            start = i;
        }

    if (widest <= gap_threshold) {
        rep.clusters.push_back({run_mean(x, L), static_cast<long>(n)});
    } else {
        std::vector<double> cur{x[start]};
        double prev = x[start];
        for (std::size_t k = 1; k <= n; ++k) {
            bool end = k == n;
            double v = end ? 0.0 : x[(start + k) % n];
            double gap = end ? 0.0 : v - prev;
            if (gap < 0.0) gap += L;
            if (end || gap > gap_threshold) {
                rep.clusters.push_back({run_mean(cur, L), static_cast<long>(cur.size())});
                cur.clear();
            }
            if (!end) {
                cur.push_back(v);
                prev = v;
            }
        }
    }
    std::sort(rep.clusters.begin(), rep.clusters.end(), [](const Cluster& a, const Cluster& b) { return a.center < b.center; });
    for (const Cluster& c : rep.clusters) ++rep.count_histogram[c.count];

    const std::size_t m = rep.clusters.size();
    if (m >= 2) {
        std::vector<double> gaps(m);
        for (std::size_t i = 0; i < m; ++i) {
            double g = rep.clusters[(i + 1) % m].center - rep.clusters[i].center;
            if (g <= 0.0) g += L;
            gaps[i] = g;
        }
        double mean = 0.0;
        for (double g : gaps) mean += g;
        mean /= static_cast<double>(m);
        double var = 0.0;
        for (double g : gaps) var += (g - mean) * (g - mean);
        var /= static_cast<double>(m);
        rep.mean_spacing = mean;
        rep.spacing_cv = std::sqrt(var) / mean;
    }
    return rep;
}

}  // namespace repulse
