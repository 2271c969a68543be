#pragma once
// Particles on a periodic cell under f_alpha, relaxed to local minima.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace repulse {

struct Configuration {
    std::vector<double> positions;  // sorted, in [0, L)
    double L = 0.0;
    int alpha = 0;
    double rho = 0.0;  // count / L
    std::uint64_t seed = 0;
    double energy_per_particle = 0.0;
};

// Pair sum over all periodic images, sum_k f(|d + kL|). Images |k| <= K are
// summed explicitly and the rest through 1/(1+u) = u^-1 - u^-2 + ... with
// Hurwitz zeta sums. The k != 0 part is tabulated once per cell.
class PeriodicPair {
public:
    PeriodicPair(int alpha, double L, int image_cutoff);
    static int default_cutoff(double L);

    int alpha() const { return alpha_; }
    double L() const { return L_; }
    int cutoff() const { return K_; }

    // d is any real offset
    double value(double d) const;
    double derivative(double d) const;
    // both at once
    void evaluate(double d, double* v, double* dv) const;
    // a particle with its own images
    double self() const { return self_; }

private:
    double images(double u, double* du) const;  // sum_{k != 0} f(u + kL) and its u-derivative
    double wrap_half(double d, double* sign) const;

    int alpha_;
    double L_;
    int K_;
    double h_;
    std::vector<double> q_, dq_;  // k != 0 part at the nodes of [0, L/2]
    double self_;
};

// f_alpha(y) = 1/(1 + y^alpha) and its derivative for real y
double f_real(int alpha, double y);
double f_real_prime(int alpha, double y);

// (1/count) sum over ordered pairs i != j and all images, plus each particle's own images
double periodic_energy(const Configuration& cfg, int image_cutoff);
double periodic_energy(const Configuration& cfg);
// energy per particle and its gradient in the positions
double energy_and_gradient(const PeriodicPair& pp, const std::vector<double>& x, std::vector<double>* grad,
                           unsigned threads = 1);

struct RelaxOptions {
    long iters = 20000;
    double grad_tol = 1e-8;  // on max |dE/dx_i|, scaled down by the pair energy when that is below 1
    int image_cutoff = 0;    // 0 selects PeriodicPair::default_cutoff
    unsigned threads = 1;
    int basin_hops = 0;      // random restarts from perturbed minima, off by default
};

struct RelaxResult {
    Configuration config;
    double grad_max = 0.0;
    long iterations = 0;
    bool converged = false;
    std::vector<double> energy_trace;  // energy after every accepted step, starting with the initial one
};

// Gradient descent with Barzilai-Borwein steps and Armijo backtracking from uniform random positions.
RelaxResult relax(int alpha, double rho, double L, std::uint64_t seed, const RelaxOptions& opt = {});
// Same optimiser from given positions.
RelaxResult relax_from(int alpha, double L, std::vector<double> positions, const RelaxOptions& opt = {});

struct Cluster {
    double center = 0.0;
    long count = 0;
};

struct ClusterReport {
    std::vector<Cluster> clusters;      // centers sorted
    std::optional<double> mean_spacing; // absent with fewer than two clusters
    double spacing_cv = 0.0;
    std::map<long, long> count_histogram;  // cluster size -> number of clusters
};

ClusterReport detect_clusters(const Configuration& cfg, double gap_threshold);

// n particles at each of 0, s, ..., (m-1)s on a cell of length m s
Configuration theorem_configuration(int alpha, int n_per_cluster, int m_clusters);
// same with a given spacing
Configuration clustered_lattice(int alpha, double spacing, int n_per_cluster, int m_clusters);

void write_csv(const Configuration& cfg, const std::string& path);
std::vector<double> read_csv(const std::string& path);
std::string render_svg(const Configuration& cfg, const ClusterReport& report);
void export_files(const Configuration& cfg, const ClusterReport& report, const std::string& path_csv,
                  const std::string& path_svg);

}  // namespace repulse
