#include <cmath>
#include <stdexcept>

#include "repulse/detail/parallel.hpp"
#include "repulse/interval.hpp"
#include "repulse/simulate.hpp"

namespace repulse {

namespace {

constexpr int kNodes = 2048;

double ipow(double x, int k) {
    double r = 1.0;
    for (; k > 0; k >>= 1, x *= x)
        if (k & 1) r *= x;
    return r;
}

// sum_{j>=0} (a+j)^-s by Euler-Maclaurin after J explicit terms
double hurwitz(int s, double a) {
    const int J = std::max(6, s);
    double sum = 0.0;
    for (int j = J - 1; j >= 0; --j) sum += ipow(1.0 / (a + j), s);
    const double b = a + J, ib = 1.0 / b, bs = ipow(ib, s);
    const double ds = s;
    sum += b * bs / (ds - 1.0) + bs / 2.0 + ds * bs * ib / 12.0 -
           ds * (ds + 1) * (ds + 2) * bs * ib * ib * ib / 720.0 +
           ds * (ds + 1) * (ds + 2) * (ds + 3) * (ds + 4) * bs * ipow(ib, 5) / 30240.0;
    return sum;
}

}  // namespace

double f_real(int alpha, double y) { return 1.0 / (1.0 + ipow(y, alpha)); }

double f_real_prime(int alpha, double y) {
    double v = ipow(y, alpha);
    if (!std::isfinite(v)) return 0.0;
    double den = 1.0 + v;
    return -alpha * ipow(y, alpha - 1) / (den * den);
}

int PeriodicPair::default_cutoff(double L) { return static_cast<int>(std::ceil(12.0 / L)) + 2; }

PeriodicPair::PeriodicPair(int alpha, double L, int image_cutoff) : alpha_(alpha), L_(L), K_(image_cutoff) {
    if (alpha < 2 || alpha % 2) throw DomainError("periodic pair needs an even alpha");
    if (!(L > 0.0)) throw DomainError("cell length must be positive");
    if (K_ < 1) throw DomainError("image cutoff must be at least 1");
    h_ = L_ / 2.0 / kNodes;
    q_.resize(kNodes + 1);
    dq_.resize(kNodes + 1);
    for (int i = 0; i <= kNodes; ++i) q_[i] = images(i * h_, &dq_[i]);
    double unused;
    self_ = images(0.0, &unused);
}

double PeriodicPair::images(double u, double* du) const {
    double s = 0.0, ds = 0.0;
    for (int k = K_; k >= 1; --k) {
        s += f_real(alpha_, u + k * L_) + f_real(alpha_, u - k * L_);
        ds += f_real_prime(alpha_, u + k * L_) + f_real_prime(alpha_, u - k * L_);
    }
    // |u + kL| >= (K + 1/2) L for the remaining images
    if ((K_ + 0.5) * L_ > 1.5) {
        const double ap = K_ + 1 + u / L_, am = K_ + 1 - u / L_;
        double sign = 1.0;
        for (int r = 1; r <= 2; ++r, sign = -sign) {
            const int e = r * alpha_;
            const double c = sign * ipow(1.0 / L_, e);
            s += c * (hurwitz(e, ap) + hurwitz(e, am));
            ds += -c * e / L_ * (hurwitz(e + 1, ap) - hurwitz(e + 1, am));
        }
    }
    *du = ds;
    return s;
}

double PeriodicPair::wrap_half(double d, double* sign) const {
    double u = d - L_ * std::nearbyint(d / L_);
    *sign = u < 0.0 ? -1.0 : 1.0;
    return std::min(std::fabs(u), L_ / 2.0);
}

double PeriodicPair::value(double d) const {
    double sg;
    double u = wrap_half(d, &sg);
    double t = u / h_;
    int i = std::min(static_cast<int>(t), kNodes - 1);
    t -= i;
    // cubic Hermite on [u_i, u_{i+1}]
    double t2 = t * t, t3 = t2 * t;
    double q = (2 * t3 - 3 * t2 + 1) * q_[i] + (t3 - 2 * t2 + t) * h_ * dq_[i] + (-2 * t3 + 3 * t2) * q_[i + 1] +
               (t3 - t2) * h_ * dq_[i + 1];
    return f_real(alpha_, u) + q;
}

double PeriodicPair::derivative(double d) const {
    double sg;
    double u = wrap_half(d, &sg);
    double t = u / h_;
    int i = std::min(static_cast<int>(t), kNodes - 1);
    t -= i;
    double t2 = t * t;
    double dq = ((6 * t2 - 6 * t) * q_[i] + (-6 * t2 + 6 * t) * q_[i + 1]) / h_ + (3 * t2 - 4 * t + 1) * dq_[i] +
                (3 * t2 - 2 * t) * dq_[i + 1];
    return sg * (f_real_prime(alpha_, u) + dq);
}

void PeriodicPair::evaluate(double d, double* v, double* dv) const {
    double sg;
    double u = wrap_half(d, &sg);
    double t = u / h_;
    int i = std::min(static_cast<int>(t), kNodes - 1);
    t -= i;
    double t2 = t * t, t3 = t2 * t;
    const double y = ipow(u, alpha_), den = 1.0 + y;
    *v = 1.0 / den + (2 * t3 - 3 * t2 + 1) * q_[i] + (t3 - 2 * t2 + t) * h_ * dq_[i] + (-2 * t3 + 3 * t2) * q_[i + 1] +
         (t3 - t2) * h_ * dq_[i + 1];
    double fp = std::isfinite(y) ? -alpha_ * ipow(u, alpha_ - 1) / (den * den) : 0.0;
    double dq = ((6 * t2 - 6 * t) * q_[i] + (-6 * t2 + 6 * t) * q_[i + 1]) / h_ + (3 * t2 - 4 * t + 1) * dq_[i] +
                (3 * t2 - 2 * t) * dq_[i + 1];
    *dv = sg * (fp + dq);
}

double energy_and_gradient(const PeriodicPair& pp, const std::vector<double>& x, std::vector<double>* grad,
                           unsigned threads) {
    const std::size_t n = x.size();
    if (n == 0) return 0.0;
    // extended accumulators keep energy differences resolvable near a minimum
    std::vector<long double> row(n), g(n);
    detail::parallel_for(n, threads, [&](std::size_t i) {
        long double e = 0.0L, d = 0.0L;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double v, dv;
            pp.evaluate(x[i] - x[j], &v, &dv);
            e += v;
            d += dv;
        }
        row[i] = e;
        g[i] = d;
    });
    long double total = 0.0L;
    for (std::size_t i = 0; i < n; ++i) total += row[i];
    const long double inv = 1.0L / static_cast<long double>(n);
    if (grad) {
        grad->resize(n);
        for (std::size_t i = 0; i < n; ++i) (*grad)[i] = static_cast<double>(2.0L * g[i] * inv);
    }
    return static_cast<double>(total * inv + pp.self());
}

double periodic_energy(const Configuration& cfg, int image_cutoff) {
    if (image_cutoff < 1) throw DomainError("image cutoff must be at least 1");
    PeriodicPair pp(cfg.alpha, cfg.L, image_cutoff);
    return energy_and_gradient(pp, cfg.positions, nullptr);
}

double periodic_energy(const Configuration& cfg) {
    return periodic_energy(cfg, PeriodicPair::default_cutoff(cfg.L));
}

}  // namespace repulse
