#pragma once
// Branch-and-bound sign proofs and the certificates built on them.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "repulse/auxfn.hpp"

namespace repulse {

enum class InequalityId { T_alpha, L_alpha, psi4_le_F4, eta0, eta1, eta_ge2, w_inequality, allthestars_const };
enum class Status { verified, failed, inconclusive };

const char* to_string(InequalityId id);
const char* to_string(Status s);

struct BnbPolicy {
    int max_depth = 48;  // boxes at depth >= max_depth are never evaluated; 0 evaluates nothing
    std::string split_rule = "bisect-widest";
    std::int64_t budget = 10'000'000;
    long truncation = 64;  // explicit terms |n| <= truncation in the lattice sums
    unsigned threads = 1;  // not part of the result
};

struct Witness {
    double x = 0.0;  // NaN for constant checks
    Interval value;
};

struct Certificate {
    InequalityId inequality_id = InequalityId::T_alpha;
    int alpha = 0;
    std::string domain;
    Status status = Status::inconclusive;
    std::int64_t boxes_processed = 0;
    int max_depth = 0;  // levels actually evaluated
    double min_lower_bound = 0.0;
    std::int64_t wall_time_ms = 0;
    std::string anchor;  // the displayed inequality that was evaluated
    BnbPolicy policy;
    std::optional<Witness> witness;
};

using Extension = std::function<Interval(const Interval&)>;

// Proves f >= 0 on the union of the given boxes.
Certificate prove_nonneg(const Extension& f, const std::vector<Interval>& boxes, const BnbPolicy& policy);
inline Certificate prove_nonneg(const Extension& f, const Interval& box, const BnbPolicy& policy) {
    return prove_nonneg(f, std::vector<Interval>{box}, policy);
}
// Single interval evaluation of a constant that must be >= 0.
Certificate prove_constant(const std::function<Interval()>& value, const BnbPolicy& policy);

// Folds several partial results into the first; counts add up, the worst status wins.
Certificate merge(std::vector<Certificate> parts);
bool all_verified(const std::vector<Certificate>& certs);

// (F(x) - F(n) - F'(n)(x-n))/(x-n)^2
Interval mean_value_L_term(const PotentialContext& ctx, const Interval& x, long n);

// Interval extensions of the certified quantities. Infinite sums use |n| <= M
// explicitly and enclosed remainders beyond.
class Expressions {
public:
    explicit Expressions(const PotentialContext& ctx, long M = 64);

    const PotentialContext& ctx() const { return aux_.ctx; }
    const AuxCoefficients& table() const { return aux_; }

    // (1/2)(1 - 2 sum_{n>=1} F(n)) - (1/pi) sum_{n>=2} |F'(n)|
    Interval T() const;
    // sum_n n^3 F'(n)(-2/3 + 4R(pi n)) - sum_n 2 n^2 F(n)
    Interval L() const;
    // sum_{n in Z} (F(x) - F(n) - F'(n)(x-n))/(x-n)^2
    Interval L_sum(const Interval& x) const;
    // 4(F(1/2)-1) + sum_{n!=0} (F(1/2)-F(n))/n^2 - sum_{n!=0} n F'(n)/(1/4-n^2)
    Interval eta0() const;
    // F(1/2) - 2/alpha, the monotonicity side condition
    Interval eta0_side() const;
    // left minus right side of the inequality for x = 1 + t
    Interval eta1(const Interval& t) const;
    // -sum_{n != k} (F(n)/(x-n)^2 + F'(n)/(x-n)), nearest integer k
    Interval eta2(const Interval& x, long k) const;
    // minus the left side of the x >= 10 constant inequality
    Interval allthestars() const;
    // -sum_n (3 n^2 F(n) + n^3 F'(n)) - 10/81 - 1/81 - 5 F(9)/2, the x >= 9 constant for alpha = 4
    Interval psi4_far() const;

private:
    AuxCoefficients aux_;
    long M_;
    Interval tail_F_over_n2_;   // sum_{n>M} F(n)/n^2
    Interval tail_dF_over_n_;   // sum_{n>M} F'(n)/n
    Interval tail_n4F_;         // sum_{n>M} n^4 F(n), alpha >= 6 only
};

// 16 c S3(2w) - 2 sinc(w)^2
Interval w_value(const Interval& c, const Interval& w);

// closed lower bounds for large alpha
Interval T_large_value(int alpha);
Interval L_large_value(int alpha);
Interval eta0_large_value(int alpha);
Interval allthestars_large_value(int alpha);

Certificate certify_T(const PotentialContext& ctx, const BnbPolicy& p = {});
Certificate certify_T_large(int alpha, const BnbPolicy& p = {});
Certificate certify_L(const PotentialContext& ctx, const BnbPolicy& p = {});
Certificate certify_L_large(int alpha, const BnbPolicy& p = {});
// c is a lower bound for 1 - F_4(n), n >= 1
Certificate certify_w_inequality(const Interval& c = Interval::ratio(4, 5), const BnbPolicy& p = {});
std::vector<Certificate> certify_psihat_nonneg(const PotentialContext& ctx, const BnbPolicy& p = {});
Certificate certify_psi4_le_F4(const BnbPolicy& p = {});
Certificate certify_eta0(const PotentialContext& ctx, const BnbPolicy& p = {});
Certificate certify_eta0_large(int alpha, const BnbPolicy& p = {});
Certificate certify_eta1(const PotentialContext& ctx, const BnbPolicy& p = {});
Certificate certify_eta1_large(int alpha, const BnbPolicy& p = {});
Certificate certify_eta_ge2(const PotentialContext& ctx, const BnbPolicy& p = {});
Certificate certify_allthestars(const PotentialContext& ctx, const BnbPolicy& p = {});
Certificate certify_allthestars_large(int alpha, const BnbPolicy& p = {});

// every inequality needed for alpha, starting from the solver
std::vector<Certificate> certify_all(int alpha, const BnbPolicy& p = {});

}  // namespace repulse
