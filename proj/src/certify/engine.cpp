#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "repulse/certify.hpp"
#include "repulse/detail/parallel.hpp"

namespace repulse {

const char* to_string(InequalityId id) {
    switch (id) {
        case InequalityId::T_alpha: return "T_alpha";
        case InequalityId::L_alpha: return "L_alpha";
        case InequalityId::psi4_le_F4: return "psi4_le_F4";
        case InequalityId::eta0: return "eta0";
        case InequalityId::eta1: return "eta1";
        case InequalityId::eta_ge2: return "eta_ge2";
        case InequalityId::w_inequality: return "w_inequality";
        case InequalityId::allthestars_const: return "allthestars_const";
    }
    return "?";
}

const char* to_string(Status s) {
    switch (s) {
        case Status::verified: return "verified";
        case Status::failed: return "failed";
        case Status::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

Interval safe_eval(const Extension& f, const Interval& x) {
    try {
        return f(x);
    } catch (const DomainError&) {
        return Interval::entire();
    }
}

using detail::parallel_for;

struct Node {
    Interval box;
    Interval parent;  // enclosure inherited from the parent box
};

}  // namespace

Certificate prove_nonneg(const Extension& f, const std::vector<Interval>& boxes, const BnbPolicy& policy) {
    const auto t0 = Clock::now();
    Certificate c;
    c.policy = policy;
    c.status = Status::verified;
    double lb = std::numeric_limits<double>::infinity();

    std::vector<Node> level;
    for (const auto& b : boxes) level.push_back({b, Interval::entire()});

    for (int depth = 0; !level.empty(); ++depth) {
        if (depth >= policy.max_depth || c.boxes_processed + static_cast<std::int64_t>(level.size()) > policy.budget) {
            c.status = Status::inconclusive;
            for (const auto& n : level) lb = std::min(lb, n.parent.lo);
            break;
        }
        std::vector<Interval> val(level.size());
        parallel_for(level.size(), policy.threads, [&](std::size_t i) {
            Interval v = safe_eval(f, level[i].box);
            val[i] = overlaps(v, level[i].parent) ? intersect(v, level[i].parent) : v;
        });
        c.boxes_processed += static_cast<std::int64_t>(level.size());
        c.max_depth = depth + 1;

        std::vector<std::size_t> open;
        for (std::size_t i = 0; i < level.size(); ++i) {
            if (val[i].lo >= 0.0)
                lb = std::min(lb, val[i].lo);
            else
                open.push_back(i);
        }
        // a thin midpoint evaluation that is certainly negative refutes the inequality
        std::vector<Interval> mid(open.size());
        parallel_for(open.size(), policy.threads, [&](std::size_t j) {
            double m = level[open[j]].box.mid();
            mid[j] = safe_eval(f, Interval(m));
        });
        for (std::size_t j = 0; j < open.size(); ++j) {
            if (mid[j].hi < 0.0) {
                c.status = Status::failed;
                c.witness = Witness{level[open[j]].box.mid(), mid[j]};
                for (std::size_t k : open) lb = std::min(lb, val[k].lo);
                c.min_lower_bound = lb;
                c.wall_time_ms = ms_since(t0);
                return c;
            }
        }

        std::vector<Node> next;
        next.reserve(2 * open.size());
        for (std::size_t k : open) {
            const Interval& b = level[k].box;
            double m = b.mid();
            if (!(m > b.lo && m < b.hi)) {
                // cannot split any further
                c.status = Status::inconclusive;
                lb = std::min(lb, val[k].lo);
                continue;
            }
            next.push_back({Interval(b.lo, m), val[k]});
            next.push_back({Interval(m, b.hi), val[k]});
        }
        if (c.status == Status::inconclusive && next.empty()) break;
        level = std::move(next);
    }
    c.min_lower_bound = lb == std::numeric_limits<double>::infinity() ? 0.0 : lb;
    c.wall_time_ms = ms_since(t0);
    return c;
}

Certificate prove_constant(const std::function<Interval()>& value, const BnbPolicy& policy) {
    const auto t0 = Clock::now();
    Certificate c;
    c.policy = policy;
    if (policy.max_depth < 1 || policy.budget < 1) {
        c.status = Status::inconclusive;
        c.min_lower_bound = -std::numeric_limits<double>::infinity();
        return c;
    }
    Interval v = value();
    c.boxes_processed = 1;
    c.max_depth = 1;
    c.min_lower_bound = v.lo;
    if (v.lo >= 0.0) {
        c.status = Status::verified;
    } else if (v.hi < 0.0) {
        c.status = Status::failed;
        c.witness = Witness{std::numeric_limits<double>::quiet_NaN(), v};
    } else {
        c.status = Status::inconclusive;
    }
    c.wall_time_ms = ms_since(t0);
    return c;
}

Certificate merge(std::vector<Certificate> parts) {
    Certificate out = parts.at(0);
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const Certificate& p = parts[i];
        out.boxes_processed += p.boxes_processed;
        out.max_depth = std::max(out.max_depth, p.max_depth);
        out.min_lower_bound = std::min(out.min_lower_bound, p.min_lower_bound);
        out.wall_time_ms += p.wall_time_ms;
        if (p.status == Status::failed && out.status != Status::failed) {
            out.status = Status::failed;
            out.witness = p.witness;
        } else if (p.status == Status::inconclusive && out.status == Status::verified) {
            out.status = Status::inconclusive;
        }
    }
    return out;
}

bool all_verified(const std::vector<Certificate>& certs) {
    return std::all_of(certs.begin(), certs.end(), [](const Certificate& c) { return c.status == Status::verified; });
}

}  // namespace repulse
