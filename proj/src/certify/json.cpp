#include <cmath>

#include "repulse/certify_json.hpp"

namespace repulse {

nlohmann::ordered_json certificate_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["inequality_id"] = to_string(c.inequality_id);
    j["alpha"] = c.alpha;
    j["domain"] = c.domain;
    j["status"] = to_string(c.status);
    j["boxes_processed"] = c.boxes_processed;
    j["max_depth"] = c.max_depth;
    j["min_lower_bound"] = fmt_double(c.min_lower_bound);
    j["wall_time_ms"] = c.wall_time_ms;
    j["paper_anchor"] = c.anchor;
    j["policy"] = {{"max_depth", c.policy.max_depth}, {"split_rule", c.policy.split_rule}, {"budget", c.policy.budget},
                   {"truncation", c.policy.truncation}};
    if (c.witness) {
        nlohmann::ordered_json w;
        w["x"] = std::isnan(c.witness->x) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(fmt_double(c.witness->x));
        w["value_lo"] = fmt_double(c.witness->value.lo);
        w["value_hi"] = fmt_double(c.witness->value.hi);
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

nlohmann::ordered_json certificates_json(const std::vector<Certificate>& cs) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& c : cs) a.push_back(certificate_json(c));
    return a;
}

}  // namespace repulse
