#pragma once

#include <json.hpp>

#include "repulse/certify.hpp"

namespace repulse {

// Field order is fixed. Doubles are written as shortest round-trip decimal strings.
nlohmann::ordered_json certificate_json(const Certificate& c);
nlohmann::ordered_json certificates_json(const std::vector<Certificate>& cs);

}  // namespace repulse
