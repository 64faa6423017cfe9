#pragma once

#include <string>

#include "maxface/weierstrass.hpp"

namespace maxface {

// Surface-description JSON:
//   {
//     "label": "catenoid",
//     "g":         {"num": [[re,im], ...], "den": [[re,im], ...]},
//     "omega_hat": {"num": [[re,im], ...], "den": [[re,im], ...]},
//     "punctures": [[re,im] | "inf", ...],
//     "base_point": [re,im]
//   }
// Coefficients are listed lowest degree first.  Parsing validates the data
// and reports field-specific messages.
WeierstrassData parse_surface_description(const std::string& json_text, const Tolerances& tol = {});

std::string serialize_surface_description(const WeierstrassData& data);

}  // namespace maxface
