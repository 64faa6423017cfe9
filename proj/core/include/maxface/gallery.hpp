#pragma once

#include <string>
#include <vector>

#include "maxface/weierstrass.hpp"

namespace maxface {

struct GalleryParams {
    double a = 1.0;       // catenoid scale
    double lambda = 2.0;  // Lopez-Ros factor
    int n = 3;            // Jorge-Meeks end count
};

// Built-in surfaces: plane, catenoid, enneper, lopez-ros-catenoid,
// lopez-ros-enneper, jorge-meeks-companion.  Throws UsageError for unknown
// names or invalid parameters.
WeierstrassData gallery(const std::string& name, const GalleryParams& params = {},
                        const Tolerances& tol = {});

std::vector<std::string> gallery_names();

// Lopez-Ros factors excluded by completeness: { 1/|g(p)| } over ends with
// finite nonzero |g(p)|.
std::vector<double> excluded_lopez_ros_lambdas(const WeierstrassData& base,
                                               const Tolerances& tol = {});

}  // namespace maxface
