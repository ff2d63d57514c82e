#pragma once

#include <string>

#include "gevrey/diagnostics.hpp"

namespace gevrey {

// Newton polygon: points, lower boundary, and the k edge highlighted.
std::string polygon_svg(const NewtonPolygon& poly);

// Scatter of log|d_n| against Re s_n with the fitted envelope line.
std::string growth_svg(const std::vector<NormalizedTerm>& terms, const GrowthFit& fit);

}  // namespace gevrey
