#pragma once

// Log-log least-squares rate fitting: value ~ constant * scale^exponent.

#include <utility>
#include <vector>

namespace bracketsum {

struct FitResult {
    double exponent = 0.0;
    double constant = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points;  // (scale, value)
};

// Least squares on (log scale, log value); needs >= 4 points, all positive.
FitResult fit_loglog(const std::vector<std::pair<double, double>>& points);

}  // namespace bracketsum
