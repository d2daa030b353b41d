#include "bracketsum/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace bracketsum {

FitResult fit_loglog(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4)
        throw std::invalid_argument("fit_loglog: need at least 4 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    auto n = (double)points.size();
    for (const auto& [scale, value] : points) {
        if (!(scale > 0.0) || !(value > 0.0))
            throw std::invalid_argument("fit_loglog: points must be positive");
        double x = std::log(scale), y = std::log(value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        throw std::invalid_argument("fit_loglog: degenerate scales");
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;

    double ss_res = 0, ss_tot = 0, ybar = sy / n;
    for (const auto& [scale, value] : points) {
        double x = std::log(scale), y = std::log(value);
        double r = y - (slope * x + intercept);
        ss_res += r * r;
        ss_tot += (y - ybar) * (y - ybar);
    }
    FitResult f;
    f.exponent = slope;
    f.constant = std::exp(intercept);
    f.r_squared = ss_tot == 0.0 ? 1.0
                                : std::min(1.0, std::max(0.0, 1.0 - ss_res /
                                                                  ss_tot));
    f.points = points;
    return f;
}

}  // namespace bracketsum
