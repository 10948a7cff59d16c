#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "neoclassical/errors.hpp"
#include "neoclassical/gaussian.hpp"
#include "neoclassical/inference.hpp"

namespace neo {

struct IntervalSpec {
    double center = 0.0;
    double se = 0.0;
    double level = 0.95;
    bool adjusted = false;
};

inline Interval unadjusted_interval(double center, double se, double alpha) {
    if (!(se >= 0.0)) throw config_error("interval: se >= 0 required");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw config_error("interval: alpha in (0,1) required");
    const double half = se * gaussian_quantile(1.0 - alpha / 2.0);
    return {center - half, center + half};
}

// Standard-error adjustment: the interval half-width is scaled by sqrt(2) to
// account for the estimated center and scale of the fitted law.
inline Interval adjusted_interval(double center, double se, double alpha) {
    return unadjusted_interval(center, kSqrt2 * se, alpha);
}

inline Interval make_interval(const IntervalSpec& spec) {
    return spec.adjusted ? adjusted_interval(spec.center, spec.se, 1.0 - spec.level)
                         : unadjusted_interval(spec.center, spec.se, 1.0 - spec.level);
}

// Asymptotic rejection rate of an unadjusted size-alpha test:
// 2 (1 - Phi(u_{1-alpha/2} / sqrt(2))).
inline double nominal_to_adjusted(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw config_error("nominal_to_adjusted: alpha in (0,1] required");
    if (alpha == 1.0) return 1.0;
    const double u = gaussian_quantile(1.0 - alpha / 2.0);
    return 2.0 * (1.0 - gaussian_cdf(u / kSqrt2));
}

// Inverse direction: 2 (1 - Phi(sqrt(2) u_{1-alpha/2})).
inline double adjusted_to_nominal(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw config_error("adjusted_to_nominal: alpha in (0,1] required");
    if (alpha == 1.0) return 1.0;
    const double u = gaussian_quantile(1.0 - alpha / 2.0);
    return 2.0 * (1.0 - gaussian_cdf(kSqrt2 * u));
}

inline double adjust_critical_value(double c) {
    if (!(c >= 0.0)) throw config_error("adjust_critical_value: c >= 0 required");
    return kSqrt2 * c;
}

// Limit coverage of the unadjusted interval: P(|N(0, sqrt(2))| <= u_{1-alpha/2}).
inline double asymptotic_unadjusted_coverage(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw config_error("asymptotic_unadjusted_coverage: alpha in (0,1) required");
    const double u = gaussian_quantile(1.0 - alpha / 2.0);
    return 2.0 * gaussian_cdf(u / kSqrt2) - 1.0;
}

inline std::vector<std::pair<double, double>> conversion_curve(
    const std::vector<double>& alphas) {
    std::vector<std::pair<double, double>> curve;
    curve.reserve(alphas.size());
    for (double a : alphas) curve.emplace_back(a, nominal_to_adjusted(a));
    return curve;
}

}  // namespace neo
