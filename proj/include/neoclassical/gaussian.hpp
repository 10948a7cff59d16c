#pragma once

#include <cmath>
#include <limits>

#include "neoclassical/errors.hpp"

namespace neo {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/sqrt(2*pi)
inline constexpr double kSqrt2 = 1.4142135623730950488;

// Parametric Gaussian law N(mean, sd), sd strictly positive.
struct GaussianLaw {
    double mean = 0.0;
    double sd = 1.0;

    GaussianLaw() = default;
    GaussianLaw(double m, double s) : mean(m), sd(s) {
        if (!(s > 0.0) || !std::isfinite(s) || !std::isfinite(m))
            throw config_error("GaussianLaw requires finite mean and sd > 0");
    }
};

inline double gaussian_pdf(double x, const GaussianLaw& law) {
    const double z = (x - law.mean) / law.sd;
    return kInvSqrt2Pi / law.sd * std::exp(-0.5 * z * z);
}

// erfc-based; absolute error well below 1e-12 over the double range.
inline double gaussian_cdf(double x, const GaussianLaw& law = {}) {
    const double z = (x - law.mean) / law.sd;
    return 0.5 * std::erfc(-z / kSqrt2);
}

namespace detail {

// Acklam's rational approximation for the standard normal quantile,
// refined below by Halley steps against erfc.
inline double norm_quantile_seed(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace detail

inline double gaussian_quantile(double p, const GaussianLaw& law = {}) {
    if (!(p > 0.0 && p < 1.0))
        throw config_error("gaussian_quantile: p must lie in (0,1)");
    double z = detail::norm_quantile_seed(p);
    // Two Halley refinements push the error far below 1e-9.
    for (int i = 0; i < 2; ++i) {
        const double e = 0.5 * std::erfc(-z / kSqrt2) - p;
        const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * z * z);
        z -= u / (1.0 + 0.5 * z * u);
    }
    return law.mean + law.sd * z;
}

}  // namespace neo
