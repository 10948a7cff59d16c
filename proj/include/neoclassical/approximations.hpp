#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "neoclassical/density.hpp"
#include "neoclassical/errors.hpp"
#include "neoclassical/gaussian.hpp"

namespace neo {

enum class SdConvention { DivT, DivTm1 };

struct Sample {
    std::vector<double> observations;

    explicit Sample(std::vector<double> obs) : observations(std::move(obs)) {
        if (observations.size() < 2)
            throw config_error("Sample: need at least 2 observations");
        for (double x : observations)
            if (!std::isfinite(x)) throw ingest_error("Sample: non-finite observation");
    }

    std::size_t size() const { return observations.size(); }
};

// Nonnegative criterion u(theta, theta'), maximized on the diagonal.
struct CriterionFn {
    std::function<double(double, double)> evaluator;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    double operator()(double theta, double theta_prime) const {
        return evaluator(theta, theta_prime);
    }
};

// Extremum objective Q_T stored as the per-observation average, so the
// quasi-posterior kernel is exp(T * Q_T) * w.
struct ObjectiveFn {
    std::function<double(const Sample&, double)> evaluator;
    std::function<double(double)> weight = [](double) { return 1.0; };
};

inline double sample_mean(const Sample& s) {
    double sum = 0.0;
    for (double x : s.observations) sum += x;
    return sum / static_cast<double>(s.size());
}

inline double sample_sd(const Sample& s, SdConvention conv = SdConvention::DivT) {
    const double m = sample_mean(s);
    double ss = 0.0;
    for (double x : s.observations) ss += (x - m) * (x - m);
    const double n = static_cast<double>(s.size());
    const double div = conv == SdConvention::DivT ? n : n - 1.0;
    return std::sqrt(ss / div);
}

// Gaussian approximation N(mean(X), s_T / sqrt(T)).
inline GaussianLaw gaussian_approx(const Sample& s,
                                   SdConvention conv = SdConvention::DivT) {
    const double sd = sample_sd(s, conv);
    if (!(sd > 0.0))
        throw degenerate_error("gaussian_approx: sample standard deviation is zero");
    return GaussianLaw(sample_mean(s), sd / std::sqrt(static_cast<double>(s.size())));
}

// Per-coordinate Gaussian laws from a point estimate and the diagonal of an
// estimated covariance matrix; off-diagonal entries are deliberately ignored.
inline std::vector<GaussianLaw> gaussian_approx_mv(
    const std::vector<double>& theta_star,
    const std::vector<std::vector<double>>& sigma_hat, long T) {
    if (T < 1) throw config_error("gaussian_approx_mv: T >= 1 required");
    if (sigma_hat.size() != theta_star.size())
        throw config_error("gaussian_approx_mv: dimension mismatch");
    std::vector<GaussianLaw> laws;
    laws.reserve(theta_star.size());
    for (std::size_t k = 0; k < theta_star.size(); ++k) {
        if (sigma_hat[k].size() != theta_star.size())
            throw config_error("gaussian_approx_mv: covariance is not square");
        const double vkk = sigma_hat[k][k];
        if (!(vkk > 0.0))
            throw degenerate_error("gaussian_approx_mv: nonpositive diagonal entry");
        laws.emplace_back(theta_star[k], std::sqrt(vkk / static_cast<double>(T)));
    }
    return laws;
}

// Unit point mass at the selected parameter value.
inline Density1D plain_calibration(double theta_star) {
    if (!std::isfinite(theta_star))
        throw config_error("plain_calibration: theta* must be finite");
    return Density1D::dirac(theta_star);
}

// Normalized criterion slice theta -> u(theta, theta*) on the grid.
inline Density1D criterion_adjusted_calibration(const CriterionFn& u, double theta_star,
                                                std::vector<double> grid) {
    std::vector<double> vals;
    vals.reserve(grid.size());
    for (double th : grid) {
        const double v = u(th, theta_star);
        if (!(v >= 0.0))
            throw degenerate_error("criterion_adjusted_calibration: negative criterion");
        vals.push_back(v);
    }
    try {
        return grid_density(std::move(grid), std::move(vals));
    } catch (const degenerate_error&) {
        throw degenerate_error(
            "criterion_adjusted_calibration: criterion vanishes on the grid");
    }
}

// Quasi-posterior density on the grid, proportional to exp(T * Q_T) * w.
// Evaluated in the log domain with max-subtraction.
inline Density1D laplace_approx(const ObjectiveFn& obj, const Sample& s,
                                std::vector<double> grid, long T) {
    std::vector<double> logv;
    logv.reserve(grid.size());
    double mx = -std::numeric_limits<double>::infinity();
    for (double th : grid) {
        const double q = obj.evaluator(s, th);
        if (std::isnan(q)) throw degenerate_error("laplace_approx: Q_T is NaN");
        const double w = obj.weight(th);
        if (!(w >= 0.0)) throw degenerate_error("laplace_approx: negative weight");
        const double lv = static_cast<double>(T) * q + std::log(w);
        logv.push_back(lv);
        mx = std::max(mx, lv);
    }
    if (!std::isfinite(mx))
        throw degenerate_error("laplace_approx: objective is degenerate on the grid");
    std::vector<double> vals;
    vals.reserve(logv.size());
    for (double lv : logv) vals.push_back(std::exp(lv - mx));
    return grid_density(std::move(grid), std::move(vals));
}

// Expected criterion under the quasi-posterior:
// f(theta) ∝ ∫ u(theta, t) exp(T Q_T(., t)) w(t) dt, then normalized.
inline Density1D criterion_adjusted_laplace(const CriterionFn& u, const ObjectiveFn& obj,
                                            const Sample& s, std::vector<double> grid,
                                            long T) {
    const Density1D inner = laplace_approx(obj, s, std::vector<double>(grid), T);
    const auto& g = inner.grid();
    const auto& f = inner.values();
    const double h = inner.spacing();
    std::vector<double> vals(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double w = (j == 0 || j + 1 == g.size()) ? 0.5 : 1.0;
            acc += w * u(g[i], g[j]) * f[j];
        }
        vals[i] = acc * h;
    }
    return grid_density(std::move(grid), std::move(vals));
}

}  // namespace neo
