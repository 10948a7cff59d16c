#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "neoclassical/density.hpp"
#include "neoclassical/errors.hpp"
#include "neoclassical/gaussian.hpp"
#include "neoclassical/rng.hpp"

namespace neo {

// Exact sampling law of the data-based proxy under a known DGP.
struct ProxyTruth {
    enum class Kind { GaussianMean, BinomialMean };

    Kind kind;
    double theta0 = 0.0;   // mean of the proxy law
    double s = 1.0;        // per-observation standard deviation
    long T = 1;
    double p = 0.5;        // Bernoulli parameter (BinomialMean only)
    double third_abs_moment = 0.0;  // zeta = E|X_1 - theta0|^3
    Cdf cdf;
    std::vector<double> jump_points;  // lattice of the step CDF, if any

    double proxy_sd() const { return s / std::sqrt(static_cast<double>(T)); }
};

inline ProxyTruth gaussian_mean_truth(double theta0, double s, long T) {
    if (!(s > 0.0) || T < 1) throw config_error("gaussian_mean_truth: bad parameters");
    ProxyTruth t;
    t.kind = ProxyTruth::Kind::GaussianMean;
    t.theta0 = theta0;
    t.s = s;
    t.T = T;
    // E|N(0,s)|^3 = 2 sqrt(2/pi) s^3
    t.third_abs_moment = 2.0 * std::sqrt(2.0 / M_PI) * s * s * s;
    t.cdf = gaussian_law_cdf(GaussianLaw(theta0, t.proxy_sd()));
    return t;
}

inline ProxyTruth binomial_mean_truth(long T, double p) {
    if (T < 1 || !(p > 0.0 && p < 1.0))
        throw config_error("binomial_mean_truth: bad parameters");
    ProxyTruth t;
    t.kind = ProxyTruth::Kind::BinomialMean;
    t.T = T;
    t.p = p;
    t.theta0 = p;
    t.s = std::sqrt(p * (1.0 - p));
    // E|X - p|^3 for Bernoulli(p)
    t.third_abs_moment = p * (1.0 - p) * ((1.0 - p) * (1.0 - p) + p * p);
    std::vector<Atom> atoms;
    const std::vector<double> pmf = binomial_mean_pmf(T, p);
    for (long k = 0; k <= T; ++k) {
        const double point = static_cast<double>(k) / static_cast<double>(T);
        atoms.push_back({point, pmf[static_cast<std::size_t>(k)]});
        t.jump_points.push_back(point);
    }
    t.cdf = density_cdf(Density1D::counting(std::move(atoms)));
    return t;
}

struct DistanceReport {
    double l2_cdf = 0.0;
    double sup_cdf = 0.0;
    std::optional<double> hellinger;
    std::optional<double> wasserstein2;
    std::optional<double> berry_esseen_bound;
};

inline double sup_cdf_distance(const Cdf& f1, const Cdf& f2,
                               const std::vector<double>& eval_grid) {
    if (eval_grid.empty()) throw config_error("sup_cdf_distance: empty grid");
    double sup = 0.0;
    for (double x : eval_grid) sup = std::max(sup, std::abs(f1(x) - f2(x)));
    return sup;
}

inline double l2_cdf_distance(const Cdf& f1, const Cdf& f2,
                              const std::vector<double>& eval_grid) {
    if (eval_grid.size() < 2) throw config_error("l2_cdf_distance: empty grid");
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < eval_grid.size(); ++i) {
        const double d = f1(eval_grid[i]) - f2(eval_grid[i]);
        const double sq = d * d;
        if (i > 0) acc += 0.5 * (sq + prev) * (eval_grid[i] - eval_grid[i - 1]);
        prev = sq;
    }
    return std::sqrt(acc);
}

inline double wasserstein1_numeric(const Cdf& f1, const Cdf& f2,
                                   const std::vector<double>& eval_grid) {
    if (eval_grid.size() < 2) throw config_error("wasserstein1_numeric: empty grid");
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < eval_grid.size(); ++i) {
        const double d = std::abs(f1(eval_grid[i]) - f2(eval_grid[i]));
        if (i > 0) acc += 0.5 * (d + prev) * (eval_grid[i] - eval_grid[i - 1]);
        prev = d;
    }
    return acc;
}

// Closed-form Hellinger distance between two Gaussians, in [0, sqrt(2)].
inline double hellinger_gaussian(const GaussianLaw& a, const GaussianLaw& b) {
    const double va = a.sd * a.sd, vb = b.sd * b.sd;
    const double bc = std::sqrt(2.0 * a.sd * b.sd / (va + vb)) *
                      std::exp(-0.25 * (a.mean - b.mean) * (a.mean - b.mean) / (va + vb));
    return kSqrt2 * std::sqrt(std::max(0.0, 1.0 - bc));
}

// Givens-Shortt closed form; reduces to |mu_a - mu_b| for equal scales.
inline double wasserstein2_gaussian(const GaussianLaw& a, const GaussianLaw& b) {
    const double dm = a.mean - b.mean;
    const double ds = a.sd - b.sd;
    return std::sqrt(dm * dm + ds * ds);
}

// Exact Kolmogorov distance between two Gaussians: the sup of |F1 - F2| is
// attained where the densities cross.
inline double kolmogorov_gaussian_exact(const GaussianLaw& a, const GaussianLaw& b) {
    if (a.mean == b.mean && a.sd == b.sd) return 0.0;
    if (a.sd == b.sd)
        return 2.0 * gaussian_cdf(std::abs(a.mean - b.mean) / (2.0 * a.sd)) - 1.0;
    const double va = a.sd * a.sd, vb = b.sd * b.sd;
    // log f_a(x) = log f_b(x):  A x^2 + B x + C = 0
    const double A = 1.0 / vb - 1.0 / va;
    const double B = 2.0 * (a.mean / va - b.mean / vb);
    const double C = b.mean * b.mean / vb - a.mean * a.mean / va +
                     2.0 * std::log(b.sd / a.sd);
    const double disc = B * B - 4.0 * A * C;
    double sup = 0.0;
    if (disc >= 0.0) {
        const double r = std::sqrt(disc);
        for (double x : {(-B + r) / (2.0 * A), (-B - r) / (2.0 * A)})
            sup = std::max(sup, std::abs(gaussian_cdf(x, a) - gaussian_cdf(x, b)));
    }
    return sup;
}

// C * zeta * s^{-3} / sqrt(T) with the Shevtsova constant as default.
inline double berry_esseen_bound(double third_abs_moment, double sd, long T,
                                 double C = 0.4748) {
    if (!(third_abs_moment >= 0.0) || !(sd > 0.0) || T < 1)
        throw config_error("berry_esseen_bound: bad moment arguments");
    if (!(C >= 0.3989 && C <= 0.4748))
        throw config_error("berry_esseen_bound: constant outside the admissible range");
    return C * third_abs_moment / (sd * sd * sd) / std::sqrt(static_cast<double>(T));
}

// Triangle-inequality envelope: exact Gaussian-vs-limit distance plus the
// Berry-Esseen term for the limit-vs-truth leg.
inline double kolmogorov_error_bound(const GaussianLaw& fitted, const ProxyTruth& truth) {
    const GaussianLaw limit(truth.theta0, truth.proxy_sd());
    return kolmogorov_gaussian_exact(fitted, limit) +
           berry_esseen_bound(truth.third_abs_moment, truth.s, truth.T);
}

// Monte-Carlo estimate of H_x(y) = P(F_hat(x) <= y) for the fitted CDF of the
// Gaussian approximation under i.i.d. N(theta0, s) data. Returns the estimate
// and its standard error.
struct OracleEstimate {
    double value;
    double std_error;
};

inline OracleEstimate fitted_cdf_law_oracle(double x, double y, double theta0, double s,
                                            long T, std::size_t n_mc, RngStream& stream,
                                            bool s_known = false) {
    if (T < 2 || !(s > 0.0)) throw config_error("fitted_cdf_law_oracle: bad parameters");
    if (y >= 1.0) return {1.0, 0.0};
    if (y <= 0.0) return {0.0, 0.0};
    const double rt = std::sqrt(static_cast<double>(T));
    std::size_t hits = 0;
    for (std::size_t m = 0; m < n_mc; ++m) {
        // (X_bar, s_T) via the normal/chi-square construction
        const double xbar = theta0 + s / rt * stream.next_gaussian();
        double st = s;
        if (!s_known) {
            double w = 0.0;
            for (long j = 0; j + 1 < T; ++j) {
                const double z = stream.next_gaussian();
                w += z * z;
            }
            st = s * std::sqrt(w / static_cast<double>(T));  // 1/T convention
        }
        const double fhat = gaussian_cdf((x - xbar) / (st / rt));
        if (fhat <= y) ++hits;
    }
    const double ph = static_cast<double>(hits) / static_cast<double>(n_mc);
    return {ph, std::sqrt(ph * (1.0 - ph) / static_cast<double>(n_mc))};
}

// Evaluation grid helper: uniform points over the union of effective ranges,
// with step-CDF jumps and their left limits spliced in.
inline std::vector<double> metric_eval_grid(double lo, double hi, std::size_t n,
                                            const std::vector<double>& jumps = {}) {
    if (!(hi > lo) || n < 2) throw config_error("metric_eval_grid: bad range");
    std::vector<double> g;
    g.reserve(n + 2 * jumps.size());
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g.push_back(lo + h * static_cast<double>(i));
    const double eps = 1e-12 * (hi - lo);
    for (double j : jumps) {
        g.push_back(j - eps);
        g.push_back(j);
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

}  // namespace neo
