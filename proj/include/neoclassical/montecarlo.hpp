#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "neoclassical/adjustment.hpp"
#include "neoclassical/approximations.hpp"
#include "neoclassical/errors.hpp"
#include "neoclassical/metrics.hpp"
#include "neoclassical/rng.hpp"

namespace neo {

struct Dgp {
    enum class Kind { Gaussian, Bernoulli };

    Kind kind = Kind::Gaussian;
    double theta0 = 0.0;  // Gaussian mean
    double s = 1.0;       // Gaussian per-observation sd
    double p = 0.5;       // Bernoulli parameter

    static Dgp gaussian(double theta0, double s) {
        if (!(s > 0.0)) throw config_error("Dgp: s > 0 required");
        Dgp d;
        d.kind = Kind::Gaussian;
        d.theta0 = theta0;
        d.s = s;
        return d;
    }
    static Dgp bernoulli(double p) {
        if (!(p > 0.0 && p < 1.0)) throw config_error("Dgp: p in (0,1) required");
        Dgp d;
        d.kind = Kind::Bernoulli;
        d.p = p;
        return d;
    }

    std::string label() const {
        char buf[64];
        if (kind == Kind::Gaussian)
            std::snprintf(buf, sizeof(buf), "N(%g;%g)", theta0, s);
        else
            std::snprintf(buf, sizeof(buf), "B(%g)", p);
        return buf;
    }
};

struct AssessmentConfig {
    std::vector<Dgp> dgps;
    std::vector<long> sample_sizes;
    std::size_t replications = 10000;
    std::vector<double> levels = {0.68, 0.90, 0.95, 0.99};
    std::uint64_t seed = 0;
    SdConvention sd_convention = SdConvention::DivT;

    void validate() const {
        if (dgps.empty() || sample_sizes.empty())
            throw config_error("AssessmentConfig: need at least one DGP and one T");
        for (long T : sample_sizes)
            if (T < 2) throw config_error("AssessmentConfig: T >= 2 required");
        if (replications < 1) throw config_error("AssessmentConfig: M >= 1 required");
        for (double l : levels)
            if (!(l > 0.0 && l < 1.0))
                throw config_error("AssessmentConfig: levels in (0,1) required");
    }
};

inline ProxyTruth true_proxy_law(const Dgp& dgp, long T) {
    if (dgp.kind == Dgp::Kind::Gaussian)
        return gaussian_mean_truth(dgp.theta0, dgp.s, T);
    return binomial_mean_truth(T, dgp.p);
}

struct Replication {
    double xbar = 0.0;
    double se = 0.0;  // s_hat / sqrt(T)
    bool degenerate = false;
    double l2 = 0.0;
    double sup = 0.0;
    std::vector<double> coverage_unadjusted;  // one per level
    std::vector<double> coverage_adjusted;
};

namespace detail {

// Exact coverage of a closed interval [a, b] under the true proxy law.
class CoverageOracle {
  public:
    explicit CoverageOracle(const ProxyTruth& truth) : truth_(&truth) {
        if (truth.kind == ProxyTruth::Kind::BinomialMean) {
            const std::vector<double> pmf = binomial_mean_pmf(truth.T, truth.p);
            cum_.resize(pmf.size());
            double acc = 0.0;
            for (std::size_t k = 0; k < pmf.size(); ++k) cum_[k] = acc += pmf[k];
        }
    }

    double closed_interval(double a, double b) const {
        if (b < a) return 0.0;
        if (truth_->kind == ProxyTruth::Kind::GaussianMean) {
            const GaussianLaw law(truth_->theta0, truth_->proxy_sd());
            return gaussian_cdf(b, law) - gaussian_cdf(a, law);
        }
        const double Td = static_cast<double>(truth_->T);
        const long kmax =
            std::min<long>(truth_->T, static_cast<long>(std::floor(b * Td + 1e-9)));
        const long kmin =
            std::max<long>(0, static_cast<long>(std::ceil(a * Td - 1e-9)));
        if (kmax < kmin) return 0.0;
        const double upper = cum_[static_cast<std::size_t>(kmax)];
        const double lower = kmin > 0 ? cum_[static_cast<std::size_t>(kmin) - 1] : 0.0;
        return upper - lower;
    }

  private:
    const ProxyTruth* truth_;
    std::vector<double> cum_;
};

inline std::vector<double> draw_data(const Dgp& dgp, long T, RngStream& stream) {
    std::vector<double> x;
    x.reserve(static_cast<std::size_t>(T));
    for (long t = 0; t < T; ++t) {
        if (dgp.kind == Dgp::Kind::Gaussian)
            x.push_back(dgp.theta0 + dgp.s * stream.next_gaussian());
        else
            x.push_back(stream.next_uniform() < dgp.p ? 1.0 : 0.0);
    }
    return x;
}

}  // namespace detail

inline Replication replicate(const Dgp& dgp, long T, RngStream& stream,
                             const ProxyTruth& truth,
                             const detail::CoverageOracle& oracle,
                             const std::vector<double>& eval_grid,
                             const std::vector<double>& levels,
                             SdConvention conv = SdConvention::DivT) {
    const Sample sample(detail::draw_data(dgp, T, stream));
    Replication rec;
    rec.xbar = sample_mean(sample);
    const double sd = sample_sd(sample, conv);
    rec.se = sd / std::sqrt(static_cast<double>(T));
    rec.degenerate = !(sd > 0.0);
    if (!rec.degenerate) {
        const Cdf fitted = gaussian_law_cdf(GaussianLaw(rec.xbar, rec.se));
        rec.l2 = l2_cdf_distance(fitted, truth.cdf, eval_grid);
        rec.sup = sup_cdf_distance(fitted, truth.cdf, eval_grid);
    }
    for (double level : levels) {
        const double alpha = 1.0 - level;
        const double u = gaussian_quantile(1.0 - alpha / 2.0);
        const double half = rec.se * u;
        rec.coverage_unadjusted.push_back(
            oracle.closed_interval(rec.xbar - half, rec.xbar + half));
        rec.coverage_adjusted.push_back(
            oracle.closed_interval(rec.xbar - kSqrt2 * half, rec.xbar + kSqrt2 * half));
    }
    return rec;
}

inline double rmse(const std::vector<double>& values, double target) {
    if (values.empty()) throw config_error("rmse: empty input");
    double acc = 0.0;
    for (double v : values) acc += (v - target) * (v - target);
    return std::sqrt(acc / static_cast<double>(values.size()));
}

struct AssessmentRow {
    std::string dgp_label;
    long T = 0;
    std::size_t replications = 0;
    std::size_t degenerate_count = 0;
    double rmse_mean = 0.0;  // RMSE of the sample mean around theta0
    double rmse_se = 0.0;    // RMSE of s_hat/sqrt(T) around s/sqrt(T)
    double l2_mean = 0.0;
    double sup_mean = 0.0;
    std::map<double, double> coverage_unadjusted;  // level -> mean coverage
    std::map<double, double> coverage_adjusted;
    std::map<double, double> coverage_unadjusted_se;  // MC standard errors
    std::map<double, double> coverage_adjusted_se;
    double l2_mean_se = 0.0;
    double sup_mean_se = 0.0;
};

namespace detail {

inline double mean_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

inline double se_of_mean(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) /
                     static_cast<double>(v.size()));
}

}  // namespace detail

inline std::vector<AssessmentRow> run_assessment(const AssessmentConfig& cfg,
                                                 unsigned n_threads = 1) {
    cfg.validate();
    if (n_threads < 1) n_threads = 1;
    std::vector<AssessmentRow> rows;
    for (const Dgp& dgp : cfg.dgps) {
        for (long T : cfg.sample_sizes) {
            const ProxyTruth truth = true_proxy_law(dgp, T);
            const detail::CoverageOracle oracle(truth);
            const double sd = truth.proxy_sd();
            const std::vector<double> grid = metric_eval_grid(
                truth.theta0 - 12.0 * sd, truth.theta0 + 12.0 * sd, 601,
                truth.jump_points);
            const std::size_t M = cfg.replications;
            std::vector<Replication> recs(M);
            auto worker = [&](std::size_t begin, std::size_t end) {
                for (std::size_t m = begin; m < end; ++m) {
                    RngStream stream(cfg.seed, m);
                    recs[m] = replicate(dgp, T, stream, truth, oracle, grid,
                                        cfg.levels, cfg.sd_convention);
                }
            };
            if (n_threads == 1 || M < 2 * n_threads) {
                worker(0, M);
            } else {
                std::vector<std::thread> pool;
                const std::size_t chunk = (M + n_threads - 1) / n_threads;
                for (unsigned t = 0; t < n_threads; ++t) {
                    const std::size_t b = t * chunk;
                    if (b >= M) break;
                    pool.emplace_back(worker, b, std::min(M, b + chunk));
                }
                for (std::thread& th : pool) th.join();
            }

            // Aggregation in replication order: independent of thread layout.
            AssessmentRow row;
            row.dgp_label = dgp.label();
            row.T = T;
            row.replications = M;
            std::vector<double> xbars, ses, l2s, sups;
            std::vector<std::vector<double>> cov_u(cfg.levels.size()),
                cov_a(cfg.levels.size());
            for (const Replication& r : recs) {
                if (r.degenerate) ++row.degenerate_count;
                xbars.push_back(r.xbar);
                ses.push_back(r.se);
                if (!r.degenerate) {
                    l2s.push_back(r.l2);
                    sups.push_back(r.sup);
                }
                for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
                    cov_u[i].push_back(r.coverage_unadjusted[i]);
                    cov_a[i].push_back(r.coverage_adjusted[i]);
                }
            }
            row.rmse_mean = rmse(xbars, truth.theta0);
            row.rmse_se = rmse(ses, sd);
            row.l2_mean = detail::mean_of(l2s);
            row.sup_mean = detail::mean_of(sups);
            row.l2_mean_se = detail::se_of_mean(l2s);
            row.sup_mean_se = detail::se_of_mean(sups);
            for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
                row.coverage_unadjusted[cfg.levels[i]] = detail::mean_of(cov_u[i]);
                row.coverage_adjusted[cfg.levels[i]] = detail::mean_of(cov_a[i]);
                row.coverage_unadjusted_se[cfg.levels[i]] = detail::se_of_mean(cov_u[i]);
                row.coverage_adjusted_se[cfg.levels[i]] = detail::se_of_mean(cov_a[i]);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace neo
