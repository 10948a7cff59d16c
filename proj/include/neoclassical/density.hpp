#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "neoclassical/errors.hpp"
#include "neoclassical/gaussian.hpp"

namespace neo {

enum class Measure { Lebesgue, Counting };

struct Atom {
    double point;
    double mass;
};

// A normalized one-dimensional density together with its dominating measure:
// either density values on a uniformly spaced grid (Lebesgue) or a finite set
// of atoms (Counting).
class Density1D {
  public:
    static constexpr double kDefaultTol = 1e-10;

    static Density1D lebesgue(std::vector<double> grid, std::vector<double> values,
                              double tol = kDefaultTol) {
        Density1D d;
        d.measure_ = Measure::Lebesgue;
        d.grid_ = std::move(grid);
        d.values_ = std::move(values);
        d.tol_ = tol;
        d.validate_grid();
        d.check_normalization();
        return d;
    }

    static Density1D counting(std::vector<Atom> atoms, double tol = kDefaultTol) {
        Density1D d;
        d.measure_ = Measure::Counting;
        d.atoms_ = std::move(atoms);
        d.tol_ = tol;
        std::sort(d.atoms_.begin(), d.atoms_.end(),
                  [](const Atom& a, const Atom& b) { return a.point < b.point; });
        double total = 0.0;
        for (std::size_t i = 0; i < d.atoms_.size(); ++i) {
            if (d.atoms_[i].mass < 0.0)
                throw degenerate_error("Density1D: negative atom mass");
            if (i > 0 && d.atoms_[i].point == d.atoms_[i - 1].point)
                throw config_error("Density1D: duplicate atom points");
            total += d.atoms_[i].mass;
        }
        if (std::abs(total - 1.0) > tol)
            throw degenerate_error("Density1D: atom masses do not sum to 1");
        return d;
    }

    static Density1D dirac(double point) { return counting({{point, 1.0}}); }

    Measure measure() const { return measure_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    double spacing() const { return grid_.size() > 1 ? grid_[1] - grid_[0] : 0.0; }
    double tolerance() const { return tol_; }

    // Trapezoid weight of grid point i (half weight at the two ends).
    double point_mass(std::size_t i) const {
        if (measure_ == Measure::Counting) return atoms_[i].mass;
        const double h = spacing();
        const double w = (i == 0 || i + 1 == grid_.size()) ? 0.5 * h : h;
        return w * values_[i];
    }

    std::size_t size() const {
        return measure_ == Measure::Lebesgue ? grid_.size() : atoms_.size();
    }

  private:
    void validate_grid() const {
        if (grid_.size() < 2 || grid_.size() != values_.size())
            throw config_error("Density1D: need >= 2 grid points with matching values");
        const double h = grid_[1] - grid_[0];
        if (!(h > 0.0)) throw config_error("Density1D: grid must be strictly increasing");
        const double span = grid_.back() - grid_.front();
        for (std::size_t i = 1; i < grid_.size(); ++i) {
            const double hi = grid_[i] - grid_[i - 1];
            if (std::abs(hi - h) > 1e-12 * std::max(1.0, std::abs(span)))
                throw config_error("Density1D: grid spacing must be uniform");
        }
        for (double v : values_)
            if (!(v >= 0.0)) throw degenerate_error("Density1D: negative density value");
    }

    void check_normalization() const {
        double sum = 0.0;
        for (std::size_t i = 0; i < grid_.size(); ++i) sum += point_mass(i);
        if (std::abs(sum - 1.0) > tol_)
            throw degenerate_error("Density1D: density does not integrate to 1");
    }

    Measure measure_ = Measure::Lebesgue;
    std::vector<double> grid_;
    std::vector<double> values_;
    std::vector<Atom> atoms_;
    double tol_ = kDefaultTol;
};

// A cumulative distribution function with its generalized inverse
// F^{-1}(u) = inf{z : F(z) >= u}.
struct Cdf {
    enum class Kind { Continuous, Step };

    Kind kind = Kind::Continuous;
    std::function<double(double)> eval;
    std::function<double(double)> quantile;

    double operator()(double x) const { return eval(x); }
};

inline Cdf gaussian_law_cdf(const GaussianLaw& law) {
    Cdf f;
    f.kind = Cdf::Kind::Continuous;
    f.eval = [law](double x) { return gaussian_cdf(x, law); };
    f.quantile = [law](double u) { return gaussian_quantile(u, law); };
    return f;
}

// Normalize nonnegative grid values into a proper Lebesgue density
// (trapezoid-rule mass 1).
inline Density1D grid_density(std::vector<double> points, std::vector<double> raw,
                              double tol = Density1D::kDefaultTol) {
    if (points.size() < 2 || points.size() != raw.size())
        throw config_error("grid_density: need >= 2 points with matching values");
    const double h = points[1] - points[0];
    if (!(h > 0.0)) throw config_error("grid_density: nonincreasing grid");
    double integral = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!(raw[i] >= 0.0)) throw degenerate_error("grid_density: negative value");
        const double w = (i == 0 || i + 1 == raw.size()) ? 0.5 : 1.0;
        integral += w * h * raw[i];
    }
    if (!(integral > 0.0)) throw degenerate_error("grid_density: all-zero values");
    for (double& v : raw) v /= integral;
    return Density1D::lebesgue(std::move(points), std::move(raw), tol);
}

// Cumulative trapezoid (Lebesgue) or cumulative mass (Counting). The grid CDF
// is treated as piecewise linear between the accumulated node values.
inline Cdf density_cdf(const Density1D& d) {
    Cdf f;
    if (d.measure() == Measure::Lebesgue) {
        auto grid = std::make_shared<std::vector<double>>(d.grid());
        auto cum = std::make_shared<std::vector<double>>(grid->size(), 0.0);
        const auto& v = d.values();
        const double h = d.spacing();
        for (std::size_t i = 1; i < grid->size(); ++i)
            (*cum)[i] = (*cum)[i - 1] + 0.5 * h * (v[i] + v[i - 1]);
        f.kind = Cdf::Kind::Continuous;
        f.eval = [grid, cum](double x) {
            if (x <= grid->front()) return 0.0;
            if (x >= grid->back()) return std::min(1.0, cum->back());
            const auto it = std::upper_bound(grid->begin(), grid->end(), x);
            const std::size_t i = static_cast<std::size_t>(it - grid->begin());
            const double t = (x - (*grid)[i - 1]) / ((*grid)[i] - (*grid)[i - 1]);
            return (*cum)[i - 1] + t * ((*cum)[i] - (*cum)[i - 1]);
        };
        f.quantile = [grid, cum](double u) {
            if (!(u > 0.0 && u < 1.0))
                throw config_error("quantile: u must lie in (0,1)");
            const double target = std::min(u, cum->back());
            const auto it = std::lower_bound(cum->begin(), cum->end(), target);
            if (it == cum->begin()) return grid->front();
            if (it == cum->end()) return grid->back();
            const std::size_t i = static_cast<std::size_t>(it - cum->begin());
            const double rise = (*cum)[i] - (*cum)[i - 1];
            if (rise <= 0.0) return (*grid)[i];  // flat segment: inf convention
            const double t = (target - (*cum)[i - 1]) / rise;
            return (*grid)[i - 1] + t * ((*grid)[i] - (*grid)[i - 1]);
        };
    } else {
        auto atoms = std::make_shared<std::vector<Atom>>(d.atoms());
        auto cum = std::make_shared<std::vector<double>>();
        double total = 0.0;
        for (const Atom& a : *atoms) cum->push_back(total += a.mass);
        f.kind = Cdf::Kind::Step;
        f.eval = [atoms, cum](double x) {
            const auto it = std::upper_bound(
                atoms->begin(), atoms->end(), x,
                [](double v, const Atom& a) { return v < a.point; });
            if (it == atoms->begin()) return 0.0;
            return (*cum)[static_cast<std::size_t>(it - atoms->begin()) - 1];
        };
        f.quantile = [atoms, cum](double u) {
            if (!(u > 0.0 && u < 1.0))
                throw config_error("quantile: u must lie in (0,1)");
            for (std::size_t i = 0; i < atoms->size(); ++i)
                if ((*cum)[i] >= u - 1e-15) return (*atoms)[i].point;
            return atoms->back().point;
        };
    }
    return f;
}

// P(S/T <= x) for S ~ Binomial(T, p); right-continuous step function.
inline double binomial_mean_cdf(double x, long T, double p) {
    if (T < 1) throw config_error("binomial_mean_cdf: T >= 1 required");
    if (!(p >= 0.0 && p <= 1.0)) throw config_error("binomial_mean_cdf: p in [0,1]");
    const double kf = std::floor(x * static_cast<double>(T) + 1e-9);
    if (kf < 0.0) return 0.0;
    const long k = std::min(T, static_cast<long>(kf));
    if (k >= T) return 1.0;
    if (p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;  // k < T here
    double cdf = 0.0;
    const double lp = std::log(p), lq = std::log1p(-p);
    for (long j = 0; j <= k; ++j) {
        const double lpmf = std::lgamma(T + 1.0) - std::lgamma(j + 1.0) -
                            std::lgamma(T - j + 1.0) + j * lp + (T - j) * lq;
        cdf += std::exp(lpmf);
    }
    return std::min(1.0, cdf);
}

// Probability masses of S/T at the lattice points {0, 1/T, ..., 1}.
inline std::vector<double> binomial_mean_pmf(long T, double p) {
    if (T < 1) throw config_error("binomial_mean_pmf: T >= 1 required");
    if (!(p >= 0.0 && p <= 1.0)) throw config_error("binomial_mean_pmf: p in [0,1]");
    std::vector<double> pmf(static_cast<std::size_t>(T) + 1, 0.0);
    if (p == 0.0) { pmf[0] = 1.0; return pmf; }
    if (p == 1.0) { pmf.back() = 1.0; return pmf; }
    const double lp = std::log(p), lq = std::log1p(-p);
    for (long j = 0; j <= T; ++j)
        pmf[static_cast<std::size_t>(j)] =
            std::exp(std::lgamma(T + 1.0) - std::lgamma(j + 1.0) -
                     std::lgamma(T - j + 1.0) + j * lp + (T - j) * lq);
    return pmf;
}

// Inverse-transform draw: pushes a uniform through the generalized inverse.
inline double sample_generic_proxy(const Cdf& f, double u) {
    if (!(u > 0.0 && u < 1.0))
        throw config_error("sample_generic_proxy: u must lie in (0,1)");
    return f.quantile(u);
}

}  // namespace neo
