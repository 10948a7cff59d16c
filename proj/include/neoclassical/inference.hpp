#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "neoclassical/density.hpp"
#include "neoclassical/errors.hpp"

namespace neo {

struct Interval {
    double lo;
    double hi;
};

// Highest-density region: the level set {f >= threshold_k} with mass >= level.
struct ConfidenceRegion {
    double level = 0.0;
    double threshold_k = 0.0;
    Measure measure = Measure::Lebesgue;
    std::vector<Interval> intervals;      // Lebesgue case, disjoint and sorted
    std::vector<double> member_atoms;     // Counting case
    std::vector<std::size_t> member_idx;  // indices into the density's support
    double achieved_mass = 0.0;

    bool contains_index(std::size_t i) const {
        return std::binary_search(member_idx.begin(), member_idx.end(), i);
    }
};

enum class Decision { NotRejected, Rejected };  // d_H / d_A

struct TestDecision {
    Decision decision;
    double tested_value;
    bool out_of_support = false;
    ConfidenceRegion region;
};

// Maximizer of the density; ties broken toward the smallest support point.
inline double mode_estimate(const Density1D& d) {
    if (d.measure() == Measure::Lebesgue) {
        const auto& v = d.values();
        std::size_t best = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] > v[best]) best = i;
        return d.grid()[best];
    }
    const auto& a = d.atoms();
    std::size_t best = 0;
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i].mass > a[best].mass) best = i;
    return a[best].point;
}

namespace detail {

inline std::vector<double> density_heights(const Density1D& d) {
    if (d.measure() == Measure::Lebesgue) return d.values();
    std::vector<double> v;
    v.reserve(d.atoms().size());
    for (const Atom& a : d.atoms()) v.push_back(a.mass);
    return v;
}

}  // namespace detail

// Largest density threshold k whose level set {f >= k} still carries mass
// >= 1 - alpha: sorted-descending cumulative scan over the support.
inline double hpd_threshold(const Density1D& d, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw config_error("hpd_threshold: alpha in [0,1] required");
    const std::vector<double> f = detail::density_heights(d);
    if (alpha >= 1.0)
        return *std::max_element(f.begin(), f.end()) + 1.0;  // empty region
    std::vector<std::size_t> order(f.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&f](std::size_t a, std::size_t b) { return f[a] > f[b]; });
    const double target = 1.0 - alpha;
    double mass = 0.0;
    for (std::size_t r = 0; r < order.size(); ++r) {
        mass += d.point_mass(order[r]);
        if (mass >= target - 1e-9) return f[order[r]];
    }
    // Total mass is 1 up to tolerance, so we only get here through rounding.
    double kmin = std::numeric_limits<double>::infinity();
    for (double v : f)
        if (v > 0.0) kmin = std::min(kmin, v);
    return std::isfinite(kmin) ? kmin : 0.0;
}

inline ConfidenceRegion hpd_region(const Density1D& d, double alpha) {
    const double k = hpd_threshold(d, alpha);
    const std::vector<double> f = detail::density_heights(d);
    ConfidenceRegion region;
    region.level = 1.0 - alpha;
    region.threshold_k = k;
    region.measure = d.measure();
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] >= k) region.member_idx.push_back(i);
    double mass = 0.0;
    for (std::size_t i : region.member_idx) mass += d.point_mass(i);
    region.achieved_mass = std::min(1.0, mass);
    if (d.measure() == Measure::Counting) {
        for (std::size_t i : region.member_idx)
            region.member_atoms.push_back(d.atoms()[i].point);
        return region;
    }
    // Merge contiguous member indices into maximal closed intervals.
    const auto& g = d.grid();
    std::size_t run_start = 0;
    for (std::size_t r = 0; r < region.member_idx.size(); ++r) {
        const bool last = r + 1 == region.member_idx.size();
        if (last || region.member_idx[r + 1] != region.member_idx[r] + 1) {
            region.intervals.push_back(
                {g[region.member_idx[run_start]], g[region.member_idx[r]]});
            run_start = r + 1;
        }
    }
    return region;
}

// Trapezoid/atom mass of a member set given as support indices.
inline double region_mass(const Density1D& d, const ConfidenceRegion& region) {
    if (region.member_idx.empty()) return 0.0;
    if (region.member_idx.back() >= d.size())
        throw config_error("region_mass: member index off the density support");
    double mass = 0.0;
    for (std::size_t i : region.member_idx) mass += d.point_mass(i);
    return mass;
}

// Membership test of Definition-style form: theta_dot snaps to the nearest
// support point; values beyond the grid ends are rejected with a flag.
inline TestDecision neoclassical_test(const Density1D& d, double alpha,
                                      double theta_dot) {
    TestDecision t;
    t.tested_value = theta_dot;
    t.region = hpd_region(d, alpha);
    if (d.measure() == Measure::Lebesgue) {
        const auto& g = d.grid();
        const double h = d.spacing();
        if (theta_dot < g.front() - 0.5 * h || theta_dot > g.back() + 0.5 * h) {
            t.out_of_support = true;
            t.decision = Decision::Rejected;
            return t;
        }
        const double pos = (theta_dot - g.front()) / h;
        const std::size_t i = static_cast<std::size_t>(std::clamp(
            std::llround(pos), 0ll, static_cast<long long>(g.size()) - 1));
        t.decision = t.region.contains_index(i) ? Decision::NotRejected
                                                : Decision::Rejected;
        return t;
    }
    const auto& atoms = d.atoms();
    std::size_t best = 0;
    for (std::size_t i = 1; i < atoms.size(); ++i)
        if (std::abs(atoms[i].point - theta_dot) < std::abs(atoms[best].point - theta_dot))
            best = i;
    if (std::abs(atoms[best].point - theta_dot) >
        1e-9 * std::max(1.0, std::abs(theta_dot))) {
        t.out_of_support = true;
        t.decision = Decision::Rejected;
        return t;
    }
    t.decision = t.region.contains_index(best) ? Decision::NotRejected
                                               : Decision::Rejected;
    return t;
}

}  // namespace neo
