#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "neoclassical/approximations.hpp"
#include "neoclassical/errors.hpp"

namespace neo {

struct ObjectiveSpec {
    std::string name;  // gaussian-loglik | bernoulli-loglik | least-squares
    nlohmann::json params = nlohmann::json::object();
    std::string weight_name = "flat";  // flat | indicator-interval | gaussian-kernel
    nlohmann::json weight_params = nlohmann::json::object();

    static ObjectiveSpec from_json(const nlohmann::json& j) {
        ObjectiveSpec spec;
        if (!j.contains("name")) throw config_error("ObjectiveSpec: missing name");
        spec.name = j.at("name").get<std::string>();
        if (j.contains("params")) spec.params = j.at("params");
        if (j.contains("weight")) spec.weight_name = j.at("weight").get<std::string>();
        if (j.contains("weight_params")) spec.weight_params = j.at("weight_params");
        return spec;
    }
};

inline std::function<double(double)> build_weight(const std::string& name,
                                                  const nlohmann::json& params) {
    if (name == "flat") return [](double) { return 1.0; };
    if (name == "indicator-interval") {
        if (!params.contains("lo") || !params.contains("hi"))
            throw config_error("indicator-interval weight: lo and hi required");
        const double lo = params.at("lo").get<double>();
        const double hi = params.at("hi").get<double>();
        if (!(hi > lo)) throw config_error("indicator-interval weight: hi > lo required");
        return [lo, hi](double th) { return (th >= lo && th <= hi) ? 1.0 : 0.0; };
    }
    if (name == "gaussian-kernel") {
        const double center = params.value("center", 0.0);
        const double tau = params.value("tau", 1.0);
        if (!(tau > 0.0)) throw config_error("gaussian-kernel weight: tau > 0 required");
        return [center, tau](double th) {
            const double z = (th - center) / tau;
            return std::exp(-0.5 * z * z);
        };
    }
    throw config_error("unknown weight: " + name);
}

// Named objectives, stored as the per-observation average so exp(T * Q_T)
// matches the quasi-posterior kernel.
inline ObjectiveFn build_objective(const ObjectiveSpec& spec) {
    ObjectiveFn obj;
    if (spec.name == "gaussian-loglik") {
        const double sigma = spec.params.value("sigma", 1.0);
        if (!(sigma > 0.0)) throw config_error("gaussian-loglik: sigma > 0 required");
        obj.evaluator = [sigma](const Sample& s, double th) {
            double acc = 0.0;
            for (double x : s.observations) acc += (x - th) * (x - th);
            acc /= static_cast<double>(s.size());
            return -0.5 * acc / (sigma * sigma) - std::log(sigma) -
                   0.5 * std::log(2.0 * M_PI);
        };
    } else if (spec.name == "bernoulli-loglik") {
        obj.evaluator = [](const Sample& s, double th) {
            if (!(th > 0.0 && th < 1.0))
                return -std::numeric_limits<double>::infinity();
            const double xbar = sample_mean(s);
            return xbar * std::log(th) + (1.0 - xbar) * std::log1p(-th);
        };
    } else if (spec.name == "least-squares") {
        obj.evaluator = [](const Sample& s, double th) {
            double acc = 0.0;
            for (double x : s.observations) acc += (x - th) * (x - th);
            return -0.5 * acc / static_cast<double>(s.size());
        };
    } else {
        throw config_error("unknown objective: " + spec.name);
    }
    obj.weight = build_weight(spec.weight_name, spec.weight_params);
    return obj;
}

inline CriterionFn build_criterion(const std::string& name,
                                   const nlohmann::json& params) {
    CriterionFn u;
    if (name == "indicator") {
        const double width = params.value("width", 0.5);
        if (!(width > 0.0)) throw config_error("indicator criterion: width > 0 required");
        u.evaluator = [width](double a, double b) {
            return std::abs(a - b) <= width ? 1.0 : 0.0;
        };
    } else if (name == "gaussian-kernel") {
        const double tau = params.value("tau", 1.0);
        if (!(tau > 0.0)) throw config_error("gaussian-kernel criterion: tau > 0 required");
        u.evaluator = [tau](double a, double b) {
            const double z = (a - b) / tau;
            return std::exp(-0.5 * z * z);
        };
    } else {
        throw config_error("unknown criterion: " + name);
    }
    return u;
}

// Pointwise Radon-Nikodym ratio of a weighted Laplace density against the
// plain one, defined up to one global constant.
inline std::vector<double> weight_change_of_measure(const Density1D& plain,
                                                    const Density1D& weighted) {
    if (plain.measure() != Measure::Lebesgue || weighted.measure() != Measure::Lebesgue)
        throw config_error("weight_change_of_measure: grid densities required");
    if (plain.grid() != weighted.grid())
        throw config_error("weight_change_of_measure: densities on different grids");
    std::vector<double> ratio(plain.size(), 0.0);
    for (std::size_t i = 0; i < plain.size(); ++i) {
        if (weighted.values()[i] > 0.0 && !(plain.values()[i] > 0.0))
            throw degenerate_error(
                "weight_change_of_measure: weighted mass outside the plain support");
        if (plain.values()[i] > 0.0)
            ratio[i] = weighted.values()[i] / plain.values()[i];
    }
    return ratio;
}

}  // namespace neo
