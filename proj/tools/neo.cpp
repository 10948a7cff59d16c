// neo: command-line front end for neoclassical inference, the Monte-Carlo
// assessment harness, the sqrt(2) adjustment tables, and distance reports.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "neoclassical/adjustment.hpp"
#include "neoclassical/approximations.hpp"
#include "neoclassical/density.hpp"
#include "neoclassical/errors.hpp"
#include "neoclassical/inference.hpp"
#include "neoclassical/io.hpp"
#include "neoclassical/metrics.hpp"
#include "neoclassical/montecarlo.hpp"
#include "neoclassical/objectives.hpp"
#include "neoclassical/rng.hpp"

namespace {

using nlohmann::json;

struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t n = 2001;

    std::vector<double> build() const {
        if (!(hi > lo)) throw neo::config_error("grid: hi > lo required");
        if (n < 101 || n % 2 == 0)
            throw neo::config_error("grid: need an odd point count >= 101");
        std::vector<double> g(n);
        const double h = (hi - lo) / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) g[i] = lo + h * static_cast<double>(i);
        return g;
    }
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    std::stringstream ss(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw neo::config_error("grid: expected lo:hi:n");
    try {
        g.lo = std::stod(parts[0]);
        g.hi = std::stod(parts[1]);
        g.n = static_cast<std::size_t>(std::stoul(parts[2]));
    } catch (const std::exception&) {
        throw neo::config_error("grid: could not parse '" + text + "'");
    }
    return g;
}

json region_to_json(const neo::ConfidenceRegion& r) {
    json j;
    j["level"] = r.level;
    j["threshold_k"] = r.threshold_k;
    j["achieved_mass"] = r.achieved_mass;
    if (r.measure == neo::Measure::Lebesgue) {
        json iv = json::array();
        for (const neo::Interval& i : r.intervals) iv.push_back({i.lo, i.hi});
        j["intervals"] = std::move(iv);
    } else {
        j["atoms"] = r.member_atoms;
    }
    return j;
}

void write_output(const std::optional<std::string>& out, const std::string& content) {
    if (out)
        neo::atomic_write(*out, content);
    else
        std::cout << content;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw neo::config_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw neo::config_error("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"neoclassical inference toolkit"};
    app.require_subcommand(1);

    // ---- infer ----
    auto* infer = app.add_subcommand("infer", "estimate, HPD regions, tests");
    std::string infer_data, infer_approx = "gaussian", infer_grid, infer_column;
    std::string infer_objective, infer_criterion = "gaussian-kernel";
    std::string infer_criterion_params = "{}";
    std::vector<double> infer_alphas = {0.05};
    std::vector<double> infer_tests;
    double infer_theta_star = 0.0;
    bool infer_header = false;
    std::optional<std::string> infer_out;
    std::string infer_format = "json";
    infer->add_option("--data", infer_data, "CSV with one numeric column");
    infer->add_flag("--header", infer_header, "first data row is a header");
    infer->add_option("--column", infer_column, "named column to read");
    infer->add_option("--approx", infer_approx,
                      "gaussian|calibration|criterion-calibration|laplace|"
                      "criterion-laplace");
    infer->add_option("--grid", infer_grid, "lo:hi:n (odd n >= 101)");
    infer->add_option("--alpha", infer_alphas, "test levels alpha")->delimiter(',');
    infer->add_option("--test", infer_tests, "theta values to test")->delimiter(',');
    infer->add_option("--theta-star", infer_theta_star,
                      "selected value for calibration modes");
    infer->add_option("--objective", infer_objective,
                      "objective spec JSON (file or inline) for laplace modes");
    infer->add_option("--criterion", infer_criterion,
                      "criterion name for criterion-adjusted modes");
    infer->add_option("--criterion-params", infer_criterion_params,
                      "criterion parameters as inline JSON");
    infer->add_option("--out", infer_out, "output path (default stdout)");
    infer->add_option("--format", infer_format, "json|csv");

    // ---- assess ----
    auto* assess = app.add_subcommand("assess", "Monte-Carlo assessment harness");
    std::string assess_config;
    std::optional<std::string> assess_out;
    std::string assess_format = "csv";
    unsigned assess_threads = 1;
    std::optional<std::uint64_t> assess_seed;
    std::optional<std::size_t> assess_reps;
    std::string assess_profile;
    assess->add_option("config", assess_config, "assessment config JSON")->required();
    assess->add_option("--out", assess_out, "output path (default stdout)");
    assess->add_option("--format", assess_format, "csv|json");
    assess->add_option("--threads", assess_threads, "worker threads");
    assess->add_option("--seed", assess_seed, "override config seed");
    assess->add_option("--replications", assess_reps, "override replication count");
    assess->add_option("--profile", assess_profile,
                       "paper (M=10000) or ci (M=2000) replication default");

    // ---- tables ----
    auto* tables = app.add_subcommand(
        "tables", "level/critical-value conversion tables and curve data");
    std::string tables_dir = ".";
    tables->add_option("--out", tables_dir, "output directory");

    // ---- adjust ----
    auto* adjust = app.add_subcommand("adjust", "apply the sqrt(2) adjustment");
    std::string adjust_kind;
    double adjust_value = 0.0;
    adjust->add_option("kind", adjust_kind, "se|pvalue|tstat")->required();
    adjust->add_option("value", adjust_value, "value to adjust")->required();

    // ---- distance ----
    auto* distance = app.add_subcommand("distance", "metrics between two laws");
    std::vector<double> law1, law2;
    std::string dist_truth, dist_data;
    bool dist_header = false;
    std::optional<std::string> dist_out;
    distance->add_option("--law1", law1, "mean,sd of the first Gaussian")
        ->delimiter(',');
    distance->add_option("--law2", law2, "mean,sd of the second Gaussian")
        ->delimiter(',');
    distance->add_option("--truth", dist_truth,
                         "gaussian:theta0,s,T or binomial:T,p");
    distance->add_option("--fit-data", dist_data, "CSV data to fit a Gaussian to");
    distance->add_flag("--header", dist_header, "data file has a header row");
    distance->add_option("--out", dist_out, "output path (default stdout)");

    // ---- proxy-curves ----
    auto* curves = app.add_subcommand(
        "proxy-curves", "true proxy density and fitted replicas as plot data");
    double pc_theta0 = 0.0, pc_s = 0.4;
    long pc_T = 20;
    std::size_t pc_k = 2;
    std::uint64_t pc_seed = 1;
    std::string pc_grid;
    std::string pc_out = "proxy_curves";
    curves->add_option("--theta0", pc_theta0, "DGP mean");
    curves->add_option("--s", pc_s, "DGP standard deviation");
    curves->add_option("--T", pc_T, "sample size");
    curves->add_option("--k", pc_k, "number of fitted replicas");
    curves->add_option("--seed", pc_seed, "RNG seed");
    curves->add_option("--grid", pc_grid, "lo:hi:n");
    curves->add_option("--out", pc_out, "output path prefix");

    CLI11_PARSE(app, argc, argv);

    if (*infer) {
        if (infer_data.empty() && infer_approx != "calibration" &&
            infer_approx != "criterion-calibration")
            throw neo::config_error("infer: --data is required for this approximation");
        for (double a : infer_alphas)
            if (!(a > 0.0 && a < 1.0))
                throw neo::config_error("infer: alpha in (0,1) required");

        std::optional<neo::Sample> sample;
        if (!infer_data.empty())
            sample.emplace(neo::read_data_csv(infer_data, infer_header, infer_column));

        json report;
        report["schema_version"] = 1;
        report["approximation"] = infer_approx;

        std::optional<neo::Density1D> density;
        std::optional<neo::GaussianLaw> fitted;
        if (infer_approx == "gaussian") {
            fitted = neo::gaussian_approx(*sample);
            GridSpec g = infer_grid.empty()
                             ? GridSpec{fitted->mean - 8.0 * fitted->sd,
                                        fitted->mean + 8.0 * fitted->sd, 2001}
                             : parse_grid(infer_grid);
            std::vector<double> grid = g.build();
            std::vector<double> vals;
            vals.reserve(grid.size());
            for (double th : grid) vals.push_back(neo::gaussian_pdf(th, *fitted));
            density = neo::grid_density(std::move(grid), std::move(vals));
            report["fitted"] = {{"mean", fitted->mean}, {"sd", fitted->sd}};
        } else if (infer_approx == "calibration") {
            density = neo::plain_calibration(infer_theta_star);
        } else if (infer_approx == "criterion-calibration") {
            if (infer_grid.empty())
                throw neo::config_error("criterion-calibration: --grid is required");
            const neo::CriterionFn u = neo::build_criterion(
                infer_criterion, json::parse(infer_criterion_params));
            density = neo::criterion_adjusted_calibration(u, infer_theta_star,
                                                          parse_grid(infer_grid).build());
        } else if (infer_approx == "laplace" || infer_approx == "criterion-laplace") {
            if (infer_objective.empty())
                throw neo::config_error("laplace modes need --objective");
            json ospec = std::filesystem::exists(infer_objective)
                             ? load_json_file(infer_objective)
                             : json::parse(infer_objective, nullptr, false);
            if (ospec.is_discarded())
                throw neo::config_error("infer: bad objective JSON");
            const neo::ObjectiveFn obj =
                neo::build_objective(neo::ObjectiveSpec::from_json(ospec));
            GridSpec g;
            if (!infer_grid.empty()) {
                g = parse_grid(infer_grid);
            } else {
                const double m = neo::sample_mean(*sample);
                const double se = neo::sample_sd(*sample) /
                                  std::sqrt(static_cast<double>(sample->size()));
                g = GridSpec{m - 8.0 * se, m + 8.0 * se, 2001};
            }
            const long T = static_cast<long>(sample->size());
            if (infer_approx == "laplace") {
                density = neo::laplace_approx(obj, *sample, g.build(), T);
            } else {
                const neo::CriterionFn u = neo::build_criterion(
                    infer_criterion, json::parse(infer_criterion_params));
                density = neo::criterion_adjusted_laplace(u, obj, *sample, g.build(), T);
            }
        } else {
            throw neo::config_error("infer: unknown approximation '" + infer_approx + "'");
        }

        report["estimate"] = neo::mode_estimate(*density);
        json regions = json::array();
        for (double a : infer_alphas) {
            json jr = region_to_json(neo::hpd_region(*density, a));
            jr["alpha"] = a;
            if (fitted) {
                const neo::Interval iu =
                    neo::unadjusted_interval(fitted->mean, fitted->sd, a);
                const neo::Interval ia =
                    neo::adjusted_interval(fitted->mean, fitted->sd, a);
                jr["unadjusted_interval"] = {iu.lo, iu.hi};
                jr["adjusted_interval"] = {ia.lo, ia.hi};
            }
            regions.push_back(std::move(jr));
        }
        report["regions"] = std::move(regions);
        if (!infer_tests.empty()) {
            json tests = json::array();
            for (double a : infer_alphas) {
                for (double td : infer_tests) {
                    const neo::TestDecision t = neo::neoclassical_test(*density, a, td);
                    tests.push_back(
                        {{"alpha", a},
                         {"theta", td},
                         {"decision",
                          t.decision == neo::Decision::NotRejected ? "d_H" : "d_A"},
                         {"out_of_support", t.out_of_support}});
                }
            }
            report["tests"] = std::move(tests);
        }
        write_output(infer_out, report.dump(2) + "\n");
        return 0;
    }

    if (*assess) {
        neo::AssessmentConfig cfg =
            neo::assessment_config_from_json(load_json_file(assess_config));
        if (!assess_profile.empty()) {
            if (assess_profile == "paper") cfg.replications = 10000;
            else if (assess_profile == "ci") cfg.replications = 2000;
            else throw neo::config_error("assess: profile must be paper or ci");
        }
        if (assess_reps) cfg.replications = *assess_reps;
        if (assess_seed) cfg.seed = *assess_seed;
        if (const char* env = std::getenv("NEO_SEED"))
            cfg.seed = std::stoull(env);
        const std::vector<neo::AssessmentRow> rows =
            neo::run_assessment(cfg, assess_threads);
        if (assess_format == "csv")
            write_output(assess_out, neo::assessment_rows_to_csv(rows, cfg.levels));
        else if (assess_format == "json")
            write_output(assess_out, neo::assessment_rows_to_json(rows).dump(2) + "\n");
        else
            throw neo::config_error("assess: format must be csv or json");
        return 0;
    }

    if (*tables) {
        const std::filesystem::path dir(tables_dir);
        std::filesystem::create_directories(dir);
        const std::vector<double> nominal = {0.01, 0.05, 0.1, 0.32};
        std::ostringstream t3, t4, t6, fig;
        t3 << "nominal_level,adjusted_nominal_level\r\n";
        for (double a : nominal)
            t3 << neo::num17(a) << ',' << neo::num17(neo::nominal_to_adjusted(a))
               << "\r\n";
        t4 << "adjusted_nominal_level,nominal_level\r\n";
        for (double a : nominal)
            t4 << neo::num17(a) << ',' << neo::num17(neo::adjusted_to_nominal(a))
               << "\r\n";
        t6 << "critical_value,adjusted_critical_value\r\n";
        for (double c : {2.58, 1.96, 1.64, 0.99})
            t6 << neo::num17(c) << ',' << neo::num17(neo::adjust_critical_value(c))
               << "\r\n";
        fig << "nominal_level,adjusted_nominal_level\r\n";
        for (std::size_t i = 0; i < 512; ++i) {
            const double a = (static_cast<double>(i) + 1.0) / 512.0;
            fig << neo::num17(a) << ',' << neo::num17(neo::nominal_to_adjusted(a))
                << "\r\n";
        }
        neo::atomic_write(dir / "table_nominal_to_adjusted.csv", t3.str());
        neo::atomic_write(dir / "table_adjusted_to_nominal.csv", t4.str());
        neo::atomic_write(dir / "table_critical_values.csv", t6.str());
        neo::atomic_write(dir / "figure_level_curve.csv", fig.str());
        std::cout << "wrote 4 files to " << dir.string() << "\n";
        return 0;
    }

    if (*adjust) {
        double result = 0.0;
        if (adjust_kind == "se")
            result = neo::kSqrt2 * adjust_value;
        else if (adjust_kind == "pvalue")
            result = neo::nominal_to_adjusted(adjust_value);
        else if (adjust_kind == "tstat")
            result = neo::adjust_critical_value(adjust_value);
        else
            throw neo::config_error("adjust: kind must be se, pvalue, or tstat");
        std::cout << neo::num17(result) << "\n";
        return 0;
    }

    if (*distance) {
        json report;
        if (law1.size() == 2 && law2.size() == 2) {
            const neo::GaussianLaw a(law1[0], law1[1]);
            const neo::GaussianLaw b(law2[0], law2[1]);
            const double lo = std::min(a.mean - 10.0 * a.sd, b.mean - 10.0 * b.sd);
            const double hi = std::max(a.mean + 10.0 * a.sd, b.mean + 10.0 * b.sd);
            const auto grid = neo::metric_eval_grid(lo, hi, 4001);
            const neo::Cdf fa = neo::gaussian_law_cdf(a), fb = neo::gaussian_law_cdf(b);
            report["l2_cdf"] = neo::l2_cdf_distance(fa, fb, grid);
            report["sup_cdf"] = neo::kolmogorov_gaussian_exact(a, b);
            report["hellinger"] = neo::hellinger_gaussian(a, b);
            report["wasserstein2"] = neo::wasserstein2_gaussian(a, b);
            report["wasserstein1"] = neo::wasserstein1_numeric(fa, fb, grid);
        } else if (!dist_truth.empty() && !dist_data.empty()) {
            const neo::Sample sample(neo::read_data_csv(dist_data, dist_header));
            const neo::GaussianLaw fit = neo::gaussian_approx(sample);
            neo::ProxyTruth truth = [&] {
                const auto colon = dist_truth.find(':');
                if (colon == std::string::npos)
                    throw neo::config_error("distance: bad --truth spec");
                const std::string kind = dist_truth.substr(0, colon);
                std::stringstream ss(dist_truth.substr(colon + 1));
                std::vector<double> args;
                std::string tok;
                while (std::getline(ss, tok, ',')) args.push_back(std::stod(tok));
                if (kind == "gaussian" && args.size() == 3)
                    return neo::gaussian_mean_truth(args[0], args[1],
                                                    static_cast<long>(args[2]));
                if (kind == "binomial" && args.size() == 2)
                    return neo::binomial_mean_truth(static_cast<long>(args[0]), args[1]);
                throw neo::config_error("distance: bad --truth spec");
            }();
            const double sd = std::max(truth.proxy_sd(), fit.sd);
            const double lo = std::min(truth.theta0, fit.mean) - 12.0 * sd;
            const double hi = std::max(truth.theta0, fit.mean) + 12.0 * sd;
            const auto grid = neo::metric_eval_grid(lo, hi, 4001, truth.jump_points);
            const neo::Cdf ff = neo::gaussian_law_cdf(fit);
            report["fitted"] = {{"mean", fit.mean}, {"sd", fit.sd}};
            report["l2_cdf"] = neo::l2_cdf_distance(ff, truth.cdf, grid);
            report["sup_cdf"] = neo::sup_cdf_distance(ff, truth.cdf, grid);
            report["kolmogorov_error_bound"] = neo::kolmogorov_error_bound(fit, truth);
            if (truth.kind == neo::ProxyTruth::Kind::GaussianMean) {
                const neo::GaussianLaw tl(truth.theta0, truth.proxy_sd());
                report["hellinger"] = neo::hellinger_gaussian(fit, tl);
                report["wasserstein2"] = neo::wasserstein2_gaussian(fit, tl);
            }
        } else {
            throw neo::config_error(
                "distance: give --law1/--law2 or --truth with --fit-data");
        }
        write_output(dist_out, report.dump(2) + "\n");
        return 0;
    }

    if (*curves) {
        if (pc_k < 1) throw neo::config_error("proxy-curves: k >= 1 required");
        const neo::ProxyTruth truth = neo::gaussian_mean_truth(pc_theta0, pc_s, pc_T);
        const double sd = truth.proxy_sd();
        const GridSpec g = pc_grid.empty()
                               ? GridSpec{pc_theta0 - 5.0 * sd, pc_theta0 + 5.0 * sd, 401}
                               : parse_grid(pc_grid);
        const std::vector<double> grid = g.build();
        const neo::Dgp dgp = neo::Dgp::gaussian(pc_theta0, pc_s);
        std::vector<neo::GaussianLaw> fits;
        for (std::size_t r = 0; r < pc_k; ++r) {
            neo::RngStream stream(pc_seed, r);
            fits.push_back(
                neo::gaussian_approx(neo::Sample(neo::detail::draw_data(dgp, pc_T,
                                                                        stream))));
        }
        std::ostringstream csv;
        csv << "theta,f_true";
        for (std::size_t r = 0; r < pc_k; ++r) csv << ",f_fit_" << (r + 1);
        csv << "\r\n";
        const neo::GaussianLaw true_law(pc_theta0, sd);
        for (double th : grid) {
            csv << neo::num17(th) << ',' << neo::num17(neo::gaussian_pdf(th, true_law));
            for (const neo::GaussianLaw& f : fits)
                csv << ',' << neo::num17(neo::gaussian_pdf(th, f));
            csv << "\r\n";
        }
        const double u = neo::gaussian_quantile(0.975);
        json sidecar;
        sidecar["region_level"] = 0.95;
        sidecar["region"] = {pc_theta0 - u * sd, pc_theta0 + u * sd};
        neo::atomic_write(pc_out + ".csv", csv.str());
        neo::atomic_write(pc_out + "_region.json", sidecar.dump(2) + "\n");
        std::cout << "wrote " << pc_out << ".csv and " << pc_out << "_region.json\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const neo::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const neo::ingest_error& e) {
        std::cerr << "ingestion error: " << e.what() << "\n";
        return 3;
    } catch (const neo::degenerate_error& e) {
        std::cerr << "numeric degeneracy: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
