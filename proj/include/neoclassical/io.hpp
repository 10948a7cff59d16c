#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "neoclassical/errors.hpp"
#include "neoclassical/montecarlo.hpp"

namespace neo {

// 17 significant digits: round-trips any double exactly.
inline std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Write-temp-rename so readers never observe a partial file.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw config_error("cannot write to " + path.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

// Single-column (or named-column) numeric CSV; reports bad rows by line number.
inline std::vector<double> read_data_csv(const std::filesystem::path& path,
                                         bool has_header = false,
                                         const std::string& column = "") {
    std::ifstream in(path);
    if (!in) throw ingest_error("cannot open data file: " + path.string());
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    std::size_t col = 0;
    bool expect_header = has_header || !column.empty();
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (expect_header) {
            expect_header = false;
            if (!column.empty()) {
                bool found = false;
                for (std::size_t i = 0; i < cells.size(); ++i)
                    if (cells[i] == column) { col = i; found = true; }
                if (!found)
                    throw ingest_error("column '" + column + "' not found in header");
            }
            continue;
        }
        if (col >= cells.size())
            throw ingest_error("line " + std::to_string(lineno) + ": missing column");
        try {
            std::size_t pos = 0;
            const double v = std::stod(cells[col], &pos);
            if (pos != cells[col].size())
                throw std::invalid_argument("trailing characters");
            values.push_back(v);
        } catch (const std::exception&) {
            throw ingest_error("line " + std::to_string(lineno) +
                               ": non-numeric value '" + cells[col] + "'");
        }
    }
    if (values.empty()) throw ingest_error("no numeric data in " + path.string());
    return values;
}

inline AssessmentConfig assessment_config_from_json(const nlohmann::json& j) {
    AssessmentConfig cfg;
    if (!j.contains("seed")) throw config_error("assessment config: missing 'seed'");
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (!j.contains("dgps")) throw config_error("assessment config: missing 'dgps'");
    for (const auto& d : j.at("dgps")) {
        const std::string kind = d.value("kind", "");
        if (kind == "gaussian")
            cfg.dgps.push_back(Dgp::gaussian(d.value("theta0", 0.0),
                                             d.value("s", 1.0)));
        else if (kind == "bernoulli")
            cfg.dgps.push_back(Dgp::bernoulli(d.value("p", 0.5)));
        else
            throw config_error("assessment config: dgp kind must be "
                               "'gaussian' or 'bernoulli'");
    }
    if (!j.contains("sample_sizes"))
        throw config_error("assessment config: missing 'sample_sizes'");
    cfg.sample_sizes = j.at("sample_sizes").get<std::vector<long>>();
    if (j.contains("replications"))
        cfg.replications = j.at("replications").get<std::size_t>();
    if (j.contains("levels")) cfg.levels = j.at("levels").get<std::vector<double>>();
    if (j.contains("sd_convention")) {
        const std::string c = j.at("sd_convention").get<std::string>();
        if (c == "div_t") cfg.sd_convention = SdConvention::DivT;
        else if (c == "div_t_minus_1") cfg.sd_convention = SdConvention::DivTm1;
        else throw config_error("assessment config: bad sd_convention");
    }
    cfg.validate();
    return cfg;
}

inline std::string assessment_rows_to_csv(const std::vector<AssessmentRow>& rows,
                                          const std::vector<double>& levels) {
    std::ostringstream out;
    out << "dgp,T,replications,degenerate,rmse_mean,rmse_se,l2,sup,l2_mcse,sup_mcse";
    for (double l : levels) out << ",cov_unadj_" << l;
    for (double l : levels) out << ",cov_adj_" << l;
    for (double l : levels) out << ",cov_unadj_mcse_" << l;
    for (double l : levels) out << ",cov_adj_mcse_" << l;
    out << "\r\n";
    for (const AssessmentRow& r : rows) {
        out << r.dgp_label << ',' << r.T << ',' << r.replications << ','
            << r.degenerate_count << ',' << num17(r.rmse_mean) << ','
            << num17(r.rmse_se) << ',' << num17(r.l2_mean) << ','
            << num17(r.sup_mean) << ',' << num17(r.l2_mean_se) << ','
            << num17(r.sup_mean_se);
        for (double l : levels) out << ',' << num17(r.coverage_unadjusted.at(l));
        for (double l : levels) out << ',' << num17(r.coverage_adjusted.at(l));
        for (double l : levels) out << ',' << num17(r.coverage_unadjusted_se.at(l));
        for (double l : levels) out << ',' << num17(r.coverage_adjusted_se.at(l));
        out << "\r\n";
    }
    return out.str();
}

inline nlohmann::json assessment_rows_to_json(const std::vector<AssessmentRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const AssessmentRow& r : rows) {
        nlohmann::json j;
        j["dgp"] = r.dgp_label;
        j["T"] = r.T;
        j["replications"] = r.replications;
        j["degenerate"] = r.degenerate_count;
        j["rmse_mean"] = r.rmse_mean;
        j["rmse_se"] = r.rmse_se;
        j["l2"] = r.l2_mean;
        j["sup"] = r.sup_mean;
        j["l2_mcse"] = r.l2_mean_se;
        j["sup_mcse"] = r.sup_mean_se;
        for (const auto& [level, cov] : r.coverage_unadjusted)
            j["coverage_unadjusted"][num17(level)] = cov;
        for (const auto& [level, cov] : r.coverage_adjusted)
            j["coverage_adjusted"][num17(level)] = cov;
        for (const auto& [level, se] : r.coverage_unadjusted_se)
            j["coverage_unadjusted_mcse"][num17(level)] = se;
        for (const auto& [level, se] : r.coverage_adjusted_se)
            j["coverage_adjusted_mcse"][num17(level)] = se;
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace neo
