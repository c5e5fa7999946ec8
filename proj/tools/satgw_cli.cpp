// SPDX-License-Identifier: Apache-2.0
//
// satgw: gateway-diversity outage calculator.
//
// Subcommands:
//   sop     system outage probability of one scenario file
//   approx  approximation methods vs the exact value, with TV diagnostics
//   study   random-ensemble studies (error curves, SOP / improvement sweeps)
//   bench   timing of the exact engines and fitted growth exponents
//
// Exit codes: 0 ok, 2 scenario parse/validation error, 3 infeasible
// scenario or invalid study grids, 4 method size limit exceeded.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "satgw/satgw.hpp"

namespace {

using satgw::io::OutputTable;

constexpr const char* na_cell = "na";

struct CommonOpts {
    std::string format = "csv";
    std::string out_path;  // empty: stdout (sop/approx/bench)
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out_path, "Write output to this path");
}

void emit(const OutputTable& table, const CommonOpts& opts) {
    if (opts.out_path.empty()) {
        table.write(std::cout, opts.format);
        return;
    }
    std::ofstream out(opts.out_path);
    if (!out)
        throw satgw::ParseError("cannot open output file: " + opts.out_path);
    table.write(out, opts.format);
}

satgw::SgdScenario require_scenario(const satgw::io::ScenarioDoc& doc) {
    if (!doc.scenario)
        throw satgw::ParseError("scenario file has no \"gateways\" section");
    return *doc.scenario;
}

int cmd_sop(const std::string& path, const std::string& method,
            const CommonOpts& opts) {
    const auto doc = satgw::io::load_scenario_file(path);
    const auto scenario = require_scenario(doc);
    const int n = scenario.n_gateways();

    const auto start = std::chrono::steady_clock::now();
    satgw::TailResult result{0.0, method, std::nullopt};
    if (method == "general") {
        result = satgw::sop_general(scenario);
    } else {
        if (!scenario.equal_capacities())
            throw satgw::ParseError(
                "method \"" + method +
                "\" needs equal gateway capacities; use --method general");
        const auto dr = satgw::threshold_from_demand(
            n, scenario.capacities().front(), scenario.total_demand());
        const satgw::TailQuery q(dr.threshold, n);
        const auto& p = scenario.outage_probs();
        double value = 0.0;
        if (method == "direct")
            value = satgw::tail_direct(p, q);
        else if (method == "cfe")
            value = satgw::tail_cfe(p, q);
        else if (method == "recursive")
            value = satgw::tail_recursive(p, q);
        else
            value = satgw::tail_from_pmf(satgw::pmf_fft(p), q);
        result = {value, method, q};
    }
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  start)
            .count();

    OutputTable table;
    table.add_meta("tool", std::string("satgw ") + satgw::version_string);
    table.add_meta("command", "sop");
    table.add_meta("method", method);
    table.columns = {"sop",    "availability", "threshold_L", "ratio_r",
                     "ceil_r", "n_gateways",   "method",      "wall_ms"};
    OutputTable::Cell threshold_cell{std::string(na_cell)};
    OutputTable::Cell ratio_cell{std::string(na_cell)};
    OutputTable::Cell ceil_cell{std::string(na_cell)};
    if (scenario.equal_capacities()) {
        const auto dr = satgw::threshold_from_demand(
            n, scenario.capacities().front(), scenario.total_demand());
        threshold_cell = std::int64_t(dr.threshold);
        ratio_cell = dr.ratio;
        ceil_cell = std::int64_t(dr.ceil_ratio);
    }
    table.rows.push_back({result.value, result.availability(), threshold_cell,
                          ratio_cell, ceil_cell, std::int64_t(n),
                          result.method, wall_ms});
    emit(table, opts);
    return 0;
}

int cmd_approx(const std::string& path, const std::string& methods_csv,
               const CommonOpts& opts) {
    const auto doc = satgw::io::load_scenario_file(path);
    const auto scenario = require_scenario(doc);
    if (!scenario.equal_capacities())
        throw satgw::ParseError(
            "approximations are defined for equal gateway capacities");
    const int n = scenario.n_gateways();
    const auto dr = satgw::threshold_from_demand(
        n, scenario.capacities().front(), scenario.total_demand());
    const satgw::TailQuery q(dr.threshold, n);
    const auto& p = scenario.outage_probs();
    const double exact = satgw::tail_recursive(p, q);
    const auto [ehm, lecam] = satgw::approx::tv_distance_and_bounds(p);

    std::vector<satgw::approx::Method> methods;
    {
        std::stringstream ss(methods_csv);
        std::string name;
        while (std::getline(ss, name, ',')) {
            bool found = false;
            for (auto m : satgw::experiments::all_methods) {
                if (name == satgw::approx::method_name(m)) {
                    methods.push_back(m);
                    found = true;
                }
            }
            if (!found)
                throw satgw::ParseError("unknown approximation method: " + name);
        }
        if (methods.empty())
            throw satgw::ParseError("no approximation methods selected");
    }

    OutputTable table;
    table.add_meta("tool", std::string("satgw ") + satgw::version_string);
    table.add_meta("command", "approx");
    table.add_meta("threshold_L", std::to_string(dr.threshold));
    table.add_meta("exact_sop", satgw::io::format_double(exact));
    table.columns = {"method",      "value",    "applicable",
                     "abs_error",   "tv_distance", "tv_bound"};
    for (auto m : methods) {
        const auto res = satgw::approx::evaluate(m, p, q);
        std::vector<OutputTable::Cell> row;
        row.emplace_back(std::string(satgw::approx::method_name(m)));
        if (res.applicable) {
            row.emplace_back(res.value);
            row.emplace_back(std::string("yes"));
            row.emplace_back(std::abs(res.value - exact));
        } else {
            row.emplace_back(std::string(na_cell));
            row.emplace_back(std::string("no"));
            row.emplace_back(std::string(na_cell));
        }
        const satgw::approx::TvDiagnostics* tv = nullptr;
        if (m == satgw::approx::Method::BA && ehm.applicable) tv = &ehm;
        if (m == satgw::approx::Method::PA) tv = &lecam;
        if (tv) {
            row.emplace_back(tv->tv_distance);
            row.emplace_back(tv->bound);
        } else {
            row.emplace_back(std::string(na_cell));
            row.emplace_back(std::string(na_cell));
        }
        table.rows.push_back(std::move(row));
    }
    emit(table, opts);
    return 0;
}

std::filesystem::path study_output_dir(const std::string& out_flag) {
    if (!out_flag.empty()) return out_flag;
    if (const char* env = std::getenv("SATGW_OUT_DIR")) return env;
    return ".";
}

void write_table_file(const OutputTable& table,
                      const std::filesystem::path& dir,
                      const std::string& stem, const std::string& format) {
    std::filesystem::create_directories(dir);
    const auto path = dir / (stem + (format == "json" ? ".json" : ".csv"));
    std::ofstream out(path);
    if (!out)
        throw satgw::ParseError("cannot open output file: " + path.string());
    table.write(out, format);
    std::cout << "wrote " << path.string() << "\n";
}

OutputTable study_table(const satgw::io::StudySpec& spec,
                        const std::string& which) {
    OutputTable table;
    table.add_meta("tool", std::string("satgw ") + satgw::version_string);
    table.add_meta("command", "study");
    table.add_meta("which", which);
    table.add_meta("seed", std::to_string(spec.config.seed));
    table.add_meta("n_configs", std::to_string(spec.config.n_configs));
    return table;
}

int cmd_study(const std::string& path, const std::string& which,
              std::int64_t seed_override, const CommonOpts& opts) {
    const auto doc = satgw::io::load_scenario_file(path);
    if (!doc.experiment)
        throw satgw::ParseError("study needs an \"experiment\" block");
    satgw::io::StudySpec spec = *doc.experiment;
    if (seed_override >= 0) spec.config.seed = std::uint64_t(seed_override);
    const auto dir = study_output_dir(opts.out_path);

    try {
        satgw::experiments::validate(spec.config);
        if (spec.base_n < 1 || spec.n_range.empty() ||
            spec.ceil_r_range.empty() || spec.k_range.empty())
            throw std::invalid_argument("empty study grid");

        if (which == "errors") {
            const auto rows = satgw::experiments::averaged_error_study(
                spec.config, spec.n_range);
            OutputTable table = study_table(spec, which);
            table.columns = {"n_gateways", "method",  "max_ae",
                             "rmse",       "mean_ae", "eval_set_size"};
            for (const auto& row : rows) {
                table.rows.push_back(
                    {std::int64_t(row.n_gateways),
                     std::string(satgw::approx::method_name(row.report.method)),
                     row.report.max_ae, row.report.rmse, row.report.mean_ae,
                     std::int64_t(row.report.eval_set_size)});
            }
            write_table_file(table, dir, "errors", opts.format);
            for (int n : spec.n_range) {
                std::cout << "N=" << n << " mean_ae order:";
                std::vector<const satgw::experiments::AveragedError*> per_n;
                for (const auto& row : rows)
                    if (row.n_gateways == n) per_n.push_back(&row);
                std::sort(per_n.begin(), per_n.end(),
                          [](auto* a, auto* b) {
                              return a->report.mean_ae < b->report.mean_ae;
                          });
                for (auto* row : per_n)
                    std::cout << " "
                              << satgw::approx::method_name(row->report.method);
                std::cout << "\n";
            }
        } else if (which == "sop-sweep") {
            const auto rows = satgw::experiments::sop_sweep(
                spec.config, spec.ceil_r_range, spec.n_range);
            OutputTable table = study_table(spec, which);
            table.columns = {"n_gateways", "ceil_r", "mean_sop"};
            double lo = 1.0, hi = 0.0;
            for (const auto& row : rows) {
                table.rows.push_back({std::int64_t(row.n_gateways),
                                      std::int64_t(row.ceil_ratio), row.value});
                lo = std::min(lo, row.value);
                hi = std::max(hi, row.value);
            }
            write_table_file(table, dir, "sop_sweep", opts.format);
            std::cout << "cells=" << rows.size() << " min_sop="
                      << satgw::io::format_double(lo)
                      << " max_sop=" << satgw::io::format_double(hi) << "\n";
        } else {  // improve-sweep
            const auto rows = satgw::experiments::improvement_sweep(
                spec.config, spec.base_n, spec.k_range);
            OutputTable table = study_table(spec, which);
            table.add_meta("base_n", std::to_string(spec.base_n));
            table.columns = {"base_n", "ceil_r", "extra_k", "mean_improvement",
                             "censored"};
            for (const auto& row : rows) {
                table.rows.push_back({std::int64_t(row.n_gateways),
                                      std::int64_t(row.ceil_ratio),
                                      std::int64_t(row.extra_k), row.value,
                                      row.censored});
            }
            write_table_file(table, dir, "improvement_sweep", opts.format);
            std::cout << "cells=" << rows.size() << "\n";
        }
    } catch (const std::invalid_argument& e) {
        throw satgw::InfeasibleError(std::string("invalid study grids: ") +
                                     e.what());
    }
    return 0;
}

int cmd_bench(int n_max, int fft_n_max, int repetitions, double min_sample_ms,
              const CommonOpts& opts) {
    const auto report = satgw::bench::run_standard_bench(
        n_max, fft_n_max, repetitions, min_sample_ms / 1000.0);
    OutputTable table;
    table.add_meta("tool", std::string("satgw ") + satgw::version_string);
    table.add_meta("command", "bench");
    table.add_meta("slope_cfe", satgw::io::format_double(report.slope_cfe));
    table.add_meta("slope_recursive_half",
                   satgw::io::format_double(report.slope_recursive_half));
    table.add_meta("slope_recursive_one",
                   satgw::io::format_double(report.slope_recursive_one));
    table.add_meta("slope_fft_pmf",
                   satgw::io::format_double(report.slope_fft_pmf));
    table.columns = {"method", "n_gateways", "median_seconds"};
    for (const auto& row : report.rows)
        table.rows.push_back(
            {row.method, std::int64_t(row.n_gateways), row.seconds});
    emit(table, opts);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage probability of load-sharing gateway-diversity networks"};
    app.require_subcommand(1);

    std::string scenario_path, method = "recursive",
                methods_csv = "BA,PA,NA,RNA,CB", which = "errors";
    std::int64_t seed_override = -1;
    int n_max = 4096, fft_n_max = 16384, repetitions = 5;
    double min_sample_ms = 10.0;
    CommonOpts sop_opts, approx_opts, study_opts, bench_opts;

    auto* sop = app.add_subcommand("sop", "Compute the system outage probability");
    sop->add_option("scenario", scenario_path, "Scenario file")->required();
    sop->add_option("--method", method, "Exact engine")
        ->check(CLI::IsMember({"direct", "cfe", "recursive", "fft", "general"}));
    add_common(sop, sop_opts);

    auto* approx =
        app.add_subcommand("approx", "Approximate the SOP and report errors");
    approx->add_option("scenario", scenario_path, "Scenario file")->required();
    approx->add_option("--methods", methods_csv, "Comma-separated method list");
    add_common(approx, approx_opts);

    auto* study = app.add_subcommand("study", "Random-ensemble studies");
    study->add_option("scenario", scenario_path, "Study definition file")
        ->required();
    study->add_option("--which", which, "Study kind")
        ->check(CLI::IsMember({"errors", "sop-sweep", "improve-sweep"}));
    study->add_option("--seed", seed_override,
                      "Override the seed from the study file");
    add_common(study, study_opts);

    auto* bench = app.add_subcommand("bench", "Time the exact engines");
    bench->add_option("--n-max", n_max, "Largest N for cfe/recursive grids");
    bench->add_option("--fft-n-max", fft_n_max, "Largest N for the PMF grid");
    bench->add_option("--repetitions", repetitions, "Timing samples per point");
    bench->add_option("--min-sample-ms", min_sample_ms,
                      "Minimum per-sample duration");
    add_common(bench, bench_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sop->parsed()) return cmd_sop(scenario_path, method, sop_opts);
        if (approx->parsed())
            return cmd_approx(scenario_path, methods_csv, approx_opts);
        if (study->parsed())
            return cmd_study(scenario_path, which, seed_override, study_opts);
        if (bench->parsed())
            return cmd_bench(n_max, fft_n_max, repetitions, min_sample_ms,
                             bench_opts);
    } catch (const satgw::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const satgw::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const satgw::SizeLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
