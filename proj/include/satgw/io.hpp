// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "satgw/common.hpp"
#include "satgw/experiments.hpp"
#include "satgw/sgd.hpp"

namespace satgw::io {

using json = nlohmann::json;

/// Study parameters: the random ensemble plus the sweep grids.
struct StudySpec {
    experiments::RandomConfigSpec config;
    std::vector<int> n_range = {4, 5, 6, 7, 8, 9, 10};
    std::vector<int> ceil_r_range;  // defaults to 1..max(n_range)
    std::vector<int> k_range = {1, 2, 3, 4};
    int base_n = 5;
};

/// Parsed scenario document. A document may describe a concrete fleet
/// (gateways plus demand), a study, or both.
struct ScenarioDoc {
    std::optional<SgdScenario> scenario;
    std::vector<double> extra_probs;
    std::optional<StudySpec> experiment;
};

namespace detail {

inline void reject_unknown_keys(const json& obj,
                                std::initializer_list<const char*> allowed,
                                const char* where) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known)
            throw ParseError(std::string("unknown key \"") + item.key() +
                             "\" in " + where);
    }
}

inline double number_at(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw ParseError(std::string("missing or non-numeric \"") + key +
                         "\" in " + where);
    return obj[key].get<double>();
}

inline std::vector<int> int_range(const json& value, const char* where) {
    if (!value.is_array() || value.size() != 2 ||
        !value[0].is_number_integer() || !value[1].is_number_integer())
        throw ParseError(std::string(where) +
                         ": expected [low, high] integer pair");
    const int lo = value[0].get<int>();
    const int hi = value[1].get<int>();
    if (lo > hi)
        throw ParseError(std::string(where) + ": low bound exceeds high bound");
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

}  // namespace detail

inline ScenarioDoc parse_scenario_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("scenario root must be an object");
    detail::reject_unknown_keys(
        doc, {"gateways", "users", "total_demand", "extra_gateways", "experiment"},
        "scenario root");

    ScenarioDoc out;
    try {
        if (doc.contains("gateways")) {
            const json& gws = doc["gateways"];
            if (!gws.is_array() || gws.empty())
                throw ParseError("\"gateways\" must be a non-empty array");
            std::vector<double> caps, probs;
            for (const json& gw : gws) {
                if (!gw.is_object()) throw ParseError("gateway must be an object");
                detail::reject_unknown_keys(gw, {"capacity", "outage_prob"},
                                            "gateway entry");
                caps.push_back(detail::number_at(gw, "capacity", "gateway entry"));
                probs.push_back(
                    detail::number_at(gw, "outage_prob", "gateway entry"));
            }

            std::vector<double> demands;
            if (doc.contains("users") && doc.contains("total_demand"))
                throw ParseError("give either \"users\" or \"total_demand\", not both");
            if (doc.contains("users")) {
                const json& users = doc["users"];
                if (!users.is_array() || users.empty())
                    throw ParseError("\"users\" must be a non-empty array");
                for (const json& u : users) {
                    if (!u.is_object()) throw ParseError("user must be an object");
                    detail::reject_unknown_keys(u, {"demand"}, "user entry");
                    demands.push_back(detail::number_at(u, "demand", "user entry"));
                }
            } else if (doc.contains("total_demand")) {
                demands.push_back(
                    detail::number_at(doc, "total_demand", "scenario root"));
            } else {
                throw ParseError("scenario with gateways needs \"users\" or \"total_demand\"");
            }
            out.scenario.emplace(std::move(caps), std::move(demands),
                                 OutageVector(std::move(probs)));
        } else if (doc.contains("users") || doc.contains("total_demand") ||
                   doc.contains("extra_gateways")) {
            throw ParseError("demand or extra gateways given without \"gateways\"");
        }

        if (doc.contains("extra_gateways")) {
            const json& extras = doc["extra_gateways"];
            if (!extras.is_array())
                throw ParseError("\"extra_gateways\" must be an array");
            for (const json& gw : extras) {
                if (!gw.is_object())
                    throw ParseError("extra gateway must be an object");
                detail::reject_unknown_keys(gw, {"outage_prob"},
                                            "extra gateway entry");
                out.extra_probs.push_back(
                    detail::number_at(gw, "outage_prob", "extra gateway entry"));
            }
        }

        if (doc.contains("experiment")) {
            const json& exp = doc["experiment"];
            if (!exp.is_object())
                throw ParseError("\"experiment\" must be an object");
            detail::reject_unknown_keys(
                exp,
                {"n_configs", "n_gateways", "prob_range", "seed", "n_range",
                 "ceil_r_range", "k_range", "base_n"},
                "experiment block");
            StudySpec spec;
            if (exp.contains("n_configs"))
                spec.config.n_configs = exp["n_configs"].get<int>();
            if (exp.contains("n_gateways"))
                spec.config.n_gateways = exp["n_gateways"].get<int>();
            if (exp.contains("prob_range")) {
                const json& pr = exp["prob_range"];
                if (!pr.is_array() || pr.size() != 2 || !pr[0].is_number() ||
                    !pr[1].is_number())
                    throw ParseError("\"prob_range\" must be [low, high]");
                spec.config.prob_low = pr[0].get<double>();
                spec.config.prob_high = pr[1].get<double>();
            }
            if (exp.contains("seed"))
                spec.config.seed = exp["seed"].get<std::uint64_t>();
            if (exp.contains("n_range"))
                spec.n_range = detail::int_range(exp["n_range"], "n_range");
            if (exp.contains("ceil_r_range"))
                spec.ceil_r_range =
                    detail::int_range(exp["ceil_r_range"], "ceil_r_range");
            if (exp.contains("k_range"))
                spec.k_range = detail::int_range(exp["k_range"], "k_range");
            if (exp.contains("base_n")) spec.base_n = exp["base_n"].get<int>();
            if (spec.ceil_r_range.empty()) {
                int n_max = 1;
                for (int n : spec.n_range) n_max = std::max(n_max, n);
                for (int r = 1; r <= n_max; ++r) spec.ceil_r_range.push_back(r);
            }
            // Semantic validity of the grids (bounds ordering, positive
            // counts) is the study runner's concern, not the parser's.
            out.experiment = std::move(spec);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed scenario value: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid scenario contents: ") + e.what());
    }
    return out;
}

inline ScenarioDoc load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_json(buf.str());
}

/// Serialize a double with 17 significant digits (lossless round trip).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// A column-ordered result table with a metadata preamble, writable as CSV
/// (preamble as "# key=value" comment lines) or as a JSON document.
struct OutputTable {
    using Cell = std::variant<double, std::int64_t, std::string>;

    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_meta(std::string key, std::string value) {
        meta.emplace_back(std::move(key), std::move(value));
    }

    void write_csv(std::ostream& os) const {
        for (const auto& [k, v] : meta) os << "# " << k << "=" << v << "\n";
        for (std::size_t c = 0; c < columns.size(); ++c)
            os << columns[c] << (c + 1 < columns.size() ? "," : "");
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                std::visit(
                    [&](const auto& cell) {
                        using T = std::decay_t<decltype(cell)>;
                        if constexpr (std::is_same_v<T, double>)
                            os << format_double(cell);
                        else
                            os << cell;
                    },
                    row[c]);
                os << (c + 1 < row.size() ? "," : "");
            }
            os << "\n";
        }
    }

    void write_json(std::ostream& os) const {
        json doc;
        json m = json::object();
        for (const auto& [k, v] : meta) m[k] = v;
        doc["meta"] = std::move(m);
        doc["columns"] = columns;
        json jrows = json::array();
        for (const auto& row : rows) {
            json jrow = json::array();
            for (const auto& cell : row)
                std::visit([&](const auto& v) { jrow.push_back(v); }, cell);
            jrows.push_back(std::move(jrow));
        }
        doc["rows"] = std::move(jrows);
        os << doc.dump(2) << "\n";
    }

    void write(std::ostream& os, const std::string& format) const {
        if (format == "json")
            write_json(os);
        else
            write_csv(os);
    }
};

}  // namespace satgw::io
