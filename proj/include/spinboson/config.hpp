#pragma once

// Run configuration for the command-line driver. The config is a single JSON
// document with nested tables; every key is checked against the schema and
// unknown keys are hard errors, so a typo in a physics parameter cannot pass
// silently. All defaults live here, next to the parser.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinboson/chi_profile.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/spin_algebra.hpp"

namespace spinboson {

struct RunConfig {
    ChiProfile chi = ChiProfile::annular_bump();
    int radial_order = 3;
    int angular_order = 6;
    double r_max = 0.0;  // 0 = derive from the chi support radius

    SpinConfig spins{Eigen::Vector3d(0, 0, 1), {Eigen::Vector3d::Zero()}};

    int n_max = 4;
    std::size_t state_budget = 8'000'000;

    int order_p = 1;

    std::vector<double> h_list{0.2, 0.1, 0.05, 0.025};
    double eig_tol = 1e-11;
    int dense_threshold = 2000;
    int max_restarts = 60;

    std::vector<Eigen::Vector3d> field_points{
        Eigen::Vector3d(0.3, 0, 0), Eigen::Vector3d(0, 0.25, 0.4),
        Eigen::Vector3d(0.5, 0.5, 0)};
    double field_h = 0.05;

    double quad_rel_tol = 1e-10;
    int quad_max_intervals = 4000;

    std::vector<int> compare_rows{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};

    std::string out_dir = "out";
    std::uint64_t seed = 20250821;
    int threads = 1;

    double effective_r_max() const {
        return r_max > 0 ? r_max : chi.support_radius();
    }
};

namespace detail {

using json = nlohmann::ordered_json;

inline void reject_unknown(const json& obj, const std::string& path,
                           std::initializer_list<const char*> allowed) {
    if (!obj.is_object())
        throw ConfigError("config section '" + path + "' must be a table");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) known = true;
        if (!known)
            throw ConfigError("unknown config key '" +
                              (path.empty() ? item.key() : path + "." + item.key()) +
                              "'");
    }
}

template <typename T>
T fetch(const json& obj, const std::string& path, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config key '" + path + "." + key + "' has the wrong type");
    }
}

inline Eigen::Vector3d fetch_vec3(const json& obj, const std::string& path,
                                  const char* key, Eigen::Vector3d fallback) {
    if (!obj.contains(key)) return fallback;
    auto raw = fetch<std::vector<double>>(obj, path, key, {});
    if (raw.size() != 3)
        throw ConfigError("config key '" + path + "." + key +
                          "' must be a 3-component array");
    return Eigen::Vector3d(raw[0], raw[1], raw[2]);
}

inline std::vector<Eigen::Vector3d> fetch_points(const json& obj,
                                                 const std::string& path,
                                                 const char* key,
                                                 std::vector<Eigen::Vector3d> fallback) {
    if (!obj.contains(key)) return fallback;
    const json& arr = obj.at(key);
    if (!arr.is_array())
        throw ConfigError("config key '" + path + "." + key +
                          "' must be an array of 3-component arrays");
    std::vector<Eigen::Vector3d> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::vector<double> row;
        try {
            row = arr[i].get<std::vector<double>>();
        } catch (const json::exception&) {
            throw ConfigError("config key '" + path + "." + key + "' entry " +
                              std::to_string(i) + " has the wrong type");
        }
        if (row.size() != 3)
            throw ConfigError("config key '" + path + "." + key + "' entry " +
                              std::to_string(i) + " must have 3 components");
        out.emplace_back(row[0], row[1], row[2]);
    }
    return out;
}

inline ChiProfile parse_chi(const json& obj) {
    reject_unknown(obj, "chi",
                   {"kind", "center", "width", "amplitude", "power", "scale"});
    const std::string kind = fetch<std::string>(obj, "chi", "kind", "annular_bump");
    const double amplitude = fetch<double>(obj, "chi", "amplitude", 1.0);
    if (kind == "annular_bump") {
        if (obj.contains("power") || obj.contains("scale"))
            throw ConfigError("chi kind 'annular_bump' takes center/width, not power/scale");
        return ChiProfile::annular_bump(fetch<double>(obj, "chi", "center", 2.0),
                                        fetch<double>(obj, "chi", "width", 1.0),
                                        amplitude);
    }
    if (kind == "polynomial_gaussian") {
        if (obj.contains("center") || obj.contains("width"))
            throw ConfigError(
                "chi kind 'polynomial_gaussian' takes power/scale, not center/width");
        return ChiProfile::polynomial_gaussian(fetch<int>(obj, "chi", "power", 1),
                                               fetch<double>(obj, "chi", "scale", 1.0),
                                               amplitude);
    }
    throw ConfigError("chi.kind must be 'annular_bump' or 'polynomial_gaussian'");
}

}  // namespace detail

inline RunConfig parse_config(const nlohmann::ordered_json& root) {
    using detail::fetch;
    RunConfig cfg;
    detail::reject_unknown(root, "",
                           {"chi", "grid", "spins", "truncation", "expansion",
                            "oracle", "fields", "quadrature", "compare", "output",
                            "seed"});

    if (root.contains("chi")) cfg.chi = detail::parse_chi(root.at("chi"));

    if (root.contains("grid")) {
        const auto& g = root.at("grid");
        detail::reject_unknown(g, "grid", {"radial_order", "angular_order", "r_max"});
        cfg.radial_order = fetch<int>(g, "grid", "radial_order", cfg.radial_order);
        cfg.angular_order = fetch<int>(g, "grid", "angular_order", cfg.angular_order);
        cfg.r_max = fetch<double>(g, "grid", "r_max", cfg.r_max);
        if (cfg.radial_order < 2)
            throw ConfigError("grid.radial_order must be at least 2");
    }

    if (root.contains("spins")) {
        const auto& s = root.at("spins");
        detail::reject_unknown(s, "spins", {"beta", "positions"});
        cfg.spins.beta = detail::fetch_vec3(s, "spins", "beta", cfg.spins.beta);
        cfg.spins.positions =
            detail::fetch_points(s, "spins", "positions", cfg.spins.positions);
        if (cfg.spins.positions.empty())
            throw ConfigError("spins.positions must contain at least one site");
    }

    if (root.contains("truncation")) {
        const auto& t = root.at("truncation");
        detail::reject_unknown(t, "truncation", {"n_max", "state_budget"});
        cfg.n_max = fetch<int>(t, "truncation", "n_max", cfg.n_max);
        const long long budget =
            fetch<long long>(t, "truncation", "state_budget",
                             static_cast<long long>(cfg.state_budget));
        if (budget <= 0)
            throw ConfigError("truncation.state_budget must be positive");
        cfg.state_budget = static_cast<std::size_t>(budget);
        if (cfg.n_max < 0) throw ConfigError("truncation.n_max must be nonnegative");
    }

    if (root.contains("expansion")) {
        const auto& e = root.at("expansion");
        detail::reject_unknown(e, "expansion", {"p"});
        cfg.order_p = fetch<int>(e, "expansion", "p", cfg.order_p);
        if (cfg.order_p < 0) throw ConfigError("expansion.p must be nonnegative");
    }

    if (root.contains("oracle")) {
        const auto& o = root.at("oracle");
        detail::reject_unknown(o, "oracle",
                               {"h_list", "tol", "dense_threshold", "max_restarts"});
        cfg.h_list = fetch<std::vector<double>>(o, "oracle", "h_list", cfg.h_list);
        cfg.eig_tol = fetch<double>(o, "oracle", "tol", cfg.eig_tol);
        cfg.dense_threshold =
            fetch<int>(o, "oracle", "dense_threshold", cfg.dense_threshold);
        cfg.max_restarts = fetch<int>(o, "oracle", "max_restarts", cfg.max_restarts);
        if (cfg.h_list.empty()) throw ConfigError("oracle.h_list must be nonempty");
        for (double h : cfg.h_list)
            if (!(h > 0.0) || h > 1.0)
                throw ConfigError("oracle.h_list entries must lie in (0, 1]");
    }

    if (root.contains("fields")) {
        const auto& f = root.at("fields");
        detail::reject_unknown(f, "fields", {"points", "h"});
        cfg.field_points =
            detail::fetch_points(f, "fields", "points", cfg.field_points);
        cfg.field_h = fetch<double>(f, "fields", "h", cfg.field_h);
        if (!(cfg.field_h > 0.0)) throw ConfigError("fields.h must be positive");
    }

    if (root.contains("quadrature")) {
        const auto& q = root.at("quadrature");
        detail::reject_unknown(q, "quadrature", {"rel_tol", "max_intervals"});
        cfg.quad_rel_tol = fetch<double>(q, "quadrature", "rel_tol", cfg.quad_rel_tol);
        cfg.quad_max_intervals =
            fetch<int>(q, "quadrature", "max_intervals", cfg.quad_max_intervals);
    }

    if (root.contains("compare")) {
        const auto& c = root.at("compare");
        detail::reject_unknown(c, "compare", {"rows"});
        cfg.compare_rows =
            fetch<std::vector<int>>(c, "compare", "rows", cfg.compare_rows);
        for (int r : cfg.compare_rows)
            if (r < 1 || r > 12)
                throw ConfigError("compare.rows entries must lie in 1..12");
    }

    if (root.contains("output")) {
        const auto& o = root.at("output");
        detail::reject_unknown(o, "output", {"directory"});
        cfg.out_dir = fetch<std::string>(o, "output", "directory", cfg.out_dir);
    }

    cfg.seed = fetch<std::uint64_t>(root, "", "seed", cfg.seed);
    return cfg;
}

inline RunConfig parse_config_text(const std::string& text) {
    nlohmann::ordered_json root;
    try {
        root = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::ordered_json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");
    return parse_config(root);
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

inline nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
    using json = nlohmann::ordered_json;
    json chi;
    if (cfg.chi.kind() == ChiProfile::Kind::annular_bump) {
        chi = {{"kind", "annular_bump"},
               {"center", cfg.chi.center()},
               {"width", cfg.chi.width()},
               {"amplitude", cfg.chi.amplitude()}};
    } else {
        chi = {{"kind", "polynomial_gaussian"},
               {"power", cfg.chi.power()},
               {"scale", cfg.chi.scale()},
               {"amplitude", cfg.chi.amplitude()}};
    }
    json positions = json::array();
    for (const auto& x : cfg.spins.positions)
        positions.push_back({x[0], x[1], x[2]});
    json points = json::array();
    for (const auto& x : cfg.field_points) points.push_back({x[0], x[1], x[2]});
    return json{
        {"chi", chi},
        {"grid",
         {{"radial_order", cfg.radial_order},
          {"angular_order", cfg.angular_order},
          {"r_max", cfg.r_max}}},
        {"spins",
         {{"beta", {cfg.spins.beta[0], cfg.spins.beta[1], cfg.spins.beta[2]}},
          {"positions", positions}}},
        {"truncation", {{"n_max", cfg.n_max}, {"state_budget", cfg.state_budget}}},
        {"expansion", {{"p", cfg.order_p}}},
        {"oracle",
         {{"h_list", cfg.h_list},
          {"tol", cfg.eig_tol},
          {"dense_threshold", cfg.dense_threshold},
          {"max_restarts", cfg.max_restarts}}},
        {"fields", {{"points", points}, {"h", cfg.field_h}}},
        {"quadrature",
         {{"rel_tol", cfg.quad_rel_tol}, {"max_intervals", cfg.quad_max_intervals}}},
        {"compare", {{"rows", cfg.compare_rows}}},
        {"output", {{"directory", cfg.out_dir}}},
        {"seed", cfg.seed}};
}

// The expansion order must fit inside the photon-number truncation before any
// state enumeration happens: the full hierarchy needs vectors through step
// 2p+1 and therefore n_max >= 2p+2, while the infrared-open regime stops at
// step 2 and cannot go beyond p = 1.
inline void validate_expansion_request(const RunConfig& cfg) {
    if (cfg.chi.vanishes_near_zero()) {
        if (cfg.n_max < 2 * cfg.order_p + 2)
            throw PreconditionError(
                "expansion order p=" + std::to_string(cfg.order_p) +
                " requires truncation.n_max >= " + std::to_string(2 * cfg.order_p + 2) +
                ", got " + std::to_string(cfg.n_max));
    } else {
        if (cfg.order_p > 1)
            throw PreconditionError(
                "a profile that does not vanish near zero caps the expansion at p=1");
        if (cfg.n_max < 2)
            throw PreconditionError("the capped expansion requires truncation.n_max >= 2");
    }
}

}  // namespace spinboson
