#pragma once

#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "ghostgap/config.hpp"
#include "ghostgap/report.hpp"

namespace ghostgap {

namespace harness {

using nlohmann::json;

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

inline const ParamClass& need_class(const ExperimentConfig& cfg, const char* cmd) {
    require(cfg.cls.has_value(), std::string(cmd) + " needs a 'class' (and 'domain')");
    return *cfg.cls;
}

inline const FiniteMeasure& need_measure(const ExperimentConfig& cfg, const char* cmd) {
    require(cfg.measure.has_value(), std::string(cmd) + " needs a 'measure'");
    return *cfg.measure;
}

inline const Target& need_target(const ExperimentConfig& cfg, const char* cmd) {
    require(cfg.target.has_value(), std::string(cmd) + " needs a 'target'");
    return *cfg.target;
}

inline Rat need_eps(const ExperimentConfig& cfg, const char* cmd) {
    require(cfg.eps.has_value(), std::string(cmd) + " needs 'eps'");
    return *cfg.eps;
}

inline json run_vcdim(const ExperimentConfig& cfg) {
    const ParamClass& cls = need_class(cfg, "vcdim");
    VcResult r = vc_dimension(cls, cfg.vc_cap, cfg.budgets);
    return {{"vcdim", r.value}, {"saturated_at_cap", r.saturated_at_cap}, {"cap", cfg.vc_cap},
            {"class", cls.name}, {"class_size", cls.size()}};
}

inline json run_growth(const ExperimentConfig& cfg, std::string& csv) {
    const ParamClass& cls = need_class(cfg, "growth");
    require(!cfg.growth_m.empty(), "growth needs a nonempty 'growth_m' list");
    json rows = json::array();
    std::ostringstream table;
    table << "m,growth\n";
    for (int m : cfg.growth_m) {
        std::uint64_t g = growth_function(cls, m, cfg.budgets);
        rows.push_back({{"m", m}, {"growth", g}});
        table << m << ',' << g << '\n';
    }
    csv = table.str();
    return {{"class", cls.name}, {"values", rows}};
}

inline json run_sauer_check(const ExperimentConfig& cfg, std::string& csv) {
    const ParamClass& cls = need_class(cfg, "sauer-check");
    require(!cfg.growth_m.empty(), "sauer-check needs a nonempty 'growth_m' list");
    VcResult vc = vc_dimension(cls, cfg.vc_cap, cfg.budgets);
    require(!vc.saturated_at_cap,
            "vc dimension saturated at cap " + std::to_string(cfg.vc_cap) +
                "; raise 'vc_cap' so the Sauer bound uses the true dimension");
    json rows = json::array();
    std::ostringstream table;
    table << "m,growth,bound,ok\n";
    bool all_ok = true;
    for (int m : cfg.growth_m) {
        std::uint64_t g = growth_function(cls, m, cfg.budgets);
        std::uint64_t bound = sauer_shelah(vc.value, m);
        bool ok = g <= bound;
        all_ok = all_ok && ok;
        rows.push_back({{"m", m}, {"growth", g}, {"bound", bound}, {"ok", ok}});
        table << m << ',' << g << ',' << bound << ',' << (ok ? "true" : "false") << '\n';
    }
    csv = table.str();
    return {{"class", cls.name}, {"d", vc.value}, {"rows", rows}, {"all_ok", all_ok}};
}

inline json run_prob_exact(const ExperimentConfig& cfg, std::string& csv) {
    const ParamClass& cls = need_class(cfg, "prob-exact");
    const FiniteMeasure& mu = need_measure(cfg, "prob-exact");
    const Target& target = need_target(cfg, "prob-exact");
    Rat eps = need_eps(cfg, "prob-exact");
    json result =
        estimate_report_to_json(exact_bad_event_prob(cls, target, mu, cfg.m, eps, cfg.budgets));
    if (!cfg.eps_grid.empty()) {
        json sweep = json::array();
        std::ostringstream table;
        table << "eps,probability,bound,bound_satisfied\n";
        for (const Rat& e : cfg.eps_grid) {
            EstimateReport r = exact_bad_event_prob(cls, target, mu, cfg.m, e, cfg.budgets);
            sweep.push_back(estimate_report_to_json(r));
            table << e.to_string() << ',' << r.exact_probability.to_string() << ',' << r.bound
                  << ',' << (r.bound_satisfied ? "true" : "false") << '\n';
        }
        result["sweep"] = sweep;
        csv = table.str();
    }
    return result;
}

inline json run_prob_mc(const ExperimentConfig& cfg) {
    const ParamClass& cls = need_class(cfg, "prob-mc");
    const FiniteMeasure& mu = need_measure(cfg, "prob-mc");
    const Target& target = need_target(cfg, "prob-mc");
    Rat eps = need_eps(cfg, "prob-mc");
    EstimateReport mc =
        monte_carlo_bad_event_prob(cls, target, mu, cfg.m, eps, cfg.trials, cfg.seed,
                                   cfg.threads, cfg.delta_ci, cfg.budgets);
    json result = estimate_report_to_json(mc);
    if (cfg.compare_exact) {
        EstimateReport exact = exact_bad_event_prob(cls, target, mu, cfg.m, eps, cfg.budgets);
        double diff = std::abs(mc.probability - exact.probability);
        result["exact_probability"] = exact.exact_probability.to_string();
        result["exact_probability_float"] = exact.probability;
        result["abs_difference"] = diff;
        result["within_radius"] = diff <= mc.confidence_radius;
    }
    return result;
}

inline json run_bound_check(const ExperimentConfig& cfg, std::string& csv) {
    const ParamClass& cls = need_class(cfg, "bound-check");
    const FiniteMeasure& mu = need_measure(cfg, "bound-check");
    const Target& target = need_target(cfg, "bound-check");
    std::vector<Rat> grid = cfg.eps_grid;
    if (grid.empty()) grid.push_back(need_eps(cfg, "bound-check"));
    json rows = json::array();
    std::ostringstream table;
    table << "eps,probability,bound,bound_satisfied\n";
    for (const Rat& e : grid) {
        EstimateReport r = exact_bad_event_prob(cls, target, mu, cfg.m, e, cfg.budgets);
        if (!r.bound_satisfied)
            throw InternalError("symmetrization bound violated at eps=" + e.to_string() +
                                ": bound " + std::to_string(r.bound) + " < probability " +
                                r.exact_probability.to_string());
        rows.push_back(estimate_report_to_json(r));
        table << e.to_string() << ',' << r.exact_probability.to_string() << ',' << r.bound
              << ",true\n";
    }
    csv = table.str();
    return {{"m", static_cast<int>(cfg.m)}, {"rows", rows}, {"all_satisfied", true}};
}

inline json run_exchange_check(const ExperimentConfig& cfg) {
    const ParamClass& cls = need_class(cfg, "exchange-check");
    const FiniteMeasure& mu = need_measure(cfg, "exchange-check");
    const Target& target = need_target(cfg, "exchange-check");
    Rat eps = need_eps(cfg, "exchange-check");
    std::vector<std::vector<bool>> masks = cfg.swap_masks;
    // Random masks are derived from dedicated streams of the run seed.
    for (int k = 0; k < cfg.random_masks; ++k) {
        RngStream stream(cfg.seed, 0x6D61736BULL + static_cast<std::uint64_t>(k));
        std::vector<bool> mask(cfg.m);
        for (std::size_t i = 0; i < cfg.m; ++i) mask[i] = stream.next_below(2) == 1;
        masks.push_back(mask);
    }
    require(!masks.empty(), "exchange-check needs 'swap_masks' or 'random_masks' > 0");
    json rows = json::array();
    bool all_equal = true;
    for (const auto& mask : masks) {
        ExchangeReport r = exchangeability_check(cls, target, mu, cfg.m, eps, mask, cfg.budgets);
        all_equal = all_equal && r.equal;
        json bits = json::array();
        for (bool b : mask) bits.push_back(b ? 1 : 0);
        rows.push_back({{"mask", bits},
                        {"probability", r.probability.to_string()},
                        {"swapped_probability", r.swapped_probability.to_string()},
                        {"equal", r.equal}});
    }
    return {{"m", static_cast<int>(cfg.m)}, {"eps", eps.to_string()}, {"masks", rows},
            {"all_equal", all_equal}};
}

inline json run_separation_check(const ExperimentConfig& cfg) {
    require(cfg.domain != nullptr, "separation-check needs a 'domain'");
    require(cfg.canonical.contains("support"), "separation-check needs 'support'");
    bool ok = separation_witness_check(cfg.domain, cfg.support);
    std::size_t n = cfg.domain->size();
    return {{"support", cfg.support}, {"check", ok},
            {"pairs", static_cast<std::uint64_t>(n) * n}};
}

inline json run_pac_m(const ExperimentConfig& cfg) {
    require(cfg.pac.has_value(), "pac-m needs a 'pac' section {d, eps, delta}");
    const PacParams& p = *cfg.pac;
    long long m = pac_sample_complexity(p.d, p.eps, p.delta);
    return {{"d", p.d}, {"eps", p.eps}, {"delta", p.delta}, {"m", m}};
}

inline json run_construct_dump(const ExperimentConfig& cfg, std::string& csv) {
    const ParamClass& cls = need_class(cfg, "construct-dump");
    json point_ids = json::array();
    for (const auto& p : cls.domain->points()) point_ids.push_back(p.id);
    json rows = json::array();
    std::ostringstream table;
    table << "param";
    for (const auto& p : cls.domain->points()) table << ",x" << p.id;
    table << '\n';
    for (std::size_t theta = 0; theta < cls.size(); ++theta) {
        json row = json::array();
        table << '"' << cls.param_names[theta] << '"';
        for (const auto& p : cls.domain->points()) {
            int v = cls.eval(theta, p);
            row.push_back(v);
            table << ',' << v;
        }
        rows.push_back(row);
        table << '\n';
    }
    csv = table.str();
    return {{"name", cls.name}, {"params", cls.param_names}, {"point_ids", point_ids},
            {"rows", rows}};
}

}  // namespace harness

inline const std::vector<std::string>& subcommand_names() {
    static const std::vector<std::string> names = {
        "vcdim",       "growth",         "sauer-check",      "prob-exact",
        "prob-mc",     "bound-check",    "exchange-check",   "separation-check",
        "pac-m",       "construct-dump",
    };
    return names;
}

// Executes one experiment. Writes nothing; the caller routes the manifest and
// optional CSV table to files or stdout.
inline RunManifest run_experiment(const ExperimentConfig& cfg, const std::string& subcommand) {
    auto started = std::chrono::system_clock::now();
    nlohmann::json result;
    std::string csv;
    if (subcommand == "vcdim") {
        result = harness::run_vcdim(cfg);
    } else if (subcommand == "growth") {
        result = harness::run_growth(cfg, csv);
    } else if (subcommand == "sauer-check") {
        result = harness::run_sauer_check(cfg, csv);
    } else if (subcommand == "prob-exact") {
        result = harness::run_prob_exact(cfg, csv);
    } else if (subcommand == "prob-mc") {
        result = harness::run_prob_mc(cfg);
    } else if (subcommand == "bound-check") {
        result = harness::run_bound_check(cfg, csv);
    } else if (subcommand == "exchange-check") {
        result = harness::run_exchange_check(cfg);
    } else if (subcommand == "separation-check") {
        result = harness::run_separation_check(cfg);
    } else if (subcommand == "pac-m") {
        result = harness::run_pac_m(cfg);
    } else if (subcommand == "construct-dump") {
        result = harness::run_construct_dump(cfg, csv);
    } else {
        throw ValidationError("unknown subcommand '" + subcommand + "'");
    }
    RunManifest manifest;
    manifest.report = make_manifest(subcommand, cfg.canonical, cfg.seed, std::move(result), started);
    manifest.csv_text = std::move(csv);
    return manifest;
}

}  // namespace ghostgap
