#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ghostgap/combinatorics.hpp"
#include "ghostgap/concept_class.hpp"
#include "ghostgap/constructors.hpp"
#include "ghostgap/domain.hpp"
#include "ghostgap/families.hpp"
#include "ghostgap/symmetrization.hpp"

namespace ghostgap {

struct PacParams {
    int d = 0;
    double eps = 0.1;
    double delta = 0.05;
};

// A fully validated experiment description. `canonical` is the normalized
// config document: defaults materialized, fractions reduced, unknown keys
// rejected at parse time. Identical experiments canonicalize identically.
struct ExperimentConfig {
    nlohmann::json canonical;

    DomainPtr domain;                      // null when the config has no domain
    std::optional<FiniteMeasure> measure;
    std::optional<ParamClass> cls;
    std::optional<Target> target;

    std::size_t m = 1;
    std::optional<Rat> eps;
    std::string mode = "exact";
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double delta_ci = kDefaultDeltaCi;
    bool compare_exact = false;
    Budgets budgets = Budgets::defaults();
    int vc_cap = 8;

    std::vector<int> growth_m;
    std::optional<PacParams> pac;
    std::vector<std::vector<bool>> swap_masks;
    int random_masks = 0;
    std::vector<int> support;
    std::vector<Rat> eps_grid;

    std::string out_path;
    std::string csv_path;
};

namespace cfg {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
    throw ValidationError(where + ": " + what);
}

inline void check_keys(const json& obj, const std::vector<std::string>& allowed,
                       const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool known = false;
        for (const auto& a : allowed) known = known || key == a;
        if (!known) fail(where, "unknown key '" + key + "'");
    }
}

inline const json& need(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing required key '") + key + "'");
    return *it;
}

inline Rat to_rat(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_string()) {
        try {
            return Rat::from_string(v.get<std::string>());
        } catch (const ParseError& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected an integer or an exact fraction string like \"1/4\"");
}

inline int to_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<int>();
}

inline std::uint64_t to_u64(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        fail(where, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

inline double to_double(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    return v.get<double>();
}

inline std::string to_str(const json& v, const std::string& where) {
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
}

inline std::vector<int> to_int_list(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of integers");
    std::vector<int> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(to_int(e, where));
    return out;
}

// ---- domain / measure ----

inline DomainPtr resolve_domain(const json& spec, json& canonical) {
    const std::string where = "domain";
    check_keys(spec, {"grid", "points"}, where);
    if (spec.contains("grid") == spec.contains("points"))
        fail(where, "needs exactly one of 'grid' or 'points'");
    if (spec.contains("grid")) {
        const json& g = spec["grid"];
        check_keys(g, {"lo", "hi", "n"}, where + ".grid");
        Rat lo = to_rat(need(g, "lo", where), where + ".grid.lo");
        Rat hi = to_rat(need(g, "hi", where), where + ".grid.hi");
        int n = to_int(need(g, "n", where), where + ".grid.n");
        canonical["grid"] = {{"lo", lo.to_string()}, {"hi", hi.to_string()}, {"n", n}};
        return FiniteDomain::grid(lo, hi, n);
    }
    const json& pts = spec["points"];
    if (!pts.is_array() || pts.empty()) fail(where, "'points' must be a nonempty array");
    std::vector<DomainPoint> points;
    json canon_pts = json::array();
    for (const auto& p : pts) {
        if (p.is_number_integer()) {
            points.push_back(DomainPoint{to_int(p, where), std::nullopt});
            canon_pts.push_back(json{{"id", points.back().id}});
        } else if (p.is_object()) {
            check_keys(p, {"id", "coord"}, where + ".points[]");
            DomainPoint dp;
            dp.id = to_int(need(p, "id", where), where + ".points[].id");
            json cp{{"id", dp.id}};
            if (p.contains("coord")) {
                dp.coord = to_rat(p["coord"], where + ".points[].coord");
                cp["coord"] = dp.coord->to_string();
            }
            points.push_back(dp);
            canon_pts.push_back(cp);
        } else {
            fail(where, "points must be integers or {id, coord} objects");
        }
    }
    canonical["points"] = canon_pts;
    return std::make_shared<const FiniteDomain>(std::move(points));
}

inline FiniteMeasure resolve_measure(const json& spec, const DomainPtr& domain,
                                     json& canonical) {
    const std::string where = "measure";
    check_keys(spec, {"weights"}, where);
    const json& w = need(spec, "weights", where);
    if (w.is_string()) {
        if (w.get<std::string>() != "uniform")
            fail(where, "weights must be \"uniform\" or an array of fractions");
        canonical["weights"] = "uniform";
        return FiniteMeasure::uniform(domain);
    }
    if (!w.is_array()) fail(where, "weights must be \"uniform\" or an array of fractions");
    std::vector<Rat> weights;
    json canon_w = json::array();
    for (const auto& e : w) {
        weights.push_back(to_rat(e, where + ".weights[]"));
        canon_w.push_back(weights.back().to_string());
    }
    canonical["weights"] = canon_w;
    return FiniteMeasure(domain, std::move(weights));
}

// ---- class expressions ----

inline ParamClass resolve_class(const json& expr, const DomainPtr& domain,
                                const std::string& where);

inline std::vector<std::vector<int>> to_rows(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) fail(where, "expected a nonempty array of label rows");
    std::vector<std::vector<int>> rows;
    for (const auto& r : v) rows.push_back(to_int_list(r, where));
    return rows;
}

inline MergeFn resolve_merge(const json& body, const ParamClass& left, const ParamClass& right,
                             const std::string& where) {
    std::string kind = to_str(need(body, "merge", where), where + ".merge");
    if (kind == "left") return merge_left(left);
    if (kind == "right") return merge_right(right);
    if (kind == "xor") return merge_xor(left, right);
    if (kind != "table") fail(where, "merge must be one of table|left|right|xor");
    const json& t = need(body, "merge_table", where);
    // merge_table[i][j][point_index], total on Theta1 x Theta2 x X.
    if (!t.is_array() || t.size() != left.size())
        fail(where, "merge_table needs one block per left parameter");
    auto dom = left.domain;
    std::vector<std::vector<std::vector<int>>> table;
    for (const auto& block : t) {
        if (!block.is_array() || block.size() != right.size())
            fail(where, "merge_table blocks need one row per right parameter");
        std::vector<std::vector<int>> rows;
        for (const auto& row : block) {
            auto labels = to_int_list(row, where + ".merge_table");
            if (labels.size() != dom->size())
                fail(where, "merge_table rows need one label per domain point");
            for (int v : labels)
                if (v != 0 && v != 1) fail(where, "merge_table labels must be 0 or 1");
            rows.push_back(std::move(labels));
        }
        table.push_back(std::move(rows));
    }
    return [dom, table = std::move(table)](std::size_t i, std::size_t j, const DomainPoint& x) {
        return table[i][j][dom->index_of_id(x.id)];
    };
}

inline ParamClass resolve_class(const json& expr, const DomainPtr& domain,
                                const std::string& where) {
    if (!expr.is_object() || expr.size() != 1)
        fail(where, "class expression must be an object with exactly one constructor key");
    const std::string kind = expr.begin().key();
    const json& body = expr.begin().value();

    if (kind == "threshold") {
        check_keys(body, {}, where + ".threshold");
        return threshold_class(domain);
    }
    if (kind == "interval") {
        check_keys(body, {}, where + ".interval");
        return interval_class(domain);
    }
    if (kind == "table") {
        check_keys(body, {"rows"}, where + ".table");
        return table_class(domain, to_rows(need(body, "rows", where), where + ".table.rows"));
    }
    if (kind == "singleton" || kind == "singleton_witness") {
        check_keys(body, {"support"}, where + "." + kind);
        return singleton_witness_class(
            domain, to_int_list(need(body, "support", where), where + "." + kind + ".support"));
    }
    if (kind == "patch") {
        check_keys(body, {"left", "right", "router"}, where + ".patch");
        return patch_class(resolve_class(need(body, "left", where), domain, where + ".patch.left"),
                           resolve_class(need(body, "right", where), domain, where + ".patch.right"),
                           resolve_class(need(body, "router", where), domain, where + ".patch.router"));
    }
    if (kind == "interp_fixed") {
        check_keys(body, {"left", "right", "region"}, where + ".interp_fixed");
        return interp_fixed(
            resolve_class(need(body, "left", where), domain, where + ".interp_fixed.left"),
            resolve_class(need(body, "right", where), domain, where + ".interp_fixed.right"),
            to_int_list(need(body, "region", where), where + ".interp_fixed.region"));
    }
    if (kind == "interp_family") {
        check_keys(body, {"left", "right", "regions"}, where + ".interp_family");
        const json& regions = need(body, "regions", where);
        if (!regions.is_array()) fail(where, "regions must be an array of id arrays");
        std::vector<std::vector<int>> region_lists;
        for (const auto& r : regions)
            region_lists.push_back(to_int_list(r, where + ".interp_family.regions[]"));
        return interp_countable(
            resolve_class(need(body, "left", where), domain, where + ".interp_family.left"),
            resolve_class(need(body, "right", where), domain, where + ".interp_family.right"),
            region_lists);
    }
    if (kind == "amalg") {
        check_keys(body, {"left", "right", "pi1", "pi2", "merge", "merge_table"}, where + ".amalg");
        ParamClass left = resolve_class(need(body, "left", where), domain, where + ".amalg.left");
        ParamClass right = resolve_class(need(body, "right", where), domain, where + ".amalg.right");
        std::vector<long long> pi1, pi2;
        for (int t : to_int_list(need(body, "pi1", where), where + ".amalg.pi1")) pi1.push_back(t);
        for (int t : to_int_list(need(body, "pi2", where), where + ".amalg.pi2")) pi2.push_back(t);
        std::string kind_name = to_str(need(body, "merge", where), where + ".amalg.merge");
        if (kind_name != "table" && body.contains("merge_table"))
            fail(where + ".amalg", "merge_table is only valid with merge == \"table\"");
        MergeFn merge = resolve_merge(body, left, right, where + ".amalg");
        return amalg_class(left, right, pi1, pi2, std::move(merge));
    }
    fail(where, "unknown class constructor '" + kind + "'");
}

inline Target resolve_target(const json& spec, const ParamClass& cls, json& canonical) {
    const std::string where = "target";
    if (!spec.is_object() || spec.size() != 1)
        fail(where, "target must be one of {param}, {table}, {const}");
    const std::string kind = spec.begin().key();
    if (kind == "param") {
        int idx = to_int(spec["param"], where + ".param");
        if (idx < 0 || static_cast<std::size_t>(idx) >= cls.size())
            fail(where, "param index " + std::to_string(idx) + " out of range for class of size " +
                            std::to_string(cls.size()));
        canonical["param"] = idx;
        return Target::realizable(cls, static_cast<std::size_t>(idx));
    }
    if (kind == "table") {
        auto labels = to_int_list(spec["table"], where + ".table");
        canonical["table"] = labels;
        return Target::from_table(cls.domain, labels);
    }
    if (kind == "const") {
        int v = to_int(spec["const"], where + ".const");
        if (v != 0 && v != 1) fail(where, "const target must be 0 or 1");
        canonical["const"] = v;
        return Target::constant(v);
    }
    fail(where, "target must be one of {param}, {table}, {const}");
}

}  // namespace cfg

// Builds a validated ExperimentConfig from a parsed JSON document. Unknown
// keys are hard errors at every level.
inline ExperimentConfig config_from_json(const nlohmann::json& doc) {
    using cfg::json;
    if (!doc.is_object()) throw ValidationError("config: top level must be an object");
    cfg::check_keys(doc,
                    {"domain", "measure", "class", "target", "m", "eps", "mode", "trials",
                     "seed", "threads", "delta_ci", "compare_exact", "caps", "vc_cap",
                     "growth_m", "pac", "swap_masks", "random_masks", "support", "eps_grid",
                     "out", "csv"},
                    "config");

    ExperimentConfig out;
    json canonical = json::object();

    if (doc.contains("domain")) {
        json canon_domain = json::object();
        out.domain = cfg::resolve_domain(doc["domain"], canon_domain);
        canonical["domain"] = canon_domain;
    }
    if (doc.contains("measure")) {
        if (!out.domain) cfg::fail("measure", "requires a domain");
        json canon_measure = json::object();
        out.measure = cfg::resolve_measure(doc["measure"], out.domain, canon_measure);
        canonical["measure"] = canon_measure;
    }
    if (doc.contains("class")) {
        if (!out.domain) cfg::fail("class", "requires a domain");
        out.cls = cfg::resolve_class(doc["class"], out.domain, "class");
        canonical["class"] = doc["class"];
    }
    if (doc.contains("target")) {
        if (!out.cls) cfg::fail("target", "requires a class");
        json canon_target = json::object();
        out.target = cfg::resolve_target(doc["target"], *out.cls, canon_target);
        canonical["target"] = canon_target;
    }

    if (doc.contains("m")) {
        int m = cfg::to_int(doc["m"], "m");
        if (m < 0) cfg::fail("m", "must be >= 0");
        out.m = static_cast<std::size_t>(m);
    }
    canonical["m"] = static_cast<int>(out.m);

    if (doc.contains("eps")) {
        Rat eps = cfg::to_rat(doc["eps"], "eps");
        if (eps.sign() <= 0) cfg::fail("eps", "must parse to a positive rational");
        out.eps = eps;
        canonical["eps"] = eps.to_string();
    }

    if (doc.contains("mode")) {
        out.mode = cfg::to_str(doc["mode"], "mode");
        if (out.mode != "exact" && out.mode != "mc")
            cfg::fail("mode", "must be \"exact\" or \"mc\"");
    }
    canonical["mode"] = out.mode;

    if (doc.contains("trials")) {
        out.trials = cfg::to_u64(doc["trials"], "trials");
        if (out.trials < 1) cfg::fail("trials", "must be >= 1");
    }
    canonical["trials"] = out.trials;

    if (doc.contains("seed")) out.seed = cfg::to_u64(doc["seed"], "seed");
    canonical["seed"] = out.seed;

    if (doc.contains("threads")) {
        int t = cfg::to_int(doc["threads"], "threads");
        if (t < 1) cfg::fail("threads", "must be >= 1");
        out.threads = static_cast<unsigned>(t);
    }
    canonical["threads"] = out.threads;

    if (doc.contains("delta_ci")) {
        out.delta_ci = cfg::to_double(doc["delta_ci"], "delta_ci");
        if (!(out.delta_ci > 0.0 && out.delta_ci < 1.0))
            cfg::fail("delta_ci", "must lie in (0,1)");
    }
    canonical["delta_ci"] = out.delta_ci;

    if (doc.contains("compare_exact")) {
        if (!doc["compare_exact"].is_boolean()) cfg::fail("compare_exact", "must be a boolean");
        out.compare_exact = doc["compare_exact"].get<bool>();
    }
    canonical["compare_exact"] = out.compare_exact;

    out.budgets = Budgets::defaults();
    if (doc.contains("caps")) {
        const json& caps = doc["caps"];
        cfg::check_keys(caps, {"enumeration", "subsets", "evals", "bits"}, "caps");
        if (caps.contains("enumeration"))
            out.budgets.enumeration_cap = cfg::to_u64(caps["enumeration"], "caps.enumeration");
        if (caps.contains("subsets"))
            out.budgets.subset_budget = cfg::to_u64(caps["subsets"], "caps.subsets");
        if (caps.contains("evals"))
            out.budgets.eval_budget = cfg::to_u64(caps["evals"], "caps.evals");
        if (caps.contains("bits")) {
            out.budgets.bitvec_cap = cfg::to_int(caps["bits"], "caps.bits");
            if (out.budgets.bitvec_cap < 0 || out.budgets.bitvec_cap > 32)
                cfg::fail("caps.bits", "must lie in [0,32]");
        }
    }
    canonical["caps"] = {{"enumeration", out.budgets.enumeration_cap},
                         {"subsets", out.budgets.subset_budget},
                         {"evals", out.budgets.eval_budget},
                         {"bits", out.budgets.bitvec_cap}};

    if (doc.contains("vc_cap")) {
        out.vc_cap = cfg::to_int(doc["vc_cap"], "vc_cap");
        if (out.vc_cap < 0) cfg::fail("vc_cap", "must be >= 0");
    }
    canonical["vc_cap"] = out.vc_cap;

    if (doc.contains("growth_m")) {
        out.growth_m = cfg::to_int_list(doc["growth_m"], "growth_m");
        for (int m : out.growth_m)
            if (m < 0) cfg::fail("growth_m", "entries must be >= 0");
        canonical["growth_m"] = out.growth_m;
    }

    if (doc.contains("pac")) {
        const json& p = doc["pac"];
        cfg::check_keys(p, {"d", "eps", "delta"}, "pac");
        PacParams pac;
        pac.d = cfg::to_int(cfg::need(p, "d", "pac"), "pac.d");
        pac.eps = cfg::to_double(cfg::need(p, "eps", "pac"), "pac.eps");
        pac.delta = cfg::to_double(cfg::need(p, "delta", "pac"), "pac.delta");
        out.pac = pac;
        canonical["pac"] = {{"d", pac.d}, {"eps", pac.eps}, {"delta", pac.delta}};
    }

    if (doc.contains("swap_masks")) {
        const json& masks = doc["swap_masks"];
        if (!masks.is_array()) cfg::fail("swap_masks", "must be an array of 0/1 arrays");
        json canon_masks = json::array();
        for (const auto& mj : masks) {
            auto bits = cfg::to_int_list(mj, "swap_masks[]");
            std::vector<bool> mask;
            for (int b : bits) {
                if (b != 0 && b != 1) cfg::fail("swap_masks", "mask entries must be 0 or 1");
                mask.push_back(b == 1);
            }
            out.swap_masks.push_back(mask);
            canon_masks.push_back(bits);
        }
        canonical["swap_masks"] = canon_masks;
    }

    if (doc.contains("random_masks")) {
        out.random_masks = cfg::to_int(doc["random_masks"], "random_masks");
        if (out.random_masks < 0) cfg::fail("random_masks", "must be >= 0");
    }
    canonical["random_masks"] = out.random_masks;

    if (doc.contains("support")) {
        out.support = cfg::to_int_list(doc["support"], "support");
        canonical["support"] = out.support;
    }

    if (doc.contains("eps_grid")) {
        const json& grid = doc["eps_grid"];
        if (!grid.is_array() || grid.empty())
            cfg::fail("eps_grid", "must be a nonempty array of fractions");
        json canon_grid = json::array();
        for (const auto& e : grid) {
            Rat eps = cfg::to_rat(e, "eps_grid[]");
            if (eps.sign() <= 0) cfg::fail("eps_grid", "entries must be positive");
            out.eps_grid.push_back(eps);
            canon_grid.push_back(eps.to_string());
        }
        canonical["eps_grid"] = canon_grid;
    }

    // Output routing is runtime plumbing, not experiment identity; it stays
    // out of the canonical document and the config hash.
    if (doc.contains("out")) out.out_path = cfg::to_str(doc["out"], "out");
    if (doc.contains("csv")) out.csv_path = cfg::to_str(doc["csv"], "csv");

    out.canonical = std::move(canonical);
    return out;
}

inline ExperimentConfig parse_config(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(doc);
}

inline ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace ghostgap
