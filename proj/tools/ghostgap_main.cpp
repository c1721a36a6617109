// ghostgap: exact and Monte Carlo experiments on ghost-sample bad events,
// concept-class constructors, and VC symmetrization bounds over finite
// domains. One subcommand per operation; every run emits a JSON report whose
// only nondeterministic fields sit in the "timing" sub-object.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "ghostgap/ghostgap.hpp"

namespace {

struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<int> threads;
    std::optional<std::string> out;
    std::optional<std::string> csv;
};

int run(const std::string& subcommand, const std::string& config_path,
        const CliOverrides& overrides) {
    std::ifstream in(config_path);
    if (!in) throw ghostgap::ParseError("cannot open config file: " + config_path);
    std::ostringstream buffer;
    buffer << in.rdbuf();

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ghostgap::ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ghostgap::ValidationError("config: top level must be an object");

    // Flags override the file before validation, so the canonical document
    // and its hash describe the experiment actually run.
    if (overrides.seed) doc["seed"] = *overrides.seed;
    if (overrides.trials) doc["trials"] = *overrides.trials;
    if (overrides.threads) doc["threads"] = *overrides.threads;
    if (overrides.out) doc["out"] = *overrides.out;
    if (overrides.csv) doc["csv"] = *overrides.csv;

    ghostgap::ExperimentConfig cfg = ghostgap::config_from_json(doc);
    ghostgap::RunManifest manifest = ghostgap::run_experiment(cfg, subcommand);

    std::string text = manifest.dump();
    if (!cfg.out_path.empty())
        ghostgap::write_text_file(cfg.out_path, text);
    else
        std::cout << text;

    if (!cfg.csv_path.empty()) {
        if (manifest.csv_text.empty())
            throw ghostgap::ValidationError("subcommand '" + subcommand +
                                            "' produces no CSV table");
        ghostgap::write_text_file(cfg.csv_path, manifest.csv_text);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ghost-gap symmetrization laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    CliOverrides overrides;

    for (const std::string& name : ghostgap::subcommand_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "experiment config (JSON)")->required();
        sub->add_option("--seed", [&](const CLI::results_t& r) {
            overrides.seed = std::stoull(r[0]);
            return true;
        }, "override config seed");
        sub->add_option("--trials", [&](const CLI::results_t& r) {
            overrides.trials = std::stoull(r[0]);
            return true;
        }, "override config trials");
        sub->add_option("--threads", [&](const CLI::results_t& r) {
            overrides.threads = std::stoi(r[0]);
            return true;
        }, "override config threads");
        sub->add_option("--out", [&](const CLI::results_t& r) {
            overrides.out = r[0];
            return true;
        }, "write the JSON report here instead of stdout");
        sub->add_option("--csv", [&](const CLI::results_t& r) {
            overrides.csv = r[0];
            return true;
        }, "write the CSV sweep table here");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return run(app.get_subcommands().front()->get_name(), config_path, overrides);
    } catch (const ghostgap::Error& e) {
        const char* category =
            e.category() == ghostgap::ErrorCategory::parse        ? "parse"
            : e.category() == ghostgap::ErrorCategory::validation ? "validation"
            : e.category() == ghostgap::ErrorCategory::budget     ? "budget"
                                                                  : "internal";
        std::cerr << "error (" << category << "): " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error (internal): " << e.what() << "\n";
        return static_cast<int>(ghostgap::ErrorCategory::internal);
    }
}
