/**
 * Command-line workbench: runs bundled or user-supplied scenario
 * configurations and emits JSON reports plus CSV curve files.
 *
 * Verbs:
 *   run <scenario>      execute a bundled id or a configuration file
 *   list-scenarios      table of bundled scenario ids
 *   validate <path>     diagnostics for a configuration (bundled ids accepted)
 *   export-config <id>  print or write a bundled configuration document
 */

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "gog/runner.hpp"
#include "gog/scenario.hpp"

namespace {

bool is_bundled(const std::string& id) {
    auto ids = gog::bundled_scenario_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

gog::Scenario load_scenario(const std::string& ref) {
    if (is_bundled(ref)) return gog::bundled_scenario(ref);
    std::ifstream f(ref);
    if (!f) throw gog::ConfigParse("cannot open configuration file: " + ref);
    gog::Json doc;
    try {
        f >> doc;
    } catch (const gog::Json::exception& e) {
        throw gog::ConfigParse(std::string("invalid JSON in ") + ref + ": " + e.what());
    }
    return gog::scenario_from_json(doc);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph-of-groups workbench"};
    app.require_subcommand(1);

    std::string scenario_ref, config_path, export_id;
    std::optional<int> radius, samples;
    std::optional<long long> seed, elements;
    std::string out_dir = "out";
    std::string format = "both";

    CLI::App* run = app.add_subcommand("run", "execute a scenario");
    run->add_option("scenario", scenario_ref, "bundled id or configuration file")
        ->required();
    run->add_option("--radius", radius, "override every experiment's primary radius");
    run->add_option("--samples", samples, "override the sample count");
    run->add_option("--seed", seed, "random seed");
    run->add_option("--budget-elements", elements, "element budget for enumerations");
    run->add_option("--out-dir", out_dir, "report output directory");
    run->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "csv", "both"}));

    CLI::App* list = app.add_subcommand("list-scenarios", "list bundled scenarios");

    CLI::App* validate = app.add_subcommand("validate", "check a configuration");
    validate->add_option("config", config_path, "configuration file or bundled id")
        ->required();

    CLI::App* exp = app.add_subcommand("export-config", "emit a bundled configuration");
    exp->add_option("id", export_id, "bundled scenario id")->required();
    std::string export_dir;
    exp->add_option("--out-dir", export_dir, "write <id>.json here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const std::string& id : gog::bundled_scenario_ids())
                std::cout << id << "\t" << gog::bundled_scenario(id).title << "\n";
            return 0;
        }
        if (validate->parsed()) {
            gog::Scenario s = load_scenario(config_path);
            std::vector<std::string> diags = gog::validate_scenario(s);
            if (diags.empty()) {
                std::cout << "ok: " << s.id << "\n";
                return 0;
            }
            for (const std::string& d : diags) std::cout << d << "\n";
            return 1;
        }
        if (exp->parsed()) {
            gog::Json doc = gog::bundled_config(export_id);
            if (export_dir.empty()) {
                std::cout << doc.dump(2) << "\n";
            } else {
                std::filesystem::create_directories(export_dir);
                std::filesystem::path p =
                    std::filesystem::path(export_dir) / (export_id + ".json");
                std::ofstream f(p);
                f << doc.dump(2) << "\n";
                std::cout << p.string() << "\n";
            }
            return 0;
        }
        if (run->parsed()) {
            gog::Scenario s = load_scenario(scenario_ref);
            std::vector<std::string> diags = gog::validate_scenario(s);
            if (!diags.empty()) {
                for (const std::string& d : diags) std::cerr << d << "\n";
                return 1;
            }
            gog::RunOverrides o;
            o.radius = radius;
            o.samples = samples;
            o.seed = seed;
            o.elements = elements;
            gog::RunReport rep = gog::run_scenario(s, o);
            for (const std::string& path : gog::write_report(rep, out_dir, format))
                std::cout << path << "\n";
            if (rep.partial) {
                std::cerr << "budget exhausted: partial results flagged in the report\n";
                return 3;
            }
            return 0;
        }
    } catch (const gog::UnknownScenario& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const gog::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
