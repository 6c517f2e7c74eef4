#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dsoar/config.hpp"
#include "dsoar/record_io.hpp"
#include "dsoar/scenarios.hpp"

namespace {

int fail(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 1;
}

std::optional<dsoar::Scenario> load_scenario(const std::string& case_name,
                                             const std::string& config_path, std::string& error) {
    if (!case_name.empty() && !config_path.empty()) {
        error = "--case and --config are mutually exclusive";
        return std::nullopt;
    }
    if (!case_name.empty()) {
        auto sc = dsoar::find_scenario(case_name);
        if (!sc) error = "unknown scenario \"" + case_name + "\" (see `dsoar list`)";
        return sc;
    }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            error = "cannot open config file " + config_path;
            return std::nullopt;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        try {
            return dsoar::scenario_from_json(buf.str());
        } catch (const std::exception& e) {
            error = e.what();
            return std::nullopt;
        }
    }
    error = "one of --case or --config is required";
    return std::nullopt;
}

int cmd_run(const std::string& case_name, const std::string& config_path, double dt,
            double duration, std::int64_t seed, const std::string& out_path,
            const std::string& format) {
    std::string error;
    auto sc = load_scenario(case_name, config_path, error);
    if (!sc) return fail(error);
    if (dt > 0) sc->dt = dt;
    if (duration > 0) sc->duration = duration;
    if (seed >= 0) sc->seed = static_cast<std::uint64_t>(seed);

    dsoar::RunRecord record;
    try {
        record = dsoar::run(*sc);
    } catch (const std::exception& e) {
        return fail(std::string("run failed: ") + e.what());
    }

    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) return fail("cannot write " + out_path);
        out << (format == "json" ? dsoar::record_to_json(record) : dsoar::record_to_csv(record));
    }
    std::cout << dsoar::summary_text(record);
    if (record.summary.aborted) {
        std::cerr << "error: " << record.summary.abort_reason << "\n";
        return 2;
    }
    return 0;
}

int cmd_validate(const std::string& case_name, const std::string& config_path,
                 std::optional<double> curvature) {
    std::string error;
    auto sc = load_scenario(case_name, config_path, error);
    if (!sc) return fail(error);
    const auto* esc2 = std::get_if<dsoar::Esc2Controller>(&sc->controller);
    if (esc2 == nullptr)
        return fail("scenario \"" + sc->name + "\" does not use the augmented controller; "
                    "the design validator applies only to esc2 scenarios");
    const dsoar::DesignReport report = dsoar::validate_design(esc2->design, curvature);
    std::cout << "design check for " << sc->name << "\n" << report.to_string();
    return report.overall() ? 0 : 1;
}

int cmd_list(const std::string& format) {
    const auto& all = dsoar::builtin_scenarios();
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& sc : all)
            arr.push_back({{"name", sc.name},
                           {"description", sc.description},
                           {"duration", sc.duration},
                           {"dt", sc.dt}});
        std::cout << arr.dump(2) << "\n";
        return 0;
    }
    for (const auto& sc : all) {
        std::cout << sc.name;
        for (std::size_t i = sc.name.size(); i < 16; ++i) std::cout << ' ';
        std::cout << sc.description << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dsoar: extremum-seeking dynamic soaring simulator"};
    app.require_subcommand(1);

    std::string case_name, config_path, out_path, format = "csv";
    double dt = -1.0, duration = -1.0;
    std::int64_t seed = -1;

    auto* run_cmd = app.add_subcommand("run", "integrate a scenario and write its record");
    run_cmd->add_option("--case", case_name, "built-in scenario name");
    run_cmd->add_option("--config", config_path, "JSON run configuration file");
    run_cmd->add_option("--dt", dt, "integration step override, s");
    run_cmd->add_option("--duration", duration, "run length override, s");
    run_cmd->add_option("--seed", seed, "scenario seed override");
    run_cmd->add_option("--out", out_path, "record output path");
    run_cmd->add_option("--format", format, "record format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    double curvature = std::numeric_limits<double>::quiet_NaN();
    auto* validate_cmd =
        app.add_subcommand("validate", "check the augmented-loop design conditions C1-C5");
    validate_cmd->add_option("--case", case_name, "built-in scenario name");
    validate_cmd->add_option("--config", config_path, "JSON run configuration file");
    validate_cmd->add_option("--curvature", curvature,
                             "objective curvature f'' enabling the C5 loop condition");

    std::string list_format = "text";
    auto* list_cmd = app.add_subcommand("list", "print the built-in scenarios");
    list_cmd->add_option("--format", list_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(case_name, config_path, dt, duration, seed, out_path, format);
        if (validate_cmd->parsed())
            return cmd_validate(case_name, config_path,
                                std::isnan(curvature) ? std::nullopt
                                                      : std::optional<double>(curvature));
        return cmd_list(list_format);
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}
