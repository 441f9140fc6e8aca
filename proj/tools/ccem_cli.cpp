#include "ccem/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"conformally compact Einstein metrics from circle-bundle data"};
    app.require_subcommand(1);

    ccem::Command cmd;
    bool as_json = false, as_csv = false;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config) {
            sub->add_option("--catalog", cmd.catalog_name, "built-in configuration name");
            sub->add_option("--config", cmd.config_path, "path to a JSON configuration");
        }
        sub->add_option("--samples", cmd.samples, "sample-grid size")->check(CLI::PositiveNumber);
        sub->add_option("--order", cmd.order, "series truncation order (default p+2)");
        sub->add_flag("--json", as_json, "machine-readable JSON output");
        sub->add_flag("--csv", as_csv, "CSV output");
        sub->add_flag("--describe", cmd.describe, "include descriptions");
    };

    for (const char* verb :
         {"catalog", "solve", "verify", "check", "profile", "expand", "volume", "qcurv"}) {
        auto* sub = app.add_subcommand(verb);
        add_common(sub, std::string(verb) != "catalog");
        sub->callback([&cmd, verb] { cmd.verb = verb; });
    }

    CLI11_PARSE(app, argc, argv);
    if (as_json) cmd.format = ccem::OutputFormat::json;
    if (as_csv) cmd.format = ccem::OutputFormat::csv;

    ccem::RunResult res = ccem::execute(cmd);
    if (!res.payload.empty()) {
        std::cout << res.payload;
        if (res.payload.back() != '\n') std::cout << '\n';
    }
    if (!res.message.empty()) std::cerr << res.message << '\n';
    return res.code;
}
