// zptool.cpp - command-line front end for the zone-plate toolkit
#include "zoneplate/commands.hpp"
#include "zoneplate/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

zoneplate::ScanRange parse_scan(const std::string& text) {
    zoneplate::ScanRange scan;
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw zoneplate::config_error("--scan-slitness expects LO:HI:STEP, got '" + text + "'");
    try {
        scan.lo = std::stod(text.substr(0, c1));
        scan.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        scan.step = std::stod(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw zoneplate::config_error("--scan-slitness expects numeric LO:HI:STEP, got '" + text + "'");
    }
    return scan;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"compound zone-plate design and wave-optics toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "path to the run configuration")->required();
        cmd->add_option("--out", out_dir, "output directory")->required();
    };

    CLI::App* design = app.add_subcommand("design", "assemble the plate and export its zone table and layout");
    add_common(design);

    CLI::App* efficiency = app.add_subcommand("efficiency", "tabulate diffraction order efficiencies");
    add_common(efficiency);
    std::vector<int> orders;
    std::string scan_text;
    int scan_order = 2;
    efficiency->add_option("--orders", orders, "diffraction orders to tabulate")->delimiter(',');
    efficiency->add_option("--scan-slitness", scan_text, "duty-factor scan LO:HI:STEP");
    efficiency->add_option("--scan-order", scan_order, "order evaluated by the scan");

    CLI::App* simulate = app.add_subcommand("simulate", "propagate the wavefield and report focal metrics");
    add_common(simulate);
    std::string z_text = "focus";
    bool knife = false;
    simulate->add_option("--z", z_text, "propagation distance in um, or 'focus'");
    simulate->add_flag("--knife-edge", knife, "scan an opaque edge across the focal plane");

    CLI::App* exp = app.add_subcommand("export", "write the ring layout in the chosen format");
    add_common(exp);
    std::string format_text = "csv";
    exp->add_option("--format", format_text, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const zoneplate::RunConfig cfg = zoneplate::RunConfig::load(config_path);
        if (design->parsed()) {
            zoneplate::cmd_design(cfg, out_dir, std::cout);
        } else if (efficiency->parsed()) {
            zoneplate::EfficiencyOptions options;
            options.orders = orders;
            options.scan_order = scan_order;
            if (!scan_text.empty())
                options.scan = parse_scan(scan_text);
            zoneplate::cmd_efficiency(cfg, options, out_dir, std::cout);
        } else if (simulate->parsed()) {
            zoneplate::SimulateOptions options;
            options.knife_edge = knife;
            if (z_text != "focus") {
                try {
                    options.distance_m = std::stod(z_text) * 1e-6;
                } catch (const std::exception&) {
                    throw zoneplate::config_error("--z expects a distance in um or 'focus', got '" + z_text + "'");
                }
            }
            zoneplate::cmd_simulate(cfg, options, out_dir, std::cout);
        } else if (exp->parsed()) {
            const auto format =
                format_text == "svg" ? zoneplate::ExportFormat::svg : zoneplate::ExportFormat::csv;
            zoneplate::cmd_export(cfg, format, out_dir, std::cout);
        }
    } catch (const zoneplate::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const zoneplate::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const zoneplate::sampling_error& e) {
        std::cerr << "sampling error: " << e.what() << "\n";
        return 4;
    } catch (const zoneplate::fabrication_error& e) {
        std::cerr << "fabrication error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
