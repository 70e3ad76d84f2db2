// commands.hpp - implementations behind the zptool subcommands
#ifndef ZONEPLATE_COMMANDS_HPP
#define ZONEPLATE_COMMANDS_HPP

#include "zoneplate/config.hpp"
#include "zoneplate/efficiency.hpp"
#include "zoneplate/materials.hpp"
#include "zoneplate/propagation.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace zoneplate {

// Everything derivable from a config before any wave computation.
struct BuiltDesign {
    RunConfig cfg;
    OpticalConstants oc;
    double relief_height_m = 0.0;
    CompoundZonePlate plate;
};

BuiltDesign build_design(const RunConfig& cfg);

struct ScanRange {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
};

struct EfficiencyOptions {
    // Orders to tabulate; empty selects -7 ... 7.
    std::vector<int> orders;
    std::optional<ScanRange> scan;
    int scan_order = 2;
};

struct SimulateOptions {
    // Unset means "the focal plane".
    std::optional<double> distance_m;
    bool knife_edge = false;
};

enum class ExportFormat { csv, svg };

// Each command writes its artifacts under out_dir and a human summary to log.
void cmd_design(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
void cmd_efficiency(const RunConfig& cfg, const EfficiencyOptions& options, const std::filesystem::path& out_dir,
                    std::ostream& log);
void cmd_simulate(const RunConfig& cfg, const SimulateOptions& options, const std::filesystem::path& out_dir,
                  std::ostream& log);
void cmd_export(const RunConfig& cfg, ExportFormat format, const std::filesystem::path& out_dir, std::ostream& log);

// Writers shared between commands and tests.
void write_zone_table_csv(const CompoundZonePlate& plate, std::ostream& out);
void write_layout_svg(const CompoundZonePlate& plate, std::ostream& out);

} // namespace zoneplate

#endif
