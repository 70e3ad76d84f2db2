// config.hpp - flat key-value run configuration shared by the CLI commands
#ifndef ZONEPLATE_CONFIG_HPP
#define ZONEPLATE_CONFIG_HPP

#include "zoneplate/geometry.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace zoneplate {

// Parsed "key = value" configuration. Lengths are microns and energies keV in
// the file; they are converted to SI here at the boundary.
struct RunConfig {
    double wavelength_m = 0.0;
    double energy_ev = 0.0;
    double focal_length_m = 0.0;
    GeometryKind kind = GeometryKind::circular;
    std::filesystem::path material_table;
    std::string material = "Si";
    // 0 means "use pi_height at the design energy".
    double relief_height_m = 0.0;
    double membrane_thickness_m = 0.0;
    double min_feature_m = 0.4e-6;
    // 0 means "use the sampling default of min zone width / 8".
    double profile_spacing_m = 0.0;
    // 0 means "derive from the diffraction scale lambda*f/D".
    double output_spacing_m = 0.0;
    double output_extent_m = 0.0;
    std::optional<double> source_fwhm_m;
    std::optional<double> source_distance_m;
    std::vector<ComponentPlan> plan;

    static RunConfig parse(const std::string& text, const std::filesystem::path& base_dir);
    static RunConfig load(const std::filesystem::path& path);
};

} // namespace zoneplate

#endif
