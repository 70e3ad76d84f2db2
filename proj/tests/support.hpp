// support.hpp - shared fixtures for the test suite
#ifndef ZONEPLATE_TESTS_SUPPORT_HPP
#define ZONEPLATE_TESTS_SUPPORT_HPP

#include "zoneplate/commands.hpp"
#include "zoneplate/geometry.hpp"
#include "zoneplate/materials.hpp"
#include "zoneplate/transmission.hpp"

#include <filesystem>
#include <string>

namespace testsupport {

inline std::filesystem::path data_dir() { return std::filesystem::path(ZONEPLATE_DATA_DIR); }

inline std::filesystem::path si_table_path() { return data_dir() / "si_delta_beta.csv"; }

inline zoneplate::ConstantsTable si_table() {
    return zoneplate::ConstantsTable::load(si_table_path(), "Si");
}

// The worked reference design: 112 zones of the (1, 0) family at 8.05 keV,
// f = 46 cm, 10.5 um silicon relief on a 16 um membrane.
inline constexpr double kRefEnergyEv = 8050.0;
inline constexpr double kRefFocalM = 0.46;
inline constexpr double kRefReliefM = 10.5e-6;
inline constexpr double kRefMembraneM = 16e-6;
inline constexpr long kRefZones = 112;

inline zoneplate::OpticalConstants reference_constants() { return si_table().at(kRefEnergyEv); }

inline zoneplate::CompoundZonePlate reference_plate(
    zoneplate::GeometryKind kind = zoneplate::GeometryKind::circular) {
    using namespace zoneplate;
    const DesignParams dp(wavelength_from_energy(kRefEnergyEv), kRefFocalM);
    const ComponentPlan plan[] = {ComponentPlan::with_count(1, 0, kRefZones)};
    AssemblyOptions options;
    options.kind = kind;
    options.min_feature_m = 0.4e-6;
    options.relief_height_m = kRefReliefM;
    options.membrane_thickness_m = kRefMembraneM;
    options.material = "Si";
    return assemble_compound(dp, plan, options);
}

// A uniform open disk (or slit) of radius R: every sample transmits 1.
inline zoneplate::TransmissionProfile open_aperture(zoneplate::GeometryKind kind, double radius_m,
                                                    double spacing_m) {
    zoneplate::TransmissionProfile profile;
    profile.kind = kind;
    profile.spacing_m = spacing_m;
    profile.aperture_radius_m = radius_m;
    const auto count = static_cast<std::size_t>(radius_m / spacing_m + 0.5);
    if (kind == zoneplate::GeometryKind::circular)
        profile.samples.assign(count, {1.0, 0.0});
    else
        profile.samples.assign(2 * count, {1.0, 0.0});
    return profile;
}

} // namespace testsupport

#endif
