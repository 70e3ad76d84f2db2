// materials.hpp - x-ray optical constants and thin-element transmission
#ifndef ZONEPLATE_MATERIALS_HPP
#define ZONEPLATE_MATERIALS_HPP

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

namespace zoneplate {

// hc in eV*m; E[eV] * lambda[m] = kHcEvM.
inline constexpr double kHcEvM = 1.2398419843e-6;

double wavelength_from_energy(double energy_ev);
double energy_from_wavelength(double wavelength_m);

// Optical constants of one material at one photon energy: n = 1 - delta + i*beta.
struct OpticalConstants {
    std::string material;
    double energy_ev = 0.0;
    double wavelength_m = 0.0;
    double delta = 0.0;
    double beta = 0.0;
};

struct ConstantsRow {
    double energy_ev;
    double delta;
    double beta;
};

// Tabulated delta/beta versus energy with log-log interpolation between rows.
class ConstantsTable {
public:
    ConstantsTable(std::string material, std::vector<ConstantsRow> rows);

    // Parses CSV with header "energy_eV,delta,beta".
    static ConstantsTable load(const std::filesystem::path& csv_path, std::string material);
    static ConstantsTable parse(const std::string& csv_text, std::string material);

    const std::string& material() const { return material_; }
    const std::vector<ConstantsRow>& rows() const { return rows_; }
    double min_energy_ev() const { return rows_.front().energy_ev; }
    double max_energy_ev() const { return rows_.back().energy_ev; }

    // Interpolated constants at the requested energy; throws validation_error
    // outside the tabulated range.
    OpticalConstants at(double energy_ev) const;

private:
    std::string material_;
    std::vector<ConstantsRow> rows_;
};

// Relief height producing a pi phase shift: lambda / (2 delta).
double pi_height(const OpticalConstants& oc);

// 1/e intensity attenuation length: lambda / (4 pi beta).
double attenuation_length(const OpticalConstants& oc);

// Complex amplitude transmission of a uniform slab of the given thickness,
// exp(-2*pi*(beta + i*delta)*d/lambda).
std::complex<double> amplitude_transmission(const OpticalConstants& oc, double thickness_m);

} // namespace zoneplate

#endif
