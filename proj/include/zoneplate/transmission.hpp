// transmission.hpp - sampled complex transmission profiles of a plate
#ifndef ZONEPLATE_TRANSMISSION_HPP
#define ZONEPLATE_TRANSMISSION_HPP

#include "zoneplate/geometry.hpp"
#include "zoneplate/materials.hpp"

#include <complex>
#include <iosfwd>
#include <vector>

namespace zoneplate {

// Complex amplitude transmission sampled on a uniform grid.
// Circular: samples at ring centers r_i = (i + 1/2) * spacing from the axis.
// Linear: samples at x_i = (i + 1/2 - count/2) * spacing, symmetric about 0.
struct TransmissionProfile {
    GeometryKind kind = GeometryKind::circular;
    double spacing_m = 0.0;
    double aperture_radius_m = 0.0;
    std::vector<std::complex<double>> samples;

    double position(std::size_t i) const;
    std::size_t size() const { return samples.size(); }
    // Transmitted power: sum of |t|^2 over sample cells (ring areas for
    // circular, cell lengths for linear).
    double transmitted_power() const;
    // Open-aperture power of the same grid: pi*R^2 or 2*R.
    double aperture_power() const;
};

struct SamplingOptions {
    // 0 selects the default of min zone width / 8.
    double spacing_m = 0.0;
    // Largest allowed ratio of spacing to the narrowest zone width.
    double max_spacing_fraction = 0.25;
};

// Samples the absorbing relief profile of the plate at the table's constants:
// grooves see the membrane only, ridges see membrane plus relief.
// The constants must be evaluated at the plate's design energy.
TransmissionProfile sample_profile(const CompoundZonePlate& plate, const OpticalConstants& oc,
                                   const SamplingOptions& options = {});

// Lossless reference: grooves transmit 1, ridges exp(i*pi); no membrane.
TransmissionProfile ideal_phase_profile(const CompoundZonePlate& plate, const SamplingOptions& options = {});

// Zeroes every sample whose cell center lies inside stop_radius.
TransmissionProfile apply_central_stop(const TransmissionProfile& profile, double stop_radius_m);

// CSV dump with header "r_um, re_t, im_t" (or "x_um, re_t, im_t" for linear).
void write_profile_csv(const TransmissionProfile& profile, std::ostream& out);

} // namespace zoneplate

#endif
