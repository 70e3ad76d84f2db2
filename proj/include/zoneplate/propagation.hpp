// propagation.hpp - scalar Fresnel propagation and focal-plane diagnostics
#ifndef ZONEPLATE_PROPAGATION_HPP
#define ZONEPLATE_PROPAGATION_HPP

#include "zoneplate/transmission.hpp"

#include <complex>
#include <span>
#include <vector>

namespace zoneplate {

// Observation grid in the output plane. Radial fields sample rho = 0, h, ...,
// up to extent; lateral fields sample x = -extent ... extent.
struct OutputGrid {
    double spacing_m = 0.0;
    double extent_m = 0.0;
};

// Complex field in a plane at the given distance behind the plate, for a unit
// incident plane wave. The constant phase exp(ikz) is omitted.
struct ScalarField {
    GeometryKind kind = GeometryKind::circular;
    double wavelength_m = 0.0;
    double distance_m = 0.0;
    double spacing_m = 0.0;
    // Power incident on the open plate aperture (pi*R^2, or 2*R per unit
    // length for linear geometry); the denominator of absolute efficiencies.
    double incident_power = 0.0;
    std::vector<std::complex<double>> amplitude;

    double position(std::size_t i) const;
    std::size_t size() const { return amplitude.size(); }
    std::vector<double> intensity() const;
    // Power captured inside |position| <= radius, using ring-area weights for
    // radial fields and cell lengths for lateral ones.
    double power_within(double radius_m) const;
};

// Fresnel integral over the sampled profile, ring-exact midpoint quadrature
// with a J0 kernel. Requires circular profiles.
ScalarField propagate_radial(const TransmissionProfile& profile, double wavelength_m, double distance_m,
                             const OutputGrid& grid);

// 1-D Fresnel convolution for linear (strip) profiles.
ScalarField propagate_lateral(const TransmissionProfile& profile, double wavelength_m, double distance_m,
                              const OutputGrid& grid);

// Dispatches on the profile's geometry kind.
ScalarField propagate(const TransmissionProfile& profile, double wavelength_m, double distance_m,
                      const OutputGrid& grid);

// A sampled 1-D curve y(x) with uniform or non-uniform x.
struct Curve {
    std::vector<double> x;
    std::vector<double> y;
};

// Full width at half maximum by linear interpolation around a unique interior
// maximum; throws validation_error when the curve does not bracket the
// half-maximum level on both sides.
double fwhm(const Curve& curve);

// Radial intensity profile mirrored through the axis, suitable for fwhm().
Curve mirrored_radial_intensity(const ScalarField& field);

// Line-spread function: the field intensity integrated along one transverse
// axis. For radial fields this is the Abel projection of I(rho) with exact
// per-ring chord segments; for lateral fields it is the intensity itself.
Curve lateral_marginal(const ScalarField& field);

// Knife-edge scan: total transmitted power as an opaque half-plane edge at
// x = position uncovers the field, plus the line-spread values recovered by
// central differences.
struct KnifeEdgeCurve {
    std::vector<double> position;
    std::vector<double> flux;
    std::vector<double> derivative;
};
KnifeEdgeCurve knife_edge_scan(const ScalarField& field, std::span<const double> positions);

// Fraction of the incident power focused inside the given radius.
double focal_efficiency(const ScalarField& field, double integration_radius_m);

// Convolves an intensity curve with the Gaussian geometric image of an
// incoherent source: image FWHM = source size * f / (L - f).
Curve source_blur(const Curve& curve, double source_fwhm_m, double source_distance_m, double focal_length_m);

} // namespace zoneplate

#endif
