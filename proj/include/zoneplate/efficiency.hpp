// efficiency.hpp - local grating model for diffraction order efficiencies
#ifndef ZONEPLATE_EFFICIENCY_HPP
#define ZONEPLATE_EFFICIENCY_HPP

#include "zoneplate/geometry.hpp"
#include "zoneplate/materials.hpp"

#include <complex>
#include <span>
#include <vector>

namespace zoneplate {

// Binary grating unit cell: groove amplitude over a fraction S of the period,
// ridge amplitude over the rest.
struct GratingModel {
    std::complex<double> t_groove{1.0, 0.0};
    std::complex<double> t_ridge{-1.0, 0.0};
    double duty = 0.5; // S, groove fraction of the period

    // Lossless pi-shift grating with the given duty factor.
    static GratingModel lossless(double duty);
};

// Fourier coefficient c_k of the unit cell:
// c_0 = S*t_groove + (1-S)*t_ridge, c_k = (t_groove - t_ridge)*sin(pi*k*S)/(pi*k).
std::complex<double> fourier_coefficient(const GratingModel& g, int k);

// |c_k|^2, the power fraction diffracted into order k.
double order_efficiency(const GratingModel& g, int k);

// Grating model of one compound-plate component: duty from slitness(m, j),
// relief attenuation and phase from the optical constants. The membrane is a
// common factor and is left out here.
GratingModel component_grating(const ZoneComponent& c, const OpticalConstants& oc, double relief_height_m);

// Efficiency into the shared focus: order k = m of the component's grating.
double focusing_efficiency_of_component(const ZoneComponent& c, const OpticalConstants& oc, double relief_height_m);

// order_efficiency(k) of `base` with its duty factor replaced by each S value.
std::vector<double> slitness_scan(const GratingModel& base, int k, std::span<const double> duty_values);

} // namespace zoneplate

#endif
