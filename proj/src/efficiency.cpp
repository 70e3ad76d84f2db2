#include "zoneplate/efficiency.hpp"

#include "zoneplate/errors.hpp"

#include <cmath>

namespace zoneplate {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_duty(double duty) {
    if (!(duty > 0.0 && duty < 1.0))
        throw validation_error("grating duty factor must lie in (0, 1), got " + std::to_string(duty));
}
} // namespace

GratingModel GratingModel::lossless(double duty) {
    require_duty(duty);
    GratingModel g;
    g.t_groove = {1.0, 0.0};
    g.t_ridge = std::exp(std::complex<double>(0.0, kPi));
    g.duty = duty;
    return g;
}

std::complex<double> fourier_coefficient(const GratingModel& g, int k) {
    require_duty(g.duty);
    if (k == 0)
        return g.duty * g.t_groove + (1.0 - g.duty) * g.t_ridge;
    const double arg = kPi * static_cast<double>(k) * g.duty;
    return (g.t_groove - g.t_ridge) * std::sin(arg) / (kPi * static_cast<double>(k));
}

double order_efficiency(const GratingModel& g, int k) {
    return std::norm(fourier_coefficient(g, k));
}

GratingModel component_grating(const ZoneComponent& c, const OpticalConstants& oc, double relief_height_m) {
    if (!(relief_height_m > 0.0))
        throw validation_error("relief height must be positive");
    GratingModel g;
    g.duty = slitness(c.order, c.offset);
    g.t_groove = {1.0, 0.0};
    g.t_ridge = amplitude_transmission(oc, relief_height_m);
    return g;
}

double focusing_efficiency_of_component(const ZoneComponent& c, const OpticalConstants& oc,
                                        double relief_height_m) {
    return order_efficiency(component_grating(c, oc, relief_height_m), c.order);
}

std::vector<double> slitness_scan(const GratingModel& base, int k, std::span<const double> duty_values) {
    std::vector<double> result;
    result.reserve(duty_values.size());
    for (double duty : duty_values) {
        GratingModel g = base;
        g.duty = duty;
        result.push_back(order_efficiency(g, k));
    }
    return result;
}

} // namespace zoneplate
