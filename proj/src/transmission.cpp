#include "zoneplate/transmission.hpp"

#include "zoneplate/errors.hpp"
#include "zoneplate/format.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace zoneplate {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Per-component shifted interior boundaries, for locating the zone that
// contains a radius by binary search.
struct ComponentLookup {
    double inner;
    double outer;
    long n_first;
    std::vector<double> interior; // boundaries n_first .. n_last-1, shifted
};

std::vector<ComponentLookup> build_lookup(const CompoundZonePlate& plate) {
    std::vector<ComponentLookup> lookup;
    lookup.reserve(plate.components.size());
    for (const auto& c : plate.components) {
        ComponentLookup cl;
        cl.inner = component_inner_radius(plate.design, c);
        cl.outer = component_outer_radius(plate.design, c);
        cl.n_first = c.n_first;
        cl.interior.reserve(static_cast<std::size_t>(std::max<long>(0, c.n_last - c.n_first)));
        for (long n = c.n_first; n < c.n_last; ++n)
            cl.interior.push_back(component_boundary(plate.design, c, n));
        lookup.push_back(std::move(cl));
    }
    return lookup;
}

// True when radius r falls in a groove (even-indexed zone). r must lie inside
// the aperture.
bool in_groove(const std::vector<ComponentLookup>& lookup, double r) {
    for (const auto& cl : lookup) {
        if (r >= cl.outer)
            continue;
        const auto it = std::upper_bound(cl.interior.begin(), cl.interior.end(), r);
        const long n = cl.n_first + static_cast<long>(it - cl.interior.begin());
        return n % 2 == 0;
    }
    return false;
}

double resolve_spacing(const CompoundZonePlate& plate, const SamplingOptions& options) {
    const double min_width = plate.min_zone_width();
    double spacing = options.spacing_m;
    if (spacing == 0.0)
        spacing = min_width / 8.0;
    if (!(spacing > 0.0))
        throw sampling_error("sample spacing must be positive");
    const double limit = min_width * options.max_spacing_fraction;
    if (spacing > limit * (1.0 + 1e-12))
        throw sampling_error("sample spacing " + format_number(spacing * 1e6) + " um too coarse: narrowest zone is " +
                             format_number(min_width * 1e6) + " um, spacing must be <= " + format_number(limit * 1e6) +
                             " um");
    return spacing;
}

template <typename GrooveValue, typename RidgeValue>
TransmissionProfile sample_structure(const CompoundZonePlate& plate, double spacing, GrooveValue groove_value,
                                     RidgeValue ridge_value) {
    TransmissionProfile profile;
    profile.kind = plate.kind;
    profile.spacing_m = spacing;
    profile.aperture_radius_m = plate.aperture_radius();

    const auto lookup = build_lookup(plate);
    const double radius = profile.aperture_radius_m;
    if (plate.kind == GeometryKind::circular) {
        const auto count = static_cast<std::size_t>(std::ceil(radius / spacing));
        profile.samples.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double r = (static_cast<double>(i) + 0.5) * spacing;
            if (r >= radius)
                profile.samples[i] = 0.0;
            else
                profile.samples[i] = in_groove(lookup, r) ? groove_value() : ridge_value();
        }
    } else {
        const auto half = static_cast<std::size_t>(std::ceil(radius / spacing));
        profile.samples.resize(2 * half);
        for (std::size_t i = 0; i < profile.samples.size(); ++i) {
            const double x = (static_cast<double>(i) + 0.5 - static_cast<double>(half)) * spacing;
            const double r = std::abs(x);
            if (r >= radius)
                profile.samples[i] = 0.0;
            else
                profile.samples[i] = in_groove(lookup, r) ? groove_value() : ridge_value();
        }
    }
    return profile;
}

} // namespace

double TransmissionProfile::position(std::size_t i) const {
    if (kind == GeometryKind::circular)
        return (static_cast<double>(i) + 0.5) * spacing_m;
    return (static_cast<double>(i) + 0.5 - static_cast<double>(samples.size()) / 2.0) * spacing_m;
}

double TransmissionProfile::transmitted_power() const {
    double power = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double w = (kind == GeometryKind::circular)
                             ? 2.0 * kPi * position(i) * spacing_m
                             : spacing_m;
        power += std::norm(samples[i]) * w;
    }
    return power;
}

double TransmissionProfile::aperture_power() const {
    if (kind == GeometryKind::circular)
        return kPi * aperture_radius_m * aperture_radius_m;
    return 2.0 * aperture_radius_m;
}

TransmissionProfile sample_profile(const CompoundZonePlate& plate, const OpticalConstants& oc,
                                   const SamplingOptions& options) {
    const double design_energy = energy_from_wavelength(plate.design.wavelength_m);
    if (std::abs(oc.energy_ev - design_energy) > 1e-6 * design_energy)
        throw validation_error("optical constants at " + format_number(oc.energy_ev) +
                               " eV do not match the plate design energy " + format_number(design_energy) + " eV");
    if (!(plate.relief_height_m > 0.0))
        throw validation_error("plate relief height must be positive to sample the absorbing profile");

    const std::complex<double> membrane = amplitude_transmission(oc, plate.membrane_thickness_m);
    const std::complex<double> groove = membrane;
    const std::complex<double> ridge = membrane * amplitude_transmission(oc, plate.relief_height_m);
    const double spacing = resolve_spacing(plate, options);
    return sample_structure(plate, spacing, [&] { return groove; }, [&] { return ridge; });
}

TransmissionProfile ideal_phase_profile(const CompoundZonePlate& plate, const SamplingOptions& options) {
    const double spacing = resolve_spacing(plate, options);
    const std::complex<double> groove(1.0, 0.0);
    const std::complex<double> ridge = std::exp(std::complex<double>(0.0, kPi));
    return sample_structure(plate, spacing, [&] { return groove; }, [&] { return ridge; });
}

TransmissionProfile apply_central_stop(const TransmissionProfile& profile, double stop_radius_m) {
    if (stop_radius_m < 0.0)
        throw validation_error("central stop radius must be non-negative");
    TransmissionProfile stopped = profile;
    for (std::size_t i = 0; i < stopped.samples.size(); ++i)
        if (std::abs(stopped.position(i)) < stop_radius_m)
            stopped.samples[i] = 0.0;
    return stopped;
}

void write_profile_csv(const TransmissionProfile& profile, std::ostream& out) {
    out << (profile.kind == GeometryKind::circular ? "r_um" : "x_um") << ",re_t,im_t\n";
    for (std::size_t i = 0; i < profile.samples.size(); ++i) {
        out << format_number(profile.position(i) * 1e6) << "," << format_number(profile.samples[i].real()) << ","
            << format_number(profile.samples[i].imag()) << "\n";
    }
}

} // namespace zoneplate
