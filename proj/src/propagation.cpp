#include "zoneplate/propagation.hpp"

#include "zoneplate/errors.hpp"
#include "zoneplate/format.hpp"

#include <algorithm>
#include <cmath>

namespace zoneplate {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_grid(const OutputGrid& grid) {
    if (!(grid.spacing_m > 0.0))
        throw validation_error("output grid spacing must be positive");
    if (!(grid.extent_m >= grid.spacing_m))
        throw validation_error("output grid extent must cover at least one cell");
}

void check_distance(double wavelength_m, double distance_m) {
    if (!(wavelength_m > 0.0))
        throw validation_error("wavelength must be positive");
    if (!(distance_m > 0.0))
        throw validation_error("propagation distance must be positive");
}

// The integrand oscillates no faster than one cycle per lambda*z/(R + rho_max)
// of input coordinate; demand four samples per cycle.
void check_sampling(const TransmissionProfile& profile, double wavelength_m, double distance_m,
                    double rho_max) {
    const double period = wavelength_m * distance_m / (profile.aperture_radius_m + rho_max);
    const double limit = period / 4.0;
    if (profile.spacing_m > limit * (1.0 + 1e-12))
        throw sampling_error("profile spacing " + format_number(profile.spacing_m * 1e6) +
                             " um undersamples the Fresnel kernel at distance " +
                             format_number(distance_m * 1e6) + " um; need <= " + format_number(limit * 1e6) +
                             " um");
}

} // namespace

double ScalarField::position(std::size_t i) const {
    if (kind == GeometryKind::circular)
        return static_cast<double>(i) * spacing_m;
    return (static_cast<double>(i) - (static_cast<double>(amplitude.size()) - 1.0) / 2.0) * spacing_m;
}

std::vector<double> ScalarField::intensity() const {
    std::vector<double> out(amplitude.size());
    for (std::size_t i = 0; i < amplitude.size(); ++i)
        out[i] = std::norm(amplitude[i]);
    return out;
}

double ScalarField::power_within(double radius_m) const {
    if (radius_m < 0.0)
        throw validation_error("integration radius must be non-negative");
    double power = 0.0;
    for (std::size_t i = 0; i < amplitude.size(); ++i) {
        const double p = position(i);
        if (std::abs(p) > radius_m)
            continue;
        double w;
        if (kind == GeometryKind::circular)
            w = (i == 0) ? kPi * spacing_m * spacing_m / 4.0 : 2.0 * kPi * p * spacing_m;
        else
            w = spacing_m;
        power += std::norm(amplitude[i]) * w;
    }
    return power;
}

ScalarField propagate_radial(const TransmissionProfile& profile, double wavelength_m, double distance_m,
                             const OutputGrid& grid) {
    if (profile.kind != GeometryKind::circular)
        throw validation_error("propagate_radial requires a circular profile");
    check_distance(wavelength_m, distance_m);
    check_grid(grid);
    check_sampling(profile, wavelength_m, distance_m, grid.extent_m);

    ScalarField field;
    field.kind = GeometryKind::circular;
    field.wavelength_m = wavelength_m;
    field.distance_m = distance_m;
    field.spacing_m = grid.spacing_m;
    field.incident_power = profile.aperture_power();

    const double lz = wavelength_m * distance_m;
    const std::size_t n_out = static_cast<std::size_t>(std::floor(grid.extent_m / grid.spacing_m + 1e-9)) + 1;
    field.amplitude.resize(n_out);

    const std::size_t n_in = profile.size();
    std::vector<double> r(n_in), chirp_re(n_in), chirp_im(n_in);
    for (std::size_t j = 0; j < n_in; ++j) {
        r[j] = profile.position(j);
        const double phase = kPi * r[j] * r[j] / lz;
        // Ring-exact midpoint weight: the integral of r dr over the ring
        // equals r_center * spacing.
        const double w = r[j] * profile.spacing_m;
        const std::complex<double> c = profile.samples[j] * std::polar(w, phase);
        chirp_re[j] = c.real();
        chirp_im[j] = c.imag();
    }

    const double kernel_scale = 2.0 * kPi / lz;
    for (std::size_t i = 0; i < n_out; ++i) {
        const double rho = static_cast<double>(i) * grid.spacing_m;
        double acc_re = 0.0, acc_im = 0.0;
        for (std::size_t j = 0; j < n_in; ++j) {
            if (chirp_re[j] == 0.0 && chirp_im[j] == 0.0)
                continue;
            const double bessel = std::cyl_bessel_j(0.0, kernel_scale * r[j] * rho);
            acc_re += chirp_re[j] * bessel;
            acc_im += chirp_im[j] * bessel;
        }
        const std::complex<double> outer = std::polar(kernel_scale, kPi * rho * rho / lz);
        field.amplitude[i] = outer * std::complex<double>(acc_re, acc_im);
    }
    return field;
}

ScalarField propagate_lateral(const TransmissionProfile& profile, double wavelength_m, double distance_m,
                              const OutputGrid& grid) {
    if (profile.kind != GeometryKind::linear)
        throw validation_error("propagate_lateral requires a linear profile");
    check_distance(wavelength_m, distance_m);
    check_grid(grid);
    check_sampling(profile, wavelength_m, distance_m, grid.extent_m);

    ScalarField field;
    field.kind = GeometryKind::linear;
    field.wavelength_m = wavelength_m;
    field.distance_m = distance_m;
    field.spacing_m = grid.spacing_m;
    field.incident_power = profile.aperture_power();

    const double lz = wavelength_m * distance_m;
    const std::size_t half = static_cast<std::size_t>(std::floor(grid.extent_m / grid.spacing_m + 1e-9));
    const std::size_t n_out = 2 * half + 1;
    field.amplitude.resize(n_out);

    const std::size_t n_in = profile.size();
    std::vector<double> xin(n_in);
    for (std::size_t j = 0; j < n_in; ++j)
        xin[j] = profile.position(j);

    // 1/sqrt(lambda*z) kernel amplitude with the stationary-phase constant
    // exp(-i*pi/4).
    const std::complex<double> prefactor =
        std::polar(profile.spacing_m / std::sqrt(lz), -kPi / 4.0);
    for (std::size_t i = 0; i < n_out; ++i) {
        const double x = (static_cast<double>(i) - static_cast<double>(half)) * grid.spacing_m;
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n_in; ++j) {
            if (profile.samples[j] == std::complex<double>(0.0, 0.0))
                continue;
            const double dx = x - xin[j];
            acc += profile.samples[j] * std::polar(1.0, kPi * dx * dx / lz);
        }
        field.amplitude[i] = prefactor * acc;
    }
    return field;
}

ScalarField propagate(const TransmissionProfile& profile, double wavelength_m, double distance_m,
                      const OutputGrid& grid) {
    if (profile.kind == GeometryKind::circular)
        return propagate_radial(profile, wavelength_m, distance_m, grid);
    return propagate_lateral(profile, wavelength_m, distance_m, grid);
}

double fwhm(const Curve& curve) {
    const std::size_t n = curve.x.size();
    if (n != curve.y.size() || n < 3)
        throw validation_error("fwhm needs a curve with at least 3 points");
    std::size_t peak = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (curve.y[i] > curve.y[peak])
            peak = i;
    if (peak == 0 || peak == n - 1)
        throw validation_error("fwhm: curve maximum sits on the grid edge");
    const double half = curve.y[peak] / 2.0;

    auto cross = [&](std::size_t from, long step) -> double {
        std::size_t i = from;
        while (true) {
            const long next = static_cast<long>(i) + step;
            if (next < 0 || next >= static_cast<long>(n))
                throw validation_error("fwhm: curve does not fall to half maximum on both sides of the peak");
            const std::size_t j = static_cast<std::size_t>(next);
            if (curve.y[j] <= half) {
                const double t = (curve.y[i] - half) / (curve.y[i] - curve.y[j]);
                return curve.x[i] + t * (curve.x[j] - curve.x[i]);
            }
            i = j;
        }
    };
    const double right = cross(peak, +1);
    const double left = cross(peak, -1);
    return right - left;
}

Curve mirrored_radial_intensity(const ScalarField& field) {
    if (field.kind != GeometryKind::circular)
        throw validation_error("mirrored_radial_intensity requires a radial field");
    const std::vector<double> inten = field.intensity();
    Curve curve;
    const std::size_t n = inten.size();
    curve.x.reserve(2 * n - 1);
    curve.y.reserve(2 * n - 1);
    for (std::size_t i = n; i-- > 1;) {
        curve.x.push_back(-field.position(i));
        curve.y.push_back(inten[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        curve.x.push_back(field.position(i));
        curve.y.push_back(inten[i]);
    }
    return curve;
}

Curve lateral_marginal(const ScalarField& field) {
    const std::vector<double> inten = field.intensity();
    Curve curve;
    if (field.kind == GeometryKind::linear) {
        curve.x.resize(field.size());
        curve.y = inten;
        for (std::size_t i = 0; i < field.size(); ++i)
            curve.x[i] = field.position(i);
        return curve;
    }
    // Abel projection: each ring [lo, hi] of constant intensity contributes a
    // chord of length 2*(sqrt(hi^2-x^2) - sqrt(max(lo,|x|)^2-x^2)).
    const std::size_t n = field.size();
    const double h = field.spacing_m;
    auto project = [&](double x) {
        const double ax = std::abs(x);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double lo = (i == 0) ? 0.0 : field.position(i) - h / 2.0;
            const double hi = field.position(i) + h / 2.0;
            if (hi <= ax)
                continue;
            const double a = std::max(lo, ax);
            const double seg = std::sqrt(hi * hi - ax * ax) - std::sqrt(std::max(0.0, a * a - ax * ax));
            sum += inten[i] * 2.0 * seg;
        }
        return sum;
    };
    curve.x.reserve(2 * n - 1);
    curve.y.reserve(2 * n - 1);
    for (std::size_t i = n; i-- > 1;)
        curve.x.push_back(-field.position(i));
    for (std::size_t i = 0; i < n; ++i)
        curve.x.push_back(field.position(i));
    for (double x : curve.x)
        curve.y.push_back(project(x));
    return curve;
}

KnifeEdgeCurve knife_edge_scan(const ScalarField& field, std::span<const double> positions) {
    if (positions.size() < 3)
        throw validation_error("knife_edge_scan needs at least 3 edge positions");
    if (!std::is_sorted(positions.begin(), positions.end()))
        throw validation_error("knife-edge positions must be sorted ascending");

    KnifeEdgeCurve out;
    out.position.assign(positions.begin(), positions.end());
    out.flux.resize(positions.size());

    const std::vector<double> inten = field.intensity();
    const std::size_t n = field.size();
    if (field.kind == GeometryKind::circular) {
        // Area of the disk u^2 + v^2 <= rho^2 lying behind the edge (u <= x).
        // Each sample is the annulus [lo, hi] around its ring, so the flux
        // derivative reproduces the Abel chords of lateral_marginal exactly.
        const auto blocked_area = [](double rho, double x) {
            if (x <= -rho)
                return 0.0;
            if (x >= rho)
                return kPi * rho * rho;
            const double s = std::clamp(x / rho, -1.0, 1.0);
            return rho * rho * (kPi / 2.0 + std::asin(s)) + x * std::sqrt(rho * rho - x * x);
        };
        const double h = field.spacing_m;
        for (std::size_t k = 0; k < positions.size(); ++k) {
            const double x0 = positions[k];
            double flux = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double lo = (i == 0) ? 0.0 : field.position(i) - h / 2.0;
                const double hi = field.position(i) + h / 2.0;
                const double open =
                    kPi * (hi * hi - lo * lo) - (blocked_area(hi, x0) - blocked_area(lo, x0));
                flux += inten[i] * open;
            }
            out.flux[k] = flux;
        }
    } else {
        for (std::size_t k = 0; k < positions.size(); ++k) {
            const double x0 = positions[k];
            double flux = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double lo = field.position(i) - field.spacing_m / 2.0;
                const double hi = field.position(i) + field.spacing_m / 2.0;
                if (hi <= x0)
                    continue;
                flux += inten[i] * (hi - std::max(lo, x0));
            }
            out.flux[k] = flux;
        }
    }

    // Line-spread values: minus the flux derivative, central differences with
    // one-sided ends.
    out.derivative.resize(positions.size());
    const std::size_t last = positions.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
        std::size_t a = (k == 0) ? 0 : k - 1;
        std::size_t b = (k == last) ? last : k + 1;
        out.derivative[k] = -(out.flux[b] - out.flux[a]) / (out.position[b] - out.position[a]);
    }
    return out;
}

double focal_efficiency(const ScalarField& field, double integration_radius_m) {
    if (!(integration_radius_m > 0.0))
        throw validation_error("integration radius must be positive");
    if (!(field.incident_power > 0.0))
        throw validation_error("field carries no incident power record");
    return field.power_within(integration_radius_m) / field.incident_power;
}

Curve source_blur(const Curve& curve, double source_fwhm_m, double source_distance_m, double focal_length_m) {
    if (!(source_distance_m > focal_length_m))
        throw validation_error("source distance must exceed the focal length");
    if (!(source_fwhm_m >= 0.0))
        throw validation_error("source size must be non-negative");
    const std::size_t n = curve.x.size();
    if (n != curve.y.size() || n < 3)
        throw validation_error("source_blur needs a curve with at least 3 points");
    const double step = curve.x[1] - curve.x[0];
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs((curve.x[i] - curve.x[i - 1]) - step) > 1e-9 * std::abs(step))
            throw validation_error("source_blur requires a uniform curve grid");

    const double image_fwhm = source_fwhm_m * focal_length_m / (source_distance_m - focal_length_m);
    Curve out;
    out.x = curve.x;
    if (image_fwhm < step / 100.0) {
        out.y = curve.y;
        return out;
    }
    const double sigma = image_fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    const long reach = std::max<long>(1, static_cast<long>(std::ceil(4.0 * sigma / step)));
    std::vector<double> kernel(static_cast<std::size_t>(2 * reach + 1));
    double norm = 0.0;
    for (long k = -reach; k <= reach; ++k) {
        const double u = static_cast<double>(k) * step / sigma;
        kernel[static_cast<std::size_t>(k + reach)] = std::exp(-0.5 * u * u);
        norm += kernel[static_cast<std::size_t>(k + reach)];
    }
    for (double& v : kernel)
        v /= norm;
    out.y.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (long k = -reach; k <= reach; ++k) {
            long j = static_cast<long>(i) + k;
            j = std::clamp<long>(j, 0, static_cast<long>(n) - 1);
            acc += kernel[static_cast<std::size_t>(k + reach)] * curve.y[static_cast<std::size_t>(j)];
        }
        out.y[i] = acc;
    }
    return out;
}

} // namespace zoneplate
