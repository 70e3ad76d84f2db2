#include "zoneplate/geometry.hpp"

#include "zoneplate/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace zoneplate {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Tolerance for the "boundary already past the previous rim" comparison when
// splicing components; relative to the aperture scale.
constexpr double kAbutRelTol = 1e-12;

std::string pair_name(int order, int offset) {
    std::ostringstream os;
    os << "(" << order << ", " << offset << ")";
    return os.str();
}

} // namespace

DesignParams::DesignParams(double wavelength, double focal_length)
    : wavelength_m(wavelength), focal_length_m(focal_length) {
    if (!(wavelength > 0.0))
        throw validation_error("wavelength must be positive");
    if (!(focal_length > 0.0))
        throw validation_error("focal length must be positive");
    sigma_m = std::sqrt(wavelength * focal_length);
}

double sigma(double wavelength_m, double focal_length_m) {
    return DesignParams(wavelength_m, focal_length_m).sigma_m;
}

PairValidity validate_order_pair(int order, int offset) {
    PairValidity v;
    if (order < 1) {
        v.reason = "order " + pair_name(order, offset) + ": order must be >= 1";
        return v;
    }
    if (std::abs(offset) >= order) {
        v.reason = "pair " + pair_name(order, offset) + ": |offset| must be < order";
        return v;
    }
    if ((order + offset) % 2 == 0) {
        v.reason = "pair " + pair_name(order, offset) +
                   ": offset parity must be opposite to order (even offset with odd order, odd with even)";
        return v;
    }
    v.ok = true;
    return v;
}

namespace {

void require_valid_pair(int order, int offset) {
    PairValidity v = validate_order_pair(order, offset);
    if (!v.ok)
        throw validation_error(v.reason);
}

} // namespace

double zone_radius(const DesignParams& dp, int order, int offset, long n) {
    require_valid_pair(order, offset);
    if (n < 0)
        throw validation_error("boundary index must be >= 0, got " + std::to_string(n));
    const double mn = static_cast<double>(order) * static_cast<double>(n);
    if (n % 2 == 1)
        return dp.sigma_m * std::sqrt(mn - static_cast<double>(offset));
    return dp.sigma_m * std::sqrt(mn);
}

double zone_width(const DesignParams& dp, int order, int offset, long n) {
    require_valid_pair(order, offset);
    if (n < 1)
        throw validation_error("zone index must be >= 1, got " + std::to_string(n));
    const double mn = static_cast<double>(order) * static_cast<double>(n);
    const double numer = (n % 2 == 1) ? static_cast<double>(order - offset) : static_cast<double>(order + offset);
    return dp.sigma_m * numer / (2.0 * std::sqrt(mn));
}

double slitness(int order, int offset) {
    require_valid_pair(order, offset);
    return static_cast<double>(order - offset) / (2.0 * static_cast<double>(order));
}

double ideal_order_efficiency(int order) {
    if (order < 1)
        throw validation_error("order must be >= 1");
    const double m = static_cast<double>(order);
    return 4.0 / (kPi * kPi * m * m);
}

double zero_order_share(int order, int offset) {
    require_valid_pair(order, offset);
    const double ratio = static_cast<double>(offset) / static_cast<double>(order);
    return ratio * ratio;
}

double component_boundary(const DesignParams& dp, const ZoneComponent& c, long n) {
    if (n < c.n_first - 1 || n > c.n_last)
        throw validation_error("boundary index " + std::to_string(n) + " outside component range [" +
                               std::to_string(c.n_first - 1) + ", " + std::to_string(c.n_last) + "]");
    return zone_radius(dp, c.order, c.offset, n) - c.shift_m;
}

double component_inner_radius(const DesignParams& dp, const ZoneComponent& c) {
    return component_boundary(dp, c, c.n_first - 1);
}

double component_outer_radius(const DesignParams& dp, const ZoneComponent& c) {
    return component_boundary(dp, c, c.n_last);
}

ComponentPlan ComponentPlan::with_count(int order, int offset, long count) {
    ComponentPlan p;
    p.order = order;
    p.offset = offset;
    p.zone_count = count;
    return p;
}

ComponentPlan ComponentPlan::with_radius(int order, int offset, double outer_radius_m) {
    ComponentPlan p;
    p.order = order;
    p.offset = offset;
    p.outer_radius_m = outer_radius_m;
    return p;
}

ComponentPlan ComponentPlan::to_limit(int order, int offset) {
    ComponentPlan p;
    p.order = order;
    p.offset = offset;
    return p;
}

double CompoundZonePlate::aperture_radius() const {
    return component_outer_radius(design, components.back());
}

double CompoundZonePlate::min_zone_width() const {
    double w = std::numeric_limits<double>::infinity();
    for (const auto& c : components)
        for (long n : {c.n_last, c.n_last - 1})
            if (n >= c.n_first)
                w = std::min(w, zone_width(design, c.order, c.offset, n));
    return w;
}

long CompoundZonePlate::total_zone_count() const {
    long total = 0;
    for (const auto& c : components)
        total += c.zone_count();
    return total;
}

namespace {

// Largest even n whose groove (even-indexed) zone width stays at or above the
// printable limit; groove width is sigma*(order+offset)/(2*sqrt(order*n)).
long fabrication_limit_zone(const DesignParams& dp, int order, int offset, double min_feature) {
    const double numer = dp.sigma_m * static_cast<double>(order + offset) / (2.0 * min_feature);
    const double n_max = numer * numer / static_cast<double>(order);
    long n = static_cast<long>(std::floor(n_max * (1.0 + 1e-12)));
    if (n % 2 == 1)
        --n;
    return n;
}

} // namespace

CompoundZonePlate assemble_compound(const DesignParams& dp, std::span<const ComponentPlan> plan,
                                    const AssemblyOptions& options) {
    if (plan.empty())
        throw validation_error("component plan is empty");
    if (!(options.min_feature_m > 0.0))
        throw validation_error("minimum feature size must be positive");

    CompoundZonePlate plate;
    plate.design = dp;
    plate.kind = options.kind;
    plate.min_feature_m = options.min_feature_m;
    plate.relief_height_m = options.relief_height_m;
    plate.membrane_thickness_m = options.membrane_thickness_m;
    plate.material = options.material;

    double prev_rim = 0.0;
    int prev_order = 0;
    for (std::size_t idx = 0; idx < plan.size(); ++idx) {
        const ComponentPlan& entry = plan[idx];
        require_valid_pair(entry.order, entry.offset);
        if (entry.order <= prev_order)
            throw validation_error("component orders must strictly increase, got order " +
                                   std::to_string(entry.order) + " after " + std::to_string(prev_order));
        prev_order = entry.order;
        if (entry.zone_count && entry.outer_radius_m)
            throw validation_error("component " + pair_name(entry.order, entry.offset) +
                                   ": give either a zone count or an outer radius, not both");

        ZoneComponent c;
        c.order = entry.order;
        c.offset = entry.offset;

        if (idx == 0) {
            c.n_first = 1;
            c.shift_m = 0.0;
        } else {
            const double tol = kAbutRelTol * std::max(prev_rim, dp.sigma_m);
            long n = 0;
            while (zone_radius(dp, c.order, c.offset, n) < prev_rim - tol)
                ++n;
            c.n_first = n + 1;
            c.shift_m = zone_radius(dp, c.order, c.offset, n) - prev_rim;
        }

        if (entry.zone_count) {
            if (*entry.zone_count < 1)
                throw validation_error("component " + pair_name(c.order, c.offset) + ": zone count must be >= 1");
            c.n_last = c.n_first + *entry.zone_count - 1;
        } else {
            const long limit = fabrication_limit_zone(dp, c.order, c.offset, options.min_feature_m);
            if (entry.outer_radius_m) {
                if (!(*entry.outer_radius_m > prev_rim))
                    throw validation_error("component " + pair_name(c.order, c.offset) +
                                           ": outer radius must exceed the previous rim");
                const double target = *entry.outer_radius_m + c.shift_m;
                long n = c.n_first;
                while (zone_radius(dp, c.order, c.offset, n + 1) <=
                       target * (1.0 + 1e-12))
                    ++n;
                c.n_last = n;
                const long last_groove = (c.n_last % 2 == 0) ? c.n_last : c.n_last - 1;
                if (last_groove > limit) {
                    std::ostringstream os;
                    os << "component " << pair_name(c.order, c.offset) << ": groove zone " << (limit + 2)
                       << " falls below the minimum feature size "
                       << options.min_feature_m * 1e6 << " um before reaching the requested outer radius";
                    throw fabrication_error(os.str());
                }
            } else {
                if (limit < c.n_first)
                    throw fabrication_error("component " + pair_name(c.order, c.offset) +
                                            ": no zone clears the minimum feature size at its start radius");
                c.n_last = limit;
            }
        }

        if (component_outer_radius(dp, c) <= component_inner_radius(dp, c))
            throw validation_error("component " + pair_name(c.order, c.offset) + " has non-positive extent");

        prev_rim = component_outer_radius(dp, c);
        plate.components.push_back(c);
    }
    return plate;
}

std::vector<ZoneRecord> zone_table(const CompoundZonePlate& plate) {
    std::vector<ZoneRecord> records;
    records.reserve(static_cast<std::size_t>(plate.total_zone_count()));
    for (std::size_t ci = 0; ci < plate.components.size(); ++ci) {
        const ZoneComponent& c = plate.components[ci];
        for (long n = c.n_first; n <= c.n_last; ++n) {
            ZoneRecord rec;
            rec.n = n;
            rec.r_inner_m = component_boundary(plate.design, c, n - 1);
            rec.r_outer_m = component_boundary(plate.design, c, n);
            rec.width_m = rec.r_outer_m - rec.r_inner_m;
            rec.groove = (n % 2 == 0);
            rec.component_index = static_cast<int>(ci);
            records.push_back(rec);
        }
    }
    return records;
}

} // namespace zoneplate
