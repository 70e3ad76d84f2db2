// geometry.hpp - zone boundaries, widths and compound plate assembly
#ifndef ZONEPLATE_GEOMETRY_HPP
#define ZONEPLATE_GEOMETRY_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zoneplate {

enum class GeometryKind { circular, linear };

// Wavelength/focal-length pair with the derived scale sigma = sqrt(lambda*f).
struct DesignParams {
    double wavelength_m = 0.0;
    double focal_length_m = 0.0;
    double sigma_m = 0.0;

    DesignParams() = default;
    DesignParams(double wavelength, double focal_length);
};

double sigma(double wavelength_m, double focal_length_m);

// True when (order, offset) satisfies |offset| < order with opposite parity
// (offset even for odd order, odd for even order).
struct PairValidity {
    bool ok = false;
    std::string reason;
};
PairValidity validate_order_pair(int order, int offset);

// Half-zone boundary radius n of the (order, offset) family; n = 0 is the axis.
// Odd n: sigma*sqrt(order*n - offset); even n: sigma*sqrt(order*n).
double zone_radius(const DesignParams& dp, int order, int offset, long n);

// Width of zone n, the annulus between boundaries n-1 and n:
// sigma*(order - offset)/(2*sqrt(order*n)) for odd n,
// sigma*(order + offset)/(2*sqrt(order*n)) for even n.
double zone_width(const DesignParams& dp, int order, int offset, long n);

// Duty factor S = (order - offset) / (2*order).
double slitness(int order, int offset);

// Lossless focusing efficiency of an order-m pi-shifting profile, 4/(pi^2 m^2),
// and the zero-order share (offset/order)^2.
double ideal_order_efficiency(int order);
double zero_order_share(int order, int offset);

// One member of a compound plate: a contiguous run of zones n_first..n_last of
// the (order, offset) family, shifted inward by shift_m so it abuts its neighbour.
struct ZoneComponent {
    int order = 1;
    int offset = 0;
    long n_first = 1;
    long n_last = 1;
    double shift_m = 0.0;

    long zone_count() const { return n_last - n_first + 1; }
};

double component_boundary(const DesignParams& dp, const ZoneComponent& c, long n);
double component_inner_radius(const DesignParams& dp, const ZoneComponent& c);
double component_outer_radius(const DesignParams& dp, const ZoneComponent& c);

// How far one plan entry should extend: a fixed zone count, a target outer
// radius, or out to the fabrication limit.
struct ComponentPlan {
    int order = 1;
    int offset = 0;
    std::optional<long> zone_count;
    std::optional<double> outer_radius_m;

    static ComponentPlan with_count(int order, int offset, long count);
    static ComponentPlan with_radius(int order, int offset, double outer_radius_m);
    static ComponentPlan to_limit(int order, int offset);
};

struct AssemblyOptions {
    GeometryKind kind = GeometryKind::circular;
    double min_feature_m = 0.4e-6;
    double relief_height_m = 0.0;
    double membrane_thickness_m = 0.0;
    std::string material = "Si";
};

// A compound plate: abutting components of increasing order sharing one focus.
struct CompoundZonePlate {
    DesignParams design;
    GeometryKind kind = GeometryKind::circular;
    std::vector<ZoneComponent> components;
    double min_feature_m = 0.0;
    double relief_height_m = 0.0;
    double membrane_thickness_m = 0.0;
    std::string material;

    double aperture_radius() const;
    // Narrowest zone width anywhere on the plate.
    double min_zone_width() const;
    long total_zone_count() const;
};

// Builds the compound plate: validates each (order, offset) pair, requires
// strictly increasing order, shifts each component so it abuts the previous
// one, and applies the printable-feature limit to etched (groove) zones.
CompoundZonePlate assemble_compound(const DesignParams& dp, std::span<const ComponentPlan> plan,
                                    const AssemblyOptions& options);

// Zone-table row as exported to CSV: zone index, annulus, width, region, component.
struct ZoneRecord {
    long n = 0;
    double r_inner_m = 0.0;
    double r_outer_m = 0.0;
    double width_m = 0.0;
    bool groove = false;
    int component_index = 0;
};

std::vector<ZoneRecord> zone_table(const CompoundZonePlate& plate);

} // namespace zoneplate

#endif
