#include "zoneplate/commands.hpp"

#include "zoneplate/errors.hpp"
#include "zoneplate/format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace zoneplate {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw config_error("cannot write output file: " + path.string());
    return out;
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw config_error("cannot create output directory: " + dir.string());
}

double um(double meters) { return meters * 1e6; }

// Scale-bar length: largest of 1/2/5 * 10^k not above the limit.
double round_down_125(double limit) {
    double decade = std::pow(10.0, std::floor(std::log10(limit)));
    for (double mult : {5.0, 2.0, 1.0})
        if (mult * decade <= limit)
            return mult * decade;
    return decade / 2.0;
}

std::string describe_component(const DesignParams& dp, const ZoneComponent& c, std::size_t index) {
    std::ostringstream os;
    os << "  component " << index << ": order " << c.order << ", offset " << c.offset << ", zones " << c.n_first
       << ".." << c.n_last << " (" << c.zone_count() << "), slitness " << format_number(slitness(c.order, c.offset))
       << ", r " << format_number(um(component_inner_radius(dp, c))) << ".."
       << format_number(um(component_outer_radius(dp, c))) << " um, shift "
       << format_number(um(c.shift_m)) << " um";
    return os.str();
}

} // namespace

BuiltDesign build_design(const RunConfig& cfg) {
    BuiltDesign built;
    built.cfg = cfg;
    const ConstantsTable table = ConstantsTable::load(cfg.material_table, cfg.material);
    built.oc = table.at(cfg.energy_ev);
    built.relief_height_m = cfg.relief_height_m > 0.0 ? cfg.relief_height_m : pi_height(built.oc);

    AssemblyOptions options;
    options.kind = cfg.kind;
    options.min_feature_m = cfg.min_feature_m;
    options.relief_height_m = built.relief_height_m;
    options.membrane_thickness_m = cfg.membrane_thickness_m;
    options.material = cfg.material;

    const DesignParams dp(cfg.wavelength_m, cfg.focal_length_m);
    built.plate = assemble_compound(dp, cfg.plan, options);
    return built;
}

void write_zone_table_csv(const CompoundZonePlate& plate, std::ostream& out) {
    out << "n,r_inner_um,r_outer_um,width_um,region,component_index\n";
    for (const ZoneRecord& rec : zone_table(plate)) {
        out << rec.n << "," << format_number(um(rec.r_inner_m)) << "," << format_number(um(rec.r_outer_m)) << ","
            << format_number(um(rec.width_m)) << "," << (rec.groove ? "groove" : "ridge") << ","
            << rec.component_index << "\n";
    }
}

void write_layout_svg(const CompoundZonePlate& plate, std::ostream& out) {
    const double R = um(plate.aperture_radius());
    const double margin = 0.05 * R;
    const double lo = -(R + margin);
    const double size = 2.0 * (R + margin);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_number(lo) << " " << format_number(lo)
        << " " << format_number(size) << " " << format_number(size) << "\">\n";
    out << "<!-- etched (groove) zones filled; units are micrometers -->\n";
    out << "<g fill=\"#1f3b73\" stroke=\"none\">\n";
    const auto records = zone_table(plate);
    if (plate.kind == GeometryKind::circular) {
        for (const ZoneRecord& rec : records) {
            if (!rec.groove)
                continue;
            const double ro = um(rec.r_outer_m);
            const double ri = um(rec.r_inner_m);
            out << "<path fill-rule=\"evenodd\" d=\"M " << format_number(ro) << " 0 "
                << "A " << format_number(ro) << " " << format_number(ro) << " 0 1 0 " << format_number(-ro) << " 0 "
                << "A " << format_number(ro) << " " << format_number(ro) << " 0 1 0 " << format_number(ro) << " 0 Z ";
            if (ri > 0.0) {
                out << "M " << format_number(ri) << " 0 "
                    << "A " << format_number(ri) << " " << format_number(ri) << " 0 1 0 " << format_number(-ri)
                    << " 0 "
                    << "A " << format_number(ri) << " " << format_number(ri) << " 0 1 0 " << format_number(ri)
                    << " 0 Z";
            }
            out << "\"/>\n";
        }
    } else {
        for (const ZoneRecord& rec : records) {
            if (!rec.groove)
                continue;
            const double ro = um(rec.r_outer_m);
            const double ri = um(rec.r_inner_m);
            const double w = ro - ri;
            out << "<rect x=\"" << format_number(ri) << "\" y=\"" << format_number(-R) << "\" width=\""
                << format_number(w) << "\" height=\"" << format_number(2.0 * R) << "\"/>\n";
            out << "<rect x=\"" << format_number(-ro) << "\" y=\"" << format_number(-R) << "\" width=\""
                << format_number(w) << "\" height=\"" << format_number(2.0 * R) << "\"/>\n";
        }
    }
    out << "</g>\n";
    const double bar = round_down_125(R);
    const double bar_y = R + margin / 2.0;
    out << "<line x1=\"" << format_number(-R) << "\" y1=\"" << format_number(bar_y) << "\" x2=\""
        << format_number(-R + bar) << "\" y2=\"" << format_number(bar_y) << "\" stroke=\"#000\" stroke-width=\""
        << format_number(margin / 10.0) << "\"/>\n";
    out << "<text x=\"" << format_number(-R) << "\" y=\"" << format_number(bar_y - margin / 8.0)
        << "\" font-family=\"sans-serif\" font-size=\"" << format_number(margin / 2.0) << "\">" << format_number(bar)
        << " um</text>\n";
    out << "</svg>\n";
}

namespace {

void write_design_summary(const BuiltDesign& built, std::ostream& out) {
    const CompoundZonePlate& plate = built.plate;
    const DesignParams& dp = plate.design;
    out << "geometry: " << (plate.kind == GeometryKind::circular ? "circular" : "linear") << "\n";
    out << "energy [keV]: " << format_number(built.cfg.energy_ev * 1e-3) << "\n";
    out << "wavelength [um]: " << format_number(um(dp.wavelength_m)) << "\n";
    out << "focal length [um]: " << format_number(um(dp.focal_length_m)) << "\n";
    out << "sigma [um]: " << format_number(um(dp.sigma_m)) << "\n";
    out << "first zone radius r1 [um]: "
        << format_number(um(zone_radius(dp, plate.components.front().order, plate.components.front().offset, 1)))
        << "\n";
    out << "zone count N: " << plate.total_zone_count() << "\n";
    out << "aperture radius [um]: " << format_number(um(plate.aperture_radius())) << "\n";
    out << "aperture diameter [um]: " << format_number(2.0 * um(plate.aperture_radius())) << "\n";
    out << "narrowest zone width [um]: " << format_number(um(plate.min_zone_width())) << "\n";
    out << "minimum feature [um]: " << format_number(um(plate.min_feature_m)) << "\n";
    out << "relief height [um]: " << format_number(um(built.relief_height_m))
        << (built.cfg.relief_height_m > 0.0 ? "" : " (pi height)") << "\n";
    out << "membrane thickness [um]: " << format_number(um(plate.membrane_thickness_m)) << "\n";
    out << "material: " << plate.material << "\n";
    out << "components: " << plate.components.size() << "\n";
    for (std::size_t i = 0; i < plate.components.size(); ++i)
        out << describe_component(dp, plate.components[i], i) << "\n";
}

} // namespace

void cmd_design(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log) {
    ensure_dir(out_dir);
    const BuiltDesign built = build_design(cfg);
    {
        auto out = open_out(out_dir / "zone_table.csv");
        write_zone_table_csv(built.plate, out);
    }
    {
        auto out = open_out(out_dir / "layout.svg");
        write_layout_svg(built.plate, out);
    }
    std::ostringstream summary;
    write_design_summary(built, summary);
    {
        auto out = open_out(out_dir / "design_summary.txt");
        out << summary.str();
    }
    log << summary.str();
    log << "wrote " << (out_dir / "zone_table.csv").string() << "\n";
    log << "wrote " << (out_dir / "layout.svg").string() << "\n";
    log << "wrote " << (out_dir / "design_summary.txt").string() << "\n";
}

void cmd_efficiency(const RunConfig& cfg, const EfficiencyOptions& options, const std::filesystem::path& out_dir,
                    std::ostream& log) {
    ensure_dir(out_dir);
    const BuiltDesign built = build_design(cfg);
    std::vector<int> orders = options.orders;
    if (orders.empty())
        for (int k = -7; k <= 7; ++k)
            orders.push_back(k);

    const double membrane_power =
        std::norm(amplitude_transmission(built.oc, built.plate.membrane_thickness_m));

    std::ostringstream summary;
    summary << "relief height [um]: " << format_number(um(built.relief_height_m)) << "\n";
    summary << "membrane power transmission: " << format_number(membrane_power) << "\n";
    for (std::size_t ci = 0; ci < built.plate.components.size(); ++ci) {
        const ZoneComponent& c = built.plate.components[ci];
        const GratingModel grating = component_grating(c, built.oc, built.relief_height_m);
        const GratingModel lossless = GratingModel::lossless(grating.duty);

        const std::string name = "order_table_" + std::to_string(ci) + ".csv";
        auto out = open_out(out_dir / name);
        out << "k,efficiency_relative,efficiency_absolute,efficiency_ideal\n";
        for (int k : orders) {
            const double rel = order_efficiency(grating, k);
            out << k << "," << format_number(rel) << "," << format_number(rel * membrane_power) << ","
                << format_number(order_efficiency(lossless, k)) << "\n";
        }
        const double focus_rel = focusing_efficiency_of_component(c, built.oc, built.relief_height_m);
        summary << "component " << ci << " (order " << c.order << ", offset " << c.offset << "): slitness "
                << format_number(grating.duty) << ", focus-order efficiency relative "
                << format_number(focus_rel) << ", absolute " << format_number(focus_rel * membrane_power)
                << ", lossless " << format_number(order_efficiency(lossless, c.order)) << "\n";
        summary << "  wrote " << (out_dir / name).string() << "\n";
    }

    if (options.scan) {
        const ScanRange& scan = *options.scan;
        if (!(scan.step > 0.0) || !(scan.hi >= scan.lo))
            throw config_error("slitness scan range must satisfy lo <= hi with positive step");
        std::vector<double> duties;
        for (double s = scan.lo; s <= scan.hi + 1e-12; s += scan.step)
            duties.push_back(s);
        const GratingModel base = GratingModel::lossless(0.5);
        const std::vector<double> values = slitness_scan(base, options.scan_order, duties);
        auto out = open_out(out_dir / "slitness_scan.csv");
        out << "S,efficiency\n";
        for (std::size_t i = 0; i < duties.size(); ++i)
            out << format_number(duties[i]) << "," << format_number(values[i]) << "\n";
        summary << "slitness scan at order " << options.scan_order << ": wrote "
                << (out_dir / "slitness_scan.csv").string() << "\n";
    }
    log << summary.str();
}

void cmd_simulate(const RunConfig& cfg, const SimulateOptions& options, const std::filesystem::path& out_dir,
                  std::ostream& log) {
    ensure_dir(out_dir);
    const BuiltDesign built = build_design(cfg);
    const CompoundZonePlate& plate = built.plate;

    SamplingOptions sampling;
    sampling.spacing_m = cfg.profile_spacing_m;
    const TransmissionProfile profile = sample_profile(plate, built.oc, sampling);
    {
        auto out = open_out(out_dir / "profile.csv");
        write_profile_csv(profile, out);
    }

    const double z = options.distance_m.value_or(plate.design.focal_length_m);
    const double lz = plate.design.wavelength_m * z;
    const double diffraction_width = lz / (2.0 * plate.aperture_radius());
    OutputGrid grid;
    grid.spacing_m = cfg.output_spacing_m > 0.0 ? cfg.output_spacing_m : diffraction_width / 20.0;
    grid.extent_m = cfg.output_extent_m > 0.0 ? cfg.output_extent_m : 15.0 * diffraction_width;

    const ScalarField field = propagate(profile, plate.design.wavelength_m, z, grid);
    const std::vector<double> inten = field.intensity();
    {
        auto out = open_out(out_dir / "psf.csv");
        out << (field.kind == GeometryKind::circular ? "rho_um" : "x_um") << ",intensity\n";
        for (std::size_t i = 0; i < field.size(); ++i)
            out << format_number(um(field.position(i))) << "," << format_number(inten[i]) << "\n";
    }

    const Curve psf_curve = (field.kind == GeometryKind::circular) ? mirrored_radial_intensity(field)
                                                                   : lateral_marginal(field);
    const double psf_fwhm = fwhm(psf_curve);
    const Curve marginal = lateral_marginal(field);
    const double marginal_fwhm = fwhm(marginal);

    double first_zero = 0.0;
    for (std::size_t i = 1; i + 1 < inten.size(); ++i) {
        const std::size_t mid = (field.kind == GeometryKind::circular) ? i : inten.size() / 2 + i;
        if (mid + 1 >= inten.size())
            break;
        if (inten[mid] <= inten[mid - 1] && inten[mid] < inten[mid + 1]) {
            first_zero = std::abs(field.position(mid));
            break;
        }
    }

    const double membrane_power = std::norm(amplitude_transmission(built.oc, plate.membrane_thickness_m));
    double integration_radius = 5.0 * psf_fwhm;
    integration_radius = std::min(integration_radius, grid.extent_m);
    const double eff_abs = focal_efficiency(field, integration_radius);
    const double eff_rel = eff_abs / membrane_power;

    std::optional<double> blurred_fwhm;
    if (cfg.source_fwhm_m) {
        const Curve blurred =
            source_blur(psf_curve, *cfg.source_fwhm_m, *cfg.source_distance_m, plate.design.focal_length_m);
        blurred_fwhm = fwhm(blurred);
    }

    std::optional<double> knife_fwhm;
    if (options.knife_edge) {
        std::vector<double> positions;
        for (double x = -grid.extent_m; x <= grid.extent_m + 1e-15; x += grid.spacing_m)
            positions.push_back(x);
        const KnifeEdgeCurve knife = knife_edge_scan(field, positions);
        auto out = open_out(out_dir / "knife_edge.csv");
        out << "x_um,flux,derivative\n";
        for (std::size_t i = 0; i < knife.position.size(); ++i)
            out << format_number(um(knife.position[i])) << "," << format_number(knife.flux[i]) << ","
                << format_number(knife.derivative[i]) << "\n";
        Curve lsf;
        lsf.x = knife.position;
        lsf.y = knife.derivative;
        knife_fwhm = fwhm(lsf);
    }

    auto metrics = open_out(out_dir / "metrics.json");
    metrics << "{\n";
    metrics << "  \"z_um\": " << format_number(um(z)) << ",\n";
    metrics << "  \"output_spacing_um\": " << format_number(um(grid.spacing_m)) << ",\n";
    metrics << "  \"output_extent_um\": " << format_number(um(grid.extent_m)) << ",\n";
    metrics << "  \"peak_intensity\": " << format_number(inten[field.kind == GeometryKind::circular ? 0 : inten.size() / 2])
            << ",\n";
    metrics << "  \"fwhm_um\": " << format_number(um(psf_fwhm)) << ",\n";
    metrics << "  \"marginal_fwhm_um\": " << format_number(um(marginal_fwhm)) << ",\n";
    if (knife_fwhm)
        metrics << "  \"knife_fwhm_um\": " << format_number(um(*knife_fwhm)) << ",\n";
    if (blurred_fwhm)
        metrics << "  \"source_blur_fwhm_um\": " << format_number(um(*blurred_fwhm)) << ",\n";
    metrics << "  \"first_zero_um\": " << format_number(um(first_zero)) << ",\n";
    metrics << "  \"integration_radius_um\": " << format_number(um(integration_radius)) << ",\n";
    metrics << "  \"efficiency_absolute\": " << format_number(eff_abs) << ",\n";
    metrics << "  \"efficiency_relative\": " << format_number(eff_rel) << "\n";
    metrics << "}\n";

    log << "z [um]: " << format_number(um(z)) << "\n";
    log << "fwhm [um]: " << format_number(um(psf_fwhm)) << "\n";
    log << "marginal fwhm [um]: " << format_number(um(marginal_fwhm)) << "\n";
    if (knife_fwhm)
        log << "knife-edge lsf fwhm [um]: " << format_number(um(*knife_fwhm)) << "\n";
    if (blurred_fwhm)
        log << "source-blurred fwhm [um]: " << format_number(um(*blurred_fwhm)) << "\n";
    log << "efficiency within " << format_number(um(integration_radius))
        << " um: absolute " << format_number(eff_abs) << ", relative " << format_number(eff_rel) << "\n";
    log << "wrote " << (out_dir / "profile.csv").string() << "\n";
    log << "wrote " << (out_dir / "psf.csv").string() << "\n";
    if (options.knife_edge)
        log << "wrote " << (out_dir / "knife_edge.csv").string() << "\n";
    log << "wrote " << (out_dir / "metrics.json").string() << "\n";
}

void cmd_export(const RunConfig& cfg, ExportFormat format, const std::filesystem::path& out_dir, std::ostream& log) {
    ensure_dir(out_dir);
    const BuiltDesign built = build_design(cfg);
    if (format == ExportFormat::csv) {
        auto out = open_out(out_dir / "zone_table.csv");
        write_zone_table_csv(built.plate, out);
        log << "wrote " << (out_dir / "zone_table.csv").string() << "\n";
    } else {
        auto out = open_out(out_dir / "layout.svg");
        write_layout_svg(built.plate, out);
        log << "wrote " << (out_dir / "layout.svg").string() << "\n";
    }
}

} // namespace zoneplate
