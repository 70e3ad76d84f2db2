#include "zoneplate/config.hpp"

#include "zoneplate/errors.hpp"
#include "zoneplate/materials.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace zoneplate {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (trim(value.substr(used)).empty())
            return v;
    } catch (const std::exception&) {
    }
    throw config_error("key '" + key + "' needs a numeric value, got '" + value + "'");
}

long parse_long(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (trim(value.substr(used)).empty())
            return v;
    } catch (const std::exception&) {
    }
    throw config_error("key '" + key + "' needs an integer value, got '" + value + "'");
}

// component = m, j, n=COUNT | r=RADIUS_UM | auto
ComponentPlan parse_component(const std::string& value) {
    std::vector<std::string> parts;
    std::istringstream in(value);
    std::string cell;
    while (std::getline(in, cell, ','))
        parts.push_back(trim(cell));
    if (parts.size() != 3)
        throw config_error("component entry '" + value + "' must be 'm, j, n=COUNT|r=RADIUS_UM|auto'");
    const int order = static_cast<int>(parse_long(parts[0], "component order"));
    const int offset = static_cast<int>(parse_long(parts[1], "component offset"));
    const std::string& extent = parts[2];
    if (extent == "auto")
        return ComponentPlan::to_limit(order, offset);
    if (extent.rfind("n=", 0) == 0)
        return ComponentPlan::with_count(order, offset, parse_long(extent.substr(2), "component zone count"));
    if (extent.rfind("r=", 0) == 0)
        return ComponentPlan::with_radius(order, offset,
                                          parse_double(extent.substr(2), "component outer radius") * 1e-6);
    throw config_error("component extent '" + extent + "' must be 'n=COUNT', 'r=RADIUS_UM' or 'auto'");
}

} // namespace

RunConfig RunConfig::parse(const std::string& text, const std::filesystem::path& base_dir) {
    RunConfig cfg;
    std::optional<double> energy_kev, wavelength_um;
    std::optional<double> source_um, source_distance_um;
    bool saw_material_table = false;

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(line_no) + ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("line " + std::to_string(line_no) + ": empty key or value");

        if (key == "component") {
            cfg.plan.push_back(parse_component(value));
        } else if (key == "energy_kev") {
            energy_kev = parse_double(value, key);
        } else if (key == "wavelength_um") {
            wavelength_um = parse_double(value, key);
        } else if (key == "focal_length_um") {
            cfg.focal_length_m = parse_double(value, key) * 1e-6;
        } else if (key == "geometry") {
            if (value == "circular")
                cfg.kind = GeometryKind::circular;
            else if (value == "linear")
                cfg.kind = GeometryKind::linear;
            else
                throw config_error("geometry must be 'circular' or 'linear', got '" + value + "'");
        } else if (key == "material_table") {
            std::filesystem::path p(value);
            cfg.material_table = p.is_absolute() ? p : base_dir / p;
            saw_material_table = true;
        } else if (key == "material") {
            cfg.material = value;
        } else if (key == "relief_height_um") {
            cfg.relief_height_m = parse_double(value, key) * 1e-6;
        } else if (key == "membrane_um") {
            cfg.membrane_thickness_m = parse_double(value, key) * 1e-6;
        } else if (key == "min_zone_width_um") {
            cfg.min_feature_m = parse_double(value, key) * 1e-6;
        } else if (key == "profile_spacing_um") {
            cfg.profile_spacing_m = parse_double(value, key) * 1e-6;
        } else if (key == "output_spacing_um") {
            cfg.output_spacing_m = parse_double(value, key) * 1e-6;
        } else if (key == "output_extent_um") {
            cfg.output_extent_m = parse_double(value, key) * 1e-6;
        } else if (key == "source_fwhm_um") {
            source_um = parse_double(value, key);
        } else if (key == "source_distance_um") {
            source_distance_um = parse_double(value, key);
        } else {
            throw config_error("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }

    if (energy_kev.has_value() == wavelength_um.has_value())
        throw config_error("exactly one of 'energy_kev' and 'wavelength_um' must be set");
    if (energy_kev) {
        cfg.energy_ev = *energy_kev * 1e3;
        cfg.wavelength_m = wavelength_from_energy(cfg.energy_ev);
    } else {
        cfg.wavelength_m = *wavelength_um * 1e-6;
        cfg.energy_ev = energy_from_wavelength(cfg.wavelength_m);
    }
    if (!(cfg.focal_length_m > 0.0))
        throw config_error("'focal_length_um' must be set and positive");
    if (cfg.plan.empty())
        throw config_error("at least one 'component' entry is required");
    if (!saw_material_table)
        throw config_error("'material_table' must point at an optical constants CSV");
    if (!std::filesystem::exists(cfg.material_table))
        throw config_error("material table does not exist: " + cfg.material_table.string());
    if (source_um.has_value() != source_distance_um.has_value())
        throw config_error("'source_fwhm_um' and 'source_distance_um' must be given together");
    if (source_um) {
        cfg.source_fwhm_m = *source_um * 1e-6;
        cfg.source_distance_m = *source_distance_um * 1e-6;
    }
    return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

} // namespace zoneplate
