#include "zoneplate/materials.hpp"

#include "zoneplate/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace zoneplate {

double wavelength_from_energy(double energy_ev) {
    if (!(energy_ev > 0.0))
        throw validation_error("photon energy must be positive, got " + std::to_string(energy_ev) + " eV");
    return kHcEvM / energy_ev;
}

double energy_from_wavelength(double wavelength_m) {
    if (!(wavelength_m > 0.0))
        throw validation_error("wavelength must be positive");
    return kHcEvM / wavelength_m;
}

ConstantsTable::ConstantsTable(std::string material, std::vector<ConstantsRow> rows)
    : material_(std::move(material)), rows_(std::move(rows)) {
    if (rows_.empty())
        throw validation_error("optical constants table '" + material_ + "' has no rows");
    for (const auto& row : rows_) {
        if (!(row.energy_ev > 0.0) || !(row.delta > 0.0) || !(row.beta > 0.0))
            throw validation_error("optical constants table '" + material_ +
                                   "' requires positive energy, delta and beta in every row");
    }
    if (!std::is_sorted(rows_.begin(), rows_.end(),
                        [](const ConstantsRow& a, const ConstantsRow& b) { return a.energy_ev < b.energy_ev; }))
        throw validation_error("optical constants table '" + material_ + "' must be sorted by energy");
    for (std::size_t i = 1; i < rows_.size(); ++i) {
        if (rows_[i].energy_ev == rows_[i - 1].energy_ev)
            throw validation_error("optical constants table '" + material_ + "' has duplicate energy " +
                                   std::to_string(rows_[i].energy_ev) + " eV");
    }
}

ConstantsTable ConstantsTable::load(const std::filesystem::path& csv_path, std::string material) {
    std::ifstream in(csv_path);
    if (!in)
        throw config_error("cannot open optical constants table: " + csv_path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), std::move(material));
}

ConstantsTable ConstantsTable::parse(const std::string& csv_text, std::string material) {
    std::istringstream in(csv_text);
    std::string line;
    std::vector<ConstantsRow> rows;
    bool saw_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.empty())
            continue;
        if (!saw_header) {
            std::string squeezed;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c)))
                    squeezed.push_back(c);
            if (squeezed != "energy_eV,delta,beta")
                throw config_error("optical constants table header must be 'energy_eV,delta,beta', got '" + line + "'");
            saw_header = true;
            continue;
        }
        std::istringstream fields(line);
        std::string cell;
        double values[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(fields, cell, ','))
                throw config_error("optical constants row " + std::to_string(line_no) + " needs 3 columns");
            try {
                values[i] = std::stod(cell);
            } catch (const std::exception&) {
                throw config_error("optical constants row " + std::to_string(line_no) + " has non-numeric cell '" +
                                   cell + "'");
            }
        }
        if (std::getline(fields, cell, ','))
            throw config_error("optical constants row " + std::to_string(line_no) + " has extra columns");
        rows.push_back({values[0], values[1], values[2]});
    }
    if (!saw_header)
        throw config_error("optical constants table is empty");
    return ConstantsTable(std::move(material), std::move(rows));
}

OpticalConstants ConstantsTable::at(double energy_ev) const {
    if (!(energy_ev >= min_energy_ev() && energy_ev <= max_energy_ev()))
        throw validation_error("energy " + std::to_string(energy_ev) + " eV outside tabulated range [" +
                               std::to_string(min_energy_ev()) + ", " + std::to_string(max_energy_ev()) +
                               "] eV for material '" + material_ + "'");
    OpticalConstants oc;
    oc.material = material_;
    oc.energy_ev = energy_ev;
    oc.wavelength_m = wavelength_from_energy(energy_ev);

    auto it = std::lower_bound(rows_.begin(), rows_.end(), energy_ev,
                               [](const ConstantsRow& row, double e) { return row.energy_ev < e; });
    if (it != rows_.end() && it->energy_ev == energy_ev) {
        oc.delta = it->delta;
        oc.beta = it->beta;
        return oc;
    }
    const ConstantsRow& hi = *it;
    const ConstantsRow& lo = *(it - 1);
    const double t = (std::log(energy_ev) - std::log(lo.energy_ev)) / (std::log(hi.energy_ev) - std::log(lo.energy_ev));
    oc.delta = std::exp(std::log(lo.delta) + t * (std::log(hi.delta) - std::log(lo.delta)));
    oc.beta = std::exp(std::log(lo.beta) + t * (std::log(hi.beta) - std::log(lo.beta)));
    return oc;
}

double pi_height(const OpticalConstants& oc) {
    if (!(oc.delta > 0.0))
        throw validation_error("pi_height requires delta > 0");
    return oc.wavelength_m / (2.0 * oc.delta);
}

double attenuation_length(const OpticalConstants& oc) {
    if (!(oc.beta > 0.0))
        throw validation_error("attenuation_length requires beta > 0");
    return oc.wavelength_m / (4.0 * std::acos(-1.0) * oc.beta);
}

std::complex<double> amplitude_transmission(const OpticalConstants& oc, double thickness_m) {
    if (thickness_m < 0.0)
        throw validation_error("slab thickness must be non-negative");
    const double pi = std::acos(-1.0);
    const std::complex<double> exponent =
        -2.0 * pi * std::complex<double>(oc.beta, oc.delta) * thickness_m / oc.wavelength_m;
    return std::exp(exponent);
}

} // namespace zoneplate
