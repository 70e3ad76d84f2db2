// bindings.cpp - pybind11 module exposing the core operations
#include "zoneplate/commands.hpp"
#include "zoneplate/efficiency.hpp"
#include "zoneplate/errors.hpp"
#include "zoneplate/geometry.hpp"
#include "zoneplate/materials.hpp"
#include "zoneplate/propagation.hpp"
#include "zoneplate/transmission.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace zoneplate;

PYBIND11_MODULE(_core, m) {
    m.doc() = "compound zone-plate design and scalar wave propagation (SI units)";

    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<sampling_error>(m, "SamplingError", PyExc_ValueError);
    py::register_exception<fabrication_error>(m, "FabricationError", PyExc_ValueError);

    m.attr("HC_EV_M") = kHcEvM;
    m.def("wavelength_from_energy", &wavelength_from_energy, py::arg("energy_ev"));
    m.def("energy_from_wavelength", &energy_from_wavelength, py::arg("wavelength_m"));

    py::class_<OpticalConstants>(m, "OpticalConstants")
        .def_readonly("material", &OpticalConstants::material)
        .def_readonly("energy_ev", &OpticalConstants::energy_ev)
        .def_readonly("wavelength_m", &OpticalConstants::wavelength_m)
        .def_readonly("delta", &OpticalConstants::delta)
        .def_readonly("beta", &OpticalConstants::beta);

    py::class_<ConstantsTable>(m, "ConstantsTable")
        .def_static("load", &ConstantsTable::load, py::arg("csv_path"), py::arg("material"))
        .def_static("parse", &ConstantsTable::parse, py::arg("csv_text"), py::arg("material"))
        .def_property_readonly("material", &ConstantsTable::material)
        .def_property_readonly("min_energy_ev", &ConstantsTable::min_energy_ev)
        .def_property_readonly("max_energy_ev", &ConstantsTable::max_energy_ev)
        .def("at", &ConstantsTable::at, py::arg("energy_ev"));

    m.def("pi_height", &pi_height, py::arg("constants"));
    m.def("attenuation_length", &attenuation_length, py::arg("constants"));
    m.def("amplitude_transmission", &amplitude_transmission, py::arg("constants"), py::arg("thickness_m"));

    py::enum_<GeometryKind>(m, "GeometryKind")
        .value("circular", GeometryKind::circular)
        .value("linear", GeometryKind::linear);

    py::class_<DesignParams>(m, "DesignParams")
        .def(py::init<double, double>(), py::arg("wavelength_m"), py::arg("focal_length_m"))
        .def_readonly("wavelength_m", &DesignParams::wavelength_m)
        .def_readonly("focal_length_m", &DesignParams::focal_length_m)
        .def_readonly("sigma_m", &DesignParams::sigma_m);

    m.def("sigma", &sigma, py::arg("wavelength_m"), py::arg("focal_length_m"));
    m.def("zone_radius", &zone_radius, py::arg("design"), py::arg("order"), py::arg("offset"), py::arg("n"));
    m.def("zone_width", &zone_width, py::arg("design"), py::arg("order"), py::arg("offset"), py::arg("n"));
    m.def("slitness", &slitness, py::arg("order"), py::arg("offset"));
    m.def("ideal_order_efficiency", &ideal_order_efficiency, py::arg("order"));
    m.def("zero_order_share", &zero_order_share, py::arg("order"), py::arg("offset"));
    m.def(
        "validate_order_pair",
        [](int order, int offset) {
            const PairValidity v = validate_order_pair(order, offset);
            return py::make_tuple(v.ok, v.reason);
        },
        py::arg("order"), py::arg("offset"));

    py::class_<ZoneComponent>(m, "ZoneComponent")
        .def_readonly("order", &ZoneComponent::order)
        .def_readonly("offset", &ZoneComponent::offset)
        .def_readonly("n_first", &ZoneComponent::n_first)
        .def_readonly("n_last", &ZoneComponent::n_last)
        .def_readonly("shift_m", &ZoneComponent::shift_m)
        .def_property_readonly("zone_count", &ZoneComponent::zone_count);

    m.def("component_inner_radius", &component_inner_radius, py::arg("design"), py::arg("component"));
    m.def("component_outer_radius", &component_outer_radius, py::arg("design"), py::arg("component"));

    py::class_<ComponentPlan>(m, "ComponentPlan")
        .def_static("with_count", &ComponentPlan::with_count, py::arg("order"), py::arg("offset"), py::arg("count"))
        .def_static("with_radius", &ComponentPlan::with_radius, py::arg("order"), py::arg("offset"),
                    py::arg("outer_radius_m"))
        .def_static("to_limit", &ComponentPlan::to_limit, py::arg("order"), py::arg("offset"));

    py::class_<AssemblyOptions>(m, "AssemblyOptions")
        .def(py::init<>())
        .def_readwrite("kind", &AssemblyOptions::kind)
        .def_readwrite("min_feature_m", &AssemblyOptions::min_feature_m)
        .def_readwrite("relief_height_m", &AssemblyOptions::relief_height_m)
        .def_readwrite("membrane_thickness_m", &AssemblyOptions::membrane_thickness_m)
        .def_readwrite("material", &AssemblyOptions::material);

    py::class_<CompoundZonePlate>(m, "CompoundZonePlate")
        .def_readonly("design", &CompoundZonePlate::design)
        .def_readonly("kind", &CompoundZonePlate::kind)
        .def_readonly("components", &CompoundZonePlate::components)
        .def_readonly("relief_height_m", &CompoundZonePlate::relief_height_m)
        .def_readonly("membrane_thickness_m", &CompoundZonePlate::membrane_thickness_m)
        .def_readonly("material", &CompoundZonePlate::material)
        .def_property_readonly("aperture_radius", &CompoundZonePlate::aperture_radius)
        .def_property_readonly("min_zone_width", &CompoundZonePlate::min_zone_width)
        .def_property_readonly("total_zone_count", &CompoundZonePlate::total_zone_count);

    m.def(
        "assemble_compound",
        [](const DesignParams& dp, const std::vector<ComponentPlan>& plan, const AssemblyOptions& options) {
            return assemble_compound(dp, plan, options);
        },
        py::arg("design"), py::arg("plan"), py::arg("options"));

    py::class_<ZoneRecord>(m, "ZoneRecord")
        .def_readonly("n", &ZoneRecord::n)
        .def_readonly("r_inner_m", &ZoneRecord::r_inner_m)
        .def_readonly("r_outer_m", &ZoneRecord::r_outer_m)
        .def_readonly("width_m", &ZoneRecord::width_m)
        .def_readonly("groove", &ZoneRecord::groove)
        .def_readonly("component_index", &ZoneRecord::component_index);
    m.def("zone_table", &zone_table, py::arg("plate"));

    py::class_<SamplingOptions>(m, "SamplingOptions")
        .def(py::init<>())
        .def_readwrite("spacing_m", &SamplingOptions::spacing_m)
        .def_readwrite("max_spacing_fraction", &SamplingOptions::max_spacing_fraction);

    py::class_<TransmissionProfile>(m, "TransmissionProfile")
        .def_readonly("kind", &TransmissionProfile::kind)
        .def_readonly("spacing_m", &TransmissionProfile::spacing_m)
        .def_readonly("aperture_radius_m", &TransmissionProfile::aperture_radius_m)
        .def_readonly("samples", &TransmissionProfile::samples)
        .def("position", &TransmissionProfile::position, py::arg("i"))
        .def_property_readonly("size", &TransmissionProfile::size)
        .def_property_readonly("transmitted_power", &TransmissionProfile::transmitted_power)
        .def_property_readonly("aperture_power", &TransmissionProfile::aperture_power);

    m.def("sample_profile", &sample_profile, py::arg("plate"), py::arg("constants"),
          py::arg("options") = SamplingOptions{});
    m.def("ideal_phase_profile", &ideal_phase_profile, py::arg("plate"), py::arg("options") = SamplingOptions{});
    m.def("apply_central_stop", &apply_central_stop, py::arg("profile"), py::arg("stop_radius_m"));
    m.def(
        "profile_csv",
        [](const TransmissionProfile& profile) {
            std::ostringstream os;
            write_profile_csv(profile, os);
            return os.str();
        },
        py::arg("profile"));

    py::class_<GratingModel>(m, "GratingModel")
        .def(py::init<>())
        .def_static("lossless", &GratingModel::lossless, py::arg("duty"))
        .def_readwrite("t_groove", &GratingModel::t_groove)
        .def_readwrite("t_ridge", &GratingModel::t_ridge)
        .def_readwrite("duty", &GratingModel::duty);

    m.def("fourier_coefficient", &fourier_coefficient, py::arg("grating"), py::arg("k"));
    m.def("order_efficiency", &order_efficiency, py::arg("grating"), py::arg("k"));
    m.def("component_grating", &component_grating, py::arg("component"), py::arg("constants"),
          py::arg("relief_height_m"));
    m.def("focusing_efficiency_of_component", &focusing_efficiency_of_component, py::arg("component"),
          py::arg("constants"), py::arg("relief_height_m"));
    m.def(
        "slitness_scan",
        [](const GratingModel& base, int k, const std::vector<double>& duties) {
            return slitness_scan(base, k, duties);
        },
        py::arg("base"), py::arg("k"), py::arg("duties"));

    py::class_<OutputGrid>(m, "OutputGrid")
        .def(py::init<>())
        .def_readwrite("spacing_m", &OutputGrid::spacing_m)
        .def_readwrite("extent_m", &OutputGrid::extent_m);

    py::class_<ScalarField>(m, "ScalarField")
        .def_readonly("kind", &ScalarField::kind)
        .def_readonly("wavelength_m", &ScalarField::wavelength_m)
        .def_readonly("distance_m", &ScalarField::distance_m)
        .def_readonly("spacing_m", &ScalarField::spacing_m)
        .def_readonly("incident_power", &ScalarField::incident_power)
        .def_readonly("amplitude", &ScalarField::amplitude)
        .def("position", &ScalarField::position, py::arg("i"))
        .def_property_readonly("size", &ScalarField::size)
        .def("intensity", &ScalarField::intensity)
        .def("power_within", &ScalarField::power_within, py::arg("radius_m"));

    m.def("propagate", &propagate, py::arg("profile"), py::arg("wavelength_m"), py::arg("distance_m"),
          py::arg("grid"));
    m.def("propagate_radial", &propagate_radial, py::arg("profile"), py::arg("wavelength_m"), py::arg("distance_m"),
          py::arg("grid"));
    m.def("propagate_lateral", &propagate_lateral, py::arg("profile"), py::arg("wavelength_m"),
          py::arg("distance_m"), py::arg("grid"));

    py::class_<Curve>(m, "Curve")
        .def(py::init<>())
        .def_readwrite("x", &Curve::x)
        .def_readwrite("y", &Curve::y);

    m.def("fwhm", &fwhm, py::arg("curve"));
    m.def("mirrored_radial_intensity", &mirrored_radial_intensity, py::arg("field"));
    m.def("lateral_marginal", &lateral_marginal, py::arg("field"));

    py::class_<KnifeEdgeCurve>(m, "KnifeEdgeCurve")
        .def_readonly("position", &KnifeEdgeCurve::position)
        .def_readonly("flux", &KnifeEdgeCurve::flux)
        .def_readonly("derivative", &KnifeEdgeCurve::derivative);
    m.def(
        "knife_edge_scan",
        [](const ScalarField& field, const std::vector<double>& positions) {
            return knife_edge_scan(field, positions);
        },
        py::arg("field"), py::arg("positions"));

    m.def("focal_efficiency", &focal_efficiency, py::arg("field"), py::arg("integration_radius_m"));
    m.def("source_blur", &source_blur, py::arg("curve"), py::arg("source_fwhm_m"), py::arg("source_distance_m"),
          py::arg("focal_length_m"));
}
