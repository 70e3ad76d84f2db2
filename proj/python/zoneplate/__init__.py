"""Compound Fresnel zone-plate design and scalar wave propagation.

Thin wrapper around the compiled core. All quantities are SI (meters, eV)
unless a name says otherwise.
"""

from ._core import (
    HC_EV_M,
    AssemblyOptions,
    CompoundZonePlate,
    ComponentPlan,
    ConfigError,
    ConstantsTable,
    Curve,
    DesignParams,
    FabricationError,
    GeometryKind,
    GratingModel,
    KnifeEdgeCurve,
    OpticalConstants,
    OutputGrid,
    SamplingError,
    SamplingOptions,
    ScalarField,
    TransmissionProfile,
    ValidationError,
    ZoneComponent,
    ZoneRecord,
    amplitude_transmission,
    apply_central_stop,
    assemble_compound,
    attenuation_length,
    component_grating,
    component_inner_radius,
    component_outer_radius,
    energy_from_wavelength,
    focal_efficiency,
    focusing_efficiency_of_component,
    fourier_coefficient,
    fwhm,
    ideal_order_efficiency,
    ideal_phase_profile,
    knife_edge_scan,
    lateral_marginal,
    mirrored_radial_intensity,
    order_efficiency,
    pi_height,
    profile_csv,
    propagate,
    propagate_lateral,
    propagate_radial,
    sample_profile,
    sigma,
    slitness,
    slitness_scan,
    source_blur,
    validate_order_pair,
    wavelength_from_energy,
    zero_order_share,
    zone_radius,
    zone_table,
    zone_width,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
