#pragma once

// Physical constants, unit conversions and the species registry.
//
// Everything inside the library is expressed in Hartree atomic units
// (hbar = m_e = e = 1, energies in Hartree, lengths in bohr). Temperatures
// are stored as the energy k_B*T. User-facing units only appear at the
// boundaries through `to_internal` / `from_internal`.

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

namespace molion {

namespace constants {

// CODATA 2018.
inline constexpr double bohr_m = 5.29177210903e-11;
inline constexpr double hartree_J = 4.3597447222071e-18;
inline constexpr double boltzmann_J_per_K = 1.380649e-23;
inline constexpr double hbar_Js = 1.054571817e-34;
inline constexpr double electron_mass_kg = 9.1093837015e-31;
inline constexpr double amu_kg = 1.66053906660e-27;

inline constexpr double pi = 3.141592653589793238462643383279502884;

inline constexpr double atomic_time_s = hbar_Js / hartree_J;
inline constexpr double atomic_velocity_m_per_s = bohr_m / atomic_time_s;
inline constexpr double amu_me = amu_kg / electron_mass_kg;
inline constexpr double kelvin_hartree = boltzmann_J_per_K / hartree_J;

}  // namespace constants

enum class Dimension {
    length,
    mass,
    energy,
    temperature,
    density,
    frequency,
    velocity,
    wavenumber,
    time,
    dimensionless,
};

enum class Unit {
    // length
    bohr,
    meter,
    centimeter,
    nanometer,
    // mass
    electron_mass,
    amu,
    kilogram,
    // energy (kelvin-type tags mean E / k_B)
    hartree,
    joule,
    energy_kelvin,
    energy_microkelvin,
    energy_nanokelvin,
    // temperature
    kelvin,
    microkelvin,
    nanokelvin,
    temperature_hartree,
    // density
    per_bohr3,
    per_cm3,
    per_m3,
    // frequency
    per_atomic_time,
    per_second,
    // velocity
    atomic_velocity,
    meter_per_second,
    millimeter_per_second,
    // wavenumber
    per_bohr,
    per_meter,
    // time
    atomic_time,
    second,
    millisecond,
    // dimensionless
    one,
};

Dimension dimension_of(Unit unit) noexcept;
std::string_view name_of(Dimension dim) noexcept;

/// A finite value tagged with its physical dimension.
struct Quantity {
    double value;
    Dimension dimension;

    Quantity(double value, Dimension dimension);
};

/// Reads `q.value` as a number of `unit` and returns it in internal units.
/// Throws DimensionMismatch if `unit` does not measure `q.dimension`.
Quantity to_internal(Quantity q, Unit unit);

/// Inverse of `to_internal`.
Quantity from_internal(Quantity q, Unit unit);

/// Shorthands for plain doubles; the dimension is the unit's own.
double to_internal(double value, Unit unit);
double from_internal(double value, Unit unit);

/// Immutable atomic data, all fields in atomic units.
struct Species {
    std::string name;
    double mass;   ///< atom mass
    double a;      ///< atom-atom scattering length
    double a_ion;  ///< atom-ion scattering length
    double c4;     ///< dipole polarizability

    /// Validates and builds from the practical units of the species file.
    static Species from_practical(std::string name, double mass_amu, double a_a0,
                                  double a_ion_a0, double c4_au);

    friend bool operator==(const Species&, const Species&) = default;
};

/// Sodium-23 with a = 52 a0, a_ion = 2000 a0, C4 = 162.7 a.u.
Species sodium();

/// Parses the species file schema; unknown or missing keys are rejected.
Species species_from_json(const nlohmann::json& doc);

/// `source` is either a builtin name ("Na") or a path to a species file.
Species load_species(std::string_view source);

struct InfiniteIonMass {};
struct EqualIonMass {};
struct ExplicitIonMass {
    double mass;  ///< atomic units
};

using IonMassMode = std::variant<InfiniteIonMass, EqualIonMass, ExplicitIonMass>;

/// Atom-ion reduced mass for the chosen ion-mass convention.
double reduced_mass(const Species& species, const IonMassMode& mode);

}  // namespace molion
