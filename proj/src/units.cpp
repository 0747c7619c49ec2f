#include "molion/units.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "molion/errors.hpp"

namespace molion {

namespace {

namespace k = constants;

struct UnitInfo {
    Dimension dimension;
    double scale;  // internal = value * scale
};

UnitInfo info(Unit unit) {
    constexpr double cm = 1e-2 / k::bohr_m;  // one centimetre in bohr
    switch (unit) {
        case Unit::bohr: return {Dimension::length, 1.0};
        case Unit::meter: return {Dimension::length, 1.0 / k::bohr_m};
        case Unit::centimeter: return {Dimension::length, cm};
        case Unit::nanometer: return {Dimension::length, 1e-9 / k::bohr_m};

        case Unit::electron_mass: return {Dimension::mass, 1.0};
        case Unit::amu: return {Dimension::mass, k::amu_me};
        case Unit::kilogram: return {Dimension::mass, 1.0 / k::electron_mass_kg};

        case Unit::hartree: return {Dimension::energy, 1.0};
        case Unit::joule: return {Dimension::energy, 1.0 / k::hartree_J};
        case Unit::energy_kelvin: return {Dimension::energy, k::kelvin_hartree};
        case Unit::energy_microkelvin: return {Dimension::energy, 1e-6 * k::kelvin_hartree};
        case Unit::energy_nanokelvin: return {Dimension::energy, 1e-9 * k::kelvin_hartree};

        case Unit::kelvin: return {Dimension::temperature, k::kelvin_hartree};
        case Unit::microkelvin: return {Dimension::temperature, 1e-6 * k::kelvin_hartree};
        case Unit::nanokelvin: return {Dimension::temperature, 1e-9 * k::kelvin_hartree};
        case Unit::temperature_hartree: return {Dimension::temperature, 1.0};

        case Unit::per_bohr3: return {Dimension::density, 1.0};
        case Unit::per_cm3: return {Dimension::density, 1.0 / (cm * cm * cm)};
        case Unit::per_m3: return {Dimension::density, k::bohr_m * k::bohr_m * k::bohr_m};

        case Unit::per_atomic_time: return {Dimension::frequency, 1.0};
        case Unit::per_second: return {Dimension::frequency, k::atomic_time_s};

        case Unit::atomic_velocity: return {Dimension::velocity, 1.0};
        case Unit::meter_per_second:
            return {Dimension::velocity, 1.0 / k::atomic_velocity_m_per_s};
        case Unit::millimeter_per_second:
            return {Dimension::velocity, 1e-3 / k::atomic_velocity_m_per_s};

        case Unit::per_bohr: return {Dimension::wavenumber, 1.0};
        case Unit::per_meter: return {Dimension::wavenumber, k::bohr_m};

        case Unit::atomic_time: return {Dimension::time, 1.0};
        case Unit::second: return {Dimension::time, 1.0 / k::atomic_time_s};
        case Unit::millisecond: return {Dimension::time, 1e-3 / k::atomic_time_s};

        case Unit::one: return {Dimension::dimensionless, 1.0};
    }
    throw DomainError("unknown unit tag");
}

UnitInfo checked(const Quantity& q, Unit unit) {
    const UnitInfo u = info(unit);
    if (u.dimension != q.dimension) {
        throw DimensionMismatch(std::string("unit measures ") +
                                std::string(name_of(u.dimension)) + ", quantity is " +
                                std::string(name_of(q.dimension)));
    }
    return u;
}

}  // namespace

Dimension dimension_of(Unit unit) noexcept { return info(unit).dimension; }

std::string_view name_of(Dimension dim) noexcept {
    switch (dim) {
        case Dimension::length: return "length";
        case Dimension::mass: return "mass";
        case Dimension::energy: return "energy";
        case Dimension::temperature: return "temperature";
        case Dimension::density: return "density";
        case Dimension::frequency: return "frequency";
        case Dimension::velocity: return "velocity";
        case Dimension::wavenumber: return "wavenumber";
        case Dimension::time: return "time";
        case Dimension::dimensionless: return "dimensionless";
    }
    return "?";
}

Quantity::Quantity(double v, Dimension d) : value(v), dimension(d) {
    if (!std::isfinite(v)) throw DomainError("quantity value must be finite");
}

Quantity to_internal(Quantity q, Unit unit) {
    return {q.value * checked(q, unit).scale, q.dimension};
}

Quantity from_internal(Quantity q, Unit unit) {
    return {q.value / checked(q, unit).scale, q.dimension};
}

double to_internal(double value, Unit unit) {
    return to_internal(Quantity{value, dimension_of(unit)}, unit).value;
}

double from_internal(double value, Unit unit) {
    return from_internal(Quantity{value, dimension_of(unit)}, unit).value;
}

Species Species::from_practical(std::string name, double mass_amu, double a_a0,
                                double a_ion_a0, double c4_au) {
    auto finite = [](const char* field, double v) {
        if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
    };
    finite("mass_amu", mass_amu);
    finite("a_a0", a_a0);
    finite("a_ion_a0", a_ion_a0);
    finite("c4_au", c4_au);
    if (name.empty()) throw ValidationError("name", "must not be empty");
    if (mass_amu <= 0) throw ValidationError("mass_amu", "must be positive");
    if (a_a0 == 0) throw ValidationError("a_a0", "must be non-zero");
    if (a_ion_a0 <= 0) throw ValidationError("a_ion_a0", "must be positive");
    if (c4_au <= 0) throw ValidationError("c4_au", "must be positive");
    return Species{std::move(name), to_internal(mass_amu, Unit::amu), a_a0, a_ion_a0, c4_au};
}

Species sodium() { return Species::from_practical("Na", 22.98977, 52.0, 2000.0, 162.7); }

Species species_from_json(const nlohmann::json& doc) {
    static const std::set<std::string> keys{"name", "mass_amu", "a_a0", "a_ion_a0", "c4_au"};
    if (!doc.is_object()) throw ValidationError("<root>", "species file must hold a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (!keys.contains(key)) throw ValidationError(key, "unknown key");
    }
    auto number = [&](const char* key) {
        if (!doc.contains(key)) throw ValidationError(key, "missing field");
        const auto& v = doc.at(key);
        if (!v.is_number()) throw ValidationError(key, "must be a number");
        return v.get<double>();
    };
    if (!doc.contains("name")) throw ValidationError("name", "missing field");
    if (!doc.at("name").is_string()) throw ValidationError("name", "must be a string");
    return Species::from_practical(doc.at("name").get<std::string>(), number("mass_amu"),
                                   number("a_a0"), number("a_ion_a0"), number("c4_au"));
}

Species load_species(std::string_view source) {
    if (source == "Na") return sodium();
    const std::filesystem::path path{source};
    std::ifstream in(path);
    if (!in) throw ValidationError("species", "no builtin or readable file named '" +
                                                  std::string(source) + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("species", std::string("parse error: ") + e.what());
    }
    return species_from_json(doc);
}

double reduced_mass(const Species& species, const IonMassMode& mode) {
    const double m = species.mass;
    return std::visit(
        [m](const auto& mm) -> double {
            using T = std::decay_t<decltype(mm)>;
            if constexpr (std::is_same_v<T, InfiniteIonMass>) {
                return m;
            } else if constexpr (std::is_same_v<T, EqualIonMass>) {
                return 0.5 * m;
            } else {
                if (!(mm.mass > 0) || !std::isfinite(mm.mass))
                    throw ValidationError("ion_mass", "explicit ion mass must be positive");
                return m * mm.mass / (m + mm.mass);
            }
        },
        mode);
}

}  // namespace molion
