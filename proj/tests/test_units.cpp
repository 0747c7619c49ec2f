#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "molion/errors.hpp"
#include "molion/units.hpp"
#include "support.hpp"

using namespace molion;
using molion::test::rel_err;

TEST_CASE("atomic length is the identity") {
    CHECK(to_internal(Quantity{1.0, Dimension::length}, Unit::bohr).value == 1.0);
}

TEST_CASE("density of 1e14 per cm^3 in bohr^-3") {
    // (a0 in cm)^3 * 1e14 with CODATA 2018 a0 = 5.29177210903e-9 cm.
    CHECK(rel_err(to_internal(1e14, Unit::per_cm3), 1.481847114721628e-11) < 1e-13);
}

TEST_CASE("100 nK as an energy in Hartree") {
    // 1e-7 K * 1.380649e-23 J/K / 4.3597447222071e-18 J.
    CHECK(rel_err(to_internal(100.0, Unit::nanokelvin), 3.1668115634556075e-13) < 1e-13);
    CHECK(to_internal(100.0, Unit::nanokelvin) == to_internal(100.0, Unit::energy_nanokelvin));
}

TEST_CASE("incompatible unit is a dimension mismatch") {
    CHECK_THROWS_AS(to_internal(Quantity{1.0, Dimension::length}, Unit::amu), DimensionMismatch);
    CHECK_THROWS_AS(from_internal(Quantity{1.0, Dimension::time}, Unit::per_second),
                    DimensionMismatch);
}

TEST_CASE("quantities must be finite") {
    CHECK_THROWS_AS(Quantity(std::nan(""), Dimension::length), DomainError);
}

TEST_CASE("conversions are linear and round-trip") {
    const Unit units[] = {Unit::meter,        Unit::centimeter,  Unit::nanometer, Unit::amu,
                          Unit::kilogram,     Unit::joule,       Unit::kelvin,    Unit::nanokelvin,
                          Unit::per_cm3,      Unit::per_m3,      Unit::per_second,
                          Unit::meter_per_second, Unit::per_meter, Unit::second,  Unit::millisecond,
                          Unit::energy_microkelvin};
    for (int trial = 0; trial < 200; ++trial) {
        const double v = test::log_uniform(1e-20, 1e20);
        const double alpha = test::log_uniform(1e-5, 1e5);
        for (Unit u : units) {
            const double internal = to_internal(v, u);
            CHECK(rel_err(from_internal(internal, u), v) <= 1e-12);
            CHECK(rel_err(to_internal(alpha * v, u), alpha * internal) <= 4e-16);
        }
    }
}

TEST_CASE("builtin sodium") {
    const Species na = load_species("Na");
    CHECK(na.name == "Na");
    CHECK(na.c4 == 162.7);
    CHECK(na.a == 52.0);
    CHECK(na.a_ion == 2000.0);
    CHECK(na.mass == to_internal(22.98977, Unit::amu));
}

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path;
}

}  // namespace

TEST_CASE("species file with all sodium fields equals the builtin") {
    const auto path = write_temp(
        "molion_na.json",
        R"({"name": "Na", "mass_amu": 22.98977, "a_a0": 52, "a_ion_a0": 2000, "c4_au": 162.7})");
    CHECK(load_species(path.string()) == sodium());
}

TEST_CASE("species file validation names the field") {
    auto field_of = [](const std::string& body) {
        const auto path = write_temp("molion_bad.json", body);
        try {
            load_species(path.string());
        } catch (const ValidationError& e) {
            return e.field();
        }
        return std::string("<none>");
    };
    CHECK(field_of(R"({"name":"X","mass_amu":-1,"a_a0":52,"a_ion_a0":2000,"c4_au":162.7})") ==
          "mass_amu");
    CHECK(field_of(R"({"name":"X","mass_amu":23,"a_a0":52,"a_ion_a0":2000,"c4_au":0})") == "c4_au");
    CHECK(field_of(R"({"name":"X","mass_amu":23,"a_a0":52,"a_ion_a0":2000})") == "c4_au");
    CHECK(field_of(R"({"name":"X","mass_amu":23,"a_a0":52,"a_ion_a0":2000,"c4_au":1,"x":1})") ==
          "x");
    CHECK(field_of(R"({"name":"X","mass_amu":23,"a_a0":0,"a_ion_a0":2000,"c4_au":1})") == "a_a0");
    CHECK(field_of("[1, 2]") == "<root>");
    CHECK(field_of("not json") == "species");
    CHECK_THROWS_AS(load_species("/nonexistent/rb.json"), ValidationError);
}

TEST_CASE("reduced mass conventions") {
    const Species na = sodium();
    CHECK(reduced_mass(na, InfiniteIonMass{}) == na.mass);
    CHECK(reduced_mass(na, EqualIonMass{}) == 0.5 * na.mass);
    CHECK(rel_err(reduced_mass(na, ExplicitIonMass{na.mass}), 0.5 * na.mass) < 1e-15);
    CHECK_THROWS_AS(reduced_mass(na, ExplicitIonMass{0.0}), ValidationError);

    for (int i = 0; i < 100; ++i) {
        const double ion = test::log_uniform(1e-3, 1e9);
        CHECK(reduced_mass(na, InfiniteIonMass{}) >= reduced_mass(na, ExplicitIonMass{ion}));
    }
}
