#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "constants.hpp"
#include "multipole.hpp"
#include "spectrum.hpp"

// File ingestion. All laboratory units (Debye, cm^-1, amu, kV/cm) convert to
// atomic units here, at the boundary; everything downstream is a.u.

namespace lri::io {

using nlohmann::json;

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path + ": " + e.what());
  }
}

struct SpeciesFile {
  SpectrumTable table;
  std::string note;
  double accuracy = 0; // stated relative accuracy of the data, 0 = unstated
};

/// Species spectrum file: {name, levels:[{id, J2, energy_au}],
/// reduced_dipoles:[{from, to, value_au}], reduced_quadrupoles:[... optional]}
inline SpeciesFile load_species(const std::string& path) {
  json j = load_json(path);
  SpeciesFile out;
  try {
    out.table.name = j.at("name").get<std::string>();
    out.note = j.value("note", "");
    out.accuracy = j.value("accuracy", 0.0);
    std::map<std::string, HalfInt> jmap;
    for (auto& lv : j.at("levels")) {
      std::string id = lv.at("id").get<std::string>();
      HalfInt J = half(lv.at("J2").get<int>());
      out.table.add_level({id, J}, lv.at("energy_au").get<double>());
      jmap[id] = J;
    }
    auto add_rank = [&](const char* key, int l) {
      if (!j.contains(key)) return;
      for (auto& rd : j.at(key)) {
        std::string from = rd.at("from").get<std::string>();
        std::string to = rd.at("to").get<std::string>();
        if (!jmap.count(from) || !jmap.count(to))
          throw DataError(path + ": reduced element references unknown level");
        out.table.add_reduced({from, jmap[from]}, {to, jmap[to]}, l,
                              rd.at("value_au").get<double>());
      }
    };
    add_rank("reduced_dipoles", 1);
    add_rank("reduced_quadrupoles", 2);
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  return out;
}

struct RotorFile {
  RotorSpecies mol;
  std::string note;
  double c6_total_au = 0; // literature total, reporting only (0 = absent)
  double c6_rot_au = 0;   // literature rotational part, reporting only
};

/// Rotor file: {name, mass_amu, B0_cm1 | B0_au, d0_debye | d0_au}.
inline RotorFile load_rotor(const std::string& path) {
  json j = load_json(path);
  RotorFile out;
  try {
    out.mol.name = j.at("name").get<std::string>();
    out.mol.mass = constants::amu_to_me(j.at("mass_amu").get<double>());
    if (j.contains("B0_au"))
      out.mol.B0 = j.at("B0_au").get<double>();
    else
      out.mol.B0 = constants::cm1_to_hartree(j.at("B0_cm1").get<double>());
    if (j.contains("d0_au"))
      out.mol.d0 = j.at("d0_au").get<double>();
    else
      out.mol.d0 = constants::debye_to_au(j.at("d0_debye").get<double>());
    out.note = j.value("note", "");
    out.c6_total_au = j.value("c6_total_au", 0.0);
    out.c6_rot_au = j.value("c6_rot_au", 0.0);
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  if (out.mol.B0 <= 0 || out.mol.d0 < 0 || out.mol.mass <= 0)
    throw DataError(path + ": rotor parameters out of range");
  return out;
}

/// Charge-distribution file: one record per charge, "q x y z" in atomic
/// units, '#' comments.
inline ChargeDistribution load_charges(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  ChargeDistribution out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double q, x, y, z;
    if (!(ls >> q)) continue; // blank
    if (!(ls >> x >> y >> z))
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": expected 'q x y z'");
    double trailing;
    if (ls >> trailing)
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": trailing fields");
    out.charges.push_back({q, {x, y, z}});
  }
  if (out.charges.empty())
    throw DataError(path + ": no charges found");
  return out;
}

} // namespace lri::io
