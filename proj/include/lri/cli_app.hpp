#pragma once

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "alkali.hpp"
#include "constants.hpp"
#include "io.hpp"
#include "rotorpair.hpp"

// Command-line surface. Exit codes: 0 success, 1 usage, 2 data error,
// 3 numerical error. Output is deterministic for identical resolved
// configuration (fixed formatting, ordered assembly).

namespace lri::cli {

inline constexpr const char* tool_version = "0.2.0";

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

inline std::string fmtg(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Meta {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  void add(const std::string& k, const std::string& v) {
    params.push_back({k, v});
  }
  void add(const std::string& k, double v) { add(k, fmtg(v)); }
  void add(const std::string& k, int v) { add(k, std::to_string(v)); }
  void print_header(std::ostream& out) const {
    out << "# lri " << tool_version << " constants=" << constants::version
        << "\n# command: " << command << "\n# config:";
    for (auto& [k, v] : params) out << " " << k << "=" << v;
    out << "\n";
  }
  nlohmann::json as_json() const {
    nlohmann::json j;
    j["tool"] = std::string("lri ") + tool_version;
    j["constants"] = constants::version;
    j["command"] = command;
    for (auto& [k, v] : params) j["config"][k] = v;
    return j;
  }
};

} // namespace detail

/// Runs the CLI on the given arguments (excluding argv[0]); all output goes
/// to the provided streams. Returns the process exit code.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"long-range electrostatic interactions between atoms and "
               "molecules"};
  app.set_config("--config");
  std::string format = "csv";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  unsigned seed = 0;
  app.add_option("--seed", seed, "RNG seed echoed into metadata");
  app.require_subcommand(1);

  int rc = 0;
  auto json_mode = [&] { return format == "json"; };

  // ---- wigner ------------------------------------------------------------
  auto* wig = app.add_subcommand("wigner", "exact angular-momentum symbols");
  wig->require_subcommand(1);
  std::vector<int> wargs;

  auto* wcg = wig->add_subcommand("cg",
                                  "Clebsch-Gordan C^{JM}_{j1m1 j2m2} "
                                  "(doubled integers: 2j1 2m1 2j2 2m2 2J 2M)");
  wcg->add_option("args", wargs, "2j1 2m1 2j2 2m2 2J 2M")->expected(6);
  wcg->callback([&] {
    HalfInt j1 = half(wargs[0]), m1 = half(wargs[1]), j2 = half(wargs[2]),
            m2 = half(wargs[3]), J = half(wargs[4]), M = half(wargs[5]);
    Surd v = clebsch_gordan(j1, m1, j2, m2, J, M);
    out << "exact = " << v.str() << "\n";
    out << "float = " << detail::fmt(v.to_double()) << "\n";
    if (!triangle_ok(j1, j2, J))
      out << "note: triad (" << j1.str() << " " << j2.str() << " " << J.str()
          << ") violates the triangle rule\n";
    else if (M != m1 + m2)
      out << "note: M != m1 + m2\n";
  });

  auto* w6 = wig->add_subcommand("6j", "Wigner 6j (doubled integers)");
  w6->add_option("args", wargs, "2a 2b 2c 2d 2e 2f")->expected(6);
  w6->callback([&] {
    HalfInt a = half(wargs[0]), b = half(wargs[1]), c = half(wargs[2]),
            d = half(wargs[3]), e = half(wargs[4]), f = half(wargs[5]);
    Surd v = wigner_6j(a, b, c, d, e, f);
    out << "exact = " << v.str() << "\n";
    out << "float = " << detail::fmt(v.to_double()) << "\n";
    const char* names[4] = {"(a b c)", "(a e f)", "(d b f)", "(d e c)"};
    bool ok[4] = {triangle_ok(a, b, c), triangle_ok(a, e, f),
                  triangle_ok(d, b, f), triangle_ok(d, e, c)};
    for (int i = 0; i < 4; ++i)
      if (!ok[i]) out << "note: triad " << names[i] << " violated\n";
  });

  auto* w9 = wig->add_subcommand("9j", "Wigner 9j (doubled integers)");
  w9->add_option("args", wargs, "nine doubled integers")->expected(9);
  w9->callback([&] {
    std::array<HalfInt, 9> q;
    for (int i = 0; i < 9; ++i) q[i] = half(wargs[i]);
    Surd v = wigner_9j(q[0], q[1], q[2], q[3], q[4], q[5], q[6], q[7], q[8]);
    out << "exact = " << v.str() << "\n";
    out << "float = " << detail::fmt(v.to_double()) << "\n";
    for (int i = 0; i < 9; ++i)
      if (q[i].twice() == 0)
        out << "note: vanishing argument, value collapses to a single 6j\n";
  });

  // ---- atoms ---------------------------------------------------------------
  auto* atoms = app.add_subcommand("atoms", "atom-pair scales and coefficients");
  atoms->require_subcommand(1);

  auto* scales = atoms->add_subcommand("scales", "van der Waals length/energy");
  double mass_a = 0, mass_b = 0, c6_in = 0, r2a = -1, r2b = -1;
  scales->add_option("--mass-amu", mass_a, "mass of A (amu)")->required();
  scales->add_option("--mass-amu-b", mass_b, "mass of B (amu; default: A)");
  scales->add_option("--c6", c6_in, "C6 coefficient (a.u.)")->required();
  scales->add_option("--r2-a", r2a, "<r^2> of A (bohr^2) for the LeRoy radius");
  scales->add_option("--r2-b", r2b, "<r^2> of B (bohr^2)");
  scales->callback([&] {
    double mb = mass_b > 0 ? mass_b : mass_a;
    auto s = vdw_scales(mass_a, mb, c6_in);
    if (r2a >= 0) s.R_leroy = leroy_radius(r2a, r2b >= 0 ? r2b : r2a);
    detail::Meta meta;
    meta.command = "atoms scales";
    meta.add("mass_amu_a", mass_a);
    meta.add("mass_amu_b", mb);
    meta.add("c6_au", c6_in);
    if (json_mode()) {
      nlohmann::json j;
      j["meta"] = meta.as_json();
      j["R_vdw_au"] = s.R_vdw;
      j["E_vdw_au"] = s.E_vdw;
      j["E_vdw_mK"] = s.E_vdw_mK;
      if (s.R_leroy) j["R_leroy_au"] = *s.R_leroy;
      out << j.dump(2) << "\n";
    } else {
      meta.print_header(out);
      out << "R_vdw_au,E_vdw_au,E_vdw_mK" << (s.R_leroy ? ",R_leroy_au" : "")
          << "\n";
      out << detail::fmt(s.R_vdw) << "," << detail::fmt(s.E_vdw) << ","
          << detail::fmt(s.E_vdw_mK);
      if (s.R_leroy) out << "," << detail::fmt(*s.R_leroy);
      out << "\n";
    }
  });

  auto* ac6 = atoms->add_subcommand("c6", "ground-pair C6 from species files");
  std::string spec_a, spec_b, method = "direct";
  ac6->add_option("--spectrum", spec_a, "species file of A")->required();
  ac6->add_option("--spectrum-b", spec_b, "species file of B (default: A)");
  ac6->add_option("--method", method, "direct | quadrature")
      ->check(CLI::IsMember({"direct", "quadrature"}));
  ac6->callback([&] {
    auto fa = io::load_species(spec_a);
    auto fb = spec_b.empty() ? fa : io::load_species(spec_b);
    AtomSpecies A{fa.table.name, 1.0, &fa.table, {}};
    AtomSpecies B{fb.table.name, 1.0, &fb.table, {}};
    auto c = c6_ground_pair(A, B,
                            method == "direct" ? C6Method::direct
                                               : C6Method::quadrature);
    detail::Meta meta;
    meta.command = "atoms c6";
    meta.add("species_a", fa.table.name);
    meta.add("species_b", fb.table.name);
    meta.add("method", method);
    if (json_mode()) {
      nlohmann::json j;
      j["meta"] = meta.as_json();
      j["C6_au"] = c.value;
      out << j.dump(2) << "\n";
    } else {
      meta.print_header(out);
      out << "C6_au\n" << detail::fmt(c.value) << "\n";
    }
  });

  auto* ac3 = atoms->add_subcommand("c3", "resonant C3 of a like pair");
  std::string lower_id, upper_id;
  ac3->add_option("--spectrum", spec_a, "species file")->required();
  ac3->add_option("--lower", lower_id, "lower level id (default: ground)");
  ac3->add_option("--upper", upper_id,
                  "upper level id (default: first dipole-coupled)");
  ac3->callback([&] {
    auto fa = io::load_species(spec_a);
    AtomSpecies A{fa.table.name, 1.0, &fa.table, {}};
    LevelKey lower = fa.table.ground();
    if (!lower_id.empty()) {
      for (auto& [k, e] : fa.table.levels())
        if (k.beta == lower_id) lower = k;
    }
    LevelKey upper = lower;
    bool found = false;
    for (auto& [k, e] : fa.table.levels()) {
      if (k == lower) continue;
      if (!upper_id.empty() && k.beta != upper_id) continue;
      if (fa.table.has_reduced(k, lower, 1)) {
        upper = k;
        found = true;
        break;
      }
    }
    if (!found) throw DataError("no dipole-coupled upper level on file");
    auto c3 = resonant_c3(A, lower, upper);
    detail::Meta meta;
    meta.command = "atoms c3";
    meta.add("species", fa.table.name);
    meta.add("lower", lower.str());
    meta.add("upper", upper.str());
    if (json_mode()) {
      nlohmann::json j;
      j["meta"] = meta.as_json();
      j["C3_sigma_au"] = c3.c3_sigma;
      j["C3_pi_au"] = c3.c3_pi;
      out << j.dump(2) << "\n";
    } else {
      meta.print_header(out);
      out << "C3_sigma_au,C3_pi_au,pi_over_sigma\n";
      out << detail::fmt(c3.c3_sigma) << "," << detail::fmt(c3.c3_pi) << ","
          << detail::fmt(c3.c3_sigma != 0 ? c3.c3_pi / c3.c3_sigma : 0)
          << "\n";
    }
  });

  // ---- multipole -----------------------------------------------------------
  auto* mp = app.add_subcommand("multipole", "classical multipolar expansion");
  mp->require_subcommand(1);

  auto* mom = mp->add_subcommand("moments", "spherical moments of a file");
  std::string charges_path;
  int lmax = 4;
  mom->add_option("--charges", charges_path, "charge file (q x y z)")
      ->required();
  mom->add_option("--lmax", lmax, "highest rank")->capture_default_str();
  mom->callback([&] {
    auto dist = io::load_charges(charges_path);
    auto q = spherical_moments(dist, lmax);
    detail::Meta meta;
    meta.command = "multipole moments";
    meta.add("charges", charges_path);
    meta.add("lmax", lmax);
    meta.add("extent_au", dist.extent());
    if (json_mode()) {
      nlohmann::json j;
      j["meta"] = meta.as_json();
      for (auto& m : q.list()) {
        j["moments"].push_back({{"l", m.l},
                                {"m", m.m},
                                {"re", m.value.real()},
                                {"im", m.value.imag()}});
      }
      out << j.dump(2) << "\n";
    } else {
      meta.print_header(out);
      out << "l,m,re_au,im_au\n";
      for (auto& m : q.list())
        out << m.l << "," << m.m << "," << detail::fmt(m.value.real()) << ","
            << detail::fmt(m.value.imag()) << "\n";
    }
  });

  auto* men = mp->add_subcommand("energy", "interaction energy of two files");
  std::string charges_b;
  double Rsep = 0, theta = 0, phi = 0;
  int lmax_sum = 4;
  bool with_direct = false;
  men->add_option("--charges-a", charges_path, "charge file of A")->required();
  men->add_option("--charges-b", charges_b, "charge file of B")->required();
  men->add_option("--r", Rsep, "separation (bohr)")->required();
  men->add_option("--theta", theta, "axis polar angle (rad, SF frame)");
  men->add_option("--phi", phi, "axis azimuth (rad)");
  men->add_option("--lmax-sum", lmax_sum, "truncation of lA+lB")
      ->capture_default_str();
  men->add_flag("--direct", with_direct, "also print the pairwise Coulomb sum");
  men->callback([&] {
    auto da = io::load_charges(charges_path);
    auto db = io::load_charges(charges_b);
    int rank = std::max(0, lmax_sum);
    auto qa = spherical_moments(da, rank);
    auto qb = spherical_moments(db, rank);
    bool bf = (theta == 0.0 && phi == 0.0);
    double v = bf ? bf_energy(qa, qb, Rsep, lmax_sum)
                  : sf_energy(qa, qb, Rsep, {theta, phi}, lmax_sum);
    detail::Meta meta;
    meta.command = "multipole energy";
    meta.add("charges_a", charges_path);
    meta.add("charges_b", charges_b);
    meta.add("R_au", Rsep);
    meta.add("theta", theta);
    meta.add("phi", phi);
    meta.add("lmax_sum", lmax_sum);
    double vd = 0;
    if (with_direct) {
      Vec3 Rvec{Rsep * std::sin(theta) * std::cos(phi),
                Rsep * std::sin(theta) * std::sin(phi),
                Rsep * std::cos(theta)};
      vd = direct_coulomb(da, db, Rvec);
    }
    if (json_mode()) {
      nlohmann::json j;
      j["meta"] = meta.as_json();
      j["energy_au"] = v;
      if (with_direct) {
        j["direct_au"] = vd;
        j["relative_difference"] = (v - vd) / (vd != 0 ? vd : 1.0);
      }
      out << j.dump(2) << "\n";
    } else {
      meta.print_header(out);
      out << "energy_au" << (with_direct ? ",direct_au,rel_diff" : "") << "\n";
      out << detail::fmt(v);
      if (with_direct)
        out << "," << detail::fmt(vd) << ","
            << detail::fmt((v - vd) / (vd != 0 ? vd : 1.0));
      out << "\n";
    }
  });

  // ---- rotor ---------------------------------------------------------------
  auto* rotor = app.add_subcommand("rotor", "polar rigid-rotor pairs");
  rotor->require_subcommand(1);

  auto* blocks = rotor->add_subcommand(
      "blocks", "eigenstructure of a degenerate rotational block");
  std::string rotor_path, rotor_b_path, outfile;
  std::vector<int> level_pair{0, 0};
  blocks->add_option("--species", rotor_path, "rotor file")->required();
  blocks->add_option("--level", level_pair, "rotational pair (JA JB)")
      ->expected(2);
  blocks->callback([&] {
    auto rf = io::load_rotor(rotor_path);
    detail::Meta meta;
    meta.command = "rotor blocks";
    meta.add("species", rf.mol.name);
    meta.add("B0_au", rf.mol.B0);
    meta.add("d0_au", rf.mol.d0);
    meta.add("level", std::to_string(level_pair[0]) + " " +
                          std::to_string(level_pair[1]));
    meta.add("rstar_au", rstar(rf.mol));
    int ja = level_pair[0], jb = level_pair[1];
    if (ja == 0 && jb == 0) {
      auto c6 = vdw00(rf.mol, rf.mol);
      if (json_mode()) {
        nlohmann::json j;
        j["meta"] = meta.as_json();
        j["C6_rot_au"] = c6.value;
        if (rf.c6_total_au != 0) {
          j["C6_total_literature_au"] = rf.c6_total_au;
          j["C6_rot_literature_au"] = rf.c6_rot_au;
          j["literature_rot_share_percent"] =
              100.0 * rf.c6_rot_au / rf.c6_total_au;
        }
        out << j.dump(2) << "\n";
      } else {
        meta.print_header(out);
        out << "C6_rot_au\n" << detail::fmt(c6.value) << "\n";
        if (rf.c6_total_au != 0)
          out << "# literature: C6_total=" << detail::fmtg(rf.c6_total_au)
              << " C6_rot=" << detail::fmtg(rf.c6_rot_au)
              << " rot_share=" << detail::fmtg(100.0 * rf.c6_rot_au /
                                               rf.c6_total_au)
              << "%\n";
      }
    } else if (ja == 1 && jb == 1) {
      auto res = vdw11_block_exact();
      double unit = std::pow(rf.mol.d0, 4) / rf.mol.B0;
      if (json_mode()) {
        nlohmann::json j;
        j["meta"] = meta.as_json();
        j["unit"] = "d0^4/(16 pi^2 eps0^2 B0)";
        j["unit_au"] = unit;
        for (auto& e : res.eigen)
          j["eigenvalues"].push_back(
              {{"exact", e.value.str()},
               {"value_au", e.value.to_double() * unit},
               {"mtot", e.mtot},
               {"exchange_even", e.exchange_even}});
        out << j.dump(2) << "\n";
      } else {
        meta.print_header(out);
        out << "# C6 in units d0^4/(16 pi^2 eps0^2 B0) = "
            << detail::fmtg(unit) << " a.u.\n";
        out << "exact,value_au,mtot,exchange_even\n";
        for (auto& e : res.eigen)
          out << e.value.str() << "," << detail::fmt(e.value.to_double() * unit)
              << "," << e.mtot << "," << (e.exchange_even ? 1 : 0) << "\n";
      }
    } else if ((ja == 1 && jb == 0) || (ja == 0 && jb == 1)) {
      auto res = c3_block(rf.mol, rf.mol);
      double unit = rf.mol.d0 * rf.mol.d0;
      if (json_mode()) {
        nlohmann::json j;
        j["meta"] = meta.as_json();
        j["unit"] = "d0^2";
        j["unit_au"] = unit;
        for (auto& e : res.eigen)
          j["eigenvalues"].push_back(
              {{"exact", e.value.str()},
               {"value_au", e.value.to_double() * unit},
               {"mtot", e.mtot},
               {"exchange_even", e.exchange_even}});
        out << j.dump(2) << "\n";
      } else {
        meta.print_header(out);
        out << "# C3 in units d0^2 = " << detail::fmtg(unit) << " a.u.\n";
        out << "exact,value_au,mtot,exchange_even\n";
        for (auto& e : res.eigen)
          out << e.value.str() << "," << detail::fmt(e.value.to_double() * unit)
              << "," << e.mtot << "," << (e.exchange_even ? 1 : 0) << "\n";
      }
    } else {
      throw CLI::ValidationError(
          "rotor blocks supports --level 0 0, 1 1, and 1 0");
    }
  });

  auto* pec = rotor->add_subcommand("pec", "potential energy curve scan");
  std::string frame = "sf";
  int mtot = 0, jmax = 6, lmaxr = 8, jtot = 3, points = 100, ncurves = 20;
  double field_kvcm = 0, rmin = 30, rmax = 2000;
  bool even_sector = false;
  pec->add_option("--species", rotor_path, "rotor file")->required();
  pec->add_option("--species-b", rotor_b_path, "rotor file of B (default: A)");
  pec->add_option("--frame", frame, "bf | sf")
      ->check(CLI::IsMember({"bf", "sf"}))
      ->capture_default_str();
  pec->add_option("-M,--mtot", mtot, "total projection")->capture_default_str();
  pec->add_option("--jmax", jmax, "rotational truncation")
      ->capture_default_str();
  pec->add_option("--lmax", lmaxr, "partial-wave truncation (sf)")
      ->capture_default_str();
  pec->add_option("--jtot", jtot, "total-J truncation (sf)")
      ->capture_default_str();
  pec->add_option("--field-kvcm", field_kvcm, "field amplitude (kV/cm, sf)")
      ->capture_default_str();
  pec->add_option("--rmin", rmin, "grid start (bohr)")->capture_default_str();
  pec->add_option("--rmax", rmax, "grid end (bohr)")->capture_default_str();
  pec->add_option("--points", points, "grid size")->capture_default_str();
  pec->add_option("--curves", ncurves, "curves kept (0 = all)")
      ->capture_default_str();
  pec->add_flag("--even", even_sector,
                "restrict an identical pair to the exchange-even sector");
  pec->add_option("--out", outfile, "write to file instead of stdout");
  pec->callback([&] {
    if (points < 2) throw CLI::ValidationError("--points must be >= 2");
    if (rmin <= 0 || rmax <= rmin)
      throw CLI::ValidationError("need 0 < rmin < rmax");
    auto rf = io::load_rotor(rotor_path);
    auto rfb = rotor_b_path.empty() ? rf : io::load_rotor(rotor_b_path);
    std::vector<double> grid(points);
    double f = std::pow(rmax / rmin, 1.0 / (points - 1));
    for (int i = 0; i < points; ++i) grid[i] = rmin * std::pow(f, i);

    detail::Meta meta;
    meta.command = "rotor pec";
    meta.add("species_a", rf.mol.name);
    meta.add("species_b", rfb.mol.name);
    meta.add("frame", frame);
    meta.add("M", mtot);
    meta.add("jmax", jmax);
    meta.add("field_kvcm", field_kvcm);
    meta.add("rmin", rmin);
    meta.add("rmax", rmax);
    meta.add("points", points);

    std::ostringstream body;
    if (frame == "bf") {
      auto basis = bf_basis(jmax, mtot);
      std::size_t nc =
          ncurves == 0 ? basis.size()
                       : std::min<std::size_t>(ncurves, basis.size());
      std::vector<std::vector<double>> curves(grid.size());
      for (std::size_t ir = 0; ir < grid.size(); ++ir) {
        auto eig = eig_sym(bf_hamiltonian(rf.mol, rfb.mol, basis, grid[ir]));
        curves[ir].assign(eig.values.begin(), eig.values.begin() + nc);
      }
      if (json_mode()) {
        nlohmann::json j;
        j["meta"] = meta.as_json();
        j["R_au"] = grid;
        j["energies_au"] = curves;
        body << j.dump(2) << "\n";
      } else {
        meta.print_header(body);
        body << "R_au";
        for (std::size_t k = 0; k < nc; ++k) body << ",E" << k << "_au";
        body << "\n";
        for (std::size_t ir = 0; ir < grid.size(); ++ir) {
          body << detail::fmt(grid[ir]);
          for (double e : curves[ir]) body << "," << detail::fmt(e);
          body << "\n";
        }
      }
    } else {
      meta.add("lmax", lmaxr);
      meta.add("jtot", jtot);
      meta.add("even", even_sector ? 1 : 0);
      PairSetup setup{rf.mol, rfb.mol, {jmax, lmaxr, jtot}, mtot,
                      constants::kV_per_cm_to_au(field_kvcm)};
      setup.exchange_even = even_sector;
      auto res = pec_scan(setup, grid, ncurves, field_kvcm != 0);
      for (auto& w : res.warnings) meta.add("warning", w);
      if (json_mode()) {
        nlohmann::json j;
        j["meta"] = meta.as_json();
        j["R_au"] = grid;
        j["energies_au"] = res.energies;
        j["labels"] = res.labels;
        j["dominant_weight"] = res.weight;
        if (!res.dipole.empty()) j["induced_dipole_au"] = res.dipole;
        body << j.dump(2) << "\n";
      } else {
        meta.print_header(body);
        body << "R_au";
        for (std::size_t k = 0; k < res.curves(); ++k) body << ",E" << k
                                                            << "_au";
        body << "\n";
        for (std::size_t ir = 0; ir < grid.size(); ++ir) {
          body << detail::fmt(grid[ir]);
          for (double e : res.energies[ir]) body << "," << detail::fmt(e);
          body << "\n";
        }
      }
    }
    if (outfile.empty()) {
      out << body.str();
    } else {
      std::ofstream f2(outfile);
      if (!f2) throw DataError("cannot write " + outfile);
      f2 << body.str();
      out << "# wrote " << outfile << "\n";
    }
  });

  auto* dip = rotor->add_subcommand(
      "dipole", "induced dipole of the lowest curve vs R and field");
  std::string fields_csv = "0.5,1,2,4";
  dip->add_option("--species", rotor_path, "rotor file")->required();
  dip->add_option("--fields-kvcm", fields_csv, "comma-separated amplitudes")
      ->capture_default_str();
  dip->add_option("--jmax", jmax, "rotational truncation")
      ->capture_default_str();
  dip->add_option("--lmax", lmaxr, "partial-wave truncation")
      ->capture_default_str();
  dip->add_option("--jtot", jtot, "total-J truncation")->capture_default_str();
  dip->add_option("--rmin", rmin, "grid start (bohr)")->capture_default_str();
  dip->add_option("--rmax", rmax, "grid end (bohr)")->capture_default_str();
  dip->add_option("--points", points, "grid size")->capture_default_str();
  dip->add_flag("--even", even_sector, "exchange-even sector");
  dip->add_option("--out", outfile, "write to file instead of stdout");
  dip->callback([&] {
    if (points < 2) throw CLI::ValidationError("--points must be >= 2");
    auto rf = io::load_rotor(rotor_path);
    std::vector<double> fields;
    std::stringstream fs(fields_csv);
    std::string tok;
    while (std::getline(fs, tok, ','))
      fields.push_back(constants::kV_per_cm_to_au(std::stod(tok)));
    std::vector<double> grid(points);
    double f = std::pow(rmax / rmin, 1.0 / (points - 1));
    for (int i = 0; i < points; ++i) grid[i] = rmin * std::pow(f, i);
    PairSetup setup{rf.mol, rf.mol, {jmax, lmaxr, jtot}, 0, 0.0};
    setup.exchange_even = even_sector;
    auto curves = induced_dipole_curve(setup, grid, fields);

    detail::Meta meta;
    meta.command = "rotor dipole";
    meta.add("species", rf.mol.name);
    meta.add("fields_kvcm", fields_csv);
    meta.add("jmax", jmax);
    meta.add("lmax", lmaxr);
    meta.add("jtot", jtot);
    meta.add("even", even_sector ? 1 : 0);
    std::ostringstream body;
    if (json_mode()) {
      nlohmann::json j;
      j["meta"] = meta.as_json();
      j["R_au"] = grid;
      j["induced_dipole_au"] = curves;
      body << j.dump(2) << "\n";
    } else {
      meta.print_header(body);
      body << "R_au";
      for (std::size_t k = 0; k < curves.size(); ++k) body << ",d" << k
                                                           << "_au";
      body << "\n";
      for (std::size_t ir = 0; ir < grid.size(); ++ir) {
        body << detail::fmt(grid[ir]);
        for (auto& c : curves) body << "," << detail::fmt(c[ir]);
        body << "\n";
      }
    }
    if (outfile.empty()) {
      out << body.str();
    } else {
      std::ofstream f2(outfile);
      if (!f2) throw DataError("cannot write " + outfile);
      f2 << body.str();
      out << "# wrote " << outfile << "\n";
    }
  });

  // ---- dispatch ------------------------------------------------------------
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return 2;
  } catch (const LookupError& e) {
    err << "data error: " << e.what() << "\n";
    return 2;
  } catch (const ResonanceError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const DegeneracyError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}

} // namespace lri::cli
