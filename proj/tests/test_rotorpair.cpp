#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <lri/constants.hpp>
#include <lri/rotorpair.hpp>

#include "test_util.hpp"

using namespace lri;

namespace {

// NaRb-like rigid rotor: d0 = 3.2 D, B0 anchored so that
// (4/25) d0^4/B0 = 1.25e6 a.u.
RotorSpecies narb() {
  double d0 = constants::debye_to_au(3.2);
  double b0 = std::pow(d0, 4) / 7.8125e6;
  return {"NaRb", b0, d0, constants::amu_to_me(109.899)};
}

SurdSum surd_frac(long num, long den) { return SurdSum(BigRat(num, den)); }
SurdSum surd_root_frac(long k, long r, long den) {
  // (k sqrt(r) + 0)/den
  return SurdSum(Surd(BigRat(k, den)) * Surd::sqrt_of(BigRat(r)));
}

} // namespace

TEST_CASE("characteristic distance R*") {
  auto mol = narb();
  double rs = rstar(mol);
  CHECK(std::abs(rs - 175.0) <= 0.05 * 175.0);
  CHECK(rstar({"x", 1e-6, 0.0, 1.0}) == 0.0);
  // LiNa- and NaCs-like parameter sets land near 31 and 234 a0
  RotorSpecies lina{"LiNa", 0.0, constants::debye_to_au(0.566), 0};
  lina.B0 = lina.d0 * lina.d0 / std::pow(31.0, 3);
  CHECK(rstar(lina) == Catch::Approx(31.0).epsilon(1e-12));
  RotorSpecies nacs{"NaCs", 0.0, constants::debye_to_au(4.6), 0};
  nacs.B0 = nacs.d0 * nacs.d0 / std::pow(234.0, 3);
  CHECK(rstar(nacs) == Catch::Approx(234.0).epsilon(1e-12));
}

TEST_CASE("rotational C6 of the ground pair") {
  auto mol = narb();
  auto c6 = vdw00(mol, mol);
  CHECK(c6.value ==
        Catch::Approx(-std::pow(mol.d0, 4) / (6.0 * mol.B0)).epsilon(1e-14));
  // anchored data: -d0^4/(6 B0) = -(25/24) 1.25e6
  CHECK(c6.value == Catch::Approx(-7.8125e6 / 6.0).epsilon(1e-12));
  // generic engine agreement
  auto t = rotor_table(mol, 3);
  auto blk = block_from_levels(t, t, {"", 0}, {"", 0});
  auto w = second_order_block(blk, RankSet{1, 1, 1, 1});
  CHECK(w.coeff.at(6)(0, 0) == Catch::Approx(c6.value).epsilon(1e-12));
  // zero dipole
  CHECK(vdw00({"x", 1e-6, 0.0, 1.0}, mol).value == 0.0);
  // unlike pair formula
  RotorSpecies other{"y", 2.5e-7, 0.9, 1e5};
  CHECK(vdw00(mol, other).value ==
        Catch::Approx(-mol.d0 * mol.d0 * other.d0 * other.d0 /
                      (3.0 * (mol.B0 + other.B0))));
}

TEST_CASE("exact (1,1) van der Waals block reproduces the rescaled table") {
  auto res = vdw11_block_exact();
  REQUIRE(res.states.size() == 9);
  REQUIRE(res.eigen.size() == 9);

  // every matrix entry is exactly rational
  for (auto& row : res.matrix)
    for (auto& e : row) CHECK(e.is_rational());

  // expected eigenvalues in units d0^4/(16 pi^2 eps0^2 B0), ascending:
  // -(13 sqrt3 + 16)/100, -13/40 (x2), -4/25 (x2), -17/200 (x2), -1/25,
  // (13 sqrt3 - 16)/100
  std::vector<SurdSum> expect;
  expect.push_back(surd_root_frac(-13, 3, 100) + surd_frac(-16, 100));
  expect.push_back(surd_frac(-13, 40));
  expect.push_back(surd_frac(-13, 40));
  expect.push_back(surd_frac(-4, 25));
  expect.push_back(surd_frac(-4, 25));
  expect.push_back(surd_frac(-17, 200));
  expect.push_back(surd_frac(-17, 200));
  expect.push_back(surd_frac(-1, 25));
  expect.push_back(surd_root_frac(13, 3, 100) + surd_frac(-16, 100));
  for (int k = 0; k < 9; ++k) CHECK(res.eigen[k].value == expect[k]);

  // exactly one repulsive coefficient
  int positive = 0;
  for (auto& e : res.eigen)
    if (e.value.to_double() > 0) ++positive;
  CHECK(positive == 1);

  // exact eigen equation H v = lambda v for every returned vector
  for (auto& e : res.eigen) {
    for (int i = 0; i < 9; ++i) {
      SurdSum hv;
      for (int j = 0; j < 9; ++j) hv = hv + res.matrix[i][j] * e.vector[j];
      CHECK(hv == e.value * e.vector[i]);
    }
  }

  // the quoted eigenvectors of the M = 0 even block:
  //   |1010> + (1 -+ sqrt3)/2 (|11,1-1> + |1-1,11>)
  auto idx = [&](int MA, int MB) { return (MA + 1) * 3 + (MB + 1); };
  for (int sign : {-1, 1}) {
    SurdSum lam = sign < 0
                      ? surd_root_frac(-13, 3, 100) + surd_frac(-16, 100)
                      : surd_root_frac(13, 3, 100) + surd_frac(-16, 100);
    SurdSum coef = (SurdSum(1) + surd_root_frac(sign, 3, 1)) * surd_frac(1, 2);
    std::vector<SurdSum> v(9);
    v[idx(0, 0)] = SurdSum(1);
    v[idx(1, -1)] = coef;
    v[idx(-1, 1)] = coef;
    for (int i = 0; i < 9; ++i) {
      SurdSum hv;
      for (int j = 0; j < 9; ++j) hv = hv + res.matrix[i][j] * v[j];
      CHECK(hv == lam * v[i]);
    }
  }

  // numeric cross-check through the generic perturbation engine
  auto mol = narb();
  auto t = rotor_table(mol, 3);
  auto blk = block_from_levels(t, t, {"", 1}, {"", 1});
  auto w = second_order_block(blk, RankSet{1, 1, 1, 1});
  auto cns = extract_cn(w, 6);
  double unit = std::pow(mol.d0, 4) / mol.B0;
  for (int k = 0; k < 9; ++k)
    CHECK(cns[k].value / unit ==
          Catch::Approx(res.eigen[k].value.to_double()).epsilon(1e-12));
  // NaRb anchoring: the |M|=2 coefficient is -1.25e6 a.u. by construction
  CHECK(cns[3].value == Catch::Approx(-1.25e6).epsilon(1e-10));

  // the isotropic tensor part equals the (0,0)-pair interaction
  auto tensor = tensor_decomposed_block(blk, RankSet{1, 1, 1, 1});
  const Matrix& iso = tensor.parts.at({0, 0, 0});
  double c6g = vdw00(mol, mol).value;
  for (int i = 0; i < 9; ++i)
    CHECK(iso(i, i) == Catch::Approx(c6g).epsilon(1e-12));
}

TEST_CASE("exact (1,1) block agrees with the explicit CG/6j/9j route") {
  // independent evaluation: W = (1/6) dMM' (-1 + sqrt(2/5)(C^{1MA}_{1MA20}
  //   + C^{1MB}_{1MB20})) + (45/4) sum_q A1(q) C^{1M'A}_{1MA1q}
  //   C^{1M'B}_{1MB1-q} + (5/4) sum_q A2(q) C^{1M'A}_{1MA2q} C^{1M'B}_{1MB2-q}
  // with A_n(q) = sum_p C^{2p0}_{2020} C^{2p0}_{nqn-q} {1 1 2;1 1 2;n n 2p}
  auto an = [&](int nn, int q) {
    double acc = 0;
    for (int p = 0; p <= nn; ++p)
      acc += cg(2, 0, 2, 0, 2 * p, 0) * cg(nn, q, nn, -q, 2 * p, 0) *
             ninej(1, 1, 2, 1, 1, 2, nn, nn, 2 * p);
    return acc;
  };
  auto res = vdw11_block_exact();
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      const auto& sp = res.states[i];
      const auto& s = res.states[j];
      double w66 = 0;
      if (sp.MA == s.MA && sp.MB == s.MB)
        w66 += (1.0 / 6.0) *
               (-1.0 + std::sqrt(0.4) * (cg(1, s.MA, 2, 0, 1, s.MA) +
                                         cg(1, s.MB, 2, 0, 1, s.MB)));
      for (int q = -1; q <= 1; ++q)
        w66 += 45.0 / 4.0 * an(1, q) * cg(1, s.MA, 1, q, 1, sp.MA) *
               cg(1, s.MB, 1, -q, 1, sp.MB);
      for (int q = -2; q <= 2; ++q)
        w66 += 5.0 / 4.0 * an(2, q) * cg(1, s.MA, 2, q, 1, sp.MA) *
               cg(1, s.MB, 2, -q, 1, sp.MB);
      CHECK(res.matrix[i][j].to_double() ==
            Catch::Approx(w66).margin(1e-14));
    }
}

TEST_CASE("resonant (1,0)+(0,1) block") {
  auto mol = narb();
  auto res = c3_block(mol, mol);
  double d2 = mol.d0 * mol.d0;
  // ascending: -2/3, -1/3, -1/3, 1/3, 1/3, 2/3 in units d0^2
  std::vector<double> expect{-2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0,
                             1.0 / 3.0,  1.0 / 3.0,  2.0 / 3.0};
  REQUIRE(res.eigen.size() == 6);
  for (int k = 0; k < 6; ++k)
    CHECK(res.eigen[k].value.to_double() == Catch::Approx(expect[k]));
  // the lowest (Sigma) eigenvector is the symmetric M = 0 combination
  CHECK(res.eigen[0].mtot == 0);
  CHECK(res.eigen[0].exchange_even);
  CHECK(res.eigen[0].vector[1] == res.eigen[0].vector[4]);

  // cross-check against the perturbation engine with physical units
  auto t = rotor_table(mol, 2);
  auto blk = make_block(t, t, {{{"", 1}, {"", 0}}, {{"", 0}, {"", 1}}});
  auto v1 = first_order_block(blk, 2);
  auto cns = extract_cn(v1, 3);
  for (int k = 0; k < 6; ++k)
    CHECK(cns[k].value == Catch::Approx(expect[k] * d2).epsilon(1e-12));

  // different species: no degeneracy
  RotorSpecies other{"other", mol.B0 * 1.7, mol.d0, mol.mass};
  CHECK_THROWS_AS(c3_block(mol, other), DegeneracyError);
}

TEST_CASE("BF hamiltonian: restricted two-channel model vs analytic curves") {
  auto mol = narb();
  std::vector<BFPairState> basis{
      {0, 0, 0, 0}, {1, 0, 1, 0}, {1, 1, 1, -1}, {1, -1, 1, 1}};
  for (double R : {20.0, 50.0, 170.0, 500.0, 3000.0, 10000.0}) {
    auto h = bf_hamiltonian(mol, mol, basis, R);
    auto eig = eig_sym(h);
    auto ana = two_channel_analytic(mol, R, Frame::bf);
    CHECK(eig.values[0] ==
          Catch::Approx(ana.lowest).epsilon(1e-12).margin(1e-18));
    CHECK(eig.values[3] == Catch::Approx(ana.highest).epsilon(1e-12));
    // middle eigenvalues: zero interaction on the 4 B0 asymptote
    CHECK(eig.values[1] == Catch::Approx(4.0 * mol.B0).epsilon(1e-12));
    CHECK(eig.values[2] == Catch::Approx(4.0 * mol.B0).epsilon(1e-12));
  }
  // R -> infinity: diagonal rotational energies
  auto h = bf_hamiltonian(mol, mol, basis, 1e8);
  CHECK(h(0, 0) == 0.0);
  CHECK(h(1, 1) == Catch::Approx(4.0 * mol.B0));
  CHECK(std::abs(h(0, 1)) < 1e-20);
}

TEST_CASE("analytic two-channel limits") {
  auto mol = narb();
  double rs = rstar(mol);
  // large R: V0 -> -d0^4/(6 B0 R^6)
  double Rbig = 12.0 * rs;
  auto big = two_channel_analytic(mol, Rbig, Frame::bf);
  double vdw = -std::pow(mol.d0, 4) / (6.0 * mol.B0 * std::pow(Rbig, 6));
  CHECK(big.lowest == Catch::Approx(vdw).epsilon(2e-3));
  // small R: V0 -> -sqrt(2/3) d0^2/R^3
  double Rsmall = rs / 25.0;
  auto small = two_channel_analytic(mol, Rsmall, Frame::bf);
  double res = -std::sqrt(2.0 / 3.0) * mol.d0 * mol.d0 / std::pow(Rsmall, 3);
  CHECK(small.lowest == Catch::Approx(res).epsilon(2e-4));
  // infinite reduced mass: SF equals BF
  auto sf = two_channel_analytic(mol, 100.0, Frame::sf, 1e30);
  auto bf = two_channel_analytic(mol, 100.0, Frame::bf);
  CHECK(sf.lowest == Catch::Approx(bf.lowest).epsilon(1e-12));
}

TEST_CASE("coupled-basis transformation is orthonormal") {
  Truncation tr;
  tr.jrot_max = 2;
  tr.lmax = 2;
  tr.jtot_max = 99; // complete J range for unitarity
  for (int M : {0, 1}) {
    auto unc = uncoupled_sf_basis(tr.jrot_max, tr.lmax, M);
    auto cpl = coupled_sf_basis(tr, M);
    REQUIRE(unc.size() == cpl.size());
    Matrix t = couple_basis(unc, cpl);
    Matrix id1 = t.transposed() * t;
    Matrix id2 = t * t.transposed();
    for (std::size_t i = 0; i < unc.size(); ++i)
      for (std::size_t j = 0; j < unc.size(); ++j) {
        CHECK(std::abs(id1(i, j) - (i == j ? 1 : 0)) < 1e-13);
        CHECK(std::abs(id2(i, j) - (i == j ? 1 : 0)) < 1e-13);
      }
  }
  // (JA,JB,L) = (0,0,0) carries a single coupled state J = M = 0
  Truncation tiny{0, 0, 99};
  auto cpl = coupled_sf_basis(tiny, 0);
  REQUIRE(cpl.size() == 1);
  CHECK(cpl[0].J == 0);
}

TEST_CASE("coupled dipole-dipole elements against the uncoupled oracle") {
  auto mol = narb();
  double R = 150.0;
  Truncation tr;
  tr.jrot_max = 2;
  tr.lmax = 3;
  tr.jtot_max = 99;
  for (int M : {0, 1}) {
    auto unc = uncoupled_sf_basis(tr.jrot_max, tr.lmax, M);
    auto cpl = coupled_sf_basis(tr, M);
    Matrix t = couple_basis(unc, cpl);
    // uncoupled dd matrix
    Matrix hu(unc.size(), unc.size());
    for (std::size_t i = 0; i < unc.size(); ++i)
      for (std::size_t j = 0; j < unc.size(); ++j) {
        double redA = rotor_reduced_dipole(unc[j].JA, unc[i].JA, mol.d0);
        double redB = rotor_reduced_dipole(unc[j].JB, unc[i].JB, mol.d0);
        hu(i, j) = sf_uncoupled_element(unc[i], unc[j], 1, 1, redA, redB, R);
      }
    Matrix hc = t.transposed() * hu * t;
    double scale = std::max(1e-300, hc.max_abs());
    for (std::size_t i = 0; i < cpl.size(); ++i)
      for (std::size_t j = 0; j < cpl.size(); ++j) {
        double redA = rotor_reduced_dipole(cpl[j].JA, cpl[i].JA, mol.d0);
        double redB = rotor_reduced_dipole(cpl[j].JB, cpl[i].JB, mol.d0);
        double direct = sf_dd_element(cpl[i], cpl[j], redA, redB, R);
        CHECK(std::abs(direct - hc(i, j)) <= 1e-12 * scale);
      }
  }
}

TEST_CASE("coupled dd selection rules") {
  auto mol = narb();
  Truncation tr;
  tr.jrot_max = 2;
  tr.lmax = 4;
  tr.jtot_max = 4;
  auto cpl = coupled_sf_basis(tr, 0);
  for (std::size_t i = 0; i < cpl.size(); ++i)
    for (std::size_t j = 0; j < cpl.size(); ++j) {
      double redA = rotor_reduced_dipole(cpl[j].JA, cpl[i].JA, mol.d0);
      double redB = rotor_reduced_dipole(cpl[j].JB, cpl[i].JB, mol.d0);
      double v = sf_dd_element(cpl[i], cpl[j], redA, redB, 100.0);
      if (cpl[i].J != cpl[j].J) CHECK(v == 0.0);
      int L = cpl[j].L, Lp = cpl[i].L;
      if ((L + Lp) % 2 != 0 || std::abs(L - Lp) > 2 || (L == 0 && Lp == 0))
        CHECK(v == 0.0);
    }
  // the pinned coupling <((11)22)00|Vdd|((00)00)00> = -sqrt(2/3) d0^2/R^3
  CoupledSFState ground{0, 0, 0, 0, 0, 0};
  CoupledSFState excited{1, 1, 2, 2, 0, 0};
  double R = 211.0;
  double v = sf_dd_element(excited, ground, rotor_reduced_dipole(0, 1, mol.d0),
                           rotor_reduced_dipole(0, 1, mol.d0), R);
  CHECK(v == Catch::Approx(-std::sqrt(2.0 / 3.0) * mol.d0 * mol.d0 /
                           std::pow(R, 3)));
}

TEST_CASE("coupled Stark elements against the uncoupled oracle") {
  auto mol = narb();
  Truncation tr;
  tr.jrot_max = 2;
  tr.lmax = 2;
  tr.jtot_max = 99;
  for (int M : {0, 1}) {
    auto unc = uncoupled_sf_basis(tr.jrot_max, tr.lmax, M);
    auto cpl = coupled_sf_basis(tr, M);
    Matrix t = couple_basis(unc, cpl);
    for (Molecule which : {Molecule::A, Molecule::B}) {
      Matrix du(unc.size(), unc.size());
      for (std::size_t i = 0; i < unc.size(); ++i)
        for (std::size_t j = 0; j < unc.size(); ++j) {
          const auto& b = unc[i];
          const auto& k = unc[j];
          if (b.L != k.L || b.ML != k.ML) continue;
          if (which == Molecule::A) {
            if (b.JB != k.JB || b.MB != k.MB) continue;
            du(i, j) = cg(k.JA, k.MA, 1, 0, b.JA, b.MA) /
                       std::sqrt(2.0 * b.JA + 1.0) *
                       rotor_reduced_dipole(k.JA, b.JA, mol.d0);
          } else {
            if (b.JA != k.JA || b.MA != k.MA) continue;
            du(i, j) = cg(k.JB, k.MB, 1, 0, b.JB, b.MB) /
                       std::sqrt(2.0 * b.JB + 1.0) *
                       rotor_reduced_dipole(k.JB, b.JB, mol.d0);
          }
        }
      Matrix dc = t.transposed() * du * t;
      double scale = std::max(1e-300, dc.max_abs());
      for (std::size_t i = 0; i < cpl.size(); ++i)
        for (std::size_t j = 0; j < cpl.size(); ++j) {
          int JAi = which == Molecule::A ? cpl[i].JA : cpl[i].JB;
          int JAj = which == Molecule::A ? cpl[j].JA : cpl[j].JB;
          double red = rotor_reduced_dipole(JAj, JAi, mol.d0);
          double direct = sf_dipole_element(cpl[i], cpl[j], which, red);
          CHECK(std::abs(direct - dc(i, j)) <= 1e-12 * scale);
        }
    }
  }
  // pinned value: |((10)10)10> and |((00)00)00> are bare product states, so
  // <((10)10)10|Q10(A)|((00)00)00> = <1 0|Q10|0 0> = +d0/sqrt3; the Stark
  // Hamiltonian -E Q10 then couples them with -E d0/sqrt3
  CoupledSFState ground{0, 0, 0, 0, 0, 0};
  CoupledSFState up{1, 0, 1, 0, 1, 0};
  CHECK(sf_dipole_element(up, ground, Molecule::A,
                          rotor_reduced_dipole(0, 1, mol.d0)) ==
        Catch::Approx(mol.d0 / std::sqrt(3.0)));
  // molecule-B operator leaves A quantum numbers unchanged
  CoupledSFState upB{0, 1, 1, 0, 1, 0};
  CHECK(sf_dipole_element(upB, ground, Molecule::B,
                          rotor_reduced_dipole(0, 1, mol.d0)) != 0.0);
  CoupledSFState changedA{1, 1, 2, 1, 1, 0};
  CHECK(sf_dipole_element(changedA, ground, Molecule::B,
                          rotor_reduced_dipole(0, 1, mol.d0)) == 0.0);
}

TEST_CASE("restricted SF models: the (71) and (72) spectra") {
  auto mol = narb();
  PairSetup setup{mol, mol, {1, 2, 2}, 0, 0.0};
  double mu = setup.reduced_mass();

  // {((00)00)00, ((11)22)00}: lowest eigenvalue equals the closed form
  std::vector<CoupledSFState> two{{0, 0, 0, 0, 0, 0}, {1, 1, 2, 2, 0, 0}};
  for (double R : {20.0, 60.0, 170.0, 800.0, 10000.0}) {
    auto h = sf_hamiltonian(setup, two, R);
    auto eig = eig_sym(h);
    auto ana = two_channel_analytic(mol, R, Frame::sf, mu);
    CHECK(eig.values[0] ==
          Catch::Approx(ana.lowest).epsilon(1e-12).margin(1e-18));
  }

  // the (10)+(01) J=1 model without centrifugal: eigenvalues
  // 2B0 +- 2d0^2/3R^3 and 2B0 +- d0^2/3R^3
  PairSetup heavy = setup;
  heavy.A.mass = heavy.B.mass = 1e30; // switch the centrifugal term off
  std::vector<CoupledSFState> four{
      {1, 0, 1, 0, 1, 0}, {0, 1, 1, 0, 1, 0}, {1, 0, 1, 2, 1, 0},
      {0, 1, 1, 2, 1, 0}};
  double R = 133.0;
  auto h4 = sf_hamiltonian(heavy, four, R);
  auto eig4 = eig_sym(h4);
  double c = mol.d0 * mol.d0 / (3.0 * R * R * R);
  std::vector<double> expect{2 * mol.B0 - 2 * c, 2 * mol.B0 - c,
                             2 * mol.B0 + c, 2 * mol.B0 + 2 * c};
  for (int k = 0; k < 4; ++k)
    CHECK(eig4.values[k] == Catch::Approx(expect[k]).epsilon(1e-12));
}

TEST_CASE("centrifugal-to-rotational ratio stays small") {
  auto mol = narb();
  PairSetup setup{mol, mol, {1, 2, 2}, 0, 0.0};
  double mu = setup.reduced_mass();
  // hbar^2/(B0 mu R^2) << 1 across the long-range window
  for (double R : {50.0, 170.0, 1000.0})
    CHECK(1.0 / (mol.B0 * mu * R * R) < 1.0);
}

TEST_CASE("SF spectrum contains the BF one when the centrifugal term is off") {
  auto mol = narb();
  double R = 150.0;
  // BF reference: Jrot <= 2, M_tot = 0
  auto bfb = bf_basis(2, 0);
  auto hbf = bf_hamiltonian(mol, mol, bfb, R);
  auto ebf = eig_sym(hbf);

  PairSetup heavy{mol, mol, {2, 0, 99}, 0, 0.0};
  heavy.A.mass = heavy.B.mass = 1e30;
  double prev_worst = 1e300;
  for (int lmax : {2, 4, 8}) {
    heavy.trunc.lmax = lmax;
    auto cpl = coupled_sf_basis(heavy.trunc, 0);
    auto h = sf_hamiltonian(heavy, cpl, R);
    auto esf = eig_sym(h);
    double worst = 0;
    for (double vb : ebf.values) {
      double best = 1e300;
      for (double vs : esf.values) best = std::min(best, std::abs(vs - vb));
      worst = std::max(worst, best);
    }
    CHECK(worst < prev_worst * 1.0000001); // monotone approach in lmax
    prev_worst = worst;
    if (lmax == 8) CHECK(worst < 1e-10);
  }
}

TEST_CASE("pec scan basics") {
  auto mol = narb();
  // single-state basis: flat curve at its rotational energy
  PairSetup tiny{mol, mol, {0, 0, 0}, 0, 0.0};
  std::vector<double> grid{100, 200, 400};
  auto pec = pec_scan(tiny, grid);
  REQUIRE(pec.curves() == 1);
  for (std::size_t ir = 0; ir < grid.size(); ++ir)
    CHECK(pec.energies[ir][0] == Catch::Approx(0.0).margin(1e-16));
  CHECK_FALSE(pec.warnings.empty()); // below the first coupled channel

  std::vector<double> bad{100, 100};
  CHECK_THROWS_AS(pec_scan(tiny, bad), std::invalid_argument);

  // small converged-enough scan: lowest curve tail gives C6 near C6g
  PairSetup setup{mol, mol, {4, 6, 0}, 0, 0.0};
  double rs = rstar(mol);
  std::vector<double> tail;
  for (int i = 0; i < 12; ++i) tail.push_back(rs * (5.0 + 0.8 * i));
  auto scan = pec_scan(setup, tail, 1);
  std::vector<double> e0(tail.size());
  for (std::size_t i = 0; i < tail.size(); ++i) e0[i] = scan.energies[i][0];
  auto fit = fit_power_law(tail, e0, 6);
  CHECK(std::abs(fit.coeff - vdw00(mol, mol).value) <=
        0.02 * std::abs(vdw00(mol, mol).value));
}

TEST_CASE("exchange-even sector holds the lowest state") {
  auto mol = narb();
  double rs = rstar(mol);
  PairSetup setup{mol, mol, {3, 4, 1}, 0,
                  constants::kV_per_cm_to_au(1.0)};
  auto basis = coupled_sf_basis(setup.trunc, 0);
  auto eb = build_even_basis(basis);
  CHECK(2 * eb.combos.size() >= basis.size()); // roughly half plus diagonals
  for (double R : {0.4 * rs, 2.0 * rs}) {
    Matrix h = sf_hamiltonian(setup, basis, R);
    auto full = eig_sym(h);
    auto even = eig_sym(project_even(eb, h));
    CHECK(even.values[0] ==
          Catch::Approx(full.values[0]).epsilon(1e-12));
    // the even spectrum is a subset of the full one
    for (double ve : {even.values[0], even.values[1], even.values[2]}) {
      double best = 1e300;
      for (double vf : full.values) best = std::min(best, std::abs(vf - ve));
      CHECK(best < 1e-10);
    }
  }
}

TEST_CASE("induced dipole: zero field and the isolated-molecule limit") {
  auto mol = narb();
  double rs = rstar(mol);
  // representing two independently polarized molecules at large R needs
  // total J up to 2 jrot_max (the product state spreads over J_AB)
  PairSetup setup{mol, mol, {2, 2, 4}, 0, 0.0};
  setup.exchange_even = true;
  std::vector<double> grid{0.3 * rs, 5.0 * rs};
  auto zero = induced_dipole_curve(setup, grid, {0.0});
  for (double v : zero[0]) CHECK(std::abs(v) < 1e-12);

  double field = constants::kV_per_cm_to_au(2.0);
  auto curves = induced_dipole_curve(setup, grid, {field});
  double isolated = single_molecule_induced_dipole(mol, field, 2);
  CHECK(curves[0][1] ==
        Catch::Approx(2.0 * isolated).epsilon(0.02)); // R >> R*

  // locked region: the value barely moves across field amplitudes once the
  // orientation basis (L with matching J_AB) is wide enough
  PairSetup locked{mol, mol, {5, 6, 1}, 0, 0.0};
  locked.exchange_even = true;
  auto multi = induced_dipole_curve(
      locked, {0.3 * rs},
      {constants::kV_per_cm_to_au(0.5), constants::kV_per_cm_to_au(1.0),
       constants::kV_per_cm_to_au(2.0), constants::kV_per_cm_to_au(4.0)});
  double lo = 1e300, hi = -1e300;
  for (auto& c : multi) {
    lo = std::min(lo, c[0]);
    hi = std::max(hi, c[0]);
  }
  CHECK((hi - lo) / std::abs(hi) < 0.10);
}
