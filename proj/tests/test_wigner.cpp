#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <lri/wigner.hpp>

#include "test_util.hpp"

using namespace lri;
using testutil::random_j;
using testutil::random_m;

namespace {

// 6j from the three-CG contraction
//   sum_{ML} C^{cM}_{a ML b MS} C^{dM'}_{f M'L b MS} C^{f M'L}_{a ML e m}
//     = (-1)^{e+c+b+f} sqrt((2c+1)(2f+1)) {a b c; d e f} C^{dM'}_{cM em}
// with MS = M-ML, M'L = ML+m, M' = M+m; solved for {a b c; d e f} exactly.
Surd sixj_from_cg(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e,
                  HalfInt f) {
  if (!triangle_ok(a, b, c) || !triangle_ok(a, e, f) || !triangle_ok(d, b, f) ||
      !triangle_ok(d, e, c))
    return Surd();
  for (int tm = -e.twice(); tm <= e.twice(); tm += 2) {
    HalfInt m = half(tm);
    for (int tM = -c.twice(); tM <= c.twice(); tM += 2) {
      HalfInt M = half(tM), Mp = M + m;
      if (!d.valid_projection(Mp)) continue;
      Surd ref = clebsch_gordan(c, M, e, m, d, Mp);
      if (ref.is_zero()) continue;
      SurdSum lhs;
      for (int tML = -a.twice(); tML <= a.twice(); tML += 2) {
        HalfInt ML = half(tML), MS = M - ML, MLp = ML + m;
        if (!b.valid_projection(MS) || !f.valid_projection(MLp)) continue;
        lhs.add(clebsch_gordan(a, ML, b, MS, c, M) *
                clebsch_gordan(f, MLp, b, MS, d, Mp) *
                clebsch_gordan(a, ML, e, m, f, MLp));
      }
      Surd num = lhs.as_surd();
      Surd den = Surd(phase(e + c + b + f)) *
                 Surd::sqrt_of(BigRat((c.twice() + 1) * (f.twice() + 1))) * ref;
      return num / den;
    }
  }
  return Surd();
}

} // namespace

TEST_CASE("triangle rule") {
  CHECK(triangle_ok(1, 1, 2));
  CHECK_FALSE(triangle_ok(0, 0, 1));
  CHECK(triangle_ok(half(1), half(1), 1));
  CHECK_FALSE(triangle_ok(half(1), half(1), half(1))); // half-odd perimeter
  CHECK_FALSE(triangle_ok(3, 1, 1));
}

TEST_CASE("clebsch-gordan special values") {
  CHECK(clebsch_gordan(0, 0, 0, 0, 0, 0) == Surd(1));
  // C^{00}_{a alpha a -alpha} = (-1)^{a-alpha}/sqrt(2a+1)
  CHECK(clebsch_gordan(1, 0, 1, 0, 0, 0) ==
        Surd(-1) / Surd::sqrt_of(BigRat(3)));
  CHECK(clebsch_gordan(1, 1, 1, 1, 2, 2) == Surd(1));
  CHECK(clebsch_gordan(1, 0, 1, 0, 2, 0) == Surd::sqrt_of(BigRat(2, 3)));
  // projection rule and triangle zero
  CHECK(clebsch_gordan(1, 1, 1, -1, 2, 1).is_zero());
  CHECK(clebsch_gordan(1, 0, 1, 0, 3, 0).is_zero());
  // half-integer couplings
  CHECK(clebsch_gordan(half(1), half(1), half(1), half(-1), 1, 0) ==
        Surd(1) / Surd::sqrt_of(BigRat(2)));
  CHECK_THROWS_AS(clebsch_gordan(1, half(1), 1, half(1), 2, 1),
                  std::invalid_argument);
}

TEST_CASE("clebsch-gordan orthogonality, exact, j <= 3 incl. half-integers") {
  for (int tj1 = 0; tj1 <= 6; ++tj1)
    for (int tj2 = 0; tj2 <= 6; ++tj2) {
      HalfInt j1 = half(tj1), j2 = half(tj2);
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
        for (int tJp = std::abs(tj1 - tj2); tJp <= tj1 + tj2; tJp += 2) {
          HalfInt J = half(tJ), Jp = half(tJp);
          for (int tM = -std::min(tJ, tJp); tM <= std::min(tJ, tJp); tM += 2) {
            HalfInt M = half(tM);
            SurdSum acc;
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
              HalfInt m1 = half(tm1), m2 = M - m1;
              if (!j2.valid_projection(m2)) continue;
              acc.add(clebsch_gordan(j1, m1, j2, m2, J, M) *
                      clebsch_gordan(j1, m1, j2, m2, Jp, M));
            }
            if (tJ == tJp) {
              REQUIRE(acc.is_rational());
              CHECK(acc.as_rational() == 1);
            } else {
              CHECK(acc.is_zero());
            }
          }
        }
    }
}

TEST_CASE("stretched CG closed form equals the general sum, ranks <= 4") {
  CHECK(cg_stretched(1, 1, 1, -1) == Surd(1) / Surd::sqrt_of(BigRat(6)));
  CHECK(cg_stretched(1, 0, 0, 0) == Surd(1));
  CHECK(cg_stretched(1, 1, 1, 1) == Surd(1));
  CHECK(cg_stretched(2, 3, 1, 1).is_zero()); // out-of-range projection
  for (int la = 0; la <= 4; ++la)
    for (int lb = 0; lb <= 4; ++lb)
      for (int ma = -la; ma <= la; ++ma)
        for (int mb = -lb; mb <= lb; ++mb) {
          CHECK(cg_stretched(la, ma, lb, mb) ==
                clebsch_gordan(la, ma, lb, mb, la + lb, ma + mb));
        }
}

TEST_CASE("6j: violated triad and special column") {
  CHECK(wigner_6j(1, 1, 3, 1, 1, 1).is_zero());
  CHECK(wigner_6j(1, 1, 2, 1, 1, 2) == sixj_from_cg(1, 1, 2, 1, 1, 2));
  // {a b c; 0 c b} = (-1)^{a+b+c}/sqrt((2b+1)(2c+1)) for all a,b,c <= 2
  for (int ta = 0; ta <= 4; ++ta)
    for (int tb = 0; tb <= 4; ++tb)
      for (int tc = 0; tc <= 4; ++tc) {
        HalfInt a = half(ta), b = half(tb), c = half(tc);
        if (!triangle_ok(a, b, c)) continue;
        Surd expected = Surd(phase(a + b + c)) /
                        Surd::sqrt_of(BigRat((tb + 1) * (tc + 1)));
        CHECK(wigner_6j(a, b, c, 0, c, b) == expected);
      }
}

TEST_CASE("6j equals the CG-contraction oracle on random arguments") {
  auto& gen = testutil::rng();
  int tested = 0;
  while (tested < 60) {
    HalfInt a = random_j(4, gen), b = random_j(4, gen), e = random_j(4, gen);
    HalfInt d = random_j(4, gen);
    HalfInt c = half(std::abs(a.twice() - b.twice()) +
                     2 * testutil::irand(0, std::min(a.twice(), b.twice()), gen));
    HalfInt f = half(std::abs(a.twice() - e.twice()) +
                     2 * testutil::irand(0, std::min(a.twice(), e.twice()), gen));
    if (!triangle_ok(d, e, c) || !triangle_ok(d, b, f)) continue;
    ++tested;
    CHECK(wigner_6j(a, b, c, d, e, f) == sixj_from_cg(a, b, c, d, e, f));
  }
}

TEST_CASE("9j: violated triad, zero-argument collapse to 6j") {
  CHECK(wigner_9j(1, 1, 3, 1, 1, 2, 2, 2, 1).is_zero()); // row (1,1,3)
  // {a b c; d e f; g h 0}: nonzero needs c = f, g = h; collapses to
  //   (-1)^{b+c+d+g}/sqrt((2c+1)(2g+1)) {a b c; e d g}
  int checked = 0;
  for (int ta = 0; ta <= 4; ++ta)
    for (int tb = 0; tb <= 4; ++tb)
      for (int tc = 0; tc <= 4; ++tc)
        for (int td = 0; td <= 4; ++td)
          for (int te = 0; te <= 4; ++te)
            for (int tg = 0; tg <= 4; ++tg) {
              HalfInt a = half(ta), b = half(tb), c = half(tc), d = half(td),
                      e = half(te), g = half(tg);
              if (!triangle_ok(a, b, c) || !triangle_ok(d, e, c) ||
                  !triangle_ok(a, d, g) || !triangle_ok(b, e, g))
                continue;
              Surd expected = Surd(phase(b + c + d + g)) /
                              Surd::sqrt_of(BigRat((tc + 1) * (tg + 1))) *
                              wigner_6j(a, b, c, e, d, g);
              CHECK(wigner_9j(a, b, c, d, e, c, g, g, 0) == expected);
              ++checked;
            }
  CHECK(checked > 100);
  // a 9j with no zero argument against the same test through its symmetry
  CHECK(wigner_9j(1, 1, 2, 1, 1, 2, 2, 2, 0) ==
        Surd(phase(1 + 2 + 1 + 2)) / Surd::sqrt_of(BigRat(25)) *
            wigner_6j(1, 1, 2, 1, 1, 2));
}

TEST_CASE("recoupling identity: three-CG sum against 6j (200 random sets)") {
  auto& gen = testutil::rng();
  int done = 0;
  while (done < 200) {
    HalfInt L = random_j(6, gen), S = random_j(6, gen), l = random_j(6, gen);
    if (!l.is_integer()) continue; // tensor rank
    HalfInt J = random_j(6, gen), Jp = random_j(6, gen), Lp = random_j(6, gen);
    if (!triangle_ok(L, S, J) || !triangle_ok(Lp, S, Jp) ||
        !triangle_ok(L, l, Lp))
      continue;
    HalfInt M = random_m(J, gen), m = random_m(l, gen);
    HalfInt Mp = M + m;
    if (!Jp.valid_projection(Mp)) continue;
    ++done;
    double lhs = 0;
    for (int tML = -L.twice(); tML <= L.twice(); tML += 2) {
      HalfInt ML = half(tML);
      HalfInt MS = M - ML;
      HalfInt MLp = ML + m;
      if (!S.valid_projection(MS) || !Lp.valid_projection(MLp)) continue;
      lhs += cg(L, ML, S, MS, J, M) * cg(Lp, MLp, S, MS, Jp, Mp) *
             cg(L, ML, l, m, Lp, MLp);
    }
    double rhs = phase(l + J + S + Lp) *
                 std::sqrt(double((J.twice() + 1) * (Lp.twice() + 1))) *
                 sixj(L, S, J, Jp, l, Lp) * cg(J, M, l, m, Jp, Mp);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("product-of-two-CG expansion over 6j (200 random sets)") {
  // C^{d de}_{f ph a al} C^{e ep}_{d de b be} = sum_c (-1)^{c+e+f}
  //   sqrt((2c+1)(2d+1)) C^{c ga}_{b be a al} C^{e ep}_{f ph c ga} {a b c; e f d}
  auto& gen = testutil::rng();
  int done = 0;
  while (done < 200) {
    HalfInt a = random_j(6, gen), b = random_j(6, gen), f = random_j(6, gen);
    HalfInt d = random_j(6, gen), e = random_j(6, gen);
    if (!triangle_ok(f, a, d) || !triangle_ok(d, b, e)) continue;
    HalfInt al = random_m(a, gen), be = random_m(b, gen), ph = random_m(f, gen);
    HalfInt de = ph + al, ep = de + be;
    if (!d.valid_projection(de) || !e.valid_projection(ep)) continue;
    ++done;
    double lhs = cg(f, ph, a, al, d, de) * cg(d, de, b, be, e, ep);
    double rhs = 0;
    HalfInt ga = al + be;
    for (int tc = std::abs(a.twice() - b.twice()); tc <= a.twice() + b.twice();
         tc += 2) {
      HalfInt cq = half(tc);
      if (!cq.valid_projection(ga)) continue;
      rhs += phase(cq + e + f) * std::sqrt(double((tc + 1) * (d.twice() + 1))) *
             cg(b, be, a, al, cq, ga) * cg(f, ph, cq, ga, e, ep) *
             sixj(a, b, cq, e, f, d);
    }
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("four-CG contraction against 9j (100 random sets)") {
  // sum_beta C^{a al}_{b beta c ga} C^{d dl}_{e ep f phi} C^{g eta}_{e ep b beta}
  //          C^{j mu}_{f phi c ga}
  //   = sqrt((2a+1)(2d+1)(2g+1)(2j+1)) sum_k C^{k ka}_{g eta j mu}
  //     C^{k ka}_{d dl a al} {c b a; f e d; j g k}
  // with ep = eta - beta, ga = al - beta, phi = dl - ep, mu = al + dl - eta.
  auto& gen = testutil::rng();
  int done = 0;
  while (done < 100) {
    HalfInt b = random_j(4, gen), c = random_j(4, gen), e = random_j(4, gen),
            f = random_j(4, gen);
    HalfInt a = random_j(4, gen), d = random_j(4, gen), g = random_j(4, gen),
            j = random_j(4, gen);
    if (!triangle_ok(b, c, a) || !triangle_ok(e, f, d) ||
        !triangle_ok(e, b, g) || !triangle_ok(f, c, j))
      continue;
    HalfInt al = random_m(a, gen), dl = random_m(d, gen), eta = random_m(g, gen);
    HalfInt mu = al + dl - eta;
    if (!j.valid_projection(mu)) continue;
    ++done;
    double lhs = 0;
    for (int tbe = -b.twice(); tbe <= b.twice(); tbe += 2) {
      HalfInt beta = half(tbe);
      HalfInt ga = al - beta, ep = eta - beta, phi = dl - eta + beta;
      if (!c.valid_projection(ga) || !e.valid_projection(ep) ||
          !f.valid_projection(phi))
        continue;
      lhs += cg(b, beta, c, ga, a, al) * cg(e, ep, f, phi, d, dl) *
             cg(e, ep, b, beta, g, eta) * cg(f, phi, c, ga, j, mu);
    }
    double rhs = 0;
    HalfInt ka = al + dl;
    for (int tk = std::abs(g.twice() - j.twice()); tk <= g.twice() + j.twice();
         tk += 2) {
      HalfInt k = half(tk);
      if (!k.valid_projection(ka)) continue;
      rhs += cg(g, eta, j, mu, k, ka) * cg(d, dl, a, al, k, ka) *
             ninej(c, b, a, f, e, d, j, g, k);
    }
    rhs *= std::sqrt(double((a.twice() + 1) * (d.twice() + 1) *
                            (g.twice() + 1) * (j.twice() + 1)));
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("CG squared is exactly rational; float render matches") {
  auto& gen = testutil::rng();
  for (int i = 0; i < 100; ++i) {
    HalfInt j1 = random_j(6, gen), j2 = random_j(6, gen);
    HalfInt m1 = random_m(j1, gen), m2 = random_m(j2, gen);
    for (int tJ = std::abs(j1.twice() - j2.twice());
         tJ <= j1.twice() + j2.twice(); tJ += 2) {
      HalfInt J = half(tJ), M = m1 + m2;
      if (!J.valid_projection(M)) continue;
      Surd v = clebsch_gordan(j1, m1, j2, m2, J, M);
      BigRat sq = v.squared();
      double fl = v.to_double();
      double fromsq =
          (v.sign() >= 0 ? 1 : -1) * std::sqrt(sq.convert_to<double>());
      if (fl != 0) CHECK(std::abs(fl - fromsq) <= 1e-15 * std::abs(fl));
    }
  }
}

TEST_CASE("surd formatting") {
  CHECK((Surd(-1) / Surd::sqrt_of(BigRat(3))).str() == "-1/sqrt(3)");
  CHECK(Surd::sqrt_of(BigRat(2, 3)).str() == "sqrt(2/3)");
  CHECK(Surd(BigRat(-2)).str() == "-2");
  CHECK(Surd().str() == "0");
}
