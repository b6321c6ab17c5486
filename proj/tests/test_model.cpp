#include <gtest/gtest.h>

#include "terp/io/model.hpp"

using namespace terp;

namespace {

Model load(const std::string& name) { return load_model(std::string(TERP_MODELS_DIR) + "/" + name + ".json"); }

using S = Section<GaussQ>;

S es(int j, long o, GaussQ c = GaussQ(1)) { return S::elementary(j, Rational(o), c); }
S es(int j, Rational o, GaussQ c = GaussQ(1)) { return S::elementary(j, o, c); }

Rational q(long a, long b) { return make_rational(a, b); }

}  // namespace

TEST(TopologicalData, CorpusIsValid) {
  for (auto n : {"rank2_pair", "rank2_real", "rank2_pair_infinity", "degenerate_limit", "pullback_family", "smooth_universal", "smooth_sp2",
                 "smooth_sp1", "smooth_sp0", "wps_family", "hirzebruch_fibre", "hirzebruch_chart0",
                 "hirzebruch_chartinf", "jordan", "jordan_infinity", "reducible_n1", "reducible_n2"}) {
    auto rep = validate_topological_data(*load(n).top);
    EXPECT_TRUE(rep.ok()) << n << ": " << failed_checks(rep);
  }
}

TEST(TopologicalData, BrokenDataIsDiagnosed) {
  auto base = *load("rank2_pair").top;
  {
    auto t = base;
    t.conjugation(0, 1) = GaussQ(2);
    EXPECT_FALSE(validate_topological_data(t).find("conjugation_involutive")->passed);
  }
  {
    auto t = base;
    t.pairing(1, 0) = GaussQ(-1);
    EXPECT_FALSE(validate_topological_data(t).find("pairing_symmetry")->passed);
  }
  {
    auto t = base;
    t.pairing_exponent[0][1] = Rational(1);
    auto rep = validate_topological_data(t);
    EXPECT_FALSE(rep.find("pairing_homogeneous")->passed);
    EXPECT_NE(rep.find("pairing_homogeneous")->detail.find("expected 0"), std::string::npos);
  }
  {
    auto t = base;
    t.nilpotent = Matrix<GaussQ>::identity(2);
    EXPECT_FALSE(validate_topological_data(t).find("nilpotent")->passed);
  }
  {
    auto t = base;
    t.pairing(0, 1) = t.pairing(1, 0) = GaussQ(0);
    EXPECT_FALSE(validate_topological_data(t).find("pairing_nondegenerate")->passed);
  }
}

TEST(Section, Arithmetic) {
  auto a = es(0, -1) + GaussQ(2) * es(1, 0);
  EXPECT_EQ(a - a, S());
  EXPECT_EQ(mul_z(a, 2), es(0, 1) + GaussQ(2) * es(1, 2));
  EXPECT_EQ(a.min_order(), Rational(-1));
  EXPECT_EQ(a.max_order(), Rational(0));
  EXPECT_EQ(a.component(Rational(0)), GaussQ(2) * es(1, 0));
  EXPECT_TRUE((GaussQ(0) * a).is_zero());
}

TEST(Section, Z2NablaOnElementarySections) {
  auto top = *load("jordan").top;
  // z^2 d/dz es(A, o) = o es(A, o + 1) + es(Ñ A, o + 1)
  for (int j = 0; j < 2; ++j) {
    Rational o = top.exponents[j] + 2;
    S want = GaussQ(o) * es(j, o + 1);
    for (int k = 0; k < 2; ++k) want += S::elementary(k, o + 1, top.nilpotent(k, j));
    EXPECT_EQ(z2nabla(es(j, o), top), want);
  }
}

TEST(Section, TauOnTheRankTwoExamples) {
  auto a = *load("rank2_pair").top;
  // conj(A1) = A2: tau(z A2) = z^-1 A1, tau(A1) = A2, tau(z^-1 A1 + r A2) = z A2 + conj(r) A1
  EXPECT_EQ(apply_tau(es(1, 1), a), es(0, -1));
  EXPECT_EQ(apply_tau(es(0, 0), a), es(1, 0));
  GaussQ r(2, 3);
  EXPECT_EQ(apply_tau(es(0, -1) + r * es(1, 0), a), es(1, 1) + r.conj() * es(0, 0));
  auto b = *load("rank2_real").top;
  // real A1, A2: tau(z A2) = z^-1 A2, tau(A1) = A1
  EXPECT_EQ(apply_tau(es(1, 1), b), es(1, -1));
  EXPECT_EQ(apply_tau(es(0, 0), b), es(0, 0));
}

TEST(Section, PairingConventions) {
  auto top = *load("rank2_pair").top;
  // P(A1, A2) = 1; P(z^k a, z^l b) = (-1)^l z^{k+l} P(a, b)
  auto p = pair_P(es(0, 0), es(1, 0), top);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(zcoeff(p, Rational(0)), GaussQ(1));
  auto p2 = pair_P(es(0, 2), es(1, 1), top);
  EXPECT_EQ(zcoeff(p2, Rational(3)), GaussQ(-1));
  EXPECT_TRUE(pair_P(es(0, 0), es(0, 0), top).empty());
}

TEST(Window, Bounds) {
  auto h = *load("hirzebruch_fibre").top;
  auto win = make_window(h, q(-1, 2));
  EXPECT_EQ(win.alpha_mu, q(5, 2));
  EXPECT_EQ(win.n, 3);
  EXPECT_EQ(window_omega(h, win).size(), 6u);
  EXPECT_EQ(window_E(h, win).size(), 8u);
  EXPECT_THROW(make_window(h, Rational(0)), InputError);   // not congruent to 1/2
  EXPECT_THROW(make_window(h, q(3, 2)), InputError);       // above w/2
  auto a = *load("rank2_pair").top;
  EXPECT_EQ(make_window(a, Rational(0)).n, 0);
  EXPECT_EQ(window_omega(a, make_window(a, Rational(0))).size(), 0u);
}

TEST(Lattice, RankTwoFamilyIsValidEverywhere) {
  auto m = load("rank2_pair");
  for (GaussQ r : {GaussQ(0), GaussQ(1), GaussQ(q(1, 2), q(1, 3)), GaussQ(-7)}) {
    auto rep = validate_lattice(instantiate(m, {{"r", r}}));
    EXPECT_TRUE(rep.ok()) << r.str() << ": " << failed_checks(rep);
  }
}

TEST(Lattice, DegenerateLimitHasPairingWitness) {
  auto rep = validate_lattice(instantiate(load("degenerate_limit")));
  EXPECT_FALSE(rep.ok());
  const Check* c = rep.find("pairing_nondegenerate_mod_z");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->passed);
  EXPECT_EQ(c->detail, "pairing rank 0 mod z on 2 generators");
}

TEST(Lattice, ViolationsAreNamed) {
  auto m = load("rank2_pair");
  auto top = m.top;
  auto bad = [&](std::vector<S> gens, const char* check) {
    auto rep = validate_lattice(make_lattice<GaussQ>(top, m.alpha1, gens));
    const Check* c = rep.find(check);
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->passed) << check;
  };
  bad({es(0, -2), es(1, 1)}, "contained_in_V_alpha1");
  bad({es(0, -1), es(1, -1)}, "isotropic");               // P^{(-1)}(z^-1 A1, z^-1 A2) != 0
  bad({es(0, 0), es(1, 1)}, "lagrangian_dimension");       // image in W^omega is one-dimensional
  bad({es(0, -1) + es(1, -1)}, "generator_count");
}

TEST(Lattice, CanonicalGeneratorsSpanTheSameLattice) {
  auto m = load("wps_family");
  auto L = instantiate(m, {{"r", GaussQ(2)}, {"t", GaussQ(-1)}});
  auto C = canonicalize_lattice(L);
  EXPECT_EQ(C.gens.size(), 3u);
  EXPECT_TRUE(point_of_lattice(C).equals(point_of_lattice(L)));
  EXPECT_THROW(canonicalize_lattice(instantiate(load("degenerate_limit"))), MathError);
}

TEST(Lattice, ApproxValidationMatchesExact) {
  auto m = load("smooth_universal");
  std::map<std::string, GaussQ> pt{{"r", GaussQ(1)}, {"p", GaussQ(q(1, 3))}, {"q", GaussQ(0, 2)}};
  auto vals = resolve_point(m, pt);
  std::vector<Approx> av;
  for (auto& v : vals) av.push_back(v.to_complex());
  auto ex = validate_lattice(instantiate<GaussQ>(m, vals));
  auto ap = validate_lattice(instantiate<Approx>(m, av));
  ASSERT_EQ(ex.checks.size(), ap.checks.size());
  for (std::size_t k = 0; k < ex.checks.size(); ++k) EXPECT_EQ(ex.checks[k].passed, ap.checks[k].passed) << ex.checks[k].name;
}
