#include <gtest/gtest.h>

#include "terp/limits/limit.hpp"
#include "terp/twistor/twistor.hpp"

using namespace terp;

namespace {

Model load(const std::string& name) { return load_model(std::string(TERP_MODELS_DIR) + "/" + name + ".json"); }

using S = Section<GaussQ>;

S es(int j, const Rational& o, GaussQ c = GaussQ(1)) { return S::elementary(j, o, c); }
Rational q(long a, long b = 1) { return make_rational(a, b); }

// Point in W^omega of the lattice spanned by the given sections.
Subspace<GaussQ> point_of(const Model& m, std::vector<S> gens) {
  return point_of_lattice(make_lattice<GaussQ>(m.top, m.alpha1, std::move(gens)));
}

FamilySpec spec(const std::string& param, bool inf, std::map<std::string, std::string> fixed = {},
                std::map<std::string, std::string> subs = {}) {
  FamilySpec fs;
  fs.name = "test";
  fs.parameter = param;
  fs.to_infinity = inf;
  fs.fixed = std::move(fixed);
  fs.substitute = std::move(subs);
  return fs;
}

// smooth compactification: s_j = es(A_j, alpha_j)
const Rational kAlpha[4] = {q(-7, 8), q(-5, 8), q(5, 8), q(7, 8)};
S s4(int j, long k = 0, GaussQ c = GaussQ(1)) { return es(j - 1, kAlpha[j - 1] + k, c); }

}  // namespace

TEST(LPoly, Arithmetic) {
  using P = LPoly<GaussQ>;
  P a = P::monomial(GaussQ(1), -1) + P(GaussQ(2));
  P b = P::monomial(GaussQ(1), 1) - P(GaussQ(2));
  P c = a * b;  // (s^-1 + 2)(s - 2) = 1 - 2 s^-1 + 2 s - 4
  EXPECT_EQ(c.valuation(), -1);
  EXPECT_EQ(c.degree(), 1);
  EXPECT_EQ(c.coeff(0), GaussQ(-3));
  EXPECT_EQ(c.coeff(-1), GaussQ(-2));
  EXPECT_TRUE((a - a).is_zero());
}

TEST(RatFun, LowestTermsAndEvaluation) {
  RatFun w = RatFun::var();
  RatFun f = (w * w - RatFun(1)) / (w - RatFun(1));
  EXPECT_EQ(f, w + RatFun(1));
  EXPECT_EQ(f.eval(GaussQ(3)), GaussQ(4));
  RatFun g = RatFun(1) / (w - RatFun(GaussQ::i()));
  EXPECT_THROW(g.eval(GaussQ::i()), MathError);
  EXPECT_EQ(g * (w - RatFun(GaussQ::i())), RatFun(1));
  EXPECT_EQ(RatFun::var(-2) * RatFun::var(2), RatFun(1));
}

TEST(Family, SubstitutionAndChartAtInfinity) {
  auto m = load("smooth_sp2");
  auto f = make_family<GaussQ>(m, "parabola_w1");
  EXPECT_TRUE(f.to_infinity);
  // first generator s1 - x s2 + y z^-1 s4 with y = x^2, s = 1/x
  const auto& g = f.gens[0];
  EXPECT_EQ(g.at(Slot{kAlpha[0], 0}), LPoly<GaussQ>(GaussQ(1)));
  EXPECT_EQ(g.at(Slot{kAlpha[1], 1}), LPoly<GaussQ>::monomial(GaussQ(-1), -1));
  EXPECT_EQ(g.at(Slot{kAlpha[3] - 1, 3}), LPoly<GaussQ>::monomial(GaussQ(1), -2));
  EXPECT_THROW(make_family<GaussQ>(m, spec("x", true, {}, {{"x", "y"}})), InputError);
  EXPECT_THROW(make_family<GaussQ>(m, spec("nope", true)), InputError);
}

TEST(GrassmannLimit, InteriorPointIsTheMemberItself) {
  auto m = load("rank2_pair");
  auto lim = grassmann_limit(make_family<GaussQ>(m, spec("r", false)));
  EXPECT_TRUE(lim.G.equals(point_of_lattice(instantiate(m, {{"r", GaussQ(0)}}))));
  EXPECT_EQ(lim.steps, 0);
  auto R = limit_terp(make_family<GaussQ>(m, spec("r", false)));
  EXPECT_FALSE(R.degenerate);
  EXPECT_TRUE(R.point.equals(point_of_lattice(instantiate(m, {{"r", GaussQ(0)}}))));
}

TEST(GrassmannLimit, ConstantFamily) {
  // u does not occur once t is frozen, so the family is constant in u
  auto w = load("wps_family");
  auto lim = grassmann_limit(make_family<GaussQ>(w, spec("u", true, {{"r", "1"}, {"t", "1/2"}})));
  EXPECT_TRUE(lim.G.equals(point_of_lattice(instantiate(w, {{"r", GaussQ(1)}, {"t", GaussQ(q(1, 2))}}))));
  EXPECT_EQ(lim.steps, 0);
}

TEST(GrassmannLimit, SmoothStratumAlongParabola) {
  // lim_{x -> inf} of the Sp_2 chart along y = w x^2 is span(s2 + w z^-1 s3, z^-1 s4, z s1, s3)
  auto m = load("smooth_sp2");
  for (long w : {0, 1}) {
    auto lim = grassmann_limit(make_family<GaussQ>(m, "parabola_w" + std::to_string(w)));
    auto want = point_of(m, {s4(2) + s4(3, -1, GaussQ(w)), s4(4, -1), s4(1, 1), s4(3)});
    EXPECT_TRUE(lim.G.equals(want)) << "w=" << w;
    auto R = limit_terp(make_family<GaussQ>(m, "parabola_w" + std::to_string(w)));
    ASSERT_FALSE(R.degenerate) << R.diagnosis;
    // the limit lies on the boundary stratum Sp_1 = (alpha_2, alpha_4 - 1, alpha_1 + 1, alpha_3)
    EXPECT_EQ(R.spectrum, (std::vector<Rational>{kAlpha[1], kAlpha[3] - 1, kAlpha[0] + 1, kAlpha[2]}));
  }
}

TEST(GrassmannLimit, ReducibleChain) {
  // H_{-n}(r), r -> infinity, limits to G_{-n+1} = span(z s1, z^-1 s2), s1 = z^-n A1, s2 = z^n A2
  for (long n : {1, 2}) {
    auto m = load("reducible_n" + std::to_string(n));
    auto lim = grassmann_limit(make_family<GaussQ>(m, "r_to_infinity"));
    auto want = point_of(m, {es(0, Rational(-n + 1)), es(1, Rational(n - 1))});
    EXPECT_TRUE(lim.G.equals(want)) << "n=" << n;
  }
}

TEST(GrassmannLimit, JordanAtInfinity) {
  auto m = load("jordan");
  auto R = limit_terp(make_family<GaussQ>(m, "r_to_infinity"));
  ASSERT_FALSE(R.degenerate);
  EXPECT_TRUE(R.point.equals(point_of(m, {es(1, q(-1, 2)), es(0, q(1, 2))})));
  EXPECT_EQ(R.spectrum, (std::vector<Rational>{q(-1, 2), q(1, 2)}));
}

TEST(LimitTerp, WeightedProjectiveQuartic) {
  // along t = u r^4, r -> infinity: spectral numbers (alpha_3 - 2, 0, alpha_1 + 2)
  auto m = load("wps_family");
  for (auto name : {"quartic_u0", "quartic_u1"}) {
    auto R = limit_terp(make_family<GaussQ>(m, name));
    ASSERT_FALSE(R.degenerate) << R.diagnosis;
    EXPECT_EQ(R.spectrum, (std::vector<Rational>{q(-3, 4), q(0), q(3, 4)})) << name;
  }
  // the two extensions differ
  auto a = limit_terp(make_family<GaussQ>(m, "quartic_u0")).point;
  auto b = limit_terp(make_family<GaussQ>(m, "quartic_u1")).point;
  EXPECT_FALSE(a.equals(b));
}

TEST(LimitTerp, GeneratedPullbackIsDegenerate) {
  auto m = load("pullback_family");
  auto R = limit_terp(make_family<GaussQ>(m, "diagonal_generated"));
  EXPECT_TRUE(R.degenerate);
  EXPECT_EQ(R.witness, "pairing rank 0 mod z on 2 generators");
  EXPECT_EQ(R.membership, "none");
  ASSERT_NE(R.checks.find("pairing_nondegenerate_mod_z"), nullptr);
  EXPECT_FALSE(R.checks.find("pairing_nondegenerate_mod_z")->passed);
  // the generated module is span(z A2, A1)
  auto deg = load("degenerate_limit");
  EXPECT_TRUE(window_span(R.lattice).equals(window_span(instantiate(deg))));
}

TEST(LimitTerp, SaturatedPullbackIsTheDiagonalMember) {
  auto m = load("pullback_family");
  auto R = limit_terp(make_family<GaussQ>(m, "diagonal_saturated"));
  ASSERT_FALSE(R.degenerate) << R.diagnosis;
  auto ex = load("rank2_pair");
  EXPECT_TRUE(R.point.equals(point_of_lattice(instantiate(ex, {{"r", GaussQ(1)}}))));
}

TEST(LimitTerp, CorpusFamiliesLandInLambdaAB) {
  for (auto name : {"rank2_pair", "smooth_sp2", "smooth_sp1", "wps_family", "hirzebruch_fibre", "reducible_n1",
                    "reducible_n2", "jordan", "pullback_family"}) {
    auto m = load(name);
    for (auto& fs : m.families) {
      if (fs.extension == "generated") continue;
      auto R = limit_terp(make_family<GaussQ>(m, fs));
      for (auto check : {"isotropic", "z_invariant", "z2nabla_invariant", "spectrum_in_window"}) {
        ASSERT_NE(R.checks.find(check), nullptr) << name << "/" << fs.name << " " << check;
        EXPECT_TRUE(R.checks.find(check)->passed) << name << "/" << fs.name << " " << check;
      }
      EXPECT_FALSE(R.degenerate) << name << "/" << fs.name;
      EXPECT_EQ(R.membership, "Lambda_ab") << name << "/" << fs.name;
    }
  }
}

TEST(LimitTerp, FreezingCommutesWithTheLimit) {
  // limit over Q(i)(w) then w = w0, versus w = w0 then limit
  auto m = load("smooth_sp2");
  auto fs = m.family("parabola_w0");
  auto generic = grassmann_limit(make_family<RatFun>(m, fs, std::nullopt, "w"));
  for (GaussQ w0 : {GaussQ(0), GaussQ(1), GaussQ(-2), GaussQ(q(1, 3)), GaussQ(1, 1)}) {
    auto frozen = fs;
    frozen.fixed["w"] = w0.str();
    auto before = grassmann_limit(make_family<GaussQ>(m, frozen)).G;
    EXPECT_TRUE(specialize_point(generic.G, w0).equals(before)) << w0;
  }
  auto wm = load("wps_family");
  auto gq = grassmann_limit(make_family<RatFun>(wm, wm.family("quartic_u0"), std::nullopt, "u"));
  for (GaussQ u0 : {GaussQ(0), GaussQ(1), GaussQ(q(-1, 4))}) {
    auto frozen = wm.family("quartic_u0");
    frozen.fixed["u"] = u0.str();
    EXPECT_TRUE(specialize_point(gq.G, u0).equals(grassmann_limit(make_family<GaussQ>(wm, frozen)).G)) << u0;
  }
}

TEST(LimitTerp, PolarizedFamilyHasPolarizedLimit) {
  // weighted projective family along t = 0, r -> 0; pure polarized on samples and at the limit
  auto m = load("wps_family");
  auto fs = spec("r", false, {{"t", "0"}, {"u", "0"}});
  for (auto r : {q(1, 2), q(1, 4), q(1, 8)}) {
    auto R = classify(instantiate(m, {{"r", GaussQ(r)}, {"t", GaussQ(0)}}));
    EXPECT_TRUE(R.polarized);
  }
  auto L = limit_terp(make_family<GaussQ>(m, fs));
  ASSERT_FALSE(L.degenerate);
  EXPECT_TRUE(classify(L.lattice).polarized);
}

TEST(Reparam, Invariance) {
  auto sp2 = load("smooth_sp2");
  const std::size_t nx = 3;
  EXPECT_TRUE(limit_reparam_invariance(sp2, sp2.family("parabola_w1"), MPoly(1)));
  EXPECT_TRUE(limit_reparam_invariance(sp2, sp2.family("parabola_w1"), MPoly(1) + MPoly::var(0, nx)));
  auto red = load("reducible_n2");
  EXPECT_TRUE(limit_reparam_invariance(red, red.family("r_to_infinity"), MPoly(2)));
  auto ex = load("rank2_pair");
  EXPECT_TRUE(limit_reparam_invariance(ex, spec("r", false), MPoly(3) + MPoly::var(0, 1)));
}

TEST(Reparam, UnitMustNotVanish) {
  auto ex = load("rank2_pair");
  EXPECT_THROW(limit_reparam_invariance(ex, spec("r", false), MPoly::var(0, 1)), MathError);
  EXPECT_THROW(limit_reparam_invariance(ex, spec("r", false), MPoly()), MathError);
  EXPECT_THROW(limit_reparam_invariance(ex, ex.family("r_to_infinity"), MPoly::var(0, 1, -2)), MathError);
  EXPECT_THROW(limit_reparam_invariance(ex, ex.family("r_to_infinity"), MPoly::var(1, 2)), InputError);
}

TEST(Variation, UniversalAndRankTwoFamiliesAreHorizontal) {
  auto m = load("smooth_universal");
  std::vector<std::map<std::string, GaussQ>> pts;
  for (long r : {0, 1, 2}) pts.push_back({{"r", GaussQ(r)}, {"p", GaussQ(0)}, {"q", GaussQ(0)}});
  for (auto& v : variation_check(m, "r", pts)) EXPECT_TRUE(v.passed) << v.detail;
  for (auto& v : variation_check(m, "p", {{{"p", GaussQ(1)}, {"q", GaussQ(2)}, {"r", GaussQ(-1)}}}))
    EXPECT_TRUE(v.passed) << v.detail;
  auto ex = load("rank2_pair");
  for (auto& v : variation_check(ex, "r", {{{"r", GaussQ(0)}}, {{"r", GaussQ(2, 1)}}})) EXPECT_TRUE(v.passed);
}

TEST(Variation, SecondOrderPoleIsDetected) {
  // rank 3: g1 = s1 + r z^-2 s3; z d/dr g1 = z^-1 s3 is not in L
  std::ifstream in(std::string(TERP_MODELS_DIR) + "/wps_family.json");
  auto j = nlohmann::ordered_json::parse(in);
  j["parameters"] = {"r"};
  j["point"] = {{"r", "1"}};
  j.erase("families");
  auto term = [](int b, const std::string& o, const std::string& c) {
    return nlohmann::ordered_json{{"basis", b}, {"order", o}, {"coeff", c}};
  };
  j["lattice"] = {{term(1, "-5/4", "1"), term(3, "-3/4", "r")}, {term(2, "0", "1")}, {term(3, "5/4", "1")}};
  auto m = parse_model(j);
  auto res = variation_check(m, "r", {{{"r", GaussQ(0)}}, {{"r", GaussQ(1)}}});
  for (auto& v : res) EXPECT_FALSE(v.passed);
  EXPECT_NE(res[0].detail.find("g1"), std::string::npos);
}
