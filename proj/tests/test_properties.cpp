#include <gtest/gtest.h>

#include "property_suite.hpp"

using namespace terp;
using namespace terp::props;

namespace {

constexpr int kCases = 200;

const std::vector<PropertyResult>& results() {
  static const auto r = run_all(TERP_MODELS_DIR, kCases);
  return r;
}

void expect_clean(std::size_t idx) {
  const auto& r = results().at(idx);
  EXPECT_GE(r.cases, kCases) << r.name;
  EXPECT_EQ(r.failures, 0) << r.name << ": " << r.first_failure;
}

}  // namespace

TEST(Properties, WeightFiltration) { expect_clean(0); }
TEST(Properties, TauInvolution) { expect_clean(1); }
TEST(Properties, PairingIdentities) { expect_clean(2); }
TEST(Properties, SpectrumSymmetry) { expect_clean(3); }
TEST(Properties, SplittingSymmetry) { expect_clean(4); }
TEST(Properties, CorankFormula) { expect_clean(5); }
TEST(Properties, PurityDecisionsAgree) { expect_clean(6); }
TEST(Properties, FunctorRoundTrip) { expect_clean(7); }
TEST(Properties, ReparamInvariance) { expect_clean(8); }

TEST(Properties, RandomDataIsValid) {
  Rng g(7);
  for (int c = 0; c < 50; ++c) {
    auto rt = random_top(g, 8);
    auto rep = validate_topological_data(*rt.top);
    ASSERT_TRUE(rep.ok()) << failed_checks(rep);
    auto t = random_terp(g);
    auto S = build_w_omega<GaussQ>(t.L.top, t.L.win);
    EXPECT_EQ(membership_lambda_ab(S, t.G), Membership::LambdaAB);
    EXPECT_LE(S.dim(), 8u);
  }
}

TEST(Properties, DarbouxBasis) {
  Rng g(11);
  auto t = random_terp(g);
  auto S = build_w_omega<GaussQ>(t.L.top, t.L.win);
  auto B = darboux_basis(S.omega);
  const std::size_t m = B.size() / 2;
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j) {
      GaussQ v(0);
      for (std::size_t a = 0; a < B.size(); ++a)
        for (std::size_t b = 0; b < B.size(); ++b) v += B[i][a] * S.omega(a, b) * B[j][b];
      GaussQ want = (j == i + m) ? GaussQ(1) : (i == j + m ? GaussQ(-1) : GaussQ(0));
      EXPECT_EQ(v, want) << i << "," << j;
    }
}

TEST(Properties, TotalRuntime) {
  double total = 0;
  for (auto& r : results()) total += r.seconds;
  EXPECT_LT(total, 60.0);
}
