#include <gtest/gtest.h>

#include "terp/terp.hpp"

using namespace terp;

namespace {

Model load(const std::string& name) { return load_model(std::string(TERP_MODELS_DIR) + "/" + name + ".json"); }

json base_json() {
  return json::parse(R"({
    "name": "t", "mu": 2, "w": 0, "exponents": ["0", "0"],
    "conjugation": [["0", "1"], ["1", "0"]],
    "pairing": [{"i": 1, "j": 2, "coeff": "1", "exponent": "0"}, {"i": 2, "j": 1, "coeff": "1", "exponent": "0"}],
    "alpha1": "-1", "parameters": ["r"],
    "lattice": [[{"basis": 1, "order": "-1"}, {"basis": 2, "order": "0", "coeff": "r"}], [{"basis": 2, "order": "1"}]],
    "point": {"r": "1/2"}
  })");
}

void expect_input_error(json j, const std::string& fragment) {
  try {
    parse_model(j);
    ADD_FAILURE() << "no error, expected '" << fragment << "'";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

using S = Section<GaussQ>;

}  // namespace

TEST(Parse, MinimalModel) {
  auto m = parse_model(base_json());
  EXPECT_EQ(m.top->mu, 2);
  EXPECT_EQ(m.params, std::vector<std::string>{"r"});
  EXPECT_EQ(m.point.at("r"), GaussQ(make_rational(1, 2)));
  auto L = instantiate(m);
  EXPECT_TRUE(validate_lattice(L).ok());
  EXPECT_EQ(L.gens[0], S::elementary(0, Rational(-1)) + S::elementary(1, Rational(0), GaussQ(make_rational(1, 2))));
}

TEST(Parse, InputErrors) {
  auto j = base_json();
  j["lattice"] = json::array();
  expect_input_error(j, "no generators");
  j = base_json();
  j["colour"] = "blue";
  expect_input_error(j, "unknown key 'colour'");
  j = base_json();
  j.erase("alpha1");
  expect_input_error(j, "missing 'alpha1'");
  j = base_json();
  j["alpha1"] = "-1/2";
  expect_input_error(j, "not congruent");
  j = base_json();
  j["lattice"][0][0]["order"] = "-1/3";
  expect_input_error(j, "not congruent to the exponent of A1");
  j = base_json();
  j["lattice"][0][0]["basis"] = 3;
  expect_input_error(j, "out of range");
  j = base_json();
  j["lattice"][0][1]["coeff"] = "s";
  expect_input_error(j, "s");
  j = base_json();
  j["point"]["s"] = "1";
  expect_input_error(j, "unknown parameter 's'");
  j = base_json();
  j["conjugation"] = json::array({json::array({"0", "1"})});
  expect_input_error(j, "expected 2 rows");
  j = base_json();
  j["exponents"] = json::array({"0", "1/0"});
  EXPECT_THROW(parse_model(j), InputError);
  j = base_json();
  j["families"] = json::array({{{"name", "f"}, {"parameter", "r"}, {"direction", "sideways"}}});
  expect_input_error(j, "direction");
  j = base_json();
  j["families"] = json::array({{{"name", "f"}, {"parameter", "q"}}});
  expect_input_error(j, "unknown parameter 'q'");
  j = base_json();
  j["parameters"] = json::array({"i"});
  expect_input_error(j, "invalid parameter name");
}

TEST(Parse, FilesAndPoints) {
  EXPECT_THROW(load_model("/nonexistent/model.json"), InputError);
  auto m = load("wps_family");
  auto v = resolve_point(m, {{"t", parse_scalar("0.25")}});
  EXPECT_EQ(v[1], GaussQ(make_rational(1, 4)));
  EXPECT_THROW(resolve_point(m, {{"x", GaussQ(1)}}), InputError);
  auto s = load("smooth_sp0");
  EXPECT_TRUE(s.params.empty());
  EXPECT_TRUE(resolve_point(s, {}).empty());
}

TEST(Parse, EveryCorpusFileLoads) {
  for (auto n : {"rank2_pair", "rank2_pair_infinity", "rank2_real", "degenerate_limit", "pullback_family", "hirzebruch_chart0",
                 "hirzebruch_chartinf", "hirzebruch_fibre", "jordan", "jordan_infinity", "reducible_n1", "reducible_n2",
                 "smooth_sp0", "smooth_sp1", "smooth_sp2", "smooth_universal", "wps_family"}) {
    auto m = load(n);
    EXPECT_EQ(m.name, n);
    for (auto& f : m.families) EXPECT_NO_THROW(make_family<GaussQ>(m, f)) << n << "/" << f.name;
  }
}

TEST(Render, Sections) {
  S s = S::elementary(0, Rational(-1)) + S::elementary(1, Rational(0), GaussQ(2));
  EXPECT_EQ(section_str(s), "es(A1,-1) + 2*es(A2,0)");
  S t = S::elementary(0, make_rational(1, 2), -GaussQ::i()) + S::elementary(1, make_rational(1, 2), GaussQ(1, 1));
  EXPECT_EQ(section_str(t), "-i*es(A1,1/2) + (1+i)*es(A2,1/2)");
  S u = S::elementary(0, Rational(0)) - S::elementary(1, Rational(0), GaussQ(make_rational(3, 4)));
  EXPECT_EQ(section_str(u), "es(A1,0) - 3/4*es(A2,0)");
  EXPECT_EQ(section_str(S()), "0");
}

TEST(Render, ApproxScalars) {
  EXPECT_EQ(scalar_str(Approx(0.5, 0)), "0.5");
  EXPECT_EQ(scalar_str(Approx(-0.0, 0)), "0");
  EXPECT_EQ(scalar_str(Approx(1, -2)), "1-2*i");
  EXPECT_EQ(scalar_str(Approx(0, 0.25)), "0.25*i");
}

TEST(Render, Lists) {
  EXPECT_EQ(rationals_str({Rational(-1), make_rational(5, 4)}), "-1, 5/4");
  EXPECT_EQ(pairs_str({{make_rational(-1, 2), 0}, {make_rational(1, 2), -2}}), "(-1/2, 0), (1/2, -2)");
  EXPECT_EQ(splitting_str({-2, 0, 2}), "[-2,0,2]");
}

TEST(Render, TwistorJsonIsStable) {
  auto m = load("rank2_real");
  auto R = classify(instantiate(m, {{"r", GaussQ(1)}}));
  auto a = twistor_json(R).dump(2), b = twistor_json(classify(instantiate(m, {{"r", GaussQ(1)}}))).dump(2);
  EXPECT_EQ(a, b);
  auto j = json::parse(a);
  EXPECT_EQ(j["classification"], "pure(1,1)");
  EXPECT_EQ(j["h"], json::parse(R"([["0","1"],["1","0"]])"));
  // key order is part of the output contract
  std::vector<std::string> keys;
  for (auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"splitting", "classification", "pure", "polarized", "signature",
                                            "global_sections", "h", "marginal", "invariants"}));
}

TEST(Render, LimitText) {
  auto m = load("pullback_family");
  auto R = limit_terp(make_family<GaussQ>(m, "diagonal_generated"));
  auto t = limit_text(R);
  EXPECT_EQ(t.rfind("DEGENERATE: pairing rank 0 mod z on 2 generators\n", 0), 0u) << t;
  EXPECT_EQ(limit_json(R)["membership"], "none");
}

TEST(Csv, HeaderAndRowOrder) {
  auto m = load("smooth_sp2");
  std::vector<GridAxis> axes{parse_grid("x=0:1:2"), parse_grid("y=0:2:2")};
  auto rows = signature_scan<GaussQ>(m, axes, {});
  auto csv = scan_csv(axes, rows, true);
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "x,y,splitting,p,q,corank,marginal,status");
  // row-major: the last axis varies fastest
  EXPECT_EQ(lines[1].substr(0, 4), "0,0,");
  EXPECT_EQ(lines[2].substr(0, 4), "0,2,");
  EXPECT_EQ(lines[3].substr(0, 4), "1,0,");
  EXPECT_EQ(lines[2], "0,2,0;0;0;0,0,4,0,0,ok");
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(csv, scan_csv(axes, signature_scan<GaussQ>(m, axes, {}, {}, 1), true));
}

TEST(Csv, ApproxValuesAreFormattedDeterministically) {
  auto ax = parse_grid("r=1:100:3,log");
  ASSERT_EQ(ax.values.size(), 3u);
  EXPECT_EQ(format_value(ax.values[1], false), "10");
  EXPECT_EQ(format_value(GaussQ(make_rational(1, 3)), false), "0.3333333333");
  EXPECT_EQ(format_value(GaussQ(make_rational(1, 3)), true), "1/3");
}
