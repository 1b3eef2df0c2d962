#include <gtest/gtest.h>

#include <cmath>

#include "hdx/certificates.hpp"
#include "hdx/error.hpp"
#include "hdx/generators.hpp"
#include "hdx/spectra.hpp"
#include "hdx/walks.hpp"

using namespace hdx;

namespace {

const Certificate& find(const std::vector<Certificate>& v, const std::string& id) {
  for (const auto& c : v)
    if (c.theorem_id == id) return c;
  throw std::runtime_error("missing certificate " + id);
}

void expect_no_failures(const std::vector<Certificate>& v) {
  for (const auto& c : v) EXPECT_NE(c.verdict, Verdict::Fail) << to_json(c).dump();
}

WeightedComplex disconnected() { return build_complex({{0, 1}, {0, 1}}, {{0, 0}, {1, 1}}, {1, 2}); }

}  // namespace

TEST(Certificates, JudgeSemantics) {
  EXPECT_EQ(judge(0.5, 0.5 - 5e-9, "<=", 1e-8, false), Verdict::Pass);
  EXPECT_EQ(judge(0.5, 0.49, "<=", 1e-8, false), Verdict::Fail);
  EXPECT_EQ(judge(0.49, 0.5, ">=", 1e-8, false), Verdict::Fail);
  EXPECT_EQ(judge(0.5, 0.49, ">=", 1e-8, false), Verdict::Pass);
  EXPECT_EQ(judge(2.0, 0.0, "<=", 1e-8, true), Verdict::Vacuous);
}

TEST(Certificates, CsvOnProductIsZeroOverZero) {
  InstanceCache cache(uniform_product({2, 3, 2}));
  auto v = certify_csv(cache, {1, 2, 0});
  const auto& c = find(v, "sweep_variance_contraction");
  EXPECT_NEAR(c.measured, 0.0, 1e-20);
  EXPECT_NEAR(c.bound, 0.0, 1e-20);
  EXPECT_EQ(c.verdict, Verdict::Pass);
  expect_no_failures(v);
}

TEST(Certificates, CsvOnAddedProductSideStaysZero) {
  for (int n = 2; n <= 4; ++n) {
    InstanceCache cache(uniform_product(std::vector<int>(static_cast<std::size_t>(n), 2)));
    const auto& c = find(certify_csv(cache, canonical_order(cache.complex())), "sweep_variance_contraction");
    EXPECT_NEAR(c.measured, 0.0, 1e-20);
    EXPECT_NEAR(c.bound, 0.0, 1e-20);
  }
}

TEST(Certificates, CsvOnSingleEdgeFourColors) {
  InstanceCache cache(single_edge_coloring(2, 3));
  auto v = certify_csv(cache, {0, 1});
  const auto& c = find(v, "sweep_variance_contraction");
  EXPECT_NEAR(c.bound, 1.0 / 9, 1e-12);
  EXPECT_NEAR(c.measured, 1.0 / 9, 1e-12);
  EXPECT_EQ(c.verdict, Verdict::Pass);
  EXPECT_EQ(c.inputs_digest, cache.digest());
  expect_no_failures(v);
}

TEST(Certificates, CsvOnDisconnectedIsVacuous) {
  InstanceCache cache(disconnected());
  auto v = certify_csv(cache, {0, 1});
  EXPECT_EQ(find(v, "sweep_variance_contraction").verdict, Verdict::Vacuous);
  expect_no_failures(v);
}

TEST(Certificates, CwadvReducesToSingleEps) {
  auto X = single_edge_coloring(3, 3);
  InstanceCache cache(X);
  auto v = certify_cwadv(cache, Face{}, {0}, {1});
  const auto& c = find(v, "colored_walk_product_bound");
  const double e0 = cache.eps_profile()[0];
  EXPECT_NEAR(c.bound, e0 * e0, 1e-14);
  EXPECT_NEAR(c.measured, 1.0 / 9, 1e-10);
  EXPECT_EQ(c.verdict, Verdict::Pass);
}

TEST(Certificates, CwadvOnRandomFourPartite) {
  for (std::uint64_t seed = 1; seed < 40; ++seed) {
    auto r = random_partite({2, 3, 2, 2}, 0.7, seed);
    if (!r.link_connected) continue;
    InstanceCache cache(r.complex);
    for (const Face& a : faces_of_type(r.complex, {3})) expect_no_failures(certify_cwadv(cache, a, {0, 1}, {2}));
    expect_no_failures(certify_cwadv(cache, Face{}, {0, 1}, {2}));
    auto all = certify_cwadv_all(cache);
    expect_no_failures(all);
    EXPECT_GT(find(all, "colored_walk_product_bound").context["checks"].get<int>(), 0);
    return;
  }
  FAIL() << "no link-connected seed found";
}

TEST(Certificates, EccExamples) {
  InstanceCache one(build_complex({{0, 1, 2}}, {{0}, {1}, {2}}, {1, 2, 3}));
  auto c1 = certify_ecc(one, {0});
  EXPECT_LE(c1.measured, 1e-15);
  EXPECT_EQ(c1.verdict, Verdict::Pass);

  InstanceCache prod(uniform_product({2, 2}));
  auto cp = certify_ecc(prod, {0, 1});
  EXPECT_LE(cp.context["worst_ratio"].get<double>(), 1e-12);
  EXPECT_EQ(cp.verdict, Verdict::Pass);

  InstanceCache edge(single_edge_coloring(2, 2));
  auto ce = certify_ecc(edge, {0, 1});
  EXPECT_EQ(ce.verdict, Verdict::Pass) << to_json(ce).dump();
  EXPECT_GT(ce.context["grid_points"].get<long>(), 50000);

  InstanceCache big(random_partite({3, 3, 3}, 1.0, 2).complex);
  EXPECT_FALSE(ecc_feasible(big, {0, 1, 2}));
  try {
    certify_ecc(big, {0, 1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InstanceTooLarge);
  }
}

TEST(Certificates, GlauberBits) {
  InstanceCache cache(uniform_product({2, 2}));
  auto v = certify_glauber(cache);
  EXPECT_NEAR(find(v, "glauber_gap_lower").measured, 0.5, 1e-12);
  EXPECT_EQ(find(v, "glauber_gap_upper").verdict, Verdict::Pass);
  EXPECT_NEAR(find(v, "glauber_gap_upper").bound, 1.0, 1e-15);
  expect_no_failures(v);
}

TEST(Certificates, GlauberUpperSkippedWithSingletonSide) {
  InstanceCache cache(build_complex({{0}, {0, 1}}, {{0, 0}, {0, 1}}, {1, 1}));
  auto v = certify_glauber(cache);
  EXPECT_EQ(find(v, "glauber_gap_upper").verdict, Verdict::Vacuous);
}

TEST(Certificates, GlauberAndTrickleOnAppendix) {
  for (int k = 2; k <= 4; ++k) {
    InstanceCache cache(single_edge_coloring(3, k));
    auto g = certify_glauber(cache);
    EXPECT_EQ(find(g, "glauber_gap_lower").verdict, Verdict::Pass);
    EXPECT_EQ(find(g, "glauber_gap_upper").verdict, Verdict::Pass);
    auto t = certify_downtrickle(cache);
    expect_no_failures(t);
    // Link expansion bound is tight at the empty pinning: 1/k = (n-1) gamma_0.
    EXPECT_NEAR(2 * cache.gamma()[0], 1.0 / k, 1e-10);
    EXPECT_NEAR(find(t, "colored_walk_from_link_expansion").measured, 1.0 / k, 1e-10);
  }
}

TEST(Certificates, TrickleOnProductAndRandom) {
  InstanceCache prod(uniform_product({2, 2, 3}));
  for (const auto& c : certify_downtrickle(prod)) EXPECT_LE(c.measured, 1e-10);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto r = random_partite({3, 3, 3}, 0.7, seed);
    InstanceCache cache(r.complex);
    expect_no_failures(certify_downtrickle(cache));
  }
}

TEST(Certificates, MixingBounds) {
  auto P = uniform_product({2, 3});
  auto mb = mixing_bounds(P, {0, 1}, 0.01);
  EXPECT_NEAR(mb.gap, 1.0, 1e-12);
  EXPECT_NEAR(mb.spectral_bound, std::log(1.0 / (0.01 * std::sqrt(1.0 / 6))), 1e-10);
  EXPECT_FALSE(mb.entropy_bound.has_value());

  auto X = single_edge_coloring(2, 3);
  auto mx = mixing_bounds(X, {0, 1}, 0.01, 0.5);
  EXPECT_NEAR(mx.gap, 2.0 / 3, 1e-12);
  EXPECT_NEAR(mx.spectral_bound, std::log(1.0 / (0.01 * std::sqrt(1.0 / 12))) * 3 / 2, 1e-10);
  ASSERT_TRUE(mx.entropy_bound.has_value());
  EXPECT_NEAR(*mx.entropy_bound, std::log(std::log(1200.0)) / 0.5, 1e-10);

  try {
    mixing_bounds(disconnected(), {0, 1}, 0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroGap);
  }
}

TEST(Certificates, SuiteIsDeterministicAndPasses) {
  auto X = random_partite({3, 3, 3}, 0.7, 42).complex;
  auto a = certify_suite(X);
  auto b = certify_suite(X);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(to_json(a[k]).dump(), to_json(b[k]).dump());
  expect_no_failures(a);
  const auto& ecc = find(a, "sweep_entropy_contraction");
  EXPECT_EQ(ecc.verdict, Verdict::Vacuous);
  EXPECT_EQ(ecc.context["skipped"], "InstanceTooLarge");
}

TEST(Certificates, SuiteSelection) {
  auto X = single_edge_coloring(2, 2);
  SuiteOptions opts;
  opts.suite = "glauber";
  auto v = certify_suite(X, opts);
  ASSERT_EQ(v.size(), 2u);
  opts.suite = "csv";
  opts.all_orders = true;
  EXPECT_EQ(certify_suite(X, opts).size(), 8u);
  opts.suite = "bogus";
  EXPECT_THROW(certify_suite(X, opts), Error);
}

TEST(Certificates, JsonShape) {
  InstanceCache cache(single_edge_coloring(2, 2));
  auto j = to_json(certify_glauber(cache)[0]);
  for (const char* key : {"theorem_id", "measured", "bound", "direction", "tolerance", "verdict", "inputs_digest"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["direction"], ">=");
  EXPECT_EQ(side_set_label({0, 2}), "{1,3}");
}
