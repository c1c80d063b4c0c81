#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "permlab/bounds.hpp"
#include "permlab/exact.hpp"
#include "permlab/linear_maps.hpp"
#include "permlab/monte_carlo.hpp"
#include "permlab/convolution.hpp"

using namespace permlab;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Usage;
}

}  // namespace

TEST(Alpha, Values) {
  EXPECT_NEAR(alpha(3), 0.4399, 5e-5);
  EXPECT_NEAR(alpha(2), 0.7112, 5e-5);
  for (std::uint64_t q : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u}) EXPECT_LT(alpha(q), 0.45) << q;
  // Product truncated far beyond the tolerance.
  double product = 1;
  for (int i = 1; i < 200; ++i) product *= 1 - std::pow(3.0, -i);
  EXPECT_NEAR(alpha(3), 1 - product, 1e-12);
}

TEST(ExactDet, ClosedForm) {
  EXPECT_EQ(exact_det_singular_prob(1, 3), Rational(1, 3));
  EXPECT_EQ(exact_det_singular_prob(2, 2), Rational(5, 8));
  EXPECT_EQ(exact_det_singular_prob(0, 5), Rational(0));
  EXPECT_NEAR(static_cast<double>(exact_det_singular_prob(40, 3)), alpha(3), 1e-12);
  EXPECT_DOUBLE_EQ(det_survival_product(3, 5, 4), 1.0);
}

TEST(Enumerate, TwoByTwoPermanent) {
  const ExactCounts c = enumerate_exact(2, 3, Statistic::Permanent);
  EXPECT_EQ(c.total, 81u);
  EXPECT_EQ(c.counts[0], 33u);
  EXPECT_EQ(c.probability(0), Rational(1, 3) + Rational(1, 9) - Rational(1, 27));
}

TEST(Enumerate, MatchesPermutationSumOracle) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const Field f = Field::make(q);
    for (std::size_t n = 0; n <= (q == 2 ? 4u : 2u); ++n) {
      std::vector<std::uint64_t> per(q, 0), det(q, 0);
      oracle::for_each_matrix(f, n, n, [&](const Matrix& a) {
        ++per[oracle::per(a)];
        ++det[oracle::det(a)];
      });
      EXPECT_EQ(enumerate_exact(n, q, Statistic::Permanent).counts, per) << q << " " << n;
      EXPECT_EQ(enumerate_exact(n, q, Statistic::Determinant).counts, det) << q << " " << n;
    }
  }
}

TEST(Enumerate, DeterminantMatchesClosedForm) {
  for (auto [n, q] : std::vector<std::pair<std::size_t, std::uint64_t>>{{2, 3}, {3, 3}, {2, 5}, {4, 2}, {5, 2}, {2, 9}}) {
    const ExactCounts c = enumerate_exact(n, q, Statistic::Determinant);
    EXPECT_EQ(c.probability(0), exact_det_singular_prob(n, q)) << n << " " << q;
  }
}

TEST(Enumerate, NonzeroPermanentValuesEquidistributed) {
  for (auto [n, q] : std::vector<std::pair<std::size_t, std::uint64_t>>{{2, 3}, {3, 3}, {2, 5}, {2, 7}, {2, 9}}) {
    const ExactCounts c = enumerate_exact(n, q, Statistic::Permanent);
    for (Value z = 2; z < q; ++z) EXPECT_EQ(c.counts[z], c.counts[1]) << n << " " << q;
  }
}

TEST(Enumerate, WorkerCountDoesNotMatter) {
  EXPECT_EQ(enumerate_exact(3, 3, Statistic::Permanent, 1).counts,
            enumerate_exact(3, 3, Statistic::Permanent, 4).counts);
  const auto mu = make_distribution(Field::make(3), {0.6, 0.3, 0.1});
  EXPECT_EQ(enumerate_weighted(3, mu, Statistic::Permanent, 1), enumerate_weighted(3, mu, Statistic::Permanent, 3));
}

TEST(Enumerate, WeightedMatchesBruteForce) {
  const Field f = Field::make(3);
  const auto mu = make_distribution(f, {0.6, 0.3, 0.1});
  std::vector<double> per(3, 0), det(3, 0);
  oracle::for_each_matrix(f, 2, 2, [&](const Matrix& a) {
    double w = 1;
    for (Value v : a.data()) w *= mu.weight(v);
    per[oracle::per(a)] += w;
    det[oracle::det(a)] += w;
  });
  const auto p = enumerate_weighted(2, mu, Statistic::Permanent);
  const auto d = enumerate_weighted(2, mu, Statistic::Determinant);
  for (Value z = 0; z < 3; ++z) {
    EXPECT_NEAR(p[z], per[z], 1e-14);
    EXPECT_NEAR(d[z], det[z], 1e-14);
  }
  // Uniform weights reproduce the exact counts.
  const auto u = enumerate_weighted(3, uniform_distribution(f), Statistic::Permanent);
  const auto c = enumerate_exact(3, 3, Statistic::Permanent);
  for (Value z = 0; z < 3; ++z) EXPECT_NEAR(u[z], static_cast<double>(c.probability(z)), 1e-12);
}

TEST(Enumerate, SizeCap) {
  EXPECT_EQ(code_of([] { enumerate_exact(5, 3, Statistic::Permanent); }), ErrorCode::SizeCap);
  EXPECT_TRUE(enumeration_feasible(4, 3));
  EXPECT_FALSE(enumeration_feasible(6, 2));
}

TEST(Wilson, Interval) {
  const Interval all = wilson_interval(100, 100);
  EXPECT_DOUBLE_EQ(all.hi, 1.0);
  EXPECT_LT(all.lo, 1.0);
  const Interval none = wilson_interval(0, 100);
  EXPECT_DOUBLE_EQ(none.lo, 0.0);
  // Reference value for 30 / 100 at 99%.
  const Interval mid = wilson_interval(30, 100);
  EXPECT_NEAR(mid.lo, 0.1974607, 1e-6);
  EXPECT_NEAR(mid.hi, 0.4274276, 1e-6);
}

TEST(MonteCarlo, AlwaysTrueIsExactlyOne) {
  const auto e = mc_probability(always(), uniform_distribution(Field::make(3)), {4, 500, 1, 1});
  EXPECT_EQ(e.point, 1.0);
  EXPECT_EQ(e.successes, 500u);
  EXPECT_LE(e.lo, e.point);
  EXPECT_EQ(e.hi, 1.0);
}

TEST(MonteCarlo, TwoByTwoPermanentCoversExactValue) {
  const auto e = mc_probability(per_equals(0), uniform_distribution(Field::make(3)), {2, 1'000'000, 17, 2});
  const double exact = 11.0 / 27;
  EXPECT_NEAR(e.point, exact, 4 * e.sigma_at(exact));
  EXPECT_LE(e.lo, e.point);
  EXPECT_GE(e.hi, e.point);
}

TEST(MonteCarlo, DeterministicAcrossWorkerCounts) {
  const auto mu = make_distribution(Field::make(5), {0.4, 0.3, 0.1, 0.1, 0.1});
  const auto a = mc_probability(det_equals(0), mu, {5, 20000, 3, 1});
  const auto b = mc_probability(det_equals(0), mu, {5, 20000, 3, 4});
  EXPECT_EQ(a.successes, b.successes);
  EXPECT_EQ(mc_value_counts(Statistic::Permanent, mu, {4, 5000, 9, 1}),
            mc_value_counts(Statistic::Permanent, mu, {4, 5000, 9, 3}));
}

TEST(MonteCarlo, EventCombinators) {
  const Field f = Field::make(3);
  const auto dist = uniform_distribution(f);
  const SamplingPlan plan{3, 3000, 5, 1};
  const auto p = mc_probability(per_equals(0), dist, plan);
  const auto notp = mc_probability(negation(per_equals(0)), dist, plan);
  EXPECT_EQ(p.successes + notp.successes, 3000u);
  const auto both_ = mc_probability(both(per_equals(0), det_equals(0)), dist, plan);
  const auto either_ = mc_probability(either(per_equals(0), det_equals(0)), dist, plan);
  const auto d = mc_probability(det_equals(0), dist, plan);
  EXPECT_EQ(both_.successes + either_.successes, p.successes + d.successes);
  EXPECT_EQ(mc_probability(occurs_E(0), dist, plan).successes, notp.successes);
}

TEST(Conditional, AlwaysTrueReproducesUnconditional) {
  const auto dist = uniform_distribution(Field::make(5));
  const SamplingPlan plan{4, 5000, 8, 2};
  const auto cond = conditional_probability(always(), per_equals(0), dist, plan);
  const auto plain = mc_probability(per_equals(0), dist, plan);
  EXPECT_EQ(cond, plain);
}

TEST(Conditional, TooRare) {
  const auto dist = uniform_distribution(Field::make(3));
  EXPECT_EQ(code_of([&] { conditional_probability(negation(always()), always(), dist, {3, 1000, 1, 1}); }),
            ErrorCode::ConditioningTooRare);
}

TEST(Conditional, RankConditionedChain) {
  const auto dist = uniform_distribution(Field::make(3));
  const auto e = conditional_probability(rank_H_at_least(3), occurs_E(1), dist, {7, 20000, 21, 1});
  const double bound = 1 - 1.0 / 27;
  EXPECT_GE(e.point, bound - 4 * e.sigma_at(bound));
  EXPECT_GE(e.samples, 1000u);
}

TEST(Chain, UnconditionalProductBound) {
  const auto dist = uniform_distribution(Field::make(3));
  const std::size_t n = 6;
  for (std::size_t s = 1; s <= 3; ++s) {
    const auto e = mc_probability(occurs_E(s - 1), dist, {n, 20000, 30 + s, 1});
    const double bound = det_survival_product(3, s, n);
    EXPECT_GE(e.point, bound - 4 * e.sigma_at(bound)) << s;
  }
}

TEST(LinearMaps, Examples) {
  const Field f = Field::make(3);
  const auto mu = make_distribution(f, {0.6, 0.3, 0.1});
  const Matrix zero(f, 3, 4);
  const std::vector<Value> z0(3, 0);
  EXPECT_NEAR(brute_force_linear_map(zero, mu, z0), 1.0, 1e-12);

  const std::vector<Value> h{1, 2, 0, 1, 1};
  const Matrix row = Matrix::from_rows(f, {h});
  const std::vector<Value> zero1{0};
  EXPECT_NEAR(brute_force_linear_map(row, mu, zero1), exact_sum_distribution(mu, h).probabilities[0], 1e-12);
}

TEST(LinearMaps, SimpleBoundOnRandomInstances) {
  const Field f = Field::make(3);
  const auto mu = make_distribution(f, {0.6, 0.3, 0.1});
  RandomStream rs(12);
  for (int t = 0; t < 30; ++t) {
    const Matrix m = oracle::random_matrix(f, 4, 6, rs);
    const double bound = std::pow(mu.rho(), static_cast<double>(rank(m)));
    double total = 0;
    for (const auto& [image, p] : linear_map_distribution(m, mu)) {
      ASSERT_LE(p, bound + 1e-12);
      total += p;
    }
    ASSERT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(LinearMaps, HammingVariantOnBlockInstances) {
  // D disjoint rank-r principal blocks along the diagonal.
  const Field f = Field::make(3);
  const auto mu = make_distribution(f, {0.6, 0.3, 0.1});
  const std::size_t D = 4, r = 3, n = D * r;
  Matrix m(f, n, n);
  RandomStream rs(13);
  for (std::size_t d = 0; d < D; ++d) {
    Matrix block(f, r, r);
    do {
      block = oracle::random_matrix(f, r, r, rs);
    } while (rank(block) != r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) m.set(d * r + i, d * r + j, block(i, j));
  }
  // At most ell = 1 nonzero entry forces D - 1 blocks to vanish, each with
  // probability at most rho^r.
  const double p_block = std::pow(mu.rho(), static_cast<double>(r));
  const double p = prob_at_most_nonzero(m, mu, 1);
  EXPECT_LE(p, D * std::pow(p_block, D - 1.0) + 1e-12);
  EXPECT_LE(p, 2 * std::pow(3.0, -static_cast<double>(r)) + 0.01);
  EXPECT_NEAR(prob_at_most_nonzero(m, mu, n), 1.0, 1e-9);
}

TEST(LinearMaps, SizeCap) {
  const Field f = Field::make(3);
  EXPECT_EQ(code_of([&] { linear_map_distribution(Matrix(f, 1, 15), uniform_distribution(f)); }),
            ErrorCode::SizeCap);
}

TEST(Bounds, ExactThreeByThree) {
  BoundsRequest r;
  r.claims = {Claim::TrivialLowerBound, Claim::AsymptoticP, Claim::SeparationAllP};
  r.n = 3;
  const auto vs = check_bounds(uniform_distribution(Field::make(3)), r);
  ASSERT_EQ(vs.size(), 3u);
  for (const auto& v : vs) {
    EXPECT_TRUE(v.exact);
    EXPECT_EQ(v.samples, 19683u);
    EXPECT_EQ(v.successes, 8163u);
    EXPECT_EQ(v.verdict, Verdict::Supported) << to_string(v.claim);
  }
}

TEST(Bounds, Refusals) {
  BoundsRequest r;
  r.claims = {Claim::AsymptoticP};
  r.n = 2;
  EXPECT_EQ(code_of([&] { check_bounds(uniform_distribution(Field::make(3)), r); }), ErrorCode::BadN);
  r.n = 3;
  EXPECT_EQ(code_of([&] { check_bounds(uniform_distribution(Field::make(4)), r); }), ErrorCode::CharacteristicTwo);
  EXPECT_EQ(code_of([&] { check_bounds(make_distribution(Field::make(3), {0.6, 0.3, 0.1}), r); }),
            ErrorCode::BadConfig);
  r.claims = {Claim::AsymptoticGeneral};
  EXPECT_EQ(code_of([&] { check_bounds(uniform_distribution(Field::make(9)), r); }), ErrorCode::NonPrimeField);
  EXPECT_EQ(code_of([&] { check_bounds(make_distribution(Field::make(3), {1, 0, 0}), r); }),
            ErrorCode::DegenerateDistribution);
}

TEST(Bounds, VerdictRules) {
  double margin = 0;
  EXPECT_EQ(judge(0.4, 0.5, 0.3, 0.6, false, true, margin), Verdict::Supported);
  EXPECT_NEAR(margin, 0.1, 1e-15);
  EXPECT_EQ(judge(0.2, 0.4, 0.3, 0.6, false, true, margin), Verdict::Inconclusive);
  EXPECT_EQ(judge(0.1, 0.2, 0.3, 0.6, false, true, margin), Verdict::Violated);
  EXPECT_LT(margin, 0);
  EXPECT_EQ(judge(0.1, 0.2, 0.3, 0.6, false, false, margin), Verdict::Inconclusive);
  EXPECT_EQ(judge(0.5, 0.6, 0.0, 0.6, true, true, margin), Verdict::Inconclusive);
  EXPECT_EQ(judge(0.6, 0.6, 0.0, 0.6, true, true, margin), Verdict::Violated);
}

TEST(Bounds, GeneralClaimsCoverEveryValue) {
  BoundsRequest r;
  r.claims = {Claim::SeparationGeneral, Claim::AsymptoticGeneral};
  r.n = 3;
  const auto mu = make_distribution(Field::make(5), {0.4, 0.3, 0.1, 0.1, 0.1});
  const auto vs = check_bounds(mu, r);
  ASSERT_EQ(vs.size(), 10u);
  for (const auto& v : vs) {
    EXPECT_NE(v.verdict, Verdict::Violated);
    if (v.claim == Claim::SeparationGeneral) EXPECT_NEAR(v.delta, delta_p(5), 1e-15);
  }
  EXPECT_NEAR(delta_p(3), (1 - 2 * alpha(3)) / 90, 1e-15);
}

TEST(Bounds, MonteCarloPathIsReproducible) {
  BoundsRequest r;
  r.claims = {Claim::TrivialLowerBound, Claim::SeparationAllP};
  r.n = 6;
  r.samples = 5000;
  r.seed = 4;
  const auto dist = uniform_distribution(Field::make(3));
  const auto a = check_bounds(dist, r);
  r.workers = 3;
  const auto b = check_bounds(dist, r);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].successes, b[i].successes);
    EXPECT_FALSE(a[i].exact);
    EXPECT_NE(a[i].verdict, Verdict::Violated);
  }
}
