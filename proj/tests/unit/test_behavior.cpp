#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "builders.hpp"
#include "decharge/behavior.hpp"
#include "decharge/errors.hpp"
#include "oracles.hpp"

using namespace decharge;
using test::request;
using test::station;

TEST(RecommendBeta, DirectSubstitution) {
  EXPECT_DOUBLE_EQ(recommend_beta(6, 12, 0.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(recommend_beta(40, 10, 0.0, 1.0), 1.0);
  EXPECT_NEAR(recommend_beta(6, 10, 0.2, 1.0), 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(recommend_beta(0, 10, 0.0, 1.0), 0.0);
}

TEST(RecommendBeta, RejectsBadArguments) {
  EXPECT_THROW(recommend_beta(5, 0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(recommend_beta(5, 3, 0.0, 0.0), std::invalid_argument);
}

TEST(RecommendBeta, UsesIdleSlotsInRange) {
  std::vector<ChargingStation> st{station(0, 0, 0, {50, 200, 200}), station(1, 40, 0, {0, 0, 0})};
  EXPECT_DOUBLE_EQ(recommend_beta(request(1, 100, 10, 0, 0, 5), st, 4, 0.0, 1.0), 0.25);
}

TEST(RecommendBeta, MonotoneAndBounded) {
  for (int slots = 0; slots <= 60; slots += 3) {
    for (int count = 1; count <= 40; count += 3) {
      for (double w = 0.0; w <= 1.0; w += 0.25) {
        const double b = recommend_beta(slots, count, w, 0.7);
        EXPECT_GE(b, 0.0);
        EXPECT_LE(b, 1.0);
        EXPECT_GE(recommend_beta(slots + 1, count, w, 0.7), b);
        EXPECT_LE(recommend_beta(slots, count + 1, w, 0.7), b);
        EXPECT_LE(recommend_beta(slots, count, std::min(1.0, w + 0.1), 0.7), b);
        EXPECT_LE(recommend_beta(slots / 2, count, w, 0.7), b);
      }
    }
  }
}

TEST(DemandGrowth, ClampedRelativeIncrease) {
  EXPECT_DOUBLE_EQ(demand_growth(10, 12), 0.2);
  EXPECT_DOUBLE_EQ(demand_growth(10, 5), 0.0);
  EXPECT_DOUBLE_EQ(demand_growth(10, 50), 1.0);
  EXPECT_DOUBLE_EQ(demand_growth(0, 5), 0.0);
}

TEST(FitPredictor, ExactLagOneDoubling) {
  std::vector<std::vector<double>> history{{1, 2, 4, 8, 16}, {3, 6, 12, 24, 48}};
  const auto p = fit_predictor(history, 1);
  ASSERT_EQ(p.coefficients.size(), 1u);
  EXPECT_NEAR(p.coefficients[0], 2.0, 1e-9);
  EXPECT_NEAR(p.intercept, 0.0, 1e-9);
  EXPECT_NEAR(p.residual_rms, 0.0, 1e-9);
  EXPECT_FALSE(p.fallback_to_mean);
  EXPECT_NEAR(p.predict(std::vector<double>{5}), 10.0, 1e-9);
}

TEST(FitPredictor, ConstantHistoryPredictsConstant) {
  std::vector<std::vector<double>> history(3, std::vector<double>(6, 7.0));
  const auto p = fit_predictor(history, 2);
  EXPECT_TRUE(p.fallback_to_mean);
  EXPECT_NEAR(p.predict(std::vector<double>{7, 7}), 7.0, 1e-12);
}

TEST(FitPredictor, NoisyAutoregressionMatchesNormalEquations) {
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> noise(0.0, 1.5);
  std::vector<std::vector<double>> history;
  for (int d = 0; d < 8; ++d) {
    std::vector<double> day{10.0 + d};
    for (int t = 1; t < 24; ++t) day.push_back(3.0 + 0.8 * day.back() + noise(gen));
    history.push_back(day);
  }
  for (int lags : {1, 2, 3}) {
    const auto p = fit_predictor(history, lags);
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    for (const auto& day : history) {
      for (std::size_t t = static_cast<std::size_t>(lags) - 1; t + 1 < day.size(); ++t) {
        std::vector<double> row;
        for (int i = 0; i < lags; ++i) row.push_back(day[t - static_cast<std::size_t>(i)]);
        x.push_back(row);
        y.push_back(day[t + 1]);
      }
    }
    const auto b = oracle::ols_normal_equations(x, y);
    EXPECT_NEAR(p.intercept, b[0], 1e-9);
    for (int i = 0; i < lags; ++i) EXPECT_NEAR(p.coefficients[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i) + 1], 1e-9);
  }
}

TEST(FitPredictor, RejectsShortHistory) {
  EXPECT_THROW(fit_predictor({{1, 2, 3, 4}}, 3), ValidationError);
  EXPECT_THROW(fit_predictor({{1, 2, 3}, {1, 2, 3}}, 3), ValidationError);
  EXPECT_THROW(fit_predictor({{1, 2, 3}, {1, 2, 3}}, 0), ValidationError);
}

TEST(Predictor, PredictClampsAndPadsMissingLags) {
  DemandPredictor p;
  p.lags = 2;
  p.intercept = -10;
  p.coefficients = {1.0, 0.5};
  EXPECT_DOUBLE_EQ(p.predict(std::vector<double>{4, 2}), 0.0);
  p.intercept = 1;
  EXPECT_DOUBLE_EQ(p.predict(std::vector<double>{4}), 5.0);
}

TEST(Predictor, TextRoundTrip) {
  std::vector<std::vector<double>> history{{1, 3, 2, 5, 4, 6}, {2, 2, 3, 4, 6, 5}, {1, 1, 2, 3, 5, 8}};
  const auto p = fit_predictor(history, 2);
  std::stringstream s;
  write_predictor(s, p);
  const auto q = read_predictor(s);
  EXPECT_EQ(q.lags, p.lags);
  EXPECT_EQ(q.intercept, p.intercept);
  EXPECT_EQ(q.coefficients, p.coefficients);
  EXPECT_EQ(q.residual_rms, p.residual_rms);
  EXPECT_EQ(q.samples, p.samples);
}

TEST(Predictor, ReadRejectsBrokenDocuments) {
  std::stringstream missing("lags = 2\nintercept = 1\n");
  EXPECT_THROW(read_predictor(missing), ParseError);
  std::stringstream mismatch("lags = 2\nintercept = 1\ncoefficients = 1\n");
  EXPECT_THROW(read_predictor(mismatch), ValidationError);
  std::stringstream garbage("lags 2\n");
  EXPECT_THROW(read_predictor(garbage), ParseError);
}
