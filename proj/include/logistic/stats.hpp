#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace logistic {

struct SampleSummary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;
  std::size_t n = 0;
};

SampleSummary summarize(std::span<const double> samples);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double dof = 0.0;  // chi-square only
};

/// One-sample Kolmogorov-Smirnov test against Exp(rate).
TestResult ks_test_exponential(std::vector<double> samples, double rate);

/// Two-sided exact binomial test of `successes` out of `trials` against p.
TestResult binomial_test(std::uint64_t successes, std::uint64_t trials, double p);

/// Two-sample chi-square homogeneity test on integer-valued samples. Adjacent
/// values are pooled until every bin has an expected count of at least
/// min_expected in both samples.
TestResult chi_square_two_sample(std::span<const std::int64_t> a,
                                 std::span<const std::int64_t> b, double min_expected = 5.0);

/// 1/2 sum |p_i - q_i|, padding the shorter vector with zeros.
double total_variation(std::span<const double> p, std::span<const double> q);

/// Ordinary least-squares slope and intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> v);

}  // namespace logistic
