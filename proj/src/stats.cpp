#include "logistic/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "logistic/errors.hpp"
#include "logistic/log_math.hpp"

namespace logistic {

SampleSummary summarize(std::span<const double> samples) {
  SampleSummary s;
  s.n = samples.size();
  if (s.n == 0) throw DomainError("summarize: empty sample");
  CompensatedSum sum;
  for (double v : samples) sum.add(v);
  s.mean = sum.value() / static_cast<double>(s.n);
  if (s.n < 2) return s;
  CompensatedSum sq;
  for (double v : samples) sq.add((v - s.mean) * (v - s.mean));
  s.variance = sq.value() / static_cast<double>(s.n - 1);
  s.std_error = std::sqrt(s.variance / static_cast<double>(s.n));
  return s;
}

namespace {

// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_tail(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

TestResult ks_test_exponential(std::vector<double> samples, double rate) {
  if (samples.empty()) throw DomainError("ks_test_exponential: empty sample");
  if (!(rate > 0.0)) throw DomainError("ks_test_exponential: requires rate > 0");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = -std::expm1(-rate * samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  const double sn = std::sqrt(n);
  return {d, kolmogorov_tail((sn + 0.12 + 0.11 / sn) * d), 0.0};
}

TestResult binomial_test(std::uint64_t successes, std::uint64_t trials, double p) {
  if (trials == 0 || successes > trials) throw DomainError("binomial_test: bad counts");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("binomial_test: requires 0 < p < 1");
  const boost::math::binomial_distribution<double> dist(static_cast<double>(trials), p);
  const double k = static_cast<double>(successes);
  const double lower = boost::math::cdf(dist, k);
  const double upper = successes == 0 ? 1.0 : boost::math::cdf(complement(dist, k - 1.0));
  return {k / static_cast<double>(trials), std::min(1.0, 2.0 * std::min(lower, upper)), 0.0};
}

TestResult chi_square_two_sample(std::span<const std::int64_t> a,
                                 std::span<const std::int64_t> b, double min_expected) {
  if (a.empty() || b.empty()) throw DomainError("chi_square_two_sample: empty sample");
  std::map<std::int64_t, std::pair<double, double>> counts;
  for (auto v : a) counts[v].first += 1.0;
  for (auto v : b) counts[v].second += 1.0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;

  std::vector<std::pair<double, double>> bins;
  std::pair<double, double> open{0.0, 0.0};
  auto enough = [&](const std::pair<double, double>& c) {
    const double tot = c.first + c.second;
    return tot * na / n >= min_expected && tot * nb / n >= min_expected;
  };
  for (const auto& [value, c] : counts) {
    open.first += c.first;
    open.second += c.second;
    if (enough(open)) {
      bins.push_back(open);
      open = {0.0, 0.0};
    }
  }
  if (open.first + open.second > 0.0) {
    if (bins.empty()) {
      bins.push_back(open);
    } else {
      bins.back().first += open.first;
      bins.back().second += open.second;
    }
  }
  if (bins.size() < 2) return {0.0, 1.0, 0.0};

  double stat = 0.0;
  for (const auto& [ca, cb] : bins) {
    const double tot = ca + cb;
    const double ea = tot * na / n;
    const double eb = tot * nb / n;
    stat += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
  }
  const double dof = static_cast<double>(bins.size() - 1);
  return {stat, boost::math::gamma_q(0.5 * dof, 0.5 * stat), dof};
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  const std::size_t n = std::max(p.size(), q.size());
  CompensatedSum sum;
  for (std::size_t i = 0; i < n; ++i) {
    const double pi = i < p.size() ? p[i] : 0.0;
    const double qi = i < q.size() ? q[i] : 0.0;
    sum.add(std::abs(pi - qi));
  }
  return 0.5 * sum.value();
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_line: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_line: x values are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

double median(std::vector<double> v) {
  if (v.empty()) throw DomainError("median: empty sample");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

}  // namespace logistic
