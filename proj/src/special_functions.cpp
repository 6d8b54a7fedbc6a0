#include "logistic/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "logistic/errors.hpp"

namespace logistic {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxGammaIterations = 10'000'000;

std::string describe(const char* op, double a, double z) {
  std::ostringstream os;
  os.precision(17);
  os << op << "(" << a << ", " << z << ")";
  return os.str();
}

void require_finite(const char* op, double a, double z) {
  if (!std::isfinite(a) || !std::isfinite(z)) {
    throw DomainError(describe(op, a, z) + ": non-finite argument");
  }
}

// log of the series part of gamma(a, z): sum_{n>=0} z^n / (a (a+1) ... (a+n)).
double log_lower_gamma_series(double a, double z) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int i = 0; i < kMaxGammaIterations; ++i) {
    ap += 1.0;
    del *= z / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kEps) {
      return std::log(sum);
    }
  }
  throw ConvergenceError(describe("incomplete_gamma_lower", a, z) +
                         ": series did not converge");
}

// log of the continued fraction part of Gamma(a, z), modified Lentz.
double log_upper_gamma_fraction(double a, double z) {
  double b = z + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxGammaIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) {
      return std::log(h);
    }
  }
  throw ConvergenceError(describe("incomplete_gamma_upper", a, z) +
                         ": continued fraction did not converge");
}

void check_gamma_args(const char* op, double a, double z) {
  require_finite(op, a, z);
  if (a <= 0.0) throw DomainError(describe(op, a, z) + ": requires a > 0");
  if (z < 0.0) throw DomainError(describe(op, a, z) + ": requires z >= 0");
}

double half_log_two_pi_a(double A) { return 0.5 * std::log(2.0 * std::numbers::pi * A); }

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::ExactSeries: return "ExactSeries";
    case Regime::RegimeI: return "I";
    case Regime::RegimeII: return "II";
    case Regime::RegimeIII: return "III";
    case Regime::RegimeIV: return "IV";
  }
  return "?";
}

HypergeomValue hypergeom_series(double A, double z, double rel_tol) {
  require_finite("hypergeom_series", A, z);
  if (A <= 0.0) throw DomainError(describe("hypergeom_series", A, z) + ": requires A > 0");
  if (z < 0.0) throw DomainError(describe("hypergeom_series", A, z) + ": requires z >= 0");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw DomainError("hypergeom_series: rel_tol must lie in (0, 1)");
  }
  if (z == 0.0) return {0.0, {Regime::ExactSeries, std::nullopt}};

  // Terms and sum are stored relative to exp(log_scale); Neumaier compensation.
  double log_scale = 0.0;
  double term = 1.0;
  double sum = 1.0;
  double comp = 0.0;
  for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
    term *= z / (A + static_cast<double>(n));
    const double t = sum + term;
    comp += (sum >= term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    if (sum > 1e280) {
      log_scale += std::log(sum);
      term /= sum;
      comp /= sum;
      sum = 1.0;
    }
    const double r_next = z / (A + static_cast<double>(n + 1));
    if (r_next < 1.0 && term * r_next / (1.0 - r_next) < rel_tol * sum) {
      return {log_scale + std::log(sum + comp), {Regime::ExactSeries, std::nullopt}};
    }
  }
  throw ConvergenceError(describe("hypergeom_series", A, z) + ": no convergence within " +
                         std::to_string(kMaxSeriesTerms) + " terms");
}

double hypergeom_regime_log(double A, double z, Regime regime) {
  require_finite("hypergeom_regime_log", A, z);
  if (A <= 1.0) throw DomainError(describe("hypergeom_regime_log", A, z) + ": requires A > 1");
  if (z < 0.0) throw DomainError(describe("hypergeom_regime_log", A, z) + ": requires z >= 0");
  const double h = (z - A) / std::sqrt(A);
  switch (regime) {
    case Regime::RegimeI:
      if (z >= A) throw DomainError(describe("regime I", A, z) + ": requires z < A");
      return std::log(A) - std::log(A - z);
    case Regime::RegimeII:
      if (z <= 0.0) throw DomainError(describe("regime II", A, z) + ": requires z > 0");
      return (z - A + 1.0) + (A - 1.0) * std::log((A - 1.0) / z) + half_log_two_pi_a(A);
    case Regime::RegimeIII:
      if (h < 0.0) throw DomainError(describe("regime III", A, z) + ": requires z >= A");
      return 0.5 * h * h + log_normal_cdf(h) + half_log_two_pi_a(A);
    case Regime::RegimeIV:
      if (h > 0.0) throw DomainError(describe("regime IV", A, z) + ": requires z <= A");
      return 0.5 * h * h + log_normal_cdf(h) + half_log_two_pi_a(A);
    case Regime::ExactSeries:
      return hypergeom_series(A, z).log_value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

HypergeomValue hypergeom_asymptotic(double A, double z, double h_threshold) {
  require_finite("hypergeom_asymptotic", A, z);
  if (z < 0.0) throw DomainError(describe("hypergeom_asymptotic", A, z) + ": requires z >= 0");
  if (!(h_threshold > 0.0)) throw DomainError("hypergeom_asymptotic: h_threshold must be > 0");
  const double h = (z - A) / std::sqrt(A);
  Regime kind;
  if (h < -h_threshold) {
    kind = Regime::RegimeI;
  } else if (h < 0.0) {
    kind = Regime::RegimeIV;
  } else if (h <= h_threshold) {
    kind = Regime::RegimeIII;
  } else {
    kind = Regime::RegimeII;
  }
  HypergeomValue out{hypergeom_regime_log(A, z, kind), {kind, std::nullopt}};
  if (kind == Regime::RegimeIII || kind == Regime::RegimeIV) out.regime.h = std::abs(h);
  return out;
}

double incomplete_gamma_lower(double a, double z) {
  check_gamma_args("incomplete_gamma_lower", a, z);
  if (z == 0.0) return -std::numeric_limits<double>::infinity();
  if (z < a + 1.0) {
    return a * std::log(z) - z + log_lower_gamma_series(a, z);
  }
  const double log_full = std::lgamma(a);
  const double log_upper = a * std::log(z) - z + log_upper_gamma_fraction(a, z);
  return log_full + std::log1p(-std::exp(log_upper - log_full));
}

double incomplete_gamma_upper(double a, double z) {
  check_gamma_args("incomplete_gamma_upper", a, z);
  const double log_full = std::lgamma(a);
  if (z == 0.0) return log_full;
  if (z < a + 1.0) {
    const double log_lower = a * std::log(z) - z + log_lower_gamma_series(a, z);
    return log_full + std::log1p(-std::exp(log_lower - log_full));
  }
  return a * std::log(z) - z + log_upper_gamma_fraction(a, z);
}

HypergeomValue hypergeom_via_gamma(double A, double z) {
  require_finite("hypergeom_via_gamma", A, z);
  if (A <= 2.0) throw DomainError(describe("hypergeom_via_gamma", A, z) + ": requires A > 2");
  if (z <= 0.0) throw DomainError(describe("hypergeom_via_gamma", A, z) + ": requires z > 0");
  const double log_value =
      z + std::log(A - 1.0) - (A - 1.0) * std::log(z) + incomplete_gamma_lower(A - 1.0, z);
  return {log_value, {Regime::ExactSeries, std::nullopt}};
}

double normal_cdf(double h) { return 0.5 * std::erfc(-h / std::numbers::sqrt2); }

double log_normal_cdf(double h) {
  if (h > -30.0) return std::log(normal_cdf(h));
  // Mills ratio expansion of the lower tail.
  const double inv2 = 1.0 / (h * h);
  const double series = 1.0 - inv2 + 3.0 * inv2 * inv2 - 15.0 * inv2 * inv2 * inv2;
  return -0.5 * h * h - 0.5 * std::log(2.0 * std::numbers::pi) - std::log(-h) + std::log(series);
}

}  // namespace logistic
