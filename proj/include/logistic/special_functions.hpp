#pragma once

// The alpha = 1 corner of the confluent hypergeometric function,
//
//     F(A, z) = 1 + z/A + z^2/(A(A+1)) + ... + z^n/(A(A+1)...(A+n-1)) + ...
//
// together with the lower incomplete gamma function it reduces to and the
// large-A asymptotic regimes. Every F value is carried as its natural log:
// for z > A the function grows like e^{z-A} and leaves double range quickly.

#include <cstddef>
#include <optional>
#include <string_view>

namespace logistic {

enum class Regime { ExactSeries, RegimeI, RegimeII, RegimeIII, RegimeIV };

std::string_view to_string(Regime regime);

struct RegimeTag {
  Regime kind = Regime::ExactSeries;
  // |z - A| / sqrt(A); present only for RegimeIII and RegimeIV.
  std::optional<double> h;
};

struct HypergeomValue {
  double log_value = 0.0;
  RegimeTag regime;
};

inline constexpr double kDefaultHThreshold = 4.0;
inline constexpr std::size_t kMaxSeriesTerms = 10'000'000;

/// Direct summation of the defining series, scaled so that no term overflows.
/// Stops once the ratio of consecutive terms r = z/(A+n) is below one and the
/// geometric bound on the remaining tail, t r / (1 - r), is below
/// rel_tol times the running sum. Throws ConvergenceError after
/// kMaxSeriesTerms terms.
HypergeomValue hypergeom_series(double A, double z, double rel_tol = 1e-15);

/// Large-A approximation. With h = (z - A)/sqrt(A):
///   h < -h_threshold          regime I    F ~ A/(A - z)
///   -h_threshold <= h < 0     regime IV   F ~ e^{h^2/2} Phi(h) sqrt(2 pi A)
///   0 <= h <= h_threshold     regime III  (same expression, h >= 0)
///   h > h_threshold           regime II   F ~ e^{z-A+1} ((A-1)/z)^{A-1} sqrt(2 pi A)
HypergeomValue hypergeom_asymptotic(double A, double z,
                                    double h_threshold = kDefaultHThreshold);

/// Log of one asymptotic formula, regardless of where z sits. Regime I needs
/// z < A, regime III needs z >= A and regime IV needs z <= A.
double hypergeom_regime_log(double A, double z, Regime regime);

/// log of gamma(a, z) = int_0^z t^{a-1} e^{-t} dt. Series below z = a + 1,
/// Lentz continued fraction for the upper function above it.
double incomplete_gamma_lower(double a, double z);

/// log of Gamma(a, z) = int_z^inf t^{a-1} e^{-t} dt.
double incomplete_gamma_upper(double a, double z);

/// log F(A, z) = z + log(A-1) - (A-1) log z + log gamma(A-1, z).
/// Needs A > 2 and z > 0.
HypergeomValue hypergeom_via_gamma(double A, double z);

/// Standard normal CDF.
double normal_cdf(double h);

/// log Phi(h), accurate far into the lower tail.
double log_normal_cdf(double h);

}  // namespace logistic
