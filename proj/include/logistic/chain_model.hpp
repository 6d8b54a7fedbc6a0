#pragma once

// Logistic birth-death chain on {0, 1, 2, ...}:
//   up-rate   beta_x  = b x (x >= 1), beta_0 = 1      (unmodified)
//             beta_x  = b (x + 1)                     (modified)
//   down-rate alpha_x = mu x + gamma x^2 / L

#include <cstdint>
#include <string_view>

namespace logistic {

using State = std::int64_t;

enum class Variant { Unmodified, Modified };

std::string_view to_string(Variant variant);
Variant parse_variant(std::string_view text);

struct ChainParams {
  double b = 2.0;      // per-capita birth rate
  double mu = 1.0;     // per-capita mortality
  double gamma = 1.0;  // competition weight
  std::int64_t L = 100;
  Variant variant = Variant::Modified;
  // Lets b <= mu or gamma = 0 through validation; analytic operations still
  // refuse such parameters.
  bool exploratory = false;

  bool operator==(const ChainParams&) const = default;
};

/// Throws DomainError unless b > 0, mu >= 0, gamma >= 0, L >= 1 and, without
/// the exploratory flag, b > mu and gamma > 0.
void validate(const ChainParams& params);

ChainParams make_params(double b, double mu, double gamma, std::int64_t L,
                        Variant variant = Variant::Modified);

/// Throws DomainError when an asymptotic or stationary computation is asked
/// for parameters without a positive equilibrium.
void require_supercritical(const ChainParams& params);

struct RatePair {
  double alpha = 0.0;  // x -> x - 1
  double beta = 0.0;   // x -> x + 1
};

RatePair rates(const ChainParams& params, State x);

inline double alpha(const ChainParams& p, State x) {
  const double xd = static_cast<double>(x);
  return p.mu * xd + p.gamma * xd * xd / static_cast<double>(p.L);
}

inline double beta(const ChainParams& p, State x) {
  if (p.variant == Variant::Modified) return p.b * static_cast<double>(x + 1);
  return x == 0 ? 1.0 : p.b * static_cast<double>(x);
}

/// Unmodified: floor(L (b - mu) / gamma).
/// Modified: floor of the positive root of b (x + 1) = mu x + gamma x^2 / L.
/// The modified root sits about b / (b - mu) states above the unmodified
/// point, so the two agree to leading order in L.
State equilibrium_point(const ChainParams& params);

/// Mode of the modified chain's invariant law, floor(L (b - mu) / gamma).
/// When L (b - mu) / gamma is an integer two states tie and the larger one is
/// returned. This is the centre used by the local limit theorems and by the
/// exit-time analysis.
State stationary_mode(const ChainParams& params);

/// alpha_x psi(x-1) - (alpha_x + beta_x) psi(x) + beta_x psi(x+1);
/// at x = 0 this is beta_0 (psi(1) - psi(0)).
template <class Psi>
double apply_generator(const ChainParams& params, Psi&& psi, State x) {
  const double up = beta(params, x);
  if (x == 0) return up * (psi(State{1}) - psi(State{0}));
  const double down = alpha(params, x);
  return down * psi(x - 1) - (down + up) * psi(x) + up * psi(x + 1);
}

}  // namespace logistic
