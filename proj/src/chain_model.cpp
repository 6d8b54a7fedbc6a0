#include "logistic/chain_model.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "logistic/errors.hpp"

namespace logistic {

namespace {

// floor(v) that forgives rounding noise just below an integer.
State robust_floor(double v) {
  const double up = std::floor(v + 1e-9 * std::max(1.0, std::abs(v)));
  return static_cast<State>(std::abs(up - v) <= 1e-9 * std::max(1.0, std::abs(v)) ? up
                                                                                   : std::floor(v));
}

}  // namespace

std::string_view to_string(Variant variant) {
  return variant == Variant::Modified ? "modified" : "unmodified";
}

Variant parse_variant(std::string_view text) {
  if (text == "modified" || text == "Modified") return Variant::Modified;
  if (text == "unmodified" || text == "Unmodified") return Variant::Unmodified;
  throw DomainError("unknown chain variant '" + std::string(text) +
                    "' (expected modified or unmodified)");
}

void validate(const ChainParams& p) {
  std::ostringstream why;
  if (!(std::isfinite(p.b) && p.b > 0.0)) why << "b must be finite and > 0; ";
  if (!(std::isfinite(p.mu) && p.mu >= 0.0)) why << "mu must be finite and >= 0; ";
  if (!(std::isfinite(p.gamma) && p.gamma >= 0.0)) why << "gamma must be finite and >= 0; ";
  if (p.L < 1) why << "L must be >= 1; ";
  if (!p.exploratory) {
    if (!(p.b > p.mu)) why << "b > mu required (set exploratory to override); ";
    if (!(p.gamma > 0.0)) why << "gamma > 0 required (set exploratory to override); ";
  }
  const std::string msg = why.str();
  if (!msg.empty()) throw DomainError("invalid chain parameters: " + msg.substr(0, msg.size() - 2));
}

ChainParams make_params(double b, double mu, double gamma, std::int64_t L, Variant variant) {
  ChainParams p{b, mu, gamma, L, variant, false};
  validate(p);
  return p;
}

void require_supercritical(const ChainParams& p) {
  validate(p);
  if (!(p.b > p.mu)) throw DomainError("no positive equilibrium: requires b > mu");
  if (!(p.gamma > 0.0)) throw DomainError("no positive equilibrium: requires gamma > 0");
}

RatePair rates(const ChainParams& params, State x) {
  if (x < 0) throw DomainError("rates: state must be >= 0");
  return {alpha(params, x), beta(params, x)};
}

State equilibrium_point(const ChainParams& p) {
  require_supercritical(p);
  const double L = static_cast<double>(p.L);
  const double drift = p.b - p.mu;
  if (p.variant == Variant::Unmodified) return robust_floor(L * drift / p.gamma);
  const double k = p.gamma / L;
  return robust_floor((drift + std::sqrt(drift * drift + 4.0 * k * p.b)) / (2.0 * k));
}

State stationary_mode(const ChainParams& p) {
  require_supercritical(p);
  return robust_floor(static_cast<double>(p.L) * (p.b - p.mu) / p.gamma);
}

}  // namespace logistic
