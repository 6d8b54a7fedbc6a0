#include "logistic/linear_oracle.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstddef>
#include <utility>

#include "logistic/errors.hpp"

namespace logistic::oracle {

namespace {

using Real = boost::multiprecision::cpp_bin_float_100;

// Tridiagonal system: sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i].
struct Tridiagonal {
  std::vector<Real> sub, diag, sup, rhs;
  explicit Tridiagonal(std::size_t n) : sub(n), diag(n), sup(n), rhs(n) {}
  std::size_t size() const { return diag.size(); }
};

// LU with partial pivoting (LAPACK gtsv layout: row swaps create a second
// super-diagonal).
std::vector<Real> solve(Tridiagonal sys) {
  const std::size_t n = sys.size();
  std::vector<Real> sup2(n, Real(0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (abs(sys.sub[i + 1]) > abs(sys.diag[i])) {
      std::swap(sys.diag[i], sys.sub[i + 1]);
      std::swap(sys.sup[i], sys.diag[i + 1]);
      if (i + 2 < n) std::swap(sup2[i], sys.sup[i + 1]);
      std::swap(sys.rhs[i], sys.rhs[i + 1]);
    }
    if (sys.diag[i] == 0) throw ConvergenceError("oracle: singular tridiagonal system");
    const Real m = sys.sub[i + 1] / sys.diag[i];
    sys.sub[i + 1] = 0;
    sys.diag[i + 1] -= m * sys.sup[i];
    if (i + 2 < n) sys.sup[i + 1] -= m * sup2[i];
    sys.rhs[i + 1] -= m * sys.rhs[i];
  }
  if (sys.diag[n - 1] == 0) throw ConvergenceError("oracle: singular tridiagonal system");
  std::vector<Real> x(n);
  for (std::size_t k = n; k-- > 0;) {
    Real acc = sys.rhs[k];
    if (k + 1 < n) acc -= sys.sup[k] * x[k + 1];
    if (k + 2 < n) acc -= sup2[k] * x[k + 2];
    x[k] = acc / sys.diag[k];
  }
  return x;
}

Real alpha_hp(const ChainParams& p, State x) {
  const Real xr(x);
  return Real(p.mu) * xr + Real(p.gamma) * xr * xr / Real(p.L);
}

Real beta_hp(const ChainParams& p, State x) {
  if (p.variant == Variant::Modified) return Real(p.b) * Real(x + 1);
  return x == 0 ? Real(1) : Real(p.b) * Real(x);
}

std::vector<double> to_double(const std::vector<Real>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(static_cast<double>(r));
  return out;
}

// Generator rows for interior states lower < x < upper with Dirichlet ends.
Tridiagonal interior_system(const ChainParams& p, State lower, State upper) {
  const std::size_t n = static_cast<std::size_t>(upper - lower - 1);
  Tridiagonal sys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const State x = lower + 1 + static_cast<State>(i);
    const Real a = alpha_hp(p, x);
    const Real b = beta_hp(p, x);
    sys.sub[i] = a;
    sys.diag[i] = -(a + b);
    sys.sup[i] = b;
  }
  return sys;
}

}  // namespace

std::vector<double> stationary_by_linear_solve(const ChainParams& p, State n_max) {
  validate(p);
  if (n_max < 1) throw DomainError("stationary_by_linear_solve: n_max must be >= 1");
  // Unknowns pi(0..n_max). Row 0 pins pi(0) = 1; row x >= 1 is the balance
  // equation of column x of the generator:
  //   beta_{x-1} pi(x-1) - (alpha_x + beta_x) pi(x) + alpha_{x+1} pi(x+1) = 0,
  // with beta_{n_max} = 0 (reflecting).
  const std::size_t n = static_cast<std::size_t>(n_max) + 1;
  Tridiagonal sys(n);
  sys.diag[0] = 1;
  sys.rhs[0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    const State x = static_cast<State>(i);
    const Real out = alpha_hp(p, x) + (x < n_max ? beta_hp(p, x) : Real(0));
    sys.sub[i] = beta_hp(p, x - 1);
    sys.diag[i] = -out;
    sys.sup[i] = x < n_max ? alpha_hp(p, x + 1) : Real(0);
  }
  std::vector<Real> pi = solve(std::move(sys));
  Real total = 0;
  for (const auto& v : pi) total += v;
  for (auto& v : pi) v /= total;
  return to_double(pi);
}

std::vector<double> hitting_times_by_linear_solve(const ChainParams& p, State target,
                                                  State n_max) {
  validate(p);
  if (target < 0 || n_max <= target) {
    throw DomainError("hitting_times_by_linear_solve: requires 0 <= target < n_max");
  }
  // Interior (target, n_max]; the last row reflects.
  Tridiagonal sys = interior_system(p, target, n_max + 1);
  const std::size_t last = sys.size() - 1;
  sys.diag[last] = -alpha_hp(p, n_max);
  sys.sup[last] = 0;
  for (auto& r : sys.rhs) r = -1;
  std::vector<Real> u = solve(std::move(sys));
  u.insert(u.begin(), Real(0));
  return to_double(u);
}

std::vector<double> exit_times_by_linear_solve(const ChainParams& p, State lower, State upper) {
  validate(p);
  if (lower < 0 || upper - lower < 2) {
    throw DomainError("exit_times_by_linear_solve: requires 0 <= lower < upper - 1");
  }
  Tridiagonal sys = interior_system(p, lower, upper);
  for (auto& r : sys.rhs) r = -1;
  std::vector<Real> u = solve(std::move(sys));
  u.insert(u.begin(), Real(0));
  u.push_back(Real(0));
  return to_double(u);
}

std::vector<double> exit_upper_probability_by_linear_solve(const ChainParams& p, State lower,
                                                           State upper) {
  validate(p);
  if (lower < 0 || upper - lower < 2) {
    throw DomainError("exit_upper_probability_by_linear_solve: requires 0 <= lower < upper - 1");
  }
  Tridiagonal sys = interior_system(p, lower, upper);
  for (auto& r : sys.rhs) r = 0;
  sys.rhs.back() = -beta_hp(p, upper - 1);
  std::vector<Real> v = solve(std::move(sys));
  v.insert(v.begin(), Real(0));
  v.push_back(Real(1));
  return to_double(v);
}

}  // namespace logistic::oracle
