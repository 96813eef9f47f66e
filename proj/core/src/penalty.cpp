#include "specbox/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace specbox {

namespace {

constexpr double kPi = std::numbers::pi;

double theta_f(double t, std::size_t n, double eta) {
  return 2.0 * std::sin(0.5 * t) * std::cos((n + 0.5) * t) +
         eta * std::sin((static_cast<double>(n) - 1.0) * t);
}

/// Bisection for a strictly decreasing f on [lo, hi] with f(lo) >= 0 >= f(hi),
/// up to sign noise at the endpoints.
double bisect_root(double lo, double hi, double tol, auto&& f) {
  if (f(lo) <= 0.0) return lo;
  if (f(hi) >= 0.0) return hi;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Tau: return "tau";
    case Method::Pi: return "pi";
    case Method::Tau1: return "tau1";
  }
  return "?";
}

std::string tau_mode_name(TauMode m) {
  switch (m) {
    case TauMode::Optimal: return "optimal";
    case TauMode::RatioBound: return "ratio_bound";
    case TauMode::SymmetricBound: return "symmetric_bound";
    case TauMode::RationalBound: return "rational";
  }
  return "?";
}

double theta_n(std::size_t n, double phi) {
  if (n == 0) throw InvalidArgument("n must be >= 1");
  if (phi < 0.0 || phi > 1.0) throw InvalidArgument("phi must lie in [0,1]");
  if (n == 1) return kPi / 3.0;
  const double eta = phi * (1.0 - phi);
  const double lo = kPi / (2.0 * n + 1.0);
  const double hi = kPi / (n + 2.0);
  return bisect_root(lo, hi, 1e-14,
                     [&](double t) { return theta_f(t, n, eta); });
}

namespace {

double tau_bracket(std::size_t n, double r, double s, double phi) {
  return 2.0 * std::sqrt(r * r / phi + s * s / (1.0 - phi)) *
         std::sin(0.5 * theta_n(n, phi));
}

double tau_optimal(std::size_t n, double r, double s) {
  if (s == 0.0 || r == 0.0) {
    return 2.0 * (r + s) * std::sin(kPi / (4.0 * n + 2.0));
  }
  // 64-point scan plus the ratio and symmetric split points, then
  // golden-section refinement of the best bracket.
  const double lo = 1e-6, hi = 1.0 - 1e-6;
  std::vector<double> phis;
  phis.reserve(66);
  for (int i = 0; i < 64; ++i) {
    phis.push_back(lo + (hi - lo) * i / 63.0);
  }
  phis.push_back(r / (r + s));
  phis.push_back(0.5);
  std::sort(phis.begin(), phis.end());

  std::size_t best = 0;
  double best_val = tau_bracket(n, r, s, phis[0]);
  for (std::size_t i = 1; i < phis.size(); ++i) {
    const double v = tau_bracket(n, r, s, phis[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = best == 0 ? lo : phis[best - 1];
  double b = best + 1 == phis.size() ? hi : phis[best + 1];

  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = tau_bracket(n, r, s, x1);
  double f2 = tau_bracket(n, r, s, x2);
  while (b - a > 1e-12) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = tau_bracket(n, r, s, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = tau_bracket(n, r, s, x2);
    }
  }
  return std::min(best_val, std::min(f1, f2));
}

}  // namespace

TauPenalty eps_tau(std::size_t n, double r, double s, TauMode mode) {
  if (n == 0) throw InvalidArgument("n must be >= 1");
  if (r < 0.0 || s < 0.0) throw InvalidArgument("r, s must be nonnegative");
  if (r == 0.0 && s == 0.0) return TauPenalty{0.0, true};
  switch (mode) {
    case TauMode::Optimal:
      return TauPenalty{tau_optimal(n, r, s), false};
    case TauMode::RatioBound:
      return TauPenalty{2.0 * (r + s) * std::sin(0.5 * theta_n(n, r / (r + s))),
                        false};
    case TauMode::SymmetricBound: {
      // theta solves 2 cos((n+1)t/2) = cos((n-1)t/2) in (pi/(n+3), pi/(n+2)];
      // same root as theta_n(1/2) but cheaper to evaluate.
      const double lo = kPi / (n + 3.0);
      const double hi = kPi / (n + 2.0);
      const double th = bisect_root(lo, hi, 1e-14, [&](double t) {
        return 2.0 * std::cos(0.5 * (n + 1.0) * t) -
               std::cos(0.5 * (n - 1.0) * t);
      });
      return TauPenalty{
          2.0 * std::sqrt(2.0) * std::sqrt(r * r + s * s) * std::sin(0.5 * th),
          false};
    }
    case TauMode::RationalBound:
      return TauPenalty{eps_rational(RationalKind::Star, n, r, s), false};
  }
  throw InvalidArgument("unreachable");
}

double eps_pi(std::size_t n, double r, double s) {
  if (n == 0) throw InvalidArgument("n must be >= 1");
  if (r < 0.0 || s < 0.0) throw InvalidArgument("r, s must be nonnegative");
  return 2.0 * (r + s) * std::sin(kPi / (2.0 * n));
}

double eps_tau1(std::size_t n, double r, double s) {
  if (n == 0) throw InvalidArgument("n must be >= 1");
  if (r < 0.0 || s < 0.0) throw InvalidArgument("r, s must be nonnegative");
  return 2.0 * (r + s) * std::sin(kPi / (2.0 * (n + 1.0)));
}

double eps_rational(RationalKind kind, std::size_t n, double a_max,
                    double g_max) {
  if (n == 0) throw InvalidArgument("n must be >= 1");
  if (a_max < 0.0 || g_max < 0.0) {
    throw InvalidArgument("bounds must be nonnegative");
  }
  const double sum = a_max + g_max;
  switch (kind) {
    case RationalKind::Star:
      return sum * 22.0 / (7.0 * (n + 1.0));
    case RationalKind::Dagger:
      return sum * 22.0 / (7.0 * n);
  }
  throw InvalidArgument("unreachable");
}

double eps_weighted(Method method, const std::vector<double>& weights, double r,
                    double s) {
  if (weights.empty()) throw AllZeroWeights("weight vector is empty");
  const std::size_t n = weights.size();
  double sn = 0.0;
  for (double w : weights) sn += w * w;
  if (sn == 0.0) throw AllZeroWeights("all weights are zero");

  auto w = [&](std::size_t j) {  // 1-based with w_0 = w_{n+1} = 0
    return (j >= 1 && j <= n) ? weights[j - 1] : 0.0;
  };

  switch (method) {
    case Method::Tau: {
      double tminus = 0.0, tplus = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        tminus += (w(j - 1) - w(j)) * (w(j - 1) - w(j));
        tplus += (w(j + 1) - w(j)) * (w(j + 1) - w(j));
      }
      return r * std::sqrt(tminus / sn) + s * std::sqrt(tplus / sn);
    }
    case Method::Pi: {
      double t = (w(1) + w(n)) * (w(1) + w(n));
      for (std::size_t j = 1; j + 1 <= n; ++j) {
        t += (w(j + 1) - w(j)) * (w(j + 1) - w(j));
      }
      return (r + s) * std::sqrt(t / sn);
    }
    case Method::Tau1: {
      double t = w(1) * w(1) + w(n) * w(n);
      for (std::size_t j = 1; j + 1 <= n; ++j) {
        t += (w(j + 1) - w(j)) * (w(j + 1) - w(j));
      }
      return (r + s) * std::sqrt(t / sn);
    }
  }
  throw InvalidArgument("unreachable");
}

std::vector<PenaltyRow> penalty_table(const std::vector<std::size_t>& ns,
                                      double r, double s) {
  std::vector<PenaltyRow> rows;
  rows.reserve(ns.size() * 7);
  for (std::size_t n : ns) {
    rows.push_back({n, "tau_optimal", eps_tau(n, r, s, TauMode::Optimal).value});
    rows.push_back(
        {n, "tau_ratio_bound", eps_tau(n, r, s, TauMode::RatioBound).value});
    rows.push_back(
        {n, "tau_symmetric_bound", eps_tau(n, r, s, TauMode::SymmetricBound).value});
    rows.push_back({n, "pi", eps_pi(n, r, s)});
    rows.push_back({n, "tau1", eps_tau1(n, r, s)});
    rows.push_back({n, "eps_star", eps_rational(RationalKind::Star, n, r, s)});
    rows.push_back(
        {n, "eps_dagger", eps_rational(RationalKind::Dagger, n, r, s)});
  }
  return rows;
}

}  // namespace specbox
