#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "specbox/errors.hpp"

namespace specbox {

enum class Method { Tau, Pi, Tau1 };

enum class TauMode { Optimal, RatioBound, SymmetricBound, RationalBound };

std::string method_name(Method m);
std::string tau_mode_name(TauMode m);

/// Root of 2 sin(t/2) cos((n+1/2)t) + phi(1-phi) sin((n-1)t) = 0 in
/// [pi/(2n+1), pi/(n+2)]; the function is strictly decreasing there, so plain
/// bisection is safe. Absolute tolerance 1e-14.
double theta_n(std::size_t n, double phi);

struct TauPenalty {
  double value = 0.0;
  /// Set when r = s = 0: the penalty degenerates to zero.
  bool degenerate = false;
};

/// Truncation penalty of the tau method for sub/super-diagonal sup norms r, s.
/// Optimal minimises 2 sqrt(r^2/phi + s^2/(1-phi)) sin(theta_n(phi)/2) over
/// phi in (0,1) (closed forms at the bidiagonal endpoints); RatioBound
/// evaluates at phi = r/(r+s); SymmetricBound at phi = 1/2 via its own root
/// problem.
TauPenalty eps_tau(std::size_t n, double r, double s,
                   TauMode mode = TauMode::Optimal);

/// 2 (r+s) sin(pi / (2n)).
double eps_pi(std::size_t n, double r, double s);

/// 2 (r+s) sin(pi / (2(n+1))).
double eps_tau1(std::size_t n, double r, double s);

enum class RationalKind { Star, Dagger };

/// Rational over-bounds usable in exact arithmetic:
/// Star   -> (a_max+g_max) * 22/(7(n+1)) >= eps_tau1,
/// Dagger -> (a_max+g_max) * 22/(7n)     >= eps_pi.
double eps_rational(RationalKind kind, std::size_t n, double a_max,
                    double g_max);

/// Weighted penalty for an explicit weight vector:
/// tau:  r sqrt(T-/S) + s sqrt(T+/S) with w_0 = w_{n+1} = 0,
/// pi:   (r+s) sqrt(T/S), T = (w_1+w_n)^2 + sum (w_{j+1}-w_j)^2,
/// tau1: (r+s) sqrt(T/S), T = w_1^2 + w_n^2 + sum (w_{j+1}-w_j)^2.
double eps_weighted(Method method, const std::vector<double>& weights, double r,
                    double s);

struct PenaltyRow {
  std::size_t n = 0;
  std::string label;  // tau_optimal, tau_ratio_bound, ..., eps_star, eps_dagger
  double value = 0.0;
};

/// Batch tabulation used by the CLI: for each n emits tau
/// (Optimal/RatioBound/SymmetricBound), pi, tau1, and the two rational bounds.
std::vector<PenaltyRow> penalty_table(const std::vector<std::size_t>& ns,
                                      double r, double s);

}  // namespace specbox
