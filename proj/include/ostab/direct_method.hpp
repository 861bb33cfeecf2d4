#pragma once

// The direct-method iteration engine.
//
// Given a map f whose one-step defect ||f(x) - alpha*f(wx) + gamma*f(-wx)||
// is bounded by a constant C, the engine forms the stabilized iterates
//
//     g_n(x) = A_n f(w^n x) - B_n f(-w^n x)
//
// with exact rational coefficients from the recurrence
//
//     A_{n+1} = alpha A_n + gamma B_n,   B_{n+1} = gamma A_n + alpha B_n,
//     A_0 = 1, B_0 = 0,
//
// whose closed forms are A_n = (u^n + v^n)/2 and B_n = (u^n - v^n)/2 in
// u = alpha + gamma, v = alpha - gamma. Under |u|^b + |v|^b < 1 the series
// S = sum_{n>=1} (|A_n|^b + |B_n|^b) converges, g = lim g_n exists, and
// ||f(x) - g(x)|| <= C*(S + 1).
//
// Numerics: g_n is evaluated through the even/odd decomposition
//
//     g_n(x) = u^n * (f(w^n x) - f(-w^n x))/2 + v^n * (f(w^n x) + f(-w^n x))/2
//
// for the double-precision remainder of f, and through exact rational
// arithmetic for the map's exact component (see eval_map.hpp). The naive
// A_n f(w^n x) - B_n f(-w^n x) form subtracts two growing quantities and
// loses all precision in doubles; the identity of the two forms at small n
// is covered by tests.
//
// Series tails are certified with (a+b)^b <= a^b + b^b for b <= 1, giving
// |A_n|^b + |B_n|^b <= 2^(1-b) (|u|^(nb) + |v|^(nb)) and a geometric tail.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ostab/errors.hpp"
#include "ostab/eval_map.hpp"
#include "ostab/fspace.hpp"
#include "ostab/ortho.hpp"
#include "ostab/rational.hpp"

namespace ostab {

struct CoeffPair {
  int n = 0;
  Rational A{1};
  Rational B{0};

  bool operator==(const CoeffPair&) const = default;
};

inline CoeffPair coeffs_recurrence(const Rational& alpha, const Rational& gamma, int n) {
  if (n < 0) throw std::invalid_argument("coefficient index must be >= 0");
  CoeffPair c;
  for (int k = 0; k < n; ++k) {
    Rational a_next = alpha * c.A + gamma * c.B;
    c.B = gamma * c.A + alpha * c.B;
    c.A = std::move(a_next);
  }
  c.n = n;
  return c;
}

inline CoeffPair coeffs_closed(const Rational& alpha, const Rational& gamma, int n) {
  if (n < 0) throw std::invalid_argument("coefficient index must be >= 0");
  const Rational un = rational_pow(alpha + gamma, static_cast<unsigned>(n));
  const Rational vn = rational_pow(alpha - gamma, static_cast<unsigned>(n));
  CoeffPair c;
  c.n = n;
  c.A = (un + vn) / 2;
  c.B = (un - vn) / 2;
  return c;
}

struct ConvergenceCheck {
  bool converges = false;
  double term_u = 0.0;  // |alpha+gamma|^beta
  double term_v = 0.0;  // |alpha-gamma|^beta
  double u = 0.0;
  double v = 0.0;

  double sum() const { return term_u + term_v; }
};

inline ConvergenceCheck check_convergence(const Rational& alpha, const Rational& gamma,
                                          double beta) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("homogeneity exponent must lie in (0, 1]");
  ConvergenceCheck cc;
  cc.u = to_double(alpha + gamma);
  cc.v = to_double(alpha - gamma);
  cc.term_u = std::pow(std::abs(cc.u), beta);
  cc.term_v = std::pow(std::abs(cc.v), beta);
  cc.converges = cc.term_u + cc.term_v < 1.0;
  return cc;
}

struct SeriesSum {
  double value = 0.0;       // partial sum, within tail_bound of the full sum
  double tail_bound = 0.0;  // certified bound on the discarded tail
  long long terms = 0;
};

// Sum of |A_n|^beta + |B_n|^beta for n >= 1, accumulated (Kahan) until the
// geometric tail certificate drops below tol. value + tail_bound is a
// rigorous upper bound for the full series.
inline SeriesSum series_sum(const Rational& alpha, const Rational& gamma, double beta,
                            double tol, long long max_terms = 20'000'000) {
  if (!(tol > 0.0)) throw std::invalid_argument("series tolerance must be positive");
  const ConvergenceCheck cc = check_convergence(alpha, gamma, beta);
  if (!cc.converges)
    throw std::invalid_argument("series diverges: |u|^b + |v|^b = " + std::to_string(cc.sum()) +
                                " is not < 1");

  const double ub = cc.term_u, vb = cc.term_v;
  const double factor = std::pow(2.0, 1.0 - beta);

  double sum = 0.0, comp = 0.0;  // Kahan accumulator
  double upow = cc.u, vpow = cc.v;
  double ubp = ub, vbp = vb;
  for (long long n = 1;; ++n) {
    const double a = 0.5 * (upow + vpow);
    const double b = 0.5 * (upow - vpow);
    const double term = std::pow(std::abs(a), beta) + std::pow(std::abs(b), beta);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;

    upow *= cc.u;
    vpow *= cc.v;
    ubp *= ub;
    vbp *= vb;
    const double tail = factor * (ubp / (1.0 - ub) + vbp / (1.0 - vb));
    if (tail < tol) return SeriesSum{sum, tail, n};
    if (n >= max_terms)
      throw Error(kNonConvergence, "series tail still " + std::to_string(tail) + " after " +
                                       std::to_string(n) + " terms");
  }
}

// ||f(x) - g(x)|| <= C * (S + 1)
inline double stability_bound(double defect_bound, double series_value) {
  if (defect_bound < 0.0 || series_value < 0.0)
    throw std::invalid_argument("stability_bound needs nonnegative inputs");
  return defect_bound * (series_value + 1.0);
}

// Data of one iteration scheme: the recurrence weights, the argument scale
// per step, the codomain homogeneity exponent, and the one-step defect
// constant C of the map being stabilized.
struct IterationParams {
  Rational alpha{0};
  Rational gamma{0};
  long long omega = 2;
  double beta = 1.0;
  double defect_bound = 0.0;

  Rational u() const { return alpha + gamma; }
  Rational v() const { return alpha - gamma; }
};

inline void validate_params(const IterationParams& p) {
  if (p.omega == 0) throw std::invalid_argument("argument scale omega must be a nonzero integer");
  if (!(p.beta > 0.0) || p.beta > 1.0)
    throw std::invalid_argument("homogeneity exponent must lie in (0, 1]");
  if (!(p.defect_bound >= 0.0)) throw std::invalid_argument("defect constant must be >= 0");
}

struct StopRule {
  double tol = 1e-10;  // certified envelope on ||g_n - g|| at the stop index
  int n_max = 64;
};

struct TraceStep {
  int n = 0;
  Rational A{1};
  Rational B{0};
  CodomainVec g_value;    // g_n(x)
  double step_norm = 0.0;  // ||g_n(x) - g_{n+1}(x)||
  double h_value = 0.0;    // ||f(x) - g_n(x)||
};

struct IterationTrace {
  std::vector<TraceStep> steps;
};

struct ConstructResult {
  CodomainVec g;
  IterationTrace trace;
  int steps_used = 0;
  double envelope_at_stop = 0.0;  // certified ||g_n - g|| bound where iteration stopped
};

namespace detail {

template <typename F>
SplitEval split_of(const F& f, const GroupPoint& z) {
  if constexpr (SplitPointMap<std::decay_t<F>> || std::same_as<std::decay_t<F>, EvalMap>) {
    return f.eval_split(z);
  } else {
    return SplitEval{{}, f(z)};
  }
}

// g_n from the split evaluations at w^n x and -w^n x. Exact components go
// through the rational coefficients; the remainders go through the even/odd
// decomposition with u^n = A_n + B_n and v^n = A_n - B_n.
inline CodomainVec combine_iterate(const Rational& A, const Rational& B, const SplitEval& plus,
                                   const SplitEval& minus, int n) {
  if (plus.remainder.size() != minus.remainder.size())
    throw std::invalid_argument("map returned inconsistent codomain dimensions");
  const double un = to_double(A + B);
  const double vn = to_double(A - B);
  const std::size_t m = plus.remainder.size();
  CodomainVec g(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double rp = plus.remainder[i], rm = minus.remainder[i];
    double value = 0.5 * un * (rp - rm) + 0.5 * vn * (rp + rm);
    if (!plus.exact.empty() || !minus.exact.empty()) {
      const Rational ep = plus.exact.empty() ? Rational(0) : plus.exact[i];
      const Rational em = minus.exact.empty() ? Rational(0) : minus.exact[i];
      value += to_double(A * ep - B * em);
    }
    g[i] = value;
  }
  if (!vec_finite(g)) throw OverflowAtStep(n);
  return g;
}

}  // namespace detail

// Single stabilized iterate g_n(x).
template <typename F>
  requires PointMap<std::decay_t<F>> || std::same_as<std::decay_t<F>, EvalMap>
CodomainVec iterate_g(const F& f, const GroupPoint& x, const IterationParams& p, int n) {
  validate_params(p);
  if (n < 0) throw std::invalid_argument("iterate index must be >= 0");
  const BigInt scale = boost::multiprecision::pow(BigInt(p.omega), static_cast<unsigned>(n));
  const GroupPoint xp = x.scaled(scale);
  const SplitEval plus = detail::split_of(f, xp);
  const SplitEval minus = detail::split_of(f, -xp);
  const CoeffPair c = coeffs_closed(p.alpha, p.gamma, n);
  return detail::combine_iterate(c.A, c.B, plus, minus, n);
}

// Runs the iteration until the certified remaining envelope
// C * sum_{k>=n} (|A_k|^b + |B_k|^b) falls below stop.tol, recording one
// trace row per executed step. At least one step is executed. Throws
// NonConvergence if the envelope is still above stop.tol at n_max, and
// OverflowAtStep if codomain values leave the double range.
template <typename F>
  requires PointMap<std::decay_t<F>> || std::same_as<std::decay_t<F>, EvalMap>
ConstructResult construct_g(const F& f, const GroupPoint& x, const IterationParams& p,
                            const FNormSpace& space, StopRule stop) {
  validate_params(p);
  if (stop.n_max < 1) throw std::invalid_argument("stop.n_max must be >= 1");
  if (!(stop.tol > 0.0)) throw std::invalid_argument("stop.tol must be positive");
  const ConvergenceCheck cc = check_convergence(p.alpha, p.gamma, p.beta);
  if (!cc.converges)
    throw std::invalid_argument("iteration does not contract: |u|^b + |v|^b = " +
                                std::to_string(cc.sum()) + " is not < 1");

  const double ub = cc.term_u, vb = cc.term_v;
  const double factor = std::pow(2.0, 1.0 - p.beta);
  // envelope(n) = C * 2^(1-b) * (ub^n/(1-ub) + vb^n/(1-vb)) >= C*sum_{k>=n}(...)
  double ub_pow = 1.0, vb_pow = 1.0;
  const auto envelope = [&]() {
    return p.defect_bound * factor * (ub_pow / (1.0 - ub) + vb_pow / (1.0 - vb));
  };

  ConstructResult result;
  Rational A{1}, B{0};
  GroupPoint xp = x;
  SplitEval plus = detail::split_of(f, xp);
  SplitEval minus = detail::split_of(f, -xp);
  CodomainVec g_cur = detail::combine_iterate(A, B, plus, minus, 0);
  const CodomainVec f_x = g_cur;  // g_0(x) = f(x)

  int n = 0;
  while (true) {
    const double env = envelope();
    if (n >= 1 && env < stop.tol) {
      result.envelope_at_stop = env;
      break;
    }
    if (n == stop.n_max)
      throw NonConvergence("iteration envelope " + std::to_string(env) + " did not reach " +
                               std::to_string(stop.tol) + " within n_max=" +
                               std::to_string(stop.n_max) + " steps",
                           stop.n_max, env);

    Rational a_next = p.alpha * A + p.gamma * B;
    Rational b_next = p.gamma * A + p.alpha * B;
    xp = xp.scaled(BigInt(p.omega));
    plus = detail::split_of(f, xp);
    minus = detail::split_of(f, -xp);
    CodomainVec g_next = detail::combine_iterate(a_next, b_next, plus, minus, n + 1);

    TraceStep step;
    step.n = n;
    step.A = A;
    step.B = B;
    step.g_value = g_cur;
    step.step_norm = fnorm_eval(space, vec_sub(g_cur, g_next));
    step.h_value = fnorm_eval(space, vec_sub(f_x, g_cur));
    result.trace.steps.push_back(std::move(step));

    A = std::move(a_next);
    B = std::move(b_next);
    g_cur = std::move(g_next);
    ub_pow *= ub;
    vb_pow *= vb;
    ++n;
  }

  result.g = std::move(g_cur);
  result.steps_used = n;
  return result;
}

}  // namespace ostab
