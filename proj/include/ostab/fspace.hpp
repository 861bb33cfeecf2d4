#pragma once

// Concrete beta-homogeneous F-norms on R^m plus sample-based checkers for
// the F-norm laws. Two norm kinds ship:
//
//   power-euclidean   ||y|| = (euclidean length of y)^beta
//   discrete-ellp     ||y|| = sum_i |y_i|^beta
//
// Both satisfy ||t*y|| = |t|^beta * ||y||. For beta <= 1 they also satisfy
// the triangle inequality, so they are genuine F-norms there; the checker
// accepts beta > 1 so that broken instances can be constructed and refuted.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ostab/axiom_report.hpp"

namespace ostab {

using CodomainVec = std::vector<double>;

inline CodomainVec vec_add(const CodomainVec& a, const CodomainVec& b) {
  CodomainVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline CodomainVec vec_sub(const CodomainVec& a, const CodomainVec& b) {
  CodomainVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline CodomainVec vec_scale(double t, const CodomainVec& a) {
  CodomainVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
  return r;
}

inline CodomainVec vec_neg(const CodomainVec& a) { return vec_scale(-1.0, a); }

inline bool vec_finite(const CodomainVec& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

inline std::string vec_to_string(const CodomainVec& a) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

enum class NormKind { power_euclidean, discrete_ellp };

inline const char* to_string(NormKind k) {
  return k == NormKind::power_euclidean ? "power-euclidean" : "discrete-ellp";
}

inline NormKind norm_kind_from_string(const std::string& s) {
  if (s == "power-euclidean") return NormKind::power_euclidean;
  if (s == "discrete-ellp") return NormKind::discrete_ellp;
  throw std::invalid_argument("unknown norm kind: '" + s + "'");
}

struct FNormSpace {
  double beta = 1.0;
  int dim = 1;
  NormKind kind = NormKind::power_euclidean;
};

inline FNormSpace make_space(NormKind kind, double beta, int dim) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("F-norm homogeneity exponent must be positive");
  if (dim < 1) throw std::invalid_argument("codomain dimension must be >= 1");
  return FNormSpace{beta, dim, kind};
}

inline double fnorm_eval(const FNormSpace& space, const CodomainVec& y) {
  if (static_cast<int>(y.size()) != space.dim)
    throw std::invalid_argument("fnorm_eval: vector has dimension " +
                                std::to_string(y.size()) + ", space expects " +
                                std::to_string(space.dim));
  switch (space.kind) {
    case NormKind::power_euclidean: {
      double ss = 0.0;
      for (double v : y) ss += v * v;
      return std::pow(ss, 0.5 * space.beta);
    }
    case NormKind::discrete_ellp: {
      double sum = 0.0;
      for (double v : y) sum += std::pow(std::abs(v), space.beta);
      return sum;
    }
  }
  return 0.0;
}

namespace detail {

// Portable deterministic uniforms: splitmix64 stream, mapped to [0,1).
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_bits() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double unit() { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }

  // uniform in [-range, range]
  double symmetric(double range) { return range * (2.0 * unit() - 1.0); }

  // integer in [lo, hi]
  long long integer(long long lo, long long hi) {
    return lo + static_cast<long long>(unit() * static_cast<double>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

}  // namespace detail

// Checks definiteness, symmetry under unit-modulus scalars, the triangle
// inequality, beta-homogeneity, and scalar-sequence continuity (lambda_n =
// 1/n up to n = 1000) on deterministic pseudo-random vectors. Structured
// samples (zero, unit vectors, an equal pair) are seeded in first so that
// textbook violations are found at small sample counts.
inline AxiomReport check_fnorm_axioms(const FNormSpace& space, long long sample_count,
                                      std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");

  const double homogeneity_tol = 1e-9;
  const double triangle_slack = 1e-12;
  const double symmetry_tol = 1e-12;

  std::vector<CodomainVec> samples;
  samples.emplace_back(space.dim, 0.0);
  for (int i = 0; i < space.dim; ++i) {
    CodomainVec e(space.dim, 0.0);
    e[i] = 1.0;
    samples.push_back(e);
    samples.push_back(e);  // deliberate duplicate: triangle check sees (e, e)
    samples.push_back(vec_neg(e));
  }
  detail::SampleStream rng(seed);
  while (static_cast<long long>(samples.size()) < sample_count + 1) {
    CodomainVec y(space.dim);
    for (auto& v : y) v = rng.symmetric(10.0);
    samples.push_back(std::move(y));
  }

  AxiomReport report;
  report.subject = std::string(to_string(space.kind)) + " beta=" + std::to_string(space.beta) +
                   " dim=" + std::to_string(space.dim);

  AxiomCheck definiteness{"definiteness"};
  AxiomCheck symmetry{"unit-scalar-symmetry"};
  AxiomCheck triangle{"triangle-inequality"};
  AxiomCheck homogeneity{"beta-homogeneity"};
  AxiomCheck continuity{"scalar-sequence-continuity"};

  const auto is_zero = [](const CodomainVec& y) {
    for (double v : y)
      if (v != 0.0) return false;
    return true;
  };

  for (const auto& y : samples) {
    const double ny = fnorm_eval(space, y);

    ++definiteness.samples_checked;
    if (is_zero(y)) {
      if (definiteness.status == CheckStatus::passed && ny != 0.0) {
        definiteness.status = CheckStatus::failed;
        definiteness.counterexample = "||0|| = " + std::to_string(ny);
      }
    } else if (definiteness.status == CheckStatus::passed && !(ny > 0.0)) {
      definiteness.status = CheckStatus::failed;
      definiteness.counterexample = "y=" + vec_to_string(y) + " has norm " + std::to_string(ny);
    }

    ++symmetry.samples_checked;
    const double nny = fnorm_eval(space, vec_neg(y));
    if (symmetry.status == CheckStatus::passed && std::abs(nny - ny) > symmetry_tol) {
      symmetry.status = CheckStatus::failed;
      symmetry.counterexample =
          "y=" + vec_to_string(y) + ": ||-y||=" + std::to_string(nny) + " vs ||y||=" + std::to_string(ny);
    }

    ++homogeneity.samples_checked;
    static const double structured_t[] = {0.0, 1.0, -1.0, 2.0, -2.0, 0.5};
    for (double t : structured_t) {
      const double lhs = fnorm_eval(space, vec_scale(t, y));
      const double rhs = std::pow(std::abs(t), space.beta) * ny;
      if (homogeneity.status == CheckStatus::passed &&
          std::abs(lhs - rhs) > homogeneity_tol * (1.0 + ny)) {
        homogeneity.status = CheckStatus::failed;
        homogeneity.counterexample = "t=" + std::to_string(t) + " y=" + vec_to_string(y) +
                                     ": ||ty||=" + std::to_string(lhs) + " vs |t|^b*||y||=" +
                                     std::to_string(rhs);
      }
    }
    const double t = rng.symmetric(4.0);
    const double lhs = fnorm_eval(space, vec_scale(t, y));
    const double rhs = std::pow(std::abs(t), space.beta) * ny;
    if (homogeneity.status == CheckStatus::passed &&
        std::abs(lhs - rhs) > homogeneity_tol * (1.0 + ny)) {
      homogeneity.status = CheckStatus::failed;
      homogeneity.counterexample = "t=" + std::to_string(t) + " y=" + vec_to_string(y);
    }
  }

  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const auto& y1 = samples[i];
    const auto& y2 = samples[i + 1];
    ++triangle.samples_checked;
    const double lhs = fnorm_eval(space, vec_add(y1, y2));
    const double rhs = fnorm_eval(space, y1) + fnorm_eval(space, y2);
    if (triangle.status == CheckStatus::passed && lhs > rhs + triangle_slack) {
      triangle.status = CheckStatus::failed;
      std::ostringstream os;
      os << "y1=" << vec_to_string(y1) << " y2=" << vec_to_string(y2) << ": ||y1+y2||=" << lhs
         << " > ||y1||+||y2||=" << rhs;
      triangle.counterexample = os.str();
    }
  }

  // The shipped norms are continuous by construction; the sequential laws are
  // exercised only in the scalar-sequence form: ||y/n|| must be nonincreasing
  // and reach |1/1000|^beta * ||y|| at n = 1000.
  const std::size_t continuity_samples = std::min<std::size_t>(samples.size(), 8);
  for (std::size_t i = 0; i < continuity_samples; ++i) {
    const auto& y = samples[i];
    ++continuity.samples_checked;
    const double ny = fnorm_eval(space, y);
    double prev = ny;
    bool ok = true;
    for (int n = 1; n <= 1000; n *= 2) {
      const double cur = fnorm_eval(space, vec_scale(1.0 / n, y));
      if (cur > prev + symmetry_tol) ok = false;
      prev = cur;
    }
    const double final_norm = fnorm_eval(space, vec_scale(1e-3, y));
    if (final_norm > std::pow(1e-3, space.beta) * ny + homogeneity_tol * (1.0 + ny)) ok = false;
    if (continuity.status == CheckStatus::passed && !ok) {
      continuity.status = CheckStatus::failed;
      continuity.counterexample = "y=" + vec_to_string(y);
    }
  }

  report.checks = {definiteness, symmetry, triangle, homogeneity, continuity};
  return report;
}

}  // namespace ostab
