#pragma once

// Evaluable map models: a base map (zero, constant, integer-linear or
// integer-quadratic) plus deterministic hash noise. Models are evaluable at
// any lattice point, including the astronomically scaled points the
// iteration visits, and are pure functions of their data.
//
// Noise is a pure function of (seed, point, codomain index): each coordinate
// is drawn from a hash of those inputs and scaled into [-amplitude,
// amplitude]. Hashing replaces stored random tables because the iteration
// evaluates f far outside any pre-sampled box.
//
// The base value at a point is an exact rational, exposed through
// eval_split so that the iteration engine and the defect measurements can
// cancel base contributions exactly (see eval_map.hpp).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ostab/errors.hpp"
#include "ostab/eval_map.hpp"
#include "ostab/fspace.hpp"
#include "ostab/ortho.hpp"
#include "ostab/rational.hpp"

namespace ostab {

enum class MapBase { zero, constant, linear, quadratic };

inline const char* to_string(MapBase b) {
  switch (b) {
    case MapBase::zero: return "zero";
    case MapBase::constant: return "constant";
    case MapBase::linear: return "linear";
    case MapBase::quadratic: return "quadratic";
  }
  return "?";
}

inline MapBase map_base_from_string(const std::string& s) {
  if (s == "zero") return MapBase::zero;
  if (s == "constant") return MapBase::constant;
  if (s == "linear") return MapBase::linear;
  if (s == "quadratic") return MapBase::quadratic;
  throw std::invalid_argument("unknown map base: '" + s + "'");
}

struct NoiseSpec {
  std::uint64_t seed = 0;
  double amplitude = 0.0;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_bigint(std::uint64_t h, const BigInt& v) {
  h = mix64(h ^ (v < 0 ? 0x9E3779B97F4A7C15ull : 0x517CC1B727220A95ull));
  BigInt mag = abs(v);
  while (mag != 0) {
    h = mix64(h ^ static_cast<std::uint64_t>(mag & 0xFFFFFFFFFFFFFFFFull));
    mag >>= 64;
  }
  return h;
}

}  // namespace detail

// Noise coordinate in [-amplitude, amplitude]; |value| <= amplitude holds
// exactly by construction of the scaling.
inline double hash_noise(const NoiseSpec& noise, const GroupPoint& x, int coordinate) {
  if (noise.amplitude == 0.0) return 0.0;
  std::uint64_t h = detail::mix64(noise.seed ^ 0x6A09E667F3BCC909ull);
  for (const auto& c : x.coords) h = detail::hash_bigint(h, c);
  h = detail::mix64(h ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(coordinate + 1)));
  const double unit = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0,1)
  return noise.amplitude * (2.0 * unit - 1.0);
}

class MapModel {
 public:
  MapModel() = default;

  static MapModel zero(int codomain_dim = 1) {
    if (codomain_dim < 1) throw std::invalid_argument("codomain dimension must be >= 1");
    MapModel m;
    m.base_ = MapBase::zero;
    m.codomain_dim_ = codomain_dim;
    return m;
  }

  static MapModel constant(CodomainVec c) {
    if (c.empty()) throw std::invalid_argument("constant map needs at least one coordinate");
    if (!vec_finite(c)) throw std::invalid_argument("constant map needs finite coordinates");
    MapModel m;
    m.base_ = MapBase::constant;
    m.codomain_dim_ = static_cast<int>(c.size());
    m.c_ = std::move(c);
    return m;
  }

  // f(x) = <a, x>, scalar-valued.
  static MapModel linear(std::vector<long long> a) {
    if (a.empty()) throw std::invalid_argument("linear map needs at least one coefficient");
    MapModel m;
    m.base_ = MapBase::linear;
    m.codomain_dim_ = 1;
    m.a_ = std::move(a);
    return m;
  }

  // f(x) = x^T Q x with symmetric integer Q, scalar-valued.
  static MapModel quadratic(std::vector<std::vector<long long>> Q) {
    if (Q.empty()) throw std::invalid_argument("quadratic map needs a nonempty matrix");
    for (std::size_t i = 0; i < Q.size(); ++i) {
      if (Q[i].size() != Q.size())
        throw std::invalid_argument("quadratic form matrix must be square");
      for (std::size_t j = 0; j < Q.size(); ++j)
        if (Q[i][j] != Q[j][i])
          throw std::invalid_argument("quadratic form matrix must be symmetric");
    }
    MapModel m;
    m.base_ = MapBase::quadratic;
    m.codomain_dim_ = 1;
    m.Q_ = std::move(Q);
    return m;
  }

  MapModel& with_noise(std::uint64_t seed, double amplitude) {
    if (amplitude < 0.0) throw std::invalid_argument("noise amplitude must be >= 0");
    noise_ = NoiseSpec{seed, amplitude};
    return *this;
  }

  MapBase base() const { return base_; }
  const NoiseSpec& noise() const { return noise_; }
  int codomain_dim() const { return codomain_dim_; }
  const CodomainVec& constant_value() const { return c_; }
  const std::vector<long long>& linear_coeffs() const { return a_; }
  const std::vector<std::vector<long long>>& quadratic_form() const { return Q_; }

  SplitEval eval_split(const GroupPoint& x) const {
    SplitEval out;
    out.exact.assign(codomain_dim_, Rational(0));
    out.remainder.assign(codomain_dim_, 0.0);
    switch (base_) {
      case MapBase::zero:
        break;
      case MapBase::constant:
        for (int i = 0; i < codomain_dim_; ++i) out.exact[i] = Rational(c_[i]);
        break;
      case MapBase::linear: {
        if (x.dim() != static_cast<int>(a_.size()))
          throw std::invalid_argument("point dimension does not match linear coefficients");
        BigInt s = 0;
        for (std::size_t i = 0; i < a_.size(); ++i) s += BigInt(a_[i]) * x.coords[i];
        out.exact[0] = Rational(s);
        break;
      }
      case MapBase::quadratic: {
        if (x.dim() != static_cast<int>(Q_.size()))
          throw std::invalid_argument("point dimension does not match quadratic form");
        BigInt s = 0;
        for (std::size_t i = 0; i < Q_.size(); ++i)
          for (std::size_t j = 0; j < Q_.size(); ++j)
            s += BigInt(Q_[i][j]) * x.coords[i] * x.coords[j];
        out.exact[0] = Rational(s);
        break;
      }
    }
    for (int i = 0; i < codomain_dim_; ++i) out.remainder[i] = hash_noise(noise_, x, i);
    return out;
  }

  CodomainVec operator()(const GroupPoint& x) const {
    CodomainVec v = eval_split(x).combined();
    if (!vec_finite(v))
      throw Error(kOverflow, "map value at " + to_string(x) + " exceeds double range");
    return v;
  }

 private:
  MapBase base_ = MapBase::zero;
  int codomain_dim_ = 1;
  CodomainVec c_;
  std::vector<long long> a_;
  std::vector<std::vector<long long>> Q_;
  NoiseSpec noise_;
};

inline CodomainVec eval_map(const MapModel& model, const GroupPoint& x) { return model(x); }

}  // namespace ostab
