#pragma once

// The evaluable-map contract consumed by the iteration engine. A map is any
// pure callable GroupPoint -> CodomainVec. Maps may additionally offer a
// split evaluation that separates an exactly-known rational component from
// a bounded double-precision remainder:
//
//     f(z) = exact(z) + remainder(z)
//
// The split matters for deep iterates: values of f at omega^n * x can reach
// 1e100 while the iterate multiplies them by contracting coefficients. With
// the exact component kept rational until after that multiplication, the
// products stay accurate at any depth; an all-double evaluation would round
// f first and amplify that rounding by the growth factor.

#include <concepts>
#include <functional>
#include <utility>
#include <vector>

#include "ostab/fspace.hpp"
#include "ostab/ortho.hpp"
#include "ostab/rational.hpp"

namespace ostab {

struct SplitEval {
  std::vector<Rational> exact;  // empty means no exact component
  CodomainVec remainder;

  CodomainVec combined() const {
    CodomainVec out = remainder;
    if (!exact.empty())
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += to_double(exact[i]);
    return out;
  }
};

template <typename F>
concept PointMap = requires(const F& f, const GroupPoint& z) {
  { f(z) } -> std::convertible_to<CodomainVec>;
};

template <typename F>
concept SplitPointMap = PointMap<F> && requires(const F& f, const GroupPoint& z) {
  { f.eval_split(z) } -> std::same_as<SplitEval>;
};

// Type-erased map used by the stability pipelines. Callables without a split
// evaluation are wrapped with everything in the remainder.
class EvalMap {
 public:
  EvalMap() = default;

  template <typename F>
    requires PointMap<std::decay_t<F>> && (!std::same_as<std::decay_t<F>, EvalMap>)
  EvalMap(F&& f) {  // NOLINT: implicit wrapping is the point
    auto shared = std::make_shared<std::decay_t<F>>(std::forward<F>(f));
    eval_ = [shared](const GroupPoint& z) -> CodomainVec { return (*shared)(z); };
    if constexpr (SplitPointMap<std::decay_t<F>>) {
      split_ = [shared](const GroupPoint& z) { return shared->eval_split(z); };
    } else {
      split_ = [shared](const GroupPoint& z) {
        return SplitEval{{}, (*shared)(z)};
      };
    }
  }

  explicit operator bool() const { return static_cast<bool>(eval_); }

  CodomainVec operator()(const GroupPoint& z) const { return eval_(z); }
  SplitEval eval_split(const GroupPoint& z) const { return split_(z); }

 private:
  std::function<CodomainVec(const GroupPoint&)> eval_;
  std::function<SplitEval(const GroupPoint&)> split_;
};

// Value of a linear combination sum_i c_i * f(p_i), with the exact
// components combined in rational arithmetic. Defect measurements use this:
// for models whose exact part solves the equation, the exact terms cancel
// identically and the result is free of large-magnitude rounding.
template <typename F>
  requires PointMap<std::decay_t<F>>
CodomainVec combination_value(const F& f,
                              const std::vector<std::pair<Rational, GroupPoint>>& terms) {
  std::vector<Rational> exact;
  CodomainVec rem;
  bool sized = false;
  for (const auto& [coeff, point] : terms) {
    SplitEval se;
    if constexpr (SplitPointMap<std::decay_t<F>>) {
      se = f.eval_split(point);
    } else if constexpr (std::same_as<std::decay_t<F>, EvalMap>) {
      se = f.eval_split(point);
    } else {
      se = SplitEval{{}, f(point)};
    }
    if (!sized) {
      rem.assign(se.remainder.size(), 0.0);
      exact.assign(se.remainder.size(), Rational(0));
      sized = true;
    }
    const double c = to_double(coeff);
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] += c * se.remainder[i];
    if (!se.exact.empty())
      for (std::size_t i = 0; i < exact.size(); ++i) exact[i] += coeff * se.exact[i];
  }
  for (std::size_t i = 0; i < rem.size(); ++i) rem[i] += to_double(exact[i]);
  return rem;
}

}  // namespace ostab
