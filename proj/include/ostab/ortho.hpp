#pragma once

// Orthogonality relations on the lattice Z^d, with axiom checkers for the
// Fechner-Sikorska laws, the generalized Cauchy laws, the diagonal-closure
// laws used by the quadratic pipeline, and (on real-vector samples) the
// Ratz orthogonality-space laws.
//
// Shipped relation kinds:
//   inner-product        x ~ y  iff  <x,y> = 0 in exact integer arithmetic
//   trivial              every pair related
//   diagonal-augmented   inner-product plus (x,x), (x,-x), (-x,-x) for all x
//
// The diagonal-augmented relation exists because the stability derivations
// consume the pairs (x,x) and (x,-x) for arbitrary x, which genuine
// inner-product orthogonality provides only at 0. Existential laws are
// checked through explicit witness providers; a relation without one gets
// "not-checkable", never a silent pass.

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ostab/axiom_report.hpp"
#include "ostab/fspace.hpp"
#include "ostab/rational.hpp"

namespace ostab {

struct GroupPoint {
  std::vector<BigInt> coords;

  GroupPoint() = default;
  explicit GroupPoint(std::vector<BigInt> c) : coords(std::move(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }

  bool operator==(const GroupPoint& o) const = default;
  auto operator<=>(const GroupPoint& o) const = default;

  GroupPoint operator+(const GroupPoint& o) const {
    check_dim(o);
    GroupPoint r = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
    return r;
  }

  GroupPoint operator-(const GroupPoint& o) const {
    check_dim(o);
    GroupPoint r = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
    return r;
  }

  GroupPoint operator-() const {
    GroupPoint r = *this;
    for (auto& c : r.coords) c = -c;
    return r;
  }

  GroupPoint scaled(const BigInt& t) const {
    GroupPoint r = *this;
    for (auto& c : r.coords) c *= t;
    return r;
  }

  bool is_zero() const {
    for (const auto& c : coords)
      if (c != 0) return false;
    return true;
  }

  void check_dim(const GroupPoint& o) const {
    if (coords.size() != o.coords.size())
      throw std::invalid_argument("group points have mismatched dimensions");
  }
};

inline GroupPoint zero_point(int dim) { return GroupPoint(std::vector<BigInt>(dim, BigInt(0))); }

inline GroupPoint make_point(std::initializer_list<long long> cs) {
  std::vector<BigInt> v;
  for (long long c : cs) v.emplace_back(c);
  return GroupPoint(std::move(v));
}

inline std::string to_string(const GroupPoint& p) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < p.dim(); ++i) os << (i ? "," : "") << p.coords[i].str();
  os << ")";
  return os.str();
}

inline BigInt dot(const GroupPoint& x, const GroupPoint& y) {
  x.check_dim(y);
  BigInt s = 0;
  for (std::size_t i = 0; i < x.coords.size(); ++i) s += x.coords[i] * y.coords[i];
  return s;
}

enum class RelationKind { inner_product, trivial, diagonal_augmented, custom };

inline const char* to_string(RelationKind k) {
  switch (k) {
    case RelationKind::inner_product: return "inner-product";
    case RelationKind::trivial: return "trivial";
    case RelationKind::diagonal_augmented: return "diagonal-augmented";
    case RelationKind::custom: return "custom";
  }
  return "?";
}

struct OrthoRelation {
  using Predicate = std::function<bool(const GroupPoint&, const GroupPoint&)>;
  // Maps x to a y with x ~ y and x+y ~ x-y, when the relation can supply one.
  using FsWitness = std::function<std::optional<GroupPoint>(const GroupPoint&)>;

  RelationKind kind = RelationKind::inner_product;
  std::string name = "inner-product";
  Predicate predicate;   // used only for kind == custom
  FsWitness fs_witness;  // absent -> existential law reported not-checkable

  static OrthoRelation inner_product() {
    OrthoRelation r;
    r.kind = RelationKind::inner_product;
    r.name = "inner-product";
    r.fs_witness = [](const GroupPoint& x) -> std::optional<GroupPoint> {
      // Quarter-turn witness: <x,y> = 0 and |y| = |x|, hence x+y ~ x-y.
      // Only available in dimension 2.
      if (x.dim() != 2) return std::nullopt;
      return GroupPoint({std::vector<BigInt>{-x.coords[1], x.coords[0]}});
    };
    return r;
  }

  static OrthoRelation trivial() {
    OrthoRelation r;
    r.kind = RelationKind::trivial;
    r.name = "trivial";
    r.fs_witness = [](const GroupPoint& x) -> std::optional<GroupPoint> { return x; };
    return r;
  }

  static OrthoRelation diagonal_augmented() {
    OrthoRelation r;
    r.kind = RelationKind::diagonal_augmented;
    r.name = "diagonal-augmented";
    // y = x works in every dimension: x ~ x by the diagonal part, and
    // x+y = 2x ~ x-y = 0 through the zero pair.
    r.fs_witness = [](const GroupPoint& x) -> std::optional<GroupPoint> { return x; };
    return r;
  }

  static OrthoRelation custom(std::string name, Predicate pred, FsWitness witness = nullptr) {
    OrthoRelation r;
    r.kind = RelationKind::custom;
    r.name = std::move(name);
    r.predicate = std::move(pred);
    r.fs_witness = std::move(witness);
    return r;
  }
};

inline OrthoRelation relation_from_string(const std::string& s) {
  if (s == "inner-product") return OrthoRelation::inner_product();
  if (s == "trivial") return OrthoRelation::trivial();
  if (s == "diagonal-augmented") return OrthoRelation::diagonal_augmented();
  throw std::invalid_argument("unknown relation kind: '" + s + "'");
}

inline bool related(const OrthoRelation& rel, const GroupPoint& x, const GroupPoint& y) {
  x.check_dim(y);
  switch (rel.kind) {
    case RelationKind::inner_product:
      return dot(x, y) == 0;
    case RelationKind::trivial:
      return true;
    case RelationKind::diagonal_augmented:
      return dot(x, y) == 0 || x == y || x == -y;
    case RelationKind::custom:
      return rel.predicate(x, y);
  }
  return false;
}

namespace detail {

inline std::vector<GroupPoint> sample_points(int dim, long long count, std::uint64_t seed) {
  std::vector<GroupPoint> pts;
  pts.push_back(zero_point(dim));
  for (int i = 0; i < dim; ++i) {
    GroupPoint e = zero_point(dim);
    e.coords[i] = 1;
    pts.push_back(e);
  }
  pts.push_back(GroupPoint(std::vector<BigInt>(dim, BigInt(1))));
  SampleStream rng(seed);
  while (static_cast<long long>(pts.size()) < count) {
    std::vector<BigInt> c(dim);
    for (auto& v : c) v = BigInt(rng.integer(-20, 20));
    pts.emplace_back(std::move(c));
  }
  return pts;
}

inline std::string pair_string(const GroupPoint& x, const GroupPoint& y) {
  return to_string(x) + " ~ " + to_string(y);
}

}  // namespace detail

// Deterministic enumeration of related pairs with both members in the box
// [-R, R]^d, in lexicographic order (x outer, y inner), truncated at limit.
inline std::vector<std::pair<GroupPoint, GroupPoint>> orthogonal_pairs(const OrthoRelation& rel,
                                                                       int dim, int box_radius,
                                                                       long long limit) {
  if (limit < 1) throw std::invalid_argument("pair limit must be >= 1");
  if (box_radius < 0) throw std::invalid_argument("box radius must be >= 0");
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");

  std::vector<GroupPoint> grid;
  GroupPoint p(std::vector<BigInt>(dim, BigInt(-box_radius)));
  while (true) {
    grid.push_back(p);
    int i = dim - 1;
    while (i >= 0 && p.coords[i] == box_radius) {
      p.coords[i] = -box_radius;
      --i;
    }
    if (i < 0) break;
    p.coords[i] += 1;
  }

  std::vector<std::pair<GroupPoint, GroupPoint>> out;
  for (const auto& x : grid) {
    for (const auto& y : grid) {
      if (related(rel, x, y)) {
        out.emplace_back(x, y);
        if (static_cast<long long>(out.size()) == limit) return out;
      }
    }
  }
  return out;
}

// Fechner-Sikorska laws. Law (1) is universal and checked on related sample
// pairs; law (2) is existential and goes through the witness provider.
inline AxiomReport check_fs_axioms(const OrthoRelation& rel, int dim, long long sample_count,
                                   std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");

  AxiomReport report;
  report.subject = rel.name + " on Z^" + std::to_string(dim);

  AxiomCheck law1{"fs-1-negation-and-doubling"};
  AxiomCheck law2{"fs-2-witness-existence"};

  // Candidate related pairs: a small deterministic enumeration plus the
  // diagonal forms of sampled points. Random pairs are almost never related
  // under inner-product kinds, so enumeration does the heavy lifting.
  auto pairs = orthogonal_pairs(rel, dim, 2, sample_count);
  const auto pts = detail::sample_points(dim, sample_count / 4 + 4, seed);
  for (const auto& x : pts) {
    if (related(rel, x, x)) pairs.emplace_back(x, x);
    if (related(rel, x, -x)) pairs.emplace_back(x, -x);
  }

  long long budget = sample_count;
  for (const auto& [x, y] : pairs) {
    if (budget-- <= 0) break;
    ++law1.samples_checked;
    ++law1.nonvacuous;
    const GroupPoint x2 = x + x, y2 = y + y;
    if (law1.status == CheckStatus::passed) {
      if (!related(rel, x, -y)) {
        law1.status = CheckStatus::failed;
        law1.counterexample = detail::pair_string(x, y) + " but not x ~ -y";
      } else if (!related(rel, -x, y)) {
        law1.status = CheckStatus::failed;
        law1.counterexample = detail::pair_string(x, y) + " but not -x ~ y";
      } else if (!related(rel, x2, y2)) {
        law1.status = CheckStatus::failed;
        law1.counterexample = detail::pair_string(x, y) + " but not 2x ~ 2y";
      }
    }
  }

  if (!rel.fs_witness) {
    law2.status = CheckStatus::not_checkable;
    law2.counterexample = "no witness provider";
  } else {
    for (const auto& x : pts) {
      ++law2.samples_checked;
      const auto y = rel.fs_witness(x);
      if (!y) {
        law2.status = CheckStatus::not_checkable;
        law2.counterexample = "witness unavailable at x=" + to_string(x);
        continue;
      }
      ++law2.nonvacuous;
      if (law2.status == CheckStatus::passed &&
          (!related(rel, x, *y) || !related(rel, x + *y, x - *y))) {
        law2.status = CheckStatus::failed;
        law2.counterexample = "witness y=" + to_string(*y) + " fails at x=" + to_string(x);
      }
    }
  }

  report.checks = {law1, law2};
  return report;
}

// Generalized Cauchy laws: (a) 0 ~ x and x ~ 0 for all x; (b) x ~ x implies
// x ~ -x.
inline AxiomReport check_gc_axioms(const OrthoRelation& rel, int dim, long long sample_count,
                                   std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");

  AxiomReport report;
  report.subject = rel.name + " on Z^" + std::to_string(dim);

  AxiomCheck lawA{"gc-a-zero-pairs"};
  AxiomCheck lawB{"gc-b-diagonal-implies-negation"};

  const auto pts = detail::sample_points(dim, sample_count, seed);
  const GroupPoint zero = zero_point(dim);
  for (const auto& x : pts) {
    ++lawA.samples_checked;
    ++lawA.nonvacuous;
    if (lawA.status == CheckStatus::passed && (!related(rel, zero, x) || !related(rel, x, zero))) {
      lawA.status = CheckStatus::failed;
      lawA.counterexample = "zero pair missing at x=" + to_string(x);
    }

    ++lawB.samples_checked;
    if (related(rel, x, x)) {
      ++lawB.nonvacuous;
      if (lawB.status == CheckStatus::passed && !related(rel, x, -x)) {
        lawB.status = CheckStatus::failed;
        lawB.counterexample = "x ~ x but not x ~ -x at x=" + to_string(x);
      }
    }
  }

  report.checks = {lawA, lawB};
  return report;
}

// Diagonal-closure laws used by the quadratic pipeline: (a) zero pairs;
// (b) x ~ x implies -x ~ -x and x ~ -x.
inline AxiomReport check_sec3_axioms(const OrthoRelation& rel, int dim, long long sample_count,
                                     std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");

  AxiomReport report;
  report.subject = rel.name + " on Z^" + std::to_string(dim);

  AxiomCheck lawA{"sec3-a-zero-pairs"};
  AxiomCheck lawB{"sec3-b-diagonal-closure"};

  const auto pts = detail::sample_points(dim, sample_count, seed);
  const GroupPoint zero = zero_point(dim);
  for (const auto& x : pts) {
    ++lawA.samples_checked;
    ++lawA.nonvacuous;
    if (lawA.status == CheckStatus::passed && (!related(rel, zero, x) || !related(rel, x, zero))) {
      lawA.status = CheckStatus::failed;
      lawA.counterexample = "zero pair missing at x=" + to_string(x);
    }

    ++lawB.samples_checked;
    if (related(rel, x, x)) {
      ++lawB.nonvacuous;
      if (lawB.status == CheckStatus::passed &&
          (!related(rel, -x, -x) || !related(rel, x, -x))) {
        lawB.status = CheckStatus::failed;
        lawB.counterexample = "diagonal not closed under negation at x=" + to_string(x);
      }
    }
  }

  report.checks = {lawA, lawB};
  return report;
}

// Constructive witness for the Ratz law (4) over real vectors: for x != 0,
// y = sqrt(lambda) * |x| * u with u a unit vector orthogonal to x, so that
// <x,y> = 0 and <x+y, lambda*x - y> = lambda|x|^2 - |y|^2 = 0. In dimension
// 2 the quarter-turn u = (-x2, x1)/|x| is used.
inline std::vector<double> ratz_witness(const std::vector<double>& x, double lambda) {
  if (x.size() < 2) throw std::invalid_argument("ratz witness needs dimension >= 2");
  if (lambda < 0.0) throw std::invalid_argument("ratz witness needs lambda >= 0");

  double norm2 = 0.0;
  for (double v : x) norm2 += v * v;
  if (norm2 == 0.0) return std::vector<double>(x.size(), 0.0);
  const double norm = std::sqrt(norm2);

  std::vector<double> u(x.size(), 0.0);
  if (x.size() == 2) {
    u[0] = -x[1] / norm;
    u[1] = x[0] / norm;
  } else {
    // Gram-Schmidt against the basis vector least aligned with x.
    std::size_t k = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
      if (std::abs(x[i]) < std::abs(x[k])) k = i;
    u[k] = 1.0;
    const double proj = x[k] / norm2;
    for (std::size_t i = 0; i < x.size(); ++i) u[i] -= proj * x[i];
    double un = 0.0;
    for (double v : u) un += v * v;
    un = std::sqrt(un);
    for (auto& v : u) v /= un;
  }

  std::vector<double> y(x.size());
  const double scale = std::sqrt(lambda) * norm;
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = scale * u[i];
  return y;
}

// Ratz orthogonality-space laws, checked for exact inner-product
// orthogonality on real-vector samples in dimension >= 2. Laws (1)-(3) are
// sampled; law (4) is checked constructively through ratz_witness.
inline AxiomReport check_ratz_axioms(int dim, long long sample_count, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("Ratz laws require dimension >= 2");
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");

  AxiomReport report;
  report.subject = "inner-product on R^" + std::to_string(dim);

  AxiomCheck law1{"ratz-1-zero-pairs"};
  AxiomCheck law2{"ratz-2-independence"};
  AxiomCheck law3{"ratz-3-scaling"};
  AxiomCheck law4{"ratz-4-witness"};

  const double tol = 1e-9;
  detail::SampleStream rng(seed);

  const auto rdot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  const auto rnorm2 = [&rdot](const std::vector<double>& a) { return rdot(a, a); };
  const auto rvec_str = [](const std::vector<double>& a) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
    return os.str();
  };

  std::vector<std::vector<double>> xs;
  if (dim == 2) {
    xs.push_back({1.0, 0.0});
    xs.push_back({3.0, 4.0});
  }
  xs.push_back(std::vector<double>(dim, 0.0));
  while (static_cast<long long>(xs.size()) < sample_count) {
    std::vector<double> x(dim);
    for (auto& v : x) v = rng.symmetric(10.0);
    xs.push_back(std::move(x));
  }

  const std::vector<double> zero(dim, 0.0);
  for (const auto& x : xs) {
    ++law1.samples_checked;
    ++law1.nonvacuous;
    if (law1.status == CheckStatus::passed &&
        (std::abs(rdot(x, zero)) != 0.0 || std::abs(rdot(zero, x)) != 0.0)) {
      law1.status = CheckStatus::failed;
      law1.counterexample = "x=" + rvec_str(x);
    }

    const double n2 = rnorm2(x);
    if (n2 > 1e-12) {
      // Build an orthogonal partner and exercise laws (2) and (3).
      std::vector<double> y0(dim);
      for (auto& v : y0) v = rng.symmetric(10.0);
      const double proj = rdot(y0, x) / n2;
      std::vector<double> y(dim);
      for (int i = 0; i < dim; ++i) y[i] = y0[i] - proj * x[i];

      if (rnorm2(y) > 1e-12) {
        ++law2.samples_checked;
        ++law2.nonvacuous;
        const double gram = n2 * rnorm2(y) - rdot(x, y) * rdot(x, y);
        if (law2.status == CheckStatus::passed && !(gram > 0.0)) {
          law2.status = CheckStatus::failed;
          law2.counterexample = "x=" + rvec_str(x) + " y=" + rvec_str(y);
        }

        ++law3.samples_checked;
        ++law3.nonvacuous;
        const double a = rng.symmetric(5.0), b = rng.symmetric(5.0);
        std::vector<double> ax(dim), by(dim);
        for (int i = 0; i < dim; ++i) {
          ax[i] = a * x[i];
          by[i] = b * y[i];
        }
        const double scale = 1.0 + std::sqrt(rnorm2(ax) * rnorm2(by));
        if (law3.status == CheckStatus::passed && std::abs(rdot(ax, by)) > tol * scale) {
          law3.status = CheckStatus::failed;
          law3.counterexample = "a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                " x=" + rvec_str(x) + " y=" + rvec_str(y);
        }
      }
    }

    static const double structured_lambda[] = {0.0, 1.0, 4.0};
    for (int li = 0; li < 4; ++li) {
      const double lambda = li < 3 ? structured_lambda[li] : 10.0 * rng.unit();
      ++law4.samples_checked;
      ++law4.nonvacuous;
      const auto y = ratz_witness(x, lambda);
      std::vector<double> xpy(dim), lxmy(dim);
      for (int i = 0; i < dim; ++i) {
        xpy[i] = x[i] + y[i];
        lxmy[i] = lambda * x[i] - y[i];
      }
      const double scale = 1.0 + std::sqrt(rnorm2(x) * rnorm2(y)) +
                           std::sqrt(rnorm2(xpy) * rnorm2(lxmy));
      if (law4.status == CheckStatus::passed &&
          (std::abs(rdot(x, y)) > tol * scale || std::abs(rdot(xpy, lxmy)) > tol * scale)) {
        law4.status = CheckStatus::failed;
        law4.counterexample = "x=" + rvec_str(x) + " lambda=" + std::to_string(lambda) +
                              " y=" + rvec_str(y);
      }
    }
  }

  report.checks = {law1, law2, law3, law4};
  return report;
}

}  // namespace ostab
