#pragma once

// Multivariate truncated Taylor (jet) arithmetic, total order <= 4.
// A Jet stores Taylor coefficients c_alpha for every multi-index alpha with
// |alpha| <= order; the partial derivative is c_alpha * alpha!. Order 4 is
// enough for the Riemann curvature of metrics built from second derivatives
// of a potential.

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gtd/errors.hpp"

namespace gtd {

class Jet;

/// Shared, immutable description of the coefficient layout for (nvars, order):
/// multi-index list in graded order plus the product pair table. Cached and
/// reused; safe to share across threads.
class JetSpace {
 public:
  static constexpr int kMaxVars = 12;
  static constexpr int kMaxOrder = 4;

  static std::shared_ptr<const JetSpace> get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(exps_.size()); }

  using Exponents = std::array<std::uint8_t, kMaxVars>;

  const Exponents& exponents(int idx) const { return exps_[idx]; }
  int degree(int idx) const { return deg_[idx]; }

  /// Position of a multi-index, or -1 if its degree exceeds the order.
  int index_of(std::span<const int> exps) const;

  /// alpha! for the multi-index at position idx.
  double factorial(int idx) const { return fact_[idx]; }

  const std::vector<std::pair<int, int>>& product_pairs(int target) const {
    return mul_[target];
  }

 private:
  JetSpace(int nvars, int order);

  int nvars_;
  int order_;
  std::vector<Exponents> exps_;
  std::vector<int> deg_;
  std::vector<double> fact_;
  std::unordered_map<std::uint64_t, int> lookup_;
  std::vector<std::vector<std::pair<int, int>>> mul_;
};

class Jet {
 public:
  Jet() = default;
  Jet(std::shared_ptr<const JetSpace> space, double constant_value);

  static Jet constant(int nvars, int order, double value);

  int nvars() const { return space_->nvars(); }
  int order() const { return space_->order(); }
  const std::shared_ptr<const JetSpace>& space() const { return space_; }

  double value() const { return c_[0]; }

  /// Partial derivative for a multi-index (coefficient times factorial).
  double partial(std::span<const int> multi_index) const;

  double coeff(int idx) const { return c_[idx]; }
  double& coeff(int idx) { return c_[idx]; }

  /// d/dx_var, as a jet of one order lower.
  Jet derivative(int var) const;

  /// Copy truncated to a lower (or equal) order.
  Jet truncated(int order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double s);
  Jet& operator-=(double s);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s);

  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  /// Composition with a power series around value(): sum series[m] (x-x0)^m.
  Jet compose(std::span<const double> series) const;

  bool is_constant() const;

 private:
  void check_same_space(const Jet& o) const;

  std::shared_ptr<const JetSpace> space_;
  std::vector<double> c_;
};

/// One seed jet per variable, centered at `point`. order in 1..4.
std::vector<Jet> seed_jets(std::span<const double> point, int order);

Jet log(const Jet& x);
Jet exp(const Jet& x);
Jet sqrt(const Jet& x);
Jet pow(const Jet& x, double p);
Jet pow_int(const Jet& x, long long e);
Jet pow(const Jet& x, const Jet& p);

}  // namespace gtd
