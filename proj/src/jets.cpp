#include "gtd/jets.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>

namespace gtd {

namespace {

std::uint64_t pack(std::span<const std::uint8_t> exps) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < exps.size(); ++i)
    key |= static_cast<std::uint64_t>(exps[i] & 0x7u) << (3 * i);
  return key;
}

}  // namespace

JetSpace::JetSpace(int nvars, int order) : nvars_(nvars), order_(order) {
  // Multi-indices by increasing total degree, so truncation is a prefix copy.
  Exponents cur{};
  for (int deg = 0; deg <= order; ++deg) {
    // enumerate compositions of deg into nvars parts, lexicographic
    std::vector<int> stack;
    cur.fill(0);
    // recursive enumeration via explicit loop
    std::function<void(int, int)> rec = [&](int var, int remaining) {
      if (var == nvars - 1) {
        cur[var] = static_cast<std::uint8_t>(remaining);
        exps_.push_back(cur);
        deg_.push_back(deg);
        return;
      }
      for (int e = remaining; e >= 0; --e) {
        cur[var] = static_cast<std::uint8_t>(e);
        rec(var + 1, remaining - e);
      }
      cur[var] = 0;
    };
    if (nvars == 0) {
      if (deg == 0) {
        exps_.push_back(cur);
        deg_.push_back(0);
      }
    } else {
      rec(0, deg);
    }
  }
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    lookup_[pack({exps_[i].data(), static_cast<std::size_t>(nvars_)})] =
        static_cast<int>(i);
    double f = 1.0;
    for (int v = 0; v < nvars_; ++v)
      for (int k = 2; k <= exps_[i][v]; ++k) f *= k;
    fact_.push_back(f);
  }
  mul_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    for (std::size_t j = 0; j < exps_.size(); ++j) {
      if (deg_[i] + deg_[j] > order_) continue;
      Exponents sum{};
      for (int v = 0; v < nvars_; ++v)
        sum[v] = static_cast<std::uint8_t>(exps_[i][v] + exps_[j][v]);
      auto it = lookup_.find(pack({sum.data(), static_cast<std::size_t>(nvars_)}));
      mul_[it->second].emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
}

std::shared_ptr<const JetSpace> JetSpace::get(int nvars, int order) {
  if (nvars < 1 || nvars > kMaxVars)
    throw std::invalid_argument("JetSpace: nvars out of range");
  if (order < 0 || order > kMaxOrder)
    throw std::invalid_argument("JetSpace: order must be in 0..4");
  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetSpace>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot = std::shared_ptr<const JetSpace>(new JetSpace(nvars, order));
  return slot;
}

int JetSpace::index_of(std::span<const int> exps) const {
  if (static_cast<int>(exps.size()) != nvars_)
    throw std::invalid_argument("index_of: wrong multi-index length");
  Exponents e{};
  int deg = 0;
  for (int v = 0; v < nvars_; ++v) {
    if (exps[v] < 0) throw std::invalid_argument("index_of: negative exponent");
    e[v] = static_cast<std::uint8_t>(exps[v]);
    deg += exps[v];
  }
  if (deg > order_) return -1;
  return lookup_.at(pack({e.data(), static_cast<std::size_t>(nvars_)}));
}

Jet::Jet(std::shared_ptr<const JetSpace> space, double constant_value)
    : space_(std::move(space)), c_(space_->size(), 0.0) {
  c_[0] = constant_value;
}

Jet Jet::constant(int nvars, int order, double value) {
  return Jet(JetSpace::get(nvars, order), value);
}

double Jet::partial(std::span<const int> multi_index) const {
  int idx = space_->index_of(multi_index);
  if (idx < 0)
    throw std::out_of_range("Jet::partial: multi-index degree exceeds order");
  return c_[idx] * space_->factorial(idx);
}

Jet Jet::derivative(int var) const {
  if (var < 0 || var >= nvars())
    throw std::out_of_range("Jet::derivative: variable out of range");
  if (order() < 1)
    throw std::invalid_argument("Jet::derivative: order 0 jet");
  Jet out(JetSpace::get(nvars(), order() - 1), 0.0);
  const auto& sp = *out.space_;
  std::array<int, JetSpace::kMaxVars> tmp{};
  for (int i = 0; i < sp.size(); ++i) {
    const auto& e = sp.exponents(i);
    for (int v = 0; v < nvars(); ++v) tmp[v] = e[v];
    tmp[var] += 1;
    int src = space_->index_of({tmp.data(), static_cast<std::size_t>(nvars())});
    out.c_[i] = c_[src] * tmp[var];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  if (order > this->order())
    throw std::invalid_argument("Jet::truncated: cannot raise order");
  Jet out(JetSpace::get(nvars(), order), 0.0);
  // graded layout: coefficients of degree <= order form a prefix
  for (int i = 0; i < out.space_->size(); ++i) out.c_[i] = c_[i];
  return out;
}

void Jet::check_same_space(const Jet& o) const {
  if (space_ != o.space_)
    throw std::invalid_argument("Jet arithmetic on mismatched spaces");
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (auto& v : out.c_) v = -v;
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  check_same_space(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_same_space(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator+=(double s) {
  c_[0] += s;
  return *this;
}

Jet& Jet::operator-=(double s) {
  c_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet operator/(Jet a, double s) {
  if (s == 0.0) throw DomainError("division by zero");
  return a *= (1.0 / s);
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_same_space(b);
  Jet out(a.space_, 0.0);
  out.c_[0] = 0.0;
  const auto& sp = *a.space_;
  for (int k = 0; k < sp.size(); ++k) {
    double acc = 0.0;
    for (const auto& [i, j] : sp.product_pairs(k)) acc += a.c_[i] * b.c_[j];
    out.c_[k] = acc;
  }
  return out;
}

bool Jet::is_constant() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0.0) return false;
  return true;
}

Jet Jet::compose(std::span<const double> series) const {
  // Horner in (x - x0), whose constant term is zero.
  Jet dx = *this;
  dx.coeff(0) = 0.0;
  int ord = order();
  Jet out(space_, series[ord]);
  for (int m = ord - 1; m >= 0; --m) {
    out = out * dx;
    out += series[m];
  }
  return out;
}

namespace {

Jet recip(const Jet& x) {
  double u0 = x.value();
  if (u0 == 0.0) throw DomainError("division by zero");
  std::vector<double> s(x.order() + 1);
  double p = 1.0 / u0;
  for (int m = 0; m <= x.order(); ++m) {
    s[m] = (m % 2 == 0 ? p : -p);
    p /= u0;
  }
  return x.compose(s);
}

}  // namespace

Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

Jet log(const Jet& x) {
  double u0 = x.value();
  if (u0 <= 0.0) throw DomainError("ln of non-positive value");
  std::vector<double> s(x.order() + 1);
  s[0] = std::log(u0);
  double p = 1.0 / u0;
  for (int m = 1; m <= x.order(); ++m) {
    s[m] = (m % 2 == 1 ? p : -p) / m;
    p /= u0;
  }
  return x.compose(s);
}

Jet exp(const Jet& x) {
  std::vector<double> s(x.order() + 1);
  double e = std::exp(x.value());
  double mf = 1.0;
  for (int m = 0; m <= x.order(); ++m) {
    if (m > 0) mf *= m;
    s[m] = e / mf;
  }
  return x.compose(s);
}

Jet pow(const Jet& x, double p) {
  double u0 = x.value();
  if (u0 <= 0.0) throw DomainError("non-integer power of non-positive base");
  std::vector<double> s(x.order() + 1);
  double binom = 1.0;
  for (int m = 0; m <= x.order(); ++m) {
    if (m > 0) binom *= (p - (m - 1)) / m;
    s[m] = binom * std::pow(u0, p - m);
  }
  return x.compose(s);
}

Jet sqrt(const Jet& x) {
  if (x.value() <= 0.0) throw DomainError("sqrt of non-positive value");
  return pow(x, 0.5);
}

Jet pow_int(const Jet& x, long long e) {
  if (e < 0) return recip(pow_int(x, -e));
  Jet result = Jet(x.space(), 1.0);
  Jet base = x;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Jet pow(const Jet& x, const Jet& p) {
  if (p.is_constant()) {
    double pv = p.value();
    double r = std::round(pv);
    if (std::abs(pv - r) < 1e-12 && std::abs(r) < 1e9)
      return pow_int(x, static_cast<long long>(r));
    return pow(x, pv);
  }
  return exp(p * log(x));
}

std::vector<Jet> seed_jets(std::span<const double> point, int order) {
  if (order < 1 || order > JetSpace::kMaxOrder)
    throw std::invalid_argument("seed_jets: order must be in 1..4");
  int n = static_cast<int>(point.size());
  auto space = JetSpace::get(n, order);
  std::vector<Jet> out;
  out.reserve(n);
  std::array<int, JetSpace::kMaxVars> e{};
  for (int v = 0; v < n; ++v) {
    Jet j(space, point[v]);
    for (int u = 0; u < n; ++u) e[u] = (u == v) ? 1 : 0;
    j.coeff(space->index_of({e.data(), static_cast<std::size_t>(n)})) = 1.0;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace gtd
