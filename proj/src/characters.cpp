#include "qcss/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qcss {

UnitSymbol unit_mul(UnitSymbol a, UnitSymbol b) {
  if (a.order != b.order) throw std::invalid_argument("unit_mul: incompatible symbol orders");
  return UnitSymbol{static_cast<std::uint32_t>((std::uint64_t{a.exp} + b.exp) % a.order), a.order};
}

UnitSymbol unit_conj(UnitSymbol s) {
  return UnitSymbol{(s.order - s.exp % s.order) % s.order, s.order};
}

UnitSymbol lift(UnitSymbol s, std::uint32_t new_order) {
  if (s.order == 0 || new_order % s.order != 0) {
    throw std::invalid_argument("lift: target order is not a multiple of the symbol order");
  }
  return UnitSymbol{static_cast<std::uint32_t>(std::uint64_t{s.exp} * (new_order / s.order) % new_order),
                    new_order};
}

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

ExactSum::ExactSum(std::uint32_t order) : order_(order), counts_(order, 0) {
  if (order == 0) throw std::invalid_argument("ExactSum order must be positive");
}

ExactSum::ExactSum(std::uint32_t order, std::vector<std::int64_t> counts)
    : order_(order), counts_(std::move(counts)) {
  if (order == 0 || counts_.size() != order) {
    throw std::invalid_argument("ExactSum histogram length must equal its order");
  }
}

void ExactSum::add(UnitSymbol s) {
  if (s.order != order_) throw std::invalid_argument("ExactSum::add: incompatible symbol order");
  counts_[s.exp] += 1;
}

ExactSum& ExactSum::operator+=(const ExactSum& other) {
  if (other.order_ != order_) throw std::invalid_argument("ExactSum: incompatible orders");
  for (std::uint32_t j = 0; j < order_; ++j) counts_[j] += other.counts_[j];
  return *this;
}

ExactSum ExactSum::conj() const {
  ExactSum out(order_);
  for (std::uint32_t j = 0; j < order_; ++j) out.counts_[(order_ - j) % order_] = counts_[j];
  return out;
}

std::int64_t ExactSum::total_weight() const {
  std::int64_t w = 0;
  for (auto c : counts_) w += c < 0 ? -c : c;
  return w;
}

double ExactSum::magnitude() const {
  double re = 0.0;
  double im = 0.0;
  const double step = 2.0 * std::numbers::pi / order_;
  for (std::uint32_t j = 0; j < order_; ++j) {
    if (counts_[j] == 0) continue;
    const double c = static_cast<double>(counts_[j]);
    re += c * std::cos(step * j);
    im += c * std::sin(step * j);
  }
  const double mag = std::hypot(re, im);
  // Only a provably vanishing sum is reported as exactly 0.
  if (mag < 1e-6 && is_exact_zero()) return 0.0;
  return mag;
}

bool ExactSum::balanced_over(std::uint32_t r) const {
  if (r < 2 || order_ % r != 0) return false;
  const std::uint32_t stride = order_ / r;
  for (std::uint32_t j = 0; j < order_; ++j) {
    if (counts_[j] != counts_[(j + stride) % order_]) return false;
  }
  return true;
}

std::vector<std::int64_t> cyclotomic_polynomial(std::uint32_t order) {
  if (order == 0) throw std::invalid_argument("cyclotomic polynomial order must be positive");
  // Möbius product: Phi_L(x) = prod_{d | L} (x^d - 1)^{mu(L/d)}.
  auto mobius = [](std::uint32_t v) {
    int mu = 1;
    for (std::uint32_t d = 2; d * d <= v; ++d) {
      if (v % d == 0) {
        v /= d;
        if (v % d == 0) return 0;
        mu = -mu;
      }
    }
    if (v > 1) mu = -mu;
    return mu;
  };
  std::vector<std::int64_t> num{1};
  std::vector<std::uint32_t> denominators;
  for (std::uint32_t d = 1; d <= order; ++d) {
    if (order % d != 0) continue;
    const int mu = mobius(order / d);
    if (mu == 1) {
      std::vector<std::int64_t> next(num.size() + d, 0);
      for (std::size_t i = 0; i < num.size(); ++i) {
        next[i + d] += num[i];
        next[i] -= num[i];
      }
      num = std::move(next);
    } else if (mu == -1) {
      denominators.push_back(d);
    }
  }
  for (auto d : denominators) {
    // Exact division by x^d - 1: q_i = q_{i-d} - num_i read from the top down.
    const std::size_t deg = num.size() - 1;
    std::vector<std::int64_t> quot(deg - d + 1, 0);
    std::vector<std::int64_t> rem = num;
    for (std::size_t i = deg; i + 1 > d; --i) {
      const std::int64_t c = rem[i];
      quot[i - d] = c;
      rem[i] -= c;
      rem[i - d] += c;
    }
    num = std::move(quot);
  }
  return num;
}

bool ExactSum::is_exact_zero() const {
  const auto phi = cyclotomic_polynomial(order_);
  std::vector<std::int64_t> rem = counts_;
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = rem.size(); i-- > deg;) {
    const std::int64_t c = rem[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) rem[i - deg + j] -= c * phi[j];
  }
  for (auto c : rem) {
    if (c != 0) return false;
  }
  return true;
}

UnitSymbol additive_char(const FieldCtx& ctx, FqElem a, FqElem x) {
  return UnitSymbol{ctx.trace_to_prime(ctx.mul(a, x)), ctx.p()};
}

UnitSymbol mult_char(const FieldCtx& ctx, std::uint64_t j, FqElem x) {
  if (x.value == 0) throw std::domain_error("multiplicative character evaluated at zero");
  const std::uint64_t order = ctx.q() - 1;
  return UnitSymbol{static_cast<std::uint32_t>((j % order) * ctx.dlog(x) % order),
                    static_cast<std::uint32_t>(order)};
}

UnitSymbol quadratic_char(const FieldCtx& ctx, FqElem x) {
  if (ctx.q() % 2 == 0) throw std::invalid_argument("quadratic character requires odd q");
  return mult_char(ctx, (ctx.q() - 1) / 2, x);
}

std::vector<FqElem> msequence(const FieldCtx& ctx, unsigned r) {
  if (r != 2) throw std::invalid_argument("msequence: only r = 2 is supported");
  const std::uint64_t period = std::uint64_t{ctx.q()} * ctx.q() - 1;
  std::vector<FqElem> s;
  s.reserve(period);
  Fq2Elem cur = ctx.embed(ctx.one());
  for (std::uint64_t j = 0; j < period; ++j) {
    s.push_back(ctx.rel_trace(cur));
    cur = ctx.mul(cur, ctx.beta());
  }
  return s;
}

}  // namespace qcss
