#pragma once

// Exact unit-root arithmetic. A symbol is an exponent k standing for
// zeta_L^k = exp(2*pi*i*k/L); a sum of symbols is an integer histogram over Z_L.
// Floating point only enters through ExactSum::magnitude().

#include <cstdint>
#include <vector>

#include "qcss/galois.hpp"

namespace qcss {

struct UnitSymbol {
  std::uint32_t exp = 0;
  std::uint32_t order = 1;

  friend bool operator==(const UnitSymbol&, const UnitSymbol&) = default;
};

// Throws std::invalid_argument on mismatched orders.
UnitSymbol unit_mul(UnitSymbol a, UnitSymbol b);
UnitSymbol unit_conj(UnitSymbol s);
// Re-express s as a power of zeta_{new_order}; requires s.order | new_order.
UnitSymbol lift(UnitSymbol s, std::uint32_t new_order);

std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

class ExactSum {
 public:
  explicit ExactSum(std::uint32_t order);
  ExactSum(std::uint32_t order, std::vector<std::int64_t> counts);

  std::uint32_t order() const { return order_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }

  void add(std::uint32_t exp, std::int64_t times = 1) { counts_[exp % order_] += times; }
  void add(UnitSymbol s);
  ExactSum& operator+=(const ExactSum& other);

  // Exponent negation: histogram of the complex conjugate.
  ExactSum conj() const;
  // Sum of |counts|; for a sum of unit terms this is the number of terms.
  std::int64_t total_weight() const;

  // |sum_j counts[j] * zeta_L^j| in double precision. The absolute error is
  // below 1e-9 * total_weight(); sums that are exactly zero return 0.0.
  double magnitude() const;

  // True when the histogram is invariant under j -> j + L/r, i.e. it is a union
  // of complete cosets of the r-th roots of unity (so the sum is exactly zero).
  bool balanced_over(std::uint32_t r) const;
  // Exact zero test: the polynomial sum counts[j] x^j is divisible by the L-th
  // cyclotomic polynomial.
  bool is_exact_zero() const;

  friend bool operator==(const ExactSum&, const ExactSum&) = default;

 private:
  std::uint32_t order_;
  std::vector<std::int64_t> counts_;
};

// Integer coefficients of the L-th cyclotomic polynomial, low-to-high.
std::vector<std::int64_t> cyclotomic_polynomial(std::uint32_t order);

// chi_a(x) = zeta_p^{Tr(a x)}.
UnitSymbol additive_char(const FieldCtx& ctx, FqElem a, FqElem x);
// phi_j(x) = zeta_{q-1}^{j * dlog(x)}; throws std::domain_error at x = 0.
UnitSymbol mult_char(const FieldCtx& ctx, std::uint64_t j, FqElem x);
// eta = phi_{(q-1)/2}; requires odd q.
UnitSymbol quadratic_char(const FieldCtx& ctx, FqElem x);

// s(j) = Tr_{q^2/q}(beta^j), j in [0, q^2-2].
std::vector<FqElem> msequence(const FieldCtx& ctx, unsigned r = 2);

}  // namespace qcss
