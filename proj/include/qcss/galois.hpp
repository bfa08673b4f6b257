#pragma once

// Field tower F_p ⊂ F_q = F_p[x]/(h) ⊂ F_{q^2} = F_q[y]/(m).
//
// Elements of F_q are stored as the integer sum c_0 + c_1 p + ... + c_{n-1} p^{n-1}
// of their polynomial-basis coefficients, so ascending integer order is the
// coefficient-lex order used for every enumeration in this library. Elements of
// F_{q^2} are pairs (lo, hi) meaning lo + hi*y, enumerated as lo + q*hi.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace qcss {

struct FqElem {
  std::uint32_t value = 0;

  friend auto operator<=>(const FqElem&, const FqElem&) = default;
};

struct Fq2Elem {
  FqElem lo;
  FqElem hi;

  friend auto operator<=>(const Fq2Elem&, const Fq2Elem&) = default;
};

class FieldCtx {
 public:
  static constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 20;

  // Deterministic tower: h and m are the lexicographically first monic
  // irreducibles, beta the first element of F_{q^2} of order q^2-1, and
  // alpha = beta^(q+1). Throws std::invalid_argument when p is not prime,
  // n == 0, or p^n exceeds cap.
  static FieldCtx build(std::uint32_t p, std::uint32_t n, std::uint64_t cap = kDefaultCap);

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t q() const { return q_; }

  // Monic modulus of F_q over F_p, coefficients low-to-high (length n+1).
  const std::vector<std::uint32_t>& h() const { return h_; }
  // Monic modulus of F_{q^2} over F_q: y^2 + m1*y + m0, returned as {m0, m1, 1}.
  std::vector<FqElem> m() const { return {m0_, m1_, one()}; }

  const Fq2Elem& beta() const { return beta_; }
  FqElem alpha() const { return alpha_; }

  // --- F_q ---
  FqElem zero() const { return FqElem{0}; }
  FqElem one() const { return FqElem{1}; }
  bool is_valid(FqElem x) const { return x.value < q_; }
  FqElem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(FqElem x) const;

  FqElem add(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
  FqElem mul(FqElem a, FqElem b) const;
  FqElem inv(FqElem a) const;
  FqElem pow(FqElem a, std::uint64_t e) const;

  // alpha^i for any i (reduced mod q-1).
  FqElem alpha_pow(std::uint64_t i) const { return exp_[i % (q_ - 1)]; }
  // Discrete log base alpha, in [0, q-2]. Throws std::domain_error on zero.
  std::uint32_t dlog(FqElem x) const;

  // Tr_{q/p}, read from a table built by linearity over the polynomial basis.
  std::uint32_t trace_to_prime(FqElem x) const { return trace_[x.value]; }
  // Tr_{q/p} evaluated as x + x^p + ... + x^(p^(n-1)).
  std::uint32_t trace_by_frobenius(FqElem x) const;

  // All of F_q (or F_q^*) in ascending coefficient-lex order.
  std::vector<FqElem> enumerate_fq(bool include_zero) const;

  // --- F_{q^2} ---
  Fq2Elem embed(FqElem a) const { return Fq2Elem{a, zero()}; }
  Fq2Elem from_index(std::uint64_t idx) const;
  std::uint64_t index(const Fq2Elem& y) const {
    return y.lo.value + std::uint64_t{q_} * y.hi.value;
  }

  Fq2Elem add(const Fq2Elem& a, const Fq2Elem& b) const;
  Fq2Elem neg(const Fq2Elem& a) const;
  Fq2Elem sub(const Fq2Elem& a, const Fq2Elem& b) const { return add(a, neg(b)); }
  Fq2Elem mul(const Fq2Elem& a, const Fq2Elem& b) const;
  Fq2Elem inv(const Fq2Elem& a) const;
  Fq2Elem pow(const Fq2Elem& a, std::uint64_t e) const;
  Fq2Elem scale(FqElem c, const Fq2Elem& y) const;

  Fq2Elem beta_pow(std::uint64_t e) const;

  // Tr_{q^2/q}(y) = y + y^q. Throws std::logic_error if the result leaves F_q.
  FqElem rel_trace(const Fq2Elem& y) const;

  friend bool operator==(const FieldCtx& a, const FieldCtx& b);

 private:
  FieldCtx() = default;

  FqElem mul_poly(FqElem a, FqElem b) const;
  FqElem pow_poly(FqElem a, std::uint64_t e) const;
  void build_log_tables(FqElem generator);

  std::uint32_t p_ = 0;
  std::uint32_t n_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> h_;
  std::vector<std::uint32_t> pow_p_;  // p^i, i in [0, n]
  FqElem m0_;
  FqElem m1_;
  Fq2Elem beta_;
  FqElem alpha_;
  std::vector<FqElem> exp_;         // alpha^i, i in [0, q-2]
  std::vector<std::uint32_t> log_;  // log_[x] for x != 0
  std::vector<std::uint32_t> trace_;
};

bool is_prime(std::uint64_t v);
// Distinct prime divisors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t v);

}  // namespace qcss
