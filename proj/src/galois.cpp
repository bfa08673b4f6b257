#include "qcss/galois.hpp"

#include <stdexcept>
#include <string>

namespace qcss {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients low-to-high over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial b.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) {
      const std::uint64_t sub = std::uint64_t{c} * b[j] % p;
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

// Monic polynomial of degree d whose lower coefficients are the base-p digits of code.
Poly monic_from_code(std::uint64_t code, std::uint32_t d, std::uint32_t p) {
  Poly f(d + 1, 0);
  for (std::uint32_t i = 0; i < d; ++i) {
    f[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  f[d] = 1;
  return f;
}

bool is_irreducible_fp(const Poly& f, std::uint32_t p) {
  const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      if (poly_mod(f, monic_from_code(code, d, p), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

FieldCtx FieldCtx::build(std::uint32_t p, std::uint32_t n, std::uint64_t cap) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (n == 0) throw std::invalid_argument("extension degree n must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > cap) {
      throw std::invalid_argument("p^n exceeds the field-size cap of " + std::to_string(cap));
    }
  }

  FieldCtx ctx;
  ctx.p_ = p;
  ctx.n_ = n;
  ctx.q_ = static_cast<std::uint32_t>(q);
  ctx.pow_p_.resize(n + 1);
  ctx.pow_p_[0] = 1;
  for (std::uint32_t i = 1; i <= n; ++i) ctx.pow_p_[i] = ctx.pow_p_[i - 1] * p;

  for (std::uint64_t code = 0;; ++code) {
    Poly f = monic_from_code(code, n, p);
    if (is_irreducible_fp(f, p)) {
      ctx.h_ = std::move(f);
      break;
    }
  }

  // Temporary generator so multiplication can run from tables while the
  // quadratic extension is searched.
  const auto qm1_primes = prime_factors(q - 1);
  for (std::uint32_t v = 1; v < q; ++v) {
    bool primitive = true;
    for (auto r : qm1_primes) {
      if (ctx.pow_poly(FqElem{v}, (q - 1) / r) == ctx.one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      ctx.build_log_tables(FqElem{v});
      break;
    }
  }

  std::vector<std::uint32_t> basis_trace(n);
  for (std::uint32_t i = 0; i < n; ++i) basis_trace[i] = ctx.trace_by_frobenius(FqElem{ctx.pow_p_[i]});
  ctx.trace_.resize(q);
  for (std::uint32_t v = 0; v < q; ++v) {
    std::uint32_t rest = v;
    std::uint64_t acc = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      acc += std::uint64_t{rest % p} * basis_trace[i];
      rest /= p;
    }
    ctx.trace_[v] = static_cast<std::uint32_t>(acc % p);
  }

  bool found_m = false;
  for (std::uint64_t code = 0; code < q * q && !found_m; ++code) {
    const FqElem c0{static_cast<std::uint32_t>(code % q)};
    const FqElem c1{static_cast<std::uint32_t>(code / q)};
    bool has_root = false;
    for (std::uint32_t x = 0; x < q && !has_root; ++x) {
      const FqElem e{x};
      has_root = ctx.add(ctx.add(ctx.mul(e, e), ctx.mul(c1, e)), c0) == ctx.zero();
    }
    if (!has_root) {
      ctx.m0_ = c0;
      ctx.m1_ = c1;
      found_m = true;
    }
  }
  if (!found_m) throw std::logic_error("no irreducible quadratic over F_q");

  const std::uint64_t order2 = q * q - 1;
  const auto primes2 = prime_factors(order2);
  bool found_beta = false;
  for (std::uint64_t idx = 1; idx <= order2 && !found_beta; ++idx) {
    const Fq2Elem cand = ctx.from_index(idx);
    bool primitive = true;
    for (auto r : primes2) {
      if (ctx.pow(cand, order2 / r) == ctx.embed(ctx.one())) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      ctx.beta_ = cand;
      found_beta = true;
    }
  }
  if (!found_beta) throw std::logic_error("no primitive element of F_{q^2}");

  const Fq2Elem a = ctx.pow(ctx.beta_, q + 1);
  if (a.hi != ctx.zero()) throw std::logic_error("beta^(q+1) does not lie in F_q");
  ctx.alpha_ = a.lo;
  ctx.build_log_tables(ctx.alpha_);
  return ctx;
}

void FieldCtx::build_log_tables(FqElem generator) {
  const std::uint32_t order = q_ - 1;
  exp_.assign(order, FqElem{0});
  log_.assign(q_, 0);
  FqElem cur = one();
  for (std::uint32_t i = 0; i < order; ++i) {
    if (i > 0 && cur == one()) throw std::logic_error("generator is not primitive");
    exp_[i] = cur;
    log_[cur.value] = i;
    cur = mul_poly(cur, generator);
  }
  if (cur != one()) throw std::logic_error("generator order does not divide q-1");
}

FqElem FieldCtx::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > n_) throw std::invalid_argument("too many coefficients for F_q element");
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] >= p_) throw std::invalid_argument("coefficient out of range [0, p)");
    v += coeffs[i] * pow_p_[i];
  }
  return FqElem{v};
}

std::vector<std::uint32_t> FieldCtx::coeffs(FqElem x) const {
  std::vector<std::uint32_t> out(n_);
  for (std::uint32_t i = 0; i < n_; ++i) {
    out[i] = x.value % p_;
    x.value /= p_;
  }
  return out;
}

FqElem FieldCtx::add(FqElem a, FqElem b) const {
  if (p_ == 2) return FqElem{a.value ^ b.value};
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < n_ && (a.value | b.value); ++i) {
    r += ((a.value % p_ + b.value % p_) % p_) * pow_p_[i];
    a.value /= p_;
    b.value /= p_;
  }
  return FqElem{r};
}

FqElem FieldCtx::neg(FqElem a) const {
  if (p_ == 2) return a;
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < n_ && a.value; ++i) {
    r += ((p_ - a.value % p_) % p_) * pow_p_[i];
    a.value /= p_;
  }
  return FqElem{r};
}

FqElem FieldCtx::mul(FqElem a, FqElem b) const {
  if (a.value == 0 || b.value == 0) return zero();
  return exp_[(std::uint64_t{log_[a.value]} + log_[b.value]) % (q_ - 1)];
}

FqElem FieldCtx::inv(FqElem a) const {
  if (a.value == 0) throw std::domain_error("inversion of zero in F_q");
  return exp_[(q_ - 1 - log_[a.value]) % (q_ - 1)];
}

FqElem FieldCtx::pow(FqElem a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.value == 0) return zero();
  return exp_[(std::uint64_t{log_[a.value]} * (e % (q_ - 1))) % (q_ - 1)];
}

FqElem FieldCtx::mul_poly(FqElem a, FqElem b) const {
  const auto ca = coeffs(a);
  const auto cb = coeffs(b);
  Poly prod(2 * n_, 0);
  for (std::uint32_t i = 0; i < n_; ++i) {
    for (std::uint32_t j = 0; j < n_; ++j) {
      prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    }
  }
  const Poly r = poly_mod(std::move(prod), h_, p_);
  return from_coeffs(r);
}

FqElem FieldCtx::pow_poly(FqElem a, std::uint64_t e) const {
  FqElem result = one();
  while (e) {
    if (e & 1) result = mul_poly(result, a);
    a = mul_poly(a, a);
    e >>= 1;
  }
  return result;
}

std::uint32_t FieldCtx::dlog(FqElem x) const {
  if (x.value == 0) throw std::domain_error("discrete log of zero");
  return log_[x.value];
}

std::uint32_t FieldCtx::trace_by_frobenius(FqElem x) const {
  FqElem acc = zero();
  FqElem conj = x;
  for (std::uint32_t i = 0; i < n_; ++i) {
    acc = add(acc, conj);
    conj = pow(conj, p_);
  }
  if (acc.value >= p_) throw std::logic_error("absolute trace left the prime field");
  return acc.value;
}

std::vector<FqElem> FieldCtx::enumerate_fq(bool include_zero) const {
  std::vector<FqElem> out;
  out.reserve(q_);
  for (std::uint32_t v = include_zero ? 0 : 1; v < q_; ++v) out.push_back(FqElem{v});
  return out;
}

Fq2Elem FieldCtx::from_index(std::uint64_t idx) const {
  return Fq2Elem{FqElem{static_cast<std::uint32_t>(idx % q_)},
                 FqElem{static_cast<std::uint32_t>(idx / q_)}};
}

Fq2Elem FieldCtx::add(const Fq2Elem& a, const Fq2Elem& b) const {
  return Fq2Elem{add(a.lo, b.lo), add(a.hi, b.hi)};
}

Fq2Elem FieldCtx::neg(const Fq2Elem& a) const { return Fq2Elem{neg(a.lo), neg(a.hi)}; }

Fq2Elem FieldCtx::mul(const Fq2Elem& a, const Fq2Elem& b) const {
  // y^2 = -m1*y - m0
  const FqElem ll = mul(a.lo, b.lo);
  const FqElem cross = add(mul(a.lo, b.hi), mul(a.hi, b.lo));
  const FqElem hh = mul(a.hi, b.hi);
  return Fq2Elem{sub(ll, mul(hh, m0_)), sub(cross, mul(hh, m1_))};
}

Fq2Elem FieldCtx::scale(FqElem c, const Fq2Elem& y) const {
  return Fq2Elem{mul(c, y.lo), mul(c, y.hi)};
}

Fq2Elem FieldCtx::pow(const Fq2Elem& a, std::uint64_t e) const {
  Fq2Elem result = embed(one());
  Fq2Elem base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Fq2Elem FieldCtx::inv(const Fq2Elem& a) const {
  if (a.lo.value == 0 && a.hi.value == 0) throw std::domain_error("inversion of zero in F_{q^2}");
  const std::uint64_t order2 = std::uint64_t{q_} * q_ - 1;
  return pow(a, order2 - 1);
}

Fq2Elem FieldCtx::beta_pow(std::uint64_t e) const {
  const std::uint64_t order2 = std::uint64_t{q_} * q_ - 1;
  return pow(beta_, e % order2);
}

FqElem FieldCtx::rel_trace(const Fq2Elem& y) const {
  const Fq2Elem t = add(y, pow(y, q_));
  if (t.hi.value != 0) throw std::logic_error("relative trace left the subfield F_q");
  return t.lo;
}

bool operator==(const FieldCtx& a, const FieldCtx& b) {
  return a.p_ == b.p_ && a.n_ == b.n_ && a.h_ == b.h_ && a.m0_ == b.m0_ && a.m1_ == b.m1_ &&
         a.beta_ == b.beta_ && a.alpha_ == b.alpha_ && a.exp_ == b.exp_ && a.log_ == b.log_ &&
         a.trace_ == b.trace_;
}

}  // namespace qcss
