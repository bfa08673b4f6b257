#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "qcss/galois.hpp"

using namespace qcss;

namespace {

// Schoolbook multiplication of coefficient vectors reduced by the monic h.
std::vector<std::uint32_t> oracle_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                      const std::vector<std::uint32_t>& h, std::uint32_t p) {
  const std::size_t n = h.size() - 1;
  std::vector<std::uint64_t> prod(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  for (std::size_t d = 2 * n - 1; d >= n; --d) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    for (std::size_t k = 0; k <= n; ++k) prod[d - n + k] = (prod[d - n + k] + (p - c) * h[k]) % p;
  }
  return std::vector<std::uint32_t>(prod.begin(), prod.begin() + n);
}

// Multiplicative order by repeated multiplication.
std::uint64_t order_fq(const FieldCtx& ctx, FqElem x) {
  FqElem y = x;
  std::uint64_t k = 1;
  while (y != ctx.one()) {
    y = ctx.mul(y, x);
    ++k;
  }
  return k;
}

std::uint64_t order_fq2(const FieldCtx& ctx, const Fq2Elem& x) {
  const Fq2Elem one = ctx.embed(ctx.one());
  Fq2Elem y = x;
  std::uint64_t k = 1;
  while (y != one) {
    y = ctx.mul(y, x);
    ++k;
  }
  return k;
}

bool has_root(const FieldCtx& ctx, const std::vector<FqElem>& m) {
  for (auto x : ctx.enumerate_fq(true)) {
    FqElem v = ctx.add(ctx.add(ctx.mul(x, x), ctx.mul(m[1], x)), m[0]);
    if (v == ctx.zero()) return true;
  }
  return false;
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kFields = {
    {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4}, {11, 1}, {3, 3}};

}  // namespace

TEST(Galois, PrimeFieldDegenerateTower) {
  auto ctx = FieldCtx::build(2, 1);
  EXPECT_EQ(ctx.q(), 2u);
  EXPECT_EQ(ctx.h(), (std::vector<std::uint32_t>{0, 1}));
  auto all = ctx.enumerate_fq(true);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].value, 0u);
  EXPECT_EQ(all[1].value, 1u);
}

TEST(Galois, ExactOrdersF9) {
  auto ctx = FieldCtx::build(3, 2);
  EXPECT_EQ(order_fq2(ctx, ctx.beta()), 80u);
  EXPECT_EQ(order_fq(ctx, ctx.alpha()), 8u);
}

TEST(Galois, BetaToQPlusOneHasOrderSevenOverF8) {
  auto ctx = FieldCtx::build(2, 3);
  const Fq2Elem b9 = ctx.pow(ctx.beta(), 9);
  EXPECT_EQ(b9.hi, ctx.zero());
  EXPECT_EQ(b9.lo, ctx.alpha());
  EXPECT_EQ(order_fq(ctx, b9.lo), 7u);
}

TEST(Galois, TowerInvariants) {
  for (auto [p, n] : kFields) {
    auto ctx = FieldCtx::build(p, n);
    SCOPED_TRACE(testing::Message() << "p=" << p << " n=" << n);
    const std::uint64_t q = ctx.q();
    EXPECT_EQ(order_fq2(ctx, ctx.beta()), q * q - 1);
    if (q > 2) EXPECT_EQ(order_fq(ctx, ctx.alpha()), q - 1);
    EXPECT_EQ(ctx.pow(ctx.beta(), q + 1), ctx.embed(ctx.alpha()));
    EXPECT_FALSE(has_root(ctx, ctx.m()));
    // h has no root in F_p and nothing of lower degree divides it: x^(p^n) = x
    // holds on F_q while x^(p^k) != x for the generator at k < n.
    if (n > 1) {
      const FqElem x = ctx.from_coeffs(std::vector<std::uint32_t>{0, 1});
      EXPECT_EQ(ctx.pow(x, q), x);
      std::uint64_t pk = p;
      for (std::uint32_t k = 1; k < n; ++k, pk *= p) EXPECT_NE(ctx.pow(x, pk), x);
    }
  }
}

TEST(Galois, LexFirstModulusMatchesBruteForce) {
  // Smallest monic irreducible of degree n, searched by root and factor test
  // (degrees here are at most 3, so a root test suffices).
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}, {3, 3}}) {
    auto ctx = FieldCtx::build(p, n);
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < n; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint32_t> c(n + 1, 0);
      std::uint64_t v = code;
      for (std::uint32_t i = 0; i < n; ++i, v /= p) c[i] = static_cast<std::uint32_t>(v % p);
      c[n] = 1;
      bool root = false;
      for (std::uint32_t r = 0; r < p && !root; ++r) {
        std::uint64_t acc = 0;
        for (std::uint32_t i = n + 1; i-- > 0;) acc = (acc * r + c[i]) % p;
        root = acc == 0;
      }
      if (!root) {
        EXPECT_EQ(ctx.h(), c) << "p=" << p << " n=" << n;
        break;
      }
    }
  }
}

TEST(Galois, MulMatchesPolynomialOracle) {
  for (auto [p, n] : kFields) {
    auto ctx = FieldCtx::build(p, n);
    for (auto a : ctx.enumerate_fq(true)) {
      for (auto b : ctx.enumerate_fq(true)) {
        const auto expect = oracle_mul(ctx.coeffs(a), ctx.coeffs(b), ctx.h(), p);
        ASSERT_EQ(ctx.coeffs(ctx.mul(a, b)), expect) << "p=" << p << " n=" << n;
      }
    }
  }
}

TEST(Galois, AdditionIsCoefficientwise) {
  auto ctx = FieldCtx::build(3, 3);
  for (auto a : ctx.enumerate_fq(true)) {
    for (auto b : ctx.enumerate_fq(true)) {
      auto ca = ctx.coeffs(a), cb = ctx.coeffs(b), cs = ctx.coeffs(ctx.add(a, b));
      for (std::size_t i = 0; i < 3; ++i) ASSERT_EQ(cs[i], (ca[i] + cb[i]) % 3);
      ASSERT_EQ(ctx.add(ctx.sub(a, b), b), a);
    }
  }
}

TEST(Galois, InverseRoundTrip) {
  for (auto [p, n] : kFields) {
    auto ctx = FieldCtx::build(p, n);
    EXPECT_EQ(ctx.inv(ctx.one()), ctx.one());
    for (auto x : ctx.enumerate_fq(false)) ASSERT_EQ(ctx.mul(x, ctx.inv(x)), ctx.one());
    EXPECT_EQ(ctx.pow(ctx.alpha(), ctx.q() - 1), ctx.one());
  }
  auto ctx = FieldCtx::build(3, 2);
  const Fq2Elem one = ctx.embed(ctx.one());
  for (std::uint64_t i = 1; i < 81; ++i) {
    auto y = ctx.from_index(i);
    ASSERT_EQ(ctx.mul(y, ctx.inv(y)), one);
  }
}

TEST(Galois, InverseOfZeroThrows) {
  auto ctx = FieldCtx::build(3, 2);
  EXPECT_THROW(ctx.inv(ctx.zero()), std::domain_error);
  EXPECT_THROW(ctx.dlog(ctx.zero()), std::domain_error);
}

TEST(Galois, TraceOverF4) {
  auto ctx = FieldCtx::build(2, 2);
  ASSERT_EQ(ctx.h(), (std::vector<std::uint32_t>{1, 1, 1}));
  const FqElem omega = ctx.from_coeffs(std::vector<std::uint32_t>{0, 1});
  EXPECT_EQ(ctx.add(omega, ctx.mul(omega, omega)), ctx.one());
  EXPECT_EQ(ctx.trace_to_prime(omega), 1u);
  EXPECT_EQ(ctx.trace_to_prime(ctx.zero()), 0u);
}

TEST(Galois, TraceTableMatchesFrobenius) {
  for (auto [p, n] : kFields) {
    auto ctx = FieldCtx::build(p, n);
    for (auto x : ctx.enumerate_fq(true)) ASSERT_EQ(ctx.trace_to_prime(x), ctx.trace_by_frobenius(x));
  }
}

TEST(Galois, FrobeniusFixesExactlyTheSubfield) {
  for (auto [p, n] : kFields) {
    auto ctx = FieldCtx::build(p, n);
    const std::uint64_t q = ctx.q();
    std::uint64_t fixed = 0;
    for (std::uint64_t i = 0; i < q * q; ++i) {
      auto y = ctx.from_index(i);
      if (ctx.pow(y, q) == y) {
        ++fixed;
        EXPECT_EQ(y.hi, ctx.zero());
      }
    }
    EXPECT_EQ(fixed, q);
  }
}

TEST(Galois, RelTraceOnSubfield) {
  auto odd = FieldCtx::build(3, 2);
  for (auto x : odd.enumerate_fq(true)) EXPECT_EQ(odd.rel_trace(odd.embed(x)), odd.add(x, x));
  auto even = FieldCtx::build(2, 3);
  for (auto x : even.enumerate_fq(true)) EXPECT_EQ(even.rel_trace(even.embed(x)), even.zero());
}

TEST(Galois, RelTraceIsLinear) {
  for (auto [p, n] : kFields) {
    auto ctx = FieldCtx::build(p, n);
    const std::uint64_t q2 = std::uint64_t{ctx.q()} * ctx.q();
    for (std::uint64_t s = 0; s < 200; ++s) {
      auto y1 = ctx.from_index((s * 7919 + 3) % q2);
      auto y2 = ctx.from_index((s * 104729 + 11) % q2);
      FqElem c{static_cast<std::uint32_t>((s * 31) % ctx.q())};
      auto lhs = ctx.rel_trace(ctx.add(ctx.scale(c, y1), y2));
      auto rhs = ctx.add(ctx.mul(c, ctx.rel_trace(y1)), ctx.rel_trace(y2));
      ASSERT_EQ(lhs, rhs);
    }
  }
}

TEST(Galois, RelTraceHasOneZeroAmongFirstPowers) {
  for (auto [p, n] : kFields) {
    auto ctx = FieldCtx::build(p, n);
    int zeros = 0;
    for (std::uint64_t e = 0; e <= ctx.q(); ++e) zeros += ctx.rel_trace(ctx.beta_pow(e)) == ctx.zero();
    EXPECT_EQ(zeros, 1) << "p=" << p << " n=" << n;
  }
}

TEST(Galois, DlogRoundTrip) {
  for (auto [p, n] : kFields) {
    auto ctx = FieldCtx::build(p, n);
    EXPECT_EQ(ctx.dlog(ctx.one()), 0u);
    if (ctx.q() > 2) EXPECT_EQ(ctx.dlog(ctx.alpha()), 1u);
    for (auto x : ctx.enumerate_fq(false)) {
      const auto d = ctx.dlog(x);
      ASSERT_LT(d, ctx.q() - 1);
      ASSERT_EQ(ctx.alpha_pow(d), x);
    }
  }
}

TEST(Galois, EnumerationIsAscendingAndComplete) {
  auto ctx = FieldCtx::build(3, 2);
  auto all = ctx.enumerate_fq(true);
  ASSERT_EQ(all.size(), 9u);
  EXPECT_EQ(std::set<FqElem>(all.begin(), all.end()).size(), 9u);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  auto units = ctx.enumerate_fq(false);
  ASSERT_EQ(units.size(), 8u);
  EXPECT_EQ(units.front(), ctx.one());
}

TEST(Galois, BuildIsDeterministic) {
  for (auto [p, n] : kFields) {
    auto a = FieldCtx::build(p, n);
    auto b = FieldCtx::build(p, n);
    EXPECT_TRUE(a == b);
    EXPECT_EQ(a.beta(), b.beta());
    for (std::uint64_t i = 0; i < 3 * a.q(); ++i) ASSERT_EQ(a.beta_pow(i), b.beta_pow(i));
  }
}

TEST(Galois, BuildRejectsBadParameters) {
  EXPECT_THROW(FieldCtx::build(4, 1), std::invalid_argument);
  EXPECT_THROW(FieldCtx::build(1, 1), std::invalid_argument);
  EXPECT_THROW(FieldCtx::build(3, 0), std::invalid_argument);
  EXPECT_THROW(FieldCtx::build(2, 21), std::invalid_argument);
  EXPECT_THROW(FieldCtx::build(3, 2, 8), std::invalid_argument);
}

TEST(Galois, PrimeHelpers) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(13));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(prime_factors(360), (std::vector<std::uint64_t>{2, 3, 5}));
  EXPECT_EQ(prime_factors(1), (std::vector<std::uint64_t>{}));
}
