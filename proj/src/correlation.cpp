#include "qcss/correlation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace qcss {

namespace {

void check_pair(SequenceView x, SequenceView y) {
  if (x.exps.size() != y.exps.size()) throw std::invalid_argument("correlation: length mismatch");
  if (x.order != y.order) throw std::invalid_argument("correlation: symbol order mismatch");
}

inline std::uint32_t diff_mod(std::uint32_t a, std::uint32_t b, std::uint32_t order) {
  const std::uint32_t r = a + (order - b);
  return r >= order ? r - order : r;
}

}  // namespace

ExactSum periodic_corr(SequenceView x, SequenceView y, int tau) {
  check_pair(x, y);
  const int N = static_cast<int>(x.exps.size());
  if (tau < 0 || tau >= N) throw std::invalid_argument("periodic_corr: shift outside [0, N-1]");
  ExactSum sum(x.order);
  for (int t = 0; t < N; ++t) sum.add(diff_mod(x.exps[t], y.exps[(t + tau) % N], x.order));
  return sum;
}

ExactSum aperiodic_corr(SequenceView x, SequenceView y, int tau) {
  check_pair(x, y);
  const int N = static_cast<int>(x.exps.size());
  if (tau <= -N || tau >= N) throw std::invalid_argument("aperiodic_corr: |tau| must be below N");
  ExactSum sum(x.order);
  if (tau >= 0) {
    for (int t = 0; t + tau < N; ++t) sum.add(diff_mod(x.exps[t], y.exps[t + tau], x.order));
  } else {
    for (int t = 0; t + (-tau) < N; ++t) sum.add(diff_mod(x.exps[t - tau], y.exps[t], x.order));
  }
  return sum;
}

ExactSum set_corr(const SymbolMatrix& x, const SymbolMatrix& y, std::uint32_t order, int tau, Mode mode) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw std::invalid_argument("set_corr: shape mismatch");
  ExactSum sum(order);
  for (std::size_t k = 0; k < x.rows(); ++k) {
    const SequenceView xv{x.row(k), order};
    const SequenceView yv{y.row(k), order};
    sum += mode == Mode::Periodic ? periodic_corr(xv, yv, tau) : aperiodic_corr(xv, yv, tau);
  }
  return sum;
}

// ---------------------------------------------------------------- bounds

const char* to_string(BoundKind b) {
  switch (b) {
    case BoundKind::Periodic: return "periodic";
    case BoundKind::Welch: return "welch";
    case BoundKind::Liu: return "liu";
  }
  return "?";
}

namespace {

void check_basic_domain(std::uint64_t M, std::uint64_t K, std::uint64_t N) {
  if (K < 1 || N < 1) throw std::domain_error("bound requires K >= 1 and N >= 1");
  if (M < K) throw std::domain_error("bound requires M >= K");
}

}  // namespace

double bound_periodic(std::uint64_t M, std::uint64_t K, std::uint64_t N) {
  check_basic_domain(M, K, N);
  const double m = static_cast<double>(M), k = static_cast<double>(K), n = static_cast<double>(N);
  if (m * n - 1.0 <= 0.0) throw std::domain_error("bound requires MN > 1");
  return k * n * std::sqrt((m / k - 1.0) / (m * n - 1.0));
}

double bound_welch(std::uint64_t M, std::uint64_t K, std::uint64_t N) {
  check_basic_domain(M, K, N);
  const double m = static_cast<double>(M), k = static_cast<double>(K), n = static_cast<double>(N);
  const double denom = m * (2.0 * n - 1.0) - 1.0;
  if (denom <= 0.0) throw std::domain_error("bound requires M(2N-1) > 1");
  return k * n * std::sqrt((m / k - 1.0) / denom);
}

double bound_liu(std::uint64_t M, std::uint64_t K, std::uint64_t N) {
  if (M < 3 * K || K < 2 || N < 2) throw std::domain_error("bound requires M >= 3K, K >= 2 and N >= 2");
  const double m = static_cast<double>(M), k = static_cast<double>(K), n = static_cast<double>(N);
  return std::sqrt(k * n * (1.0 - 2.0 * std::sqrt(k / (3.0 * m))));
}

BoundEval evaluate_bound(BoundKind kind, std::uint64_t M, std::uint64_t K, std::uint64_t N) {
  BoundEval out;
  out.kind = kind;
  try {
    switch (kind) {
      case BoundKind::Periodic: out.value = bound_periodic(M, K, N); break;
      case BoundKind::Welch: out.value = bound_welch(M, K, N); break;
      case BoundKind::Liu: out.value = bound_liu(M, K, N); break;
    }
  } catch (const std::domain_error& e) {
    out.reason = e.what();
  }
  return out;
}

BoundEval applicable_bound(Mode mode, std::uint64_t M, std::uint64_t K, std::uint64_t N) {
  if (mode == Mode::Periodic) return evaluate_bound(BoundKind::Periodic, M, K, N);
  BoundEval liu = evaluate_bound(BoundKind::Liu, M, K, N);
  if (liu.value) return liu;
  BoundEval welch = evaluate_bound(BoundKind::Welch, M, K, N);
  if (welch.value) welch.reason = "liu inapplicable (" + liu.reason + "); welch used";
  return welch;
}

RhoBand classify_rho(double rho) {
  if (rho <= 1.0 + 1e-9) return RhoBand::Optimal;
  if (rho <= 2.0) return RhoBand::NearOptimal;
  return RhoBand::AsymptoticCandidate;
}

const char* to_string(RhoBand b) {
  switch (b) {
    case RhoBand::Optimal: return "optimal";
    case RhoBand::NearOptimal: return "near-optimal";
    case RhoBand::AsymptoticCandidate: return "asymptotic-candidate";
  }
  return "?";
}

// ---------------------------------------------------------------- sweep

std::int64_t bucket_key(double magnitude) {
  return static_cast<std::int64_t>(std::llround(magnitude / kMagnitudeTolerance));
}

double bucket_value(std::int64_t key) { return static_cast<double>(key) * kMagnitudeTolerance; }

namespace {

struct MaxTracker {
  double value = -1.0;
  Witness at;

  void offer(double v, const Witness& w) {
    if (v > value || (v == value && w < at)) {
      value = v;
      at = w;
    }
  }
  void merge(const MaxTracker& o) {
    if (o.value >= 0.0) offer(o.value, o.at);
  }
};

struct PartialSweep {
  MaxTracker auto_max;
  MaxTracker cross_max;
  std::map<std::int64_t, std::uint64_t> histogram;
  std::map<std::int64_t, std::uint64_t> auto_histogram;
};

// Accumulates set-level sums into a reusable histogram buffer.
class SumKernel {
 public:
  SumKernel(const CSSet& set) : set_(set), counts_(set.order, 0), cos_(set.order), sin_(set.order) {
    const double step = 2.0 * std::numbers::pi / set.order;
    for (std::uint32_t j = 0; j < set.order; ++j) {
      cos_[j] = std::cos(step * j);
      sin_[j] = std::sin(step * j);
    }
  }

  double magnitude(std::size_t m1, std::size_t m2, int tau) {
    std::fill(counts_.begin(), counts_.end(), 0);
    const auto& x = set_.matrices[m1];
    const auto& y = set_.matrices[m2];
    const std::uint32_t L = set_.order;
    const std::size_t N = x.cols();
    const std::size_t shift = static_cast<std::size_t>(tau);
    for (std::size_t k = 0; k < x.rows(); ++k) {
      const auto xr = x.row(k);
      const auto yr = y.row(k);
      if (set_.mode == Mode::Periodic) {
        for (std::size_t t = 0; t < N; ++t) {
          std::size_t u = t + shift;
          if (u >= N) u -= N;
          ++counts_[diff_mod(xr[t], yr[u], L)];
        }
      } else {
        for (std::size_t t = 0; t + shift < N; ++t) ++counts_[diff_mod(xr[t], yr[t + shift], L)];
      }
    }
    double re = 0.0;
    double im = 0.0;
    for (std::uint32_t j = 0; j < L; ++j) {
      if (counts_[j] == 0) continue;
      const double c = static_cast<double>(counts_[j]);
      re += c * cos_[j];
      im += c * sin_[j];
    }
    return std::hypot(re, im);
  }

 private:
  const CSSet& set_;
  std::vector<std::int64_t> counts_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

void fill_bounds(CorrReport& r) {
  if (r.mode == Mode::Periodic) {
    r.bounds.push_back(evaluate_bound(BoundKind::Periodic, r.M, r.K, r.N));
  } else {
    r.bounds.push_back(evaluate_bound(BoundKind::Welch, r.M, r.K, r.N));
    r.bounds.push_back(evaluate_bound(BoundKind::Liu, r.M, r.K, r.N));
  }
  r.rho_bound = applicable_bound(r.mode, r.M, r.K, r.N);
  if (r.rho_bound.value && *r.rho_bound.value > 0.0) r.rho = r.max_corr / *r.rho_bound.value;
}

}  // namespace

CorrReport sweep(const CSSet& set, const SweepOptions& opt) {
  CorrReport r;
  r.id = set.id;
  r.p = set.ctx ? set.ctx->p() : 0;
  r.n = set.ctx ? set.ctx->n() : 0;
  r.q = set.ctx ? set.ctx->q() : 0;
  r.mode = set.mode;
  r.M = set.matrices.size();
  r.K = set.K();
  r.N = set.N();

  const std::size_t M = set.matrices.size();
  const int N = static_cast<int>(r.N);
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(M, 1)));

  std::vector<PartialSweep> parts(threads);
  std::atomic<std::size_t> next{0};
  auto worker = [&](PartialSweep& part) {
    SumKernel kernel(set);
    for (std::size_t m1 = next++; m1 < M; m1 = next++) {
      for (std::size_t m2 = 0; m2 < M; ++m2) {
        const bool is_auto = m1 == m2;
        for (int tau = is_auto ? 1 : 0; tau < N; ++tau) {
          const double mag = kernel.magnitude(m1, m2, tau);
          const std::int64_t key = bucket_key(mag);
          ++part.histogram[key];
          if (is_auto) {
            ++part.auto_histogram[key];
            part.auto_max.offer(mag, {m1, m2, tau});
          } else {
            part.cross_max.offer(mag, {m1, m2, tau});
          }
        }
      }
    }
  };
  if (threads == 1) {
    worker(parts[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, std::ref(parts[i]));
    for (auto& t : pool) t.join();
  }

  MaxTracker auto_max;
  MaxTracker cross_max;
  for (const auto& part : parts) {
    auto_max.merge(part.auto_max);
    cross_max.merge(part.cross_max);
    for (const auto& [k, v] : part.histogram) r.histogram[k] += v;
    for (const auto& [k, v] : part.auto_histogram) r.auto_histogram[k] += v;
  }
  r.auto_max = std::max(auto_max.value, 0.0);
  r.cross_max = std::max(cross_max.value, 0.0);
  r.auto_witness = auto_max.at;
  r.cross_witness = cross_max.at;
  r.max_corr = std::max(r.auto_max, r.cross_max);
  r.witness = r.cross_max >= r.auto_max ? r.cross_witness : r.auto_witness;
  fill_bounds(r);
  r.alphabet = alphabet_count(set);
  r.claims = verify_claims(set, r);
  r.claims_pass = r.claims.pass;
  return r;
}

std::vector<double> value_set(Construction c, std::uint32_t p, std::uint32_t q) {
  const double Q = q;
  switch (c) {
    case Construction::C: {
      std::vector<double> out{Q - 1.0, 1.0};
      for (std::uint32_t j = 0; j < p; ++j) {
        const double ang = 2.0 * std::numbers::pi * j / p;
        out.push_back(std::hypot(Q * std::cos(ang) + 1.0, Q * std::sin(ang)));
      }
      return out;
    }
    case Construction::E: return {0.0, Q - 1.0};
    default: return {0.0, Q};
  }
}

ClaimCheck verify_claims(const CSSet& set, const CorrReport& report) {
  ClaimCheck out;
  auto fail = [&](std::string msg) {
    out.pass = false;
    out.failures.push_back(std::move(msg));
  };
  const auto& c = set.claimed;
  if (report.M != c.M || report.K != c.K || report.N != c.N) {
    fail(fmt::format("(M, K, N) = ({}, {}, {}) but the family claims ({}, {}, {})", report.M, report.K,
                     report.N, c.M, c.K, c.N));
  }
  if (std::abs(report.max_corr - c.max_corr) > kMagnitudeTolerance) {
    fail(fmt::format("maximum correlation magnitude {:.9f} differs from the claimed {}", report.max_corr,
                     c.max_corr));
  }
  const std::uint32_t p = set.ctx ? set.ctx->p() : 0;
  const std::uint32_t q = set.ctx ? set.ctx->q() : 0;
  const auto refs = value_set(set.id, p, q);
  for (const auto& [key, count] : report.histogram) {
    const double v = bucket_value(key);
    const bool member = std::any_of(refs.begin(), refs.end(),
                                    [&](double ref) { return std::abs(v - ref) <= kMagnitudeTolerance; });
    if (!member) {
      fail(fmt::format("magnitude {:.6f} (seen {} times) is outside the family's value set", v, count));
    }
  }
  const std::uint64_t measured = alphabet_count(set);
  if (measured > c.alphabet) {
    fail(fmt::format("alphabet: measured {} symbols, claimed at most {}", measured, c.alphabet));
  } else if (measured < c.alphabet) {
    if (c.alphabet > set.order) {
      out.warnings.push_back(fmt::format(
          "alphabet: measured {} symbols, stated size {} exceeds the realizable order {}", measured,
          c.alphabet, set.order));
    } else {
      out.warnings.push_back(fmt::format("alphabet: measured {} symbols, fewer than the stated {}", measured,
                                         c.alphabet));
    }
  }
  return out;
}

std::vector<ProfileRow> profile(const CSSet& set, std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  std::vector<ProfileRow> rows;
  SumKernel kernel(set);
  const int N = static_cast<int>(set.N());
  for (const auto& [m1, m2] : pairs) {
    if (m1 >= set.matrices.size() || m2 >= set.matrices.size()) {
      throw std::out_of_range(fmt::format("pair {}x{} is outside [0, {})", m1, m2, set.matrices.size()));
    }
    const bool is_auto = m1 == m2;
    for (int tau = is_auto ? 1 : 0; tau < N; ++tau) {
      rows.push_back({m1, m2, tau, kernel.magnitude(m1, m2, tau), is_auto});
    }
  }
  return rows;
}

// ---------------------------------------------------------------- trend

namespace {

TrendPoint trend_point(Construction c, std::uint32_t p, std::uint32_t n, std::uint64_t q) {
  TrendPoint pt;
  pt.p = p;
  pt.n = n;
  pt.q = q;
  if ((c == Construction::C && n <= 1) || ((c == Construction::E || c == Construction::F) && q <= 2)) {
    pt.note = "family undefined at this q";
    return pt;
  }
  const auto claim = claimed_params(c, p, static_cast<std::uint32_t>(q));
  const Mode mode = c == Construction::C ? Mode::Periodic : Mode::Aperiodic;
  const BoundEval b = applicable_bound(mode, claim.M, claim.K, claim.N);
  pt.bound = b.kind;
  pt.note = b.reason;
  if (b.value && *b.value > 0.0) pt.rho = claim.max_corr / *b.value;
  return pt;
}

}  // namespace

std::vector<TrendPoint> rho_trend(Construction c, std::uint32_t p, std::span<const std::uint32_t> n_list) {
  if (!is_prime(p)) throw std::invalid_argument("rho_trend: p must be prime");
  std::vector<TrendPoint> out;
  for (auto n : n_list) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) q *= p;
    out.push_back(trend_point(c, p, n, q));
  }
  return out;
}

std::vector<TrendPoint> rho_trend_q(Construction c, std::span<const std::uint64_t> q_list) {
  std::vector<TrendPoint> out;
  for (auto q : q_list) {
    const auto primes = prime_factors(q);
    if (primes.size() != 1) throw std::invalid_argument(fmt::format("rho_trend: {} is not a prime power", q));
    const auto p = static_cast<std::uint32_t>(primes[0]);
    std::uint32_t n = 0;
    for (std::uint64_t v = q; v > 1; v /= p) ++n;
    out.push_back(trend_point(c, p, n, q));
  }
  return out;
}

}  // namespace qcss
