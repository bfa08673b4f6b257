#pragma once

// Set-level correlation sums, exhaustive tolerance sweeps, lower bounds and
// the claim verifier.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcss/characters.hpp"
#include "qcss/constructions.hpp"

namespace qcss {

// Magnitudes closer than this are treated as equal.
inline constexpr double kMagnitudeTolerance = 1e-6;

struct SequenceView {
  std::span<const std::uint32_t> exps;
  std::uint32_t order = 1;
};

// R_{x,y}(tau) = sum_t x_t conj(y_{(t+tau) mod N}), 0 <= tau < N.
ExactSum periodic_corr(SequenceView x, SequenceView y, int tau);
// Truncated-overlap correlation, -N < tau < N.
ExactSum aperiodic_corr(SequenceView x, SequenceView y, int tau);
// Row-wise correlations summed over the K rows.
ExactSum set_corr(const SymbolMatrix& x, const SymbolMatrix& y, std::uint32_t order, int tau, Mode mode);

// --- bounds ---
enum class BoundKind { Periodic, Welch, Liu };
const char* to_string(BoundKind b);

// Lower bound on the periodic tolerance; requires M >= K >= 1 and N >= 1.
double bound_periodic(std::uint64_t M, std::uint64_t K, std::uint64_t N);
// Welch bound on the aperiodic tolerance; requires M >= K >= 1 and N >= 1.
double bound_welch(std::uint64_t M, std::uint64_t K, std::uint64_t N);
// Tighter aperiodic bound; requires M >= 3K, K >= 2 and N >= 2.
double bound_liu(std::uint64_t M, std::uint64_t K, std::uint64_t N);

struct BoundEval {
  BoundKind kind = BoundKind::Periodic;
  std::optional<double> value;  // empty when inapplicable
  std::string reason;           // why inapplicable
};
BoundEval evaluate_bound(BoundKind kind, std::uint64_t M, std::uint64_t K, std::uint64_t N);

// Bound used for the optimality factor: the periodic bound for periodic sets,
// the tighter aperiodic bound when applicable and otherwise Welch.
BoundEval applicable_bound(Mode mode, std::uint64_t M, std::uint64_t K, std::uint64_t N);

enum class RhoBand { Optimal, NearOptimal, AsymptoticCandidate };
RhoBand classify_rho(double rho);
const char* to_string(RhoBand b);

// --- sweep ---
struct Witness {
  std::size_t m1 = 0;
  std::size_t m2 = 0;
  int tau = 0;

  friend auto operator<=>(const Witness&, const Witness&) = default;
};

struct ClaimCheck {
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
};

struct CorrReport {
  Construction id = Construction::A;
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t q = 0;
  Mode mode = Mode::Aperiodic;
  std::uint64_t M = 0;
  std::uint32_t K = 0;
  std::uint32_t N = 0;

  double auto_max = 0.0;   // vartheta_a / theta_a
  double cross_max = 0.0;  // vartheta_c / theta_c
  double max_corr = 0.0;
  Witness auto_witness;
  Witness cross_witness;
  Witness witness;

  // Nontrivial magnitudes keyed by round(value / 1e-6).
  std::map<std::int64_t, std::uint64_t> histogram;
  std::map<std::int64_t, std::uint64_t> auto_histogram;

  std::vector<BoundEval> bounds;
  BoundEval rho_bound;
  std::optional<double> rho;

  std::uint64_t alphabet = 0;
  ClaimCheck claims;
  bool claims_pass = false;
};

struct SweepOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
};

double bucket_value(std::int64_t key);
std::int64_t bucket_key(double magnitude);

// Auto sums for every matrix at tau in [1, N-1]; cross sums for every ordered
// pair m1 != m2 at tau in [0, N-1]. Runs verify_claims on the result.
CorrReport sweep(const CSSet& set, const SweepOptions& opt = {});

// Reference values for nontrivial magnitudes of the family at (p, q).
std::vector<double> value_set(Construction c, std::uint32_t p, std::uint32_t q);

// Structural (M, K, N), claimed maximum, value-set containment and alphabet checks.
ClaimCheck verify_claims(const CSSet& set, const CorrReport& report);

struct ProfileRow {
  std::size_t m1 = 0;
  std::size_t m2 = 0;
  int tau = 0;
  double magnitude = 0.0;
  bool is_auto = false;
};

// Rows for the requested pairs, using the same shift ranges as sweep().
std::vector<ProfileRow> profile(const CSSet& set, std::span<const std::pair<std::size_t, std::size_t>> pairs);

// --- formula-mode optimality trend ---
struct TrendPoint {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint64_t q = 0;
  std::optional<double> rho;  // empty when skipped
  BoundKind bound = BoundKind::Liu;
  std::string note;
};

std::vector<TrendPoint> rho_trend(Construction c, std::uint32_t p, std::span<const std::uint32_t> n_list);
// Same, for an explicit list of prime powers q = p^n.
std::vector<TrendPoint> rho_trend_q(Construction c, std::span<const std::uint64_t> q_list);

}  // namespace qcss
