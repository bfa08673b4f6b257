#pragma once

// Quasi-complementary sequence set generators over the canonical field tower.
//
//   C  periodic  (q^2,        q-1, q-1, q+1)   additive characters + f(x)
//   A  aperiodic ((q+1)^2,    q,   q,   q)     m-sequence + zeta_{q+1}
//   B  aperiodic (q(q+1),     q,   q,   q)     m-sequence + chi_b with sigma mask
//   D  aperiodic ((q-1)(q+2), q,   q+1, q)     m-sequence + zeta_{q+2}
//   E  aperiodic ((q-1)^2,    q-1, q-1, q-1)   m-sequence through a bijection phi
//   F  aperiodic (q(q-1),     q,   q-2, q)     multiplicative x additive characters
//
// Matrices are stored row-major in their (a, b) / (i, b) labels; labels that
// range over F_q use the coefficient-lex enumeration.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcss/galois.hpp"

namespace qcss {

enum class Construction { C, A, B, D, E, F };
enum class Mode { Periodic, Aperiodic };

char to_char(Construction c);
// Accepts "C", "A", ... (case-insensitive). Throws std::invalid_argument otherwise.
Construction parse_construction(const std::string& s);
const char* to_string(Mode m);

// K x N grid of exponents mod the owning set's symbol order.
class SymbolMatrix {
 public:
  SymbolMatrix() = default;
  SymbolMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), exps_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t& at(std::size_t k, std::size_t t) { return exps_[k * cols_ + t]; }
  std::uint32_t at(std::size_t k, std::size_t t) const { return exps_[k * cols_ + t]; }
  std::span<const std::uint32_t> row(std::size_t k) const {
    return std::span<const std::uint32_t>(exps_).subspan(k * cols_, cols_);
  }
  const std::vector<std::uint32_t>& data() const { return exps_; }

  friend bool operator==(const SymbolMatrix&, const SymbolMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> exps_;
};

struct ClaimedParams {
  std::uint64_t M = 0;
  std::uint32_t K = 0;
  std::uint32_t N = 0;
  std::uint32_t max_corr = 0;
  // Alphabet size as stated for the family (may exceed the symbol order when
  // gcd collapses occur).
  std::uint64_t alphabet = 0;

  friend bool operator==(const ClaimedParams&, const ClaimedParams&) = default;
};

// (first, second) index label of one matrix: (a, b) or (i, b). Components over
// F_q hold the element's coefficient-lex index.
struct MatrixLabel {
  std::uint32_t first = 0;
  std::uint32_t second = 0;

  friend bool operator==(const MatrixLabel&, const MatrixLabel&) = default;
};

struct CSSet {
  Construction id = Construction::A;
  std::shared_ptr<const FieldCtx> ctx;
  std::uint32_t order = 1;  // L: entries are powers of zeta_L
  Mode mode = Mode::Aperiodic;
  std::vector<SymbolMatrix> matrices;
  ClaimedParams claimed;
  std::vector<MatrixLabel> labels;

  std::uint32_t K() const { return matrices.empty() ? 0 : static_cast<std::uint32_t>(matrices[0].rows()); }
  std::uint32_t N() const { return matrices.empty() ? 0 : static_cast<std::uint32_t>(matrices[0].cols()); }
};

bool operator==(const CSSet& a, const CSSet& b);

// Coefficients of f(x) in F_q[x], low-to-high; degree < q.
struct PolySpec {
  std::vector<FqElem> coeffs;
};

FqElem eval_poly(const FieldCtx& ctx, const PolySpec& f, FqElem x);

struct PermDifferenceResult {
  bool ok = true;
  std::optional<FqElem> violating_z;
};

// True iff x -> f(zx) - f(x) permutes F_q for every z != 1 (exhaustive).
PermDifferenceResult check_perm_difference(const FieldCtx& ctx, const PolySpec& f);

// Optional override of the row-element enumeration d_0, d_1, ... All
// generators require it to be a permutation of the default list (F_q^* for C,
// F_q for the others).
struct GenOptions {
  std::optional<std::vector<FqElem>> row_elements;
};

// Throws std::invalid_argument if n == 1 or f fails check_perm_difference.
CSSet gen_periodic_C(std::shared_ptr<const FieldCtx> ctx, const PolySpec& f, const GenOptions& opt = {});
CSSet gen_A(std::shared_ptr<const FieldCtx> ctx, const GenOptions& opt = {});
CSSet gen_B(std::shared_ptr<const FieldCtx> ctx, const GenOptions& opt = {});
CSSet gen_D(std::shared_ptr<const FieldCtx> ctx, const GenOptions& opt = {});

// sigma(t) = 1 for 0 <= t <= q-2 and 0 for t = q-1.
std::uint32_t sigma(const FieldCtx& ctx, std::uint32_t t);

// Unique e in [0, q] with Tr_{q^2/q}(beta^e) = 0.
std::uint32_t find_trace_zero(const FieldCtx& ctx);

// Bijection F_q -> {0, ..., q-1} with phi(0) = 0, indexed by element value.
class PhiMap {
 public:
  // phi(0) = 0, phi(alpha^i) = i + 1.
  static PhiMap from_dlog(const FieldCtx& ctx);
  // Throws std::invalid_argument unless values is a bijection onto [0, q-1] with values[0] == 0.
  static PhiMap from_values(const FieldCtx& ctx, std::vector<std::uint32_t> values);

  std::uint32_t operator()(FqElem x) const { return values_[x.value]; }
  const std::vector<std::uint32_t>& values() const { return values_; }

 private:
  std::vector<std::uint32_t> values_;
};

// Throws std::invalid_argument if q <= 2.
CSSet gen_E(std::shared_ptr<const FieldCtx> ctx, const PhiMap& phi, const GenOptions& opt = {});
CSSet gen_E(std::shared_ptr<const FieldCtx> ctx, const GenOptions& opt = {});
CSSet gen_F(std::shared_ptr<const FieldCtx> ctx, const GenOptions& opt = {});

// Claimed parameters from the family formulas (no generation).
ClaimedParams claimed_params(Construction c, std::uint32_t p, std::uint32_t q);
// Symbol order L for the family at (p, q).
std::uint32_t symbol_order(Construction c, std::uint32_t p, std::uint32_t q);
// Row-major labels for the family.
std::vector<MatrixLabel> matrix_labels(Construction c, std::uint32_t q);
// Throws std::invalid_argument naming the failed precondition.
void check_preconditions(Construction c, std::uint32_t p, std::uint32_t n);

// Dispatch helper; f is used only for C (defaults to f(x) = x).
CSSet generate(Construction c, std::shared_ptr<const FieldCtx> ctx,
               const std::optional<PolySpec>& f = std::nullopt, const GenOptions& opt = {});

// Distinct exponents occurring anywhere in the set.
std::uint64_t alphabet_count(const CSSet& set);

}  // namespace qcss
