#include "qcss/constructions.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "qcss/characters.hpp"

namespace qcss {

char to_char(Construction c) {
  switch (c) {
    case Construction::C: return 'C';
    case Construction::A: return 'A';
    case Construction::B: return 'B';
    case Construction::D: return 'D';
    case Construction::E: return 'E';
    case Construction::F: return 'F';
  }
  return '?';
}

Construction parse_construction(const std::string& s) {
  if (s.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(s[0]))) {
      case 'C': return Construction::C;
      case 'A': return Construction::A;
      case 'B': return Construction::B;
      case 'D': return Construction::D;
      case 'E': return Construction::E;
      case 'F': return Construction::F;
    }
  }
  throw std::invalid_argument("unknown construction '" + s + "' (expected one of C, A, B, D, E, F)");
}

const char* to_string(Mode m) { return m == Mode::Periodic ? "periodic" : "aperiodic"; }

bool operator==(const CSSet& a, const CSSet& b) {
  const bool same_ctx = a.ctx == b.ctx || (a.ctx && b.ctx && *a.ctx == *b.ctx);
  return a.id == b.id && same_ctx && a.order == b.order && a.mode == b.mode &&
         a.matrices == b.matrices && a.claimed == b.claimed && a.labels == b.labels;
}

FqElem eval_poly(const FieldCtx& ctx, const PolySpec& f, FqElem x) {
  FqElem acc = ctx.zero();
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = ctx.add(ctx.mul(acc, x), *it);
  return acc;
}

PermDifferenceResult check_perm_difference(const FieldCtx& ctx, const PolySpec& f) {
  const std::uint32_t q = ctx.q();
  if (f.coeffs.size() > q) throw std::invalid_argument("f(x) must have degree < q");
  for (auto c : f.coeffs) {
    if (!ctx.is_valid(c)) throw std::invalid_argument("f(x) coefficient is not an element of F_q");
  }
  std::vector<FqElem> fx(q);
  for (std::uint32_t v = 0; v < q; ++v) fx[v] = eval_poly(ctx, f, FqElem{v});
  std::vector<char> seen(q);
  for (std::uint32_t zv = 0; zv < q; ++zv) {
    const FqElem z{zv};
    if (z == ctx.one()) continue;
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint32_t v = 0; v < q; ++v) {
      const FqElem d = ctx.sub(fx[ctx.mul(z, FqElem{v}).value], fx[v]);
      if (seen[d.value]) return {false, z};
      seen[d.value] = 1;
    }
  }
  return {true, std::nullopt};
}

ClaimedParams claimed_params(Construction c, std::uint32_t p, std::uint32_t q) {
  const std::uint64_t Q = q;
  switch (c) {
    case Construction::C: return {Q * Q, q - 1, q - 1, q + 1, p};
    case Construction::A: return {(Q + 1) * (Q + 1), q, q, q, std::uint64_t{p} * (Q + 1)};
    case Construction::B: return {Q * (Q + 1), q, q, q, p};
    case Construction::D: return {(Q - 1) * (Q + 2), q, q + 1, q, std::uint64_t{p} * (Q + 2)};
    case Construction::E: return {(Q - 1) * (Q - 1), q - 1, q - 1, q - 1, Q - 1};
    case Construction::F: return {Q * (Q - 1), q, q - 2, q, std::uint64_t{p} * (Q - 1)};
  }
  throw std::logic_error("unreachable");
}

std::uint32_t symbol_order(Construction c, std::uint32_t p, std::uint32_t q) {
  switch (c) {
    case Construction::C:
    case Construction::B: return p;
    case Construction::A: return static_cast<std::uint32_t>(lcm(p, q + 1));
    case Construction::D: return static_cast<std::uint32_t>(lcm(p, q + 2));
    case Construction::E: return q - 1;
    case Construction::F: return static_cast<std::uint32_t>(lcm(p, q - 1));
  }
  throw std::logic_error("unreachable");
}

std::vector<MatrixLabel> matrix_labels(Construction c, std::uint32_t q) {
  std::uint32_t first = 0;
  std::uint32_t second = 0;
  switch (c) {
    case Construction::C: first = q; second = q; break;
    case Construction::A: first = q + 1; second = q + 1; break;
    case Construction::B: first = q + 1; second = q; break;
    case Construction::D: first = q - 1; second = q + 2; break;
    case Construction::E: first = q - 1; second = q - 1; break;
    case Construction::F: first = q - 1; second = q; break;
  }
  std::vector<MatrixLabel> out;
  out.reserve(std::size_t{first} * second);
  for (std::uint32_t a = 0; a < first; ++a) {
    for (std::uint32_t b = 0; b < second; ++b) out.push_back({a, b});
  }
  return out;
}

void check_preconditions(Construction c, std::uint32_t p, std::uint32_t n) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) q *= p;
  switch (c) {
    case Construction::C:
      if (n <= 1) throw std::invalid_argument("construction C requires n > 1");
      break;
    case Construction::E:
    case Construction::F:
      if (q <= 2) {
        throw std::invalid_argument(std::string("construction ") + to_char(c) + " requires q = p^n > 2");
      }
      break;
    default: break;
  }
}

namespace {

std::vector<FqElem> resolve_rows(const FieldCtx& ctx, const GenOptions& opt, bool include_zero) {
  auto def = ctx.enumerate_fq(include_zero);
  if (!opt.row_elements) return def;
  auto rows = *opt.row_elements;
  auto sorted = rows;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != def) {
    throw std::invalid_argument("row_elements must be a permutation of the default enumeration");
  }
  return rows;
}

CSSet make_shell(Construction c, std::shared_ptr<const FieldCtx> ctx, Mode mode) {
  check_preconditions(c, ctx->p(), ctx->n());
  CSSet set;
  set.id = c;
  set.mode = mode;
  set.order = symbol_order(c, ctx->p(), ctx->q());
  set.claimed = claimed_params(c, ctx->p(), ctx->q());
  set.labels = matrix_labels(c, ctx->q());
  set.ctx = std::move(ctx);
  set.matrices.reserve(set.labels.size());
  return set;
}

}  // namespace

CSSet gen_periodic_C(std::shared_ptr<const FieldCtx> ctx_ptr, const PolySpec& f, const GenOptions& opt) {
  const FieldCtx& ctx = *ctx_ptr;
  CSSet set = make_shell(Construction::C, ctx_ptr, Mode::Periodic);
  if (!check_perm_difference(ctx, f).ok) {
    throw std::invalid_argument(
        "construction C requires f(zx) - f(x) to permute F_q for every z != 1");
  }
  const std::uint32_t q = ctx.q();
  const auto d = resolve_rows(ctx, opt, false);
  std::vector<FqElem> f_alpha(q - 1);
  for (std::uint32_t t = 0; t + 1 < q; ++t) f_alpha[t] = eval_poly(ctx, f, ctx.alpha_pow(t));

  for (const auto& label : set.labels) {
    const FqElem a{label.first};
    const FqElem b{label.second};
    SymbolMatrix mat(q - 1, q - 1);
    for (std::uint32_t l = 0; l + 1 < q; ++l) {
      for (std::uint32_t t = 0; t + 1 < q; ++t) {
        const FqElem arg = ctx.add(ctx.mul(d[l], ctx.add(f_alpha[t], a)), ctx.mul(b, ctx.alpha_pow(t)));
        mat.at(l, t) = ctx.trace_to_prime(arg);
      }
    }
    set.matrices.push_back(std::move(mat));
  }
  return set;
}

CSSet gen_A(std::shared_ptr<const FieldCtx> ctx_ptr, const GenOptions& opt) {
  const FieldCtx& ctx = *ctx_ptr;
  CSSet set = make_shell(Construction::A, ctx_ptr, Mode::Aperiodic);
  const std::uint32_t q = ctx.q();
  const std::uint32_t L = set.order;
  const std::uint32_t lp = L / ctx.p();
  const std::uint32_t lz = L / (q + 1);
  const auto d = resolve_rows(ctx, opt, true);
  const auto s = msequence(ctx);
  for (const auto& label : set.labels) {
    const std::uint64_t a = label.first;
    const std::uint64_t b = label.second;
    SymbolMatrix mat(q, q);
    for (std::uint32_t k = 0; k < q; ++k) {
      for (std::uint32_t t = 0; t < q; ++t) {
        const FqElem tr = s[(a * (q - 1) + t) % s.size()];
        const std::uint64_t add_part = std::uint64_t{ctx.trace_to_prime(ctx.mul(d[k], tr))} * lp;
        const std::uint64_t root_part = (b * t % (q + 1)) * lz;
        mat.at(k, t) = static_cast<std::uint32_t>((add_part + root_part) % L);
      }
    }
    set.matrices.push_back(std::move(mat));
  }
  return set;
}

std::uint32_t sigma(const FieldCtx& ctx, std::uint32_t t) {
  if (t >= ctx.q()) throw std::out_of_range("sigma is defined on [0, q-1]");
  return t + 1 < ctx.q() ? 1 : 0;
}

CSSet gen_B(std::shared_ptr<const FieldCtx> ctx_ptr, const GenOptions& opt) {
  const FieldCtx& ctx = *ctx_ptr;
  CSSet set = make_shell(Construction::B, ctx_ptr, Mode::Aperiodic);
  const std::uint32_t q = ctx.q();
  const std::uint32_t p = ctx.p();
  const auto d = resolve_rows(ctx, opt, true);
  const auto s = msequence(ctx);
  for (const auto& label : set.labels) {
    const std::uint64_t a = label.first;
    const FqElem b{label.second};
    SymbolMatrix mat(q, q);
    for (std::uint32_t t = 0; t < q; ++t) {
      // beta^((q+1)t) = alpha^t lies in F_q.
      const FqElem masked = sigma(ctx, t) ? ctx.alpha_pow(t) : ctx.zero();
      const std::uint32_t b_part = ctx.trace_to_prime(ctx.mul(b, masked));
      const FqElem tr = s[(a * (q - 1) + t) % s.size()];
      for (std::uint32_t k = 0; k < q; ++k) {
        mat.at(k, t) = (ctx.trace_to_prime(ctx.mul(d[k], tr)) + b_part) % p;
      }
    }
    set.matrices.push_back(std::move(mat));
  }
  return set;
}

CSSet gen_D(std::shared_ptr<const FieldCtx> ctx_ptr, const GenOptions& opt) {
  const FieldCtx& ctx = *ctx_ptr;
  CSSet set = make_shell(Construction::D, ctx_ptr, Mode::Aperiodic);
  const std::uint32_t q = ctx.q();
  const std::uint32_t L = set.order;
  const std::uint32_t lp = L / ctx.p();
  const std::uint32_t lz = L / (q + 2);
  const auto d = resolve_rows(ctx, opt, true);
  const auto s = msequence(ctx);
  for (const auto& label : set.labels) {
    const std::uint64_t a = label.first;
    const std::uint64_t b = label.second;
    SymbolMatrix mat(q, q + 1);
    for (std::uint32_t k = 0; k < q; ++k) {
      for (std::uint32_t t = 0; t <= q; ++t) {
        const FqElem tr = s[(a * (q + 1) + t) % s.size()];
        const std::uint64_t add_part = std::uint64_t{ctx.trace_to_prime(ctx.mul(d[k], tr))} * lp;
        const std::uint64_t root_part = (b * t % (q + 2)) * lz;
        mat.at(k, t) = static_cast<std::uint32_t>((add_part + root_part) % L);
      }
    }
    set.matrices.push_back(std::move(mat));
  }
  return set;
}

std::uint32_t find_trace_zero(const FieldCtx& ctx) {
  std::optional<std::uint32_t> found;
  Fq2Elem cur = ctx.embed(ctx.one());
  for (std::uint32_t e = 0; e <= ctx.q(); ++e) {
    if (ctx.rel_trace(cur) == ctx.zero()) {
      if (found) throw std::logic_error("more than one trace-zero exponent in [0, q]");
      found = e;
    }
    cur = ctx.mul(cur, ctx.beta());
  }
  if (!found) throw std::logic_error("no trace-zero exponent in [0, q]");
  return *found;
}

PhiMap PhiMap::from_dlog(const FieldCtx& ctx) {
  PhiMap phi;
  phi.values_.assign(ctx.q(), 0);
  for (std::uint32_t v = 1; v < ctx.q(); ++v) phi.values_[v] = ctx.dlog(FqElem{v}) + 1;
  return phi;
}

PhiMap PhiMap::from_values(const FieldCtx& ctx, std::vector<std::uint32_t> values) {
  const std::uint32_t q = ctx.q();
  if (values.size() != q) throw std::invalid_argument("phi must assign a value to every element of F_q");
  if (values[0] != 0) throw std::invalid_argument("phi must map 0 to 0");
  std::vector<char> hit(q, 0);
  for (auto v : values) {
    if (v >= q || hit[v]) throw std::invalid_argument("phi must be a bijection onto {0, ..., q-1}");
    hit[v] = 1;
  }
  PhiMap phi;
  phi.values_ = std::move(values);
  return phi;
}

CSSet gen_E(std::shared_ptr<const FieldCtx> ctx_ptr, const PhiMap& phi, const GenOptions& opt) {
  const FieldCtx& ctx = *ctx_ptr;
  CSSet set = make_shell(Construction::E, ctx_ptr, Mode::Aperiodic);
  if (opt.row_elements) {
    throw std::invalid_argument("construction E rows are indexed by integers, not field elements");
  }
  const std::uint32_t q = ctx.q();
  const std::uint32_t L = q - 1;
  const std::uint64_t e0 = find_trace_zero(ctx);
  const auto s = msequence(ctx);
  for (const auto& label : set.labels) {
    const std::uint64_t a = label.first;
    const std::uint64_t b = label.second;
    SymbolMatrix mat(q - 1, q - 1);
    for (std::uint32_t t = 0; t + 1 < q; ++t) {
      const FqElem tr = s[(e0 + a * (q + 1) + t + 1) % s.size()];
      if (tr == ctx.zero()) throw std::logic_error("construction E hit a zero trace argument");
      const std::uint64_t ph = phi(tr);
      for (std::uint32_t k = 0; k + 1 < q; ++k) {
        mat.at(k, t) = static_cast<std::uint32_t>((k * ph + b * t) % L);
      }
    }
    set.matrices.push_back(std::move(mat));
  }
  return set;
}

CSSet gen_E(std::shared_ptr<const FieldCtx> ctx, const GenOptions& opt) {
  check_preconditions(Construction::E, ctx->p(), ctx->n());
  const PhiMap phi = PhiMap::from_dlog(*ctx);
  return gen_E(std::move(ctx), phi, opt);
}

CSSet gen_F(std::shared_ptr<const FieldCtx> ctx_ptr, const GenOptions& opt) {
  const FieldCtx& ctx = *ctx_ptr;
  CSSet set = make_shell(Construction::F, ctx_ptr, Mode::Aperiodic);
  const std::uint32_t q = ctx.q();
  const std::uint32_t L = set.order;
  const std::uint32_t lp = L / ctx.p();
  const std::uint32_t lm = L / (q - 1);
  const auto d = resolve_rows(ctx, opt, true);
  for (const auto& label : set.labels) {
    const std::uint64_t i = label.first;
    const FqElem b{label.second};
    SymbolMatrix mat(q, q - 2);
    for (std::uint32_t t = 0; t + 2 < q; ++t) {
      // phi_i(alpha^t) = zeta_{q-1}^{i t}
      const std::uint64_t mult_part = (i * t % (q - 1)) * lm;
      const FqElem shifted = ctx.add(ctx.alpha_pow(t), b);
      for (std::uint32_t l = 0; l < q; ++l) {
        const std::uint64_t add_part = std::uint64_t{ctx.trace_to_prime(ctx.mul(d[l], shifted))} * lp;
        mat.at(l, t) = static_cast<std::uint32_t>((mult_part + add_part) % L);
      }
    }
    set.matrices.push_back(std::move(mat));
  }
  return set;
}

CSSet generate(Construction c, std::shared_ptr<const FieldCtx> ctx, const std::optional<PolySpec>& f,
               const GenOptions& opt) {
  switch (c) {
    case Construction::C: {
      const PolySpec identity{{ctx->zero(), ctx->one()}};
      return gen_periodic_C(std::move(ctx), f ? *f : identity, opt);
    }
    case Construction::A: return gen_A(std::move(ctx), opt);
    case Construction::B: return gen_B(std::move(ctx), opt);
    case Construction::D: return gen_D(std::move(ctx), opt);
    case Construction::E: return gen_E(std::move(ctx), opt);
    case Construction::F: return gen_F(std::move(ctx), opt);
  }
  throw std::logic_error("unreachable");
}

std::uint64_t alphabet_count(const CSSet& set) {
  std::vector<char> seen(set.order, 0);
  for (const auto& m : set.matrices) {
    for (auto e : m.data()) seen[e % set.order] = 1;
  }
  return static_cast<std::uint64_t>(std::count(seen.begin(), seen.end(), 1));
}

}  // namespace qcss
