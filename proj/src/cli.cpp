#include "qcss/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "qcss/bundle.hpp"
#include "qcss/constructions.hpp"
#include "qcss/correlation.hpp"
#include "qcss/registry.hpp"

namespace qcss {

namespace {

// Invalid user input; maps to kExitInvalidParams.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SetArgs {
  std::string construction;
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::string f_poly;
};

void add_set_options(CLI::App* cmd, SetArgs& a) {
  cmd->add_option("--construction,-c", a.construction, "C, A, B, D, E or F")->required();
  cmd->add_option("-p", a.p, "characteristic (prime)")->required();
  cmd->add_option("-n", a.n, "extension degree")->required();
  cmd->add_option("--f-poly", a.f_poly, "f(x) coefficients c0,c1,... as F_q element indices (C only)");
}

std::vector<std::uint64_t> parse_uint_list(const std::string& s, const char* what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError(fmt::format("{}: '{}' is not a nonnegative integer", what, item));
    }
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw UsageError(fmt::format("{}: empty list", what));
  return out;
}

struct BuiltSet {
  CSSet set;
  std::optional<PolySpec> f;
};

BuiltSet build_set(const SetArgs& a) {
  Construction c;
  try {
    c = parse_construction(a.construction);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  try {
    check_preconditions(c, a.p, a.n);
    auto ctx = std::make_shared<const FieldCtx>(FieldCtx::build(a.p, a.n));
    std::optional<PolySpec> f;
    if (!a.f_poly.empty()) {
      if (c != Construction::C) throw UsageError("--f-poly applies to construction C only");
      PolySpec spec;
      for (auto v : parse_uint_list(a.f_poly, "--f-poly")) {
        if (v >= ctx->q()) throw UsageError(fmt::format("--f-poly: coefficient {} is not below q = {}", v, ctx->q()));
        spec.coeffs.push_back(FqElem{static_cast<std::uint32_t>(v)});
      }
      f = spec;
    }
    return {generate(c, ctx, f), f};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void check_sweep_cap(const CSSet& set, std::uint32_t max_q) {
  if (set.ctx->q() > max_q) {
    throw UsageError(fmt::format("q = {} exceeds the sweep cap of {} (raise it with --max-q)", set.ctx->q(), max_q));
  }
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << data;
  if (!f) throw IoError("failed writing '" + path + "'");
}

std::string paint(const CliEnv& env, const std::string& s, bool good) {
  if (!env.color) return s;
  return fmt::format("\033[{}m{}\033[0m", good ? "32" : "31", s);
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : "n/a"; }

void print_verify_report(std::ostream& out, const CSSet& set, const CorrReport& r, const CliEnv& env) {
  const bool periodic = set.mode == Mode::Periodic;
  const char* sym = periodic ? "vartheta" : "theta";
  out << fmt::format("construction {}  p={} n={} q={}  mode={}  L={}\n", to_char(set.id), r.p, r.n, r.q,
                     to_string(r.mode), set.order);
  out << fmt::format("parameters (M, K, N) = ({}, {}, {})  claimed ({}, {}, {}, {})\n", r.M, r.K, r.N,
                     set.claimed.M, set.claimed.K, set.claimed.N, set.claimed.max_corr);
  out << fmt::format("{}_a = {:.6f}  {}_c = {:.6f}  {}_max = {:.6f}\n", sym, r.auto_max, sym, r.cross_max, sym,
                     r.max_corr);
  out << fmt::format("max attained at m1={} m2={} tau={}\n", r.witness.m1, r.witness.m2, r.witness.tau);
  if (r.auto_max <= kMagnitudeTolerance) out << "auto-correlation is zero at every nonzero shift\n";

  const auto refs = value_set(set.id, r.p, r.q);
  std::vector<std::string> ref_text;
  for (double v : refs) ref_text.push_back(fmt::format("{:.6f}", v));
  out << fmt::format("value set {{{}}}\n", fmt::join(ref_text, ", "));
  out << "magnitude histogram:\n";
  for (const auto& [key, count] : r.histogram) out << fmt::format("  {:>14.6f}  x {}\n", bucket_value(key), count);

  out << "bounds:\n";
  for (const auto& b : r.bounds) {
    out << fmt::format("  {:<9} {}{}\n", to_string(b.kind), fmt_opt(b.value),
                       b.value ? "" : "  (inapplicable: " + b.reason + ")");
  }
  if (r.rho) {
    out << fmt::format("rho = {:.6f} against {} bound ({}){}\n", *r.rho, to_string(r.rho_bound.kind),
                       to_string(classify_rho(*r.rho)), r.rho_bound.reason.empty() ? "" : "; " + r.rho_bound.reason);
  } else {
    out << "rho = n/a (no applicable bound)\n";
  }
  out << fmt::format("alphabet: {} distinct symbols (stated {})\n", r.alphabet, set.claimed.alphabet);
  for (const auto& w : r.claims.warnings) out << "warning: " << w << "\n";
  for (const auto& f : r.claims.failures) out << "failure: " << f << "\n";
  out << (r.claims_pass ? paint(env, "PASS", true) : paint(env, "FAIL", false)) << "\n";
}

std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& spec, std::size_t M) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (spec == "all") {
    for (std::size_t a = 0; a < M; ++a) {
      for (std::size_t b = 0; b < M; ++b) pairs.emplace_back(a, b);
    }
    return pairs;
  }
  if (spec.empty()) throw UsageError("--pairs: empty pair specification");
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find('x');
    if (x == std::string::npos) throw UsageError("--pairs: expected M1xM2, got '" + item + "'");
    const auto lhs = item.substr(0, x);
    const auto rhs = item.substr(x + 1);
    auto num = [&](const std::string& s) -> std::size_t {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError("--pairs: bad matrix index in '" + item + "'");
      }
      const auto v = std::stoull(s);
      if (v >= M) throw UsageError(fmt::format("--pairs: index {} is outside [0, {})", v, M));
      return static_cast<std::size_t>(v);
    };
    pairs.emplace_back(num(lhs), num(rhs));
  }
  if (pairs.empty()) throw UsageError("--pairs: empty pair specification");
  return pairs;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliEnv& env) {
  CLI::App app{"Quasi-complementary sequence set toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--parallel", threads, "sweep worker threads (default: all cores)");

  SetArgs build_args;
  std::string out_path;
  std::string format = "json";
  auto* build = app.add_subcommand("build", "generate a sequence set and export it");
  add_set_options(build, build_args);
  build->add_option("--out,-o", out_path, "output file")->required();
  build->add_option("--format", format, "json or csv");

  SetArgs verify_args;
  std::uint32_t max_q = 16;
  auto* verify = app.add_subcommand("verify", "sweep a set and check it against its claimed parameters");
  add_set_options(verify, verify_args);
  verify->add_option("--max-q", max_q, "largest q allowed for a full sweep");

  SetArgs profile_args;
  std::string pairs_spec;
  std::string profile_out;
  auto* prof = app.add_subcommand("profile", "write per-pair correlation magnitudes as CSV");
  add_set_options(prof, profile_args);
  prof->add_option("--pairs", pairs_spec, "'all' or a list like 0x1,0x2")->required();
  prof->add_option("--out,-o", profile_out, "output CSV")->required();
  prof->add_option("--max-q", max_q, "largest q allowed for a full sweep");

  std::int64_t bM = 0, bK = 0, bN = 0;
  std::string bmode = "all";
  auto* bounds = app.add_subcommand("bounds", "evaluate the correlation lower bounds");
  bounds->add_option("--M", bM, "set size")->required();
  bounds->add_option("--K", bK, "flock size")->required();
  bounds->add_option("--N", bN, "sequence length")->required();
  bounds->add_option("--mode", bmode, "periodic, aperiodic or all");

  bool with_known = false;
  auto* table = app.add_subcommand("table", "print the construction registry");
  table->add_flag("--known", with_known, "include previously known families for comparison");

  std::string trend_c;
  std::uint32_t trend_p = 0;
  std::string trend_n;
  auto* trend = app.add_subcommand("trend", "optimality factor from the claimed parameters over several n");
  trend->add_option("--construction,-c", trend_c)->required();
  trend->add_option("-p", trend_p)->required();
  trend->add_option("--n-list", trend_n, "comma-separated extension degrees")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidParams;
  }

  try {
    if (build->parsed()) {
      const BundleFormat fmt_kind = [&] {
        try {
          return parse_format(format);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }();
      auto built = build_set(build_args);
      write_file(out_path, export_bundle(built.set, fmt_kind, built.f));
      err << fmt::format("wrote {} matrices ({}x{}) to {}\n", built.set.matrices.size(), built.set.K(),
                         built.set.N(), out_path);
      return kExitOk;
    }
    if (verify->parsed()) {
      auto built = build_set(verify_args);
      check_sweep_cap(built.set, max_q);
      const auto report = sweep(built.set, SweepOptions{threads});
      print_verify_report(out, built.set, report, env);
      return report.claims_pass ? kExitOk : kExitClaimFailure;
    }
    if (prof->parsed()) {
      auto built = build_set(profile_args);
      check_sweep_cap(built.set, max_q);
      const auto pairs = parse_pairs(pairs_spec, built.set.matrices.size());
      const auto report = sweep(built.set, SweepOptions{threads});
      write_file(profile_out, profile_csv(profile(built.set, pairs), report.max_corr));
      return kExitOk;
    }
    if (bounds->parsed()) {
      if (bM <= 0 || bK <= 0 || bN <= 0) throw UsageError("bounds: M, K and N must be positive");
      std::vector<BoundKind> kinds;
      if (bmode == "periodic") {
        kinds = {BoundKind::Periodic};
      } else if (bmode == "aperiodic") {
        kinds = {BoundKind::Welch, BoundKind::Liu};
      } else if (bmode == "all") {
        kinds = {BoundKind::Periodic, BoundKind::Welch, BoundKind::Liu};
      } else {
        throw UsageError("bounds: --mode must be periodic, aperiodic or all");
      }
      out << fmt::format("{:<9} {:>12}  {}\n", "bound", "value", "applicable");
      for (auto k : kinds) {
        const auto b = evaluate_bound(k, static_cast<std::uint64_t>(bM), static_cast<std::uint64_t>(bK),
                                      static_cast<std::uint64_t>(bN));
        out << fmt::format("{:<9} {:>12}  {}\n", to_string(k), fmt_opt(b.value),
                           b.value ? "yes" : "no (" + b.reason + ")");
      }
      return kExitOk;
    }
    if (table->parsed()) {
      out << render_table(with_known);
      return kExitOk;
    }
    if (trend->parsed()) {
      Construction c;
      try {
        c = parse_construction(trend_c);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      std::vector<std::uint32_t> ns;
      for (auto v : parse_uint_list(trend_n, "--n-list")) ns.push_back(static_cast<std::uint32_t>(v));
      std::vector<TrendPoint> pts;
      try {
        pts = rho_trend(c, trend_p, ns);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      out << fmt::format("{:>4} {:>10} {:>12}  {}\n", "n", "q", "rho", "bound");
      for (const auto& pt : pts) {
        out << fmt::format("{:>4} {:>10} {:>12}  {}\n", pt.n, pt.q, fmt_opt(pt.rho),
                           pt.rho ? std::string(to_string(pt.bound)) : "skipped: " + pt.note);
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidParams;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitInvalidParams;
}

}  // namespace qcss
