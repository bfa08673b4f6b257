#include "qcss/bundle.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "qcss/version.hpp"

namespace qcss {

using ordered_json = nlohmann::ordered_json;

BundleFormat parse_format(const std::string& s) {
  if (s == "json") return BundleFormat::Json;
  if (s == "csv") return BundleFormat::Csv;
  throw std::invalid_argument("unknown format '" + s + "' (expected json or csv)");
}

namespace {

struct Header {
  std::string construction;
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t q = 0;
  std::uint32_t L = 0;
  std::uint64_t M = 0;
  std::uint32_t K = 0;
  std::uint32_t N = 0;
  std::string mode;
  std::uint32_t claimed_max = 0;
  std::string tool_version;
  std::vector<std::uint32_t> f_poly;
};

Header make_header(const CSSet& set, const std::optional<PolySpec>& f) {
  Header h;
  h.construction = std::string(1, to_char(set.id));
  h.p = set.ctx->p();
  h.n = set.ctx->n();
  h.q = set.ctx->q();
  h.L = set.order;
  h.M = set.matrices.size();
  h.K = set.K();
  h.N = set.N();
  h.mode = to_string(set.mode);
  h.claimed_max = set.claimed.max_corr;
  h.tool_version = kToolVersion;
  if (set.id == Construction::C) {
    if (f) {
      for (auto c : f->coeffs) h.f_poly.push_back(c.value);
    } else {
      h.f_poly = {0, 1};
    }
  }
  return h;
}

// Shell CSSet from a header, with the payload still to be filled.
CSSet shell_from_header(const Header& h) {
  Construction c;
  try {
    c = parse_construction(h.construction);
  } catch (const std::invalid_argument& e) {
    throw BundleError(e.what());
  }
  std::shared_ptr<const FieldCtx> ctx;
  try {
    check_preconditions(c, h.p, h.n);
    ctx = std::make_shared<const FieldCtx>(FieldCtx::build(h.p, h.n));
  } catch (const std::invalid_argument& e) {
    throw BundleError(std::string("bundle header: ") + e.what());
  }
  CSSet set;
  set.id = c;
  set.order = symbol_order(c, h.p, ctx->q());
  set.mode = c == Construction::C ? Mode::Periodic : Mode::Aperiodic;
  set.claimed = claimed_params(c, h.p, ctx->q());
  set.labels = matrix_labels(c, ctx->q());
  if (h.q != ctx->q()) throw BundleError("bundle header: q does not equal p^n");
  if (h.L != set.order) throw BundleError("bundle header: symbol order does not match the construction");
  if (h.mode != to_string(set.mode)) throw BundleError("bundle header: mode does not match the construction");
  if (h.M != set.claimed.M || h.K != set.claimed.K || h.N != set.claimed.N) {
    throw BundleError("bundle header: (M, K, N) does not match the construction");
  }
  if (h.claimed_max != set.claimed.max_corr) throw BundleError("bundle header: claimed maximum mismatch");
  set.ctx = std::move(ctx);
  set.matrices.assign(h.M, SymbolMatrix(h.K, h.N));
  return set;
}

}  // namespace

std::string export_json(const CSSet& set, const std::optional<PolySpec>& f) {
  const Header h = make_header(set, f);
  ordered_json header;
  header["construction"] = h.construction;
  header["p"] = h.p;
  header["n"] = h.n;
  header["q"] = h.q;
  header["L"] = h.L;
  header["M"] = h.M;
  header["K"] = h.K;
  header["N"] = h.N;
  header["mode"] = h.mode;
  header["claimed_max"] = h.claimed_max;
  if (!h.f_poly.empty()) header["f_poly"] = h.f_poly;
  header["tool_version"] = h.tool_version;

  ordered_json matrices = ordered_json::array();
  for (const auto& m : set.matrices) {
    ordered_json rows = ordered_json::array();
    for (std::size_t k = 0; k < m.rows(); ++k) {
      const auto r = m.row(k);
      rows.push_back(std::vector<std::uint32_t>(r.begin(), r.end()));
    }
    matrices.push_back(std::move(rows));
  }
  ordered_json doc;
  doc["header"] = std::move(header);
  doc["matrices"] = std::move(matrices);
  return doc.dump() + "\n";
}

std::string export_csv(const CSSet& set, const std::optional<PolySpec>& f) {
  const Header h = make_header(set, f);
  std::string out;
  out += fmt::format("# construction={}\n# p={}\n# n={}\n# q={}\n# L={}\n# M={}\n# K={}\n# N={}\n", h.construction,
                     h.p, h.n, h.q, h.L, h.M, h.K, h.N);
  out += fmt::format("# mode={}\n# claimed_max={}\n", h.mode, h.claimed_max);
  if (!h.f_poly.empty()) out += fmt::format("# f_poly={}\n", fmt::join(h.f_poly, ","));
  out += fmt::format("# tool_version={}\n", h.tool_version);
  out += "m,k,t,exp\n";
  for (std::size_t m = 0; m < set.matrices.size(); ++m) {
    const auto& mat = set.matrices[m];
    for (std::size_t k = 0; k < mat.rows(); ++k) {
      for (std::size_t t = 0; t < mat.cols(); ++t) out += fmt::format("{},{},{},{}\n", m, k, t, mat.at(k, t));
    }
  }
  return out;
}

std::string export_bundle(const CSSet& set, BundleFormat format, const std::optional<PolySpec>& f) {
  return format == BundleFormat::Json ? export_json(set, f) : export_csv(set, f);
}

CSSet import_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw BundleError(std::string("malformed JSON bundle: ") + e.what());
  }
  Header h;
  try {
    const auto& hd = doc.at("header");
    h.construction = hd.at("construction").get<std::string>();
    h.p = hd.at("p").get<std::uint32_t>();
    h.n = hd.at("n").get<std::uint32_t>();
    h.q = hd.at("q").get<std::uint32_t>();
    h.L = hd.at("L").get<std::uint32_t>();
    h.M = hd.at("M").get<std::uint64_t>();
    h.K = hd.at("K").get<std::uint32_t>();
    h.N = hd.at("N").get<std::uint32_t>();
    h.mode = hd.at("mode").get<std::string>();
    h.claimed_max = hd.at("claimed_max").get<std::uint32_t>();
  } catch (const nlohmann::json::exception& e) {
    throw BundleError(std::string("bundle header: ") + e.what());
  }
  CSSet set = shell_from_header(h);
  const auto& mats = doc.at("matrices");
  if (!mats.is_array() || mats.size() != h.M) throw BundleError("bundle payload: matrix count mismatch");
  for (std::size_t m = 0; m < h.M; ++m) {
    const auto& rows = mats[m];
    if (!rows.is_array() || rows.size() != h.K) throw BundleError("bundle payload: row count mismatch");
    for (std::size_t k = 0; k < h.K; ++k) {
      const auto& row = rows[k];
      if (!row.is_array() || row.size() != h.N) throw BundleError("bundle payload: row length mismatch");
      for (std::size_t t = 0; t < h.N; ++t) {
        if (!row[t].is_number_unsigned()) throw BundleError("bundle payload: exponent is not an integer");
        const auto e = row[t].get<std::uint64_t>();
        if (e >= h.L) throw BundleError("bundle payload: exponent outside [0, L)");
        set.matrices[m].at(k, t) = static_cast<std::uint32_t>(e);
      }
    }
  }
  return set;
}

CSSet import_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<std::string, std::string> kv;
  bool saw_columns = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw BundleError(fmt::format("csv line {}: malformed header", line_no));
      kv[line.substr(2, eq - 2)] = line.substr(eq + 1);
      continue;
    }
    if (line != "m,k,t,exp") throw BundleError(fmt::format("csv line {}: expected column header", line_no));
    saw_columns = true;
    break;
  }
  if (!saw_columns) throw BundleError("csv bundle: missing column header");

  auto get_u64 = [&](const std::string& key) -> std::uint64_t {
    const auto it = kv.find(key);
    if (it == kv.end()) throw BundleError("csv bundle: header is missing '" + key + "'");
    std::uint64_t v = 0;
    const auto& s = it->second;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw BundleError("csv bundle: header '" + key + "' is not an integer");
    }
    return v;
  };
  Header h;
  h.construction = kv.count("construction") ? kv["construction"] : "";
  h.mode = kv.count("mode") ? kv["mode"] : "";
  h.p = static_cast<std::uint32_t>(get_u64("p"));
  h.n = static_cast<std::uint32_t>(get_u64("n"));
  h.q = static_cast<std::uint32_t>(get_u64("q"));
  h.L = static_cast<std::uint32_t>(get_u64("L"));
  h.M = get_u64("M");
  h.K = static_cast<std::uint32_t>(get_u64("K"));
  h.N = static_cast<std::uint32_t>(get_u64("N"));
  h.claimed_max = static_cast<std::uint32_t>(get_u64("claimed_max"));
  CSSet set = shell_from_header(h);

  std::vector<char> filled(h.M * h.K * h.N, 0);
  std::size_t cells = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::uint64_t f[4];
    const char* ptr = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 4; ++i) {
      const auto res = std::from_chars(ptr, end, f[i]);
      if (res.ec != std::errc()) throw BundleError(fmt::format("csv line {}: malformed row", line_no));
      ptr = res.ptr;
      if (i < 3) {
        if (ptr == end || *ptr != ',') throw BundleError(fmt::format("csv line {}: malformed row", line_no));
        ++ptr;
      }
    }
    if (ptr != end) throw BundleError(fmt::format("csv line {}: trailing characters", line_no));
    if (f[0] >= h.M || f[1] >= h.K || f[2] >= h.N || f[3] >= h.L) {
      throw BundleError(fmt::format("csv line {}: value out of range", line_no));
    }
    const std::size_t idx = (f[0] * h.K + f[1]) * h.N + f[2];
    if (filled[idx]) throw BundleError(fmt::format("csv line {}: duplicate cell", line_no));
    filled[idx] = 1;
    ++cells;
    set.matrices[f[0]].at(f[1], f[2]) = static_cast<std::uint32_t>(f[3]);
  }
  if (cells != filled.size()) throw BundleError("csv bundle: payload does not cover every cell");
  return set;
}

CSSet import_bundle(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return import_json(text);
  return import_csv(text);
}

std::string profile_csv(const std::vector<ProfileRow>& rows, double max_corr) {
  std::string out = "m1,m2,tau,magnitude,kind,max_corr\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{:.9f},{},{:.9f}\n", r.m1, r.m2, r.tau, r.magnitude, r.is_auto ? "auto" : "cross",
                       max_corr);
  }
  return out;
}

}  // namespace qcss
