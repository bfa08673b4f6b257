#pragma once

// File formats for exported sequence sets and correlation profiles.
//
// JSON: {"header": {...}, "matrices": [M][K][N] exponents mod L}
// CSV:  "# key=value" header lines, then "m,k,t,exp" rows.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcss/constructions.hpp"
#include "qcss/correlation.hpp"

namespace qcss {

class BundleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BundleFormat { Json, Csv };
BundleFormat parse_format(const std::string& s);

std::string export_json(const CSSet& set, const std::optional<PolySpec>& f = std::nullopt);
std::string export_csv(const CSSet& set, const std::optional<PolySpec>& f = std::nullopt);
std::string export_bundle(const CSSet& set, BundleFormat fmt, const std::optional<PolySpec>& f = std::nullopt);

// Rebuild the field tower from the header and load the payload. Throws
// BundleError when the header and payload disagree.
CSSet import_json(const std::string& text);
CSSet import_csv(const std::string& text);
CSSet import_bundle(const std::string& text);

// Columns: m1,m2,tau,magnitude,kind,max_corr
std::string profile_csv(const std::vector<ProfileRow>& rows, double max_corr);

}  // namespace qcss
