#pragma once

// Report documents and their json / csv / text serializations.
//
// json layout: {meta{version, seed, spec}, checks[], constants[], singular[]}.
// Floats are written with 17 significant digits; NaN becomes null and the
// infinities become the strings "inf" / "-inf". Complex values are [re, im].

#include <cstdint>
#include <string>
#include <vector>

#include "poissonlab/constants.hpp"
#include "poissonlab/verify.hpp"

namespace poissonlab {

inline constexpr const char* version_string = "0.1.0";

/// One principal-value result with its provenance.
struct SingularRecord {
  /// "hilbert", "cauchy", "v", "v_star", "theorem_a" or "subintegral".
  std::string kind;
  std::string family;
  /// Angle; the 1-based index for kind "subintegral".
  double theta = 0.0;
  PvResult result;

  bool operator==(const SingularRecord&) const = default;
};

struct Report {
  std::string version = version_string;
  std::uint64_t seed = 0;
  QuadratureSpec spec;
  std::vector<InequalityCheck> checks;
  std::vector<ConstantsReport> constants;
  std::vector<SingularRecord> singular;

  bool operator==(const Report&) const = default;
};

Report make_report(const VerificationReport& v);

std::string to_json(const Report& r);
/// Throws DomainError on malformed input.
Report report_from_json(const std::string& text);

/// One row per check: theorem_id, family, p, lhs, rhs, margin, pass.
std::string checks_csv(const std::vector<InequalityCheck>& checks);
std::string constants_csv(const std::vector<ConstantsReport>& rows);
std::string singular_csv(const std::vector<SingularRecord>& rows);
/// Concatenates the non-empty sections.
std::string to_csv(const Report& r);

std::string to_text(const Report& r);

/// "pass=N fail=M skip=K"
std::string summary_line(const std::vector<InequalityCheck>& checks);

/// %.17g, with nan / inf / -inf spelled out.
std::string format_double(double x);

}  // namespace poissonlab
