#pragma once

// Inequality checkers over boundary-function corpora.
//
//   lemma_wtheta    M_p(r, w_theta) <= ||F'||_p
//   thm_wr_bergman  ||w_r||_{L^p} <= (2 C(p))^{1/p} ||F'||_p
//   thm_wz_bergman  ||w_z||_{L^p}, ||conj w_zbar||_{L^p} <= (C(p) + 1/(2-p))^{1/p} ||F'||_p, p < 2
//   thm_qr_hardy    ||w_z||_p <= K ||F'||_p, ||conj w_zbar||_p <= (K-1)/2 ||F'||_p
//
// C(p) is the weighted constant int_0^1 I(r)^p r dr.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poissonlab/boundary.hpp"

namespace poissonlab {

enum class TheoremId { lemma_wtheta, thm_wr_bergman, thm_wz_bergman, thm_qr_hardy };
enum class CheckStatus { pass, fail, skip };

std::string to_string(TheoremId t);
std::string to_string(CheckStatus s);
/// Accepts the canonical ids and the short forms lemma, thm1, thm2, thm3.
TheoremId theorem_from_string(const std::string& s);
CheckStatus status_from_string(const std::string& s);

/// Relative slack on lhs <= rhs.
inline constexpr double pass_tolerance = 1e-9;
/// Margins below this are flagged tight.
inline constexpr double tight_margin = 1e-6;
/// thm_qr_hardy runs only when the dilatation ratio stays below 1 - this.
inline constexpr double quasiregular_gap = 1e-3;

struct InequalityCheck {
  TheoremId theorem_id = TheoremId::lemma_wtheta;
  std::string family;
  double p = 1.0;
  /// Which side of the theorem: w_theta, w_r, w_z or conj_w_zbar.
  std::string component;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  CheckStatus status = CheckStatus::pass;
  bool tight = false;
  /// Named numeric diagnostics in a fixed order.
  std::vector<std::pair<std::string, double>> metrics;
  std::string note;

  bool pass() const { return status == CheckStatus::pass; }
  /// NaN fields (skipped checks) compare equal to NaN.
  bool operator==(const InequalityCheck& o) const;
};

/// Fills margin, status and tight from lhs and rhs.
void settle(InequalityCheck& c);

struct VerifyOptions {
  std::vector<double> p_list{1.0, 1.5, 2.0, 4.0};
  std::vector<TheoremId> theorems{TheoremId::lemma_wtheta, TheoremId::thm_wr_bergman,
                                  TheoremId::thm_wz_bergman, TheoremId::thm_qr_hardy};
  std::vector<double> lemma_r_grid{0.5, 0.9, 1.0 - 1e-3};
  /// Empty means the default Hardy grid 1 - 2^-k, k = 2..13.
  std::vector<double> hardy_r_grid;
  std::size_t theta_nodes = 512;
  int workers = 1;
};

struct VerificationReport {
  std::vector<InequalityCheck> checks;
  std::vector<std::string> corpus;
  QuadratureSpec spec;
  std::uint64_t seed = 0;
  int passed = 0, failed = 0, skipped = 0;

  bool operator==(const VerificationReport& o) const {
    return checks == o.checks && corpus == o.corpus && seed == o.seed && passed == o.passed &&
           failed == o.failed && skipped == o.skipped;
  }
};

InequalityCheck check_lemma_wtheta(const BoundaryFunction& F, double p,
                                   const std::vector<double>& r_grid, const QuadratureSpec& spec);
InequalityCheck check_thm1(const BoundaryFunction& F, double p, const QuadratureSpec& spec);
std::pair<InequalityCheck, InequalityCheck> check_thm2(const BoundaryFunction& F, double p,
                                                       const QuadratureSpec& spec);
std::pair<InequalityCheck, InequalityCheck> check_thm3(const BoundaryFunction& F, double p,
                                                       const QuadratureSpec& spec,
                                                       const VerifyOptions& opts = {});

/// Quasiregularity witness used by check_thm3.
struct QuasiregularWitness {
  /// Grid sup of |w_zbar / w_z| over the Hardy grid.
  double grid_sup = 0.0;
  /// Boundary ratio approaching singular directions of a phase map.
  double boundary_sup = 0.0;
  double sup = 0.0;
  double K = 1.0;
  bool closed_form = false;
  bool quasiregular = false;
};

QuasiregularWitness quasiregular_witness(const BoundaryFunction& F, const QuadratureSpec& spec,
                                         const VerifyOptions& opts = {});

/// The 50-family corpus; seeded families are offset by seed.
std::vector<FamilySpec> default_corpus(std::uint64_t seed = 0);

/// Runs every applicable (family, theorem, p) check. Families run in parallel
/// on opts.workers threads; the result order is fixed by (family, theorem, p,
/// component) regardless of scheduling.
VerificationReport run_corpus(const std::vector<FamilySpec>& corpus, const VerifyOptions& opts,
                              const QuadratureSpec& spec, std::uint64_t seed = 0);

}  // namespace poissonlab
