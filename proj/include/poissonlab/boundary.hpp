#pragma once

// Boundary functions F(e^{it}) on the unit circle and the family catalog.

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "poissonlab/kernelmath.hpp"

namespace poissonlab {

enum class Smoothness { analytic, lipschitz, piecewise_smooth };

std::string to_string(Smoothness s);

/// Truncated Fourier series sum_{|n| <= degree} c_n e^{int}.
struct FourierSeries {
  int degree = 0;
  /// c_{-degree} ... c_{degree}; coeffs[n + degree] = c_n.
  std::vector<cplx> coeffs;
  /// Estimated l1 mass of the coefficients that were dropped.
  double tail_bound = 0.0;

  cplx operator()(int n) const {
    return (n < -degree || n > degree) ? cplx{} : coeffs[static_cast<std::size_t>(n + degree)];
  }
  cplx eval(double t) const;
  /// sum |c_n| over the stored range.
  double l1_mass() const;
};

/// F = e^{i phi} with phi(t + 2 pi) = phi(t) + 2 pi.
struct PhaseFunction {
  std::function<double(double)> phi;
  std::function<double(double)> phi_prime;
  /// phi(theta + t) - phi(theta) without cancellation for tiny theta and t.
  std::function<double(double, double)> increment;
  std::vector<double> singular_points;
};

/// Everything a family supplies when it builds a BoundaryFunction.
struct BoundaryParts {
  std::string descriptor;
  Smoothness smoothness = Smoothness::analytic;
  std::function<cplx(double)> eval;
  /// Derivative d/dt F(e^{it}). At a singular point the returned value is a
  /// one-sided limit and must not be relied on.
  std::function<cplx(double)> deriv;
  /// Points of [0, 2pi) where deriv is undefined.
  std::vector<double> singular_points;
  /// Exact spectrum, if the family knows it. Called at most once.
  std::function<FourierSeries()> spectrum;
  /// Closed-form dilatation constant K of the Poisson extension.
  std::optional<double> exact_K;
  std::optional<PhaseFunction> phase;
  bool real_valued = false;
};

class BoundaryFunction {
 public:
  explicit BoundaryFunction(BoundaryParts parts);

  cplx eval(double t) const { return s_->parts.eval(t); }
  cplx deriv(double t) const { return s_->parts.deriv(t); }
  const std::vector<double>& singular_points() const { return s_->parts.singular_points; }
  const std::string& descriptor() const { return s_->parts.descriptor; }
  Smoothness smoothness() const { return s_->parts.smoothness; }
  std::optional<double> exact_K() const { return s_->parts.exact_K; }
  const PhaseFunction* phase() const { return s_->parts.phase ? &*s_->parts.phase : nullptr; }
  bool real_valued() const { return s_->parts.real_valued; }

  /// Exact spectrum when available, otherwise sampled coefficients with
  /// degree doubled from 1024 until tail_bound < 1e-10 or degree = 2^16.
  /// Computed on first use; safe to call concurrently.
  const FourierSeries& spectrum() const;

 private:
  struct State {
    BoundaryParts parts;
    std::once_flag once;
    FourierSeries series;
  };
  std::shared_ptr<State> s_;
};

/// Normalised (1/2pi) L^p norm of g over [0, 2pi). p = infinity gives the
/// maximum of |g| away from the singular points.
double lp_norm_circle(const std::function<cplx(double)>& g, std::span<const double> singular,
                      double p, const QuadratureSpec& spec);
double lp_norm_deriv(const BoundaryFunction& F, double p, const QuadratureSpec& spec);
double lp_norm_eval(const BoundaryFunction& F, double p, const QuadratureSpec& spec);

/// c_n = (1/2pi) int F e^{-int} dt for |n| <= N from equispaced samples.
FourierSeries fourier_coefficients(const BoundaryFunction& F, int N, const QuadratureSpec& spec);

/// Tail estimate from the decay of the last two octaves of a series.
double estimate_tail(const FourierSeries& s);

struct ContinuityCheck {
  bool pass = false;
  double worst_residual = 0.0;
  double tolerance = 0.0;
};

/// Checks F(b) - F(a) = int_a^b F' dt on random intervals.
ContinuityCheck check_absolute_continuity(const BoundaryFunction& F, int trials,
                                          const QuadratureSpec& spec, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Catalog

struct FamilyParams {
  std::optional<cplx> c;
  std::optional<std::uint64_t> seed;
  std::optional<double> s;
  std::optional<int> degree;
  std::optional<double> a;
  std::optional<int> k;
  /// Explicit trigpoly coefficients c_{-N..N}.
  std::vector<cplx> coeffs;
};

struct FamilySpec {
  std::string name;
  FamilyParams params;

  /// Canonical text form, e.g. "shear c=0.5". Parses back with parse_family.
  std::string to_string() const;
};

/// Parses "name key=value ..." (name may carry a "fam_" prefix).
FamilySpec parse_family(const std::string& line);

/// Reads a corpus: one family per line, '#' starts a comment.
std::vector<FamilySpec> parse_corpus(const std::string& text);

std::vector<std::string> catalog_names();

BoundaryFunction catalog(const FamilySpec& spec);
BoundaryFunction catalog(const std::string& name, const FamilyParams& params = {});

/// Deterministic uniform [0, 1) stream used by the seeded families.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace poissonlab
