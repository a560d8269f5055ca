#include "poissonlab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "poissonlab/constants.hpp"
#include "poissonlab/norms.hpp"
#include "poissonlab/poisson.hpp"
#include "poissonlab/singular.hpp"

namespace poissonlab {

std::string to_string(TheoremId t) {
  switch (t) {
    case TheoremId::lemma_wtheta: return "lemma_wtheta";
    case TheoremId::thm_wr_bergman: return "thm_wr_bergman";
    case TheoremId::thm_wz_bergman: return "thm_wz_bergman";
    case TheoremId::thm_qr_hardy: return "thm_qr_hardy";
  }
  return "lemma_wtheta";
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "fail";
}

TheoremId theorem_from_string(const std::string& s) {
  if (s == "lemma_wtheta" || s == "lemma") return TheoremId::lemma_wtheta;
  if (s == "thm_wr_bergman" || s == "thm1") return TheoremId::thm_wr_bergman;
  if (s == "thm_wz_bergman" || s == "thm2") return TheoremId::thm_wz_bergman;
  if (s == "thm_qr_hardy" || s == "thm3") return TheoremId::thm_qr_hardy;
  throw DomainError("unknown theorem id '" + s + "'");
}

CheckStatus status_from_string(const std::string& s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "skip") return CheckStatus::skip;
  throw DomainError("unknown check status '" + s + "'");
}

namespace {

bool same(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

}  // namespace

bool InequalityCheck::operator==(const InequalityCheck& o) const {
  if (metrics.size() != o.metrics.size()) return false;
  for (std::size_t i = 0; i < metrics.size(); ++i)
    if (metrics[i].first != o.metrics[i].first || !same(metrics[i].second, o.metrics[i].second))
      return false;
  return theorem_id == o.theorem_id && family == o.family && same(p, o.p) &&
         component == o.component && same(lhs, o.lhs) && same(rhs, o.rhs) &&
         same(margin, o.margin) && status == o.status && tight == o.tight && note == o.note;
}

void settle(InequalityCheck& c) {
  if (c.status == CheckStatus::skip) {
    c.lhs = c.rhs = c.margin = std::numeric_limits<double>::quiet_NaN();
    c.tight = false;
    return;
  }
  c.margin = c.rhs - c.lhs;
  const bool ok = std::isfinite(c.lhs) && std::isfinite(c.rhs) &&
                  c.lhs <= c.rhs * (1.0 + pass_tolerance);
  c.status = ok ? CheckStatus::pass : CheckStatus::fail;
  c.tight = ok && std::fabs(c.margin) < tight_margin;
}

namespace {

double cached_c_weighted(double p, const QuadratureSpec& spec) {
  using Key = std::tuple<double, int, int, double, double, double>;
  static std::mutex mu;
  static std::map<Key, double> cache;
  const Key key{p, spec.radial_panels, spec.radial_order, spec.endpoint_split, spec.tail_ratio,
                spec.tail_floor};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double v = c_weighted(p, spec);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, v);
  return v;
}

std::vector<double> hardy_grid(const VerifyOptions& opts) {
  return opts.hardy_r_grid.empty() ? default_hardy_grid() : opts.hardy_r_grid;
}

InequalityCheck make_check(TheoremId id, const BoundaryFunction& F, double p,
                           std::string component) {
  InequalityCheck c;
  c.theorem_id = id;
  c.family = F.descriptor();
  c.p = p;
  c.component = std::move(component);
  return c;
}

bool selected(const VerifyOptions& opts, TheoremId id) {
  return std::find(opts.theorems.begin(), opts.theorems.end(), id) != opts.theorems.end();
}

QuasiregularWitness witness_for(const BoundaryFunction& F, const HarmonicMap& w,
                                const QuadratureSpec& spec, const VerifyOptions& opts) {
  QuasiregularWitness q;
  const auto grid = hardy_grid(opts);
  const auto dil = dilatation_sup(w, grid, opts.theta_nodes);
  q.grid_sup = dil.sup;
  if (F.phase() && !F.phase()->singular_points.empty()) q.boundary_sup = boundary_ratio_sup(F, spec);
  q.sup = std::max(q.grid_sup, q.boundary_sup);
  if (F.exact_K()) {
    q.closed_form = true;
    q.K = *F.exact_K();
    q.quasiregular = true;
    return q;
  }
  q.quasiregular = q.sup <= 1.0 - quasiregular_gap;
  q.K = q.sup < 1.0 ? (1.0 + q.sup) / (1.0 - q.sup) : std::numeric_limits<double>::infinity();
  return q;
}

// All checks for one family, ordered by theorem, p, component.
std::vector<InequalityCheck> check_family(const BoundaryFunction& F, const VerifyOptions& opts,
                                          const QuadratureSpec& spec) {
  std::vector<double> ps = opts.p_list;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (double p : ps)
    if (std::isnan(p) || p < 1.0) throw DomainError("p must be >= 1");

  const HarmonicMap w = extend(F, spec, Route::spectral);
  std::map<double, double> dnorm;
  for (double p : ps) dnorm[p] = lp_norm_deriv(F, p, spec);

  std::vector<InequalityCheck> out;

  if (selected(opts, TheoremId::lemma_wtheta)) {
    const auto f = disk_function(w, Quantity::w_theta);
    std::vector<double> best(ps.size(), 0.0);
    for (double r : opts.lemma_r_grid) {
      const double gap = 1.0 - r;
      const auto v = f.circle(r, gap, std::max(f.nodes(gap), std::size_t(spec.periodic_nodes)));
      for (std::size_t j = 0; j < ps.size(); ++j) best[j] = std::max(best[j], circle_mean(v, ps[j]));
    }
    for (std::size_t j = 0; j < ps.size(); ++j) {
      auto c = make_check(TheoremId::lemma_wtheta, F, ps[j], "w_theta");
      c.lhs = best[j];
      c.rhs = dnorm[ps[j]];
      c.metrics = {{"r_max", opts.lemma_r_grid.empty() ? 0.0 : opts.lemma_r_grid.back()}};
      settle(c);
      out.push_back(std::move(c));
    }
  }

  std::vector<double> finite;
  for (double p : ps)
    if (std::isfinite(p)) finite.push_back(p);

  if (selected(opts, TheoremId::thm_wr_bergman) && !finite.empty()) {
    const auto est = bergman_norms(disk_function(w, Quantity::w_r), finite, spec);
    for (std::size_t j = 0; j < finite.size(); ++j) {
      const double p = finite[j];
      const double cw = cached_c_weighted(p, spec);
      auto c = make_check(TheoremId::thm_wr_bergman, F, p, "w_r");
      c.lhs = est[j].value;
      c.rhs = std::pow(2.0 * cw, 1.0 / p) * dnorm[p];
      c.metrics = {{"c_weighted", cw}, {"deriv_norm", dnorm[p]}, {"tail_residual", est[j].residual}};
      settle(c);
      out.push_back(std::move(c));
    }
  }

  std::vector<double> below2;
  for (double p : finite)
    if (p < 2.0) below2.push_back(p);

  if (selected(opts, TheoremId::thm_wz_bergman) && !below2.empty()) {
    const auto ez = bergman_norms(disk_function(w, Quantity::w_z), below2, spec);
    const auto eg = bergman_norms(disk_function(w, Quantity::conj_w_zbar), below2, spec);
    for (std::size_t j = 0; j < below2.size(); ++j) {
      const double p = below2[j];
      const double cw = cached_c_weighted(p, spec);
      const double rhs = std::pow(cw + 1.0 / (2.0 - p), 1.0 / p) * dnorm[p];
      for (int side = 0; side < 2; ++side) {
        const auto& e = side == 0 ? ez[j] : eg[j];
        auto c = make_check(TheoremId::thm_wz_bergman, F, p, side == 0 ? "w_z" : "conj_w_zbar");
        c.lhs = e.value;
        c.rhs = rhs;
        c.metrics = {{"c_weighted", cw}, {"deriv_norm", dnorm[p]}, {"tail_residual", e.residual}};
        settle(c);
        out.push_back(std::move(c));
      }
    }
  }

  if (selected(opts, TheoremId::thm_qr_hardy) && !ps.empty()) {
    const auto q = witness_for(F, w, spec, opts);
    std::vector<std::pair<std::string, double>> qm = {{"K", q.K},
                                                      {"grid_sup", q.grid_sup},
                                                      {"boundary_sup", q.boundary_sup}};
    const std::string k_note = q.closed_form ? "K from closed form" : "K from dilatation grid";
    if (!q.quasiregular) {
      for (double p : ps)
        for (const char* comp : {"w_z", "conj_w_zbar"}) {
          auto c = make_check(TheoremId::thm_qr_hardy, F, p, comp);
          c.status = CheckStatus::skip;
          c.metrics = qm;
          c.note = "not quasiregular: dilatation ratio not bounded below 1, check does not apply";
          settle(c);
          out.push_back(std::move(c));
        }
    } else {
      const auto grid = hardy_grid(opts);
      const auto hz = hardy_norms(disk_function(w, Quantity::w_z), ps, grid, spec);
      const auto hg = hardy_norms(disk_function(w, Quantity::conj_w_zbar), ps, grid, spec);
      for (std::size_t j = 0; j < ps.size(); ++j) {
        const double p = ps[j];
        for (int side = 0; side < 2; ++side) {
          const auto& e = side == 0 ? hz[j] : hg[j];
          auto c = make_check(TheoremId::thm_qr_hardy, F, p, side == 0 ? "w_z" : "conj_w_zbar");
          c.lhs = e.value;
          c.rhs = (side == 0 ? q.K : 0.5 * (q.K - 1.0)) * dnorm[p];
          c.metrics = qm;
          c.metrics.emplace_back("deriv_norm", dnorm[p]);
          c.metrics.emplace_back("monotone", e.monotone_flag ? 1.0 : 0.0);
          c.metrics.emplace_back("residual", e.residual);
          c.note = k_note;
          settle(c);
          out.push_back(std::move(c));
        }
      }
    }
  }
  return out;
}

std::pair<InequalityCheck, InequalityCheck> pair_of(std::vector<InequalityCheck> v) {
  if (v.size() != 2) throw DomainError("expected a pair of checks");
  return {std::move(v[0]), std::move(v[1])};
}

}  // namespace

InequalityCheck check_lemma_wtheta(const BoundaryFunction& F, double p,
                                   const std::vector<double>& r_grid, const QuadratureSpec& spec) {
  VerifyOptions o;
  o.p_list = {p};
  o.theorems = {TheoremId::lemma_wtheta};
  o.lemma_r_grid = r_grid;
  return check_family(F, o, spec).at(0);
}

InequalityCheck check_thm1(const BoundaryFunction& F, double p, const QuadratureSpec& spec) {
  if (!std::isfinite(p)) throw DomainError("thm_wr_bergman needs finite p");
  VerifyOptions o;
  o.p_list = {p};
  o.theorems = {TheoremId::thm_wr_bergman};
  return check_family(F, o, spec).at(0);
}

std::pair<InequalityCheck, InequalityCheck> check_thm2(const BoundaryFunction& F, double p,
                                                       const QuadratureSpec& spec) {
  if (!(p >= 1.0 && p < 2.0)) throw DomainError("thm_wz_bergman needs 1 <= p < 2");
  VerifyOptions o;
  o.p_list = {p};
  o.theorems = {TheoremId::thm_wz_bergman};
  return pair_of(check_family(F, o, spec));
}

std::pair<InequalityCheck, InequalityCheck> check_thm3(const BoundaryFunction& F, double p,
                                                       const QuadratureSpec& spec,
                                                       const VerifyOptions& opts) {
  VerifyOptions o = opts;
  o.p_list = {p};
  o.theorems = {TheoremId::thm_qr_hardy};
  return pair_of(check_family(F, o, spec));
}

QuasiregularWitness quasiregular_witness(const BoundaryFunction& F, const QuadratureSpec& spec,
                                         const VerifyOptions& opts) {
  const HarmonicMap w = extend(F, spec, Route::spectral);
  return witness_for(F, w, spec, opts);
}

std::vector<FamilySpec> default_corpus(std::uint64_t seed) {
  std::vector<FamilySpec> c;
  c.push_back({"exp", {}});
  c.push_back({"abs_sin", {}});
  c.push_back({"sakan", {}});
  for (double v : {0.0, 0.3, 0.5, 0.6, 0.9}) {
    FamilySpec f{"shear", {}};
    f.params.c = v;
    c.push_back(f);
  }
  for (auto [a, k] : {std::pair{0.3, 1}, std::pair{0.2, 2}}) {
    FamilySpec f{"phase", {}};
    f.params.a = a;
    f.params.k = k;
    c.push_back(f);
  }
  for (int i = 1; i <= 20; ++i) {
    FamilySpec f{"trigpoly", {}};
    f.params.seed = seed + static_cast<std::uint64_t>(i);
    f.params.degree = 8;
    c.push_back(f);
  }
  const double decay[] = {1.5, 2.0, 2.5, 3.0};
  for (int i = 1; i <= 20; ++i) {
    FamilySpec f{"random_ac", {}};
    f.params.seed = seed + static_cast<std::uint64_t>(i);
    f.params.s = decay[(i - 1) % 4];
    f.params.degree = 64;
    c.push_back(f);
  }
  return c;
}

VerificationReport run_corpus(const std::vector<FamilySpec>& corpus, const VerifyOptions& opts,
                              const QuadratureSpec& spec, std::uint64_t seed) {
  if (corpus.empty()) throw DomainError("corpus is empty");
  spec.validate();
  VerificationReport rep;
  rep.spec = spec;
  rep.seed = seed;
  for (const auto& f : corpus) rep.corpus.push_back(f.to_string());

  // Build every family up front so parameter errors surface before any work.
  std::vector<BoundaryFunction> fams;
  fams.reserve(corpus.size());
  for (const auto& f : corpus) fams.push_back(catalog(f));

  std::vector<std::vector<InequalityCheck>> results(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      try {
        results[i] = check_family(fams[i], opts, spec);
      } catch (const std::exception& e) {
        InequalityCheck c;
        c.family = fams[i].descriptor();
        c.component = "error";
        c.status = CheckStatus::fail;
        c.lhs = c.rhs = c.margin = std::numeric_limits<double>::quiet_NaN();
        c.note = e.what();
        results[i] = {c};
      }
    }
  };
  const int n = std::max(1, std::min<int>(opts.workers, static_cast<int>(corpus.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& r : results)
    for (auto& c : r) {
      switch (c.status) {
        case CheckStatus::pass: ++rep.passed; break;
        case CheckStatus::fail: ++rep.failed; break;
        case CheckStatus::skip: ++rep.skipped; break;
      }
      rep.checks.push_back(std::move(c));
    }
  return rep;
}

}  // namespace poissonlab
