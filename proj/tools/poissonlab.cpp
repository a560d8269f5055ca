// poissonlab command-line tool.
//
// Exit status: 0 success, 1 verification or numerical failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "poissonlab/constants.hpp"
#include "poissonlab/poisson.hpp"
#include "poissonlab/report.hpp"
#include "poissonlab/singular.hpp"
#include "poissonlab/verify.hpp"

using namespace poissonlab;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_real(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0' || std::isnan(v)) throw UsageError("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items)
    for (const auto& tok : split(item, ',')) out.push_back(parse_real(tok));
  return out;
}

struct Common {
  std::string format = "text";
  std::string out;
  int nodes = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app->add_option("--out", c.out, "Output path (default stdout)");
  app->add_option("--nodes", c.nodes, "Override periodic quadrature nodes");
}

QuadratureSpec make_spec(const Common& c) {
  QuadratureSpec spec;
  if (c.nodes != 0) spec.periodic_nodes = c.nodes;
  try {
    spec.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return spec;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + c.out + "'");
  f << text;
}

std::string render(const Report& r, const std::string& format) {
  if (format == "json") return to_json(r);
  if (format == "csv") return to_csv(r);
  return to_text(r);
}

std::string family_line(const std::string& family, const std::string& c, const Common& common) {
  if (family.empty()) throw UsageError("--family is required");
  std::string line = family;
  if (!c.empty()) line += " c=" + c;
  if (common.seed_set && line.find("seed=") == std::string::npos) line += " seed=" + std::to_string(common.seed);
  return line;
}

BoundaryFunction load_family(const std::string& line) {
  try {
    return catalog(parse_family(line));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::vector<FamilySpec> load_corpus(const std::string& path, std::uint64_t seed) {
  if (path.empty() || path == "default") return default_corpus(seed);
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read corpus '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    auto corpus = parse_corpus(ss.str());
    if (corpus.empty()) throw UsageError("corpus '" + path + "' is empty");
    for (const auto& fs : corpus) catalog(fs);
    return corpus;
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

// ---------------------------------------------------------------------------

int cmd_constants(const std::vector<std::string>& p_items, const Common& c) {
  const auto spec = make_spec(c);
  auto ps = parse_list(p_items);
  if (ps.empty()) ps = {1, 2, 3, 4, 5};
  Report r;
  r.seed = c.seed;
  r.spec = spec;
  for (double p : ps) {
    if (!(p >= 1.0) || std::isinf(p)) throw UsageError("constants needs finite p >= 1");
    r.constants.push_back(c_of_p(p, spec));
  }
  emit(c, render(r, c.format));
  return 0;
}

int cmd_eval(const std::string& family, const std::string& cval,
             const std::vector<std::string>& points, const Common& c) {
  const auto spec = make_spec(c);
  const auto F = load_family(family_line(family, cval, c));
  if (points.empty()) throw UsageError("--point r,theta is required");
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : points) {
    const auto parts = split(p, ',');
    if (parts.size() != 2) throw UsageError("--point expects r,theta");
    const double r = parse_real(parts[0]), th = parse_real(parts[1]);
    if (!(r >= 0.0 && r < 1.0) || !std::isfinite(th)) throw UsageError("--point needs 0 <= r < 1");
    pts.emplace_back(r, th);
  }
  const HarmonicMap w = extend(F, spec, Route::spectral);
  const Quantity qs[] = {Quantity::w, Quantity::w_r, Quantity::w_theta, Quantity::w_z, Quantity::w_zbar};

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::ostringstream text, csv;
  csv << "r,theta,quantity,quadrature_re,quadrature_im,spectral_re,spectral_im,residual\n";
  text << "family " << F.descriptor() << "\n";
  for (auto [r, th] : pts) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "r=%.17g theta=%.17g\n", r, th);
    text << buf;
    for (Quantity q : qs) {
      const cplx a = w.value(q, r, th, Route::quadrature);
      const cplx b = w.value(q, r, th, Route::spectral);
      const double res = std::abs(a - b);
      std::snprintf(buf, sizeof buf, "  %-8s quadrature %+.15e %+.15ei  spectral %+.15e %+.15ei  residual %.3e\n",
                    to_string(q).c_str(), a.real(), a.imag(), b.real(), b.imag(), res);
      text << buf;
      csv << format_double(r) << ',' << format_double(th) << ',' << to_string(q) << ','
          << format_double(a.real()) << ',' << format_double(a.imag()) << ','
          << format_double(b.real()) << ',' << format_double(b.imag()) << ','
          << format_double(res) << '\n';
      rows.push_back({{"r", r},
                      {"theta", th},
                      {"quantity", to_string(q)},
                      {"quadrature", {a.real(), a.imag()}},
                      {"spectral", {b.real(), b.imag()}},
                      {"residual", res}});
    }
  }
  if (c.format == "json")
    emit(c, nlohmann::ordered_json{{"family", F.descriptor()}, {"values", rows}}.dump(2) + "\n");
  else if (c.format == "csv")
    emit(c, csv.str());
  else
    emit(c, text.str());
  return 0;
}

std::vector<TheoremId> parse_theorems(const std::vector<std::string>& items) {
  std::vector<TheoremId> out;
  for (const auto& item : items)
    for (const auto& tok : split(item, ',')) {
      try {
        out.push_back(theorem_from_string(tok));
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
    }
  return out;
}

VerifyOptions verify_options(const std::vector<std::string>& p_items,
                             const std::vector<std::string>& theorem_items, int workers) {
  VerifyOptions o;
  const auto ps = parse_list(p_items);
  if (!ps.empty()) o.p_list = ps;
  for (double p : o.p_list)
    if (!(p >= 1.0)) throw UsageError("p must be >= 1");
  const auto th = parse_theorems(theorem_items);
  if (!th.empty()) {
    o.theorems = th;
    for (TheoremId t : th) {
      if (t == TheoremId::thm_wz_bergman &&
          std::none_of(o.p_list.begin(), o.p_list.end(), [](double p) { return p < 2.0; }))
        throw UsageError("thm_wz_bergman requires some p < 2");
      if (t == TheoremId::thm_wr_bergman &&
          std::none_of(o.p_list.begin(), o.p_list.end(), [](double p) { return std::isfinite(p); }))
        throw UsageError("thm_wr_bergman requires finite p");
    }
  }
  if (workers < 1) throw UsageError("--workers must be >= 1");
  o.workers = workers;
  return o;
}

int cmd_verify(const std::string& corpus_path, const std::vector<std::string>& p_items,
               const std::vector<std::string>& theorem_items, int workers, const Common& c) {
  const auto spec = make_spec(c);
  const auto opts = verify_options(p_items, theorem_items, workers);
  const auto corpus = load_corpus(corpus_path, c.seed);
  const auto rep = run_corpus(corpus, opts, spec, c.seed);
  const Report r = make_report(rep);
  emit(c, render(r, c.format));
  const std::string line = summary_line(rep.checks);
  if (c.out.empty() && c.format != "text")
    std::cerr << line << "\n";
  else if (!c.out.empty())
    std::cout << line << "\n";
  if (rep.skipped > 0) {
    bool any = false;
    for (const auto& ch : rep.checks)
      if (ch.status == CheckStatus::skip && !any) {
        (c.out.empty() && c.format != "text" ? std::cerr : std::cout) << "skip note: " << ch.note << "\n";
        any = true;
      }
  }
  return rep.failed > 0 ? 1 : 0;
}

int cmd_hilbert(const std::string& family, const std::string& cval, double theta, bool subintegrals,
                const std::string& eps_range, const Common& c) {
  auto spec = make_spec(c);
  Report r;
  r.seed = c.seed;
  if (!eps_range.empty()) {
    const auto v = parse_list({eps_range});
    if (v.size() < 2 || v.size() > 3) throw UsageError("--eps-range expects lo,hi[,n]");
    const int n = v.size() == 3 ? static_cast<int>(v[2]) : 17;
    try {
      spec.pv_epsilons = QuadratureSpec::geometric_epsilons(std::max(v[0], v[1]), std::min(v[0], v[1]), n);
      spec.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  r.spec = spec;
  if (subintegrals) {
    const auto s = sakan_subintegrals(spec);
    int i = 0;
    for (double v : {s.first, s.second, s.third}) {
      SingularRecord rec{"subintegral", "sakan", static_cast<double>(++i), {}};
      rec.result.verdict = PvVerdict::convergent;
      rec.result.limit = v;
      rec.result.fit_quality = 1.0;
      r.singular.push_back(rec);
    }
  } else {
    const auto F = load_family(family_line(family, cval, c));
    r.singular.push_back({"hilbert", F.descriptor(), theta, hilbert_transform(F, theta, spec)});
  }
  emit(c, render(r, c.format));
  return 0;
}

int cmd_report(const std::string& in, const std::string& corpus_path,
               const std::vector<std::string>& p_items, int workers, const Common& c) {
  if (!in.empty()) {
    std::ifstream f(in);
    if (!f) throw UsageError("cannot read '" + in + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    Report r;
    try {
      r = report_from_json(ss.str());
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    emit(c, render(r, c.format));
    return 0;
  }
  const auto spec = make_spec(c);
  const auto opts = verify_options(p_items, {}, workers);
  const auto rep = run_corpus(load_corpus(corpus_path, c.seed), opts, spec, c.seed);
  Report r = make_report(rep);
  for (double p : {1.0, 2.0, 3.0, 4.0, 5.0}) r.constants.push_back(c_of_p(p, spec));
  const auto sak = catalog("sakan");
  r.singular.push_back({"hilbert", sak.descriptor(), 0.0, hilbert_transform(sak, 0.0, spec)});
  const auto e = catalog("exp");
  r.singular.push_back({"hilbert", e.descriptor(), 1.0, hilbert_transform(e, 1.0, spec)});
  emit(c, render(r, c.format));
  return rep.failed > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic extensions of circle maps and their norm inequalities"};
  app.require_subcommand(1);

  Common common;
  std::vector<std::string> p_items, theorem_items, points;
  std::string family, cval, corpus, eps_range, in;
  double theta = 0.0;
  bool subintegrals = false;
  int workers = 1;

  auto seed_opt = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { common.seed = s, common.seed_set = true; }, "RNG seed");
  };

  auto* constants = app.add_subcommand("constants", "C(p) integrals, closed forms and bounds");
  constants->add_option("--p", p_items, "Exponents, comma separated");
  add_common(constants, common);
  seed_opt(constants);

  auto* eval = app.add_subcommand("eval", "Evaluate w and its derivatives by both routes");
  eval->add_option("--family", family, "Family name, optionally with key=value parameters");
  eval->add_option("--c", cval, "Family parameter c");
  eval->add_option("--point", points, "r,theta (repeatable)");
  add_common(eval, common);
  seed_opt(eval);

  auto* verify = app.add_subcommand("verify", "Run inequality checks over a corpus");
  verify->add_option("--corpus", corpus, "Corpus file, one family per line (default: built-in)");
  verify->add_option("--p", p_items, "Exponents, comma separated; inf allowed");
  verify->add_option("--theorem", theorem_items, "lemma, thm1, thm2, thm3 (comma separated)");
  verify->add_option("--workers", workers, "Worker threads");
  add_common(verify, common);
  seed_opt(verify);

  auto* hilbert = app.add_subcommand("hilbert", "Truncated Hilbert transform of F'");
  hilbert->add_option("--family", family, "Family name");
  hilbert->add_option("--c", cval, "Family parameter c");
  hilbert->add_option("--theta", theta, "Angle");
  hilbert->add_flag("--subintegrals", subintegrals, "Closed-form sub-integrals of the sakan example");
  hilbert->add_option("--eps-range", eps_range, "lo,hi[,n] geometric excision radii");
  add_common(hilbert, common);
  seed_opt(hilbert);

  auto* report = app.add_subcommand("report", "Full report, or re-render a saved json report");
  report->add_option("--in", in, "Saved json report to re-render");
  report->add_option("--corpus", corpus, "Corpus file (default: built-in)");
  report->add_option("--p", p_items, "Exponents for the checks");
  report->add_option("--workers", workers, "Worker threads");
  add_common(report, common);
  seed_opt(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*constants) return cmd_constants(p_items, common);
    if (*eval) return cmd_eval(family, cval, points, common);
    if (*verify) return cmd_verify(corpus, p_items, theorem_items, workers, common);
    if (*hilbert) return cmd_hilbert(family, cval, theta, subintegrals, eps_range, common);
    if (*report) return cmd_report(in, corpus, p_items, workers, common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
