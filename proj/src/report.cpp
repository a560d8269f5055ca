#include "poissonlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace poissonlab {

using ojson = nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

ojson num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

ojson num(cplx z) { return ojson::array({num(z.real()), num(z.imag())}); }

double to_num(const ojson& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw DomainError("bad number '" + s + "'");
  }
  return j.get<double>();
}

cplx to_cplx(const ojson& j) { return {to_num(j.at(0)), to_num(j.at(1))}; }

// nlohmann's own float formatting is shortest round-trip; reports use a fixed
// 17 digits so files diff cleanly across platforms.
void dump(const ojson& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + ojson(it.key()).dump() + ": ";
        dump(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const ojson& e) { return e.is_primitive(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump(j[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case ojson::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

ojson spec_json(const QuadratureSpec& s) {
  ojson eps = ojson::array();
  for (double e : s.pv_epsilons) eps.push_back(num(e));
  return {{"periodic_nodes", s.periodic_nodes},
          {"radial_panels", s.radial_panels},
          {"radial_order", s.radial_order},
          {"endpoint_split", num(s.endpoint_split)},
          {"pv_epsilons", eps},
          {"divergence_fit_threshold", num(s.divergence_fit_threshold)},
          {"convergence_slope", num(s.convergence_slope)},
          {"tail_ratio", num(s.tail_ratio)},
          {"tail_floor", num(s.tail_floor)},
          {"quadrature_crossover", num(s.quadrature_crossover)},
          {"boundary_gap", num(s.boundary_gap)}};
}

QuadratureSpec spec_from(const ojson& j) {
  QuadratureSpec s;
  s.periodic_nodes = j.at("periodic_nodes").get<int>();
  s.radial_panels = j.at("radial_panels").get<int>();
  s.radial_order = j.at("radial_order").get<int>();
  s.endpoint_split = to_num(j.at("endpoint_split"));
  s.pv_epsilons.clear();
  for (const auto& e : j.at("pv_epsilons")) s.pv_epsilons.push_back(to_num(e));
  s.divergence_fit_threshold = to_num(j.at("divergence_fit_threshold"));
  s.convergence_slope = to_num(j.at("convergence_slope"));
  s.tail_ratio = to_num(j.at("tail_ratio"));
  s.tail_floor = to_num(j.at("tail_floor"));
  s.quadrature_crossover = to_num(j.at("quadrature_crossover"));
  s.boundary_gap = to_num(j.at("boundary_gap"));
  return s;
}

ojson check_json(const InequalityCheck& c) {
  ojson m = ojson::object();
  for (const auto& [k, v] : c.metrics) m[k] = num(v);
  return {{"theorem_id", to_string(c.theorem_id)},
          {"family", c.family},
          {"p", num(c.p)},
          {"component", c.component},
          {"lhs", num(c.lhs)},
          {"rhs", num(c.rhs)},
          {"margin", num(c.margin)},
          {"status", to_string(c.status)},
          {"pass", c.pass()},
          {"tight", c.tight},
          {"metrics", m},
          {"note", c.note}};
}

InequalityCheck check_from(const ojson& j) {
  InequalityCheck c;
  c.theorem_id = theorem_from_string(j.at("theorem_id").get<std::string>());
  c.family = j.at("family").get<std::string>();
  c.p = to_num(j.at("p"));
  c.component = j.at("component").get<std::string>();
  c.lhs = to_num(j.at("lhs"));
  c.rhs = to_num(j.at("rhs"));
  c.margin = to_num(j.at("margin"));
  c.status = status_from_string(j.at("status").get<std::string>());
  c.tight = j.at("tight").get<bool>();
  for (auto it = j.at("metrics").begin(); it != j.at("metrics").end(); ++it)
    c.metrics.emplace_back(it.key(), to_num(it.value()));
  c.note = j.at("note").get<std::string>();
  return c;
}

ojson constants_json(const ConstantsReport& c) {
  return {{"p", num(c.p)},
          {"c_weighted", num(c.c_weighted)},
          {"c_unweighted", num(c.c_unweighted)},
          {"c_bound", num(c.c_bound)},
          {"table_value", c.table_value ? num(*c.table_value) : ojson(nullptr)},
          {"bound_satisfied_weighted", c.bound_satisfied_weighted},
          {"table_matches_unweighted", c.table_matches_unweighted},
          {"table_matches_weighted", c.table_matches_weighted}};
}

ConstantsReport constants_from(const ojson& j) {
  ConstantsReport c;
  c.p = to_num(j.at("p"));
  c.c_weighted = to_num(j.at("c_weighted"));
  c.c_unweighted = to_num(j.at("c_unweighted"));
  c.c_bound = to_num(j.at("c_bound"));
  if (!j.at("table_value").is_null()) c.table_value = to_num(j.at("table_value"));
  c.bound_satisfied_weighted = j.at("bound_satisfied_weighted").get<bool>();
  c.table_matches_unweighted = j.at("table_matches_unweighted").get<bool>();
  c.table_matches_weighted = j.at("table_matches_weighted").get<bool>();
  return c;
}

ojson pv_json(const PvResult& r) {
  ojson vals = ojson::array();
  for (const auto& s : r.values) vals.push_back({{"epsilon", num(s.epsilon)}, {"value", num(s.value)}});
  return {{"verdict", to_string(r.verdict)},
          {"limit", num(r.limit)},
          {"slope", num(r.slope)},
          {"slope_coefficient", num(r.slope_coefficient)},
          {"fit_quality", num(r.fit_quality)},
          {"values", vals}};
}

PvResult pv_from(const ojson& j) {
  PvResult r;
  r.verdict = pv_verdict_from_string(j.at("verdict").get<std::string>());
  r.limit = to_cplx(j.at("limit"));
  r.slope = to_num(j.at("slope"));
  r.slope_coefficient = to_cplx(j.at("slope_coefficient"));
  r.fit_quality = to_num(j.at("fit_quality"));
  for (const auto& v : j.at("values")) r.values.push_back({to_num(v.at("epsilon")), to_cplx(v.at("value"))});
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Report make_report(const VerificationReport& v) {
  Report r;
  r.seed = v.seed;
  r.spec = v.spec;
  r.checks = v.checks;
  return r;
}

std::string to_json(const Report& r) {
  ojson doc;
  doc["meta"] = {{"version", r.version}, {"seed", r.seed}, {"spec", spec_json(r.spec)}};
  doc["checks"] = ojson::array();
  for (const auto& c : r.checks) doc["checks"].push_back(check_json(c));
  doc["constants"] = ojson::array();
  for (const auto& c : r.constants) doc["constants"].push_back(constants_json(c));
  doc["singular"] = ojson::array();
  for (const auto& s : r.singular)
    doc["singular"].push_back({{"kind", s.kind},
                               {"family", s.family},
                               {"theta", num(s.theta)},
                               {"result", pv_json(s.result)}});
  std::string out;
  dump(doc, out, 0);
  out += "\n";
  return out;
}

Report report_from_json(const std::string& text) {
  try {
    const ojson doc = ojson::parse(text);
    Report r;
    const auto& meta = doc.at("meta");
    r.version = meta.at("version").get<std::string>();
    r.seed = meta.at("seed").get<std::uint64_t>();
    r.spec = spec_from(meta.at("spec"));
    for (const auto& c : doc.at("checks")) r.checks.push_back(check_from(c));
    for (const auto& c : doc.at("constants")) r.constants.push_back(constants_from(c));
    for (const auto& s : doc.at("singular"))
      r.singular.push_back({s.at("kind").get<std::string>(), s.at("family").get<std::string>(),
                            to_num(s.at("theta")), pv_from(s.at("result"))});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed report: ") + e.what());
  }
}

std::string checks_csv(const std::vector<InequalityCheck>& checks) {
  std::ostringstream os;
  os << "theorem_id,family,p,lhs,rhs,margin,pass\n";
  for (const auto& c : checks)
    os << to_string(c.theorem_id) << ',' << csv_field(c.family) << ',' << format_double(c.p) << ','
       << format_double(c.lhs) << ',' << format_double(c.rhs) << ',' << format_double(c.margin)
       << ',' << to_string(c.status) << '\n';
  return os.str();
}

std::string constants_csv(const std::vector<ConstantsReport>& rows) {
  std::ostringstream os;
  os << "p,c_weighted,c_unweighted,c_bound,table_value,bound_satisfied_weighted,"
        "table_matches_unweighted,table_matches_weighted\n";
  for (const auto& c : rows)
    os << format_double(c.p) << ',' << format_double(c.c_weighted) << ','
       << format_double(c.c_unweighted) << ',' << format_double(c.c_bound) << ','
       << (c.table_value ? format_double(*c.table_value) : "") << ','
       << c.bound_satisfied_weighted << ',' << c.table_matches_unweighted << ','
       << c.table_matches_weighted << '\n';
  return os.str();
}

std::string singular_csv(const std::vector<SingularRecord>& rows) {
  std::ostringstream os;
  os << "kind,family,theta,verdict,limit_re,limit_im,slope,fit_quality\n";
  for (const auto& s : rows)
    os << s.kind << ',' << csv_field(s.family) << ',' << format_double(s.theta) << ','
       << to_string(s.result.verdict) << ',' << format_double(s.result.limit.real()) << ','
       << format_double(s.result.limit.imag()) << ',' << format_double(s.result.slope) << ','
       << format_double(s.result.fit_quality) << '\n';
  return os.str();
}

std::string to_csv(const Report& r) {
  std::string out;
  auto add = [&](const std::string& s) {
    if (!out.empty()) out += "\n";
    out += s;
  };
  if (!r.checks.empty() || (r.constants.empty() && r.singular.empty())) add(checks_csv(r.checks));
  if (!r.constants.empty()) add(constants_csv(r.constants));
  if (!r.singular.empty()) add(singular_csv(r.singular));
  return out;
}

std::string summary_line(const std::vector<InequalityCheck>& checks) {
  int p = 0, f = 0, s = 0;
  for (const auto& c : checks) {
    if (c.status == CheckStatus::pass) ++p;
    else if (c.status == CheckStatus::fail) ++f;
    else ++s;
  }
  return "pass=" + std::to_string(p) + " fail=" + std::to_string(f) + " skip=" + std::to_string(s);
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  char buf[512];
  if (!r.constants.empty()) {
    std::snprintf(buf, sizeof buf, "%6s %18s %18s %18s %18s  %s\n", "p", "c_weighted",
                  "c_unweighted", "c_bound", "table_value", "flags");
    os << buf;
    for (const auto& c : r.constants) {
      std::string flags;
      if (c.bound_satisfied_weighted) flags += "bound_ok ";
      if (c.table_matches_unweighted) flags += "table=unweighted ";
      if (c.table_matches_weighted) flags += "table=weighted ";
      if (c.table_value && !c.table_matches_unweighted && !c.table_matches_weighted)
        flags += "table_mismatch ";
      std::snprintf(buf, sizeof buf, "%6g %18.12g %18.12g %18.12g %18s  %s\n", c.p, c.c_weighted,
                    c.c_unweighted, c.c_bound,
                    c.table_value ? format_double(*c.table_value).substr(0, 14).c_str() : "-",
                    flags.c_str());
      os << buf;
    }
  }
  for (const auto& s : r.singular) {
    if (s.kind == "subintegral") {
      std::snprintf(buf, sizeof buf, "subintegral %s #%g value=%.15g\n", s.family.c_str(), s.theta,
                    s.result.limit.real());
      os << buf;
      continue;
    }
    std::snprintf(buf, sizeof buf, "%s %s theta=%.10g verdict=%s limit=%.12g%+.12gi slope=%.6g fit=%.6g\n",
                  s.kind.c_str(), s.family.c_str(), s.theta, to_string(s.result.verdict).c_str(),
                  s.result.limit.real(), s.result.limit.imag(), s.result.slope, s.result.fit_quality);
    os << buf;
    for (const auto& v : s.result.values) {
      std::snprintf(buf, sizeof buf, "  eps=%-12.6g value=%.15g%+.15gi\n", v.epsilon, v.value.real(),
                    v.value.imag());
      os << buf;
    }
  }
  if (!r.checks.empty()) {
    for (const auto& c : r.checks) {
      std::snprintf(buf, sizeof buf, "%-4s %-15s %-28s p=%-5g %-12s lhs=%-22.15g rhs=%-22.15g%s%s%s\n",
                    to_string(c.status).c_str(), to_string(c.theorem_id).c_str(),
                    c.family.c_str(), c.p, c.component.c_str(), c.lhs, c.rhs,
                    c.tight ? " tight" : "", c.note.empty() ? "" : "  # ", c.note.c_str());
      os << buf;
    }
    os << summary_line(r.checks) << '\n';
  }
  return os.str();
}

}  // namespace poissonlab
