#include "clusterchain/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "clusterchain/measures.hpp"

namespace clusterchain {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw ParameterError(where + " must be a JSON object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return item.key() == a; });
    if (!known) throw ParameterError("unknown key '" + item.key() + "' in " + where);
  }
}

template <class T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParameterError(where + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  return obj.contains(key) ? get<T>(obj, key, where) : fallback;
}

Axis parse_axis(const json& j, const std::string& where, bool needParameter = true) {
  if (needParameter)
    reject_unknown(j, {"parameter", "start", "stop", "count", "values"}, where);
  else
    reject_unknown(j, {"start", "stop", "count", "values"}, where);
  Axis a;
  if (needParameter)
    a.parameter = sweep_parameter_from_string(get<std::string>(j, "parameter", where));
  if (j.contains("values")) {
    if (j.contains("start") || j.contains("stop") || j.contains("count"))
      throw ParameterError(where + ": give either values or start/stop/count");
    a.values = get<std::vector<double>>(j, "values", where);
    a.count = static_cast<int>(a.values.size());
  } else {
    a.start = get<double>(j, "start", where);
    a.stop = get<double>(j, "stop", where);
    a.count = get<int>(j, "count", where);
  }
  return a;
}

ojson axis_json(const Axis& a, bool withParameter = true) {
  ojson j;
  if (withParameter) j["parameter"] = to_string(a.parameter);
  if (!a.values.empty()) {
    j["values"] = a.values;
  } else {
    j["start"] = a.start;
    j["stop"] = a.stop;
    j["count"] = a.count;
  }
  return j;
}

void validate_axis(const Axis& a, const std::string& where) {
  if (!a.values.empty()) {
    if (a.values.size() < 2) throw ParameterError(where + ": at least two values required");
    for (double v : a.values)
      if (!std::isfinite(v)) throw ParameterError(where + ": values must be finite");
  } else {
    if (a.count < 2) throw ParameterError(where + ": count must be >= 2");
    if (!std::isfinite(a.start) || !std::isfinite(a.stop))
      throw ParameterError(where + ": start and stop must be finite");
  }
  if (a.parameter == SweepParameter::N)
    for (double v : a.points())
      if (v != std::round(v)) throw ParameterError(where + ": chain lengths must be integers");
}

OutputSpec parse_output(const json& j, const std::string& where) {
  reject_unknown(j, {"path", "format"}, where);
  OutputSpec o;
  o.path = get_or<std::string>(j, "path", "", where);
  const auto f = get_or<std::string>(j, "format", "csv", where);
  if (f == "csv")
    o.format = OutputFormat::Csv;
  else if (f == "jsonl")
    o.format = OutputFormat::JsonLines;
  else
    throw ParameterError(where + ".format must be csv or jsonl");
  return o;
}

ojson output_json(const OutputSpec& o) {
  ojson j;
  j["path"] = o.path;
  j["format"] = o.format == OutputFormat::Csv ? "csv" : "jsonl";
  return j;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("invalid JSON: ") + e.what());
  }
}

void set_parameter(ModelParams& p, SweepParameter which, double v) {
  switch (which) {
    case SweepParameter::Jx: p.jx = v; break;
    case SweepParameter::Jy: p.jy = v; break;
    case SweepParameter::H: p.h = v; break;
    case SweepParameter::N: p.n = static_cast<int>(std::lround(v)); break;
  }
}

double get_parameter(const ModelParams& p, SweepParameter which) {
  switch (which) {
    case SweepParameter::Jx: return p.jx;
    case SweepParameter::Jy: return p.jy;
    case SweepParameter::H: return p.h;
    case SweepParameter::N: return p.n;
  }
  return 0.0;
}

// gamma_<p> / xi_<p>; returns -1 if name is not of that form.
int indexed_order(const std::string& name, const std::string& prefix) {
  if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return -1;
  const auto digits = name.substr(prefix.size());
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return -1;
  if (digits.size() > 6) return -1;
  return std::stoi(digits);
}

const std::set<std::string>& plain_observables() {
  static const std::set<std::string> names{"Mz",  "C12",     "C13",    "I12",    "I13",
                                           "D12", "D13",     "Eglobal", "energy", "corrZZ",
                                           "corrPP", "corrPM"};
  return names;
}

std::string derivative_column(const DerivativeRequest& d) {
  return "d" + d.observable + "_d" + to_string(d.withRespectTo);
}

}  // namespace

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::Jx: return "jx";
    case SweepParameter::Jy: return "jy";
    case SweepParameter::H: return "h";
    case SweepParameter::N: return "n";
  }
  return "h";
}

SweepParameter sweep_parameter_from_string(const std::string& s) {
  if (s == "jx") return SweepParameter::Jx;
  if (s == "jy") return SweepParameter::Jy;
  if (s == "h") return SweepParameter::H;
  if (s == "n") return SweepParameter::N;
  throw ParameterError("unknown parameter '" + s + "' (expected jx|jy|h|n)");
}

std::vector<double> Axis::points() const {
  if (!values.empty()) return values;
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = i == count - 1 ? stop : start + (stop - start) * i / (count - 1);
  return out;
}

bool is_observable(const std::string& name) {
  return plain_observables().count(name) > 0 || indexed_order(name, "gamma_") >= 0 ||
         indexed_order(name, "xi_") >= 0;
}

void SweepSpec::validate() const {
  validate_axis(axis1, "axis1");
  if (axis2) {
    validate_axis(*axis2, "axis2");
    if (axis2->parameter == axis1.parameter)
      throw ParameterError("axis1 and axis2 must sweep different parameters");
  }
  if (observables.empty() && derivatives.empty())
    throw ParameterError("no observables or derivatives requested");
  for (const auto& o : observables)
    if (!is_observable(o)) throw ParameterError("unknown observable '" + o + "'");
  for (const auto& d : derivatives) {
    if (!is_observable(d.observable))
      throw ParameterError("unknown observable '" + d.observable + "' in derivatives");
    if (d.withRespectTo == SweepParameter::N)
      throw ParameterError("derivatives with respect to n are not defined");
    if (!(d.step > 0.0) || !std::isfinite(d.step))
      throw ParameterError("derivative step must be positive");
  }
  ModelParams probe = fixed;
  set_parameter(probe, axis1.parameter, axis1.points().front());
  if (axis2) set_parameter(probe, axis2->parameter, axis2->points().front());
  if (probe.n < 4 || probe.n % 2 != 0) throw ParameterError("chain length must be even and >= 4");
}

SweepSpec parse_sweep_spec(const std::string& text) {
  const json j = parse_text(text);
  reject_unknown(j,
                 {"axis1", "axis2", "fixed", "sector", "observables", "derivatives", "output",
                  "tolZero", "thermodynamic"},
                 "spec");
  SweepSpec s;
  if (!j.contains("axis1")) throw ParameterError("spec.axis1 is required");
  s.axis1 = parse_axis(j.at("axis1"), "axis1");
  if (j.contains("axis2")) s.axis2 = parse_axis(j.at("axis2"), "axis2");

  if (j.contains("fixed")) {
    const auto& f = j.at("fixed");
    reject_unknown(f, {"jx", "jy", "h", "n"}, "fixed");
    for (const auto& item : f.items()) {
      const auto which = sweep_parameter_from_string(item.key());
      if (which == s.axis1.parameter || (s.axis2 && which == s.axis2->parameter))
        throw ParameterError("fixed." + item.key() + " is also swept");
    }
    s.fixed.jx = get_or<double>(f, "jx", s.fixed.jx, "fixed");
    s.fixed.jy = get_or<double>(f, "jy", s.fixed.jy, "fixed");
    s.fixed.h = get_or<double>(f, "h", s.fixed.h, "fixed");
    s.fixed.n = get_or<int>(f, "n", s.fixed.n, "fixed");
  }
  s.fixed.sector = sector_from_string(get_or<std::string>(j, "sector", "even", "spec"));
  s.observables = get_or<std::vector<std::string>>(j, "observables", {}, "spec");

  if (j.contains("derivatives")) {
    const auto& arr = j.at("derivatives");
    if (!arr.is_array()) throw ParameterError("spec.derivatives must be an array");
    for (const auto& d : arr) {
      reject_unknown(d, {"observable", "withRespectTo", "step"}, "derivatives[]");
      DerivativeRequest r;
      r.observable = get<std::string>(d, "observable", "derivatives[]");
      r.withRespectTo =
          sweep_parameter_from_string(get<std::string>(d, "withRespectTo", "derivatives[]"));
      r.step = get_or<double>(d, "step", r.step, "derivatives[]");
      s.derivatives.push_back(r);
    }
  }
  if (j.contains("output")) s.output = parse_output(j.at("output"), "output");
  s.sums.tolZero = get_or<double>(j, "tolZero", -1.0, "spec");
  s.sums.thermodynamic = get_or<bool>(j, "thermodynamic", false, "spec");
  s.validate();
  return s;
}

std::string to_json(const SweepSpec& s) {
  ojson j;
  j["axis1"] = axis_json(s.axis1);
  if (s.axis2) j["axis2"] = axis_json(*s.axis2);
  ojson fixed = ojson::object();
  for (auto which : {SweepParameter::Jx, SweepParameter::Jy, SweepParameter::H}) {
    if (which == s.axis1.parameter || (s.axis2 && which == s.axis2->parameter)) continue;
    fixed[to_string(which)] = get_parameter(s.fixed, which);
  }
  if (s.axis1.parameter != SweepParameter::N && !(s.axis2 && s.axis2->parameter == SweepParameter::N))
    fixed["n"] = s.fixed.n;
  j["fixed"] = fixed;
  j["sector"] = to_string(s.fixed.sector);
  j["observables"] = s.observables;
  ojson ds = ojson::array();
  for (const auto& d : s.derivatives)
    ds.push_back({{"observable", d.observable},
                  {"withRespectTo", to_string(d.withRespectTo)},
                  {"step", d.step}});
  j["derivatives"] = ds;
  j["output"] = output_json(s.output);
  j["tolZero"] = s.sums.tolZero;
  j["thermodynamic"] = s.sums.thermodynamic;
  return j.dump();
}

PointEvaluation evaluate(const ModelParams& p, const std::vector<std::string>& observables,
                         const SumOptions& opt) {
  p.validate();
  int pMax = 2;
  for (const auto& o : observables)
    pMax = std::max({pMax, indexed_order(o, "gamma_"), indexed_order(o, "xi_")});

  const auto sums = aux_sums(p, pMax, opt);
  const auto near = two_site_rdm(sums, 1);
  const auto next = two_site_rdm(sums, 2);
  const auto single = SingleSiteRDM::from_occupation(sums.n);
  const auto energies = sector_energies(p);

  PointEvaluation out;
  out.degenerate = sums.zeroModes || energies.odd < energies.even + 1e-9;
  out.values.reserve(observables.size());
  for (const auto& o : observables) {
    double v = 0.0;
    if (o == "Mz") v = 2.0 * sums.n - 1.0;
    else if (o == "C12") v = concurrence(near);
    else if (o == "C13") v = concurrence(next);
    else if (o == "I12") v = mutual_information(near, single, single);
    else if (o == "I13") v = mutual_information(next, single, single);
    else if (o == "D12") v = discord(near, single);
    else if (o == "D13") v = discord(next, single);
    else if (o == "Eglobal") v = global_entanglement(std::clamp(sums.n, 0.0, 1.0));
    else if (o == "energy") v = energies.even;
    else if (o == "corrZZ") v = next.u + next.v - 2.0 * next.w;
    else if (o == "corrPP") v = next.x.real();
    else if (o == "corrPM") v = next.z.real();
    else if (int q = indexed_order(o, "gamma_"); q >= 0) v = sums.gamma[q];
    else if (int q2 = indexed_order(o, "xi_"); q2 >= 0) v = sums.xi[q2];
    else throw ParameterError("unknown observable '" + o + "'");
    out.values.push_back(v);
  }
  return out;
}

double evaluate(const ModelParams& p, const std::string& observable, const SumOptions& opt) {
  return evaluate(p, std::vector<std::string>{observable}, opt).values.front();
}

DerivativeEstimate derivative(const ModelParams& p, const std::string& observable,
                              SweepParameter wrt, double step, const SumOptions& opt) {
  if (!(step > 0.0)) throw ParameterError("derivative step must be positive");
  if (wrt == SweepParameter::N) throw ParameterError("derivatives with respect to n are not defined");
  const double x0 = get_parameter(p, wrt);
  const std::vector<std::string> names{observable};
  bool unreliable = evaluate(p, names, opt).degenerate;
  auto f = [&](double offset) {
    ModelParams q = p;
    set_parameter(q, wrt, x0 + offset);
    const auto e = evaluate(q, names, opt);
    unreliable = unreliable || e.degenerate;
    return e.values.front();
  };
  const double d1 = (f(step) - f(-step)) / (2.0 * step);
  const double d2 = (f(2.0 * step) - f(-2.0 * step)) / (4.0 * step);
  return {(4.0 * d1 - d2) / 3.0, d1, std::abs(d1 - d2) / 3.0, unreliable};
}

SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepTable t;
  t.specJson = to_json(spec);
  t.columns.push_back(to_string(spec.axis1.parameter));
  if (spec.axis2) t.columns.push_back(to_string(spec.axis2->parameter));
  for (const auto& o : spec.observables) t.columns.push_back(o);
  for (const auto& d : spec.derivatives) {
    const auto base = derivative_column(d);
    t.columns.push_back(base);
    t.columns.push_back(base + "_err");
    t.columns.push_back(base + "_unreliable");
  }
  t.columns.push_back("degenerate");

  const auto outer = spec.axis1.points();
  const auto inner = spec.axis2 ? spec.axis2->points() : std::vector<double>{0.0};
  for (double a : outer)
    for (double b : inner) {
      ModelParams p = spec.fixed;
      set_parameter(p, spec.axis1.parameter, a);
      std::vector<double> row{a};
      if (spec.axis2) {
        set_parameter(p, spec.axis2->parameter, b);
        row.push_back(b);
      }
      const auto e = evaluate(p, spec.observables, spec.sums);
      row.insert(row.end(), e.values.begin(), e.values.end());
      const bool degenerate = e.degenerate;
      for (const auto& d : spec.derivatives) {
        const auto est = derivative(p, d.observable, d.withRespectTo, d.step, spec.sums);
        row.push_back(est.value);
        row.push_back(est.error);
        row.push_back(est.unreliable ? 1.0 : 0.0);
      }
      row.push_back(degenerate ? 1.0 : 0.0);
      t.rows.push_back(std::move(row));
    }
  return t;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const SweepTable& t) {
  out << "# " << t.specJson << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
    out << '\n';
  }
}

SweepTable read_csv(std::istream& in) {
  SweepTable t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  bool haveHeader = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.specJson = line.size() > 2 ? line.substr(2) : "";
      continue;
    }
    if (!haveHeader) {
      t.columns = split(line);
      haveHeader = true;
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != t.columns.size())
      throw ParameterError("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(t.columns.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (end == c.c_str() || *end != '\0') throw ParameterError("bad CSV number '" + c + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_json_lines(std::ostream& out, const SweepTable& t) {
  ojson header;
  header["spec"] = ojson::parse(t.specJson.empty() ? "null" : t.specJson);
  out << header.dump() << '\n';
  for (const auto& row : t.rows) {
    ojson r;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (std::isfinite(row[c]))
        r[t.columns[c]] = row[c];
      else
        r[t.columns[c]] = nullptr;
    }
    out << r.dump() << '\n';
  }
}

void write_table(std::ostream& out, const SweepTable& t, OutputFormat format) {
  if (format == OutputFormat::Csv)
    write_csv(out, t);
  else
    write_json_lines(out, t);
}

void DegeneracyScanSpec::validate() const {
  validate_axis(jy, "jy");
  validate_axis(h, "h");
  if (!std::isfinite(jx)) throw ParameterError("jx must be finite");
  if (n < 4 || n % 2 != 0) throw ParameterError("chain length must be even and >= 4");
  if (sectors.empty()) throw ParameterError("at least one sector is required");
}

DegeneracyScanSpec parse_degeneracy_scan_spec(const std::string& text) {
  const json j = parse_text(text);
  reject_unknown(j, {"jx", "jy", "h", "n", "sectors", "tolZero", "output"}, "scan");
  DegeneracyScanSpec s;
  s.jx = get_or<double>(j, "jx", s.jx, "scan");
  if (j.contains("jy")) s.jy = parse_axis(j.at("jy"), "jy", false);
  if (j.contains("h")) s.h = parse_axis(j.at("h"), "h", false);
  s.jy.parameter = SweepParameter::Jy;
  s.h.parameter = SweepParameter::H;
  s.n = get_or<int>(j, "n", s.n, "scan");
  if (j.contains("sectors")) {
    s.sectors.clear();
    for (const auto& name : get<std::vector<std::string>>(j, "sectors", "scan"))
      s.sectors.push_back(sector_from_string(name));
  }
  s.tolZero = get_or<double>(j, "tolZero", -1.0, "scan");
  if (j.contains("output")) s.output = parse_output(j.at("output"), "output");
  s.validate();
  return s;
}

std::string to_json(const DegeneracyScanSpec& s) {
  ojson j;
  j["jx"] = s.jx;
  j["jy"] = axis_json(s.jy, false);
  j["h"] = axis_json(s.h, false);
  j["n"] = s.n;
  ojson sectors = ojson::array();
  for (auto sec : s.sectors) sectors.push_back(to_string(sec));
  j["sectors"] = sectors;
  j["tolZero"] = s.tolZero;
  j["output"] = output_json(s.output);
  return j.dump();
}

std::vector<DegeneracyHit> scan_degeneracy(const DegeneracyScanSpec& spec) {
  spec.validate();
  const auto jys = spec.jy.points();
  const auto hs = spec.h.points();

  // Half-open cell [c - lo, c + hi) around entry i of a sorted-or-not axis.
  auto cell = [](const std::vector<double>& pts, std::size_t i) {
    const double c = pts[i];
    const double lo = i > 0 ? 0.5 * std::abs(c - pts[i - 1]) : 0.5 * std::abs(pts[1] - pts[0]);
    const double hi =
        i + 1 < pts.size() ? 0.5 * std::abs(pts[i + 1] - c) : 0.5 * std::abs(c - pts[i - 1]);
    return std::pair{c - lo, c + hi};
  };

  std::vector<DegeneracyHit> hits;
  for (std::size_t a = 0; a < jys.size(); ++a) {
    const auto [y0, y1] = cell(jys, a);
    for (std::size_t b = 0; b < hs.size(); ++b) {
      const auto [h0, h1] = cell(hs, b);
      for (Sector sector : spec.sectors) {
        ModelParams p{spec.jx, jys[a], hs[b], spec.n, sector};
        if (p.jx == 0.0 && p.jy == 0.0 && p.h == 0.0) continue;
        const double tol = spec.tolZero > 0.0 ? spec.tolZero : default_tol_zero(p);

        DegeneracyReport r;
        bool line = false;
        const int first = sector == Sector::EvenNF ? 1 : 0;
        const int last = sector == Sector::EvenNF ? spec.n - 1 : spec.n;
        for (int m = first; m <= last; m += 2) {
          const double k = m * kPi / spec.n;
          bool crosses = false;
          if ((2 * m) % spec.n == 0) {
            // B_k vanishes identically; A_k = 0 on h = c (Jx + Jy).
            const double c = (2 * m) % (2 * spec.n) == 0 ? 1.0 : -1.0;
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (double y : {y0, y1})
              for (double hh : {h0, h1}) {
                const double g = hh - c * (spec.jx + y);
                lo = std::min(lo, g);
                hi = std::max(hi, g);
              }
            crosses = lo <= 0.0 && 0.0 <= hi;
          } else if (y0 <= spec.jx && spec.jx <= y1) {
            const double hz = 2.0 * spec.jx * std::cos(2.0 * k);
            crosses = h0 <= hz && hz <= h1;
            line = line || crosses;
          }
          if (crosses) r.zeroModes.push_back(k);
        }
        if (r.zeroModes.empty()) continue;

        const auto here = classify_degeneracy(p, tol);
        r.minOmega = here.minOmega;
        r.minOmegaK = here.minOmegaK;
        for (std::size_t i = 0; i < r.zeroModes.size(); ++i) r.degeneracy *= 4;
        r.kind = line && std::abs(p.h) < 2.0 * std::abs(p.jx) ? DegeneracyKind::LineSpinConserving
                                                               : DegeneracyKind::IsolatedPoint;
        hits.push_back({p, std::move(r)});
      }
    }
  }
  return hits;
}

void write_degeneracy_csv(std::ostream& out, const DegeneracyScanSpec& spec,
                          const std::vector<DegeneracyHit>& hits) {
  out << "# " << to_json(spec) << '\n';
  out << "jx,jy,h,n,sector,kind,degeneracy,zero_mode_count,min_omega,zero_modes\n";
  for (const auto& hit : hits) {
    const auto& p = hit.params;
    const auto& r = hit.report;
    out << format_number(p.jx) << ',' << format_number(p.jy) << ',' << format_number(p.h) << ','
        << p.n << ',' << to_string(p.sector) << ',' << to_string(r.kind) << ',' << r.degeneracy
        << ',' << r.zeroModes.size() << ',' << format_number(r.minOmega) << ',';
    for (std::size_t i = 0; i < r.zeroModes.size(); ++i)
      out << (i ? ";" : "") << format_number(r.zeroModes[i]);
    out << '\n';
  }
}

}  // namespace clusterchain
