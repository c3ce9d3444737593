#include "lpp/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace lpp {

namespace {
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::PaperFormula:
      return "paper-formula";
    case Provenance::DerivedOracle:
      return "derived-oracle";
    case Provenance::Property:
      return "property";
    case Provenance::Info:
      return "info";
  }
  return "info";
}

ReportRow ReportRow::info(std::string metric, double estimate,
                          std::optional<double> std_error) {
  ReportRow r;
  r.metric = std::move(metric);
  r.estimate = estimate;
  r.std_error = std_error;
  return r;
}

ReportRow ReportRow::asserted(std::string metric, double estimate, double target,
                              double tolerance, Provenance prov,
                              std::optional<double> std_error) {
  ReportRow r;
  r.metric = std::move(metric);
  r.estimate = estimate;
  r.std_error = std_error;
  r.target = target;
  r.tolerance = tolerance;
  r.provenance = prov;
  r.pass = std::abs(estimate - target) <= tolerance;
  return r;
}

ReportRow ReportRow::asserted_range(std::string metric, double estimate,
                                    double lo, double hi, Provenance prov) {
  ReportRow r;
  r.metric = std::move(metric);
  r.estimate = estimate;
  r.target = 0.5 * (lo + hi);
  r.tolerance = 0.5 * (hi - lo);
  r.provenance = prov;
  r.pass = estimate >= lo && estimate <= hi;
  return r;
}

bool Report::all_pass() const {
  for (const auto& r : rows)
    if (r.pass.has_value() && !*r.pass) return false;
  return true;
}

std::vector<const ReportRow*> Report::failures() const {
  std::vector<const ReportRow*> out;
  for (const auto& r : rows)
    if (r.pass.has_value() && !*r.pass) out.push_back(&r);
  return out;
}

void Report::write_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << "metric,estimate,std_error,target,provenance,tolerance,pass\n";
  for (const auto& r : rows) {
    os << r.metric << ',' << fmt(r.estimate) << ',';
    if (r.std_error) os << fmt(*r.std_error);
    os << ',';
    if (r.target) os << fmt(*r.target);
    os << ',' << provenance_name(r.provenance) << ',';
    if (r.tolerance) os << fmt(*r.tolerance);
    os << ',';
    if (r.pass) os << (*r.pass ? "pass" : "FAIL");
    os << '\n';
  }
}

void Report::write_json(const std::string& path) const {
  nlohmann::json j;
  j["manifest"] = {{"command", command},
                   {"config", config_echo},
                   {"seed", seed},
                   {"version", version}};
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["metric"] = r.metric;
    row["estimate"] = r.estimate;
    if (r.std_error) row["std_error"] = *r.std_error;
    if (r.target) row["target"] = *r.target;
    row["provenance"] = provenance_name(r.provenance);
    if (r.tolerance) row["tolerance"] = *r.tolerance;
    if (r.pass) row["pass"] = *r.pass;
    j["rows"].push_back(row);
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << j.dump(2) << '\n';
}

void Report::print(std::ostream& os) const {
  for (const auto& r : rows) {
    os << (r.pass ? (*r.pass ? "[pass] " : "[FAIL] ") : "[info] ") << r.metric
       << " = " << fmt(r.estimate);
    if (r.target) os << " (target " << fmt(*r.target);
    if (r.tolerance) os << " +- " << fmt(*r.tolerance);
    if (r.target) os << ")";
    os << '\n';
  }
}

}  // namespace lpp
