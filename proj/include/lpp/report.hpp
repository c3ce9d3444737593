#pragma once

#include <optional>
#include <string>
#include <vector>

namespace lpp {

// Provenance of an asserted target value.
enum class Provenance { PaperFormula, DerivedOracle, Property, Info };

const char* provenance_name(Provenance p);

struct ReportRow {
  std::string metric;
  double estimate = 0;
  std::optional<double> std_error;
  std::optional<double> target;
  Provenance provenance = Provenance::Info;
  std::optional<double> tolerance;
  std::optional<bool> pass;  // set iff the row is asserted

  static ReportRow info(std::string metric, double estimate,
                        std::optional<double> std_error = std::nullopt);
  static ReportRow asserted(std::string metric, double estimate, double target,
                            double tolerance, Provenance prov,
                            std::optional<double> std_error = std::nullopt);
  // pass iff estimate lies in [lo, hi]
  static ReportRow asserted_range(std::string metric, double estimate, double lo,
                                  double hi, Provenance prov);
};

struct Report {
  std::string command;
  std::string config_echo;  // flag list, reproduced verbatim
  uint64_t seed = 0;
  std::string version;
  std::vector<ReportRow> rows;

  bool all_pass() const;
  std::vector<const ReportRow*> failures() const;
  void write_csv(const std::string& path) const;
  void write_json(const std::string& path) const;
  void print(std::ostream& os) const;
};

}  // namespace lpp
