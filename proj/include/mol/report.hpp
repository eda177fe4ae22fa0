#pragma once

#include <string>
#include <vector>

namespace mol {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;  // the recorded constant or measured error
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::string provenance;  // seed and version tags
  std::vector<CheckResult> checks;

  bool all_pass() const;
  void add(const std::string& name, bool pass, double value,
           const std::string& note = "");
};

// JSON summary of a report.
void write_report_json(const VerificationReport& rep, const std::string& path);

// CSV table with %.17g cells (byte-deterministic given identical values).
void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

std::string format_double(double v);

}  // namespace mol
