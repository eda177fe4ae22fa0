#include "mol/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace mol {

bool VerificationReport::all_pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

void VerificationReport::add(const std::string& name, bool pass, double value,
                             const std::string& note) {
  checks.push_back(CheckResult{name, pass, value, note});
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_report_json(const VerificationReport& rep, const std::string& path) {
  nlohmann::json j;
  j["suite"] = rep.suite;
  j["provenance"] = rep.provenance;
  j["all_pass"] = rep.all_pass();
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : rep.checks)
    j["checks"].push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"value", c.value},
                           {"note", c.note}});
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(2) << '\n';
}

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "");
  out << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << format_double(row[i]) << (i + 1 < row.size() ? "," : "");
    out << '\n';
  }
}

}  // namespace mol
