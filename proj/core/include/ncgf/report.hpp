#pragma once

#include <string>
#include <vector>

#include "ncgf/common.hpp"

namespace ncgf {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

/// Deterministic run report: echoes the resolved configuration and lists one
/// entry per check.  Wall-clock timing is kept out of the serialized form so
/// identical (config, seed) runs are byte-identical; the CLI logs timings
/// separately.
struct Report {
  std::string command;
  std::string config_echo_json;  // resolved config, serialized
  std::vector<CheckResult> checks;
  std::string version = kVersion;

  bool all_pass() const;
  std::string to_json() const;
};

/// Fixed-format float: 17 significant digits, '.' separator, no locale.
std::string format_double(double v);

struct CsvTable {
  std::string header;                   // one line, comma separated, with units
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ncgf
