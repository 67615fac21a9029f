#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rys::cli {

enum class Format { json, csv, text };

struct RunConfig {
  std::string command;
  std::string z = "1";
  std::string lambda = "1";
  std::size_t n = 10;
  unsigned digits = 50;
  double z0 = 0.1;
  double z1 = 2.0;
  std::size_t steps = 10;
  std::optional<Format> format;
  std::string out;
  std::optional<double> perturbation;  // verify only
};

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct SummaryEntry {
  std::string name;
  std::optional<double> value;
  std::optional<double> bound;
  bool pass = true;
};

/// Tabular result of one command.
struct Document {
  std::vector<std::pair<std::string, Cell>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<SummaryEntry> summary;

  bool passed() const;
};

Document cmd_moments(const RunConfig& cfg);
Document cmd_recurrence(const RunConfig& cfg);
Document cmd_quadrature(const RunConfig& cfg);
Document cmd_zeros(const RunConfig& cfg);
Document cmd_flow(const RunConfig& cfg);
Document cmd_verify(const RunConfig& cfg);

std::string to_json(const Document& doc);
std::string to_csv(const Document& doc);
std::string to_text(const Document& doc);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

/// Full command line entry point; returns the process exit code
/// (0 pass, 1 verification or numerical failure, 2 usage or domain error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rys::cli
