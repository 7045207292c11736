#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fracdecay/cli/jobspec.hpp"

namespace fracdecay::cli {

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

struct Outcome {
  /// Ordered key=value pairs for the one-line summary.
  std::vector<std::pair<std::string, Cell>> summary;
  Table table;
  double wall_seconds = 0.0;

  std::string summary_line() const;
};

const std::vector<std::string>& commands();

/// Runs one subcommand. Writes the table to spec.params.out when set: JSON
/// when the path ends in ".json", CSV otherwise.
Outcome run(const std::string& command, const JobSpec& spec);

/// CSV text: header row, then rows with 17 significant digits.
std::string to_csv(const Table& table);
/// Table, summary and metadata (version, spec hash, wall time).
std::string to_json(const Outcome& outcome, const std::string& command, const JobSpec& spec);

std::string format_cell(const Cell& cell);

}  // namespace fracdecay::cli
