// Copyright 2026 The sqzfock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sqzfock/config.hpp"
#include "sqzfock/protocol.hpp"

namespace sqzfock::cli {

enum class Command { solve, energy, budget, loss, surface, detector };
enum class KindSelection { bs, cz, both };
enum class OutputFormat { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitBadArguments = 4;

inline constexpr int kMinQuadOrder = 16;
inline constexpr int kAutoNmaxStart = 40;
inline constexpr int kAutoNmaxLimit = 480;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Carries the help or version text when parsing stops early.
struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

/// "lo:hi:count" -> count evenly spaced values including both ends.
AxisRange parse_range(const std::string& text);
/// Comma-separated list whose items are numbers or lo:hi:count ranges.
std::vector<double> parse_values(const std::string& text);
/// "r1:lo:hi:count,r2:lo:hi:count"
std::pair<AxisRange, AxisRange> parse_grid(const std::string& text);

struct RunConfig {
  Command command = Command::solve;
  std::vector<int> n;
  std::vector<double> squeezing;
  KindSelection kind = KindSelection::both;
  std::vector<double> mu;
  std::vector<double> eta;
  std::optional<std::pair<AxisRange, AxisRange>> grid;
  std::optional<int> quad_order;
  std::optional<int> n_max;
  OutputFormat format = OutputFormat::csv;
  std::string out;
  double budget_db = kSqueezingBudgetDb;
  bool enforce_budget = false;

  QuadratureConfig quadrature() const;
  std::vector<EntanglerKind> kinds() const;
};

/// Fills command-specific defaults for every list left empty.
RunConfig parse_command_line(int argc, const char* const* argv);

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double v);
void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, std::ostream& os);

struct CommandResult {
  Table table;
  int exit_code = kExitOk;
  std::vector<std::string> diagnostics;
};

CommandResult run_command(const RunConfig& config);

/// Parses, runs and writes. Diagnostics go to `err`; the table goes to
/// config.out or `out`. Returns the process exit status.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sqzfock::cli
