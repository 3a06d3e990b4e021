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

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "cli.hpp"
#include "sqzfock/error.hpp"
#include "sqzfock/version.hpp"

namespace sqzfock::cli {

namespace {

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw UsageError("not a finite number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

AxisRange range_from_parts(const std::vector<std::string>& parts, std::size_t offset, const std::string& text) {
  AxisRange r;
  r.lo = parse_number(parts[offset]);
  r.hi = parse_number(parts[offset + 1]);
  const double count = parse_number(parts[offset + 2]);
  if (count < 1.0 || count != std::floor(count) || count > 1e6) {
    throw UsageError("range count must be a positive integer in '" + text + "'");
  }
  r.count = static_cast<int>(count);
  return r;
}

std::vector<double> default_values(Command c, const char* what) {
  const std::string w = what;
  if (w == "R") {
    switch (c) {
      case Command::energy: return AxisRange{0.25, 1.0, 4}.values();
      case Command::budget: return AxisRange{0.1, 1.5, 15}.values();
      case Command::detector: return {0.5, 1.0};
      default: return {1.0};
    }
  }
  if (w == "mu") return AxisRange{0.0, 0.1, 11}.values();
  return AxisRange{0.8, 1.0, 21}.values();
}

std::vector<int> default_photon_numbers(Command c) {
  switch (c) {
    case Command::energy:
    case Command::budget: return {1, 2, 3};
    case Command::detector: return {1, 2};
    default: return {1};
  }
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else {
          return v;
        }
      },
      c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return std::stod(format_number(v));
        } else {
          return v;
        }
      },
      c);
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::infeasible:
    case ErrorKind::invalid_params:
    case ErrorKind::unheraldable:
    case ErrorKind::singular: return kExitInfeasible;
    case ErrorKind::convergence:
    case ErrorKind::truncation: return kExitConvergence;
    case ErrorKind::invalid_argument:
    case ErrorKind::capacity: return kExitBadArguments;
  }
  return kExitBadArguments;
}

}  // namespace

std::vector<double> AxisRange::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = lo + step * i;
  v.back() = hi;
  return v;
}

AxisRange parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("expected lo:hi:count, got '" + text + "'");
  return range_from_parts(parts, 0, text);
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    if (item.find(':') != std::string::npos) {
      const auto v = parse_range(item).values();
      out.insert(out.end(), v.begin(), v.end());
    } else {
      out.push_back(parse_number(item));
    }
  }
  if (out.empty()) throw UsageError("empty value list");
  return out;
}

std::pair<AxisRange, AxisRange> parse_grid(const std::string& text) {
  const auto axes = split(text, ',');
  if (axes.size() != 2) throw UsageError("expected r1:lo:hi:count,r2:lo:hi:count, got '" + text + "'");
  AxisRange r[2];
  const char* names[2] = {"r1", "r2"};
  for (int i = 0; i < 2; ++i) {
    const auto parts = split(axes[static_cast<std::size_t>(i)], ':');
    if (parts.size() != 4 || parts[0] != names[i]) {
      throw UsageError("grid axis must look like " + std::string(names[i]) + ":lo:hi:count");
    }
    r[i] = range_from_parts(parts, 1, text);
  }
  return {r[0], r[1]};
}

QuadratureConfig RunConfig::quadrature() const {
  QuadratureConfig cfg;
  if (quad_order) {
    cfg.order_1d = *quad_order;
    cfg.order_per_axis = *quad_order;
  }
  return cfg;
}

std::vector<EntanglerKind> RunConfig::kinds() const {
  switch (kind) {
    case KindSelection::bs: return {EntanglerKind::beam_splitter};
    case KindSelection::cz: return {EntanglerKind::controlled_z};
    case KindSelection::both: break;
  }
  return {EntanglerKind::beam_splitter, EntanglerKind::controlled_z};
}

RunConfig parse_command_line(int argc, const char* const* argv) {
  CLI::App app{"Heralded squeezed Fock state generation: solve, sweep and imperfection tables"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string n_text, r_text, kind_text = "both", mu_text, eta_text, grid_text, format_text = "csv";
  std::optional<int> quad_order, n_max;
  RunConfig cfg;
  app.add_option("--n", n_text, "photon number(s), e.g. 1 or 1,2,3");
  app.add_option("--R", r_text, "target squeezing: value, list or lo:hi:count");
  app.add_option("--kind", kind_text, "entangler: bs, cz or both");
  app.add_option("--mu", mu_text, "loss spread(s) for the loss table");
  app.add_option("--eta", eta_text, "detector efficiencies for the detector table");
  app.add_option("--grid", grid_text, "surface grid r1:lo:hi:count,r2:lo:hi:count");
  app.add_option("--quad-order", quad_order, "Gauss-Hermite order per axis");
  app.add_option("--nmax", n_max, "Fock truncation (default: grow until the tail is below 1e-6)");
  app.add_option("--format", format_text, "csv or json");
  app.add_option("--out", cfg.out, "output file (default: stdout)");
  app.add_option("--budget-db", cfg.budget_db, "input squeezing budget in dB");
  app.add_flag("--enforce-budget", cfg.enforce_budget, "exit with status 2 when the budget is exceeded");

  const std::pair<const char*, Command> commands[] = {
      {"solve", Command::solve},     {"energy", Command::energy}, {"budget", Command::budget},
      {"loss", Command::loss},       {"surface", Command::surface}, {"detector", Command::detector}};
  const char* help[] = {"single-point report of inputs, probability, energy and dB",
                        "energy cost table", "maximum input squeezing table", "loss-averaged metrics table",
                        "fidelity surface over input squeezings", "fidelity against detector efficiency"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    subs.push_back(app.add_subcommand(commands[i].first, help[i])->fallthrough());
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested(std::string(kVersion) + "\n");
  } catch (const CLI::Success&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) cfg.command = commands[i].second;
  }

  if (kind_text == "bs") {
    cfg.kind = KindSelection::bs;
  } else if (kind_text == "cz") {
    cfg.kind = KindSelection::cz;
  } else if (kind_text == "both") {
    cfg.kind = KindSelection::both;
  } else {
    throw UsageError("--kind must be bs, cz or both");
  }
  if (format_text == "csv") {
    cfg.format = OutputFormat::csv;
  } else if (format_text == "json") {
    cfg.format = OutputFormat::json;
  } else {
    throw UsageError("--format must be csv or json");
  }

  if (n_text.empty()) {
    cfg.n = default_photon_numbers(cfg.command);
  } else {
    for (double v : parse_values(n_text)) {
      if (v < 0.0 || v != std::floor(v)) throw UsageError("--n takes non-negative integers");
      cfg.n.push_back(static_cast<int>(v));
    }
  }
  cfg.squeezing = r_text.empty() ? default_values(cfg.command, "R") : parse_values(r_text);
  cfg.mu = mu_text.empty() ? default_values(cfg.command, "mu") : parse_values(mu_text);
  cfg.eta = eta_text.empty() ? default_values(cfg.command, "eta") : parse_values(eta_text);
  for (double m : cfg.mu) {
    if (m < 0.0) throw UsageError("--mu must be non-negative");
  }
  for (double e : cfg.eta) {
    if (!(e > 0.0 && e <= 1.0)) throw UsageError("--eta must lie in (0, 1]");
  }
  if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);
  if (quad_order && *quad_order < kMinQuadOrder) {
    throw UsageError("--quad-order must be at least " + std::to_string(kMinQuadOrder));
  }
  if (n_max && *n_max < 0) throw UsageError("--nmax must be non-negative");
  cfg.quad_order = quad_order;
  cfg.n_max = n_max;
  if (!std::isfinite(cfg.budget_db)) throw UsageError("--budget-db must be finite");
  return cfg;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const Table& table, std::ostream& os) {
  for (const auto& [k, v] : table.meta) os << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

void write_json(const Table& table, std::ostream& os) {
  nlohmann::ordered_json doc;
  doc["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.meta) doc["meta"][k] = v;
  doc["columns"] = table.columns;
  doc["data"] = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    auto col = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) col.push_back(cell_json(row[c]));
    doc["data"][table.columns[c]] = std::move(col);
  }
  os << doc.dump(2) << '\n';
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_command_line(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "sqzfock: " << e.what() << '\n';
    return kExitBadArguments;
  }

  CommandResult result;
  try {
    result = run_command(cfg);
  } catch (const Error& e) {
    err << "sqzfock: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  for (const auto& d : result.diagnostics) err << "sqzfock: " << d << '\n';

  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary);
    if (!file) {
      err << "sqzfock: cannot open " << cfg.out << " for writing\n";
      return kExitBadArguments;
    }
    os = &file;
  }
  if (cfg.format == OutputFormat::csv) {
    write_csv(result.table, *os);
  } else {
    write_json(result.table, *os);
  }
  return result.exit_code;
}

}  // namespace sqzfock::cli
