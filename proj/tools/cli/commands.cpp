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

#include <cmath>
#include <optional>
#include <string>

#include "cli.hpp"
#include "sqzfock/error.hpp"
#include "sqzfock/imperfections.hpp"
#include "sqzfock/parallel.hpp"
#include "sqzfock/version.hpp"

namespace sqzfock::cli {

namespace {

// One grid for every kind and n so that plateau fractions are comparable.
constexpr AxisRange kDefaultSurfaceR1{-2.0, 1.0, 41};
constexpr AxisRange kDefaultSurfaceR2{-1.0, 3.0, 41};

const char* command_name(Command c) {
  switch (c) {
    case Command::solve: return "solve";
    case Command::energy: return "energy";
    case Command::budget: return "budget";
    case Command::loss: return "loss";
    case Command::surface: return "surface";
    case Command::detector: return "detector";
  }
  return "?";
}

Cell kind_cell(EntanglerKind k) { return std::string(to_string(k)); }
Cell integer(long long v) { return v; }
Cell maybe(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

bool is_infeasibility(ErrorKind k) {
  return k == ErrorKind::infeasible || k == ErrorKind::invalid_params || k == ErrorKind::singular ||
         k == ErrorKind::unheraldable;
}

Table base_table(const RunConfig& cfg) {
  const QuadratureConfig q = cfg.quadrature();
  Table t;
  t.meta.emplace_back("version", kVersion);
  t.meta.emplace_back("command", command_name(cfg.command));
  t.meta.emplace_back("quad_order", std::to_string(q.order_1d) + "/" + std::to_string(q.order_per_axis) + "/" +
                                        std::to_string(q.loss_order));
  t.meta.emplace_back("n_max", cfg.n_max ? std::to_string(*cfg.n_max) : std::string("auto"));
  return t;
}

struct Point {
  int n;
  double squeezing;
  EntanglerKind kind;
};

std::vector<Point> points(const RunConfig& cfg) {
  std::vector<Point> pts;
  for (int n : cfg.n) {
    for (double r : cfg.squeezing) {
      for (EntanglerKind k : cfg.kinds()) pts.push_back({n, r, k});
    }
  }
  return pts;
}

// Optimum for a point, or the reason it has none.
struct Solved {
  std::optional<OptimalEntangler> optimum;
  std::string failure;
};

Solved solve_point(const Point& p, const QuadratureConfig& q) {
  try {
    return {optimal_entangler(SFTarget(p.n, p.squeezing, q.fock_cap), p.kind, q), {}};
  } catch (const Error& e) {
    if (!is_infeasibility(e.kind())) throw;
    return {std::nullopt, e.what()};
  }
}

std::vector<Solved> solve_all(const std::vector<Point>& pts, const QuadratureConfig& q) {
  std::vector<Solved> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { out[i] = solve_point(pts[i], q); });
  return out;
}

std::string point_label(const Point& p) {
  return std::string(to_string(p.kind)) + " n=" + std::to_string(p.n) + " R=" + format_number(p.squeezing);
}

CommandResult cmd_solve(const RunConfig& cfg) {
  CommandResult res;
  const QuadratureConfig q = cfg.quadrature();
  res.table = base_table(cfg);
  res.table.meta.emplace_back("budget_db", format_number(cfg.budget_db));
  res.table.columns = {"kind", "n", "R", "parameter", "r1", "r2", "residual", "probability", "fidelity",
                       "energy", "r1_db", "r2_db", "ancilla_db", "max_db", "within_budget"};
  const auto pts = points(cfg);
  const auto solved = solve_all(pts, q);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& pt = pts[i];
    if (!solved[i].optimum) {
      res.diagnostics.push_back("infeasible: " + point_label(pt) + ": " + solved[i].failure);
      res.exit_code = kExitInfeasible;
      continue;
    }
    const OptimalEntangler& o = *solved[i].optimum;
    const SFTarget target(pt.n, pt.squeezing, q.fock_cap);
    const TmegParams p = entangler_to_tmeg(o.entangler, o.solution.r1, o.solution.r2);
    const SqueezingRequirement req = input_squeezing(o);
    const bool within = req.within(cfg.budget_db);
    if (!within) {
      res.diagnostics.push_back("exceeds budget: " + point_label(pt) + " needs " + format_number(req.max_db) +
                                " dB, budget " + format_number(cfg.budget_db) + " dB");
      if (cfg.enforce_budget) res.exit_code = kExitInfeasible;
    }
    res.table.rows.push_back({kind_cell(pt.kind), integer(pt.n), pt.squeezing, o.entangler.parameter(),
                              o.solution.r1, o.solution.r2, o.solution.residuals.max_abs(), o.probability,
                              heralded_fidelity(p, target, q), energy_cost(o.entangler, o.solution), req.r1_db,
                              req.r2_db, maybe(req.ancilla_db), req.max_db, integer(within ? 1 : 0)});
  }
  return res;
}

CommandResult cmd_energy(const RunConfig& cfg) {
  CommandResult res;
  res.table = base_table(cfg);
  res.table.columns = {"n", "R", "kind", "parameter", "E"};
  const auto pts = points(cfg);
  const auto solved = solve_all(pts, cfg.quadrature());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& pt = pts[i];
    if (!solved[i].optimum) {
      res.diagnostics.push_back("infeasible: " + point_label(pt));
      res.table.rows.push_back({integer(pt.n), pt.squeezing, kind_cell(pt.kind), Cell(), Cell()});
      continue;
    }
    const OptimalEntangler& o = *solved[i].optimum;
    res.table.rows.push_back({integer(pt.n), pt.squeezing, kind_cell(pt.kind), o.entangler.parameter(),
                              energy_cost(o.entangler, o.solution)});
  }
  return res;
}

CommandResult cmd_budget(const RunConfig& cfg) {
  CommandResult res;
  res.table = base_table(cfg);
  res.table.meta.emplace_back("budget_db", format_number(cfg.budget_db));
  res.table.columns = {"n", "R", "kind", "max_db", "budget_db", "within_budget"};
  const auto pts = points(cfg);
  const auto solved = solve_all(pts, cfg.quadrature());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& pt = pts[i];
    if (!solved[i].optimum) {
      res.diagnostics.push_back("infeasible: " + point_label(pt));
      res.table.rows.push_back({integer(pt.n), pt.squeezing, kind_cell(pt.kind), Cell(), cfg.budget_db, integer(0)});
      continue;
    }
    const SqueezingRequirement req = input_squeezing(*solved[i].optimum);
    const bool within = req.within(cfg.budget_db);
    if (!within && cfg.enforce_budget) res.exit_code = kExitInfeasible;
    res.table.rows.push_back(
        {integer(pt.n), pt.squeezing, kind_cell(pt.kind), req.max_db, cfg.budget_db, integer(within ? 1 : 0)});
  }
  return res;
}

CommandResult cmd_loss(const RunConfig& cfg) {
  CommandResult res;
  const QuadratureConfig q = cfg.quadrature();
  res.table = base_table(cfg);
  res.table.columns = {"mu", "kind", "n", "R", "P_avg", "F_avg", "P_opt", "P_deficit", "P_deficit_rel", "F_deficit"};
  const auto pts = points(cfg);
  const auto solved = solve_all(pts, q);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& pt = pts[i];
    if (!solved[i].optimum) {
      res.diagnostics.push_back("infeasible: " + point_label(pt) + ": " + solved[i].failure);
      res.exit_code = kExitInfeasible;
      continue;
    }
    const SFTarget target(pt.n, pt.squeezing, q.fock_cap);
    for (double mu : cfg.mu) {
      const AveragedMetrics m = averaged_metrics(*solved[i].optimum, target, mu, q);
      res.table.rows.push_back({mu, kind_cell(pt.kind), integer(pt.n), pt.squeezing, m.probability, m.fidelity,
                                m.optimal_probability, m.probability_deficit(), m.relative_probability_deficit(),
                                m.fidelity_deficit()});
    }
  }
  return res;
}

CommandResult cmd_surface(const RunConfig& cfg) {
  CommandResult res;
  const QuadratureConfig q = cfg.quadrature();
  res.table = base_table(cfg);
  res.table.meta.emplace_back("plateau_level", format_number(kPlateauLevel));
  res.table.columns = {"kind", "n", "R", "r1", "r2", "F"};
  const auto pts = points(cfg);
  const auto solved = solve_all(pts, q);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& pt = pts[i];
    if (!solved[i].optimum) {
      res.diagnostics.push_back("infeasible: " + point_label(pt) + ": " + solved[i].failure);
      res.exit_code = kExitInfeasible;
      continue;
    }
    const OptimalEntangler& o = *solved[i].optimum;
    const auto [a1, a2] = cfg.grid.value_or(std::pair{kDefaultSurfaceR1, kDefaultSurfaceR2});
    const auto g1 = a1.values();
    const auto g2 = a2.values();
    const SFTarget target(pt.n, pt.squeezing, q.fock_cap);
    const FidelitySurface s = fidelity_surface(o, target, g1, g2, q);
    res.table.meta.emplace_back("plateau_fraction." + std::string(to_string(pt.kind)) + "." + std::to_string(pt.n) +
                                    "." + format_number(pt.squeezing),
                                format_number(s.plateau_fraction));
    for (std::size_t a = 0; a < g1.size(); ++a) {
      for (std::size_t b = 0; b < g2.size(); ++b) {
        res.table.rows.push_back({kind_cell(pt.kind), integer(pt.n), pt.squeezing, g1[a], g2[b], maybe(s.at(a, b))});
      }
    }
  }
  return res;
}

FockExpansion expansion_for(const TmegParams& p, const std::optional<int>& n_max, const QuadratureConfig& q) {
  if (n_max) return fock_expand(p, *n_max, q);
  for (int m = kAutoNmaxStart;; m *= 2) {
    try {
      return fock_expand(p, std::min(m, kAutoNmaxLimit), q);
    } catch (const TruncationError&) {
      if (m >= kAutoNmaxLimit) throw;
    }
  }
}

CommandResult cmd_detector(const RunConfig& cfg) {
  CommandResult res;
  const QuadratureConfig q = cfg.quadrature();
  res.table = base_table(cfg);
  res.table.columns = {"eta", "kind", "n", "R", "F_quadrature", "F_fock", "abs_diff", "n_max", "tail_mass"};
  const auto pts = points(cfg);
  const auto solved = solve_all(pts, q);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& pt = pts[i];
    if (!solved[i].optimum) {
      res.diagnostics.push_back("infeasible: " + point_label(pt) + ": " + solved[i].failure);
      res.exit_code = kExitInfeasible;
      continue;
    }
    const OptimalEntangler& o = *solved[i].optimum;
    const SFTarget target(pt.n, pt.squeezing, q.fock_cap);
    const TmegParams p = entangler_to_tmeg(o.entangler, o.solution.r1, o.solution.r2);
    const FockExpansion fe = expansion_for(p, cfg.n_max, q);
    std::vector<std::pair<double, double>> values(cfg.eta.size());
    parallel_for(cfg.eta.size(), [&](std::size_t k) {
      values[k] = {detector_fidelity_quadrature(p, target, cfg.eta[k], q),
                   detector_fidelity_fock(fe, target, cfg.eta[k], q)};
    });
    for (std::size_t k = 0; k < cfg.eta.size(); ++k) {
      const auto [fq, ff] = values[k];
      res.table.rows.push_back({cfg.eta[k], kind_cell(pt.kind), integer(pt.n), pt.squeezing, fq, ff,
                                std::abs(fq - ff), integer(fe.n_max), fe.tail_mass});
    }
  }
  return res;
}

}  // namespace

CommandResult run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::solve: return cmd_solve(cfg);
    case Command::energy: return cmd_energy(cfg);
    case Command::budget: return cmd_budget(cfg);
    case Command::loss: return cmd_loss(cfg);
    case Command::surface: return cmd_surface(cfg);
    case Command::detector: return cmd_detector(cfg);
  }
  return {};
}

}  // namespace sqzfock::cli
