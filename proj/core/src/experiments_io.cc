// Copyright 2026 The ipfpp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ipfpp/experiments_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "ipfpp/errors.h"
#include "ipfpp/invasion.h"

namespace ipfpp {
namespace {

using nlohmann::json;

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    cells.push_back(cell);
  }
  return cells;
}

std::size_t ColumnIndex(const std::vector<std::string>& header, const std::string& name, const char* what) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ConfigError(fmt::format("{} CSV is missing column '{}'", what, name));
  return static_cast<std::size_t>(it - header.begin());
}

double ParseDouble(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("{} CSV has a malformed number '{}'", what, text));
  }
}

json EventJson(std::uint64_t count, std::uint64_t trials) {
  const double f = trials == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(trials);
  const double se = trials == 0 ? 0.0 : std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
  return {{"count", count}, {"frequency", f}, {"standard_error", se}};
}

}  // namespace

std::vector<std::string> coordinate_columns(int dim) {
  if (dim == 1) return {"x"};
  if (dim == 2) return {"x", "y"};
  if (dim == 3) return {"x", "y", "z"};
  std::vector<std::string> cols;
  for (int i = 0; i < dim; ++i) cols.push_back(fmt::format("x{}", i));
  return cols;
}

void write_grid_csv(std::ostream& out, const ProportionGrid& grid) {
  const Region& region = *grid.region;
  for (const std::string& c : coordinate_columns(region.dim())) out << c << ',';
  out << "count,n,proportion\n";
  for (std::size_t v = 0; v < region.vertex_count(); ++v) {
    for (std::int32_t c : region.vertex(static_cast<VertexId>(v)).coords()) out << c << ',';
    out << grid.counts[v] << ',' << grid.trials << ',' << fmt::format("{}", grid.proportion(static_cast<VertexId>(v)))
        << '\n';
  }
}

void write_slice_csv(std::ostream& out, std::span<const SlicePoint> points) {
  out << "x_scaled,proportion\n";
  for (const SlicePoint& p : points) out << fmt::format("{},{}\n", p.x_scaled, p.proportion);
}

void write_level_curve_csv(std::ostream& out, const LevelCurve& curve) {
  out << "x,y\n";
  for (const auto& [x, y] : curve.points) out << fmt::format("{},{}\n", x, y);
}

json params_json(const DerivedParams& p) {
  return {{"edge_count", p.edge_count}, {"epsilon_half", p.epsilon_half}, {"delta", p.delta},
          {"K", p.k},                   {"k_policy", p.k_policy},         {"theorem_k", p.theorem_k}};
}

json plan_json(const ExperimentPlan& plan) {
  json j = {{"dimension", plan.dimension},     {"region", plan.region},   {"inner_radius", plan.inner_radius},
            {"epsilon_half", plan.epsilon_half}, {"trials", plan.trials}, {"master_seed", plan.master_seed},
            {"workers", plan.workers},         {"coupling_stats", plan.coupling_stats}};
  j["k_override"] = plan.k_override ? json(*plan.k_override) : json(nullptr);
  return j;
}

json summary_json(const ExperimentPlan& plan, const ExperimentResult& result) {
  const EventCounts& ev = result.events;
  json j;
  j["plan"] = plan_json(plan);
  j["derived"] = params_json(result.params);
  j["derived"]["vertex_count"] = result.grid.region->vertex_count();
  j["estimand"] = "T(0,x) < T(0,boundary)";
  j["invasion_proxy"] = kInvasionProxyTag;
  j["trials"] = ev.trials;
  if (result.coupling_stats) {
    j["coupling"] = {{"epsilon", 2.0 * plan.epsilon_half},
                     {"gap_delta", delta(result.params.edge_count, 2.0 * plan.epsilon_half)},
                     {"events",
                      {{"t_delta", EventJson(ev.t_delta, ev.trials)},
                       {"ip_contains_fpp", EventJson(ev.ip_contains_fpp, ev.trials)},
                       {"fpp_contains_ip", EventJson(ev.fpp_contains_ip, ev.trials)},
                       {"order_agreement", EventJson(ev.order_agreement, ev.trials)},
                       {"order_prefix", EventJson(ev.order_prefix, ev.trials)},
                       {"late_invasion", EventJson(ev.late_invasion, ev.trials)}}}};
  }
  j["ties"] = {{"weight", ev.weight_ties},
               {"invasion", ev.invasion_ties},
               {"fpp_time", ev.fpp_time_ties},
               {"fpp_order", ev.fpp_order_ties}};
  j["wall_seconds"] = result.wall_seconds;
  return j;
}

json fit_json(const FitResult& fit) {
  return {{"alpha", fit.alpha}, {"r", fit.r}, {"points_used", fit.points_used}, {"exclusion_rule", fit.exclusion_rule}};
}

ProportionField read_grid_csv(std::istream& in, std::optional<std::int64_t> l1_radius) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("grid CSV is empty");
  const std::vector<std::string> header = SplitCsv(line);
  const std::size_t proportion_col = ColumnIndex(header, "proportion", "grid");
  ColumnIndex(header, "count", "grid");
  ColumnIndex(header, "n", "grid");
  const int dim = static_cast<int>(header.size()) - 3;
  if (dim < 1 || dim > kMaxDimension) throw ConfigError("grid CSV has an unexpected number of columns");
  const std::vector<std::string> coords = coordinate_columns(dim);
  std::vector<std::size_t> coord_cols;
  for (const std::string& c : coords) coord_cols.push_back(ColumnIndex(header, c, "grid"));

  std::vector<Vertex> points;
  std::vector<double> values;
  std::int64_t max_norm = 0;
  std::vector<std::int32_t> buffer(dim);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = SplitCsv(line);
    if (cells.size() != header.size()) throw ConfigError(fmt::format("grid CSV row '{}' has the wrong width", line));
    for (int i = 0; i < dim; ++i) buffer[i] = static_cast<std::int32_t>(ParseDouble(cells[coord_cols[i]], "grid"));
    points.emplace_back(std::span<const std::int32_t>(buffer));
    max_norm = std::max(max_norm, l1_norm(points.back()));
    values.push_back(ParseDouble(cells[proportion_col], "grid"));
  }
  return ProportionField(dim, std::move(points), std::move(values), l1_radius ? l1_radius : max_norm);
}

std::vector<SlicePoint> read_slice_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("slice CSV is empty");
  const std::vector<std::string> header = SplitCsv(line);
  const std::size_t x_col = ColumnIndex(header, "x_scaled", "slice");
  const std::size_t p_col = ColumnIndex(header, "proportion", "slice");
  std::vector<SlicePoint> points;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = SplitCsv(line);
    if (cells.size() != header.size()) throw ConfigError(fmt::format("slice CSV row '{}' has the wrong width", line));
    points.push_back({ParseDouble(cells[x_col], "slice"), ParseDouble(cells[p_col], "slice")});
  }
  return points;
}

}  // namespace ipfpp
