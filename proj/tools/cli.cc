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


#include "cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "ipfpp/coupling.h"
#include "ipfpp/errors.h"
#include "ipfpp/experiments.h"
#include "ipfpp/experiments_io.h"
#include "ipfpp/fpp.h"
#include "ipfpp/invasion.h"

namespace ipfpp::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Shared {
  int dim = 2;
  std::string region = "l1:100";
  std::uint64_t seed = 0;
  double epsilon_half = 0.01;
  std::optional<double> epsilon;
  std::optional<double> k;
  std::string output_dir;

  double EpsilonHalf() const { return epsilon ? *epsilon / 2.0 : epsilon_half; }
};

void AddRegionFlags(CLI::App* app, Shared& s) {
  app->add_option("--dim", s.dim, "Lattice dimension")->check(CLI::Range(1, kMaxDimension))->capture_default_str();
  app->add_option("--region", s.region, "Region: l1:R, lopsided:R or linf:R")->capture_default_str();
}

void AddParamFlags(CLI::App* app, Shared& s) {
  auto* half = app->add_option("--epsilon-half", s.epsilon_half, "epsilon/2 used in K = ln|E| / delta(|E|, epsilon/2)")
                   ->capture_default_str();
  auto* full = app->add_option("--epsilon", s.epsilon, "Alternative to --epsilon-half: sets epsilon/2 = value/2");
  half->excludes(full);
  full->excludes(half);
  app->add_option("--k", s.k, "Override K (outputs are tagged as non-theorem K)");
}

void AddSeedFlag(CLI::App* app, Shared& s) {
  app->add_option("--seed", s.seed, "Master seed")->capture_default_str();
}

void AddOutputDir(CLI::App* app, Shared& s) {
  const char* env = std::getenv(kOutputDirEnv);
  s.output_dir = env && *env ? env : ".";
  app->add_option("--output-dir", s.output_dir,
                  fmt::format("Directory for written files (default: ${} or the working directory)", kOutputDirEnv));
}

// Declared for --help only; the file is expanded into flags before parsing.
void AddConfig(CLI::App* app) {
  app->add_option("--config", "Read flag values from a flat TOML file; flags on the command line win");
}

// Replaces "--config FILE" with the file's keys as "--key=value" flags placed
// right after the subcommand name, so that later command-line flags win.
std::vector<std::string> ExpandConfig(std::vector<std::string> args) {
  std::optional<std::string> file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].starts_with("--config=")) {
      file = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!file) return args;
  const auto sub = std::find_if(args.begin() + 1, args.end(), [](const std::string& a) { return !a.starts_with("-"); });
  if (sub == args.end()) throw CLI::ValidationError("--config", "needs a subcommand");
  std::vector<std::string> flags;
  for (const CLI::ConfigItem& item : CLI::ConfigTOML().from_file(*file)) {
    if (!item.parents.empty() && item.parents != std::vector<std::string>{*sub}) continue;
    if (item.name == "++" || item.name == "--") continue;  // section markers
    std::string flag = "--" + item.name;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) flag += (i == 0 ? "=" : ",") + item.inputs[i];
    flags.push_back(flag);
  }
  args.insert(sub + 1, flags.begin(), flags.end());
  return args;
}

// Writes to the named file, or to `fallback` for "" and "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError(fmt::format("cannot open '{}' for writing", path));
    stream_ = file_.get();
  }
  bool is_file() const { return file_ != nullptr; }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open '{}' for reading", path));
  return in;
}

std::string FileIn(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

json CoordsJson(const Vertex& v) { return json(std::vector<std::int32_t>(v.coords().begin(), v.coords().end())); }

std::string CoordsCsv(const Vertex& v) {
  std::string out;
  for (std::int32_t c : v.coords()) out += fmt::format("{},", c);
  return out;
}

std::string HeaderCsv(int dim) {
  std::string out;
  for (const std::string& c : coordinate_columns(dim)) out += c + ",";
  return out;
}

Region BuildRegion(const Shared& s) { return build_region(parse_region_kind(s.region), s.dim); }

// ---- params ----------------------------------------------------------------

void RunParams(const Shared& s, bool as_json, std::ostream& out) {
  const Region region = BuildRegion(s);
  const DerivedParams p = derive_params(region, s.EpsilonHalf(), s.k);
  if (as_json) {
    json j = params_json(p);
    j["region"] = region.description();
    j["dimension"] = region.dim();
    j["vertex_count"] = region.vertex_count();
    out << j.dump(2) << '\n';
    return;
  }
  fmt::print(out, "region={} dim={}\n", region.description(), region.dim());
  fmt::print(out, "vertex_count={}\n", region.vertex_count());
  fmt::print(out, "edge_count={}\n", p.edge_count);
  fmt::print(out, "epsilon_half={}\n", p.epsilon_half);
  fmt::print(out, "delta={}\n", p.delta);
  fmt::print(out, "K={}\n", p.k);
  fmt::print(out, "k_policy={}\n", p.k_policy);
}

// ---- invade ----------------------------------------------------------------

void RunInvade(const Shared& s, std::uint64_t trial, const std::string& path, std::ostream& out) {
  const Region region = BuildRegion(s);
  const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(s.seed, trial), region);
  const InvasionRecord rec = invade(w, region);
  Sink sink(path, out);
  std::ostream& os = sink.stream();
  os << json{{"kind", "meta"},
             {"region", region.description()},
             {"dimension", region.dim()},
             {"master_seed", s.seed},
             {"trial_index", trial},
             {"steps", rec.steps()},
             {"first_boundary_vertex", CoordsJson(region.vertex(rec.first_boundary_vertex))},
             {"invasion_proxy", kInvasionProxyTag}}
            .dump()
     << '\n';
  std::size_t next_vertex = 1;  // vertices[0] is the origin
  os << json{{"step", 0}, {"kind", "vertex"}, {"coords", CoordsJson(region.vertex(0))}}.dump() << '\n';
  for (const InvadedEdge& ie : rec.edges) {
    const Edge& e = region.edge(ie.edge);
    os << json{{"step", ie.step}, {"kind", "edge"}, {"coords", {CoordsJson(e.lo), CoordsJson(e.hi)}}, {"weight", ie.weight}}
              .dump()
       << '\n';
    if (next_vertex < rec.vertices.size() && rec.vertices[next_vertex].step == ie.step) {
      const InvadedVertex& iv = rec.vertices[next_vertex++];
      os << json{{"step", iv.step}, {"kind", "vertex"}, {"coords", CoordsJson(region.vertex(iv.vertex))}}.dump() << '\n';
    }
  }
}

// ---- fpp -------------------------------------------------------------------

void RunFpp(const Shared& s, std::uint64_t trial, const std::string& path, std::ostream& out, std::ostream& err) {
  const Region region = BuildRegion(s);
  const DerivedParams p = derive_params(region, s.EpsilonHalf(), s.k);
  const FppResult res = dijkstra(Configuration(s.seed, trial), region, p.k);
  Sink sink(path, out);
  std::ostream& os = sink.stream();
  os << HeaderCsv(region.dim()) << "log_value\n";
  for (const SettledVertex& v : res.settled) {
    os << CoordsCsv(region.vertex(v.vertex)) << fmt::format("{:.17g}", v.time.log_value()) << '\n';
  }
  std::ostream& info = sink.is_file() ? out : err;
  fmt::print(info, "boundary_time={:.17g}\n", res.boundary_time.log_value());
  fmt::print(info, "first_boundary_vertex={}\n", region.vertex(res.first_boundary_vertex).ToString());
  fmt::print(info, "settled={}\n", res.settled.size());
  fmt::print(info, "K={} k_policy={}\n", p.k, p.k_policy);
}

// ---- couple ----------------------------------------------------------------

int RunCouple(const Shared& s, std::uint64_t trials, std::int64_t inner_r, const std::string& path, std::ostream& out,
              std::ostream& err) {
  const Region region = BuildRegion(s);
  const DerivedParams p = derive_params(region, s.EpsilonHalf(), s.k);
  CouplingParams params = CouplingParams::Theorem(p.edge_count, 2.0 * p.epsilon_half);
  params.k = p.k;
  params.theorem_k = p.theorem_k;

  Sink sink(path, out);
  std::ostream& os = sink.stream();
  os << "trial_index,t_delta,order_agreement,ip_contains_fpp,fpp_contains_ip,late_invasion,min_gap,K,order_prefix,"
        "settled,invaded\n";
  EventCounts counts;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const EdgeWeights w = EdgeWeights::FromConfiguration(Configuration(s.seed, t), region);
    const CoupledTrial trial = run_coupled_trial(w, region, inner_r, params);
    const CoupledOutcome& o = trial.outcome;
    os << fmt::format("{},{:d},{:d},{:d},{:d},{:d},{},{},{:d},{},{}\n", t, o.t_delta_holds, o.order_agreement,
                      o.ip_contains_fpp, o.fpp_contains_ip_on_inner, o.late_invasion_in_inner, o.min_gap, params.k,
                      o.order_prefix, o.diagnostics.settled_count, o.diagnostics.invaded_count);
    if (!hard_implication_violations(o).empty()) {
      const std::string dump_path = FileIn(s.output_dir, fmt::format("violation_{}_{}.json", s.seed, t));
      std::ofstream(dump_path) << dump_trial(trial, region, w, TrialId{s.seed, t}) << '\n';
      fmt::print(err, "hard implication failed in trial {}; dump written to {}\n", t, dump_path);
      return kExitInvariant;
    }
    ++counts.trials;
    counts.t_delta += o.t_delta_holds;
    counts.ip_contains_fpp += o.ip_contains_fpp;
    counts.fpp_contains_ip += o.fpp_contains_ip_on_inner;
    counts.order_agreement += o.order_agreement;
    counts.order_prefix += o.order_prefix;
    counts.late_invasion += o.late_invasion_in_inner;
  }
  std::ostream& info = sink.is_file() ? out : err;
  auto freq = [&](std::uint64_t c) { return static_cast<double>(c) / static_cast<double>(counts.trials); };
  fmt::print(info, "trials={} K={} k_policy={} gap_delta={}\n", counts.trials, params.k, p.k_policy, params.delta);
  fmt::print(info, "t_delta={} ip_contains_fpp={} fpp_contains_ip={} order_agreement={} order_prefix={} late_invasion={}\n",
             freq(counts.t_delta), freq(counts.ip_contains_fpp), freq(counts.fpp_contains_ip),
             freq(counts.order_agreement), freq(counts.order_prefix), freq(counts.late_invasion));
  return kExitOk;
}

// ---- experiment ------------------------------------------------------------

int RunExperiment(const Shared& s, ExperimentPlan plan, const std::string& name, std::ostream& out, std::ostream& err) {
  plan.dimension = s.dim;
  plan.region = s.region;
  plan.epsilon_half = s.EpsilonHalf();
  plan.k_override = s.k;
  plan.master_seed = s.seed;
  ExperimentResult result;
  try {
    result = run_experiment(plan);
  } catch (const InvariantViolation& e) {
    const std::string dump_path = FileIn(s.output_dir, name + "_violation.json");
    std::ofstream(dump_path) << e.what() << '\n';
    fmt::print(err, "hard implication failed; dump written to {}\n", dump_path);
    return kExitInvariant;
  }
  const std::string grid_path = FileIn(s.output_dir, name + "_grid.csv");
  {
    Sink grid(grid_path, out);
    write_grid_csv(grid.stream(), result.grid);
  }
  const std::string summary_path = FileIn(s.output_dir, name + "_summary.json");
  Sink(summary_path, out).stream() << summary_json(plan, result).dump(2) << '\n';
  fmt::print(out, "grid={}\nsummary={}\n", grid_path, summary_path);
  const Region& region = *result.grid.region;
  if (region.dim() == 2 && region.is_l1_ball()) {
    const std::string slice_path = FileIn(s.output_dir, name + "_slice.csv");
    const auto points = slice(ProportionField::FromGrid(result.grid));
    write_slice_csv(Sink(slice_path, out).stream(), points);
    fmt::print(out, "slice={}\n", slice_path);
  }
  fmt::print(out, "trials={} K={} k_policy={} wall_seconds={}\n", result.events.trials, result.params.k,
             result.params.k_policy, result.wall_seconds);
  return kExitOk;
}

// ---- slice / fit / levelcurve ----------------------------------------------

ProportionField ReadGrid(const std::string& path, std::optional<std::int64_t> radius) {
  std::ifstream in = OpenInput(path);
  return read_grid_csv(in, radius);
}

void RunSlice(const std::string& grid, std::optional<std::int64_t> radius, const std::string& path, std::ostream& out) {
  const auto points = slice(ReadGrid(grid, radius));
  Sink sink(path, out);
  write_slice_csv(sink.stream(), points);
}

void RunFit(const std::string& slice_path, const std::string& grid, std::optional<std::int64_t> radius,
            const std::string& path, std::ostream& out) {
  std::vector<SlicePoint> points;
  if (!slice_path.empty()) {
    std::ifstream in = OpenInput(slice_path);
    points = read_slice_csv(in);
  } else {
    points = slice(ReadGrid(grid, radius));
  }
  Sink sink(path, out);
  sink.stream() << fit_json(fit_alpha(points)).dump(2) << '\n';
}

void RunLevelCurve(const std::string& grid, double level, const std::string& path, std::ostream& out,
                   std::ostream& err) {
  const LevelCurve curve = level_curve(ReadGrid(grid, std::nullopt), level);
  Sink sink(path, out);
  write_level_curve_csv(sink.stream(), curve);
  fmt::print(sink.is_file() ? out : err, "points={} isotropy_ratio={}\n", curve.points.size(), curve.isotropy_ratio);
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invasion percolation and log-uniform first passage percolation on Z^d", "ipfpp"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  Shared s;
  std::uint64_t trial = 0;
  std::uint64_t trials = 1000;
  std::int64_t inner_r = 1;
  std::string out_path, grid_path, slice_path, name = "experiment";
  std::optional<std::int64_t> radius;
  double level = 0.1;
  bool as_json = false;
  ExperimentPlan plan;

  auto* params = app.add_subcommand("params", "Print |E|, delta and K for a region");
  AddRegionFlags(params, s);
  AddParamFlags(params, s);
  params->add_flag("--json", as_json, "Print JSON instead of key=value lines");
  AddConfig(params);

  auto* inv = app.add_subcommand("invade", "Trace one invasion run as JSON lines");
  AddRegionFlags(inv, s);
  AddSeedFlag(inv, s);
  inv->add_option("--trial", trial, "Trial index")->capture_default_str();
  inv->add_option("--out", out_path, "Output file (default: stdout)");
  AddConfig(inv);

  auto* fpp = app.add_subcommand("fpp", "Settled vertices of one passage-time run as CSV");
  AddRegionFlags(fpp, s);
  AddParamFlags(fpp, s);
  AddSeedFlag(fpp, s);
  fpp->add_option("--trial", trial, "Trial index")->capture_default_str();
  fpp->add_option("--out", out_path, "Output file (default: stdout)");
  AddConfig(fpp);

  auto* couple = app.add_subcommand("couple", "Run coupled trials and print one CSV row per trial");
  AddRegionFlags(couple, s);
  AddParamFlags(couple, s);
  AddSeedFlag(couple, s);
  AddOutputDir(couple, s);
  couple->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber)->capture_default_str();
  couple->add_option("--inner-r", inner_r, "Inner l1 radius for the containment check")->capture_default_str();
  couple->add_option("--out", out_path, "Per-trial CSV (default: stdout)");
  AddConfig(couple);

  auto* exp = app.add_subcommand("experiment", "Estimate P[T(0,x) < T(0,boundary)] on every vertex");
  AddRegionFlags(exp, s);
  AddParamFlags(exp, s);
  AddSeedFlag(exp, s);
  AddOutputDir(exp, s);
  exp->add_option("--trials", plan.trials, "Number of trials")->check(CLI::PositiveNumber)->capture_default_str();
  exp->add_option("--workers", plan.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  exp->add_option("--inner-r", plan.inner_radius, "Inner l1 radius for coupling statistics")->capture_default_str();
  exp->add_flag("--coupling-stats", plan.coupling_stats, "Also run the invasion and tally coupling events");
  exp->add_option("--name", name, "Prefix of the written files")->capture_default_str();
  AddConfig(exp);

  auto* sl = app.add_subcommand("slice", "Extract the horizontal slice (k/R, P(k,0)) from a grid CSV");
  sl->add_option("--grid", grid_path, "Grid CSV")->required();
  sl->add_option("--radius", radius, "l1 radius of the grid (default: largest |x|+|y| in the file)");
  sl->add_option("--out", out_path, "Output file (default: stdout)");

  auto* fit = app.add_subcommand("fit", "Fit log(1-P) = alpha log|x| on a slice");
  auto* fit_slice = fit->add_option("--slice", slice_path, "Slice CSV");
  auto* fit_grid = fit->add_option("--grid", grid_path, "Grid CSV to slice first");
  fit_slice->excludes(fit_grid);
  fit_grid->excludes(fit_slice);
  fit->add_option("--radius", radius, "l1 radius of the grid (default: largest |x|+|y| in the file)");
  fit->add_option("--out", out_path, "Output file (default: stdout)");

  auto* lc = app.add_subcommand("levelcurve", "Level set of a planar grid as x,y points");
  lc->add_option("--grid", grid_path, "Grid CSV")->required();
  lc->add_option("--level", level, "Level")->capture_default_str();
  lc->add_option("--out", out_path, "Output file (default: stdout)");

  try {
    std::vector<std::string> args = ExpandConfig(std::vector<std::string>(argv, argv + argc));
    args.erase(args.begin());
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (*params) RunParams(s, as_json, out);
    if (*inv) RunInvade(s, trial, out_path, out);
    if (*fpp) RunFpp(s, trial, out_path, out, err);
    if (*couple) return RunCouple(s, trials, inner_r, out_path, out, err);
    if (*exp) return RunExperiment(s, plan, name, out, err);
    if (*sl) RunSlice(grid_path, radius, out_path, out);
    if (*fit) {
      if (slice_path.empty() && grid_path.empty()) {
        err << "fit needs --slice or --grid\n";
        return kExitUsage;
      }
      RunFit(slice_path, grid_path, radius, out_path, out);
    }
    if (*lc) RunLevelCurve(grid_path, level, out_path, out, err);
  } catch (const InvariantViolation& e) {
    err << "hard implication failed:\n" << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ipfpp"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ipfpp::cli
