#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "ns2d/classify.hpp"
#include "ns2d/error.hpp"
#include "ns2d/field_io.hpp"
#include "ns2d/fields.hpp"
#include "ns2d/report_json.hpp"
#include "recipe.hpp"
#include "verify.hpp"

namespace ns2d::cli {

using nlohmann::json;

namespace {

void require_output_dir(const RunConfig& c) {
  if (c.out.empty()) throw ConfigError("no output directory given (--out)");
  if (!std::filesystem::is_directory(c.out)) throw IoError("output directory " + c.out.string() + " does not exist");
}

json with_config(const RunConfig& c, json body) {
  json j = {{"config", c}};
  j.update(body);
  return j;
}

}  // namespace

RealField initial_field(const RunConfig& c) {
  if (!c.initial_file.empty()) {
    if (!c.recipe.empty()) throw ConfigError("set either initial_data or initial_file, not both");
    RealField w = read_binary(c.initial_file);
    if (!(w.grid() == c.grid())) throw ConfigError("initial_file grid differs from grid.n / grid.half_width");
    return w;
  }
  if (c.recipe.empty()) throw ConfigError("no initial data (initial_data or initial_file)");
  return evaluate_recipe(c.grid(), parse_recipe(c.recipe));
}

//==============================================================================
// simulate
//==============================================================================

int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_output_dir(c);
  const RealField w0 = initial_field(c);
  c.sim.validate(w0.grid());
  const Trajectory traj = run(w0, c.sim);

  write_trajectory_csv(c.out / "trajectory.csv", traj);
  if (c.sim.snapshot_every > 0) {
    std::filesystem::create_directories(c.out / "snapshots");
    write_snapshots(c.out / "snapshots", traj);
  }
  json summary = {{"records", traj.records().size()},
                  {"initial", traj.records().front()},
                  {"final", traj.records().back()}};
  // the monitors need a few records; very short runs only report the end points
  if (traj.records().size() >= 3) summary["conservation"] = monitor_conservation(traj);
  if (traj.records().size() >= 2 && std::abs(traj.records().front().moments.alpha) <= 1e-12) {
    summary["energy"] = energy_monotonicity(traj);
  }
  write_json(c.out / "summary.json", with_config(c, summary));
  out << "wrote " << traj.records().size() << " records to " << (c.out / "trajectory.csv").string() << '\n';
  return kPass;
}

//==============================================================================
// verify
//==============================================================================

int cmd_verify(const RunConfig& c, const std::string& suite, const std::string& format, std::ostream& out,
               std::ostream& err) {
  if (format != "table" && format != "json" && format != "csv") throw ConfigError("unknown format '" + format + "'");
  if (!c.out.empty()) require_output_dir(c);
  const auto results = run_suite(suite, c.grid(), c.seed);
  bool pass = true;
  for (const auto& r : results) pass = pass && r.pass;

  const json report = with_config(c, {{"suite", suite}, {"pass", pass}, {"checks", results}});
  if (format == "json") {
    out << report.dump(2) << '\n';
  } else if (format == "csv") {
    out << "suite,check,measured,expected,relation,pass\n" << std::setprecision(17);
    for (const auto& r : results) {
      out << r.suite << ',' << r.name << ',' << r.measured << ',' << r.expected << ',' << r.relation << ','
          << (r.pass ? 1 : 0) << '\n';
    }
  } else {
    print_table(out, results);
  }
  if (!c.out.empty()) write_json(c.out / "verify.json", report);
  for (const auto& r : results) {
    if (!r.pass) err << "FAILED " << r.suite << '/' << r.name << ": measured " << r.measured << ", expected " << r.relation
                     << " with e = " << r.expected << '\n';
  }
  return pass ? kPass : kCheckFailure;
}

//==============================================================================
// classify
//==============================================================================

SimConfig classification_settings(const RunConfig& c, const Grid& grid) {
  SimConfig s = c.sim;
  if (!c.is_set("sim.tau_end")) s.tau_end = 34.0;
  if (!c.is_set("sim.dt")) s.dt = std::min(0.025, 0.9 * SimConfig::max_stable_dt(grid, s.dealias));
  if (!c.is_set("sim.record_every")) s.record_every = std::max(1, static_cast<int>(std::lround(0.05 / s.dt)));
  if (!c.is_set("sim.weight_m")) s.weight_m = 4.0;
  if (!c.is_set("sim.snapshot_every")) s.snapshot_every = 0;
  return s;
}

int cmd_classify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (!c.out.empty()) require_output_dir(c);
  const RealField w0 = initial_field(c);

  const MomentSet m = extract_moments(w0);
  const double tol = 1e-9 * std::max(1.0, lp_norm(w0, 1.0));
  const std::pair<const char*, double> conditions[] = {{"alpha", m.alpha}, {"beta1", m.beta[0]}, {"beta2", m.beta[1]}};
  bool ok = true;
  for (const auto& [name, value] : conditions) {
    if (std::abs(value) > tol) {
      err << "moment condition violated: " << name << " = " << value << " (tolerance " << tol << ")\n";
      ok = false;
    }
  }
  if (!ok) return kPrecondition;

  const RealField clean = enforce_moment_condition(w0);
  const SimConfig s = classification_settings(c, w0.grid());
  s.validate(w0.grid());
  const OptimalDecayReport report = classify_optimal_decay(clean, run(clean, s));
  RunConfig resolved = c;
  resolved.sim = s;
  const json j = with_config(resolved, {{"report", report}});
  out << j.dump(2) << '\n';
  if (!c.out.empty()) write_json(c.out / "classify.json", j);
  return kPass;
}

//==============================================================================
// export
//==============================================================================

int cmd_export(const RunConfig& c, const std::filesystem::path& path, const std::string& format, std::ostream& out,
               std::ostream&) {
  if (format != "csv" && format != "json") throw ConfigError("unknown format '" + format + "'");
  if (!std::filesystem::exists(path)) throw IoError("trajectory " + path.string() + " does not exist");
  if (!c.out.empty()) require_output_dir(c);
  const Trajectory traj = read_trajectory_csv(path, c.grid(), c.sim.weight_m);

  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out / ("export." + format));
    if (!file) throw IoError("cannot write into " + c.out.string());
  }
  std::ostream& os = c.out.empty() ? out : file;

  // |omega(t)|_p = (1+t)^{-(1-1/p)} |w|_p and |u(t)|_2 = |v|_2 at t = e^tau - 1
  if (format == "csv") {
    os << "tau,t,alpha,beta1,beta2,gamma1,gamma2,gamma3,l1,l2,wm_norm,v_l2,omega_l1,sqrt_t_omega_l2,u_l2\n"
       << std::setprecision(17);
    for (const auto& r : traj.records()) {
      const double t = std::expm1(r.tau);
      const auto& m = r.moments;
      os << r.tau << ',' << t << ',' << m.alpha << ',' << m.beta[0] << ',' << m.beta[1] << ',' << m.gamma[0] << ','
         << m.gamma[1] << ',' << m.gamma[2] << ',' << r.l1 << ',' << r.l2 << ',' << r.wm_norm << ',' << r.v_l2 << ','
         << r.l1 << ',' << std::sqrt(t / (1.0 + t)) * r.l2 << ',' << r.v_l2 << '\n';
    }
  } else {
    json rows = json::array();
    for (const auto& r : traj.records()) {
      const double t = std::expm1(r.tau);
      json row = r;
      row["t"] = t;
      row["omega_l1"] = r.l1;
      row["sqrt_t_omega_l2"] = std::sqrt(t / (1.0 + t)) * r.l2;
      row["u_l2"] = r.v_l2;
      rows.push_back(row);
    }
    os << with_config(c, {{"trajectory", path.string()}, {"records", rows}}).dump(2) << '\n';
  }
  if (!os) throw IoError("export write failed");
  return kPass;
}

}  // namespace ns2d::cli
