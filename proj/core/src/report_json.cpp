#include "ns2d/report_json.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "ns2d/field_io.hpp"

namespace ns2d {

using nlohmann::json;

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

void to_json(json& j, const Grid& g) { j = {{"n", g.n()}, {"half_width", g.half_width()}}; }

void to_json(json& j, const SimConfig& c) {
  j = {{"dt", c.dt},
       {"tau_end", c.tau_end},
       {"record_every", c.record_every},
       {"snapshot_every", c.snapshot_every},
       {"dealias", c.dealias},
       {"hybrid_velocity", c.hybrid_velocity},
       {"weight_m", c.weight_m}};
}

void to_json(json& j, const MomentSet& m) {
  j = {{"alpha", m.alpha}, {"beta", m.beta}, {"gamma", m.gamma}};
}

void to_json(json& j, const DecayFit& f) {
  j = {{"tau_lo", f.tau_lo},
       {"tau_hi", f.tau_hi},
       {"rate", number(f.rate)},
       {"amplitude", number(f.amplitude)},
       {"residual", number(f.residual)},
       {"samples", f.samples}};
}

void to_json(json& j, const TrajectoryRecord& r) {
  j = {{"tau", r.tau}, {"moments", r.moments}, {"l1", r.l1},    {"l2", r.l2},
       {"wm_norm", r.wm_norm}, {"v_l2", r.v_l2}};
}

void to_json(json& j, const HlsReport& r) {
  j = json::object();
  j["entries"] = json::array();
  for (const auto& e : r.entries) {
    j["entries"].push_back({{"pair", {e.p, e.q}},
                            {"ratio", number(e.hls_ratio)},
                            {"interpolation_ratio", number(e.interpolation_ratio)},
                            {"tolerance_flag", !std::isfinite(e.hls_ratio)}});
  }
  j["gradient"] = {{"pair", {2.0, 2.0}}, {"ratio", number(r.gradient_ratio)}, {"tolerance_flag", r.gradient_flag}};
  j["degenerate"] = r.degenerate;
}

void to_json(json& j, const SgestimResult& r) {
  j = {{"fitted_rate", number(r.worst.rate)}, {"bound", r.bound}, {"pass", r.pass}, {"worst", r.worst},
       {"members", r.fits.size()}};
}

void to_json(json& j, const ConservationReport& r) {
  j = {{"alpha_drift", r.alpha_drift}, {"beta_error", r.beta_error}, {"gamma1_error", r.gamma1_error},
       {"alpha_ok", r.alpha_ok},       {"beta_ok", r.beta_ok},       {"gamma1_ok", r.gamma1_ok},
       {"pass", r.pass()}};
}

void to_json(json& j, const EnergyReport& r) {
  j = {{"monotone", r.monotone},
       {"max_increase", r.max_increase},
       {"identity_error", number(r.identity_error)},
       {"mean_zero", r.mean_zero}};
}

void to_json(json& j, const SecularReport& r) {
  j = {{"tau_lo", r.tau_lo},
       {"tau_hi", r.tau_hi},
       {"b", r.b},
       {"slope2", r.slope2},
       {"predicted2", r.predicted2},
       {"slope3", r.slope3},
       {"predicted3", r.predicted3},
       {"secular_residual2", r.secular_residual2},
       {"exponential_residual2", r.exponential_residual2},
       {"contaminated", r.contaminated}};
}

void to_json(json& j, const VelocityIntegrabilityReport& r) {
  j = {{"mass_free", r.mass_free},
       {"first_moments_free", r.first_moments_free},
       {"quadratic_moments_free", r.quadratic_moments_free},
       {"v_in_L2", r.v_in_L2},
       {"v_in_L1", r.v_in_L1},
       {"weighted_v_in_L1", r.weighted_v_in_L1},
       {"gamma1", r.gamma1},
       {"xi2_v1", r.xi2_v1},
       {"xi1_v2", r.xi1_v2},
       {"gamma1_identity_ok", r.gamma1_identity_ok}};
}

const char* to_string(Classification c) {
  return c == Classification::OnStableManifold ? "on_Ws" : "off_Ws";
}

void to_json(json& j, const OptimalDecayReport& r) {
  j = {{"classification", to_string(r.classification)},
       {"consistent", r.consistent},
       {"b_moments", r.b_moments},
       {"c_moments", r.c_moments},
       {"gamma0", r.gamma0},
       {"tail_fraction", number(r.tail_fraction)},
       {"weighted_norm", {{"fit", r.weighted_norm_fit}, {"decays", r.weighted_norm_decays}}},
       {"energy", {{"fit", r.energy_fit}, {"decays", r.energy_decays}}},
       {"moments", {{"residuals", r.moment_residuals},
                    {"tolerance", r.moment_tolerance},
                    {"hold", r.moment_conditions}}}};
}

void write_sgestim_csv(const std::filesystem::path& path, const SgestimResult& r) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "m,n,tau,norm,member\n" << std::setprecision(17);
  for (const auto& row : r.rows) {
    out << row.m << ',' << row.n << ',' << row.tau << ',' << row.norm << ',' << row.member << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void append_decay_fit_csv(const std::filesystem::path& path, const std::string& observable, const DecayFit& fit) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot open " + path.string() + " for appending");
  if (fresh) out << "observable,tau_lo,tau_hi,rate,residual\n";
  out << std::setprecision(17) << observable << ',' << fit.tau_lo << ',' << fit.tau_hi << ',' << fit.rate << ','
      << fit.residual << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace ns2d
