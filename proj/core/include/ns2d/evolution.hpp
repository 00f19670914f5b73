/// @file evolution.hpp
/// @brief Time integration of the vorticity equation in self-similar variables,
/// dw/dtau = Lw - v.grad w, with conservation and energy monitors.
#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "ns2d/biot_savart.hpp"
#include "ns2d/field.hpp"
#include "ns2d/moments.hpp"

namespace ns2d {

struct SimConfig {
  double dt = 0.005;
  double tau_end = 6.0;
  int record_every = 20;
  bool dealias = true;
  bool hybrid_velocity = true;
  int snapshot_every = 0;  ///< 0 disables snapshots
  double weight_m = 4.0;   ///< exponent of the recorded weighted norm

  /// Largest step accepted by validate() on this grid.
  static double max_stable_dt(const Grid& grid, bool dealias);
  /// Throws PreconditionError on invalid settings.
  void validate(const Grid& grid) const;
};

struct TrajectoryRecord {
  double tau = 0.0;
  MomentSet moments;
  double l1 = 0.0;
  double l2 = 0.0;
  double wm_norm = 0.0;
  double v_l2 = 0.0;
  /// Box integrals of v1^2, v2^2 and v1 v2.
  double v11 = 0.0, v22 = 0.0, v12 = 0.0;
  /// wm_norm and v_l2 of w - alpha G - beta.F; immune to roundoff left in the slow modes.
  double wm_norm_fast = 0.0;
  double v_l2_fast = 0.0;
};

struct Snapshot {
  double tau;
  RealField w;
};

class Trajectory {
 public:
  Trajectory(const Grid& grid, double weight_m) : grid_(grid), weight_m_(weight_m) {}

  const Grid& grid() const { return grid_; }
  double weight_m() const { return weight_m_; }
  const std::vector<TrajectoryRecord>& records() const { return records_; }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }
  std::vector<double> times() const;

  /// Throws PreconditionError unless tau increases and all norms are finite.
  void append(const TrajectoryRecord& record);
  void append_snapshot(double tau, RealField w);

 private:
  Grid grid_;
  double weight_m_;
  std::vector<TrajectoryRecord> records_;
  std::vector<Snapshot> snapshots_;
};

/// Diagnostics recorded for one field.
TrajectoryRecord measure(const RealField& w, double tau, double weight_m, bool hybrid = true);

/// Right-hand side Lap w + div((xi/2 - v) w), the conservative form of Lw - v.grad w.
RealField rhs(const RealField& w, bool hybrid = true, bool dealias = true);

/// Integrating-factor RK4 stepper. Not safe for concurrent use of one instance.
class Integrator {
 public:
  Integrator(const Grid& grid, const SimConfig& config);
  ~Integrator();
  Integrator(const Integrator&) = delete;
  Integrator& operator=(const Integrator&) = delete;

  RealField step(const RealField& w, double dt);
  /// Throws BlowupError if L2 or weighted norms exceed 1e6 or become non-finite.
  Trajectory run(const RealField& w0);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

RealField step(const RealField& w, double dt, const SimConfig& config = {});
Trajectory run(const RealField& w0, const SimConfig& config);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
/// Reads the columns written by write_trajectory_csv; velocity products are not stored and read back as 0.
Trajectory read_trajectory_csv(const std::filesystem::path& path, const Grid& grid, double weight_m);
/// Writes snap_<millitau>.bin for every snapshot.
void write_snapshots(const std::filesystem::path& dir, const Trajectory& traj);

struct UnscaledField {
  RealField omega;  ///< on the grid of half width L sqrt(1 + t)
  VectorField u;
  double t;
};

/// omega(x, t) = w(x / sqrt(1+t), log(1+t)) / (1+t), u = v / sqrt(1+t), t = e^tau - 1.
UnscaledField unscale(const RealField& w, double tau);

struct ConservationReport {
  double alpha_drift = 0.0;            ///< max |alpha - alpha(0)|
  std::array<double, 2> beta_error{};  ///< max |beta_i - beta_i(0) e^{-tau/2}| / (1 + |beta_i(0)|)
  double gamma1_error = 0.0;           ///< max |gamma1 - gamma1(0) e^{-tau}|
  bool alpha_ok = false;
  bool beta_ok = false;
  bool gamma1_ok = false;
  bool pass() const { return alpha_ok && beta_ok && gamma1_ok; }
};

/// Tolerances: alpha 1e-9, beta 1e-7 relative, gamma1 1e-6.
ConservationReport monitor_conservation(const Trajectory& traj);

/// Norm of w(tau) - S(tau) w0 + int_0^tau e^{-(tau-s)/2} div S(tau-s)(v w)(s) ds, trapezoid in s over
/// the stored snapshots up to tau. Requires snapshots at 0 and tau and at least 3 in between.
double duhamel_residual(const Trajectory& traj, double tau);

struct EnergyReport {
  bool monotone = true;
  double max_increase = 0.0;  ///< largest |v|_2 increase between consecutive records
  /// Relative mismatch of |v(a)|^2 - |v(b)|^2 against 2 int_a^b |grad v|^2 over windows of ~1 tau.
  double identity_error = 0.0;
  bool mean_zero = true;
};

EnergyReport energy_monotonicity(const Trajectory& traj);

}  // namespace ns2d
