#include "ns2d/evolution.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>

#include "fft_plan.hpp"
#include "ns2d/error.hpp"
#include "ns2d/field_io.hpp"
#include "ns2d/fields.hpp"
#include "ns2d/spectral_operator.hpp"

namespace ns2d {

using cvec = std::vector<std::complex<double>>;

//==============================================================================
// Configuration and trajectory container
//==============================================================================

double SimConfig::max_stable_dt(const Grid& grid, bool dealias) {
  // RK4 covers [-2.8i, 2.8i] on the imaginary axis. The transport speed is at most
  // |xi|/2 + |v| with |v| < 1 for the small data handled here.
  const double speed = std::numbers::sqrt2 * grid.half_width() / 2.0 + 1.0;
  const double kmax = dealias ? std::numbers::pi * (grid.n() / 3) / grid.half_width() : grid.max_wavenumber();
  return 2.8 / (speed * kmax);
}

void SimConfig::validate(const Grid& grid) const {
  require(std::isfinite(dt) && dt > 0.0, "dt must be positive");
  require(std::isfinite(tau_end) && tau_end > 0.0, "tau_end must be positive");
  require(record_every >= 1, "record_every must be at least 1");
  require(snapshot_every >= 0, "snapshot_every must be non-negative");
  require(weight_m >= 0.0 && weight_m <= 6.0, "weight_m must lie in [0, 6]");
  const double limit = max_stable_dt(grid, dealias);
  require(dt <= limit, "dt " + std::to_string(dt) + " exceeds the stability limit " + std::to_string(limit));
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(records_.size());
  for (const auto& r : records_) t.push_back(r.tau);
  return t;
}

void Trajectory::append(const TrajectoryRecord& r) {
  require(records_.empty() || r.tau > records_.back().tau, "trajectory times must increase");
  require(std::isfinite(r.l1) && std::isfinite(r.l2) && std::isfinite(r.wm_norm) && std::isfinite(r.v_l2),
          "trajectory norms must be finite");
  records_.push_back(r);
}

void Trajectory::append_snapshot(double tau, RealField w) {
  require(snapshots_.empty() || tau > snapshots_.back().tau, "snapshot times must increase");
  snapshots_.push_back({tau, std::move(w)});
}

TrajectoryRecord measure(const RealField& w, double tau, double weight_m, bool hybrid) {
  TrajectoryRecord r;
  r.tau = tau;
  r.moments = extract_moments(w);
  r.l1 = lp_norm(w, 1.0);
  r.l2 = lp_norm(w, 2.0);
  {
    WarningCapture quiet;  // truncation of high weights is expected on long runs
    r.wm_norm = weighted_norm(w, WeightSpec(weight_m));
  }
  const VectorField v = hybrid ? hybrid_velocity(w) : velocity_from_vorticity(w);

  const auto family = gaussian_family(w.grid());
  const auto c = r.moments.as_array();
  RealField w_fast = w;
  VectorField v_fast = v;
  for (int k = 0; k < 3; ++k) {
    w_fast.add_scaled(-c[k], family->vorticity[k]);
    v_fast.add_scaled(-c[k], family->velocity[k]);
  }
  {
    WarningCapture quiet;
    r.wm_norm_fast = weighted_norm(w_fast, WeightSpec(weight_m));
  }
  r.v_l2_fast = lp_norm(v_fast, 2.0);

  const auto a = v.v1.values();
  const auto b = v.v2.values();
  double s11 = 0, s22 = 0, s12 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s11 += a[i] * a[i];
    s22 += b[i] * b[i];
    s12 += a[i] * b[i];
  }
  const double h2 = w.grid().cell_area();
  r.v11 = s11 * h2;
  r.v22 = s22 * h2;
  r.v12 = s12 * h2;
  r.v_l2 = std::sqrt(r.v11 + r.v22);
  return r;
}

//==============================================================================
// Spectral right-hand side
//==============================================================================

namespace {

// Nonlinear and dilation part N(w) = div((xi/2 - v) w) on raw (unnormalised) half spectra.
class Nonlinearity {
 public:
  Nonlinearity(const Grid& grid, bool hybrid, bool dealias)
      : g_(grid), n_(grid.n()), nc_(grid.spectral_cols()), hybrid_(hybrid), plan_(detail::FftPlan::get(grid.n())) {
    const std::size_t ns = g_.spectral_size();
    p1_.resize(n_);
    p2_.resize(nc_);
    for (int k = 0; k < n_; ++k) p1_[k] = (k == n_ / 2) ? 0.0 : g_.wavenumber(k);
    for (int k = 0; k < nc_; ++k) p2_[k] = (k == n_ / 2) ? 0.0 : g_.wavenumber(k);
    mask_.assign(ns, 1.0);
    const int cut = dealias ? n_ / 3 : n_ / 2 - 1;
    for (int k1 = 0; k1 < n_; ++k1) {
      for (int k2 = 0; k2 < nc_; ++k2) {
        if (std::abs(g_.signed_mode(k1)) > cut || k2 > cut) mask_[k1 * nc_ + k2] = 0.0;
      }
    }
    xi_.resize(n_);
    for (int i = 0; i < n_; ++i) xi_[i] = g_.coord(i);
    if (hybrid_) {
      family_ = gaussian_family(g_);
      for (const auto& f : family_->vorticity) {
        cvec s(ns);
        plan_->forward(f.values(), s);
        family_hat_.push_back(std::move(s));
      }
    }
    w_.resize(g_.size());
    v1_.resize(g_.size());
    v2_.resize(g_.size());
    a_.resize(ns);
    b_.resize(ns);
    c_.resize(ns);
  }

  const Grid& grid() const { return g_; }

  /// out = N(w_hat); also leaves w in real space in w_ and the velocity in v1_, v2_.
  void operator()(const cvec& wh, cvec& out) {
    const double norm = 1.0 / (static_cast<double>(n_) * n_);
    const double h2 = g_.cell_area();
    c_ = wh;
    plan_->inverse_destroy(c_, w_);
    for (double& x : w_) x *= norm;

    // velocity: spectral inversion of w, or of w minus its Gaussian-family part
    const cvec* src = &wh;
    std::array<double, 6> coef{};
    if (hybrid_) {
      coef = moments_of_w(h2);
      c_ = wh;
      for (int k = 0; k < 6; ++k) {
        if (coef[k] == 0.0) continue;
        const cvec& f = family_hat_[k];
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= coef[k] * f[i];
      }
      src = &c_;
    }
    for (int k1 = 0; k1 < n_; ++k1) {
      const double q1 = p1_[k1];
      for (int k2 = 0; k2 < nc_; ++k2) {
        const double q2 = p2_[k2];
        const std::size_t i = k1 * nc_ + k2;
        const double pp = q1 * q1 + q2 * q2;
        if (pp == 0.0) {
          a_[i] = b_[i] = 0.0;
          continue;
        }
        const std::complex<double> s = (*src)[i] * (norm / pp);
        a_[i] = std::complex<double>(-s.imag() * q2, s.real() * q2);
        b_[i] = std::complex<double>(s.imag() * q1, -s.real() * q1);
      }
    }
    plan_->inverse_destroy(a_, v1_);
    plan_->inverse_destroy(b_, v2_);
    if (hybrid_) {
      for (int k = 0; k < 6; ++k) {
        if (coef[k] == 0.0) continue;
        const auto f1 = family_->velocity[k].v1.values();
        const auto f2 = family_->velocity[k].v2.values();
        for (std::size_t i = 0; i < v1_.size(); ++i) {
          v1_[i] += coef[k] * f1[i];
          v2_[i] += coef[k] * f2[i];
        }
      }
    }

    // fluxes (xi/2 - v) w, reusing the velocity buffers
    thread_local std::vector<double> f1, f2;
    f1.resize(w_.size());
    f2.resize(w_.size());
    for (int i1 = 0; i1 < n_; ++i1) {
      const double x1 = 0.5 * xi_[i1];
      for (int i2 = 0; i2 < n_; ++i2) {
        const std::size_t i = static_cast<std::size_t>(i1) * n_ + i2;
        f1[i] = (x1 - v1_[i]) * w_[i];
        f2[i] = (0.5 * xi_[i2] - v2_[i]) * w_[i];
      }
    }
    plan_->forward(f1, a_);
    plan_->forward(f2, b_);
    out.resize(a_.size());
    for (int k1 = 0; k1 < n_; ++k1) {
      const double q1 = p1_[k1];
      for (int k2 = 0; k2 < nc_; ++k2) {
        const double q2 = p2_[k2];
        const std::size_t i = k1 * nc_ + k2;
        const std::complex<double> d = q1 * a_[i] + q2 * b_[i];
        out[i] = std::complex<double>(-d.imag(), d.real()) * mask_[i];
      }
    }
  }

  std::span<const double> w() const { return w_; }

 private:
  std::array<double, 6> moments_of_w(double h2) const {
    double a = 0, b1 = 0, b2 = 0, c1 = 0, c2 = 0, c3 = 0;
    for (int i1 = 0; i1 < n_; ++i1) {
      const double x1 = xi_[i1];
      for (int i2 = 0; i2 < n_; ++i2) {
        const double x2 = xi_[i2];
        const double v = w_[static_cast<std::size_t>(i1) * n_ + i2];
        a += v;
        b1 += x1 * v;
        b2 += x2 * v;
        c1 += (x1 * x1 + x2 * x2) * v;
        c2 += (x1 * x1 - x2 * x2) * v;
        c3 += x1 * x2 * v;
      }
    }
    return {a * h2, -b1 * h2, -b2 * h2, 0.25 * (c1 - 4.0 * a) * h2, 0.25 * c2 * h2, c3 * h2};
  }

  Grid g_;
  int n_, nc_;
  bool hybrid_;
  std::shared_ptr<const detail::FftPlan> plan_;
  std::shared_ptr<const GaussianFamily> family_;
  std::vector<cvec> family_hat_;
  std::vector<double> p1_, p2_, mask_, xi_;
  std::vector<double> w_, v1_, v2_;
  cvec a_, b_, c_;
};

cvec raw_forward(const RealField& w) {
  cvec out(w.grid().spectral_size());
  detail::FftPlan::get(w.grid().n())->forward(w.values(), out);
  const int nc = w.grid().spectral_cols();
  for (int k1 = 0; k1 < w.grid().n(); ++k1) out[k1 * nc + w.grid().n() / 2] = 0.0;
  for (int k2 = 0; k2 < nc; ++k2) out[(w.grid().n() / 2) * nc + k2] = 0.0;
  return out;
}

RealField raw_inverse(const Grid& g, const cvec& wh) {
  RealField out(g);
  detail::FftPlan::get(g.n())->inverse(wh, out.values());
  out *= 1.0 / (static_cast<double>(g.n()) * g.n());
  return out;
}

std::vector<double> laplacian_symbol(const Grid& g) {
  std::vector<double> s(g.spectral_size());
  const int nc = g.spectral_cols();
  for (int k1 = 0; k1 < g.n(); ++k1) {
    const double p1 = g.wavenumber(k1);
    for (int k2 = 0; k2 < nc; ++k2) {
      const double p2 = g.wavenumber(k2);
      s[k1 * nc + k2] = p1 * p1 + p2 * p2;
    }
  }
  return s;
}

}  // namespace

RealField rhs(const RealField& w, bool hybrid, bool dealias) {
  const Grid& g = w.grid();
  Nonlinearity nl(g, hybrid, dealias);
  const cvec wh = raw_forward(w);
  cvec out;
  nl(wh, out);
  const auto lap = laplacian_symbol(g);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= lap[i] * wh[i];
  return raw_inverse(g, out);
}

//==============================================================================
// Integrator
//==============================================================================

struct Integrator::Impl {
  Impl(const Grid& grid, const SimConfig& cfg)
      : config(cfg), nl(grid, cfg.hybrid_velocity, cfg.dealias), lap(laplacian_symbol(grid)) {}

  void set_step(double dt) {
    if (dt == cached_dt) return;
    cached_dt = dt;
    e_full.resize(lap.size());
    e_half.resize(lap.size());
    for (std::size_t i = 0; i < lap.size(); ++i) {
      e_full[i] = std::exp(-lap[i] * dt);
      e_half[i] = std::exp(-0.5 * lap[i] * dt);
    }
  }

  // Lawson RK4 on the raw half spectrum.
  void advance(cvec& u, double dt) {
    set_step(dt);
    const std::size_t ns = u.size();
    k1.resize(ns);
    stage.resize(ns);
    nl(u, k1);
    for (std::size_t i = 0; i < ns; ++i) stage[i] = e_half[i] * (u[i] + 0.5 * dt * k1[i]);
    nl(stage, k2);
    for (std::size_t i = 0; i < ns; ++i) stage[i] = e_half[i] * u[i] + 0.5 * dt * k2[i];
    nl(stage, k3);
    for (std::size_t i = 0; i < ns; ++i) stage[i] = e_full[i] * u[i] + dt * e_half[i] * k3[i];
    nl(stage, k4);
    const double c = dt / 6.0;
    for (std::size_t i = 0; i < ns; ++i) {
      u[i] = e_full[i] * u[i] + c * (e_full[i] * k1[i] + 2.0 * e_half[i] * (k2[i] + k3[i]) + k4[i]);
    }
  }

  SimConfig config;
  Nonlinearity nl;
  std::vector<double> lap, e_full, e_half;
  double cached_dt = -1.0;
  cvec k1, k2, k3, k4, stage;
};

Integrator::Integrator(const Grid& grid, const SimConfig& config) {
  config.validate(grid);
  impl_ = std::make_unique<Impl>(grid, config);
}

Integrator::~Integrator() = default;

RealField Integrator::step(const RealField& w, double dt) {
  const Grid& g = impl_->nl.grid();
  require(w.grid() == g, "field grid does not match the integrator grid");
  require(dt > 0.0 && dt <= SimConfig::max_stable_dt(g, impl_->config.dealias), "step size outside the stable range");
  cvec u = raw_forward(w);
  impl_->advance(u, dt);
  return raw_inverse(g, u);
}

Trajectory Integrator::run(const RealField& w0) {
  const Grid& g = impl_->nl.grid();
  const SimConfig& cfg = impl_->config;
  require(w0.grid() == g, "initial field grid does not match the integrator grid");
  require(w0.all_finite(), "initial field contains non-finite values");
  const long steps = std::max(1L, std::lround(std::ceil(cfg.tau_end / cfg.dt - 1e-9)));
  const double dt = cfg.tau_end / static_cast<double>(steps);

  Trajectory traj(g, cfg.weight_m);
  cvec u = raw_forward(w0);
  const double alpha = u[0].real() * g.cell_area();  // the zero mode is never modified

  auto record = [&](long k, const RealField& w) {
    const double tau = k == steps ? cfg.tau_end : k * dt;
    TrajectoryRecord r = measure(w, tau, cfg.weight_m, cfg.hybrid_velocity);
    r.moments.alpha = alpha;
    if (!(r.l2 < 1e6) || !(r.wm_norm < 1e6)) {
      throw BlowupError("norm exceeded 1e6 at tau = " + std::to_string(tau), tau);
    }
    traj.append(r);
  };

  RealField w = raw_inverse(g, u);
  record(0, w);
  if (cfg.snapshot_every > 0) traj.append_snapshot(0.0, w);
  for (long k = 1; k <= steps; ++k) {
    impl_->advance(u, dt);
    const bool rec = (k % cfg.record_every == 0) || k == steps;
    const bool snap = cfg.snapshot_every > 0 && ((k % cfg.snapshot_every == 0) || k == steps);
    if (!rec && !snap) continue;
    w = raw_inverse(g, u);
    if (rec) record(k, w);
    if (snap) traj.append_snapshot(k == steps ? cfg.tau_end : k * dt, w);
  }
  return traj;
}

RealField step(const RealField& w, double dt, const SimConfig& config) {
  SimConfig c = config;
  c.dt = std::min(c.dt, dt);
  Integrator integ(w.grid(), c);
  return integ.step(w, dt);
}

Trajectory run(const RealField& w0, const SimConfig& config) {
  Integrator integ(w0.grid(), config);
  return integ.run(w0);
}

//==============================================================================
// Output
//==============================================================================

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "tau,alpha,beta1,beta2,gamma1,gamma2,gamma3,l1,l2,wm_norm,v_l2\n" << std::setprecision(17);
  for (const auto& r : traj.records()) {
    const auto& m = r.moments;
    out << r.tau << ',' << m.alpha << ',' << m.beta[0] << ',' << m.beta[1] << ',' << m.gamma[0] << ','
        << m.gamma[1] << ',' << m.gamma[2] << ',' << r.l1 << ',' << r.l2 << ',' << r.wm_norm << ',' << r.v_l2 << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

Trajectory read_trajectory_csv(const std::filesystem::path& path, const Grid& grid, double weight_m) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("tau,alpha,beta1,beta2,gamma1,gamma2,gamma3,l1,l2,wm_norm,v_l2", 0) != 0) {
    throw IoError("unexpected trajectory header in " + path.string());
  }
  Trajectory traj(grid, weight_m);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::array<double, 11> v{};
    for (int i = 0; i < 11; ++i) {
      std::string cell;
      if (!std::getline(ss, cell, ',')) throw IoError("short row at line " + std::to_string(lineno));
      try {
        v[i] = std::stod(cell);
      } catch (const std::exception&) {
        throw IoError("bad number at line " + std::to_string(lineno));
      }
    }
    TrajectoryRecord r;
    r.tau = v[0];
    r.moments.alpha = v[1];
    r.moments.beta = {v[2], v[3]};
    r.moments.gamma = {v[4], v[5], v[6]};
    r.l1 = v[7];
    r.l2 = v[8];
    r.wm_norm = v[9];
    r.v_l2 = v[10];
    try {
      traj.append(r);
    } catch (const PreconditionError& e) {
      throw IoError(std::string(e.what()) + " at line " + std::to_string(lineno));
    }
  }
  return traj;
}

void write_snapshots(const std::filesystem::path& dir, const Trajectory& traj) {
  std::filesystem::create_directories(dir);
  for (const auto& s : traj.snapshots()) {
    std::ostringstream name;
    name << "snap_" << std::setw(6) << std::setfill('0') << std::llround(s.tau * 1000.0) << ".bin";
    write_binary(dir / name.str(), s.w);
  }
}

//==============================================================================
// Unscaled variables and monitors
//==============================================================================

UnscaledField unscale(const RealField& w, double tau) {
  require(std::isfinite(tau) && tau >= 0.0, "tau must be non-negative");
  const double t = std::expm1(tau);
  const double stretch = std::sqrt(1.0 + t);
  const Grid& g = w.grid();
  const Grid xg(g.n(), g.half_width() * stretch);
  std::vector<double> omega(w.values().begin(), w.values().end());
  for (double& x : omega) x /= (1.0 + t);
  VectorField v = hybrid_velocity(w);
  std::vector<double> u1(v.v1.values().begin(), v.v1.values().end());
  std::vector<double> u2(v.v2.values().begin(), v.v2.values().end());
  for (double& x : u1) x /= stretch;
  for (double& x : u2) x /= stretch;
  return {RealField(xg, std::move(omega)), VectorField(RealField(xg, std::move(u1)), RealField(xg, std::move(u2))), t};
}

ConservationReport monitor_conservation(const Trajectory& traj) {
  const auto& rec = traj.records();
  require(rec.size() >= 3, "conservation monitor needs at least three records");
  const MomentSet& m0 = rec.front().moments;
  ConservationReport r;
  for (const auto& x : rec) {
    r.alpha_drift = std::max(r.alpha_drift, std::abs(x.moments.alpha - m0.alpha));
    for (int i = 0; i < 2; ++i) {
      const double expect = m0.beta[i] * std::exp(-0.5 * x.tau);
      r.beta_error[i] = std::max(r.beta_error[i], std::abs(x.moments.beta[i] - expect) / (1.0 + std::abs(m0.beta[i])));
    }
    r.gamma1_error = std::max(r.gamma1_error, std::abs(x.moments.gamma[0] - m0.gamma[0] * std::exp(-x.tau)));
  }
  r.alpha_ok = r.alpha_drift <= 1e-9;
  r.beta_ok = r.beta_error[0] <= 1e-7 && r.beta_error[1] <= 1e-7;
  r.gamma1_ok = r.gamma1_error <= 1e-6;
  return r;
}

double duhamel_residual(const Trajectory& traj, double tau) {
  std::vector<const Snapshot*> used;
  for (const auto& s : traj.snapshots()) {
    if (s.tau <= tau + 1e-12) used.push_back(&s);
  }
  require(used.size() >= 5, "Duhamel residual needs at least five snapshots up to tau");
  require(used.front()->tau == 0.0, "Duhamel residual needs a snapshot at tau = 0");
  require(std::abs(used.back()->tau - tau) < 1e-9, "Duhamel residual needs a snapshot at tau");
  const Grid& g = traj.grid();

  std::vector<RealField> integrand;
  for (const Snapshot* s : used) {
    const double lag = tau - s->tau;
    const VectorField v = hybrid_velocity(s->w);
    RealField f1 = s->w, f2 = s->w;
    for (std::size_t i = 0; i < f1.values().size(); ++i) {
      f1.values()[i] *= v.v1.values()[i];
      f2.values()[i] *= v.v2.values()[i];
    }
    RealField d = spectral_derivative(semigroup_apply(f1, lag), 0) + spectral_derivative(semigroup_apply(f2, lag), 1);
    d *= std::exp(-0.5 * lag);
    integrand.push_back(std::move(d));
  }
  RealField acc(g);
  for (std::size_t k = 0; k + 1 < used.size(); ++k) {
    const double ds = used[k + 1]->tau - used[k]->tau;
    acc.add_scaled(0.5 * ds, integrand[k]);
    acc.add_scaled(0.5 * ds, integrand[k + 1]);
  }
  RealField residual = used.back()->w - semigroup_apply(used.front()->w, tau);
  residual += acc;
  return lp_norm(residual, 2.0);
}

EnergyReport energy_monotonicity(const Trajectory& traj) {
  const auto& rec = traj.records();
  require(rec.size() >= 2, "energy monitor needs at least two records");
  EnergyReport r;
  if (std::abs(rec.front().moments.alpha) > 1e-12) {
    r.mean_zero = false;
    warn("nonzero_mass", "velocity is not square integrable when the total vorticity is nonzero");
  }
  for (std::size_t k = 1; k < rec.size(); ++k) {
    const double inc = rec[k].v_l2 - rec[k - 1].v_l2;
    r.max_increase = std::max(r.max_increase, inc);
    if (inc > 1e-9) r.monotone = false;
  }
  // windows of about one unit of tau
  std::size_t start = 0;
  for (std::size_t k = 1; k < rec.size(); ++k) {
    if (rec[k].tau - rec[start].tau < 1.0 - 1e-9 && k + 1 < rec.size()) continue;
    double dissipation = 0.0;
    for (std::size_t j = start; j < k; ++j) {
      dissipation += (rec[j + 1].tau - rec[j].tau) * (rec[j].l2 * rec[j].l2 + rec[j + 1].l2 * rec[j + 1].l2);
    }
    const double decrement = rec[start].v_l2 * rec[start].v_l2 - rec[k].v_l2 * rec[k].v_l2;
    if (dissipation > 0.0) r.identity_error = std::max(r.identity_error, std::abs(decrement - dissipation) / dissipation);
    start = k;
  }
  return r;
}

}  // namespace ns2d
