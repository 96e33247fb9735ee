#include "molqa/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

#include "molqa/constants.hpp"

namespace molqa {

namespace {

constexpr double kGoldenRatio = 0.6180339887498949;
constexpr double kFieldResolutionKvCm = 1e-3;  // 1 V/cm

// cache of bare geometric dipole matrices per (n_max, q)
const Eigen::MatrixXd& bare_dipole(int n_max, int q) {
  static std::map<std::pair<int, int>, Eigen::MatrixXd> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(n_max, q);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, dipole_matrix(RotorBasis(n_max), q)).first;
  return it->second;
}

// reduced (geometry-free) bilinears of the excitation-conserving block:
// sum_q c_q mu_q^(1)[a,a'] mu_{-q}^(2)[b,b'] with c = (1, 2, 1)
struct ReducedCouplings {
  double e_uu, e_ud, e_du, e_dd;  // diagonal pair energies per unit prefactor
  double exchange;                // <up,down| O |down,up> per unit prefactor
};

ReducedCouplings reduce(const TwoLevelDipoles& a, const TwoLevelDipoles& b) {
  ReducedCouplings r{0, 0, 0, 0, 0};
  for (int q = -1; q <= 1; ++q) {
    const double c = (q == 0) ? 2.0 : 1.0;
    const Eigen::Matrix2d& ma = a.mu[static_cast<size_t>(q + 1)];
    const Eigen::Matrix2d& mb = b.mu[static_cast<size_t>(-q + 1)];
    r.e_uu += c * ma(0, 0) * mb(0, 0);
    r.e_ud += c * ma(0, 0) * mb(1, 1);
    r.e_du += c * ma(1, 1) * mb(0, 0);
    r.e_dd += c * ma(1, 1) * mb(1, 1);
    r.exchange += c * ma(0, 1) * mb(1, 0);
  }
  return r;
}

double reduced_j_z(const ReducedCouplings& r) {
  return r.e_uu + r.e_dd - r.e_ud - r.e_du;
}

double reduced_j_perp(const ReducedCouplings& r) { return 2.0 * r.exchange; }

}  // namespace

double magic_angle() { return std::acos(1.0 / std::sqrt(3.0)); }

double dd_prefactor_hz_per_debye2(const PairGeometry& geom) {
  if (!(geom.r_nm > 0.0)) throw ConfigError("pair distance must be positive");
  if (geom.theta_rad < 0.0 || geom.theta_rad > M_PI + 1e-12)
    throw ConfigError("pair angle must lie in [0, pi]");
  const double c = std::cos(geom.theta_rad);
  double angular = 3.0 * c * c - 1.0;
  if (std::abs(angular) < 1e-12) angular = 0.0;
  return -0.5 * angular * constants::dd_hz_nm3_per_debye2 /
         (geom.r_nm * geom.r_nm * geom.r_nm);
}

Eigen::MatrixXd dressed_dipole(const MoleculeConstants& mol,
                               const Eigen::MatrixXd& vectors, int q) {
  if (q < -1 || q > 1) throw ConfigError("spherical component must be -1, 0 or +1");
  const int dim = static_cast<int>(vectors.rows());
  const int n_max = static_cast<int>(std::round(std::sqrt(dim / 2.0))) - 1;
  if (2 * (n_max + 1) * (n_max + 1) != dim)
    throw ConfigError("eigenvector dimension does not match a rotor basis");
  const Eigen::MatrixXd& d = bare_dipole(n_max, q);
  return mol.dipole_debye * (vectors.transpose() * d * vectors);
}

TwoLevelDipoles two_level_dipoles(const BetaGammaTracker& tracker,
                                  double e_kv_cm, StateLabel up,
                                  StateLabel down) {
  if (up == down) throw ConfigError("up and down labels must differ");
  const DressedTwoLevel d = tracker.at(e_kv_cm);

  const auto vec_of = [&](StateLabel l) -> const Eigen::VectorXd& {
    switch (l) {
      case StateLabel::beta: return d.beta;
      case StateLabel::gamma: return d.gamma;
      default: throw ConfigError("pair encoding supports beta/gamma labels only");
    }
  };
  const auto energy_of = [&](StateLabel l) {
    return l == StateLabel::beta ? d.e_beta_hz : d.e_gamma_hz;
  };

  const Eigen::VectorXd& vu = vec_of(up);
  const Eigen::VectorXd& vd = vec_of(down);

  TwoLevelDipoles out;
  out.e_up_hz = energy_of(up);
  out.e_down_hz = energy_of(down);
  for (int q = -1; q <= 1; ++q) {
    const Eigen::MatrixXd& dm = bare_dipole(tracker.n_max(), q);
    Eigen::Matrix2d m;
    m(0, 0) = vu.dot(dm * vu);
    m(0, 1) = vu.dot(dm * vd);
    m(1, 0) = vd.dot(dm * vu);
    m(1, 1) = vd.dot(dm * vd);
    out.mu[static_cast<size_t>(q + 1)] = tracker.molecule().dipole_debye * m;
  }
  return out;
}

PairCouplings couplings_from_dipoles(const TwoLevelDipoles& first,
                                     const TwoLevelDipoles& second,
                                     const PairGeometry& geom) {
  const double pref = dd_prefactor_hz_per_debye2(geom);
  const ReducedCouplings r = reduce(first, second);
  const double e_uu = pref * r.e_uu;
  const double e_ud = pref * r.e_ud;
  const double e_du = pref * r.e_du;
  const double e_dd = pref * r.e_dd;
  PairCouplings out;
  out.j_z_hz = e_uu + e_dd - e_ud - e_du;
  out.j_perp_hz = pref * reduced_j_perp(r);
  out.w_hz = 0.5 * (e_uu - e_ud + e_du - e_dd);
  out.k_hz = 0.5 * (e_uu + e_ud - e_du - e_dd);
  out.v_hz = 0.25 * (e_uu + e_ud + e_du + e_dd);
  return out;
}

PairCouplings pair_couplings(const BetaGammaTracker& tracker, double e_kv_cm,
                             const PairGeometry& geom, StateLabel up,
                             StateLabel down) {
  const TwoLevelDipoles d = two_level_dipoles(tracker, e_kv_cm, up, down);
  return couplings_from_dipoles(d, d, geom);
}

PairCouplings pair_couplings(const MoleculeConstants& mol,
                             const FieldPoint& field, const PairGeometry& geom,
                             StateLabel up, StateLabel down, int n_max) {
  BetaGammaTracker tracker(mol, field.b_mt, n_max);
  return pair_couplings(tracker, field.effective_e_kv_cm(), geom, up, down);
}

double find_e_perp(const BetaGammaTracker& tracker, double e_lo, double e_hi,
                   std::optional<PairGeometry> geom) {
  if (!(e_hi > e_lo)) throw ConfigError("invalid search bracket");
  double scale = 1.0;
  if (geom) {
    scale = dd_prefactor_hz_per_debye2(*geom);
    if (scale == 0.0)
      throw ConfigError("magic-angle geometry makes the |J_perp| objective degenerate");
  }

  const auto objective = [&](double e) {
    const TwoLevelDipoles d = two_level_dipoles(tracker, e);
    return std::abs(scale * reduced_j_perp(reduce(d, d)));
  };

  constexpr int kScanPoints = 201;
  double best_e = e_lo, best = -1.0;
  int best_i = 0;
  std::vector<double> vals(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    const double e = e_lo + (e_hi - e_lo) * i / (kScanPoints - 1);
    vals[static_cast<size_t>(i)] = objective(e);
    if (vals[static_cast<size_t>(i)] > best) {
      best = vals[static_cast<size_t>(i)];
      best_e = e;
      best_i = i;
    }
  }
  if (best_i == 0 || best_i == kScanPoints - 1)
    throw NumericalError("|J_perp| maximum lies at the bracket edge [" +
                         std::to_string(e_lo) + ", " + std::to_string(e_hi) + "]");
  const double h = (e_hi - e_lo) / (kScanPoints - 1);
  double a = best_e - h, b = best_e + h;
  double x1 = b - kGoldenRatio * (b - a);
  double x2 = a + kGoldenRatio * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  while (b - a > kFieldResolutionKvCm) {
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGoldenRatio * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGoldenRatio * (b - a);
      f2 = objective(x2);
    }
  }
  return 0.5 * (a + b);
}

double find_e_perp(const MoleculeConstants& mol, double b_mt, double e_lo,
                   double e_hi, int n_max, std::optional<PairGeometry> geom) {
  BetaGammaTracker tracker(mol, b_mt, n_max);
  return find_e_perp(tracker, e_lo, e_hi, geom);
}

double find_e_z(const BetaGammaTracker& tracker, double e_perp, double ratio,
                double e_window_max_kv_cm) {
  if (!(ratio > 0.0)) throw ConfigError("ratio must be positive");
  const double e_max = (e_window_max_kv_cm > e_perp)
                           ? e_window_max_kv_cm
                           : e_perp + std::max(5.0, 0.5 * e_perp);

  const auto ratio_at = [&](double e) {
    const TwoLevelDipoles d = two_level_dipoles(tracker, e);
    const ReducedCouplings r = reduce(d, d);
    const double jp = std::abs(reduced_j_perp(r));
    const double jz = std::abs(reduced_j_z(r));
    if (jp == 0.0) return std::numeric_limits<double>::infinity();
    return jz / jp;
  };

  // march upward until the ratio threshold is bracketed
  const double step = 0.02;
  double lo = e_perp;
  double lo_val = ratio_at(lo);
  double hi = lo;
  bool bracketed = false;
  while (hi < e_max) {
    hi = std::min(hi + step, e_max);
    const double hi_val = ratio_at(hi);
    if (lo_val < ratio && hi_val >= ratio) {
      bracketed = true;
      break;
    }
    lo = hi;
    lo_val = hi_val;
  }
  if (!bracketed)
    throw NumericalError("|J_z|/|J_perp| never reaches " + std::to_string(ratio) +
                         " inside (" + std::to_string(e_perp) + ", " +
                         std::to_string(e_max) + ") kV/cm");

  while (hi - lo > kFieldResolutionKvCm) {
    const double mid = 0.5 * (lo + hi);
    if (ratio_at(mid) >= ratio)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double find_e_z(const MoleculeConstants& mol, double b_mt, double ratio,
                int n_max) {
  BetaGammaTracker tracker(mol, b_mt, n_max);
  // generous default bracket around the gap minimum
  const CrossingResult crossing =
      find_avoided_crossing(mol, b_mt, 0.02, 30.0, n_max);
  const double e_perp = find_e_perp(tracker, std::max(0.0, crossing.e_kv_cm - 1.0),
                                    crossing.e_kv_cm + 1.0);
  return find_e_z(tracker, e_perp, ratio);
}

QubitParams qubit_params(const BetaGammaTracker& tracker, const FieldPoint& f1,
                         const FieldPoint& f2, const PairGeometry& geom) {
  if (f1.b_mt != f2.b_mt)
    throw ConfigError("both molecules of a qubit must share the magnetic field");
  if (f1.b_mt != tracker.b_mt())
    throw ConfigError("field point does not match the tracker magnetic field");

  const TwoLevelDipoles d1 = two_level_dipoles(tracker, f1.effective_e_kv_cm());
  const TwoLevelDipoles d2 = two_level_dipoles(tracker, f2.effective_e_kv_cm());
  const PairCouplings pc = couplings_from_dipoles(d1, d2, geom);

  const double h1 = (d1.e_down_hz - d1.e_up_hz) + pc.k_hz;
  const double h2 = (d2.e_down_hz - d2.e_up_hz) + pc.w_hz;

  const double e_mean =
      0.5 * (f1.effective_e_kv_cm() + f2.effective_e_kv_cm());
  const TwoLevelDipoles dm = two_level_dipoles(tracker, e_mean);
  const PairCouplings mean_pc = couplings_from_dipoles(dm, dm, geom);

  return {h1 - h2, mean_pc.j_perp_hz};
}

QubitParams qubit_params(const MoleculeConstants& mol, const FieldPoint& f1,
                         const FieldPoint& f2, const PairGeometry& geom,
                         int n_max) {
  BetaGammaTracker tracker(mol, f1.b_mt, n_max);
  return qubit_params(tracker, f1, f2, geom);
}

PairGeometry pair_geometry(const Eigen::Vector3d& r1_nm,
                           const Eigen::Vector3d& r2_nm,
                           const Eigen::Vector3d& field_axis) {
  const Eigen::Vector3d dr = r2_nm - r1_nm;
  const double r = dr.norm();
  if (r <= 0.0) throw ConfigError("coincident molecule positions");
  const double axis_norm = field_axis.norm();
  if (axis_norm <= 0.0) throw ConfigError("zero field axis");
  double c = dr.dot(field_axis) / (r * axis_norm);
  c = std::clamp(c, -1.0, 1.0);
  return {r, std::acos(c)};
}

double interqubit_coupling(const BetaGammaTracker& tracker, double e_kv_cm,
                           const std::array<Eigen::Vector3d, 4>& positions_nm,
                           const Eigen::Vector3d& field_axis, int orientation_a,
                           int orientation_b) {
  if (std::abs(orientation_a) != 1 || std::abs(orientation_b) != 1)
    throw ConfigError("qubit orientation must be +1 or -1");
  const TwoLevelDipoles d = two_level_dipoles(tracker, e_kv_cm);

  const auto j_z = [&](int i, int j) {
    const PairGeometry g = pair_geometry(positions_nm[static_cast<size_t>(i)],
                                         positions_nm[static_cast<size_t>(j)],
                                         field_axis);
    return couplings_from_dipoles(d, d, g).j_z_hz;
  };
  // molecules {0,1} form qubit a, {2,3} form qubit b
  const double raw = j_z(0, 2) + j_z(1, 3) - j_z(0, 3) - j_z(1, 2);
  return orientation_a * orientation_b * raw;
}

double interqubit_coupling(const MoleculeConstants& mol,
                           const FieldPoint& field,
                           const std::array<Eigen::Vector3d, 4>& positions_nm,
                           const Eigen::Vector3d& field_axis, int orientation_a,
                           int orientation_b, int n_max) {
  BetaGammaTracker tracker(mol, field.b_mt, n_max);
  return interqubit_coupling(tracker, field.effective_e_kv_cm(), positions_nm,
                             field_axis, orientation_a, orientation_b);
}

}  // namespace molqa
