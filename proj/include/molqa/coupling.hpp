#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>

#include "molqa/molecule.hpp"

namespace molqa {

// Relative geometry of a molecule pair: distance and the angle between the
// quantization axis and the intermolecular vector.
struct PairGeometry {
  double r_nm;
  double theta_rad;
};

// Magic angle acos(1/sqrt(3)) where the dipole-dipole angular factor vanishes.
double magic_angle();

// Angular and radial prefactor -(3 cos^2 theta - 1) / (2 R^3), in Hz per
// Debye^2 including the pinned dipole-dipole scale. Snaps to exactly zero
// within a few ulp of the magic angle.
double dd_prefactor_hz_per_debye2(const PairGeometry& geom);

// Field-dressed two-molecule coupling constants, all in Hz.
struct PairCouplings {
  double j_perp_hz;
  double j_z_hz;
  double w_hz;
  double k_hz;
  double v_hz;
};

// Transform the bare dipole matrix of spherical component q into the basis of
// the given eigenvector columns; result in Debye.
Eigen::MatrixXd dressed_dipole(const MoleculeConstants& mol,
                               const Eigen::MatrixXd& vectors, int q);

// Dressed 2x2 dipole blocks of one molecule restricted to {up, down}.
// mu[q+1](a, b) = <s_a| d_q |s_b> in Debye, ordering {0 = up, 1 = down}.
struct TwoLevelDipoles {
  double e_up_hz = 0.0;
  double e_down_hz = 0.0;
  std::array<Eigen::Matrix2d, 3> mu;
};

TwoLevelDipoles two_level_dipoles(const BetaGammaTracker& tracker,
                                  double e_kv_cm,
                                  StateLabel up = StateLabel::beta,
                                  StateLabel down = StateLabel::gamma);

// Couplings between two molecules with possibly different dressed states
// (different local electric fields).
PairCouplings couplings_from_dipoles(const TwoLevelDipoles& first,
                                     const TwoLevelDipoles& second,
                                     const PairGeometry& geom);

PairCouplings pair_couplings(const BetaGammaTracker& tracker, double e_kv_cm,
                             const PairGeometry& geom,
                             StateLabel up = StateLabel::beta,
                             StateLabel down = StateLabel::gamma);

PairCouplings pair_couplings(const MoleculeConstants& mol,
                             const FieldPoint& field, const PairGeometry& geom,
                             StateLabel up = StateLabel::beta,
                             StateLabel down = StateLabel::gamma,
                             int n_max = 5);

// Electric field maximizing |J_perp| inside [e_lo, e_hi]; independent of the
// pair geometry. Supplying a geometry only validates it (magic-angle
// geometries are rejected as a degenerate objective).
double find_e_perp(const BetaGammaTracker& tracker, double e_lo, double e_hi,
                   std::optional<PairGeometry> geom = std::nullopt);
double find_e_perp(const MoleculeConstants& mol, double b_mt, double e_lo,
                   double e_hi, int n_max = 5,
                   std::optional<PairGeometry> geom = std::nullopt);

// Smallest field above e_perp where |J_z| / |J_perp| reaches the given ratio,
// resolved to 1 V/cm by bisection on the first threshold crossing.
double find_e_z(const BetaGammaTracker& tracker, double e_perp,
                double ratio = 100.0, double e_window_max_kv_cm = 0.0);
double find_e_z(const MoleculeConstants& mol, double b_mt, double ratio = 100.0,
                int n_max = 5);

struct QubitParams {
  double h_q_hz;
  double delta_q_hz;
};

// Qubit bias and transverse coupling for two molecules of one qubit at field
// points f1 and f2 (same B, small electric offset) separated by geom.
QubitParams qubit_params(const MoleculeConstants& mol, const FieldPoint& f1,
                         const FieldPoint& f2, const PairGeometry& geom,
                         int n_max = 5);
QubitParams qubit_params(const BetaGammaTracker& tracker, const FieldPoint& f1,
                         const FieldPoint& f2, const PairGeometry& geom);

// Signed Ising coupling between two qubits from the four cross-pair J_z
// values. positions_nm = {a1, a2, b1, b2}; orientations flip the sign of the
// corresponding qubit encoding.
double interqubit_coupling(const BetaGammaTracker& tracker, double e_kv_cm,
                           const std::array<Eigen::Vector3d, 4>& positions_nm,
                           const Eigen::Vector3d& field_axis,
                           int orientation_a = +1, int orientation_b = +1);
double interqubit_coupling(const MoleculeConstants& mol,
                           const FieldPoint& field,
                           const std::array<Eigen::Vector3d, 4>& positions_nm,
                           const Eigen::Vector3d& field_axis,
                           int orientation_a = +1, int orientation_b = +1,
                           int n_max = 5);

// Distance/angle of a molecule pair relative to the field axis.
PairGeometry pair_geometry(const Eigen::Vector3d& r1_nm,
                           const Eigen::Vector3d& r2_nm,
                           const Eigen::Vector3d& field_axis);

}  // namespace molqa
