#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "molqa/errors.hpp"

namespace molqa {

// Spectroscopic constants of a 2-Sigma radical in its vibronic ground state.
struct MoleculeConstants {
  double rotational_cm1;     // B_e
  double spin_rotation_cm1;  // gamma_SR
  double dipole_debye;       // permanent dipole moment
  std::string name;
};

MoleculeConstants srf();
MoleculeConstants sri();

// Co-aligned dc fields along the quantization axis, plus a small per-molecule
// electric offset used for qubit biasing.
struct FieldPoint {
  double e_kv_cm = 0.0;
  double b_mt = 0.0;
  double delta_e_v_m = 0.0;

  double effective_e_kv_cm() const { return e_kv_cm + delta_e_v_m * 1e-5; }
};

// |N, M_N, M_S> rotor-spin product state; m_s2 is twice M_S (-1 or +1).
struct BasisState {
  int n;
  int m_n;
  int m_s2;
};

class RotorBasis {
 public:
  explicit RotorBasis(int n_max);

  int n_max() const { return n_max_; }
  int size() const { return static_cast<int>(states_.size()); }
  const BasisState& state(int idx) const { return states_[static_cast<size_t>(idx)]; }
  int index(int n, int m_n, int m_s2) const;
  // twice the conserved total projection M_N + M_S
  int total_m2(int idx) const {
    const BasisState& s = states_[static_cast<size_t>(idx)];
    return 2 * s.m_n + s.m_s2;
  }

 private:
  int n_max_;
  std::vector<BasisState> states_;
};

// Geometric matrix element <bra| d_q / d |ket> of the spherical dipole
// component, dimensionless (multiply by the dipole moment to get Debye).
double dipole_element(const BasisState& bra, const BasisState& ket, int q);

// Full bare dipole matrix for component q over a rotor basis (unitless).
Eigen::MatrixXd dipole_matrix(const RotorBasis& basis, int q);

// Single-molecule Hamiltonian in Hz over the |N M_N M_S> basis, N <= n_max.
Eigen::MatrixXd build_hamiltonian(const MoleculeConstants& mol,
                                  const FieldPoint& field, int n_max);

struct EigenSystem {
  Eigen::VectorXd energies_hz;  // ascending
  Eigen::MatrixXd vectors;      // columns, phase-fixed
};

EigenSystem diagonalize(const MoleculeConstants& mol, const FieldPoint& field,
                        int n_max);

enum class StateLabel { alpha, beta, gamma };

const char* label_name(StateLabel label);

// Eigenstates followed adiabatically over an electric-field grid at fixed B.
struct TrackedSpectrum {
  std::vector<double> grid_kv_cm;
  // energies(g, t): energy of tracked state t at grid point g, Hz
  Eigen::MatrixXd energies_hz;
  // per grid point, eigenvector columns in tracked order
  std::vector<Eigen::MatrixXd> vectors;
  std::map<StateLabel, int> labels;  // tracked index of alpha/beta/gamma
  int n_max = 0;
};

TrackedSpectrum track_spectrum(const MoleculeConstants& mol, double b_mt,
                               const std::vector<double>& e_grid_kv_cm,
                               int n_max);

struct CrossingResult {
  double e_kv_cm;
  double gap_hz;
};

// Locates the beta-gamma gap minimum inside [e_lo, e_hi] via a coarse grid
// scan followed by golden-section refinement to 1 V/cm.
CrossingResult find_avoided_crossing(const MoleculeConstants& mol, double b_mt,
                                     double e_lo, double e_hi, int n_max);

// beta/gamma eigenpair at one electric field, with the dressed dipole blocks
// needed for pair couplings. mu[q+1](a, b) = <s_a| d_q |s_b> in Debye over
// the ordered two-level set {up = beta, down = gamma}.
struct DressedTwoLevel {
  double e_beta_hz = 0.0;
  double e_gamma_hz = 0.0;
  Eigen::VectorXd beta;
  Eigen::VectorXd gamma;
};

// Adaptive adiabatic continuation of the alpha/beta/gamma states from zero
// electric field at fixed magnetic field. Evaluations at arbitrary fields are
// resolved against the nearest cached anchor and the walk is refined until
// every continuation overlap exceeds 0.5. Thread-safe.
class BetaGammaTracker {
 public:
  BetaGammaTracker(const MoleculeConstants& mol, double b_mt, int n_max);

  const MoleculeConstants& molecule() const { return mol_; }
  double b_mt() const { return b_mt_; }
  int n_max() const { return n_max_; }

  DressedTwoLevel at(double e_kv_cm) const;
  // alpha energy, used only to verify spectator isolation assumptions
  double alpha_energy(double e_kv_cm) const;

 private:
  struct Anchor {
    double e_alpha, e_beta, e_gamma;
    Eigen::VectorXd alpha, beta, gamma;
  };

  const Anchor& resolve(double e_kv_cm) const;

  MoleculeConstants mol_;
  double b_mt_;
  int n_max_;
  mutable std::map<double, Anchor> anchors_;
  mutable std::mutex mutex_;
};

}  // namespace molqa
