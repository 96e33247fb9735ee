#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <vector>

#include "molqa/lattice.hpp"
#include "molqa/sector_basis.hpp"

namespace molqa {

// Linear electric-field ramp E(s) = E_start + s (E_end - E_start), s = t/T.
// stop_s < 1 truncates the anneal early; n_steps always span [0, stop_s].
struct Schedule {
  double e_start_kv_cm = 0.0;
  double e_end_kv_cm = 0.0;
  double t_ms = 15.0;
  int n_steps = 200;
  double stop_s = 1.0;

  void validate() const;
  double field_at(double s) const {
    return e_start_kv_cm + s * (e_end_kv_cm - e_start_kv_cm);
  }
};

// Sparse spin-exchange + Ising Hamiltonian restricted to the fixed-excitation
// sector, in Hz. Identity shifts are omitted.
Eigen::SparseMatrix<double> build_sector_hamiltonian(const CouplingTables& tables,
                                                     const SectorBasis& basis);

// Equal-weight product of per-qubit (|0> + sign |1>)/sqrt(2) states embedded
// in the sector; sign follows the sign of the intra-qubit Ising coupling at
// the starting field (+ for ferromagnetic J_z < 0, - for anti-ferromagnetic).
Eigen::VectorXcd initial_state(const LatticeConfig& config,
                               const CouplingTables& tables_at_start,
                               const SectorBasis& basis,
                               const StateClassification& classification);

struct ProbabilityReport {
  double p_solution = 0.0;
  double p_invalid = 0.0;
  double p_valid_other = 0.0;
  Eigen::VectorXd valid_probs;  // indexed by qubit configuration bits
};

ProbabilityReport measure(const Eigen::VectorXcd& state,
                          const StateClassification& classification,
                          const std::vector<std::uint32_t>& ground_configs);

enum class PropagationMethod { automatic, dense, krylov };

struct PropagateOptions {
  PropagationMethod method = PropagationMethod::automatic;
  double krylov_tol = 1e-10;  // per-step error control
  int krylov_max_dim = 80;
  std::int64_t dense_dim_limit = 2000;
  std::int64_t sector_dim_ceiling = 0;  // 0 = unlimited
};

// Applies exp(-i 2 pi H dt) to psi in place. H in Hz, dt in seconds (may be
// negative). Dense path: exact eigendecomposition. Krylov path: Lanczos with
// full reorthogonalization and per-step error control.
void evolve_step(const Eigen::SparseMatrix<double>& h_hz, double dt_s,
                 Eigen::VectorXcd& psi, PropagationMethod method,
                 const PropagateOptions& opts = {});

struct AnnealResult {
  std::vector<double> s;
  std::vector<double> t_ms;
  std::vector<double> p_solution;
  std::vector<double> p_invalid;
  std::vector<double> p_valid_other;
  ProbabilityReport final_report;
  std::vector<std::pair<std::uint64_t, double>> final_invalid_probs;
  Eigen::VectorXcd final_state;
  std::vector<std::uint32_t> ground_configs;
  double ground_energy_hz = 0.0;
  int n_qubits = 0;
};

// Piecewise-constant quasi-adiabatic evolution: the coupling tables are
// evaluated at each step's midpoint field and the exact step propagator is
// applied. Probabilities are recorded after every step (and at s = 0).
AnnealResult propagate(const BetaGammaTracker& tracker,
                       const LatticeConfig& config, const Schedule& schedule,
                       const PropagateOptions& opts = {});

}  // namespace molqa
