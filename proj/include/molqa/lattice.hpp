#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "molqa/coupling.hpp"
#include "molqa/molecule.hpp"
#include "molqa/sector_basis.hpp"

namespace molqa {

// Two molecules encoding one qubit. orientation +1 assigns |0> to
// (first up, second down); -1 inverts the encoding.
struct QubitPair {
  int first;
  int second;
  int orientation = +1;
};

// A molecule locked in one dressed state, used to bias an adjacent qubit.
struct Spectator {
  int molecule;
  bool locked_up;
};

struct LatticeConfig {
  MoleculeConstants molecule;
  double b_mt = 600.0;
  int n_max = 5;
  Eigen::Vector3d field_axis = Eigen::Vector3d(0, 0, 1);
  std::vector<Eigen::Vector3d> positions_nm;
  std::vector<QubitPair> qubits;
  std::vector<Spectator> spectators;
  std::vector<double> delta_e_v_m;  // per molecule; empty means all zero

  int n_molecules() const { return static_cast<int>(positions_nm.size()); }
  int n_qubits() const { return static_cast<int>(qubits.size()); }
  double delta_e(int molecule_idx) const {
    return delta_e_v_m.empty() ? 0.0
                               : delta_e_v_m[static_cast<size_t>(molecule_idx)];
  }
  // total excitations: one per qubit plus every up-locked spectator
  int sector_excitations() const;
  void validate() const;
};

// Constructors for the geometries studied here. Qubit axes along the field
// (z) unless stated otherwise; distances in nm.

// Two side-by-side qubits: intra-qubit spacing r_intra along z, qubits
// r_inter apart along x.
LatticeConfig make_two_qubit_rectangle(const MoleculeConstants& mol, double b_mt,
                                       double r_intra_nm = 500.0,
                                       double r_inter_nm = 1000.0);

// Chain of qubits along x, each qubit axis along z. Inter-qubit couplings are
// anti-ferromagnetic.
LatticeConfig make_chain_1d(const MoleculeConstants& mol, double b_mt,
                            int n_qubits, double r_intra_nm = 500.0,
                            double r_inter_nm = 1000.0);

// The quarter-turn variant: qubit axes along x (perpendicular to the field),
// chain direction along z. Inter-qubit couplings are ferromagnetic.
LatticeConfig make_chain_1d_fm(const MoleculeConstants& mol, double b_mt,
                               int n_qubits, double r_intra_nm = 500.0,
                               double r_inter_nm = 1000.0);

// rows x cols grid of qubits in the xy plane, qubit axes along z.
LatticeConfig make_grid_2d(const MoleculeConstants& mol, double b_mt, int rows,
                           int cols, double r_intra_nm = 500.0,
                           double r_inter_nm = 1000.0);

// 2D layers stacked along the field axis with inter-layer molecular spacing
// r_inter between facing molecules.
LatticeConfig make_stack_3d(const MoleculeConstants& mol, double b_mt,
                            int layers, int rows, int cols,
                            double r_intra_nm = 500.0,
                            double r_inter_nm = 1000.0);

// Pairwise coupling tables over molecules plus single-molecule level biases
// h_i = (eps_down - eps_up) at the local field plus the accumulated
// identity-times-Sz shifts from every partner.
struct CouplingTables {
  Eigen::MatrixXd j_perp_hz;
  Eigen::MatrixXd j_z_hz;
  Eigen::VectorXd h_hz;
};

CouplingTables build_coupling_tables(const BetaGammaTracker& tracker,
                                     const LatticeConfig& config,
                                     double e_kv_cm);

// Qubit-level Ising model. Energies use spin-1/2 variables: bit 0 of a
// configuration maps to s = +1/2.
struct IsingModel {
  int n_qubits = 0;
  Eigen::VectorXd h_hz;
  Eigen::MatrixXd j_hz;  // symmetric, zero diagonal
};

IsingModel effective_ising(const BetaGammaTracker& tracker,
                           const LatticeConfig& config, double e_kv_cm);

double ising_energy(const IsingModel& model, std::uint32_t config_bits);

struct GroundSet {
  double energy_hz = 0.0;
  std::vector<std::uint32_t> configs;  // all global minimizers
};

// Exhaustive minimization over all 2^n qubit configurations, n <= 24.
// Degenerate minimizers (relative tolerance 1e-9) are all returned.
GroundSet brute_force_ground(const IsingModel& model);

// Valid/invalid partition of the sector basis. qubit_config[r] holds the
// qubit bitstring of valid sector state r, or -1 for invalid states.
struct StateClassification {
  std::int64_t n_valid = 0;
  std::int64_t n_invalid = 0;
  std::vector<std::int32_t> qubit_config;
};

StateClassification classify_states(const LatticeConfig& config,
                                    const SectorBasis& basis);

}  // namespace molqa
