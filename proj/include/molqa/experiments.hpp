#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "molqa/dynamics.hpp"
#include "molqa/lattice.hpp"

namespace molqa {

struct RunOptions {
  int threads = 0;  // 0 = hardware concurrency
  bool opt_in_3x3 = false;
  int n_max = 5;
};

// Ramp endpoints for a molecule at one magnetic field: the gap minimum, the
// |J_perp| maximum, and the first field above it with |J_z|/|J_perp| = ratio.
struct WorkingFields {
  double e_cross_kv_cm = 0.0;
  double gap_hz = 0.0;
  double e_perp_kv_cm = 0.0;
  double e_z_kv_cm = 0.0;
};

WorkingFields working_fields(const BetaGammaTracker& tracker,
                             double ratio = 100.0,
                             double e_window_lo = 0.02,
                             double e_window_hi = 30.0);

// ---- molecular-constant scans ----------------------------------------

enum class ScanConstant { dipole, rotational, spin_rotation };

struct ScanSpec {
  ScanConstant constant = ScanConstant::dipole;
  std::vector<double> grid;  // swept values in the constant's native unit
  MoleculeConstants base = srf();
  double b_mt = 600.0;
  int n_max = 5;
  double r_nm = 500.0;
  double theta_rad = 1.5707963267948966;
  double ratio = 100.0;
};

// Log-spaced grid with a fixed density of points per decade (endpoints kept).
std::vector<double> log_grid(double lo, double hi, double points_per_decade);

struct ScanRow {
  double value = 0.0;
  bool ok = false;
  std::string error;
  double e_perp_kv_cm = 0.0;
  double e_z_kv_cm = 0.0;
  double j_perp_hz = 0.0;  // at e_perp
  double j_z_hz = 0.0;     // at e_z
};

std::vector<ScanRow> scan_constant(const ScanSpec& spec);
void write_scan_outputs(const std::filesystem::path& out_dir,
                        const ScanSpec& spec, const std::vector<ScanRow>& rows);

// ---- two-qubit benchmark ----------------------------------------------

struct ParameterTrace {
  std::vector<double> s;
  std::vector<double> e_kv_cm;
  std::vector<double> delta_hz;  // intra-qubit transverse coupling
  std::vector<double> j_ab_hz;   // qubit-qubit Ising coupling
  std::vector<double> h_a_hz;
  std::vector<double> h_b_hz;
};

struct TwoQubitExperiment {
  WorkingFields fields;
  ParameterTrace trace;
  AnnealResult anneal;
};

TwoQubitExperiment run_two_qubit(const std::filesystem::path& out_dir,
                                 const RunOptions& opts = {},
                                 double t_ms = 15.0, int n_steps = 200,
                                 const MoleculeConstants& mol = srf(),
                                 double b_mt = 600.0);

// ---- chain / grid anneals ----------------------------------------------

struct AnnealSweep {
  WorkingFields fields;
  std::vector<double> times_ms;
  std::vector<AnnealResult> results;  // one per annealing time
};

AnnealSweep run_chain_1d(const std::filesystem::path& out_dir, int n_qubits,
                         const std::vector<double>& times_ms,
                         const RunOptions& opts = {},
                         const MoleculeConstants& mol = srf(),
                         double b_mt = 600.0, int n_steps = 200);

AnnealSweep run_lattice_2d(const std::filesystem::path& out_dir, int rows,
                           int cols, const std::vector<double>& times_ms,
                           const RunOptions& opts = {},
                           const MoleculeConstants& mol = srf(),
                           double b_mt = 600.0, int n_steps = 100);

// ---- scaling study -------------------------------------------------------

enum class LatticeFamily { chain_af, chain_fm, grid_af };

struct ScalingPoint {
  std::string size_label;
  int n_qubits = 0;
  double best_t_ms = 0.0;
  double p_solution = 0.0;
  double p_invalid = 0.0;
  std::vector<double> p_solution_by_time;
  std::vector<double> p_invalid_by_time;
};

struct ScalingStudy {
  LatticeFamily family;
  std::vector<double> times_ms;
  std::vector<ScalingPoint> points;
};

ScalingStudy scaling_study(const std::filesystem::path& out_dir,
                           LatticeFamily family,
                           const std::vector<int>& sizes,
                           const std::vector<double>& times_ms = {5, 10, 15,
                                                                  20, 25},
                           const RunOptions& opts = {},
                           const MoleculeConstants& mol = srf(),
                           double b_mt = 600.0);

// grid sizes are encoded as rows*100 + cols for the grid_af family
int encode_grid_size(int rows, int cols);

// ---- 3D stack parameters --------------------------------------------------

struct Stack3dParameters {
  WorkingFields fields;
  std::vector<double> s;
  // per qubit bias trace h_q(s); qubit index runs layer-major
  std::vector<std::vector<double>> h_hz;
  // coupling classes at the final field
  double intra_layer_min_hz = 0.0;  // minimum J_ab inside a layer
  double inter_layer_max_hz = 0.0;  // maximum J_ab between adjacent layers
  IsingModel final_model;
  LatticeConfig config;
};

Stack3dParameters stack_3d_parameters(const std::filesystem::path& out_dir,
                                      int layers, int rows = 2, int cols = 3,
                                      const RunOptions& opts = {},
                                      const MoleculeConstants& mol = srf(),
                                      double b_mt = 600.0, int n_points = 21);

// ---- spectrum and coupling curves ------------------------------------

// Tracks the spectrum over a linear E grid, writes one CSV row per
// (grid point, state) plus an SVG of the lowest n_levels with the
// avoided-crossing marker.
TrackedSpectrum run_spectrum(const std::filesystem::path& out_dir,
                             const MoleculeConstants& mol, double b_mt,
                             double e_min_kv_cm, double e_max_kv_cm,
                             int n_points, int n_levels = 5, int n_max = 5);

struct CouplingCurve {
  std::vector<double> e_kv_cm;
  std::vector<PairCouplings> couplings;
};

CouplingCurve run_couplings(const std::filesystem::path& out_dir,
                            const MoleculeConstants& mol, double b_mt,
                            double e_min_kv_cm, double e_max_kv_cm,
                            int n_points, const PairGeometry& geom,
                            int n_max = 5);

// Writes the resolved configuration and pinned constants of an experiment.
void write_manifest(const std::filesystem::path& out_dir,
                    const std::string& experiment,
                    const std::vector<std::pair<std::string, std::string>>& entries);

// Shared helpers for CSV/SVG artifact emission.
void write_trajectory_csv(const std::filesystem::path& path,
                          const AnnealResult& result);
void write_distribution_csv(const std::filesystem::path& path,
                            const AnnealResult& result);
void write_ising_csv(const std::filesystem::path& edges_path,
                     const std::filesystem::path& biases_path,
                     const IsingModel& model);

}  // namespace molqa
