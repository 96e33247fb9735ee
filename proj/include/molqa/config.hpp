#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "molqa/molecule.hpp"

namespace molqa {

// Fully resolved run configuration. Every key in the file format carries its
// unit as a suffix (B_mT, R_nm, E_start_kV_cm, ...); unknown keys are
// rejected with a path diagnostic.
struct RunConfig {
  std::string experiment = "two_qubit";

  MoleculeConstants molecule = srf();
  int n_max = 5;

  double b_mt = 600.0;
  std::string e_mode = "auto";  // "auto" resolves the ramp endpoints
  double e_start_kv_cm = 0.0;
  double e_end_kv_cm = 0.0;

  std::string family;  // defaults to the experiment kind
  int n_qubits = 6;
  int rows = 2;
  int cols = 3;
  int layers = 2;
  double r_intra_nm = 500.0;
  double r_inter_nm = 1000.0;
  std::vector<double> delta_e_v_m;

  std::vector<double> times_ms = {15.0};
  int n_steps = 0;  // 0 = per-family default (200 for chains, 100 for grids)
  double stop_s = 1.0;

  double spectrum_e_min_kv_cm = 0.0;
  double spectrum_e_max_kv_cm = 2.0;
  int spectrum_points = 201;
  int spectrum_levels = 5;

  double couplings_e_min_kv_cm = 5.5;
  double couplings_e_max_kv_cm = 8.5;
  int couplings_points = 301;
  double couplings_r_nm = 500.0;
  double couplings_theta_rad = 1.5707963267948966;

  std::string scan_constant = "d_D";
  double scan_min = 2.0;
  double scan_max = 7.0;
  double scan_points_per_decade = 25.0;

  std::vector<std::string> scale_families = {"1D-AF", "1D-FM", "2D-AF"};
  std::vector<int> chain_sizes = {2, 3, 4, 5, 6};
  std::vector<std::string> grid_sizes = {"2x2", "2x3", "2x4"};

  std::string out_dir = "out";

  bool needs_ramp() const;
};

// Parses and validates a configuration file, applies defaults, and resolves
// "auto" ramp endpoints (for experiments that anneal) by locating the
// |J_perp| maximum and the |J_z|/|J_perp| = 100 field.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text);

// Serializes a RunConfig to the same file format; parse(emit(c)) == c.
std::string emit_config(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace molqa
