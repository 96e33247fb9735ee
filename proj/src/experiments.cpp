#include "molqa/experiments.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

#include "molqa/constants.hpp"
#include "molqa/csv.hpp"
#include "molqa/svg.hpp"

namespace molqa {

namespace fs = std::filesystem;

namespace {

std::string config_bits_string(std::uint32_t bits, int n_qubits) {
  std::string s(static_cast<size_t>(n_qubits), '0');
  for (int i = 0; i < n_qubits; ++i)
    if ((bits >> i) & 1) s[static_cast<size_t>(i)] = '1';
  return s;
}

int effective_threads(const RunOptions& opts) {
  if (opts.threads > 0) return opts.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// run one anneal per annealing time, at most `threads` in flight
std::vector<AnnealResult> run_times(const BetaGammaTracker& tracker,
                                    const LatticeConfig& config,
                                    const WorkingFields& wf,
                                    const std::vector<double>& times_ms,
                                    int n_steps, int threads) {
  std::vector<AnnealResult> results(times_ms.size());
  std::vector<std::future<void>> inflight;
  size_t next = 0;
  while (next < times_ms.size() || !inflight.empty()) {
    while (next < times_ms.size() &&
           static_cast<int>(inflight.size()) < std::max(1, threads)) {
      const size_t idx = next++;
      inflight.push_back(std::async(std::launch::async, [&, idx] {
        Schedule sched{wf.e_perp_kv_cm, wf.e_z_kv_cm, times_ms[idx], n_steps,
                       1.0};
        results[idx] = propagate(tracker, config, sched);
      }));
    }
    inflight.front().get();
    inflight.erase(inflight.begin());
  }
  return results;
}

void write_sweep_outputs(const fs::path& out_dir, const AnnealSweep& sweep) {
  Table summary;
  summary.columns = {"T_ms", "p_solution", "p_invalid", "p_valid_other"};
  for (size_t i = 0; i < sweep.times_ms.size(); ++i) {
    const AnnealResult& r = sweep.results[i];
    summary.add_row({sweep.times_ms[i], r.final_report.p_solution,
                     r.final_report.p_invalid, r.final_report.p_valid_other});
    std::ostringstream stem;
    stem << "T" << sweep.times_ms[i] << "ms";
    write_trajectory_csv(out_dir / ("trajectory_" + stem.str() + ".csv"), r);
    write_distribution_csv(out_dir / ("distribution_" + stem.str() + ".csv"),
                           r);

    Table traj;
    traj.columns = {"s", "p_solution", "p_invalid"};
    for (size_t k = 0; k < r.s.size(); ++k)
      traj.add_row({r.s[k], r.p_solution[k], r.p_invalid[k]});
    emit_svg(out_dir / ("trajectory_" + stem.str() + ".svg"), traj,
             PlotKind::lines, "annealing trajectory, T = " + stem.str());

    Table hist;
    hist.columns = {"outcome", "probability"};
    for (Eigen::Index c = 0; c < r.final_report.valid_probs.size(); ++c)
      hist.add_row(
          {config_bits_string(static_cast<std::uint32_t>(c), r.n_qubits),
           r.final_report.valid_probs(c)});
    hist.add_row({std::string("INVALID"), r.final_report.p_invalid});
    emit_svg(out_dir / ("distribution_" + stem.str() + ".svg"), hist,
             PlotKind::bars, "final measurement distribution");
  }
  write_csv(out_dir / "summary.csv", summary);
}

const char* family_name(LatticeFamily f) {
  switch (f) {
    case LatticeFamily::chain_af: return "1D-AF";
    case LatticeFamily::chain_fm: return "1D-FM";
    case LatticeFamily::grid_af: return "2D-AF";
  }
  return "?";
}

}  // namespace

WorkingFields working_fields(const BetaGammaTracker& tracker, double ratio,
                             double e_window_lo, double e_window_hi) {
  WorkingFields wf;
  const CrossingResult crossing =
      find_avoided_crossing(tracker.molecule(), tracker.b_mt(), e_window_lo,
                            e_window_hi, tracker.n_max());
  wf.e_cross_kv_cm = crossing.e_kv_cm;
  wf.gap_hz = crossing.gap_hz;
  const double half_window =
      std::max(0.5, 20.0 * (e_window_hi - e_window_lo) / 200.0);
  wf.e_perp_kv_cm =
      find_e_perp(tracker, std::max(e_window_lo, crossing.e_kv_cm - half_window),
                  crossing.e_kv_cm + half_window);
  wf.e_z_kv_cm = find_e_z(tracker, wf.e_perp_kv_cm, ratio);
  return wf;
}

std::vector<double> log_grid(double lo, double hi, double points_per_decade) {
  if (!(hi > lo) || lo <= 0.0) throw ConfigError("invalid log grid window");
  const double decades = std::log10(hi / lo);
  const int n = std::max(2, static_cast<int>(std::ceil(decades * points_per_decade)) + 1);
  std::vector<double> g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    g[static_cast<size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

std::vector<ScanRow> scan_constant(const ScanSpec& spec) {
  if (spec.grid.empty()) throw ConfigError("empty scan grid");
  std::vector<ScanRow> rows;
  rows.reserve(spec.grid.size());
  for (double value : spec.grid) {
    MoleculeConstants mol = spec.base;
    switch (spec.constant) {
      case ScanConstant::dipole: mol.dipole_debye = value; break;
      case ScanConstant::rotational: mol.rotational_cm1 = value; break;
      case ScanConstant::spin_rotation: mol.spin_rotation_cm1 = value; break;
    }
    ScanRow row;
    row.value = value;
    try {
      BetaGammaTracker tracker(mol, spec.b_mt, spec.n_max);
      const WorkingFields wf = working_fields(tracker, spec.ratio);
      row.e_perp_kv_cm = wf.e_perp_kv_cm;
      row.e_z_kv_cm = wf.e_z_kv_cm;
      const PairGeometry geom{spec.r_nm, spec.theta_rad};
      row.j_perp_hz = pair_couplings(tracker, wf.e_perp_kv_cm, geom).j_perp_hz;
      row.j_z_hz = pair_couplings(tracker, wf.e_z_kv_cm, geom).j_z_hz;
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_scan_outputs(const fs::path& out_dir, const ScanSpec& spec,
                        const std::vector<ScanRow>& rows) {
  const char* name = spec.constant == ScanConstant::dipole ? "d_D"
                     : spec.constant == ScanConstant::rotational
                         ? "B_e_cm1"
                         : "gamma_SR_cm1";
  Table t;
  t.columns = {name, "status", "E_perp_kV_cm", "E_z_kV_cm", "J_perp_Hz",
               "J_z_Hz"};
  for (const ScanRow& r : rows) {
    if (r.ok)
      t.add_row({r.value, std::string("ok"), r.e_perp_kv_cm, r.e_z_kv_cm,
                 r.j_perp_hz, r.j_z_hz});
    else
      t.add_row({r.value, std::string("no_crossing"), std::string(""),
                 std::string(""), std::string(""), std::string("")});
  }
  write_csv(out_dir / "scan.csv", t);

  Table fields;
  fields.columns = {name, "E_perp_kV_cm", "E_z_kV_cm"};
  Table coup;
  coup.columns = {name, "J_perp_Hz", "J_z_Hz"};
  for (const ScanRow& r : rows) {
    if (!r.ok) continue;
    fields.add_row({r.value, r.e_perp_kv_cm, r.e_z_kv_cm});
    coup.add_row({r.value, r.j_perp_hz, r.j_z_hz});
  }
  if (!fields.empty()) {
    emit_svg(out_dir / "scan_fields.svg", fields, PlotKind::lines,
             "working fields vs " + std::string(name));
    emit_svg(out_dir / "scan_couplings.svg", coup, PlotKind::lines,
             "couplings vs " + std::string(name));
  }
}

TwoQubitExperiment run_two_qubit(const fs::path& out_dir,
                                 const RunOptions& opts, double t_ms,
                                 int n_steps, const MoleculeConstants& mol,
                                 double b_mt) {
  BetaGammaTracker tracker(mol, b_mt, opts.n_max);
  TwoQubitExperiment exp;
  exp.fields = working_fields(tracker);

  LatticeConfig config = make_two_qubit_rectangle(mol, b_mt);

  const int n_trace = 101;
  for (int i = 0; i < n_trace; ++i) {
    const double s = static_cast<double>(i) / (n_trace - 1);
    const double e = exp.fields.e_perp_kv_cm +
                     s * (exp.fields.e_z_kv_cm - exp.fields.e_perp_kv_cm);
    const CouplingTables tables = build_coupling_tables(tracker, config, e);
    const IsingModel model = effective_ising(tracker, config, e);
    exp.trace.s.push_back(s);
    exp.trace.e_kv_cm.push_back(e);
    exp.trace.delta_hz.push_back(tables.j_perp_hz(0, 1));
    exp.trace.j_ab_hz.push_back(model.j_hz(0, 1));
    exp.trace.h_a_hz.push_back(model.h_hz(0));
    exp.trace.h_b_hz.push_back(model.h_hz(1));
  }

  Schedule sched{exp.fields.e_perp_kv_cm, exp.fields.e_z_kv_cm, t_ms, n_steps,
                 1.0};
  exp.anneal = propagate(tracker, config, sched);

  Table params;
  params.columns = {"s", "E_kV_cm", "Delta_a_Hz", "Delta_b_Hz",
                    "J_ab_Hz", "h_a_Hz", "h_b_Hz"};
  for (size_t i = 0; i < exp.trace.s.size(); ++i)
    params.add_row({exp.trace.s[i], exp.trace.e_kv_cm[i], exp.trace.delta_hz[i],
                    exp.trace.delta_hz[i], exp.trace.j_ab_hz[i],
                    exp.trace.h_a_hz[i], exp.trace.h_b_hz[i]});
  write_csv(out_dir / "parameters.csv", params);

  Table plot;
  plot.columns = {"s", "Delta_Hz", "J_ab_Hz"};
  for (size_t i = 0; i < exp.trace.s.size(); ++i)
    plot.add_row({exp.trace.s[i], exp.trace.delta_hz[i], exp.trace.j_ab_hz[i]});
  emit_svg(out_dir / "parameters.svg", plot, PlotKind::lines,
           "qubit parameters along the ramp");

  write_trajectory_csv(out_dir / "trajectory.csv", exp.anneal);
  write_distribution_csv(out_dir / "distribution.csv", exp.anneal);
  const IsingModel final_model =
      effective_ising(tracker, config, exp.fields.e_z_kv_cm);
  write_ising_csv(out_dir / "ising_edges.csv", out_dir / "ising_biases.csv",
                  final_model);
  write_manifest(out_dir, "two_qubit",
                 {{"molecule", mol.name},
                  {"B_mT", format_full(b_mt)},
                  {"E_perp_kV_cm", format_full(exp.fields.e_perp_kv_cm)},
                  {"E_z_kV_cm", format_full(exp.fields.e_z_kv_cm)},
                  {"T_ms", format_full(t_ms)},
                  {"n_steps", std::to_string(n_steps)}});
  return exp;
}

AnnealSweep run_chain_1d(const fs::path& out_dir, int n_qubits,
                         const std::vector<double>& times_ms,
                         const RunOptions& opts, const MoleculeConstants& mol,
                         double b_mt, int n_steps) {
  BetaGammaTracker tracker(mol, b_mt, opts.n_max);
  AnnealSweep sweep;
  sweep.fields = working_fields(tracker);
  sweep.times_ms = times_ms;
  const LatticeConfig config = make_chain_1d(mol, b_mt, n_qubits);
  sweep.results = run_times(tracker, config, sweep.fields, times_ms, n_steps,
                            effective_threads(opts));
  write_sweep_outputs(out_dir, sweep);
  write_manifest(out_dir, "chain_1d",
                 {{"molecule", mol.name},
                  {"B_mT", format_full(b_mt)},
                  {"n_qubits", std::to_string(n_qubits)},
                  {"E_perp_kV_cm", format_full(sweep.fields.e_perp_kv_cm)},
                  {"E_z_kV_cm", format_full(sweep.fields.e_z_kv_cm)},
                  {"n_steps", std::to_string(n_steps)}});
  return sweep;
}

AnnealSweep run_lattice_2d(const fs::path& out_dir, int rows, int cols,
                           const std::vector<double>& times_ms,
                           const RunOptions& opts, const MoleculeConstants& mol,
                           double b_mt, int n_steps) {
  BetaGammaTracker tracker(mol, b_mt, opts.n_max);
  AnnealSweep sweep;
  sweep.fields = working_fields(tracker);
  sweep.times_ms = times_ms;
  const LatticeConfig config = make_grid_2d(mol, b_mt, rows, cols);
  const std::uint64_t dim =
      binomial(config.n_molecules(), config.sector_excitations());
  if (dim > 48620 || (dim > 12870 && !opts.opt_in_3x3))
    throw SizeLimitError("grid sector dimension " + std::to_string(dim) +
                         " requires the large-instance opt-in");
  sweep.results = run_times(tracker, config, sweep.fields, times_ms, n_steps,
                            effective_threads(opts));
  write_sweep_outputs(out_dir, sweep);
  write_manifest(out_dir, "grid_2d",
                 {{"molecule", mol.name},
                  {"B_mT", format_full(b_mt)},
                  {"rows", std::to_string(rows)},
                  {"cols", std::to_string(cols)},
                  {"E_perp_kV_cm", format_full(sweep.fields.e_perp_kv_cm)},
                  {"E_z_kV_cm", format_full(sweep.fields.e_z_kv_cm)},
                  {"n_steps", std::to_string(n_steps)}});
  return sweep;
}

int encode_grid_size(int rows, int cols) { return rows * 100 + cols; }

ScalingStudy scaling_study(const fs::path& out_dir, LatticeFamily family,
                           const std::vector<int>& sizes,
                           const std::vector<double>& times_ms,
                           const RunOptions& opts, const MoleculeConstants& mol,
                           double b_mt) {
  BetaGammaTracker tracker(mol, b_mt, opts.n_max);
  const WorkingFields wf = working_fields(tracker);

  ScalingStudy study;
  study.family = family;
  study.times_ms = times_ms;

  for (int size : sizes) {
    LatticeConfig config;
    ScalingPoint point;
    int n_steps = 200;
    if (family == LatticeFamily::grid_af) {
      const int rows = size / 100, cols = size % 100;
      config = make_grid_2d(mol, b_mt, rows, cols);
      point.size_label = std::to_string(rows) + "x" + std::to_string(cols);
      n_steps = 100;
    } else if (family == LatticeFamily::chain_af) {
      config = make_chain_1d(mol, b_mt, size);
      point.size_label = std::to_string(size);
    } else {
      config = make_chain_1d_fm(mol, b_mt, size);
      point.size_label = std::to_string(size);
    }
    point.n_qubits = config.n_qubits();

    const std::uint64_t dim =
        binomial(config.n_molecules(), config.sector_excitations());
    if (dim > 12870 && !opts.opt_in_3x3)
      throw SizeLimitError("sector dimension " + std::to_string(dim) +
                           " requires the large-instance opt-in");

    const std::vector<AnnealResult> results = run_times(
        tracker, config, wf, times_ms, n_steps, effective_threads(opts));
    size_t best = 0;
    for (size_t i = 0; i < results.size(); ++i) {
      point.p_solution_by_time.push_back(results[i].final_report.p_solution);
      point.p_invalid_by_time.push_back(results[i].final_report.p_invalid);
      if (results[i].final_report.p_solution >
          results[best].final_report.p_solution)
        best = i;
    }
    point.best_t_ms = times_ms[best];
    point.p_solution = results[best].final_report.p_solution;
    point.p_invalid = results[best].final_report.p_invalid;
    study.points.push_back(std::move(point));
  }

  Table t;
  t.columns = {"family", "size", "n_qubits", "best_T_ms", "p_solution",
               "p_invalid"};
  for (const ScalingPoint& p : study.points)
    t.add_row({std::string(family_name(family)), p.size_label,
               static_cast<double>(p.n_qubits), p.best_t_ms, p.p_solution,
               p.p_invalid});
  write_csv(out_dir / ("scaling_" + std::string(family_name(family)) + ".csv"),
            t);

  Table plot;
  plot.columns = {"n_qubits", "p_solution", "p_invalid"};
  for (const ScalingPoint& p : study.points)
    plot.add_row({static_cast<double>(p.n_qubits), p.p_solution, p.p_invalid});
  emit_svg(out_dir /
               ("scaling_" + std::string(family_name(family)) + ".svg"),
           plot, PlotKind::lines,
           "scaling of " + std::string(family_name(family)));
  write_manifest(out_dir, std::string("scale_") + family_name(family),
                 {{"molecule", mol.name},
                  {"B_mT", format_full(b_mt)},
                  {"E_perp_kV_cm", format_full(wf.e_perp_kv_cm)},
                  {"E_z_kV_cm", format_full(wf.e_z_kv_cm)}});
  return study;
}

Stack3dParameters stack_3d_parameters(const fs::path& out_dir, int layers,
                                      int rows, int cols,
                                      const RunOptions& opts,
                                      const MoleculeConstants& mol,
                                      double b_mt, int n_points) {
  BetaGammaTracker tracker(mol, b_mt, opts.n_max);
  Stack3dParameters out;
  out.fields = working_fields(tracker);
  out.config = make_stack_3d(mol, b_mt, layers, rows, cols);

  const int nq = out.config.n_qubits();
  out.h_hz.assign(static_cast<size_t>(nq), {});
  for (int i = 0; i < n_points; ++i) {
    const double s = static_cast<double>(i) / (n_points - 1);
    const double e = out.fields.e_perp_kv_cm +
                     s * (out.fields.e_z_kv_cm - out.fields.e_perp_kv_cm);
    const IsingModel model = effective_ising(tracker, out.config, e);
    out.s.push_back(s);
    for (int q = 0; q < nq; ++q)
      out.h_hz[static_cast<size_t>(q)].push_back(model.h_hz(q));
  }

  out.final_model = effective_ising(tracker, out.config, out.fields.e_z_kv_cm);
  const int per_layer = rows * cols;
  out.intra_layer_min_hz = std::numeric_limits<double>::infinity();
  out.inter_layer_max_hz = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < nq; ++a)
    for (int b = a + 1; b < nq; ++b) {
      const int la = a / per_layer, lb = b / per_layer;
      const double j = out.final_model.j_hz(a, b);
      if (la == lb)
        out.intra_layer_min_hz = std::min(out.intra_layer_min_hz, j);
      else if (lb == la + 1 && (b % per_layer) == (a % per_layer))
        out.inter_layer_max_hz = std::max(out.inter_layer_max_hz, j);
    }

  Table biases;
  biases.columns = {"s"};
  for (int q = 0; q < nq; ++q) biases.columns.push_back("h_q" + std::to_string(q) + "_Hz");
  for (size_t i = 0; i < out.s.size(); ++i) {
    std::vector<Cell> row{out.s[i]};
    for (int q = 0; q < nq; ++q)
      row.push_back(out.h_hz[static_cast<size_t>(q)][i]);
    biases.add_row(std::move(row));
  }
  write_csv(out_dir / "stack_biases.csv", biases);
  write_ising_csv(out_dir / "ising_edges.csv", out_dir / "ising_biases.csv",
                  out.final_model);
  write_manifest(out_dir, "stack_3d",
                 {{"molecule", mol.name},
                  {"B_mT", format_full(b_mt)},
                  {"layers", std::to_string(layers)},
                  {"rows", std::to_string(rows)},
                  {"cols", std::to_string(cols)}});
  return out;
}

TrackedSpectrum run_spectrum(const fs::path& out_dir,
                             const MoleculeConstants& mol, double b_mt,
                             double e_min_kv_cm, double e_max_kv_cm,
                             int n_points, int n_levels, int n_max) {
  if (n_points < 1) throw ConfigError("spectrum grid needs at least one point");
  std::vector<double> grid(static_cast<size_t>(n_points));
  for (int i = 0; i < n_points; ++i)
    grid[static_cast<size_t>(i)] =
        (n_points == 1)
            ? e_min_kv_cm
            : e_min_kv_cm + (e_max_kv_cm - e_min_kv_cm) * i / (n_points - 1);
  const TrackedSpectrum spec = track_spectrum(mol, b_mt, grid, n_max);

  Table t;
  t.columns = {"E_kV_cm", "state_index", "label", "energy_Hz"};
  const int dim = static_cast<int>(spec.energies_hz.cols());
  for (size_t g = 0; g < spec.grid_kv_cm.size(); ++g)
    for (int st = 0; st < dim; ++st) {
      std::string label;
      for (const auto& [l, idx] : spec.labels)
        if (idx == st) label = label_name(l);
      t.add_row({spec.grid_kv_cm[g], static_cast<double>(st), label,
                 spec.energies_hz(static_cast<Eigen::Index>(g), st)});
    }
  write_csv(out_dir / "spectrum.csv", t);

  // lowest n_levels by energy at the first grid point
  std::vector<int> order(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return spec.energies_hz(0, a) < spec.energies_hz(0, b);
  });
  const int n_plot = std::min(n_levels, dim);
  Table plot;
  plot.columns = {"E_kV_cm"};
  for (int i = 0; i < n_plot; ++i)
    plot.columns.push_back("level_" + std::to_string(i) + "_GHz");
  for (size_t g = 0; g < spec.grid_kv_cm.size(); ++g) {
    std::vector<Cell> row{spec.grid_kv_cm[g]};
    for (int i = 0; i < n_plot; ++i)
      row.push_back(1e-9 * spec.energies_hz(static_cast<Eigen::Index>(g),
                                            order[static_cast<size_t>(i)]));
    plot.add_row(std::move(row));
  }
  emit_svg(out_dir / "spectrum.svg", plot, PlotKind::lines,
           mol.name + " levels vs electric field");
  write_manifest(out_dir, "spectrum",
                 {{"molecule", mol.name},
                  {"B_mT", format_full(b_mt)},
                  {"E_min_kV_cm", format_full(e_min_kv_cm)},
                  {"E_max_kV_cm", format_full(e_max_kv_cm)},
                  {"n_points", std::to_string(n_points)}});
  return spec;
}

CouplingCurve run_couplings(const fs::path& out_dir,
                            const MoleculeConstants& mol, double b_mt,
                            double e_min_kv_cm, double e_max_kv_cm,
                            int n_points, const PairGeometry& geom, int n_max) {
  if (n_points < 2) throw ConfigError("coupling curve needs at least two points");
  BetaGammaTracker tracker(mol, b_mt, n_max);
  CouplingCurve curve;
  Table t;
  t.columns = {"E_kV_cm", "B_mT",   "R_nm",   "theta_rad", "J_perp_Hz",
               "J_z_Hz",  "W_Hz",   "K_Hz",   "V_Hz"};
  for (int i = 0; i < n_points; ++i) {
    const double e =
        e_min_kv_cm + (e_max_kv_cm - e_min_kv_cm) * i / (n_points - 1);
    const PairCouplings pc = pair_couplings(tracker, e, geom);
    curve.e_kv_cm.push_back(e);
    curve.couplings.push_back(pc);
    t.add_row({e, b_mt, geom.r_nm, geom.theta_rad, pc.j_perp_hz, pc.j_z_hz,
               pc.w_hz, pc.k_hz, pc.v_hz});
  }
  write_csv(out_dir / "couplings.csv", t);

  Table plot;
  plot.columns = {"E_kV_cm", "abs_J_perp_Hz", "abs_J_z_Hz"};
  for (size_t i = 0; i < curve.e_kv_cm.size(); ++i)
    plot.add_row({curve.e_kv_cm[i], std::abs(curve.couplings[i].j_perp_hz),
                  std::abs(curve.couplings[i].j_z_hz)});
  emit_svg(out_dir / "couplings.svg", plot, PlotKind::lines,
           mol.name + " pair couplings vs electric field");
  write_manifest(out_dir, "couplings",
                 {{"molecule", mol.name},
                  {"B_mT", format_full(b_mt)},
                  {"R_nm", format_full(geom.r_nm)},
                  {"theta_rad", format_full(geom.theta_rad)}});
  return curve;
}

void write_manifest(
    const fs::path& out_dir, const std::string& experiment,
    const std::vector<std::pair<std::string, std::string>>& entries) {
  std::string s;
  s += "experiment: " + experiment + "\n";
  for (const auto& [key, value] : entries) s += key + ": " + value + "\n";
  s += "constants.h_J_s: " + format_full(constants::planck_J_s) + "\n";
  s += "constants.mu_B_J_T: " + format_full(constants::bohr_magneton_J_T) + "\n";
  s += "constants.g_S: " + format_full(constants::electron_g_factor) + "\n";
  s += "constants.debye_C_m: " + format_full(constants::debye_C_m) + "\n";
  s += "constants.four_pi_eps0: " + format_full(constants::four_pi_eps0) + "\n";
  s += "constants.hz_per_cm1: " + format_full(constants::hz_per_cm1) + "\n";
  write_text_file(out_dir / "manifest", s);
}

void write_trajectory_csv(const fs::path& path, const AnnealResult& result) {
  Table t;
  t.columns = {"s", "t_ms", "p_solution", "p_invalid", "p_valid_other"};
  for (size_t i = 0; i < result.s.size(); ++i)
    t.add_row({result.s[i], result.t_ms[i], result.p_solution[i],
               result.p_invalid[i], result.p_valid_other[i]});
  write_csv(path, t);
}

void write_distribution_csv(const fs::path& path, const AnnealResult& result) {
  Table t;
  t.columns = {"qubit_bitstring_or_INVALID", "probability"};
  for (Eigen::Index c = 0; c < result.final_report.valid_probs.size(); ++c)
    t.add_row({config_bits_string(static_cast<std::uint32_t>(c), result.n_qubits),
               result.final_report.valid_probs(c)});
  t.add_row({std::string("INVALID"), result.final_report.p_invalid});
  write_csv(path, t);
}

void write_ising_csv(const fs::path& edges_path, const fs::path& biases_path,
                     const IsingModel& model) {
  Table edges;
  edges.columns = {"qubit_a", "qubit_b", "J_Hz"};
  for (int a = 0; a < model.n_qubits; ++a)
    for (int b = a + 1; b < model.n_qubits; ++b)
      edges.add_row({static_cast<double>(a), static_cast<double>(b),
                     model.j_hz(a, b)});
  write_csv(edges_path, edges);

  Table biases;
  biases.columns = {"qubit", "h_Hz"};
  for (int a = 0; a < model.n_qubits; ++a)
    biases.add_row({static_cast<double>(a), model.h_hz(a)});
  write_csv(biases_path, biases);
}

}  // namespace molqa
