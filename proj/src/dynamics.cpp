#include "molqa/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace molqa {

namespace {

using Complex = std::complex<double>;

constexpr double kNormDriftAbort = 1e-6;

double diagonal_mean(const Eigen::SparseMatrix<double>& h) {
  double sum = 0.0;
  for (int k = 0; k < h.outerSize(); ++k) sum += h.coeff(k, k);
  return sum / h.rows();
}

// exact exp(-i 2 pi (H - shift) dt) psi via dense eigendecomposition; the
// shift phase is restored afterwards
void evolve_dense(const Eigen::SparseMatrix<double>& h_hz, double dt_s,
                  Eigen::VectorXcd& psi, double shift_hz) {
  Eigen::MatrixXd dense(h_hz);
  dense.diagonal().array() -= shift_hz;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success)
    throw NumericalError("sector eigensolver failed");
  const Eigen::VectorXd& lam = solver.eigenvalues();
  const Eigen::MatrixXd& v = solver.eigenvectors();
  Eigen::VectorXcd coeffs = v.transpose() * psi;
  const double omega = 2.0 * std::numbers::pi * dt_s;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    coeffs(i) *= std::exp(Complex(0.0, -omega * lam(i)));
  psi = v * coeffs;
  psi *= std::exp(Complex(0.0, -omega * shift_hz));
}

// exp(-i T) e1 for a real symmetric tridiagonal T given by alpha/beta
Eigen::VectorXcd expm_tridiag_e1(const std::vector<double>& alpha,
                                 const std::vector<double>& beta, double omega) {
  const int m = static_cast<int>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    t(i, i) = alpha[static_cast<size_t>(i)];
    if (i + 1 < m)
      t(i, i + 1) = t(i + 1, i) = beta[static_cast<size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
  const Eigen::VectorXd& lam = solver.eigenvalues();
  const Eigen::MatrixXd& q = solver.eigenvectors();
  Eigen::VectorXcd coeffs(m);
  for (int i = 0; i < m; ++i)
    coeffs(i) = std::exp(Complex(0.0, -omega * lam(i))) * q(0, i);
  return q * coeffs;
}

// one Lanczos substep: psi <- exp(-i 2 pi A dt) psi with error estimate;
// returns false when the Krylov space hit max_dim without converging
bool lanczos_substep(const Eigen::SparseMatrix<double>& a_hz, double dt_s,
                     Eigen::VectorXcd& psi, double tol, int max_dim) {
  const double omega = 2.0 * std::numbers::pi * dt_s;
  const double norm0 = psi.norm();
  if (norm0 == 0.0) return true;

  const Eigen::Index n = psi.size();
  std::vector<Eigen::VectorXcd> v;
  v.reserve(static_cast<size_t>(max_dim));
  std::vector<double> alpha, beta;
  v.push_back(psi / norm0);

  for (int j = 0; j < max_dim; ++j) {
    Eigen::VectorXcd w = a_hz * v[static_cast<size_t>(j)];
    const double aj = std::real(v[static_cast<size_t>(j)].dot(w));
    alpha.push_back(aj);
    w -= aj * v[static_cast<size_t>(j)];
    if (j > 0) w -= beta[static_cast<size_t>(j - 1)] * v[static_cast<size_t>(j - 1)];
    // full reorthogonalization, two sweeps
    for (int sweep = 0; sweep < 2; ++sweep)
      for (const Eigen::VectorXcd& u : v) w -= u.dot(w) * u;
    const double bj = w.norm();

    const Eigen::VectorXcd small = expm_tridiag_e1(alpha, beta, omega);
    const int m = static_cast<int>(alpha.size());
    // a-posteriori truncation estimate from the last Krylov component
    const double err = std::abs(omega) * bj * std::abs(small(m - 1));
    const bool happy = bj < 1e-13 * std::max(1.0, std::abs(aj));
    if (err < tol || happy || j + 1 == max_dim) {
      if (err < tol || happy) {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
        for (int i = 0; i < m; ++i) out += small(i) * v[static_cast<size_t>(i)];
        psi = norm0 * out;
        return true;
      }
      return false;
    }
    beta.push_back(bj);
    v.push_back(w / bj);
  }
  return false;
}

void evolve_krylov(const Eigen::SparseMatrix<double>& h_hz, double dt_s,
                   Eigen::VectorXcd& psi, double shift_hz,
                   const PropagateOptions& opts) {
  Eigen::SparseMatrix<double> a = h_hz;
  for (int k = 0; k < a.outerSize(); ++k) a.coeffRef(k, k) -= shift_hz;

  int n_sub = 1;
  constexpr int kMaxSub = 1 << 12;
  for (;;) {
    Eigen::VectorXcd work = psi;
    bool ok = true;
    const double sub_dt = dt_s / n_sub;
    const double sub_tol = opts.krylov_tol / n_sub;
    for (int s = 0; s < n_sub; ++s) {
      if (!lanczos_substep(a, sub_dt, work, sub_tol, opts.krylov_max_dim)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      psi = work;
      break;
    }
    n_sub *= 2;
    if (n_sub > kMaxSub)
      throw NumericalError("Krylov propagation failed to converge");
  }
  psi *= std::exp(Complex(0.0, -2.0 * std::numbers::pi * dt_s * shift_hz));
}

}  // namespace

void Schedule::validate() const {
  if (n_steps < 1) throw ConfigError("schedule needs at least one step");
  if (!(t_ms > 0.0)) throw ConfigError("annealing time must be positive");
  if (!(stop_s > 0.0) || stop_s > 1.0)
    throw ConfigError("stop fraction must lie in (0, 1]");
}

Eigen::SparseMatrix<double> build_sector_hamiltonian(
    const CouplingTables& tables, const SectorBasis& basis) {
  const int n = basis.n_sites();
  if (tables.h_hz.size() != n)
    throw ConfigError("coupling tables do not match the sector basis");

  const std::int64_t dim = basis.size();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(dim) * (static_cast<size_t>(n) + 2));

  for (std::int64_t r = 0; r < dim; ++r) {
    const std::uint64_t bits = basis.state(r);
    double diag = 0.0;
    for (int i = 0; i < n; ++i) {
      const double si = (bits >> i) & 1 ? 0.5 : -0.5;
      diag += tables.h_hz(i) * si;
      for (int j = i + 1; j < n; ++j) {
        const double sj = (bits >> j) & 1 ? 0.5 : -0.5;
        diag += tables.j_z_hz(i, j) * si * sj;
      }
    }
    triplets.emplace_back(static_cast<int>(r), static_cast<int>(r), diag);

    // each connected pair of sector states differs by exactly one up-down
    // swap, so restricting to higher-ranked partners adds it exactly once
    for (int i = 0; i < n; ++i) {
      if (!((bits >> i) & 1)) continue;
      for (int j = 0; j < n; ++j) {
        if ((bits >> j) & 1) continue;
        const double jp = tables.j_perp_hz(i, j);
        if (jp == 0.0) continue;
        const std::uint64_t flipped =
            (bits & ~(std::uint64_t{1} << i)) | (std::uint64_t{1} << j);
        const std::int64_t rp = basis.rank(flipped);
        if (rp <= r) continue;
        triplets.emplace_back(static_cast<int>(r), static_cast<int>(rp),
                              0.5 * jp);
        triplets.emplace_back(static_cast<int>(rp), static_cast<int>(r),
                              0.5 * jp);
      }
    }
  }

  Eigen::SparseMatrix<double> h(static_cast<int>(dim), static_cast<int>(dim));
  h.setFromTriplets(triplets.begin(), triplets.end());
  h.makeCompressed();
  return h;
}

Eigen::VectorXcd initial_state(const LatticeConfig& config,
                               const CouplingTables& tables_at_start,
                               const SectorBasis& basis,
                               const StateClassification& classification) {
  const int nq = config.n_qubits();
  std::vector<double> sign(static_cast<size_t>(nq));
  for (int a = 0; a < nq; ++a) {
    const QubitPair& p = config.qubits[static_cast<size_t>(a)];
    const double jz = tables_at_start.j_z_hz(p.first, p.second);
    if (jz == 0.0)
      throw NumericalError(
          "intra-qubit Ising coupling vanishes; initial superposition sign is "
          "ambiguous for qubit " +
          std::to_string(a));
    sign[static_cast<size_t>(a)] = (jz < 0.0) ? 1.0 : -1.0;
  }

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.size());
  const double amp0 = std::pow(0.5, 0.5 * nq);
  for (std::int64_t r = 0; r < basis.size(); ++r) {
    const std::int32_t qc = classification.qubit_config[static_cast<size_t>(r)];
    if (qc < 0) continue;
    double amp = amp0;
    for (int a = 0; a < nq; ++a)
      if ((qc >> a) & 1) amp *= sign[static_cast<size_t>(a)];
    psi(r) = amp;
  }
  return psi;
}

ProbabilityReport measure(const Eigen::VectorXcd& state,
                          const StateClassification& classification,
                          const std::vector<std::uint32_t>& ground_configs) {
  ProbabilityReport rep;
  std::uint32_t max_config = 0;
  for (size_t r = 0; r < classification.qubit_config.size(); ++r)
    if (classification.qubit_config[r] >= 0)
      max_config = std::max(
          max_config, static_cast<std::uint32_t>(classification.qubit_config[r]));
  rep.valid_probs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(max_config) + 1);

  std::vector<bool> is_ground(static_cast<size_t>(max_config) + 1, false);
  for (std::uint32_t g : ground_configs)
    if (g < is_ground.size()) is_ground[g] = true;

  for (Eigen::Index r = 0; r < state.size(); ++r) {
    const double p = std::norm(state(r));
    const std::int32_t qc = classification.qubit_config[static_cast<size_t>(r)];
    if (qc < 0) {
      rep.p_invalid += p;
    } else {
      rep.valid_probs(qc) += p;
      if (is_ground[static_cast<size_t>(qc)])
        rep.p_solution += p;
      else
        rep.p_valid_other += p;
    }
  }
  return rep;
}

void evolve_step(const Eigen::SparseMatrix<double>& h_hz, double dt_s,
                 Eigen::VectorXcd& psi, PropagationMethod method,
                 const PropagateOptions& opts) {
  if (method == PropagationMethod::automatic)
    method = (h_hz.rows() <= opts.dense_dim_limit) ? PropagationMethod::dense
                                                   : PropagationMethod::krylov;
  const double shift = diagonal_mean(h_hz);
  if (method == PropagationMethod::dense)
    evolve_dense(h_hz, dt_s, psi, shift);
  else
    evolve_krylov(h_hz, dt_s, psi, shift, opts);
}

AnnealResult propagate(const BetaGammaTracker& tracker,
                       const LatticeConfig& config, const Schedule& schedule,
                       const PropagateOptions& opts) {
  config.validate();
  schedule.validate();

  const int n = config.n_molecules();
  const int k = config.sector_excitations();
  if (opts.sector_dim_ceiling > 0) {
    const std::uint64_t dim = binomial(n, k);
    if (dim > static_cast<std::uint64_t>(opts.sector_dim_ceiling))
      throw SizeLimitError("sector dimension " + std::to_string(dim) +
                           " exceeds the configured ceiling");
  }

  const SectorBasis basis(n, k);
  const StateClassification classification = classify_states(config, basis);

  const IsingModel ising =
      effective_ising(tracker, config, schedule.e_end_kv_cm);
  const GroundSet ground = brute_force_ground(ising);

  const CouplingTables tables0 =
      build_coupling_tables(tracker, config, schedule.e_start_kv_cm);
  Eigen::VectorXcd psi = initial_state(config, tables0, basis, classification);

  AnnealResult result;
  result.n_qubits = config.n_qubits();
  result.ground_configs = ground.configs;
  result.ground_energy_hz = ground.energy_hz;

  const auto record = [&](double s) {
    const ProbabilityReport rep = measure(psi, classification, ground.configs);
    result.s.push_back(s);
    result.t_ms.push_back(s * schedule.t_ms);
    result.p_solution.push_back(rep.p_solution);
    result.p_invalid.push_back(rep.p_invalid);
    result.p_valid_other.push_back(rep.p_valid_other);
  };
  record(0.0);

  const double dt_s = schedule.stop_s * schedule.t_ms * 1e-3 / schedule.n_steps;
  for (int step = 0; step < schedule.n_steps; ++step) {
    const double s_mid = (step + 0.5) * schedule.stop_s / schedule.n_steps;
    const CouplingTables tables =
        build_coupling_tables(tracker, config, schedule.field_at(s_mid));
    const Eigen::SparseMatrix<double> h = build_sector_hamiltonian(tables, basis);
    evolve_step(h, dt_s, psi, opts.method, opts);

    const double drift = std::abs(psi.norm() - 1.0);
    if (drift > kNormDriftAbort)
      throw NumericalError("state norm drift " + std::to_string(drift) +
                           " at step " + std::to_string(step + 1) + " of " +
                           std::to_string(schedule.n_steps));
    record((step + 1.0) * schedule.stop_s / schedule.n_steps);
  }

  result.final_report = measure(psi, classification, ground.configs);
  for (std::int64_t r = 0; r < basis.size(); ++r)
    if (classification.qubit_config[static_cast<size_t>(r)] < 0) {
      const double p = std::norm(psi(r));
      if (p > 0.0) result.final_invalid_probs.emplace_back(basis.state(r), p);
    }
  result.final_state = std::move(psi);
  return result;
}

}  // namespace molqa
