#include "molqa/molecule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "molqa/constants.hpp"
#include "molqa/wigner.hpp"

namespace molqa {

namespace {

constexpr double kGoldenRatio = 0.6180339887498949;
constexpr double kFieldResolutionKvCm = 1e-3;  // 1 V/cm

// largest-|coefficient| entry made positive; ties resolved by lowest index
void fix_phase(Eigen::Ref<Eigen::MatrixXd> vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double a = std::abs(vectors(r, c));
      if (a > best + 1e-15) {
        best = a;
        imax = r;
      }
    }
    if (vectors(imax, c) < 0.0) vectors.col(c) = -vectors.col(c);
  }
}

// greedy one-to-one max-|overlap| assignment; returns map tracked -> new col
std::vector<int> assign_by_overlap(const Eigen::MatrixXd& prev,
                                   const Eigen::MatrixXd& next,
                                   double e_kv_cm) {
  const Eigen::Index dim = prev.cols();
  Eigen::MatrixXd overlap = (prev.transpose() * next).cwiseAbs();
  std::vector<int> match(static_cast<size_t>(dim), -1);
  std::vector<bool> row_used(static_cast<size_t>(dim), false);
  std::vector<bool> col_used(static_cast<size_t>(dim), false);
  for (Eigen::Index pick = 0; pick < dim; ++pick) {
    double best = -1.0;
    Eigen::Index bi = -1, bj = -1;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (row_used[static_cast<size_t>(i)]) continue;
      for (Eigen::Index j = 0; j < dim; ++j) {
        if (col_used[static_cast<size_t>(j)]) continue;
        // ties broken by energy ordering (lower new index first)
        if (overlap(i, j) > best + 1e-12) {
          best = overlap(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    if (best <= 0.5) {
      throw TrackingError(
          "state tracking failure (max overlap <= 0.5) near E = " +
              std::to_string(e_kv_cm) + " kV/cm; refine the grid",
          e_kv_cm);
    }
    match[static_cast<size_t>(bi)] = static_cast<int>(bj);
    row_used[static_cast<size_t>(bi)] = true;
    col_used[static_cast<size_t>(bj)] = true;
  }
  return match;
}

int dominant_column(const Eigen::MatrixXd& vectors, int basis_row) {
  Eigen::Index best_col = 0;
  double best = -1.0;
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    const double a = std::abs(vectors(basis_row, c));
    if (a > best) {
      best = a;
      best_col = c;
    }
  }
  return static_cast<int>(best_col);
}

}  // namespace

MoleculeConstants srf() { return {0.251, 2.49e-3, 3.47, "SrF"}; }
MoleculeConstants sri() { return {0.0367, 3.29e-3, 6.00, "SrI"}; }

RotorBasis::RotorBasis(int n_max) : n_max_(n_max) {
  if (n_max < 1) throw ConfigError("rotational basis cutoff must be >= 1");
  states_.reserve(static_cast<size_t>(2 * (n_max + 1) * (n_max + 1)));
  for (int n = 0; n <= n_max; ++n)
    for (int m_n = -n; m_n <= n; ++m_n)
      for (int m_s2 : {-1, +1}) states_.push_back({n, m_n, m_s2});
}

int RotorBasis::index(int n, int m_n, int m_s2) const {
  if (n < 0 || n > n_max_ || std::abs(m_n) > n || std::abs(m_s2) != 1)
    throw ConfigError("basis state outside rotor basis");
  return 2 * (n * n + (m_n + n)) + (m_s2 + 1) / 2;
}

double dipole_element(const BasisState& bra, const BasisState& ket, int q) {
  if (bra.m_s2 != ket.m_s2) return 0.0;
  const double n = bra.n, np = ket.n;
  const double sign = (bra.m_n % 2 == 0) ? 1.0 : -1.0;
  const double w1 = wigner_3j(n, 1, np, 0, 0, 0);
  if (w1 == 0.0) return 0.0;
  const double w2 = wigner_3j(n, 1, np, -bra.m_n, q, ket.m_n);
  return sign * std::sqrt((2.0 * n + 1.0) * (2.0 * np + 1.0)) * w1 * w2;
}

Eigen::MatrixXd dipole_matrix(const RotorBasis& basis, int q) {
  const int dim = basis.size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const BasisState& bra = basis.state(i);
      const BasisState& ket = basis.state(j);
      if (std::abs(bra.n - ket.n) != 1) continue;
      d(i, j) = dipole_element(bra, ket, q);
    }
  return d;
}

Eigen::MatrixXd build_hamiltonian(const MoleculeConstants& mol,
                                  const FieldPoint& field, int n_max) {
  using namespace constants;
  const RotorBasis basis(n_max);
  const int dim = basis.size();

  const double b_rot_hz = mol.rotational_cm1 * hz_per_cm1;
  const double gamma_hz = mol.spin_rotation_cm1 * hz_per_cm1;
  const double zeeman_hz = zeeman_hz_per_T * field.b_mt * 1e-3;
  const double stark_hz =
      stark_hz_per_debye_kv_cm * mol.dipole_debye * field.effective_e_kv_cm();

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const BasisState& s = basis.state(i);
    const double m_s = 0.5 * s.m_s2;
    h(i, i) += b_rot_hz * s.n * (s.n + 1);
    h(i, i) += gamma_hz * s.m_n * m_s;
    h(i, i) += zeeman_hz * m_s;

    // spin-rotation ladder: (gamma/2) (N+ S- + N- S+); fill the raising
    // direction and mirror
    if (s.m_s2 == +1 && s.m_n + 1 <= s.n) {
      const double amp =
          0.5 * gamma_hz *
          std::sqrt(static_cast<double>(s.n * (s.n + 1) - s.m_n * (s.m_n + 1)));
      const int j = basis.index(s.n, s.m_n + 1, -1);
      h(j, i) += amp;
      h(i, j) += amp;
    }
  }

  // Stark term -E d_0, co-aligned fields couple N to N +/- 1 at fixed M_N, M_S
  if (stark_hz != 0.0) {
    for (int i = 0; i < dim; ++i) {
      const BasisState& s = basis.state(i);
      if (s.n + 1 > n_max) continue;
      const BasisState upper{s.n + 1, s.m_n, s.m_s2};
      const int j = basis.index(upper.n, upper.m_n, upper.m_s2);
      const double g = dipole_element(upper, s, 0);
      if (g == 0.0) continue;
      h(j, i) += -stark_hz * g;
      h(i, j) += -stark_hz * g;
    }
  }
  return h;
}

EigenSystem diagonalize(const MoleculeConstants& mol, const FieldPoint& field,
                        int n_max) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      build_hamiltonian(mol, field, n_max));
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigensolver failed to converge");
  EigenSystem sys{solver.eigenvalues(), solver.eigenvectors()};
  fix_phase(sys.vectors);
  return sys;
}

const char* label_name(StateLabel label) {
  switch (label) {
    case StateLabel::alpha: return "alpha";
    case StateLabel::beta: return "beta";
    case StateLabel::gamma: return "gamma";
  }
  return "?";
}

TrackedSpectrum track_spectrum(const MoleculeConstants& mol, double b_mt,
                               const std::vector<double>& e_grid_kv_cm,
                               int n_max) {
  if (e_grid_kv_cm.empty()) throw ConfigError("empty electric-field grid");
  for (size_t g = 1; g < e_grid_kv_cm.size(); ++g)
    if (e_grid_kv_cm[g] <= e_grid_kv_cm[g - 1])
      throw ConfigError("electric-field grid must be strictly increasing");
  if (b_mt <= 0.0)
    throw TrackingError("state labels are undefined at zero magnetic field");

  const RotorBasis basis(n_max);
  const int dim = basis.size();
  const size_t n_grid = e_grid_kv_cm.size();

  TrackedSpectrum out;
  out.grid_kv_cm = e_grid_kv_cm;
  out.energies_hz.resize(static_cast<Eigen::Index>(n_grid), dim);
  out.vectors.resize(n_grid);
  out.n_max = n_max;

  EigenSystem sys =
      diagonalize(mol, {e_grid_kv_cm[0], b_mt, 0.0}, n_max);
  out.energies_hz.row(0) = sys.energies_hz.transpose();
  out.vectors[0] = sys.vectors;

  for (size_t g = 1; g < n_grid; ++g) {
    EigenSystem next = diagonalize(mol, {e_grid_kv_cm[g], b_mt, 0.0}, n_max);
    const std::vector<int> match =
        assign_by_overlap(out.vectors[g - 1], next.vectors, e_grid_kv_cm[g]);
    Eigen::MatrixXd tracked_vecs(dim, dim);
    Eigen::VectorXd tracked_en(dim);
    for (int t = 0; t < dim; ++t) {
      tracked_vecs.col(t) = next.vectors.col(match[static_cast<size_t>(t)]);
      tracked_en(t) = next.energies_hz(match[static_cast<size_t>(t)]);
    }
    out.energies_hz.row(static_cast<Eigen::Index>(g)) = tracked_en.transpose();
    out.vectors[g] = std::move(tracked_vecs);
  }

  // labels from dominant bare character at the low-field end
  const int row_alpha = basis.index(0, 0, -1);
  const int row_gamma = basis.index(0, 0, +1);
  const int row_beta = basis.index(1, 1, -1);
  out.labels[StateLabel::alpha] = dominant_column(out.vectors[0], row_alpha);
  out.labels[StateLabel::beta] = dominant_column(out.vectors[0], row_beta);
  out.labels[StateLabel::gamma] = dominant_column(out.vectors[0], row_gamma);
  if (out.labels[StateLabel::alpha] == out.labels[StateLabel::beta] ||
      out.labels[StateLabel::alpha] == out.labels[StateLabel::gamma] ||
      out.labels[StateLabel::beta] == out.labels[StateLabel::gamma])
    throw TrackingError("alpha/beta/gamma labels are not distinct at the low-field end",
                        e_grid_kv_cm[0]);
  return out;
}

BetaGammaTracker::BetaGammaTracker(const MoleculeConstants& mol, double b_mt,
                                   int n_max)
    : mol_(mol), b_mt_(b_mt), n_max_(n_max) {
  if (b_mt <= 0.0)
    throw TrackingError("state labels are undefined at zero magnetic field");
  if (n_max < 1) throw ConfigError("rotational basis cutoff must be >= 1");

  const RotorBasis basis(n_max);
  EigenSystem sys = diagonalize(mol_, {0.0, b_mt_, 0.0}, n_max_);
  Anchor seed;
  const int col_alpha = dominant_column(sys.vectors, basis.index(0, 0, -1));
  const int col_beta = dominant_column(sys.vectors, basis.index(1, 1, -1));
  const int col_gamma = dominant_column(sys.vectors, basis.index(0, 0, +1));
  if (col_alpha == col_beta || col_alpha == col_gamma || col_beta == col_gamma)
    throw TrackingError("alpha/beta/gamma labels are not distinct at zero field");
  seed.e_alpha = sys.energies_hz(col_alpha);
  seed.e_beta = sys.energies_hz(col_beta);
  seed.e_gamma = sys.energies_hz(col_gamma);
  seed.alpha = sys.vectors.col(col_alpha);
  seed.beta = sys.vectors.col(col_beta);
  seed.gamma = sys.vectors.col(col_gamma);
  anchors_.emplace(0.0, std::move(seed));
}

const BetaGammaTracker::Anchor& BetaGammaTracker::resolve(double e_kv_cm) const {
  if (e_kv_cm < 0.0)
    throw ConfigError("electric field must be non-negative");
  std::lock_guard<std::mutex> lock(mutex_);

  auto exact = anchors_.find(e_kv_cm);
  if (exact != anchors_.end()) return exact->second;

  // nearest existing anchor
  auto it = anchors_.lower_bound(e_kv_cm);
  auto nearest = anchors_.begin();
  if (it == anchors_.end()) {
    nearest = std::prev(it);
  } else if (it == anchors_.begin()) {
    nearest = it;
  } else {
    auto lo = std::prev(it);
    nearest = (e_kv_cm - lo->first <= it->first - e_kv_cm) ? lo : it;
  }

  double cur_e = nearest->first;
  Anchor cur = nearest->second;
  constexpr double kMaxStep = 0.2;  // kV/cm

  while (std::abs(cur_e - e_kv_cm) > 1e-15) {
    double step = e_kv_cm - cur_e;
    if (std::abs(step) > kMaxStep) step = (step > 0 ? kMaxStep : -kMaxStep);
    double target = cur_e + step;
    int depth = 0;
    for (;;) {
      EigenSystem sys = diagonalize(mol_, {target, b_mt_, 0.0}, n_max_);
      int cols[3] = {-1, -1, -1};
      const Eigen::VectorXd* prev_vecs[3] = {&cur.alpha, &cur.beta, &cur.gamma};
      double worst = 1.0;
      for (int s = 0; s < 3; ++s) {
        Eigen::VectorXd ov =
            (sys.vectors.transpose() * (*prev_vecs[s])).cwiseAbs();
        Eigen::Index best_col;
        const double best = ov.maxCoeff(&best_col);
        cols[s] = static_cast<int>(best_col);
        worst = std::min(worst, best);
      }
      const bool distinct =
          cols[0] != cols[1] && cols[0] != cols[2] && cols[1] != cols[2];
      if (worst > 0.5 && distinct) {
        Anchor next;
        next.e_alpha = sys.energies_hz(cols[0]);
        next.e_beta = sys.energies_hz(cols[1]);
        next.e_gamma = sys.energies_hz(cols[2]);
        next.alpha = sys.vectors.col(cols[0]);
        next.beta = sys.vectors.col(cols[1]);
        next.gamma = sys.vectors.col(cols[2]);
        cur = std::move(next);
        cur_e = target;
        anchors_.insert_or_assign(cur_e, cur);
        break;
      }
      if (++depth > 40)
        throw TrackingError(
            "adaptive state tracking failed to converge near E = " +
                std::to_string(target) + " kV/cm",
            target);
      target = cur_e + (target - cur_e) * 0.5;
    }
  }
  return anchors_.at(e_kv_cm);
}

DressedTwoLevel BetaGammaTracker::at(double e_kv_cm) const {
  const Anchor& a = resolve(e_kv_cm);
  DressedTwoLevel out;
  out.e_beta_hz = a.e_beta;
  out.e_gamma_hz = a.e_gamma;
  out.beta = a.beta;
  out.gamma = a.gamma;
  return out;
}

double BetaGammaTracker::alpha_energy(double e_kv_cm) const {
  return resolve(e_kv_cm).e_alpha;
}

CrossingResult find_avoided_crossing(const MoleculeConstants& mol, double b_mt,
                                     double e_lo, double e_hi, int n_max) {
  if (!(e_hi > e_lo)) throw ConfigError("invalid crossing bracket");
  BetaGammaTracker tracker(mol, b_mt, n_max);

  const auto gap = [&](double e) {
    const DressedTwoLevel d = tracker.at(e);
    return d.e_gamma_hz - d.e_beta_hz;
  };

  // coarse scan to locate the local minimum
  constexpr int kScanPoints = 201;
  std::vector<double> grid(kScanPoints), gaps(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    grid[static_cast<size_t>(i)] =
        e_lo + (e_hi - e_lo) * i / (kScanPoints - 1);
    gaps[static_cast<size_t>(i)] = gap(grid[static_cast<size_t>(i)]);
  }
  int i_min = -1;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < kScanPoints; ++i) {
    if (gaps[static_cast<size_t>(i)] < best &&
        gaps[static_cast<size_t>(i)] <= gaps[static_cast<size_t>(i - 1)] &&
        gaps[static_cast<size_t>(i)] <= gaps[static_cast<size_t>(i + 1)]) {
      best = gaps[static_cast<size_t>(i)];
      i_min = i;
    }
  }
  if (i_min < 0)
    throw NumericalError("no gap minimum inside bracket [" +
                         std::to_string(e_lo) + ", " + std::to_string(e_hi) +
                         "] kV/cm");

  // golden-section refinement
  double a = grid[static_cast<size_t>(i_min - 1)];
  double b = grid[static_cast<size_t>(i_min + 1)];
  double x1 = b - kGoldenRatio * (b - a);
  double x2 = a + kGoldenRatio * (b - a);
  double f1 = gap(x1), f2 = gap(x2);
  while (b - a > kFieldResolutionKvCm) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGoldenRatio * (b - a);
      f1 = gap(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGoldenRatio * (b - a);
      f2 = gap(x2);
    }
  }
  const double e_min = 0.5 * (a + b);
  return {e_min, gap(e_min)};
}

}  // namespace molqa
