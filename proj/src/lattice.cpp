#include "molqa/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace molqa {

int LatticeConfig::sector_excitations() const {
  int k = n_qubits();
  for (const Spectator& s : spectators)
    if (s.locked_up) ++k;
  return k;
}

void LatticeConfig::validate() const {
  const int n = n_molecules();
  if (n < 1) throw ConfigError("lattice has no molecules");
  if (!delta_e_v_m.empty() && static_cast<int>(delta_e_v_m.size()) != n)
    throw ConfigError("delta-E list length does not match molecule count");
  if (field_axis.norm() <= 0.0) throw ConfigError("zero field axis");
  if (b_mt <= 0.0) throw ConfigError("magnetic field must be positive");

  std::vector<int> owner(static_cast<size_t>(n), -1);
  for (size_t q = 0; q < qubits.size(); ++q) {
    const QubitPair& p = qubits[q];
    for (int m : {p.first, p.second}) {
      if (m < 0 || m >= n) throw ConfigError("qubit references unknown molecule");
      if (owner[static_cast<size_t>(m)] != -1)
        throw ConfigError("molecule assigned to more than one qubit/spectator");
      owner[static_cast<size_t>(m)] = static_cast<int>(q);
    }
    if (p.first == p.second) throw ConfigError("qubit pair must be two molecules");
    if (std::abs(p.orientation) != 1)
      throw ConfigError("qubit orientation must be +1 or -1");
  }
  for (const Spectator& s : spectators) {
    if (s.molecule < 0 || s.molecule >= n)
      throw ConfigError("spectator references unknown molecule");
    if (owner[static_cast<size_t>(s.molecule)] != -1)
      throw ConfigError("molecule assigned to more than one qubit/spectator");
    owner[static_cast<size_t>(s.molecule)] = 1 << 20;
  }
  for (int m = 0; m < n; ++m)
    if (owner[static_cast<size_t>(m)] == -1)
      throw ConfigError("molecule " + std::to_string(m) +
                        " belongs to no qubit or spectator");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((positions_nm[static_cast<size_t>(i)] -
           positions_nm[static_cast<size_t>(j)])
              .norm() < 1e-9)
        throw ConfigError("coincident molecule positions");
}

namespace {

LatticeConfig base_config(const MoleculeConstants& mol, double b_mt) {
  LatticeConfig c;
  c.molecule = mol;
  c.b_mt = b_mt;
  return c;
}

}  // namespace

LatticeConfig make_two_qubit_rectangle(const MoleculeConstants& mol,
                                       double b_mt, double r_intra_nm,
                                       double r_inter_nm) {
  return make_chain_1d(mol, b_mt, 2, r_intra_nm, r_inter_nm);
}

LatticeConfig make_chain_1d(const MoleculeConstants& mol, double b_mt,
                            int n_qubits, double r_intra_nm,
                            double r_inter_nm) {
  if (n_qubits < 1) throw ConfigError("need at least one qubit");
  LatticeConfig c = base_config(mol, b_mt);
  for (int q = 0; q < n_qubits; ++q) {
    const double x = q * r_inter_nm;
    c.positions_nm.emplace_back(x, 0.0, 0.0);
    c.positions_nm.emplace_back(x, 0.0, r_intra_nm);
    c.qubits.push_back({2 * q, 2 * q + 1, +1});
  }
  c.validate();
  return c;
}

LatticeConfig make_chain_1d_fm(const MoleculeConstants& mol, double b_mt,
                               int n_qubits, double r_intra_nm,
                               double r_inter_nm) {
  if (n_qubits < 1) throw ConfigError("need at least one qubit");
  LatticeConfig c = base_config(mol, b_mt);
  for (int q = 0; q < n_qubits; ++q) {
    const double z = q * r_inter_nm;
    c.positions_nm.emplace_back(0.0, 0.0, z);
    c.positions_nm.emplace_back(r_intra_nm, 0.0, z);
    c.qubits.push_back({2 * q, 2 * q + 1, +1});
  }
  c.validate();
  return c;
}

LatticeConfig make_grid_2d(const MoleculeConstants& mol, double b_mt, int rows,
                           int cols, double r_intra_nm, double r_inter_nm) {
  if (rows < 1 || cols < 1) throw ConfigError("grid needs positive extent");
  LatticeConfig c = base_config(mol, b_mt);
  int idx = 0;
  for (int r = 0; r < rows; ++r)
    for (int col = 0; col < cols; ++col) {
      const double x = col * r_inter_nm;
      const double y = r * r_inter_nm;
      c.positions_nm.emplace_back(x, y, 0.0);
      c.positions_nm.emplace_back(x, y, r_intra_nm);
      c.qubits.push_back({2 * idx, 2 * idx + 1, +1});
      ++idx;
    }
  c.validate();
  return c;
}

LatticeConfig make_stack_3d(const MoleculeConstants& mol, double b_mt,
                            int layers, int rows, int cols, double r_intra_nm,
                            double r_inter_nm) {
  if (layers < 1) throw ConfigError("stack needs at least one layer");
  LatticeConfig c = base_config(mol, b_mt);
  int idx = 0;
  const double pitch = r_intra_nm + r_inter_nm;
  for (int l = 0; l < layers; ++l)
    for (int r = 0; r < rows; ++r)
      for (int col = 0; col < cols; ++col) {
        const double x = col * r_inter_nm;
        const double y = r * r_inter_nm;
        const double z = l * pitch;
        c.positions_nm.emplace_back(x, y, z);
        c.positions_nm.emplace_back(x, y, z + r_intra_nm);
        c.qubits.push_back({2 * idx, 2 * idx + 1, +1});
        ++idx;
      }
  c.validate();
  return c;
}

CouplingTables build_coupling_tables(const BetaGammaTracker& tracker,
                                     const LatticeConfig& config,
                                     double e_kv_cm) {
  config.validate();
  if (tracker.b_mt() != config.b_mt)
    throw ConfigError("tracker magnetic field does not match the lattice");
  const int n = config.n_molecules();

  // dressed data per distinct local field
  std::map<double, TwoLevelDipoles> by_field;
  std::vector<const TwoLevelDipoles*> dressed(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double e_local = e_kv_cm + config.delta_e(i) * 1e-5;
    auto it = by_field.find(e_local);
    if (it == by_field.end())
      it = by_field.emplace(e_local, two_level_dipoles(tracker, e_local)).first;
    dressed[static_cast<size_t>(i)] = &it->second;
  }

  CouplingTables t;
  t.j_perp_hz = Eigen::MatrixXd::Zero(n, n);
  t.j_z_hz = Eigen::MatrixXd::Zero(n, n);
  t.h_hz = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    t.h_hz(i) = dressed[static_cast<size_t>(i)]->e_down_hz -
                dressed[static_cast<size_t>(i)]->e_up_hz;

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const PairGeometry geom =
          pair_geometry(config.positions_nm[static_cast<size_t>(i)],
                        config.positions_nm[static_cast<size_t>(j)],
                        config.field_axis);
      const PairCouplings pc = couplings_from_dipoles(
          *dressed[static_cast<size_t>(i)], *dressed[static_cast<size_t>(j)],
          geom);
      t.j_perp_hz(i, j) = t.j_perp_hz(j, i) = pc.j_perp_hz;
      t.j_z_hz(i, j) = t.j_z_hz(j, i) = pc.j_z_hz;
      t.h_hz(i) += pc.k_hz;
      t.h_hz(j) += pc.w_hz;
    }
  }
  return t;
}

IsingModel effective_ising(const BetaGammaTracker& tracker,
                           const LatticeConfig& config, double e_kv_cm) {
  const CouplingTables t = build_coupling_tables(tracker, config, e_kv_cm);
  const int nq = config.n_qubits();
  IsingModel model;
  model.n_qubits = nq;
  model.h_hz = Eigen::VectorXd::Zero(nq);
  model.j_hz = Eigen::MatrixXd::Zero(nq, nq);

  for (int a = 0; a < nq; ++a) {
    const QubitPair& pa = config.qubits[static_cast<size_t>(a)];
    double h = t.h_hz(pa.first) - t.h_hz(pa.second);
    for (const Spectator& s : config.spectators) {
      const double sz = s.locked_up ? 0.5 : -0.5;
      h += sz * (t.j_z_hz(pa.first, s.molecule) -
                 t.j_z_hz(pa.second, s.molecule));
    }
    model.h_hz(a) = pa.orientation * h;

    for (int b = a + 1; b < nq; ++b) {
      const QubitPair& pb = config.qubits[static_cast<size_t>(b)];
      const double j = t.j_z_hz(pa.first, pb.first) +
                       t.j_z_hz(pa.second, pb.second) -
                       t.j_z_hz(pa.first, pb.second) -
                       t.j_z_hz(pa.second, pb.first);
      model.j_hz(a, b) = model.j_hz(b, a) =
          pa.orientation * pb.orientation * j;
    }
  }
  return model;
}

double ising_energy(const IsingModel& model, std::uint32_t config_bits) {
  double e = 0.0;
  for (int a = 0; a < model.n_qubits; ++a) {
    const double sa = (config_bits >> a) & 1 ? -0.5 : 0.5;
    e += model.h_hz(a) * sa;
    for (int b = a + 1; b < model.n_qubits; ++b) {
      const double sb = (config_bits >> b) & 1 ? -0.5 : 0.5;
      e += model.j_hz(a, b) * sa * sb;
    }
  }
  return e;
}

GroundSet brute_force_ground(const IsingModel& model) {
  if (model.n_qubits < 1) throw ConfigError("empty Ising model");
  if (model.n_qubits > 24)
    throw SizeLimitError("exhaustive ground-state search limited to 24 qubits");

  const std::uint32_t count = std::uint32_t{1} << model.n_qubits;
  GroundSet g;
  g.energy_hz = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (int a = 0; a < model.n_qubits; ++a) {
    scale = std::max(scale, std::abs(model.h_hz(a)));
    for (int b = a + 1; b < model.n_qubits; ++b)
      scale = std::max(scale, std::abs(model.j_hz(a, b)));
  }
  const double tol = std::max(scale, 1.0) * 1e-9;

  for (std::uint32_t c = 0; c < count; ++c) {
    const double e = ising_energy(model, c);
    if (e < g.energy_hz - tol) {
      g.energy_hz = e;
      g.configs.clear();
      g.configs.push_back(c);
    } else if (e <= g.energy_hz + tol) {
      g.configs.push_back(c);
    }
  }
  return g;
}

StateClassification classify_states(const LatticeConfig& config,
                                    const SectorBasis& basis) {
  config.validate();
  if (basis.n_sites() != config.n_molecules())
    throw ConfigError("sector basis does not match the lattice molecule count");
  if (config.n_molecules() % 2 != 0 && config.spectators.empty())
    throw ConfigError("odd molecule count requires spectators");

  StateClassification out;
  out.qubit_config.assign(static_cast<size_t>(basis.size()), -1);

  std::uint64_t spect_mask = 0, spect_up = 0;
  for (const Spectator& s : config.spectators) {
    spect_mask |= std::uint64_t{1} << s.molecule;
    if (s.locked_up) spect_up |= std::uint64_t{1} << s.molecule;
  }

  for (std::int64_t r = 0; r < basis.size(); ++r) {
    const std::uint64_t bits = basis.state(r);
    if ((bits & spect_mask) != spect_up) {
      ++out.n_invalid;
      continue;
    }
    std::uint32_t qc = 0;
    bool valid = true;
    for (int a = 0; a < config.n_qubits(); ++a) {
      const QubitPair& p = config.qubits[static_cast<size_t>(a)];
      const bool up1 = (bits >> p.first) & 1;
      const bool up2 = (bits >> p.second) & 1;
      if (up1 == up2) {
        valid = false;
        break;
      }
      // bit 0 means the orientation-first molecule is excited
      const bool bit = (p.orientation == +1) ? up2 : up1;
      if (bit) qc |= std::uint32_t{1} << a;
    }
    if (valid) {
      out.qubit_config[static_cast<size_t>(r)] = static_cast<std::int32_t>(qc);
      ++out.n_valid;
    } else {
      ++out.n_invalid;
    }
  }
  return out;
}

}  // namespace molqa
