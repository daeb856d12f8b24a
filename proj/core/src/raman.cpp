#include "awq/raman.hpp"

#include <cmath>
#include <sstream>

#include "awq/errors.hpp"
#include "awq/units.hpp"

namespace awq {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

Vec3 chain_site_pos(const ChainGeometry& chain, int i) {
  return {0.0, 0.0, chain.site(i)};
}
}  // namespace

std::string BasisLabel::text() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::ChainSite: os << "site" << index; break;
    case Kind::ChainMode: os << "mode" << index; break;
    case Kind::ImpurityLevel:
      os << "d" << index << (level == 0 ? "_e_" : "_g1_") << (atom == 0 ? 'a' : 'b');
      break;
    case Kind::DimerState: os << "d" << index << (parity < 0 ? "_anti" : "_sym"); break;
  }
  return os.str();
}

int EffectiveHamiltonian::index_of(const BasisLabel& l) const {
  for (int i = 0; i < dim(); ++i)
    if (basis[i] == l) return i;
  throw ConfigError("basis label not present: " + l.text());
}

EffectiveHamiltonian build_dipole_hamiltonian(const SystemConfig& cfg,
                                              bool cross_dimer_couplings) {
  const int n = cfg.chain.n;
  const int nd = static_cast<int>(cfg.dimers.size());
  EffectiveHamiltonian h;
  h.basis.reserve(n + 2 * nd);
  for (int i = 0; i < n; ++i)
    h.basis.push_back({BasisLabel::Kind::ChainSite, i, 0, 0, 0});
  for (int di = 0; di < nd; ++di)
    for (int atom = 0; atom < 2; ++atom)
      h.basis.push_back({BasisLabel::Kind::ImpurityLevel, di, atom, 0, 0});

  const int dim = h.dim();
  h.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  h.matrix.topLeftCorner(n, n) = build_chain_hamiltonian(cfg.chain).matrix;

  auto imp_pos = [&](int di, int atom) {
    return atom == 0 ? cfg.dimers[di].atom_a() : cfg.dimers[di].atom_b();
  };
  for (int p = n; p < dim; ++p) {
    const BasisLabel& lp = h.basis[p];
    h.matrix(p, p) = cfg.impurity_detuning - 0.5 * kI * units::gamma0;
    for (int i = 0; i < n; ++i) {
      const auto amp =
          pair_amplitude(imp_pos(lp.index, lp.atom), chain_site_pos(cfg.chain, i)).amplitude();
      h.matrix(p, i) = amp;
      h.matrix(i, p) = amp;
    }
    for (int q = n; q < p; ++q) {
      const BasisLabel& lq = h.basis[q];
      if (lq.index != lp.index && !cross_dimer_couplings) continue;
      const auto amp =
          pair_amplitude(imp_pos(lp.index, lp.atom), imp_pos(lq.index, lq.atom)).amplitude();
      h.matrix(p, q) = amp;
      h.matrix(q, p) = amp;
    }
  }
  return h;
}

EffectiveHamiltonian build_full_raman(const SystemConfig& cfg, Frame frame) {
  if (!cfg.raman) throw ConfigError("build_full_raman: config has no Raman drive");
  const int n = cfg.chain.n;
  const int nd = static_cast<int>(cfg.dimers.size());
  const double omega = cfg.raman->omega, delta = cfg.raman->delta;

  EffectiveHamiltonian h;
  h.frame = frame;
  h.basis.reserve(n + 4 * nd);
  for (int i = 0; i < n; ++i)
    h.basis.push_back({BasisLabel::Kind::ChainSite, i, 0, 0, 0});
  for (int di = 0; di < nd; ++di)
    for (int level = 0; level < 2; ++level)
      for (int atom = 0; atom < 2; ++atom)
        h.basis.push_back({BasisLabel::Kind::ImpurityLevel, di, atom, level, 0});

  const int dim = h.dim();
  h.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  h.matrix.topLeftCorner(n, n) = build_chain_hamiltonian(cfg.chain).matrix;

  auto imp_pos = [&](int di, int atom) {
    return atom == 0 ? cfg.dimers[di].atom_a() : cfg.dimers[di].atom_b();
  };
  for (int p = n; p < dim; ++p) {
    const BasisLabel& lp = h.basis[p];
    if (lp.level == 0) {
      h.matrix(p, p) = cfg.impurity_detuning - 0.5 * kI * units::gamma0;
      for (int i = 0; i < n; ++i) {
        const auto amp =
            pair_amplitude(imp_pos(lp.index, lp.atom), chain_site_pos(cfg.chain, i)).amplitude();
        h.matrix(p, i) = amp;
        h.matrix(i, p) = amp;
      }
      for (int q = n; q < p; ++q) {
        const BasisLabel& lq = h.basis[q];
        if (lq.level != 0 || lq.index != lp.index) continue;
        const auto amp =
            pair_amplitude(imp_pos(lp.index, lp.atom), imp_pos(lq.index, lq.atom)).amplitude();
        h.matrix(p, q) = amp;
        h.matrix(q, p) = amp;
      }
    } else {
      h.matrix(p, p) = cfg.impurity_detuning - delta;
      // drive couples |g1> to |e> of the same atom
      const int e_index = h.find([&](const BasisLabel& l) {
        return l.kind == BasisLabel::Kind::ImpurityLevel && l.index == lp.index &&
               l.atom == lp.atom && l.level == 0;
      });
      h.matrix(p, e_index) = 0.5 * omega;
      h.matrix(e_index, p) = 0.5 * omega;
    }
  }

  if (frame == Frame::AppendixShift)
    h.matrix += (delta - cfg.impurity_detuning) *
                Eigen::MatrixXcd::Identity(dim, dim);
  return h;
}

std::complex<double> bare_mode_coupling(const SystemConfig& cfg, const ModeSpectrum& spectrum,
                                        int dim, int lambda, int nu) {
  const DimerSpec& dimer = cfg.dimers.at(dim);
  const Mode& m = spectrum.mode(nu);
  return finite_envelope(nu, dimer.center, lambda, cfg.chain) *
         dimer_coupling(m.k, dimer.h, cfg.chain.d, lambda, dimer.rho0);
}

EffectiveHamiltonian build_effective_raman(const SystemConfig& cfg,
                                           const ModeSpectrum& spectrum) {
  if (!cfg.raman) throw ConfigError("build_effective_raman: config has no Raman drive");
  if (cfg.dimers.empty()) throw ConfigError("build_effective_raman: config has no dimers");
  const int nd = static_cast<int>(cfg.dimers.size());

  EffectiveHamiltonian h;
  for (int di = 0; di < nd; ++di)
    h.basis.push_back({BasisLabel::Kind::DimerState, di, 0, 0, -1});
  std::vector<int> guided;
  for (const Mode& m : spectrum.modes)
    if (m.guided) {
      guided.push_back(m.nu);
      h.basis.push_back({BasisLabel::Kind::ChainMode, m.nu, 0, 0, 0});
    }

  const int dim = h.dim();
  h.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  const double omega_prime = cfg.impurity_energy_prime();
  for (int di = 0; di < nd; ++di)
    h.matrix(di, di) = omega_prime - 0.5 * kI * cfg.dimer_linewidth_prime(di);
  for (std::size_t gi = 0; gi < guided.size(); ++gi) {
    const int col = nd + static_cast<int>(gi);
    h.matrix(col, col) = spectrum.eigenvalue(guided[gi]);
    for (int di = 0; di < nd; ++di) {
      const std::complex<double> g =
          cfg.raman_scale() * bare_mode_coupling(cfg, spectrum, di, -1, guided[gi]);
      h.matrix(di, col) = g;
      h.matrix(col, di) = g;
    }
  }
  return h;
}

EffectiveHamiltonian build_full_effective(const SystemConfig& cfg,
                                          const ModeSpectrum& spectrum) {
  if (!cfg.raman) throw ConfigError("build_full_effective: config has no Raman drive");
  if (cfg.dimers.empty()) throw ConfigError("build_full_effective: config has no dimers");
  const int nd = static_cast<int>(cfg.dimers.size());
  const int n = spectrum.n;
  const double omega = cfg.raman->omega, delta = cfg.raman->delta;

  EffectiveHamiltonian h;
  for (int di = 0; di < nd; ++di)
    for (int lambda : {-1, +1})
      h.basis.push_back({BasisLabel::Kind::DimerState, di, 0, 0, lambda});
  for (int nu = 1; nu <= n; ++nu)
    h.basis.push_back({BasisLabel::Kind::ChainMode, nu, 0, 0, 0});

  const int dim = h.dim();
  const int nmodes_off = 2 * nd;
  h.matrix = Eigen::MatrixXcd::Zero(dim, dim);

  for (int nu = 1; nu <= n; ++nu) {
    const int col = nmodes_off + nu - 1;
    h.matrix(col, col) = spectrum.eigenvalue(nu);
  }

  for (int di = 0; di < nd; ++di) {
    const PairCoupling ab = on_axis_pair(cfg.dimers[di].r_ab());
    for (int li = 0; li < 2; ++li) {
      const int lambda = li == 0 ? -1 : +1;
      const int row = 2 * di + li;
      const std::complex<double> den =
          (delta + lambda * ab.g) - 0.5 * kI * (units::gamma0 + lambda * ab.gamma);
      // second-order dimer energy, including the Raman-reduced linewidth
      h.matrix(row, row) =
          cfg.impurity_detuning - delta - 0.25 * omega * omega / den;

      Eigen::VectorXcd g(n);
      for (int nu = 1; nu <= n; ++nu)
        g[nu - 1] = bare_mode_coupling(cfg, spectrum, di, lambda, nu);
      h.matrix.row(row).segment(nmodes_off, n) += (-0.5 * omega / den) * g.transpose();
      h.matrix.col(row).segment(nmodes_off, n) += (-0.5 * omega / den) * g;
      // rank-one mode-mode correction from eliminating the excited manifold
      h.matrix.block(nmodes_off, nmodes_off, n, n) -= g * g.transpose() / den;
    }
  }
  return h;
}

EliminationCorrections adiabatic_corrections(const SystemConfig& cfg,
                                             const ModeSpectrum& spectrum) {
  if (cfg.dimers.size() != 1)
    throw ConfigError("adiabatic_corrections: expects a single dimer");
  const PairCoupling ab = on_axis_pair(cfg.dimers[0].r_ab());
  const double e_minus = cfg.impurity_detuning - ab.g;
  const double gamma_minus = units::gamma0 - ab.gamma;
  const double gamma_plus = units::gamma0 + ab.gamma;
  const double delta_plus = 2.0 * ab.g;  // E_+ - E_-

  EliminationCorrections out;
  out.a_minus = 0.0;
  out.a_plus = 0.0;
  out.b = 0.0;
  for (const Mode& m : spectrum.modes) {
    if (m.guided) continue;
    const double det_k = m.energy - e_minus;
    const std::complex<double> den(det_k, -0.5 * m.gamma);
    const std::complex<double> gm = bare_mode_coupling(cfg, spectrum, 0, -1, m.nu);
    const std::complex<double> gp = bare_mode_coupling(cfg, spectrum, 0, +1, m.nu);
    for (const auto& [g, lam] : {std::pair{gm, -1}, std::pair{gp, +1}}) {
      if (std::abs(det_k) < 0.5 * m.gamma &&
          std::norm(g) > 0.01 * (det_k * det_k + 0.25 * m.gamma * m.gamma)) {
        std::ostringstream os;
        os << "adiabatic_corrections: superradiant mode nu=" << m.nu
           << " resonant with the dimer (lambda=" << lam << ")";
        throw NumericError(os.str());
      }
    }
    out.a_minus += gm * gm / den;
    out.a_plus += gp * gp / den;
    out.b += gm * gp / den;
  }

  out.symmetric_denominator =
      delta_plus - out.a_plus - 0.5 * kI * gamma_plus;
  out.dimer_energy = (e_minus - 0.5 * kI * gamma_minus) -
                     out.a_minus * (1.0 + out.b / out.symmetric_denominator);

  for (const Mode& m : spectrum.modes) {
    if (!m.guided) continue;
    const std::complex<double> gm = bare_mode_coupling(cfg, spectrum, 0, -1, m.nu);
    const std::complex<double> gp = bare_mode_coupling(cfg, spectrum, 0, +1, m.nu);
    out.guided_nus.push_back(m.nu);
    out.mode_energies.push_back(std::complex<double>(m.energy, -0.5 * m.gamma) -
                                gp * gp / out.symmetric_denominator);
    out.couplings.push_back(gm + out.b / out.symmetric_denominator * gp);
  }
  return out;
}

}  // namespace awq
