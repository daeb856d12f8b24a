#include "awq/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "awq/errors.hpp"
#include "awq/units.hpp"

namespace awq {

ChainHamiltonian build_chain_hamiltonian(const std::vector<double>& positions) {
  const int n = static_cast<int>(positions.size());
  if (n < 2) throw ConfigError("chain needs at least two atoms");
  ChainHamiltonian h;
  h.positions = positions;
  h.matrix.resize(n, n);
  for (int i = 0; i < n; ++i) {
    h.matrix(i, i) = std::complex<double>(0.0, -0.5 * units::gamma0);
    for (int j = 0; j < i; ++j) {
      const std::complex<double> amp =
          on_axis_pair(std::abs(positions[i] - positions[j])).amplitude();
      h.matrix(i, j) = amp;
      h.matrix(j, i) = amp;
    }
  }
  return h;
}

ChainHamiltonian build_chain_hamiltonian(const ChainGeometry& geometry) {
  return build_chain_hamiltonian(geometry.positions());
}

Eigen::VectorXd ansatz_mode(int nu, const ChainGeometry& geometry) {
  const int n = geometry.n;
  if (nu < 1 || nu > n) throw ConfigError("ansatz_mode: nu out of range");
  const double k = std::numbers::pi * nu / ((n + 1) * geometry.d);
  const double norm = std::sqrt(2.0 / (n + 1));
  Eigen::VectorXd xi(n);
  for (int i = 0; i < n; ++i) {
    const double z = geometry.site(i);
    xi[i] = norm * (nu % 2 == 1 ? std::cos(k * z) : std::sin(k * z));
  }
  return xi;
}

namespace {

struct Candidate {
  double overlap;
  double j_mismatch;
  int nu;   // 0-based here
  int col;
};

}  // namespace

ModeSpectrum diagonalize_chain(const ChainHamiltonian& h, const ChainGeometry& geometry) {
  const int n = geometry.n;
  if (h.matrix.rows() != n)
    throw ConfigError("diagonalize_chain: hamiltonian/geometry size mismatch");

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h.matrix, true);
  if (es.info() != Eigen::Success)
    throw NumericError("diagonalize_chain: eigensolver failed");

  ModeSpectrum sp;
  sp.n = n;
  sp.d = geometry.d;
  sp.ansatz.resize(n, n);
  for (int nu = 1; nu <= n; ++nu) sp.ansatz.col(nu - 1) = ansatz_mode(nu, geometry);

  // Overlaps of every eigenvector with every ansatz mode, plus the
  // ansatz-projected energies used to break degenerate-overlap ties.
  const Eigen::MatrixXcd& v = es.eigenvectors();
  const Eigen::MatrixXd ovl = (sp.ansatz.transpose() * v).cwiseAbs();
  Eigen::VectorXd j_ansatz(n);
  {
    const Eigen::MatrixXcd proj = sp.ansatz.transpose() * h.matrix * sp.ansatz;
    for (int i = 0; i < n; ++i) j_ansatz[i] = proj(i, i).real();
  }

  std::vector<Candidate> cand;
  cand.reserve(static_cast<std::size_t>(n) * n);
  for (int nu = 0; nu < n; ++nu)
    for (int c = 0; c < n; ++c)
      cand.push_back({ovl(nu, c), std::abs(j_ansatz[nu] - es.eigenvalues()[c].real()), nu, c});
  std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
    if (std::abs(a.overlap - b.overlap) > 1e-10) return a.overlap > b.overlap;
    if (std::abs(a.j_mismatch - b.j_mismatch) > 1e-12) return a.j_mismatch < b.j_mismatch;
    if (a.nu != b.nu) return a.nu < b.nu;
    return a.col < b.col;
  });

  std::vector<int> col_of_nu(n, -1);
  std::vector<bool> col_used(n, false);
  int assigned = 0;
  for (const Candidate& c : cand) {
    if (assigned == n) break;
    if (col_of_nu[c.nu] >= 0 || col_used[c.col]) continue;
    col_of_nu[c.nu] = c.col;
    col_used[c.col] = true;
    ++assigned;
  }
  if (assigned != n)
    throw NumericError("diagonalize_chain: mode assignment is not a bijection");

  sp.vectors.resize(n, n);
  sp.modes.resize(n);
  for (int nu0 = 0; nu0 < n; ++nu0) {
    const int c = col_of_nu[nu0];
    Eigen::VectorXcd vec = v.col(c);
    // Complex-symmetric normalisation v^T v = 1 gives exact transpose
    // biorthogonality without a second solve.
    const std::complex<double> s = (vec.transpose() * vec)(0);
    if (std::abs(s) < 1e-12) {
      std::ostringstream os;
      os << "mode nu=" << nu0 + 1 << ": near-defective eigenvector (v^T v = " << std::abs(s) << ")";
      sp.diagnostics.push_back(os.str());
    } else {
      vec /= std::sqrt(s);
    }
    sp.vectors.col(nu0) = vec;

    Mode m;
    m.nu = nu0 + 1;
    m.k = std::numbers::pi * m.nu / ((n + 1) * geometry.d);
    const std::complex<double> lam = es.eigenvalues()[c];
    m.energy = lam.real();
    m.gamma = -2.0 * lam.imag();
    m.guided = m.k > units::k0;
    m.overlap = ovl(nu0, c);

    // Measured parity under site reversal; the spectrum never mixes
    // sectors, so one of the two residuals must vanish.
    double even_res = 0.0, odd_res = 0.0;
    for (int i = 0; i < n; ++i) {
      even_res += std::norm(vec[i] - vec[n - 1 - i]);
      odd_res += std::norm(vec[i] + vec[n - 1 - i]);
    }
    m.parity = even_res <= odd_res ? +1 : -1;
    const int expected = (m.nu % 2 == 1) ? +1 : -1;
    if (m.parity != expected) {
      std::ostringstream os;
      os << "mode nu=" << m.nu << ": measured parity disagrees with ansatz label";
      sp.diagnostics.push_back(os.str());
    }
    sp.modes[nu0] = m;
  }
  return sp;
}

ModeSpectrum make_spectrum(const SystemConfig& cfg) {
  return diagonalize_chain(build_chain_hamiltonian(cfg.chain), cfg.chain);
}

double ModeSpectrum::group_velocity(int nu) const {
  const int lo = std::max(1, nu - 1), hi = std::min(n, nu + 1);
  return (mode(hi).energy - mode(lo).energy) / (mode(hi).k - mode(lo).k);
}

int ModeSpectrum::first_guided() const {
  for (const Mode& m : modes)
    if (m.guided) return m.nu;
  return n + 1;
}

double ModeSpectrum::min_guided_gamma() const {
  double g = std::numeric_limits<double>::infinity();
  for (const Mode& m : modes)
    if (m.guided) g = std::min(g, m.gamma);
  return g;
}

double ModeSpectrum::guided_k_at_energy(double energy) const {
  const int nu0 = first_guided();
  if (nu0 > n) throw NumericError("guided_k_at_energy: no guided modes");
  int best = nu0;
  for (int nu = nu0; nu <= n; ++nu)
    if (std::abs(mode(nu).energy - energy) < std::abs(mode(best).energy - energy)) best = nu;
  int a = best, b = best;
  if (best < n && (best == nu0 || (mode(best + 1).energy - energy) * (energy - mode(best).energy) >= 0.0))
    b = best + 1;
  else
    a = best - 1 >= nu0 ? best - 1 : best;
  if (a == b) return mode(best).k;
  const double ja = mode(a).energy, jb = mode(b).energy;
  if (ja == jb) return mode(a).k;
  const double t = (energy - ja) / (jb - ja);
  return mode(a).k + t * (mode(b).k - mode(a).k);
}

double ModeSpectrum::energy_at_k(double k) const {
  int best = 1;
  for (int nu = 1; nu <= n; ++nu)
    if (std::abs(mode(nu).k - k) < std::abs(mode(best).k - k)) best = nu;
  const int other = (best < n && mode(best).k <= k) || best == 1 ? best + 1 : best - 1;
  if (other < 1 || other > n) return mode(best).energy;
  const double t = (k - mode(best).k) / (mode(other).k - mode(best).k);
  return mode(best).energy + t * (mode(other).energy - mode(best).energy);
}

BandEdgeFit fit_band_edge(const ModeSpectrum& spectrum) {
  const int n = spectrum.n;
  std::vector<int> top;
  for (int nu = n; nu >= 1 && static_cast<int>(top.size()) < 5; --nu)
    if (spectrum.mode(nu).guided) top.push_back(nu);
  if (top.size() < 5) throw NumericError("fit_band_edge: fewer than 5 guided modes");

  // J = j_edge - a_d * x^2, x = 1 - k d / pi
  double sx2 = 0.0, sx4 = 0.0, sj = 0.0, sjx2 = 0.0;
  for (int nu : top) {
    const Mode& m = spectrum.mode(nu);
    const double x = 1.0 - m.k * spectrum.d / std::numbers::pi;
    const double x2 = x * x;
    sx2 += x2;
    sx4 += x2 * x2;
    sj += m.energy;
    sjx2 += m.energy * x2;
  }
  const double np = static_cast<double>(top.size());
  const double det = np * sx4 - sx2 * sx2;
  if (std::abs(det) < 1e-30) throw NumericError("fit_band_edge: singular fit");
  BandEdgeFit fit;
  fit.j_edge = (sx4 * sj - sx2 * sjx2) / det;
  fit.a_d = -(np * sjx2 - sx2 * sj) / det;

  double ss = 0.0;
  for (int nu : top) {
    const Mode& m = spectrum.mode(nu);
    const double x = 1.0 - m.k * spectrum.d / std::numbers::pi;
    const double r = m.energy - (fit.j_edge - fit.a_d * x * x);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / np);

  // Gamma_mu = gamma_n * (mu/N)^2 through the origin, mu counted from the edge.
  double suu = 0.0, sgu = 0.0;
  for (int nu : top) {
    const double mu = static_cast<double>(n + 1 - nu);
    const double u = (mu / n) * (mu / n);
    suu += u * u;
    sgu += spectrum.mode(nu).gamma * u;
  }
  fit.gamma_n = sgu / suu;
  return fit;
}

double band_edge_closed_form(double d) {
  if (d <= 0.0 || d >= 0.5)
    throw ConfigError("band_edge_closed_form: requires 0 < d < 1/2");
  const double half = 0.5 * units::k0 * d;  // = pi d
  const double kd3 = std::pow(units::k0 * d, 3);
  return 3.0 * std::numbers::pi * std::numbers::pi / (2.0 * kd3) *
         (std::log(2.0 * std::cos(half)) + half * std::tan(half)) * units::gamma0;
}

}  // namespace awq
