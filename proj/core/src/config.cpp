#include "awq/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "awq/errors.hpp"
#include "awq/units.hpp"

namespace awq {

std::vector<double> ChainGeometry::positions() const {
  std::vector<double> z(n);
  for (int i = 0; i < n; ++i) z[i] = site(i);
  return z;
}

double ChainGeometry::nearest_midpoint(double rho) const {
  // midpoints sit at site(i) + d/2; the grid offset depends on N parity
  const double offset = site(0) + 0.5 * d;
  return offset + d * std::round((rho - offset) / d);
}

double SystemConfig::impurity_energy_prime() const {
  if (!raman) return impurity_detuning;
  return impurity_detuning - raman->delta -
         raman->omega * raman->omega / (4.0 * raman->delta);
}

double SystemConfig::dimer_linewidth_prime(int dimer) const {
  const double gamma_minus =
      dimer_eigenpair(dimers.at(dimer).r_ab(), -1).linewidth;
  if (!raman) return gamma_minus;
  const double s = raman_scale();
  return s * s * gamma_minus;
}

double SystemConfig::raman_scale() const {
  if (!raman) return 1.0;
  return raman->omega / (2.0 * raman->delta);
}

SystemConfig SystemConfig::tuned_to_energy(double energy) const {
  SystemConfig out = *this;
  if (raman)
    out.impurity_detuning =
        energy + raman->delta + raman->omega * raman->omega / (4.0 * raman->delta);
  else
    out.impurity_detuning = energy;
  return out;
}

SystemConfig build_config(ChainGeometry chain, std::vector<DimerSpec> dimers,
                          std::optional<RamanDrive> raman, double impurity_detuning,
                          double crosstalk_threshold) {
  if (chain.n < 2) throw ConfigError("chain.n must be >= 2");
  if (chain.d <= 0.0) throw ConfigError("chain.d must be positive");
  if (chain.d >= 0.5)
    throw ConfigError("chain.d must be below lambda0/2 (subwavelength regime)");
  if (chain.d < min_atom_separation())
    throw ConfigError("chain.d below the 1e-3 lambda0 near-field guard");

  SystemConfig cfg;
  cfg.chain = chain;
  cfg.impurity_detuning = impurity_detuning;
  cfg.crosstalk_threshold = crosstalk_threshold;

  for (auto& dim : dimers) {
    if (dim.rho0 == 0.0) dim.rho0 = 0.5 * chain.d;
    if (dim.rho0 < 0.0) throw ConfigError("dimer rho0 must be positive");
    if (dim.rho0 > 0.5 * chain.d + 1e-12)
      throw ConfigError("dimer rho0 must not exceed d/2");
    if (dim.r_ab() < min_atom_separation())
      throw ConfigError("dimer atoms overlap (r_ab below 1e-3 lambda0)");
    if (dim.h <= 0.0) throw ConfigError("dimer standoff h must be positive");
  }
  cfg.dimers = std::move(dimers);

  if (raman) {
    if (raman->omega < 0.0) throw ConfigError("raman.omega must be non-negative");
    if (raman->delta == 0.0) throw ConfigError("raman.delta must be nonzero");
    // Model-validity flags, not errors: the perturbative treatment assumes
    // Delta >> gamma0 >> Omega but the full Hamiltonian stays simulable.
    if (std::abs(raman->delta) < 5.0 * units::gamma0)
      cfg.diagnostics.push_back("raman: |delta| < 5 gamma0, adiabatic elimination marginal");
    if (raman->omega > 0.5 * units::gamma0)
      cfg.diagnostics.push_back("raman: omega > gamma0/2, weak-drive regime violated");
    cfg.raman = raman;
  }

  // Distinct dimers must be far enough apart that their direct free-space
  // coupling is negligible.
  for (std::size_t a = 0; a < cfg.dimers.size(); ++a)
    for (std::size_t b = a + 1; b < cfg.dimers.size(); ++b) {
      const std::array<Vec3, 2> pa{cfg.dimers[a].atom_a(), cfg.dimers[a].atom_b()};
      const std::array<Vec3, 2> pb{cfg.dimers[b].atom_a(), cfg.dimers[b].atom_b()};
      double worst = 0.0;
      for (const auto& ra : pa)
        for (const auto& rb : pb)
          worst = std::max(worst, std::abs(pair_amplitude(ra, rb).amplitude()));
      if (worst > cfg.crosstalk_threshold) {
        std::ostringstream os;
        os << "dimers " << a << " and " << b
           << ": free-space crosstalk " << worst << " gamma0 above threshold";
        cfg.diagnostics.push_back(os.str());
      }
    }

  return cfg;
}

SystemConfig config_from_json(const nlohmann::json& j) {
  try {
    ChainGeometry chain;
    chain.n = j.at("chain").at("n").get<int>();
    chain.d = j.at("chain").at("d").get<double>();

    std::vector<DimerSpec> dimers;
    if (j.contains("dimers"))
      for (const auto& dj : j.at("dimers")) {
        DimerSpec dim;
        dim.center = dj.at("center").get<double>();
        dim.rho0 = dj.value("rho0", 0.0);
        dim.h = dj.at("h").get<double>();
        dim.parity = dj.value("parity", -1);
        if (dim.parity != -1 && dim.parity != 1)
          throw ConfigError("dimer parity must be -1 or +1");
        dimers.push_back(dim);
      }

    std::optional<RamanDrive> raman;
    if (j.contains("raman") && !j.at("raman").is_null()) {
      RamanDrive r;
      r.omega = j.at("raman").at("omega").get<double>();
      r.delta = j.at("raman").at("delta").get<double>();
      raman = r;
    }

    const double det = j.value("impurity_detuning", 0.0);
    const double xtalk = j.value("crosstalk_threshold", 1e-2);
    return build_config(chain, std::move(dimers), raman, det, xtalk);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scenario json: ") + e.what());
  }
}

SystemConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("scenario json parse error: ") + e.what());
  }
  return config_from_json(j);
}

nlohmann::json config_to_json(const SystemConfig& cfg) {
  nlohmann::json j;
  j["chain"] = {{"n", cfg.chain.n}, {"d", cfg.chain.d}};
  j["dimers"] = nlohmann::json::array();
  for (const auto& dim : cfg.dimers)
    j["dimers"].push_back({{"center", dim.center},
                           {"rho0", dim.rho0},
                           {"h", dim.h},
                           {"parity", dim.parity}});
  if (cfg.raman)
    j["raman"] = {{"omega", cfg.raman->omega}, {"delta", cfg.raman->delta}};
  j["impurity_detuning"] = cfg.impurity_detuning;
  j["crosstalk_threshold"] = cfg.crosstalk_threshold;
  return j;
}

}  // namespace awq
