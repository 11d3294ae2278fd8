#include "isaclim/config.hpp"

#include <string>

#include "isaclim/errors.hpp"

namespace isac {

void SystemConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid system config: " + what);
  };
  require(n_tx >= 1, "n_tx must be >= 1");
  require(m_c >= 1, "m_c must be >= 1");
  require(m_s >= 1, "m_s must be >= 1");
  require(bandwidth_b >= 1, "bandwidth_b must be a positive integer");
  require(n_cpi >= 1, "n_cpi must be >= 1");
  require(p_t > 0.0, "p_t must be > 0");
  require(sigma2_nc > 0.0, "sigma2_nc must be > 0");
  require(sigma2_ns > 0.0, "sigma2_ns must be > 0");
  require(alpha2_hc > 0.0, "alpha2_hc must be > 0");
  require(alpha2_hs > 0.0, "alpha2_hs must be > 0");
}

void CorrelationSpec::validate() const {
  auto in_open = [](double v) { return v > -1.0 && v < 1.0; };
  if (!in_open(rho_s))
    throw ConfigError("rho_s = " + std::to_string(rho_s) +
                      " outside (-1, 1)");
  if (!in_open(rho_r))
    throw ConfigError("rho_r = " + std::to_string(rho_r) +
                      " outside (-1, 1)");
  if (!in_open(rho_sr))
    throw ConfigError("rho_sr = " + std::to_string(rho_sr) +
                      " outside (-1, 1)");
  if (rho_x < 0.0 || rho_x >= 1.0)
    throw ConfigError("rho_x = " + std::to_string(rho_x) +
                      " outside [0, 1)");
}

}  // namespace isac
