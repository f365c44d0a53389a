#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "fsosec/units.hpp"

namespace fsosec {

/// How the attenuation coefficient of an AtmosphereSpec was obtained:
/// computed from visibility via the Kim model, or supplied directly.
enum class AlphaProvenance { Derived, Asserted };

/// Kim-model attenuation coefficient in dB/km for a given visibility and
/// wavelength. Piecewise size-distribution exponent q(V):
///   q = 1.6            for V > 50 km
///   q = 1.3            for 6 < V <= 50
///   q = 0.16 V + 0.34  for 1 < V <= 6
///   q = V - 0.5        for 0.5 < V <= 1
///   q = 0              otherwise
inline double kim_attenuation_db_per_km(double visibility_km, double wavelength_m) {
  if (!(visibility_km > 0.0))
    throw std::domain_error("kim_attenuation_db_per_km: visibility must be > 0");
  if (!(wavelength_m > 0.0))
    throw std::domain_error("kim_attenuation_db_per_km: wavelength must be > 0");
  const double v = visibility_km;
  double q;
  if (v > 50.0)
    q = 1.6;
  else if (v > 6.0)
    q = 1.3;
  else if (v > 1.0)
    q = 0.16 * v + 0.34;
  else if (v > 0.5)
    q = v - 0.5;
  else
    q = 0.0;
  const double wavelength_nm = wavelength_m * 1e9;
  return 4.343 * (3.91 / v) * std::pow(wavelength_nm / 550.0, -q);
}

/// Atmospheric state along a link. The coefficient is in dB/km; when the
/// spec was built from a visibility figure the original value is kept so
/// the derivation can be re-checked against the link wavelength.
struct AtmosphereSpec {
  double alpha_db_per_km = 0.0;
  std::optional<double> visibility_km;
  AlphaProvenance provenance = AlphaProvenance::Asserted;

  static AtmosphereSpec from_alpha(double alpha_db_per_km) {
    if (!std::isfinite(alpha_db_per_km) || alpha_db_per_km < 0.0)
      throw std::domain_error("AtmosphereSpec: alpha must be finite and >= 0");
    return AtmosphereSpec{alpha_db_per_km, std::nullopt, AlphaProvenance::Asserted};
  }

  static AtmosphereSpec from_visibility(double visibility_km, double wavelength_m) {
    return AtmosphereSpec{kim_attenuation_db_per_km(visibility_km, wavelength_m),
                          visibility_km, AlphaProvenance::Derived};
  }

  /// Re-checks a visibility-derived coefficient against the link wavelength.
  void check_consistency(double wavelength_m) const {
    if (!visibility_km) return;
    const double expected = kim_attenuation_db_per_km(*visibility_km, wavelength_m);
    const double tol = 1e-9 * std::max(1.0, std::abs(expected));
    if (std::abs(expected - alpha_db_per_km) > tol)
      throw std::domain_error(
          "AtmosphereSpec: alpha_db_per_km does not match the Kim-model value "
          "for the stated visibility at this wavelength");
  }
};

enum class PointingModel { Gaussian, FixedDb };

/// Geometry of one link: separation, beam misalignment and the pointing
/// model used to turn the misalignment into a loss factor.
struct LinkGeometry {
  double distance_m = 0.0;
  double pointing_error_rad = 0.0;
  double beam_divergence_rad = 20e-6;
  PointingModel pointing_model = PointingModel::Gaussian;
  double fixed_pointing_loss_db = 0.0;  // used by PointingModel::FixedDb

  void validate() const {
    if (!(distance_m > 0.0))
      throw std::domain_error("LinkGeometry: distance must be > 0");
    if (!(pointing_error_rad >= 0.0) || pointing_error_rad >= kPi / 2)
      throw std::domain_error("LinkGeometry: pointing error must be in [0, pi/2)");
    if (!(beam_divergence_rad > 0.0))
      throw std::domain_error("LinkGeometry: beam divergence must be > 0");
    if (!(fixed_pointing_loss_db >= 0.0))
      throw std::domain_error("LinkGeometry: fixed pointing loss must be >= 0 dB");
  }
};

/// Transmit/receive powers and gains on one shared, unnamed dB scale plus
/// carrier wavelength. Only dB differences are ever meaningful.
struct LinkBudget {
  double tx_power_db = 0.0;
  double tx_gain_db = 0.0;
  double rx_gain_db = 0.0;
  double wavelength_m = 1550e-9;
  double noise_db = -130.0;

  void validate() const {
    require_finite(tx_power_db, "LinkBudget.tx_power_db");
    require_finite(tx_gain_db, "LinkBudget.tx_gain_db");
    require_finite(rx_gain_db, "LinkBudget.rx_gain_db");
    require_finite(noise_db, "LinkBudget.noise_db");
    if (!(wavelength_m > 0.0))
      throw std::domain_error("LinkBudget: wavelength must be > 0");
  }
};

/// Per-factor dB losses of a received-power evaluation. All entries are
/// positive losses; disabled impairments contribute 0 dB.
struct ImpairmentBreakdown {
  double attenuation_db = 0.0;
  double pointing_db = 0.0;
  double path_loss_db = 0.0;

  double total_db() const { return attenuation_db + pointing_db + path_loss_db; }
};

struct ChannelResult {
  double rx_power_db = 0.0;
  double snr_linear = 0.0;
  ImpairmentBreakdown breakdown;
};

/// Linear transmission factor 10^(-alpha * d_km / 10) in (0, 1].
/// alpha is in dB/km; equals 1 when either argument is zero.
inline double atmospheric_attenuation(const AtmosphereSpec& atmosphere, double distance_m) {
  if (!(distance_m >= 0.0))
    throw std::domain_error("atmospheric_attenuation: distance must be >= 0");
  if (!std::isfinite(atmosphere.alpha_db_per_km) || atmosphere.alpha_db_per_km < 0.0)
    throw std::domain_error("atmospheric_attenuation: alpha must be finite and >= 0");
  const double distance_km = distance_m / 1000.0;
  return std::pow(10.0, -atmosphere.alpha_db_per_km * distance_km / 10.0);
}

/// Gaussian misalignment factor exp(-2 theta^2 / theta_div^2) in (0, 1].
inline double pointing_loss(double pointing_error_rad, double beam_divergence_rad) {
  if (!(beam_divergence_rad > 0.0))
    throw std::domain_error("pointing_loss: beam divergence must be > 0");
  if (!(pointing_error_rad >= 0.0) || pointing_error_rad >= kPi / 2)
    throw std::domain_error("pointing_loss: pointing error must be in [0, pi/2)");
  const double ratio = pointing_error_rad / beam_divergence_rad;
  return std::exp(-2.0 * ratio * ratio);
}

/// Pointing factor of a geometry under its configured model.
inline double pointing_loss(const LinkGeometry& geometry) {
  geometry.validate();
  if (geometry.pointing_model == PointingModel::FixedDb)
    return db_to_linear(-geometry.fixed_pointing_loss_db);
  return pointing_loss(geometry.pointing_error_rad, geometry.beam_divergence_rad);
}

/// Geometric spreading factor (lambda / 4 pi d)^2, the reciprocal of the
/// inverse-square path loss (4 pi d / lambda)^2.
inline double free_space_loss(double distance_m, double wavelength_m) {
  if (!(distance_m > 0.0))
    throw std::domain_error("free_space_loss: singular at distance 0");
  if (!(wavelength_m > 0.0))
    throw std::domain_error("free_space_loss: wavelength must be > 0");
  const double ratio = wavelength_m / (4.0 * kPi * distance_m);
  return ratio * ratio;
}

/// 10^((P_r - N) / 10), the dimensionless signal-to-noise ratio.
inline double snr_linear(double rx_power_db, double noise_db) {
  require_finite(rx_power_db, "snr_linear.rx_power_db");
  require_finite(noise_db, "snr_linear.noise_db");
  return db_to_linear(rx_power_db - noise_db);
}

/// Full dB-domain link budget: P_r = P_t + G_t + G_r - L_att - L_point - L_fsl.
/// The flags select which impairments apply; a disabled one contributes 0 dB.
inline ChannelResult received_power_db(const LinkBudget& budget, const LinkGeometry& geometry,
                                       const AtmosphereSpec& atmosphere,
                                       bool include_atmosphere = true,
                                       bool include_pointing = true) {
  budget.validate();
  geometry.validate();
  atmosphere.check_consistency(budget.wavelength_m);

  ImpairmentBreakdown breakdown;
  if (include_atmosphere) {
    // loss in dB is alpha * d directly; going through the linear factor
    // would underflow long before the dB bookkeeping does
    breakdown.attenuation_db = atmosphere.alpha_db_per_km * (geometry.distance_m / 1000.0);
    if (!(atmosphere.alpha_db_per_km >= 0.0) || !std::isfinite(atmosphere.alpha_db_per_km))
      throw std::domain_error("received_power_db: alpha must be finite and >= 0");
  }
  if (include_pointing) breakdown.pointing_db = -linear_to_db(pointing_loss(geometry));
  breakdown.path_loss_db =
      -linear_to_db(free_space_loss(geometry.distance_m, budget.wavelength_m));

  ChannelResult result;
  result.breakdown = breakdown;
  result.rx_power_db =
      budget.tx_power_db + budget.tx_gain_db + budget.rx_gain_db - breakdown.total_db();
  result.snr_linear = snr_linear(result.rx_power_db, budget.noise_db);
  return result;
}

}  // namespace fsosec
