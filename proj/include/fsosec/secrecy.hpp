#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fsosec/link_physics.hpp"

namespace fsosec {

/// Which impairments apply on the eavesdropper channel. Pointing loss is
/// never applied to an eavesdropper: it is assumed perfectly aligned with
/// the transmitter it intercepts.
struct EveImpairmentProfile {
  bool atmosphere = false;

  /// Orbital interceptor: free-space path loss only.
  static EveImpairmentProfile path_loss_only() { return {false}; }
  /// Aerial interceptor inside the attenuating medium.
  static EveImpairmentProfile atmosphere_and_path_loss() { return {true}; }
};

inline constexpr double kMinEveDistanceM = 1.0;

/// Passive eavesdropper tapping the transmitter's beam: it shares P_t and
/// G_t with the legitimate link and contributes its own gain, distance and
/// noise floor.
struct EavesdropperSpec {
  double gain_db = 0.0;
  double distance_m = kMinEveDistanceM;
  double noise_db = -130.0;
  EveImpairmentProfile profile = EveImpairmentProfile::path_loss_only();

  void validate() const {
    require_finite(gain_db, "EavesdropperSpec.gain_db");
    require_finite(noise_db, "EavesdropperSpec.noise_db");
    if (!(distance_m >= kMinEveDistanceM))
      throw std::domain_error(
          "EavesdropperSpec: distance must be >= 1 m (a co-located "
          "eavesdropper is rejected, not extrapolated)");
  }
};

struct SecrecyResult {
  double snr_main = 0.0;
  double snr_eve = 0.0;
  double cap_main_bps_hz = 0.0;
  double cap_eve_bps_hz = 0.0;
  double secrecy_bps_hz = 0.0;
  ImpairmentBreakdown main_breakdown;
  ImpairmentBreakdown eve_breakdown;
};

/// Shannon spectral efficiency log2(1 + snr) in bps/Hz. Uses log1p so that
/// deeply attenuated channels keep a meaningful (tiny, nonzero) capacity.
inline double channel_capacity(double snr) {
  if (!(snr >= 0.0))
    throw std::domain_error("channel_capacity: snr must be >= 0");
  return std::log1p(snr) / std::log(2.0);
}

/// Clamped wiretap difference max(C_m - C_e, 0).
inline double secrecy_capacity(double cap_main, double cap_eve) {
  if (!(cap_main >= 0.0) || !(cap_eve >= 0.0))
    throw std::domain_error("secrecy_capacity: capacities must be >= 0");
  return std::max(cap_main - cap_eve, 0.0);
}

/// Evaluates the legitimate channel with its full impairment chain and the
/// eavesdropper channel under the eavesdropper's profile, and combines the
/// two into a secrecy capacity.
inline SecrecyResult evaluate_link_pair(const LinkBudget& budget,
                                        const LinkGeometry& main_geometry,
                                        const AtmosphereSpec& atmosphere,
                                        const EavesdropperSpec& eve) {
  eve.validate();

  const ChannelResult main = received_power_db(budget, main_geometry, atmosphere);

  LinkBudget eve_budget = budget;
  eve_budget.rx_gain_db = eve.gain_db;
  eve_budget.noise_db = eve.noise_db;
  LinkGeometry eve_geometry;
  eve_geometry.distance_m = eve.distance_m;
  eve_geometry.pointing_error_rad = 0.0;
  const ChannelResult tapped = received_power_db(eve_budget, eve_geometry, atmosphere,
                                                 eve.profile.atmosphere,
                                                 /*include_pointing=*/false);

  SecrecyResult result;
  result.snr_main = main.snr_linear;
  result.snr_eve = tapped.snr_linear;
  result.cap_main_bps_hz = channel_capacity(main.snr_linear);
  result.cap_eve_bps_hz = channel_capacity(tapped.snr_linear);
  result.secrecy_bps_hz = secrecy_capacity(result.cap_main_bps_hz, result.cap_eve_bps_hz);
  result.main_breakdown = main.breakdown;
  result.eve_breakdown = tapped.breakdown;
  return result;
}

}  // namespace fsosec
