#pragma once

#include "clustersim/geometry.hpp"
#include "clustersim/rng.hpp"

namespace clustersim::channel {

// Radio constants for one downlink. EIRP density is interpreted as already
// including the boresight antenna gain, so the beam pattern enters received
// power only as a normalized relative gain g(theta) <= 1.
struct LinkBudget {
    double carrier_hz = 2.0e9;
    double bandwidth_hz = 30.0e6;
    double eirp_density_dBW_per_Hz = 34.0;
    double noise_density_dBm_per_Hz = -174.0;
    double pathloss_exponent = 3.0;
    double tx_max_gain_dBi = 30.0;
    double beamwidth_3dB_deg = 20.0;
    double rx_gain_dB = 0.0;
};

// Land-mobile-satellite fading: Rayleigh scatter with total power 2b plus a
// LOS component whose power is Gamma(m) with mean omega. Mean power 2b+omega.
struct ShadowedRicianParams {
    double b = 0.126;
    double m = 10.1;
    double omega = 0.835;

    double mean_power() const { return 2.0 * b + omega; }
    // E[W^2] for W = |A|^2: 8b^2 + 8b*omega + omega^2 (1 + 1/m)
    double second_moment() const {
        return 8.0 * b * b + 8.0 * b * omega + omega * omega * (1.0 + 1.0 / m);
    }
};

// One Monte Carlo link record: geometry, one fading draw, resulting power.
struct LinkSample {
    double slant_range_km = 0.0;
    double off_boresight_rad = 0.0;
    double fading_power = 1.0;
    double received_power_W = 0.0;
};

// (lambda / (4 pi d0))^2 (d/d0)^(-alpha) with d0 = 1 m. Rejects d <= 0.
double path_gain_linear(double d_km, const LinkBudget& budget);

// Tapered-aperture pattern |2 J1(u)/u|^2 with u = k0 sin(theta), k0 solved so
// the half-power point lands exactly at beamwidth_3dB/2. Precompute for hot loops.
struct BeamPattern {
    double k0 = 0.0;
    double boresight_gain_linear = 1.0;

    explicit BeamPattern(const LinkBudget& budget);
    // normalized gain, g(0) = 1
    double normalized(double off_rad) const;
    double normalized_from_sin(double sin_off) const;
};

// Absolute transmit gain G_max * g(theta), linear.
double beam_gain_linear(double off_rad, const LinkBudget& budget);

double noise_power_W(const LinkBudget& budget);

// Total radiated EIRP in watts: density integrated over the bandwidth.
double eirp_total_W(const LinkBudget& budget);

// One power draw |X + Z e^{j phi}|^2. Independent across calls.
double sample_shadowed_rician_power(const ShadowedRicianParams& p, rng::Stream& stream);

// End-to-end received power for a visible satellite; rejects invisible ones.
LinkSample received_power_W(const geometry::UnitDirection& sat_dir,
                            const geometry::GroundTerminal& terminal,
                            const geometry::BodyConstants& body, const LinkBudget& budget,
                            double fading_power);

}  // namespace clustersim::channel
