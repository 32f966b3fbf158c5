#include "clustersim/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace clustersim::channel {

namespace {

constexpr double kSpeedOfLight_m_s = 299792458.0;

double pattern_of_u(double u) {
    if (u < 1e-9) return 1.0;  // limit of 2 J1(u)/u
    const double a = 2.0 * std::cyl_bessel_j(1.0, u) / u;
    return a * a;
}

// Root of |2 J1(u)/u|^2 = 1/2. The pattern is strictly decreasing from 1 to
// the first null at u = 3.8317, so bisection is safe.
double half_power_u() {
    double lo = 1e-6, hi = 3.8;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (pattern_of_u(mid) > 0.5) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double path_gain_linear(double d_km, const LinkBudget& budget) {
    if (!(d_km > 0.0)) {
        throw std::invalid_argument("path_gain_linear: distance must be positive");
    }
    const double lambda_m = kSpeedOfLight_m_s / budget.carrier_hz;
    const double amp = lambda_m / (4.0 * std::numbers::pi);  // free-space at d0 = 1 m
    const double d_m = d_km * 1000.0;
    return amp * amp * std::pow(d_m, -budget.pathloss_exponent);
}

BeamPattern::BeamPattern(const LinkBudget& budget) {
    const double half_bw_rad = 0.5 * budget.beamwidth_3dB_deg * std::numbers::pi / 180.0;
    k0 = half_power_u() / std::sin(half_bw_rad);
    boresight_gain_linear = std::pow(10.0, budget.tx_max_gain_dBi / 10.0);
}

double BeamPattern::normalized(double off_rad) const {
    return pattern_of_u(k0 * std::sin(off_rad));
}

double BeamPattern::normalized_from_sin(double sin_off) const {
    return pattern_of_u(k0 * sin_off);
}

double beam_gain_linear(double off_rad, const LinkBudget& budget) {
    if (!(off_rad >= 0.0 && off_rad <= std::numbers::pi)) {
        throw std::invalid_argument("beam_gain_linear: angle must be in [0, pi]");
    }
    const BeamPattern p(budget);
    return p.boresight_gain_linear * p.normalized(off_rad);
}

double noise_power_W(const LinkBudget& budget) {
    return std::pow(10.0, (budget.noise_density_dBm_per_Hz - 30.0) / 10.0) * budget.bandwidth_hz;
}

double eirp_total_W(const LinkBudget& budget) {
    return std::pow(10.0, budget.eirp_density_dBW_per_Hz / 10.0) * budget.bandwidth_hz;
}

double sample_shadowed_rician_power(const ShadowedRicianParams& p, rng::Stream& stream) {
    if (!(p.b > 0.0) || !(p.m > 0.0) || !(p.omega >= 0.0)) {
        throw std::invalid_argument("sample_shadowed_rician_power: invalid parameters");
    }
    std::normal_distribution<double> scatter(0.0, std::sqrt(p.b));  // per-component power b
    double re = scatter(stream);
    double im = scatter(stream);
    if (p.omega > 0.0) {
        std::gamma_distribution<double> los_power(p.m, p.omega / p.m);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
        const double z = std::sqrt(los_power(stream));
        const double phi = phase(stream);
        re += z * std::cos(phi);
        im += z * std::sin(phi);
    }
    return re * re + im * im;
}

LinkSample received_power_W(const geometry::UnitDirection& sat_dir,
                            const geometry::GroundTerminal& terminal,
                            const geometry::BodyConstants& body, const LinkBudget& budget,
                            double fading_power) {
    if (!geometry::is_visible(sat_dir, terminal, body)) {
        throw std::invalid_argument("received_power_W: satellite below the horizon");
    }
    LinkSample s;
    s.slant_range_km = geometry::slant_range_km(sat_dir, terminal, body);
    s.off_boresight_rad = geometry::off_boresight_angle_rad(sat_dir, terminal, body);
    s.fading_power = fading_power;
    const BeamPattern pattern(budget);
    const double rx_gain = std::pow(10.0, terminal.rx_gain_dB / 10.0);
    s.received_power_W = eirp_total_W(budget) * pattern.normalized(s.off_boresight_rad) *
                         path_gain_linear(s.slant_range_km, budget) * rx_gain * fading_power;
    return s;
}

}  // namespace clustersim::channel
