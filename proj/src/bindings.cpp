#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>
#include <sstream>

#include "clustersim/channel.hpp"
#include "clustersim/config.hpp"
#include "clustersim/formation.hpp"
#include "clustersim/fronthaul.hpp"
#include "clustersim/geometry.hpp"
#include "clustersim/montecarlo.hpp"
#include "clustersim/transmission.hpp"
#include "clustersim/version.hpp"

namespace py = pybind11;
using namespace clustersim;

namespace {

std::string metric_string(montecarlo::MetricEstimate::Metric m) {
    switch (m) {
        case montecarlo::MetricEstimate::Metric::coverage: return "coverage";
        case montecarlo::MetricEstimate::Metric::ergodic_capacity: return "ergodic_capacity";
        case montecarlo::MetricEstimate::Metric::throughput_bps: return "throughput_bps";
        case montecarlo::MetricEstimate::Metric::outage: return "outage";
    }
    return "";
}

}  // namespace

PYBIND11_MODULE(_clustersim, m) {
    m.doc() = "Monte Carlo simulator for clustered LEO satellite downlink networks";
    m.attr("__version__") = kVersion;

    // geometry
    py::class_<geometry::UnitDirection>(m, "UnitDirection")
        .def(py::init([](double x, double y, double z) { return geometry::make_unit(x, y, z); }),
             py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readonly("x", &geometry::UnitDirection::x)
        .def_readonly("y", &geometry::UnitDirection::y)
        .def_readonly("z", &geometry::UnitDirection::z)
        .def("__repr__", [](const geometry::UnitDirection& d) {
            std::ostringstream s;
            s << "UnitDirection(" << d.x << ", " << d.y << ", " << d.z << ")";
            return s.str();
        });

    py::class_<geometry::BodyConstants>(m, "BodyConstants")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("earth_radius_km"), py::arg("altitude_km"))
        .def_readwrite("earth_radius_km", &geometry::BodyConstants::earth_radius_km)
        .def_readwrite("altitude_km", &geometry::BodyConstants::altitude_km)
        .def("orbital_radius_km", &geometry::BodyConstants::orbital_radius_km);

    m.def(
        "sample_sphere_bpp",
        [](std::size_t n, std::uint64_t seed) {
            rng::Stream s(seed);
            return geometry::sample_sphere_bpp(n, s);
        },
        py::arg("n"), py::arg("seed"));
    m.def(
        "sample_cap_uniform",
        [](const geometry::UnitDirection& center, double polar_angle_rad, std::size_t n,
           std::uint64_t seed) {
            rng::Stream s(seed);
            return geometry::sample_cap_uniform({center, polar_angle_rad}, n, s);
        },
        py::arg("center"), py::arg("polar_angle_rad"), py::arg("n"), py::arg("seed"));
    m.def(
        "place_circular",
        [](const geometry::UnitDirection& center, double polar_angle_rad, std::size_t n,
           double phase_rad) {
            return geometry::place_circular({center, polar_angle_rad}, n, phase_rad);
        },
        py::arg("center"), py::arg("polar_angle_rad"), py::arg("n"), py::arg("phase_rad") = 0.0);
    m.def(
        "slant_range_km",
        [](const geometry::UnitDirection& sat, const geometry::UnitDirection& terminal,
           const geometry::BodyConstants& body) {
            return geometry::slant_range_km(sat, {terminal, 0.0}, body);
        },
        py::arg("sat_dir"), py::arg("terminal_dir"), py::arg("body") = geometry::BodyConstants{});
    m.def(
        "elevation_angle_rad",
        [](const geometry::UnitDirection& sat, const geometry::UnitDirection& terminal,
           const geometry::BodyConstants& body) {
            return geometry::elevation_angle_rad(sat, {terminal, 0.0}, body);
        },
        py::arg("sat_dir"), py::arg("terminal_dir"), py::arg("body") = geometry::BodyConstants{});
    m.def(
        "off_boresight_angle_rad",
        [](const geometry::UnitDirection& sat, const geometry::UnitDirection& terminal,
           const geometry::BodyConstants& body) {
            return geometry::off_boresight_angle_rad(sat, {terminal, 0.0}, body);
        },
        py::arg("sat_dir"), py::arg("terminal_dir"), py::arg("body") = geometry::BodyConstants{});
    m.def(
        "is_visible",
        [](const geometry::UnitDirection& sat, const geometry::UnitDirection& terminal,
           const geometry::BodyConstants& body, double min_elevation_rad) {
            return geometry::is_visible(sat, {terminal, 0.0}, body, min_elevation_rad);
        },
        py::arg("sat_dir"), py::arg("terminal_dir"), py::arg("body") = geometry::BodyConstants{},
        py::arg("min_elevation_rad") = 0.0);

    // formation
    py::enum_<formation::FormationKind>(m, "FormationKind")
        .value("circular", formation::FormationKind::circular)
        .value("uniform", formation::FormationKind::uniform);

    py::class_<formation::ClusterLayout>(m, "ClusterLayout")
        .def_readonly("master", &formation::ClusterLayout::master)
        .def_readonly("slaves", &formation::ClusterLayout::slaves)
        .def_readonly("kind", &formation::ClusterLayout::kind)
        .def_readonly("phase_rad", &formation::ClusterLayout::phase_rad)
        .def("size", &formation::ClusterLayout::size);

    py::class_<formation::FormationClock>(m, "FormationClock")
        .def(py::init<>())
        .def_readwrite("period_s", &formation::FormationClock::period_s)
        .def_readwrite("t_s", &formation::FormationClock::t_s)
        .def_readwrite("spin", &formation::FormationClock::spin);

    m.def(
        "build_cluster",
        [](const geometry::UnitDirection& master, std::size_t n_slaves,
           formation::FormationKind kind, double polar_angle_rad, double phase_rad,
           std::uint64_t seed) {
            rng::Stream s(seed);
            return formation::build_cluster(master, n_slaves, kind, polar_angle_rad, phase_rad, s);
        },
        py::arg("master"), py::arg("n_slaves"), py::arg("kind"), py::arg("polar_angle_rad"),
        py::arg("phase_rad") = 0.0, py::arg("seed") = 0);
    m.def("advance_phase", &formation::advance_phase, py::arg("cluster"), py::arg("clock"),
          py::arg("dt_s"));
    m.def("drop_satellite", &formation::drop_satellite, py::arg("cluster"), py::arg("index"));
    m.def("max_isl_distance_km", &formation::max_isl_distance_km, py::arg("cluster"),
          py::arg("body") = geometry::BodyConstants{});
    m.def("kepler_period_s", &formation::kepler_period_s, py::arg("body") = geometry::BodyConstants{});

    // channel
    py::class_<channel::LinkBudget>(m, "LinkBudget")
        .def(py::init<>())
        .def_readwrite("carrier_hz", &channel::LinkBudget::carrier_hz)
        .def_readwrite("bandwidth_hz", &channel::LinkBudget::bandwidth_hz)
        .def_readwrite("eirp_density_dBW_per_Hz", &channel::LinkBudget::eirp_density_dBW_per_Hz)
        .def_readwrite("noise_density_dBm_per_Hz", &channel::LinkBudget::noise_density_dBm_per_Hz)
        .def_readwrite("pathloss_exponent", &channel::LinkBudget::pathloss_exponent)
        .def_readwrite("tx_max_gain_dBi", &channel::LinkBudget::tx_max_gain_dBi)
        .def_readwrite("beamwidth_3dB_deg", &channel::LinkBudget::beamwidth_3dB_deg)
        .def_readwrite("rx_gain_dB", &channel::LinkBudget::rx_gain_dB);

    py::class_<channel::ShadowedRicianParams>(m, "ShadowedRicianParams")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("b"), py::arg("m"), py::arg("omega"))
        .def_readwrite("b", &channel::ShadowedRicianParams::b)
        .def_readwrite("m", &channel::ShadowedRicianParams::m)
        .def_readwrite("omega", &channel::ShadowedRicianParams::omega)
        .def("mean_power", &channel::ShadowedRicianParams::mean_power)
        .def("second_moment", &channel::ShadowedRicianParams::second_moment);

    m.def("path_gain_linear", &channel::path_gain_linear, py::arg("d_km"),
          py::arg("budget") = channel::LinkBudget{});
    m.def("beam_gain_linear", &channel::beam_gain_linear, py::arg("off_boresight_rad"),
          py::arg("budget") = channel::LinkBudget{});
    m.def("noise_power_W", &channel::noise_power_W, py::arg("budget") = channel::LinkBudget{});
    m.def("eirp_total_W", &channel::eirp_total_W, py::arg("budget") = channel::LinkBudget{});
    m.def(
        "sample_shadowed_rician_power",
        [](const channel::ShadowedRicianParams& p, std::size_t n, std::uint64_t seed) {
            rng::Stream s(seed);
            std::vector<double> out(n);
            for (auto& x : out) x = channel::sample_shadowed_rician_power(p, s);
            return out;
        },
        py::arg("params"), py::arg("n"), py::arg("seed"));

    // transmission combiners
    m.def("desired_power_dps",
          [](const std::vector<double>& g) { return transmission::desired_power_dps(g); },
          py::arg("member_powers"));
    m.def("desired_power_jt_egt",
          [](const std::vector<double>& g) { return transmission::desired_power_jt_egt(g); },
          py::arg("member_powers"));
    m.def(
        "desired_power_jt_mrt",
        [](const std::vector<double>& g, const std::string& mode) {
            return transmission::desired_power_jt_mrt(
                g, mode == "per_satellite" ? transmission::MrtPowerBudget::per_satellite
                                           : transmission::MrtPowerBudget::cluster_total);
        },
        py::arg("member_powers"), py::arg("budget_mode") = "cluster_total");

    py::class_<transmission::SinrSample>(m, "SinrSample")
        .def_readonly("desired_W", &transmission::SinrSample::desired_W)
        .def_readonly("interference_W", &transmission::SinrSample::interference_W)
        .def_readonly("noise_W", &transmission::SinrSample::noise_W)
        .def_readonly("sinr", &transmission::SinrSample::sinr)
        .def_readonly("outage", &transmission::SinrSample::outage);

    // montecarlo
    py::class_<montecarlo::ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("n_satellites", &montecarlo::ExperimentConfig::n_satellites)
        .def_readwrite("master_fraction", &montecarlo::ExperimentConfig::master_fraction)
        .def_readwrite("formation", &montecarlo::ExperimentConfig::formation)
        .def_readwrite("theta_c_deg", &montecarlo::ExperimentConfig::theta_c_deg)
        .def_readwrite("body", &montecarlo::ExperimentConfig::body)
        .def_readwrite("budget", &montecarlo::ExperimentConfig::budget)
        .def_readwrite("fading", &montecarlo::ExperimentConfig::fading)
        .def_readwrite("n_drops", &montecarlo::ExperimentConfig::n_drops)
        .def_readwrite("seed", &montecarlo::ExperimentConfig::seed)
        .def_readwrite("beta_grid_dB", &montecarlo::ExperimentConfig::beta_grid_dB)
        .def_readwrite("min_elevation_deg", &montecarlo::ExperimentConfig::min_elevation_deg)
        .def_readwrite("debug_unit_fading", &montecarlo::ExperimentConfig::debug_unit_fading)
        .def_readwrite("debug_pin_zenith", &montecarlo::ExperimentConfig::debug_pin_zenith)
        .def("set_scheme",
             [](montecarlo::ExperimentConfig& cfg, const std::string& s) {
                 montecarlo::apply_scheme_string(cfg, s);
             })
        .def("scheme", [](const montecarlo::ExperimentConfig& cfg) {
            return config::scheme_string(cfg);
        })
        .def("validate", &montecarlo::ExperimentConfig::validate)
        .def_static("from_json", [](const std::string& text) {
            return config::parse_config_json(nlohmann::json::parse(text));
        })
        .def("to_json", [](const montecarlo::ExperimentConfig& cfg) {
            return config::config_to_json(cfg).dump(2);
        });

    py::class_<montecarlo::MetricEstimate>(m, "MetricEstimate")
        .def_property_readonly("metric",
                               [](const montecarlo::MetricEstimate& e) { return metric_string(e.metric); })
        .def_readonly("value", &montecarlo::MetricEstimate::value)
        .def_readonly("ci95_halfwidth", &montecarlo::MetricEstimate::ci95_halfwidth)
        .def_readonly("n_drops", &montecarlo::MetricEstimate::n_drops)
        .def_readonly("seed", &montecarlo::MetricEstimate::seed)
        .def_readonly("threshold_dB", &montecarlo::MetricEstimate::threshold_dB)
        .def("__repr__", [](const montecarlo::MetricEstimate& e) {
            std::ostringstream s;
            s << "MetricEstimate(" << metric_string(e.metric) << ", value=" << e.value
              << ", ci95=" << e.ci95_halfwidth << ")";
            return s.str();
        });

    m.def("run_drop", &montecarlo::run_drop, py::arg("config"), py::arg("drop_index"));
    m.def("simulate_drops", &montecarlo::simulate_drops, py::arg("config"), py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("estimate_coverage", &montecarlo::estimate_coverage, py::arg("config"),
          py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("estimate_ergodic_capacity", &montecarlo::estimate_ergodic_capacity, py::arg("config"),
          py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());

    m.def(
        "sweep_csv",
        [](const montecarlo::ExperimentConfig& cfg, const std::string& axis,
           const std::vector<std::string>& values, int workers) {
            return config::execute_sweep(cfg, montecarlo::parse_axis(axis), values, workers).csv;
        },
        py::arg("config"), py::arg("axis"), py::arg("values"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "run_csv",
        [](const montecarlo::ExperimentConfig& cfg, int workers) {
            return config::execute_run(cfg, workers).csv;
        },
        py::arg("config"), py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());

    // fronthaul
    py::class_<fronthaul::SplitOption>(m, "SplitOption")
        .def_property_readonly(
            "name", [](const fronthaul::SplitOption& o) { return fronthaul::split_name(o.kind); })
        .def_readonly("ul_rate_gbps", &fronthaul::SplitOption::ul_rate_gbps)
        .def_readonly("dl_rate_gbps", &fronthaul::SplitOption::dl_rate_gbps)
        .def_readonly("latency_low_ms", &fronthaul::SplitOption::latency_low_ms)
        .def_readonly("latency_high_ms", &fronthaul::SplitOption::latency_high_ms)
        .def_readonly("notes", &fronthaul::SplitOption::notes);

    m.def("split_catalog", [] {
        const auto& c = fronthaul::split_catalog();
        return std::vector<fronthaul::SplitOption>(c.begin(), c.end());
    });
    m.def("isl_latency_ms", &fronthaul::isl_latency_ms, py::arg("distance_km"),
          py::arg("processing_ms") = 0.0);
    m.def(
        "feasible_splits",
        [](double ul, double dl, double latency_ms, double margin) {
            return fronthaul::feasible_splits({ul, dl, latency_ms}, margin);
        },
        py::arg("capacity_ul_gbps"), py::arg("capacity_dl_gbps"), py::arg("one_way_latency_ms"),
        py::arg("safety_margin") = 1.0);
    m.def(
        "advise_json",
        [](double theta_c_deg, double altitude_km, double earth_radius_km, std::size_t n_slaves,
           double cap_ul, double cap_dl, double processing_ms, double margin) {
            rng::Stream unused(0);
            const auto cluster = formation::build_cluster(
                {0.0, 0.0, 1.0}, n_slaves, formation::FormationKind::circular,
                theta_c_deg * std::numbers::pi / 180.0, 0.0, unused);
            const geometry::BodyConstants body{earth_radius_km, altitude_km};
            return config::advice_json(
                       fronthaul::advise(cluster, body, cap_ul, cap_dl, processing_ms, margin))
                .dump();
        },
        py::arg("theta_c_deg") = 1.0, py::arg("altitude_km") = 600.0,
        py::arg("earth_radius_km") = 6371.0, py::arg("n_slaves") = 9,
        py::arg("capacity_ul_gbps") = 100.0, py::arg("capacity_dl_gbps") = 100.0,
        py::arg("processing_ms") = 0.0, py::arg("safety_margin") = 1.0);
}
