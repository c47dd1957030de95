#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "krillsim/error.hpp"
#include "krillsim/geartrain.hpp"
#include "krillsim/kinematics.hpp"
#include "krillsim/scaling.hpp"
#include "krillsim/schedule.hpp"
#include "krillsim/validation.hpp"
#include "krillsim/waveforms.hpp"

namespace py = pybind11;
using namespace krillsim;

namespace {

// Rows of t,bx1,by1,bx2,by2,ax,ay,bx,by,tx,ty.
validation::MarkerTrace markers_from_matrix(const Eigen::MatrixXd& m) {
    if (m.cols() != 11) throw DomainError("marker array needs 11 columns");
    validation::MarkerTrace out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out.push_back({m(r, 0),
                       {m(r, 1), m(r, 2)},
                       {m(r, 3), m(r, 4)},
                       {m(r, 5), m(r, 6)},
                       {m(r, 7), m(r, 8)},
                       {m(r, 9), m(r, 10)}});
    }
    return out;
}

Eigen::RowVectorXd marker_row(const validation::MarkerFrame& f) {
    Eigen::RowVectorXd r(11);
    r << f.t, f.body_a.x(), f.body_a.y(), f.body_b.x(), f.body_b.y(), f.joint_a.x(), f.joint_a.y(),
        f.joint_b.x(), f.joint_b.y(), f.tip.x(), f.tip.y();
    return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kinematics, gear-train and validation routines for metachronal swimmer mechanisms";
    m.attr("__version__") = "0.1.0";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    // waveforms
    py::class_<waveforms::StrokeProfile>(m, "StrokeProfile")
        .def(py::init([](double mean, double pkpk, double frequency, double phase) {
                 waveforms::StrokeProfile p{mean, pkpk, frequency, phase};
                 p.validate();
                 return p;
             }),
             py::arg("mean"), py::arg("peak_to_peak"), py::arg("frequency") = waveforms::kRobotFrequency,
             py::arg("phase_offset") = 0.0)
        .def_readwrite("mean", &waveforms::StrokeProfile::mean)
        .def_readwrite("peak_to_peak", &waveforms::StrokeProfile::peak_to_peak)
        .def_readwrite("frequency", &waveforms::StrokeProfile::frequency)
        .def_readwrite("phase_offset", &waveforms::StrokeProfile::phase_offset)
        .def_property_readonly("period", &waveforms::StrokeProfile::period);

    py::class_<waveforms::MetachronalConfig>(m, "MetachronalConfig")
        .def(py::init([](int n) { return waveforms::default_config(n); }), py::arg("n_appendages") = 5)
        .def_readwrite("n_appendages", &waveforms::MetachronalConfig::n_appendages)
        .def_readwrite("lag", &waveforms::MetachronalConfig::lag)
        .def_readwrite("frequency", &waveforms::MetachronalConfig::frequency)
        .def_readwrite("alpha_pkpk", &waveforms::MetachronalConfig::alpha_pkpk)
        .def_readwrite("beta_pkpk", &waveforms::MetachronalConfig::beta_pkpk)
        .def_readwrite("alpha_mean", &waveforms::MetachronalConfig::alpha_mean)
        .def_readwrite("beta_mean", &waveforms::MetachronalConfig::beta_mean)
        .def_readwrite("alpha_beta_phase", &waveforms::MetachronalConfig::alpha_beta_phase)
        .def("validate", &waveforms::MetachronalConfig::validate);

    m.def("alpha_profile", &waveforms::alpha_profile, py::arg("index"), py::arg("cfg"));
    m.def("beta_profile", &waveforms::beta_profile, py::arg("index"), py::arg("cfg"));
    m.def("sample", &waveforms::sample, py::arg("profile"), py::arg("t"));
    m.def("metachronal_offsets", &waveforms::metachronal_offsets, py::arg("cfg"));

    // geartrain
    py::class_<geartrain::GearChain>(m, "GearChain")
        .def_static("from_radii", &geartrain::GearChain::from_radii, py::arg("radii"))
        .def_static("from_teeth", [](const std::vector<int>& teeth) { return geartrain::GearChain::from_teeth(teeth); },
                    py::arg("teeth"))
        .def_static("equal", &geartrain::GearChain::equal, py::arg("n_gears"), py::arg("radius"))
        .def_property_readonly("radii", &geartrain::GearChain::radii)
        .def("__len__", &geartrain::GearChain::size);

    m.def("epicyclic_step", &geartrain::epicyclic_step, py::arg("dphi_prev"), py::arg("dphi_arm"),
          py::arg("n_prev"), py::arg("n_next"));
    m.def("composite_ratio", &geartrain::composite_ratio, py::arg("chain"));
    m.def("chain_forward", &geartrain::chain_forward, py::arg("dpsi1"), py::arg("dtheta1"), py::arg("chain"));
    m.def("chain_inverse", &geartrain::chain_inverse, py::arg("dtheta2"), py::arg("dtheta1"), py::arg("chain"));
    m.def(
        "servo_angles_for_pose",
        [](double alpha, double beta, const geartrain::GearChain& chain) {
            const auto s = geartrain::servo_angles_for_pose(alpha, beta, chain);
            return py::make_tuple(s.alpha, s.psi1);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("chain"));
    m.def("primitive_radius", &geartrain::primitive_radius, py::arg("x1"), py::arg("n_gears"));
    m.def("modulus", &geartrain::modulus, py::arg("primitive_radius"), py::arg("teeth"));
    m.def(
        "apply_backlash",
        [](const std::vector<double>& trace, double deadband) { return geartrain::apply_backlash(trace, deadband); },
        py::arg("trace"), py::arg("deadband"));

    // kinematics
    py::class_<kinematics::AppendageGeometry>(m, "AppendageGeometry")
        .def(py::init([](double x1, double x2, double zeta) {
                 kinematics::AppendageGeometry g;
                 g.x1 = x1;
                 g.x2 = x2;
                 g.zeta = zeta;
                 g.gear_chain = geartrain::GearChain::equal(4, geartrain::primitive_radius(x1, 4));
                 g.validate();
                 return g;
             }),
             py::arg("x1") = 0.032, py::arg("x2") = 0.0495, py::arg("zeta") = 37.0)
        .def_readwrite("x1", &kinematics::AppendageGeometry::x1)
        .def_readwrite("x2", &kinematics::AppendageGeometry::x2)
        .def_readwrite("zeta", &kinematics::AppendageGeometry::zeta)
        .def_readwrite("gear_chain", &kinematics::AppendageGeometry::gear_chain);

    py::class_<kinematics::KinematicState>(m, "KinematicState")
        .def(py::init([](double alpha, double beta, double gamma, double t) {
                 kinematics::KinematicState s{alpha, beta, gamma, t};
                 s.validate();
                 return s;
             }),
             py::arg("alpha"), py::arg("beta"), py::arg("gamma") = 0.0, py::arg("t") = 0.0)
        .def_readwrite("alpha", &kinematics::KinematicState::alpha)
        .def_readwrite("beta", &kinematics::KinematicState::beta)
        .def_readwrite("gamma", &kinematics::KinematicState::gamma)
        .def_readwrite("t", &kinematics::KinematicState::t);

    py::class_<kinematics::LinkAngles>(m, "LinkAngles")
        .def_readonly("theta1", &kinematics::LinkAngles::theta1)
        .def_readonly("theta2", &kinematics::LinkAngles::theta2);

    py::class_<kinematics::GammaParams>(m, "GammaParams")
        .def(py::init([](double max_angle, double ramp_width, double abduction_phase, double power_fraction) {
                 kinematics::GammaParams p{max_angle, ramp_width, abduction_phase, power_fraction};
                 p.validate();
                 return p;
             }),
             py::arg("max_angle") = 77.0, py::arg("ramp_width") = 0.1, py::arg("abduction_phase") = 0.0,
             py::arg("power_fraction") = 0.5)
        .def_readwrite("max_angle", &kinematics::GammaParams::max_angle)
        .def_readwrite("ramp_width", &kinematics::GammaParams::ramp_width)
        .def_readwrite("abduction_phase", &kinematics::GammaParams::abduction_phase)
        .def_readwrite("power_fraction", &kinematics::GammaParams::power_fraction);

    m.def("link_angles", &kinematics::link_angles, py::arg("alpha"), py::arg("beta"));
    m.def("pleopod_tip", &kinematics::pleopod_tip, py::arg("geom"), py::arg("alpha"), py::arg("beta"));
    m.def(
        "tip_trajectory",
        [](const kinematics::AppendageGeometry& g, const waveforms::StrokeProfile& a,
           const waveforms::StrokeProfile& b, std::size_t n) {
            const auto traj = kinematics::tip_trajectory(g, a, b, n);
            Eigen::MatrixXd out(static_cast<Eigen::Index>(traj.samples.size()), 3);
            for (std::size_t i = 0; i < traj.samples.size(); ++i) {
                const auto r = static_cast<Eigen::Index>(i);
                out(r, 0) = traj.samples[i].t;
                out(r, 1) = traj.samples[i].position.x();
                out(r, 2) = traj.samples[i].position.y();
            }
            return out;
        },
        py::arg("geom"), py::arg("alpha_profile"), py::arg("beta_profile"), py::arg("n_samples"),
        "Array of rows (t, x, y) over one period.");
    m.def("gamma_profile", &kinematics::gamma_profile, py::arg("phase"),
          py::arg("params") = kinematics::GammaParams{});
    m.def(
        "pleopod_pose_3d",
        [](const kinematics::AppendageGeometry& g, const kinematics::KinematicState& s) {
            const auto pose = kinematics::pleopod_pose_3d(g, s);
            return py::make_tuple(pose.endopodite.matrix(), pose.exopodite.matrix());
        },
        py::arg("geom"), py::arg("state"),
        "Endopodite and exopodite frames as 3x3 matrices with columns (long axis, normal, binormal).");

    // scaling
    py::enum_<scaling::ReConvention>(m, "ReConvention")
        .value("Dimensional", scaling::ReConvention::Dimensional)
        .value("AsWritten", scaling::ReConvention::AsWritten);

    py::class_<scaling::SwimmerParams>(m, "SwimmerParams")
        .def(py::init([](double theta, double n, double length, double nu) {
                 return scaling::SwimmerParams{theta, n, length, nu};
             }),
             py::arg("stroke_amplitude"), py::arg("frequency"), py::arg("pleopod_length"),
             py::arg("kinematic_viscosity") = scaling::kWaterViscosity)
        .def_readwrite("stroke_amplitude", &scaling::SwimmerParams::stroke_amplitude)
        .def_readwrite("frequency", &scaling::SwimmerParams::frequency)
        .def_readwrite("pleopod_length", &scaling::SwimmerParams::pleopod_length)
        .def_readwrite("kinematic_viscosity", &scaling::SwimmerParams::kinematic_viscosity)
        .def_static("krill", &scaling::krill_preset);

    m.def("tip_speed", &scaling::tip_speed, py::arg("params"));
    m.def("reynolds", &scaling::reynolds, py::arg("params"),
          py::arg("convention") = scaling::ReConvention::Dimensional);
    m.def("scaled_frequency", &scaling::scaled_frequency, py::arg("base"), py::arg("length_scale"),
          py::arg("convention") = scaling::ReConvention::Dimensional);

    // schedule
    py::class_<schedule::ScheduleOptions>(m, "ScheduleOptions")
        .def(py::init<>())
        .def_readwrite("dt", &schedule::ScheduleOptions::dt)
        .def_readwrite("amplification", &schedule::ScheduleOptions::amplification)
        .def_readwrite("amplify_alpha", &schedule::ScheduleOptions::amplify_alpha)
        .def_readwrite("amplify_beta", &schedule::ScheduleOptions::amplify_beta)
        .def_readwrite("servo_min", &schedule::ScheduleOptions::servo_min)
        .def_readwrite("servo_max", &schedule::ScheduleOptions::servo_max);

    m.def("default_chains", &schedule::default_chains, py::arg("n_appendages") = 5, py::arg("x1") = 0.032);
    m.def(
        "build_schedule",
        [](const waveforms::MetachronalConfig& cfg, const std::vector<geartrain::GearChain>& chains,
           double duration, const schedule::ScheduleOptions& opt) {
            const auto s = schedule::build_schedule(cfg, chains, duration, opt);
            Eigen::MatrixXd out(static_cast<Eigen::Index>(s.rows.size()), 1 + 2 * s.n_appendages);
            for (std::size_t r = 0; r < s.rows.size(); ++r) {
                const auto i = static_cast<Eigen::Index>(r);
                out(i, 0) = s.rows[r].t;
                for (std::size_t k = 0; k < s.rows[r].commands.size(); ++k) {
                    out(i, static_cast<Eigen::Index>(1 + 2 * k)) = s.rows[r].commands[k].alpha;
                    out(i, static_cast<Eigen::Index>(2 + 2 * k)) = s.rows[r].commands[k].psi1;
                }
            }
            return out;
        },
        py::arg("cfg"), py::arg("chains"), py::arg("duration"), py::arg("options") = schedule::ScheduleOptions{},
        "Array with columns t, a1_alpha, a1_psi, ..., one row per command step.");

    // validation
    py::class_<validation::AngleTrace>(m, "AngleTrace")
        .def(py::init([](std::vector<double> t, std::vector<double> angle) {
                 validation::AngleTrace tr{std::move(t), std::move(angle)};
                 tr.validate();
                 return tr;
             }),
             py::arg("t"), py::arg("angle"))
        .def_readonly("t", &validation::AngleTrace::t)
        .def_readonly("angle", &validation::AngleTrace::angle)
        .def("__len__", &validation::AngleTrace::size);

    py::class_<validation::TraceMetrics>(m, "TraceMetrics")
        .def_readonly("mean_abs_diff", &validation::TraceMetrics::mean_abs_diff)
        .def_readonly("max_abs_diff", &validation::TraceMetrics::max_abs_diff)
        .def_readonly("percent_error", &validation::TraceMetrics::percent_error)
        .def_readonly("pkpk_measured", &validation::TraceMetrics::pkpk_measured)
        .def_readonly("pkpk_reference", &validation::TraceMetrics::pkpk_reference)
        .def_readonly("n_points", &validation::TraceMetrics::n_points);

    m.def(
        "angles_from_markers",
        [](const Eigen::MatrixXd& markers) {
            auto angles = validation::angles_from_markers(markers_from_matrix(markers));
            return py::make_tuple(angles.alpha, angles.beta);
        },
        py::arg("markers"), "Markers as rows t,bx1,by1,bx2,by2,ax,ay,bx,by,tx,ty; returns (alpha, beta) traces.");
    m.def(
        "markers_for_pose",
        [](double t, double alpha, double beta, double x1, double x2) {
            return marker_row(validation::markers_for_pose(t, alpha, beta, x1, x2));
        },
        py::arg("t"), py::arg("alpha"), py::arg("beta"), py::arg("x1") = 0.032, py::arg("x2") = 0.0495);
    m.def("compare_traces", &validation::compare_traces, py::arg("measured"), py::arg("reference"));
    m.def("peak_to_peak", py::overload_cast<const validation::AngleTrace&>(&validation::peak_to_peak),
          py::arg("trace"));
}
