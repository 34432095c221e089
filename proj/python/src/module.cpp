#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>

#include "orientrds/baseline2d.hpp"
#include "orientrds/errors.hpp"
#include "orientrds/fixtures.hpp"
#include "orientrds/inpaint.hpp"
#include "orientrds/lift.hpp"
#include "orientrds/metrics.hpp"
#include "orientrds/rds.hpp"

namespace py = pybind11;
using namespace orientrds;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Image to_image(const Array& a) {
    if (a.ndim() != 2) throw ParameterError("expected a 2-d array (height, width)");
    Image f(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    std::copy_n(a.data(), f.size(), f.values().begin());
    return f;
}

Array from_image(const Image& f) {
    Array a({f.height(), f.width()});
    std::copy(f.values().begin(), f.values().end(), a.mutable_data());
    return a;
}

Volume to_volume(const Array& a) {
    if (a.ndim() != 3) throw ParameterError("expected a 3-d array (orientations, height, width)");
    Volume v(static_cast<int>(a.shape(2)), static_cast<int>(a.shape(1)),
             static_cast<int>(a.shape(0)));
    std::copy_n(a.data(), v.size(), v.values().begin());
    return v;
}

Array from_volume(const Volume& v) {
    Array a({v.orientations(), v.height(), v.width()});
    std::copy(v.values().begin(), v.values().end(), a.mutable_data());
    return a;
}

Mask to_mask(const py::array_t<bool, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw ParameterError("expected a 2-d boolean mask");
    Mask m(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    for (std::size_t i = 0; i < m.size(); ++i) m.cells[i] = a.data()[i] ? 1 : 0;
    return m;
}

py::array_t<bool> from_mask(const Mask& m) {
    py::array_t<bool> a({m.height, m.width});
    for (std::size_t i = 0; i < m.size(); ++i) a.mutable_data()[i] = m[i];
    return a;
}

}  // namespace

PYBIND11_MODULE(_orientrds, m) {
    m.doc() = "Regularised diffusion-shock filtering on position-orientation space";

    static py::exception<InstabilityError> instability(m, "InstabilityError", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InstabilityError& e) {
            instability(e.what());
        } catch (const ParameterError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const IoError& e) {
            PyErr_SetString(PyExc_OSError, e.what());
        }
    });

    py::class_<DiagonalMetric>(m, "DiagonalMetric")
        .def(py::init<double, double, double>(), py::arg("g11"), py::arg("g22"), py::arg("g33"))
        .def_static("from_anisotropy", &DiagonalMetric::from_anisotropy, py::arg("xi"), py::arg("zeta"))
        .def_static("from_dual", &DiagonalMetric::from_dual)
        .def_readwrite("g11", &DiagonalMetric::g11)
        .def_readwrite("g22", &DiagonalMetric::g22)
        .def_readwrite("g33", &DiagonalMetric::g33);

    py::class_<RdsParams>(m, "RdsParams")
        .def(py::init<>())
        .def_static("from_anisotropy", &RdsParams::from_anisotropy, py::arg("zeta_D"),
                    py::arg("zeta_M"), py::arg("xi") = 0.1)
        .def_readwrite("metric_D", &RdsParams::metric_D)
        .def_readwrite("metric_M", &RdsParams::metric_M)
        .def_readwrite("metric_g", &RdsParams::metric_g)
        .def_readwrite("metric_S", &RdsParams::metric_S)
        .def_readwrite("lam", &RdsParams::lambda)
        .def_readwrite("sigma", &RdsParams::sigma)
        .def_readwrite("rho", &RdsParams::rho)
        .def_readwrite("nu", &RdsParams::nu)
        .def_readwrite("shock_eps", &RdsParams::shock_eps)
        .def_readwrite("use_gauge", &RdsParams::use_gauge)
        .def_readwrite("xi", &RdsParams::xi)
        .def("validate", &RdsParams::validate);

    py::class_<Rds2dParams>(m, "Rds2dParams")
        .def(py::init<>())
        .def_readwrite("lam", &Rds2dParams::lambda)
        .def_readwrite("sigma", &Rds2dParams::sigma)
        .def_readwrite("rho", &Rds2dParams::rho)
        .def_readwrite("nu", &Rds2dParams::nu)
        .def_readwrite("tau", &Rds2dParams::tau);

    py::class_<WaveletStack>(m, "WaveletStack")
        .def_readonly("orientations", &WaveletStack::orientations)
        .def_readonly("size", &WaveletStack::size);

    m.def("build_cake_wavelets", &build_cake_wavelets, py::arg("orientations"), py::arg("size"),
          py::arg("angular_order") = 3, py::arg("inflection") = 0.8);
    m.def("lift", [](const Array& f, const WaveletStack& w) { return from_volume(lift(to_image(f), w)); },
          py::arg("image"), py::arg("wavelets"));
    m.def("project", [](const Array& v) { return from_image(project(to_volume(v))); }, py::arg("volume"));

    m.def("stable_timestep",
          [](const RdsParams& p, double dxy, double dtheta) { return stable_timestep(p, dxy, dtheta); },
          py::arg("params"), py::arg("dxy"), py::arg("dtheta"));

    m.def(
        "run_rds",
        [](const Array& f, const WaveletStack& w, const RdsParams& p, double T) {
            RdsResult r;
            {
                const Image img = to_image(f);
                py::gil_scoped_release release;
                r = run_rds(img, w, p, T);
            }
            return py::make_tuple(from_image(r.image), from_volume(r.volume), r.steps, r.tau);
        },
        py::arg("image"), py::arg("wavelets"), py::arg("params"), py::arg("T"),
        "Lift, evolve for time T and project. Returns (image, volume, steps, tau).");

    m.def(
        "inpaint",
        [](const Array& f, const py::array_t<bool, py::array::c_style | py::array::forcecast>& hole,
           const WaveletStack& w, const RdsParams& p, double T, int mask_dilation,
           bool fill_outside_mean) {
            InpaintOptions opt;
            opt.mask_dilation = mask_dilation;
            opt.fill = fill_outside_mean ? HoleFill::outside_mean : HoleFill::keep;
            return from_image(inpaint(to_image(f), to_mask(hole), w, p, T, opt).image);
        },
        py::arg("image"), py::arg("hole"), py::arg("wavelets"), py::arg("params"), py::arg("T"),
        py::arg("mask_dilation") = 0, py::arg("fill_outside_mean") = false);

    m.def(
        "run_rds2d",
        [](const Array& f, const Rds2dParams& p, double T) { return from_image(run_rds2d(to_image(f), p, T)); },
        py::arg("image"), py::arg("params"), py::arg("T"));

    m.def(
        "psnr", [](const Array& f, const Array& g, double peak) { return psnr(to_image(f), to_image(g), peak); },
        py::arg("f"), py::arg("g"), py::arg("peak") = 1.0);
    m.def(
        "dice",
        [](const py::array_t<bool>& f, const py::array_t<bool>& g, double eps) {
            return dice(to_mask(f), to_mask(g), eps);
        },
        py::arg("f"), py::arg("g"), py::arg("eps") = 1e-6);
    m.def(
        "precision",
        [](const py::array_t<bool>& f, const py::array_t<bool>& g, double eps) {
            return precision(to_mask(f), to_mask(g), eps);
        },
        py::arg("f"), py::arg("g"), py::arg("eps") = 1e-6);
    m.def(
        "correlated_noise",
        [](int width, int height, double sigma, double rho, std::uint64_t seed) {
            return from_image(correlated_noise(width, height, sigma, rho, seed));
        },
        py::arg("width"), py::arg("height"), py::arg("sigma"), py::arg("rho"), py::arg("seed"));

    m.def(
        "crossing_fixture",
        [](int size, int hole_size, double line_width, double half_angle, double axis_angle) {
            const CrossingFixture fx = crossing_fixture(size, hole_size, line_width, half_angle, axis_angle);
            return py::make_tuple(from_image(fx.clean), from_image(fx.damaged), from_mask(fx.hole));
        },
        py::arg("size") = 64, py::arg("hole_size") = 14, py::arg("line_width") = 1.0,
        py::arg("half_angle") = 0.5235987755982988, py::arg("axis_angle") = 0.0,
        "Returns (clean, damaged, hole).");
    m.def("spiral_fixture", [](int size, double pitch, double lw) { return from_image(spiral_fixture(size, pitch, lw)); },
          py::arg("size") = 64, py::arg("pitch") = 8.0, py::arg("line_width") = 1.0);
    m.def("circle_fixture", [](int size, double r, double lw) { return from_image(circle_fixture(size, r, lw)); },
          py::arg("size") = 64, py::arg("radius") = 20.0, py::arg("line_width") = 1.0);
}
