#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcu/classical.hpp"
#include "qcu/cli.hpp"
#include "qcu/coupled_ho.hpp"
#include "qcu/delta_box.hpp"
#include "qcu/dimensions.hpp"
#include "qcu/errors.hpp"
#include "qcu/quantum1d.hpp"

#include <sstream>

namespace py = pybind11;
using namespace qcu;

namespace {

Rational to_rational(const py::handle& h) {
  if (py::isinstance<py::int_>(h)) return Rational(h.cast<std::int64_t>());
  if (py::isinstance<py::str>(h)) return Rational::parse(h.cast<std::string>());
  throw InputError("exponents must be int or 'p/q' strings", "dims");
}

std::vector<Quantity> to_quantities(const std::vector<std::pair<std::string, py::list>>& items) {
  std::vector<Quantity> qs;
  for (const auto& [name, dims] : items) {
    std::vector<Rational> e;
    for (const auto& d : dims) e.push_back(to_rational(d));
    qs.push_back({name, DimensionVector(std::move(e))});
  }
  return qs;
}

py::dict product_dict(const UncertaintyProduct& u) {
  py::dict d;
  d["particle1"] = u.particle1.value;
  d["particle2"] = u.particle2.value;
  d["dx1"] = u.particle1.dx;
  d["dp1"] = u.particle1.dp;
  d["dx2"] = u.particle2.dx;
  d["dp2"] = u.particle2.dp;
  return d;
}

py::dict moments_dict(const MomentSet& m) {
  py::dict d;
  d["mean_x"] = m.mean_x;
  d["mean_x2"] = m.mean_x2;
  d["mean_p"] = m.mean_p;
  d["mean_p2"] = m.mean_p2;
  d["method"] = to_string(m.method);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum-classical correspondence toolkit";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ScalingError>(m, "ScalingError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);

  m.def(
      "pi_groups",
      [](const std::vector<std::pair<std::string, py::list>>& items) {
        const auto qs = to_quantities(items);
        std::vector<std::vector<std::pair<std::string, std::string>>> out;
        for (const auto& g : pi_basis(qs)) {
          auto& row = out.emplace_back();
          for (const auto& [name, e] : g.exponents) row.emplace_back(name, e.str());
        }
        return out;
      },
      py::arg("quantities"), "Basis of dimensionless groups; exponents as strings.");
  m.def(
      "dimension_rank", [](const std::vector<std::pair<std::string, py::list>>& items) {
        return dimension_rank(to_quantities(items));
      },
      py::arg("quantities"));

  m.def("reference_products", [] {
    const ReferenceProducts r = reference_products();
    return std::make_pair(r.harmonic, r.box);
  });
  m.def(
      "harmonic_moments",
      [](double mass, double omega, double amplitude, const std::string& method, std::size_t samples,
         std::uint64_t seed) {
        const BoundState1D s = harmonic_state(mass, omega, amplitude);
        switch (parse_moment_method(method)) {
          case MomentMethod::analytic: return moments_dict(analytic_moments(s));
          case MomentMethod::quadrature: return moments_dict(quadrature_moments(s));
          case MomentMethod::monte_carlo: break;
        }
        return moments_dict(mc_moments(s, samples, seed));
      },
      py::arg("mass"), py::arg("omega"), py::arg("amplitude"), py::arg("method") = "analytic",
      py::arg("samples") = 100000, py::arg("seed") = 0);

  m.def(
      "equal_mass_product",
      [](double mass, double k, double k_coupling, double amp_c, double amp_r) {
        return product_dict(classical_product_equal({mass, k, k_coupling, amp_c, amp_r}));
      },
      py::arg("mass"), py::arg("k"), py::arg("k_coupling"), py::arg("amp_c") = 1.0, py::arg("amp_r") = 1.0);
  m.def(
      "equal_mass_quantum_product",
      [](double mass, double k, double k_coupling, std::int64_t n_c, std::int64_t n_r, double hbar) {
        return product_dict(quantum_product_equal({mass, k, k_coupling, 1.0, 1.0}, {n_c, n_r, hbar}));
      },
      py::arg("mass"), py::arg("k"), py::arg("k_coupling"), py::arg("n_c"), py::arg("n_r"), py::arg("hbar") = 1.0);
  m.def(
      "unequal_mass_product",
      [](double m1, double m2, double omega, double k, double amp_c, double amp_r) {
        return product_dict(classical_product_unequal({m1, m2, omega, k, amp_c, amp_r}));
      },
      py::arg("m1"), py::arg("m2"), py::arg("omega"), py::arg("k"), py::arg("amp_c") = 1.0, py::arg("amp_r") = 1.0);
  m.def(
      "unequal_mass_quantum_product",
      [](double m1, double m2, double omega, double k, std::int64_t n_c, std::int64_t n_r, double hbar) {
        return product_dict(quantum_product_unequal({m1, m2, omega, k, 1.0, 1.0}, {n_c, n_r, hbar}));
      },
      py::arg("m1"), py::arg("m2"), py::arg("omega"), py::arg("k"), py::arg("n_c"), py::arg("n_r"),
      py::arg("hbar") = 1.0);

  m.def("ho_moments", [](std::int64_t n, double mass, double omega, double hbar) {
    return moments_dict(ho_moments(n, mass, omega, hbar));
  }, py::arg("n"), py::arg("mass") = 1.0, py::arg("omega") = 1.0, py::arg("hbar") = 1.0);
  m.def("ho_moments_quadrature", [](std::int64_t n, double mass, double omega, double hbar) {
    return moments_dict(ho_moments_quadrature(n, mass, omega, hbar));
  }, py::arg("n"), py::arg("mass") = 1.0, py::arg("omega") = 1.0, py::arg("hbar") = 1.0);
  m.def(
      "density_1d",
      [](std::int64_t n, bool quantum, std::size_t count) {
        const ModeParams mode{};
        const Axis ax = default_axis_1d(n, mode, count);
        const DensityGrid g = density_1d(quantum ? DensityKind::quantum : DensityKind::classical, n, mode, ax);
        return std::make_pair(ax.nodes(), g.values);
      },
      py::arg("n"), py::arg("quantum") = true, py::arg("count") = 1025,
      "Nodes and density values in oscillator units.");
  m.def(
      "converge",
      [](const std::vector<std::int64_t>& levels, double width, std::size_t count) {
        std::vector<double> out;
        for (const auto& r : converge(levels, ModeParams{}, width, count)) out.push_back(r.l1_distance);
        return out;
      },
      py::arg("levels"), py::arg("width") = 0.0, py::arg("count") = 1025);

  m.def(
      "solve_wavenumbers",
      [](double length, double coupling, std::size_t count) {
        std::vector<std::pair<double, double>> out;
        for (const auto& r : solve_wavenumbers(length, coupling, count)) out.emplace_back(r.k, r.residual);
        return out;
      },
      py::arg("length"), py::arg("coupling"), py::arg("count"), "List of (k, residual).");
  m.def("xr2_expectation", &xr2_expectation, py::arg("k"), py::arg("length"));
  m.def(
      "box_classical_product",
      [](double m1, double m2, double length, double lambda, double e_c, double e_r) {
        return product_dict(classical_box_products({m1, m2, length, lambda, 1.0}, {e_c, e_r}));
      },
      py::arg("m1"), py::arg("m2"), py::arg("length"), py::arg("lambda_"), py::arg("e_c"), py::arg("e_r"));
  m.def(
      "box_quantum_product",
      [](double m1, double m2, double length, double lambda, std::int64_t n_c, std::int64_t root_index,
         double hbar) {
        const DeltaBoxSystem sys{m1, m2, length, lambda, hbar};
        validate(sys);
        return product_dict(quantum_box_products(sys, n_c, solve_wavenumber(length, sys.coupling(), root_index)));
      },
      py::arg("m1"), py::arg("m2"), py::arg("length"), py::arg("lambda_"), py::arg("n_c"), py::arg("root_index"),
      py::arg("hbar") = 1.0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr).");
}
