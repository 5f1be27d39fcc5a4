#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "genfrac/diffusion.hpp"
#include "genfrac/errors.hpp"
#include "genfrac/inverse_source.hpp"
#include "genfrac/kernel.hpp"
#include "genfrac/laplace_inversion.hpp"
#include "genfrac/mittag_leffler.hpp"
#include "genfrac/relaxation.hpp"

namespace py = pybind11;
using namespace genfrac;

PYBIND11_MODULE(_genfrac, m) {
  m.doc() = "Relaxation, diffusion and inverse source problems with general memory kernels";

  auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_ArithmeticError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);
  py::register_exception<DiscrepancyError>(m, "DiscrepancyError", PyExc_ArithmeticError);
  (void)validation;

  py::enum_<ContourMethod>(m, "ContourMethod")
      .value("FixedTalbot", ContourMethod::FixedTalbot)
      .value("HyperbolicContour", ContourMethod::HyperbolicContour);

  py::class_<ContourConfig>(m, "ContourConfig")
      .def(py::init<>())
      .def_readwrite("method", &ContourConfig::method)
      .def_readwrite("nodes", &ContourConfig::nodes)
      .def_readwrite("working_tolerance", &ContourConfig::working_tolerance)
      .def_readwrite("absolute_tolerance", &ContourConfig::absolute_tolerance)
      .def("validate", &ContourConfig::validate);

  py::class_<Inversion>(m, "Inversion")
      .def_readonly("value", &Inversion::value)
      .def_readonly("error", &Inversion::error)
      .def_readonly("nodes", &Inversion::nodes);

  m.def(
      "invert",
      [](const std::function<cplx(cplx)>& F, double t, const ContourConfig& cfg, double abscissa) {
        return invert(F, t, cfg, {.abscissa = abscissa});
      },
      py::arg("F"), py::arg("t"), py::arg("cfg") = ContourConfig{}, py::arg("abscissa") = 0.0,
      "Inverse Laplace transform of F at t > 0. `abscissa` is the rightmost singularity of F.");

  py::class_<KernelSpec>(m, "Kernel")
      .def_static("single_term", &KernelSpec::single_term, py::arg("alpha"))
      .def_static(
          "multi_term",
          [](const std::vector<std::pair<double, double>>& terms) {
            std::vector<KernelTerm> t;
            for (const auto& [c, a] : terms) t.push_back({c, a});
            return KernelSpec::multi_term(std::move(t));
          },
          py::arg("terms"), "terms: list of (coefficient, order)")
      .def_static("distributed_uniform", &KernelSpec::distributed_uniform)
      .def("g", [](const KernelSpec& k, cplx s) { return eval_g(k, s); })
      .def("k_hat", [](const KernelSpec& k, cplx s) { return eval_k_hat(k, s); })
      .def("__repr__", &KernelSpec::describe);

  m.def("mittag_leffler", &mittag_leffler, py::arg("alpha"), py::arg("beta"), py::arg("z"));
  m.def("ml_fundamental", &ml_fundamental, py::arg("alpha"), py::arg("lam"), py::arg("t"));
  m.def("ml_impulse", &ml_impulse, py::arg("alpha"), py::arg("lam"), py::arg("t"));

  m.def("fundamental_u", &fundamental_u, py::arg("kernel"), py::arg("lam"), py::arg("t"),
        py::arg("cfg") = ContourConfig{});
  m.def("impulse_v", &impulse_v, py::arg("kernel"), py::arg("lam"), py::arg("t"), py::arg("cfg") = ContourConfig{});
  m.def("integral_v", &integral_v, py::arg("kernel"), py::arg("lam"), py::arg("T"), py::arg("cfg") = ContourConfig{});
  m.def("geometric_grid", &geometric_grid, py::arg("lo"), py::arg("hi"), py::arg("n"));

  py::class_<RelaxationSolution>(m, "RelaxationSolution")
      .def_readonly("t", &RelaxationSolution::t_grid)
      .def_readonly("u", &RelaxationSolution::u_values)
      .def_readonly("v", &RelaxationSolution::v_values)
      .def_readonly("u_error", &RelaxationSolution::err_estimates)
      .def_readonly("v_error", &RelaxationSolution::v_err_estimates);
  m.def(
      "solve_relaxation",
      [](const KernelSpec& k, double lam, double a, std::optional<RealFunction> f, const std::vector<double>& t,
         const ContourConfig& cfg) { return solve_relaxation(k, lam, a, f ? *f : RealFunction{}, t, cfg); },
      py::arg("kernel"), py::arg("lam"), py::arg("a"), py::arg("f"), py::arg("t"), py::arg("cfg") = ContourConfig{});

  py::class_<Domain1D>(m, "Domain")
      .def(py::init([](double L, int n) {
             Domain1D d{L, n};
             d.validate();
             return d;
           }),
           py::arg("L") = 1.0, py::arg("n_modes") = 64)
      .def_readonly("L", &Domain1D::L)
      .def_readonly("n_modes", &Domain1D::n_modes)
      .def("eigenvalue", [](const Domain1D& d, int n) { return eigenvalue(d, n); });

  py::class_<SpectralField>(m, "SpectralField")
      .def(py::init([](const Domain1D& d, std::vector<double> c) {
             if (c.size() != static_cast<std::size_t>(d.n_modes))
               throw ValidationError("coefficient count does not match the domain");
             return SpectralField{d, std::move(c)};
           }),
           py::arg("domain"), py::arg("coeffs"))
      .def_readonly("domain", &SpectralField::domain)
      .def_readonly("coeffs", &SpectralField::coeffs)
      .def("l2_norm", &SpectralField::l2_norm)
      .def("h2_norm", &SpectralField::h2_norm)
      .def("__call__", &SpectralField::operator())
      .def("sample", [](const SpectralField& f, const std::vector<double>& x) { return f.sample(x); });

  m.def("project", &project, py::arg("domain"), py::arg("f"));
  m.def(
      "solve_direct",
      [](const KernelSpec& k, const Domain1D& d, const SpectralField& a,
         std::optional<std::function<double(double, double)>> F, double t, const ContourConfig& cfg) {
        return solve_direct(k, d, a, F ? project_source(d, *F) : SpectralSource{}, t, cfg);
      },
      py::arg("kernel"), py::arg("domain"), py::arg("initial"), py::arg("source"), py::arg("t"),
      py::arg("cfg") = ContourConfig{}, "source: F(x, t) or None");

  m.def("random_field", &random_field, py::arg("domain"), py::arg("modes"), py::arg("seed"));
  m.def("gaussian_noise", &gaussian_noise, py::arg("domain"), py::arg("delta"), py::arg("seed"));

  py::class_<InverseResult>(m, "InverseResult")
      .def_readonly("f", &InverseResult::f)
      .def_readonly("Q", &InverseResult::Qn_values)
      .def_readonly("cutoff", &InverseResult::cutoff)
      .def_readonly("residual", &InverseResult::residual)
      .def_readonly("stability_bound", &InverseResult::stability_bound)
      .def_property_readonly("C_lower", [](const InverseResult& r) { return r.C.lower; })
      .def_property_readonly("C_upper", [](const InverseResult& r) { return r.C.upper; });

  auto make_problem = [](const KernelSpec& k, const Domain1D& d, const std::function<double(double)>& q, double q0,
                         double T, const SpectralField& h) {
    return InverseProblem{k, d, TimeProfile::function(q), q0, T, h};
  };
  m.def(
      "forward_map",
      [=](const KernelSpec& k, const Domain1D& d, const std::function<double(double)>& q, double T,
          const SpectralField& f, const ContourConfig& cfg) {
        return forward_map(make_problem(k, d, q, 1e-300, T, SpectralField::zero(d)), f, cfg);
      },
      py::arg("kernel"), py::arg("domain"), py::arg("q"), py::arg("T"), py::arg("f"), py::arg("cfg") = ContourConfig{},
      "h = u(., T) for the source q(t) f(x) with zero initial data");
  m.def(
      "reconstruct",
      [=](const KernelSpec& k, const Domain1D& d, const std::function<double(double)>& q, double q0, double T,
          const SpectralField& h, std::optional<int> cutoff, std::optional<double> noise_level,
          const ContourConfig& cfg) {
        ReconstructOptions opt;
        opt.cutoff = cutoff;
        opt.noise_level = noise_level;
        return reconstruct(make_problem(k, d, q, q0, T, h), opt, cfg);
      },
      py::arg("kernel"), py::arg("domain"), py::arg("q"), py::arg("q0"), py::arg("T"), py::arg("h"),
      py::arg("cutoff") = py::none(), py::arg("noise_level") = py::none(), py::arg("cfg") = ContourConfig{});
}
