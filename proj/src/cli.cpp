#include "genfrac/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "genfrac/diffusion.hpp"
#include "genfrac/errors.hpp"
#include "genfrac/expression.hpp"
#include "genfrac/inverse_source.hpp"
#include "genfrac/mittag_leffler.hpp"
#include "genfrac/relaxation.hpp"

namespace genfrac::cli {

using nlohmann::json;

namespace {

namespace fs = std::filesystem;

const std::set<std::string> kContourKeys{"ilt_method", "ilt_nodes", "ilt_tol"};

// Rejects keys outside `allowed` (plus the contour and output keys when `common`).
void require_keys(const json& j, const std::string& where, std::set<std::string> allowed, bool common = true) {
  if (!j.is_object()) throw ValidationError(where + ": expected a JSON object");
  if (common) {
    allowed.insert(kContourKeys.begin(), kContourKeys.end());
    allowed.insert("output_dir");
  }
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ValidationError(where + ": unknown key \"" + key + "\"");
}

const json& need(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + ": missing required key \"" + key + "\"");
  return j.at(key);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ValidationError(what + ": expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ValidationError(what + ": expected an integer");
  return v.get<int>();
}

std::string text(const json& v, const std::string& what) {
  if (!v.is_string()) throw ValidationError(what + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const json& v, const std::string& what) {
  if (!v.is_array()) throw ValidationError(what + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, what));
  return out;
}

std::string csv(double x) { return fmt::format("{:.17g}", x); }

void require_admissible(const KernelSpec& k) {
  const auto report = validate_admissibility(k, default_probe());
  if (!report.ok()) throw ValidationError("kernel " + k.describe() + " is not admissible: " + report.failures());
}

// Time grid: explicit "t": [...] or "t_grid": {"lo", "hi", "n", "spacing": "geometric" | "uniform"}.
std::vector<double> time_grid(const json& cfg, const std::string& where) {
  if (cfg.contains("t") == cfg.contains("t_grid"))
    throw ValidationError(where + ": give exactly one of \"t\" and \"t_grid\"");
  if (cfg.contains("t")) return numbers(cfg.at("t"), where + ".t");
  const auto& g = cfg.at("t_grid");
  require_keys(g, where + ".t_grid", {"lo", "hi", "n", "spacing"}, false);
  const double lo = number(need(g, "lo", where + ".t_grid"), "t_grid.lo");
  const double hi = number(need(g, "hi", where + ".t_grid"), "t_grid.hi");
  const int n = integer(need(g, "n", where + ".t_grid"), "t_grid.n");
  const std::string spacing = g.contains("spacing") ? text(g.at("spacing"), "t_grid.spacing") : "geometric";
  if (spacing == "geometric") return geometric_grid(lo, hi, n);
  if (spacing != "uniform") throw ValidationError("t_grid.spacing must be \"geometric\" or \"uniform\"");
  if (!(hi > lo) || n < 2) throw ValidationError("t_grid: need hi > lo and n >= 2");
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = lo + (hi - lo) * i / (n - 1);
  return t;
}

Domain1D domain_from(const json& cfg, const std::string& where) {
  Domain1D d;
  if (cfg.contains("L")) d.L = number(cfg.at("L"), where + ".L");
  if (cfg.contains("N")) d.n_modes = integer(cfg.at("N"), where + ".N");
  try {
    d.validate();
  } catch (const DomainError& e) {
    throw ValidationError(where + ": " + e.what());
  }
  return d;
}

std::vector<double> uniform_x(const Domain1D& d, int nx) {
  if (nx < 2) throw ValidationError("nx must be at least 2");
  std::vector<double> x(nx);
  for (int i = 0; i < nx; ++i) x[i] = d.L * i / (nx - 1);
  return x;
}

// Field given as an expression in x or as a coefficient list.
SpectralField field_from(const json& v, const Domain1D& d, const std::string& what) {
  if (v.is_string()) {
    const auto e = Expression::parse(v.get<std::string>(), {"x"});
    return project(d, [&](double x) { return e({x}); });
  }
  auto c = numbers(v, what);
  if (c.size() > static_cast<std::size_t>(d.n_modes))
    throw ValidationError(what + ": more coefficients than modes");
  c.resize(d.n_modes, 0.0);
  return {d, c};
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::optional<std::string> out_flag;

  fs::path output_dir(const json& cfg) const {
    fs::path dir = ".";
    if (cfg.contains("output_dir")) dir = text(cfg.at("output_dir"), "output_dir");
    if (const char* env = std::getenv("GENFRAC_OUT"); env && *env) dir = env;
    if (out_flag) dir = *out_flag;
    fs::create_directories(dir);
    return dir;
  }
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config " + path + " is not valid JSON: " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + path.string());
  f << content;
}

// ---- subcommands ----

void cmd_relax(const json& cfg, const Context& ctx) {
  require_keys(cfg, "relax", {"kernel", "lambda", "a", "f", "t", "t_grid", "output"});
  const auto kernel = kernel_from_json(need(cfg, "kernel", "relax"));
  const auto icfg = contour_from_json(cfg);
  const double lambda = number(need(cfg, "lambda", "relax"), "relax.lambda");
  if (!(lambda > 0.0)) throw ValidationError("relax.lambda must be positive");
  const double a = cfg.contains("a") ? number(cfg.at("a"), "relax.a") : 1.0;
  const auto t = time_grid(cfg, "relax");
  const std::string name = cfg.contains("output") ? text(cfg.at("output"), "relax.output") : "relax.csv";
  require_admissible(kernel);

  RealFunction f;
  std::optional<Expression> fe;
  if (cfg.contains("f")) {
    fe = Expression::parse(text(cfg.at("f"), "relax.f"), {"t"});
    f = [&](double s) { return (*fe)({s}); };
  }
  const auto sol = solve_relaxation(kernel, lambda, a, f, t, icfg);
  std::string body = "t,u,v,err_u,err_v\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    body += fmt::format("{},{},{},{},{}\n", csv(t[i]), csv(sol.u_values[i]), csv(sol.v_values[i]),
                        csv(sol.err_estimates[i]), csv(sol.v_err_estimates[i]));
  const auto path = ctx.output_dir(cfg) / name;
  write_file(path, body);
  ctx.out << "wrote " << path.string() << " (" << t.size() << " rows)\n";
}

void cmd_verify(const json& cfg, const Context& ctx) {
  require_keys(cfg, "verify", {"kernel", "lambda", "lambda1", "T", "t", "t_grid", "output"});
  const auto kernel = kernel_from_json(need(cfg, "kernel", "verify"));
  const auto icfg = contour_from_json(cfg);
  const double lambda = number(need(cfg, "lambda", "verify"), "verify.lambda");
  const double lambda1 = number(need(cfg, "lambda1", "verify"), "verify.lambda1");
  const double T = number(need(cfg, "T", "verify"), "verify.T");
  std::vector<double> t;
  if (cfg.contains("t") || cfg.contains("t_grid"))
    t = time_grid(cfg, "verify");
  else
    t = geometric_grid(1e-3 * T, T, 32);
  const std::string name = cfg.contains("output") ? text(cfg.at("output"), "verify.output") : "verify.json";
  require_admissible(kernel);

  TheoremReport r;
  try {
    r = check_theorem_properties(kernel, lambda, lambda1, T, t, icfg);
  } catch (const DomainError& e) {
    throw ValidationError(std::string("verify: ") + e.what());
  }
  json j{{"kernel", kernel_to_json(kernel)},
         {"lambda", lambda},
         {"lambda1", lambda1},
         {"T", T},
         {"completely_monotone", r.completely_monotone},
         {"u_in_unit_interval", r.u_in_unit_interval},
         {"v_positive", r.v_positive},
         {"derivative_identity", r.derivative_identity},
         {"lambda_monotone", r.lambda_monotone},
         {"max_derivative_residual", r.max_derivative_residual},
         {"bounds",
          {{"integral_value", r.bounds.integral_value},
           {"lower_C", r.bounds.lower_C},
           {"pass_lower", r.bounds.pass_lower},
           {"pass_upper", r.bounds.pass_upper}}},
         {"all_pass", r.all_pass()},
         {"violations", r.violations}};
  const auto path = ctx.output_dir(cfg) / name;
  write_file(path, j.dump(2) + "\n");
  ctx.out << j.dump(2) << "\n";
}

void cmd_diffuse(const json& cfg, const Context& ctx) {
  require_keys(cfg, "diffuse", {"kernel", "L", "N", "T", "times", "snapshots", "initial", "source", "nx", "output"});
  const auto kernel = kernel_from_json(need(cfg, "kernel", "diffuse"));
  const auto icfg = contour_from_json(cfg);
  const auto d = domain_from(cfg, "diffuse");
  const double T = number(need(cfg, "T", "diffuse"), "diffuse.T");
  if (!(T > 0.0)) throw ValidationError("diffuse.T must be positive");
  if (cfg.contains("times") && cfg.contains("snapshots"))
    throw ValidationError("diffuse: give at most one of \"times\" and \"snapshots\"");
  std::vector<double> times;
  if (cfg.contains("times")) {
    times = numbers(cfg.at("times"), "diffuse.times");
  } else {
    const int k = cfg.contains("snapshots") ? integer(cfg.at("snapshots"), "diffuse.snapshots") : 4;
    if (k < 1) throw ValidationError("diffuse.snapshots must be positive");
    for (int i = 0; i <= k; ++i) times.push_back(T * i / k);
  }
  for (double t : times)
    if (!(t >= 0.0 && t <= T)) throw ValidationError("diffuse.times must lie in [0, T]");
  const int nx = cfg.contains("nx") ? integer(cfg.at("nx"), "diffuse.nx") : 101;
  const auto x = uniform_x(d, nx);
  const std::string name = cfg.contains("output") ? text(cfg.at("output"), "diffuse.output") : "diffuse.csv";
  const auto a = cfg.contains("initial") ? field_from(cfg.at("initial"), d, "diffuse.initial") : SpectralField::zero(d);
  SpectralSource F;
  if (cfg.contains("source")) {
    auto e = Expression::parse(text(cfg.at("source"), "diffuse.source"), {"x", "t"});
    F = project_source(d, [e](double xx, double t) { return e({xx, t}); });
  }
  require_admissible(kernel);

  std::string body = "t,x,u\n";
  for (double t : times) {
    const auto u = solve_direct(kernel, d, a, F, t, icfg);
    const auto values = u.sample(x);
    for (int i = 0; i < nx; ++i) body += fmt::format("{},{},{}\n", csv(t), csv(x[i]), csv(values[i]));
    ctx.out << fmt::format("t={:.6g}  ||u||={:.6e}  tail={:.3e}\n", t, u.l2_norm(), u.tail_norm());
  }
  const auto path = ctx.output_dir(cfg) / name;
  write_file(path, body);
  ctx.out << "wrote " << path.string() << "\n";
}

void cmd_invert(const json& cfg, const Context& ctx) {
  require_keys(cfg, "invert", {"kernel", "L", "N", "T", "q", "q0", "h", "truth", "noise_level", "seed", "cutoff", "E",
                               "nx", "output_prefix"});
  const auto kernel = kernel_from_json(need(cfg, "kernel", "invert"));
  const auto icfg = contour_from_json(cfg);
  const auto d = domain_from(cfg, "invert");
  const double T = number(need(cfg, "T", "invert"), "invert.T");
  if (!(T > 0.0)) throw ValidationError("invert.T must be positive");
  const auto& seed_json = need(cfg, "seed", "invert");
  if (!seed_json.is_number_unsigned()) throw ValidationError("invert.seed: expected a nonnegative integer");
  const auto seed = seed_json.get<std::uint64_t>();
  if (cfg.contains("h") == cfg.contains("truth")) throw ValidationError("invert: give exactly one of \"h\" and \"truth\"");
  const double delta = cfg.contains("noise_level") ? number(cfg.at("noise_level"), "invert.noise_level") : 0.0;
  if (!(delta >= 0.0)) throw ValidationError("invert.noise_level must be nonnegative");
  const int nx = cfg.contains("nx") ? integer(cfg.at("nx"), "invert.nx") : 101;
  const std::string prefix =
      cfg.contains("output_prefix") ? text(cfg.at("output_prefix"), "invert.output_prefix") : "invert";

  const auto& qj = need(cfg, "q", "invert");
  TimeProfile q = TimeProfile::constant(1.0);
  if (qj.is_number()) {
    q = TimeProfile::constant(qj.get<double>());
  } else {
    const auto e = Expression::parse(text(qj, "invert.q"), {"t"});
    q = TimeProfile::function([e](double t) { return e({t}); }, e.text());
  }
  const double q0 = cfg.contains("q0") ? number(cfg.at("q0"), "invert.q0") : q.sampled_min(T);

  ReconstructOptions opt;
  if (cfg.contains("cutoff")) opt.cutoff = integer(cfg.at("cutoff"), "invert.cutoff");
  if (cfg.contains("E")) opt.E = number(cfg.at("E"), "invert.E");
  if (delta > 0.0) opt.noise_level = delta;
  require_admissible(kernel);

  InverseProblem p{kernel, d, q, q0, T, SpectralField::zero(d)};
  std::optional<SpectralField> truth;
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ValidationError(std::string("invert: ") + e.what());
  }
  if (cfg.contains("truth")) {
    truth = field_from(cfg.at("truth"), d, "invert.truth");
    p.h = forward_map(p, *truth, icfg);
    const auto noise = gaussian_noise(d, delta, seed);
    for (int n = 0; n < d.n_modes; ++n) p.h.coeffs[n] += noise.coeffs[n];
  } else {
    p.h = field_from(cfg.at("h"), d, "invert.h");
  }

  const auto r = reconstruct(p, opt, icfg);
  json j{{"kernel", kernel_to_json(kernel)},
         {"L", d.L},
         {"N", d.n_modes},
         {"T", T},
         {"q", q.label()},
         {"q0", q0},
         {"seed", seed},
         {"noise_level", delta},
         {"f", r.f.coeffs},
         {"Qn_values", r.Qn_values},
         {"cutoff", r.cutoff},
         {"residual", r.residual},
         {"stability_bound", r.stability_bound},
         {"C_lower", r.C.lower},
         {"C_upper", r.C.upper},
         {"h", p.h.coeffs}};
  if (truth) {
    SpectralField diff = r.f;
    for (int n = 0; n < d.n_modes; ++n) diff.coeffs[n] -= truth->coeffs[n];
    j["error_l2"] = diff.l2_norm();
    j["truth_l2"] = truth->l2_norm();
  }
  const auto dir = ctx.output_dir(cfg);
  write_file(dir / (prefix + ".json"), j.dump(2) + "\n");

  const auto x = uniform_x(d, nx);
  const auto fx = r.f.sample(x);
  std::string body = truth ? "x,f,f_true\n" : "x,f\n";
  std::vector<double> tx;
  if (truth) tx = truth->sample(x);
  for (int i = 0; i < nx; ++i)
    body += truth ? fmt::format("{},{},{}\n", csv(x[i]), csv(fx[i]), csv(tx[i]))
                  : fmt::format("{},{}\n", csv(x[i]), csv(fx[i]));
  write_file(dir / (prefix + "_f.csv"), body);
  ctx.out << fmt::format("cutoff={} residual={:.6e} stability_bound={:.6e}\n", r.cutoff, r.residual,
                         r.stability_bound);
  ctx.out << "wrote " << (dir / (prefix + ".json")).string() << " and " << (dir / (prefix + "_f.csv")).string()
          << "\n";
}

void cmd_bench(int repeat, const Context& ctx) {
  if (repeat < 1) throw ValidationError("bench: --repeat must be positive");
  using clock = std::chrono::steady_clock;
  auto time = [&](const std::string& label, auto&& fn) {
    double sink = fn();  // warm-up, fills parameter caches
    const auto start = clock::now();
    for (int i = 0; i < repeat; ++i) sink += fn();
    const double us = std::chrono::duration<double, std::micro>(clock::now() - start).count() / repeat;
    ctx.out << fmt::format("{:<40} {:>12.1f} us   ({:.6g})\n", label, us, sink / (repeat + 1));
  };
  const auto single = KernelSpec::single_term(0.5);
  const auto multi = KernelSpec::multi_term({{1.0, 0.8}, {0.5, 0.3}});
  const auto dist = KernelSpec::distributed_uniform();
  time("ml E_{0.5}(-10)", [] { return mittag_leffler(0.5, 1.0, -10.0); });
  time("ml E_{0.8,0.8}(-30)", [] { return mittag_leffler(0.8, 0.8, -30.0); });
  for (const auto& [name, k] : {std::pair{"single 0.5", &single}, std::pair{"multi", &multi},
                                std::pair{"distributed", &dist}}) {
    time(fmt::format("u(t=1, lambda=10) {}", name), [&] { return fundamental_u(*k, 10.0, 1.0); });
    time(fmt::format("v(t=1, lambda=10) {}", name), [&] { return impulse_v(*k, 10.0, 1.0); });
  }
  time("(v * 1)(1), lambda=10, single 0.5", [&] {
    return convolve_impulse(single, 10.0, [](double) { return 1.0; }, 1.0).value;
  });
}

}  // namespace

KernelSpec kernel_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("kernel: expected a JSON object");
  const std::string type = text(need(j, "type", "kernel"), "kernel.type");
  if (type == "single") {
    require_keys(j, "kernel", {"type", "alpha"}, false);
    return KernelSpec::single_term(number(need(j, "alpha", "kernel"), "kernel.alpha"));
  }
  if (type == "multi") {
    require_keys(j, "kernel", {"type", "terms"}, false);
    const auto& t = need(j, "terms", "kernel");
    if (!t.is_array()) throw ValidationError("kernel.terms: expected [[c, alpha], ...]");
    std::vector<KernelTerm> terms;
    for (const auto& pair : t) {
      if (!pair.is_array() || pair.size() != 2) throw ValidationError("kernel.terms: each term is [c, alpha]");
      terms.push_back({number(pair[0], "kernel.terms"), number(pair[1], "kernel.terms")});
    }
    return KernelSpec::multi_term(std::move(terms));
  }
  if (type == "distributed-uniform") {
    require_keys(j, "kernel", {"type"}, false);
    return KernelSpec::distributed_uniform();
  }
  if (type == "custom") {
    require_keys(j, "kernel", {"type", "g"}, false);
    const auto e = Expression::parse(text(need(j, "g", "kernel"), "kernel.g"), {"s"});
    return KernelSpec::custom([e](cplx s) { return e(std::span<const cplx>(&s, 1)); }, e.text());
  }
  throw ValidationError("kernel.type must be one of single, multi, distributed-uniform, custom; got \"" + type + "\"");
}

json kernel_to_json(const KernelSpec& k) {
  switch (k.type()) {
    case KernelType::SingleTerm: return {{"type", "single"}, {"alpha", k.alpha()}};
    case KernelType::MultiTerm: {
      json terms = json::array();
      for (const auto& t : k.terms()) terms.push_back({t.weight, t.order});
      return {{"type", "multi"}, {"terms", terms}};
    }
    case KernelType::DistributedUniform: return {{"type", "distributed-uniform"}};
    case KernelType::Custom: return {{"type", "custom"}, {"g", k.label()}};
  }
  return {};
}

ContourConfig contour_from_json(const json& j) {
  ContourConfig c;
  if (j.contains("ilt_method")) c.method = contour_method_from_string(text(j.at("ilt_method"), "ilt_method"));
  if (j.contains("ilt_nodes")) c.nodes = integer(j.at("ilt_nodes"), "ilt_nodes");
  if (j.contains("ilt_tol")) c.working_tolerance = number(j.at("ilt_tol"), "ilt_tol");
  c.validate();
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"genfrac: general fractional relaxation and diffusion toolkit", "genfrac"};
  app.require_subcommand(1);
  std::optional<std::string> out_flag;
  app.add_option("--out", out_flag, "Output directory (overrides GENFRAC_OUT and output_dir)");

  double alpha = 0.5, beta = 1.0, z = 0.0;
  auto* ml_cmd = app.add_subcommand("ml", "Evaluate the Mittag-Leffler function E_{alpha,beta}(z)");
  ml_cmd->add_option("--alpha", alpha, "Order alpha in (0, 2]")->required();
  ml_cmd->add_option("--beta", beta, "Second parameter beta > 0")->capture_default_str();
  ml_cmd->add_option("--z", z, "Real argument")->required();

  std::string config;
  std::vector<CLI::App*> configured;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"relax", "Solve the scalar relaxation problem on a time grid (CSV t,u,v,err_u,err_v)"},
           {"verify", "Check the structural properties of u and v (JSON report)"},
           {"diffuse", "Solve the diffusion problem on (0, L) and write snapshots (CSV t,x,u)"},
           {"invert", "Recover f in F = f(x) q(t) from the final observation (JSON + CSV)"}}) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "JSON configuration file")->required();
    configured.push_back(sub);
  }
  int repeat = 20;
  auto* bench = app.add_subcommand("bench", "Time the core evaluations");
  bench->add_option("--repeat", repeat, "Repetitions per measurement")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  const Context ctx{out, err, out_flag};
  try {
    if (ml_cmd->parsed()) {
      out << fmt::format("{:.17g}\n", mittag_leffler(alpha, beta, z));
    } else if (bench->parsed()) {
      cmd_bench(repeat, ctx);
    } else {
      const json cfg = load_config(config);
      if (configured[0]->parsed()) cmd_relax(cfg, ctx);
      if (configured[1]->parsed()) cmd_verify(cfg, ctx);
      if (configured[2]->parsed()) cmd_diffuse(cfg, ctx);
      if (configured[3]->parsed()) cmd_invert(cfg, ctx);
    }
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const json::exception& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const QuadratureError& e) {
    err << "quadrature error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ConsistencyError& e) {
    err << "consistency error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DiscrepancyError& e) {
    err << "discrepancy error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    err << "file error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace genfrac::cli
