#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bdeform/kernels.hpp"
#include "bdeform/pointwise.hpp"
#include "bdeform/quadrature.hpp"
#include "bdeform/script_i.hpp"
#include "bdeform/spectral.hpp"
#include "bdeform/suites.hpp"

namespace bdeform::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  double b = 0.5;
  int N = 2;
  int L = 24;
  int M = 6;
  std::optional<double> tol;
  std::string route = "auto";
  unsigned seed = 42;
  std::string in, out;
};

suites::SuiteConfig suite_config(const Common& c) {
  suites::SuiteConfig s;
  s.b = c.b;
  s.N = c.N;
  s.L = c.L;
  s.M = c.M;
  if (c.tol) {
    if (!(*c.tol > 0)) throw DomainError("tol must be positive");
    s.tol = *c.tol;
  }
  try {
    s.route = scripti::parse_route(c.route);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  s.seed = c.seed;
  s.validate();
  return s;
}

// routes output to --out when given
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open " + path);
      os_ = file_.get();
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

std::vector<double> split_doubles(const std::string& s, char sep) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size() && tok.find_first_not_of(" \t\r", used) != std::string::npos)
        throw UsageError("bad number: " + tok);
    } catch (const std::invalid_argument&) {
      throw UsageError("bad number: " + tok);
    }
  }
  return v;
}

// re or re:im
cplx parse_complex(const std::string& s) {
  auto v = split_doubles(s, ':');
  if (v.empty() || v.size() > 2) throw UsageError("bad complex value: " + s);
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

// lo:hi:n along every coordinate
std::vector<std::vector<double>> grid_points(const std::string& spec, int N) {
  auto v = split_doubles(spec, ':');
  if (v.size() != 3 || v[2] < 0 || v[2] != std::floor(v[2])) throw UsageError("grid must be lo:hi:n");
  const int n = static_cast<int>(v[2]);
  std::vector<double> axis(n);
  for (int i = 0; i < n; ++i) axis[i] = n == 1 ? v[0] : v[0] + (v[1] - v[0]) * i / (n - 1);
  std::vector<std::vector<double>> pts;
  if (n == 0) return pts;
  std::vector<int> idx(N, 0);
  while (true) {
    std::vector<double> p(N);
    for (int k = 0; k < N; ++k) p[k] = axis[idx[k]];
    pts.push_back(p);
    int k = N - 1;
    while (k >= 0 && ++idx[k] == n) idx[k--] = 0;
    if (k < 0) break;
  }
  return pts;
}

// header row, then numeric rows
std::vector<std::vector<double>> read_csv(const std::string& path, std::size_t width) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open " + path);
  std::string line;
  std::getline(f, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(f, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto r = split_doubles(line, ',');
    if (r.size() != width) throw UsageError(path + ": expected " + std::to_string(width) + " columns");
    rows.push_back(r);
  }
  return rows;
}

void write_points_header(std::ostream& os, int N) {
  for (int i = 1; i <= N; ++i) os << 'x' << i << ',';
}

// ---- input functions ----

struct Input {
  spectral::PointFunction f;
  std::optional<spectral::SpectralVector> spectral;  // set for samples and phi builtins
};

spectral::Layout fit_layout(const Common& c) { return spectral::Layout(c.N, {c.L, c.N == 1 ? 1 : c.M}); }

quadrature::QuadratureRule projection_rule(const DeformationParams& p, const Common& c) {
  const int sphere = c.N == 1 ? 1 : std::max(16, 2 * c.M + 8);
  return quadrature::weighted_ball_rule(p, std::max(30, c.L + 20), sphere, quadrature::RadialMap::gaussian(1.0));
}

// builtins: gaussian, phi:l,m,j
Input builtin_input(const DeformationParams& p, const std::string& name, const Common& c) {
  Input in;
  if (name == "gaussian") {
    in.f = [](std::span<const double> x) {
      double r2 = 0;
      for (double v : x) r2 += v * v;
      return cplx(std::exp(-0.5 * r2));
    };
    return in;
  }
  if (name.rfind("phi:", 0) == 0) {
    auto v = split_doubles(name.substr(4), ',');
    if (v.size() != 3) throw UsageError("phi builtin is phi:l,m,j");
    spectral::BasisIndex k{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])};
    auto lay = fit_layout(c);
    if (!lay.contains(k)) throw UsageError("phi index outside the truncation");
    in.spectral = spectral::SpectralVector::unit(p, lay, k);
    in.f = [p, k](std::span<const double> x) { return cplx(spectral::phi_eval(p, k, x)); };
    return in;
  }
  throw UsageError("unknown builtin: " + name);
}

// least squares in the truncated basis; the basis carries e^{-|x|^2/2}, so
// data without that decay leaves a large residual
Input samples_input(const DeformationParams& p, const std::string& path, const Common& c) {
  auto rows = read_csv(path, c.N + 2);
  auto lay = fit_layout(c);
  if (rows.size() < static_cast<std::size_t>(lay.size()))
    throw UsageError("need at least " + std::to_string(lay.size()) + " samples for this truncation");
  Eigen::MatrixXd A(rows.size(), lay.size());
  Eigen::VectorXcd y(rows.size());
  std::vector<double> phi;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    spectral::phi_all(p, lay, std::span(rows[i].data(), c.N), phi);
    for (int k = 0; k < lay.size(); ++k) A(i, k) = phi[k];
    y[i] = cplx(rows[i][c.N], rows[i][c.N + 1]);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  spectral::SpectralVector v(p, lay);
  v.coeffs = svd.solve(y.real()).cast<cplx>() + cplx(0, 1) * svd.solve(y.imag()).cast<cplx>();
  const double resid = (A.cast<cplx>() * v.coeffs - y).norm() / std::max(y.norm(), 1e-300);
  if (resid > 1e-4)
    throw DomainError("insufficient decay: samples are not resolved by the truncated basis (residual " +
                      std::to_string(resid) + ")");
  Input in;
  in.spectral = v;
  in.f = [v](std::span<const double> x) { return spectral::evaluate(v, x); };
  return in;
}

Input read_input(const DeformationParams& p, const std::string& builtin, const Common& c) {
  if (!c.in.empty()) return samples_input(p, c.in, c);
  return builtin_input(p, builtin, c);
}

std::vector<std::vector<double>> targets(const std::string& points, const std::string& grid, int N) {
  if (points.empty()) return grid_points(grid, N);
  std::vector<std::vector<double>> out;
  for (auto& r : read_csv(points, N)) out.push_back(r);
  return out;
}

// ---- commands ----

int cmd_verify(const Common& c, std::vector<std::string> names, std::ostream& out, std::ostream& err) {
  auto cfg = suite_config(c);
  for (const auto& n : names)
    if (!suites::suite_exists(n)) throw UsageError("unknown suite: " + n);
  auto results = suites::run_suites(names, cfg);
  nlohmann::ordered_json report = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& r : results) {
    report.push_back({{"suite", r.suite},
                      {"paper_anchor", r.paper_anchor},
                      {"max_err", r.max_err},
                      {"tol", r.tol},
                      {"pass", r.pass}});
    all = all && r.pass;
    if (!r.pass) err << "FAIL " << r.suite << ": " << r.max_err << " > " << r.tol << '\n';
  }
  Sink s(c.out, out);
  *s << report.dump(2) << '\n';
  return all ? 0 : 1;
}

int cmd_kernel(const Common& c, const std::string& which, const std::string& t_str, const std::string& grid,
               std::ostream& out) {
  suite_config(c);
  DeformationParams p(c.b, c.N);
  const cplx t = parse_complex(t_str);
  auto pts = grid_points(grid, c.N);
  std::vector<kernels::KernelRow> rows;
  for (const auto& x : pts)
    for (const auto& y : pts) {
      auto kp = kernels::KernelPoint::make(x, y);
      cplx v;
      if (which == "B") v = kernels::B_kernel(p, kp);
      else if (which == "lambda") v = kernels::lambda_kernel(p, kp, t);
      else if (which == "heat") v = kernels::heat_kernel(p, kp, t);
      else throw UsageError("kernel must be B, lambda or heat");
      rows.push_back({x, y, which == "B" ? cplx(0) : t, v});
    }
  Sink s(c.out, out);
  kernels::write_kernel_csv(rows, c.N, *s);
  return 0;
}

std::vector<cplx> fourier_by_spectral(spectral::SpectralVector v, int power, bool inverse,
                                      const std::vector<std::vector<double>>& xs) {
  const int k = ((inverse ? -power : power) % 4 + 4) % 4;
  for (int i = 0; i < k; ++i) v = spectral::fourier_spectral(v);
  std::vector<cplx> out;
  for (const auto& x : xs) out.push_back(spectral::evaluate(v, x));
  return out;
}

std::vector<cplx> fourier_by_quadrature(const DeformationParams& p, const spectral::PointFunction& f, int power,
                                        bool inverse, const std::vector<std::vector<double>>& xs) {
  const auto kind = inverse ? kernels::Transform::FourierInverse : kernels::Transform::Fourier;
  // repeated application needs the intermediate resolved out to r_max, which
  // grows with the sphere order and costs O(nodes^2)
  struct Setup {
    int radial, sphere;
    double r_max;
  };
  Setup st = power <= 1 ? Setup{48, p.N() <= 3 ? 40 : 28, 0.0}
             : p.N() == 1 ? Setup{64, 1, 9.0}
             : p.N() == 2 ? Setup{40, 48, 7.0}
                          : Setup{32, 24, 5.0};
  auto rule = kernels::transform_rule(p, st.radial, st.sphere);
  auto vals = kernels::sample(f, rule);
  if (power == 0) {
    std::vector<cplx> out;
    for (const auto& x : xs) out.push_back(f(x));
    return out;
  }
  for (int i = 1; i < power; ++i) vals = kernels::transform_on_nodes(p, kind, 0.0, vals, rule, st.r_max);
  return kernels::transform_values(p, kind, 0.0, vals, rule, xs);
}

int cmd_transform(const Common& c, const std::string& builtin, const std::string& method, int power, bool inverse,
                  const std::string& points, const std::string& grid, std::ostream& out, std::ostream& err) {
  suite_config(c);
  if (power < 0) throw UsageError("power must be non-negative");
  if (method != "spectral" && method != "quadrature" && method != "both")
    throw UsageError("method must be spectral, quadrature or both");
  DeformationParams p(c.b, c.N);
  auto in = read_input(p, builtin, c);
  auto xs = targets(points, grid, c.N);
  auto spectral_vec = [&]() {
    if (in.spectral) return *in.spectral;
    return spectral::project_function(p, in.f, fit_layout(c), projection_rule(p, c));
  };
  std::vector<cplx> a, q;
  if (method != "quadrature") a = fourier_by_spectral(spectral_vec(), power, inverse, xs);
  if (method != "spectral") q = fourier_by_quadrature(p, in.f, power, inverse, xs);
  Sink s(c.out, out);
  auto& os = *s;
  os.precision(17);
  write_points_header(os, c.N);
  if (method == "both") os << "spectral_re,spectral_im,quadrature_re,quadrature_im\n";
  else os << "re,im\n";
  double disc = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (double v : xs[i]) os << v << ',';
    if (method == "both") {
      os << a[i].real() << ',' << a[i].imag() << ',' << q[i].real() << ',' << q[i].imag() << '\n';
      disc = std::max(disc, std::abs(a[i] - q[i]));
    } else {
      const cplx v = method == "spectral" ? a[i] : q[i];
      os << v.real() << ',' << v.imag() << '\n';
    }
  }
  if (method == "both") err << "max discrepancy " << disc << '\n';
  return 0;
}

double bump(double s) { return std::abs(s) < 1 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; }

struct EvolveArgs {
  std::string kind = "wave1d";
  std::string builtin = "gaussian";
  std::string u0 = "annulus";
  std::vector<std::string> times{"0.5"};
  std::string points, grid = "-2:2:9";
  double X = 4.0, dx = 0.005, dt = 0.0025, T = 1.0;
  int frame_every = 0;
  std::vector<std::string> annuli;
  std::string energy;
};

int cmd_evolve(const Common& c, const EvolveArgs& a, std::ostream& out) {
  suite_config(c);
  if (a.kind == "wave1d") {
    if (c.N != 1) throw DomainError("wave1d needs N = 1");
    pointwise::WaveOptions opt;
    opt.X = a.X;
    opt.dx = a.dx;
    opt.dt = a.dt;
    opt.T = a.T;
    opt.frame_every = a.frame_every;
    for (const auto& s : a.annuli) {
      auto v = split_doubles(s, ':');
      if (v.size() != 2) throw UsageError("annulus must be lo:hi");
      opt.annuli.push_back({v[0], v[1]});
    }
    if (!(opt.dx > 0) || !(opt.X > 0) || !(opt.T >= 0)) throw DomainError("need dx > 0, X > 0, T >= 0");
    auto x = pointwise::wave_grid(opt.X, opt.dx);
    std::vector<double> u0(x.size()), v0(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (a.u0 == "annulus") u0[i] = bump(2.0 * (std::abs(x[i]) - 1.5));
      else if (a.u0 == "gaussian") u0[i] = std::exp(-8.0 * x[i] * x[i]);
      else throw UsageError("u0 must be annulus or gaussian");
    }
    auto res = pointwise::wave_evolve_1d(c.b, u0, v0, opt);
    {
      Sink s(c.out, out);
      pointwise::write_wave_csv(res, *s);
    }
    if (!a.energy.empty()) {
      std::ofstream e(a.energy);
      if (!e) throw UsageError("cannot open " + a.energy);
      pointwise::write_energy_csv(res, e);
    }
    return 0;
  }
  if (a.kind != "heat" && a.kind != "hermite") throw UsageError("kind must be wave1d, heat or hermite");
  DeformationParams p(c.b, c.N);
  auto in = read_input(p, a.builtin, c);
  auto xs = targets(a.points, a.grid, c.N);
  std::vector<cplx> steps;
  for (const auto& s : a.times) {
    steps.push_back(parse_complex(s));
    if (steps.back().real() < 0) throw DomainError("semigroup needs Re t >= 0");
    if (a.kind == "heat" && steps.back() == cplx(0)) throw DomainError("heat step must be nonzero");
  }
  Sink sink(c.out, out);
  auto& os = *sink;
  os.precision(17);
  os << "t_re,t_im,";
  write_points_header(os, c.N);
  os << "re,im\n";
  auto emit = [&](cplx t, const std::vector<cplx>& vals) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      os << t.real() << ',' << t.imag() << ',';
      for (double v : xs[i]) os << v << ',';
      os << vals[i].real() << ',' << vals[i].imag() << '\n';
    }
  };
  std::vector<cplx> f0;
  for (const auto& x : xs) f0.push_back(in.f(x));
  emit(0.0, f0);
  cplx t = 0;
  if (a.kind == "hermite") {
    auto v = in.spectral ? *in.spectral : spectral::project_function(p, in.f, fit_layout(c), projection_rule(p, c));
    for (cplx s : steps) {
      v = spectral::semigroup_spectral(v, s);
      t += s;
      std::vector<cplx> vals;
      for (const auto& x : xs) vals.push_back(spectral::evaluate(v, x));
      emit(t, vals);
    }
    return 0;
  }
  auto rule = c.N == 1 ? kernels::transform_rule(p, 64, 1) : kernels::transform_rule(p, 36, c.N == 2 ? 30 : 18);
  auto vals = kernels::sample(in.f, rule);
  for (std::size_t k = 0; k < steps.size(); ++k) {
    t += steps[k];
    emit(t, kernels::transform_values(p, kernels::Transform::Heat, steps[k], vals, rule, xs));
    if (k + 1 < steps.size())
      vals = kernels::transform_on_nodes(p, kernels::Transform::Heat, steps[k], vals, rule, 9.0);
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"b-deformed Fourier analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file; flags override it");

  Common c;
  app.add_option("--b", c.b, "deformation parameter, b > -N/2");
  app.add_option("--N", c.N, "dimension, 1..4");
  app.add_option("--L", c.L, "radial truncation");
  app.add_option("--M", c.M, "harmonic degree truncation");
  app.add_option("--tol", c.tol, "override every suite tolerance");
  app.add_option("--route", c.route, "series, beta, continuation, double-series or auto");
  app.add_option("--seed", c.seed, "seed for randomized suites");
  app.add_option("--in", c.in, "input samples CSV: x1..xN,re,im");
  app.add_option("--out", c.out, "output path, default stdout");

  auto* verify = app.add_subcommand("verify", "run verification suites, JSON report");
  std::vector<std::string> names;
  verify->add_option("suites", names, "suite names, default all applicable");
  bool list = false;
  verify->add_flag("--list", list, "print suite names and exit");

  auto* kernel = app.add_subcommand("kernel", "tabulate a kernel on a grid of (x, y) pairs");
  std::string which = "B", t_str = "1", kgrid = "-2:2:5";
  kernel->add_option("--which", which, "B, lambda or heat");
  kernel->add_option("--t", t_str, "time, re or re:im");
  kernel->add_option("--grid", kgrid, "lo:hi:n along each coordinate of x and y");

  auto* transform = app.add_subcommand("transform", "Fourier transform of samples or a builtin");
  std::string tf = "gaussian", method = "both", tpoints, tgrid = "-2:2:9";
  int power = 1;
  bool inverse = false;
  transform->add_option("--f", tf, "builtin: gaussian or phi:l,m,j (ignored with --in)");
  transform->add_option("--method", method, "spectral, quadrature or both");
  transform->add_option("--power", power, "number of applications");
  transform->add_flag("--inverse", inverse, "inverse transform");
  transform->add_option("--points", tpoints, "target points CSV: x1..xN");
  transform->add_option("--grid", tgrid, "lo:hi:n along each coordinate");

  auto* evolve = app.add_subcommand("evolve", "wave1d, heat or hermite evolution");
  EvolveArgs ea;
  evolve->add_option("--kind", ea.kind, "wave1d, heat or hermite");
  evolve->add_option("--f", ea.builtin, "builtin for heat/hermite: gaussian or phi:l,m,j");
  evolve->add_option("--u0", ea.u0, "wave1d initial data: annulus or gaussian");
  evolve->add_option("--times", ea.times, "heat/hermite steps, re or re:im, applied in turn")->delimiter(',');
  evolve->add_option("--points", ea.points, "target points CSV: x1..xN");
  evolve->add_option("--grid", ea.grid, "lo:hi:n along each coordinate");
  evolve->add_option("--X", ea.X, "wave1d half width");
  evolve->add_option("--dx", ea.dx, "wave1d grid step");
  evolve->add_option("--dt", ea.dt, "wave1d time step");
  evolve->add_option("--T", ea.T, "wave1d final time");
  evolve->add_option("--frame-every", ea.frame_every, "wave1d frame stride, 0 for first and last");
  evolve->add_option("--annulus", ea.annuli, "wave1d energy annulus lo:hi, repeatable");
  evolve->add_option("--energy", ea.energy, "wave1d energy CSV path");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (verify->parsed()) {
      if (list) {
        for (const auto& n : suites::suite_names()) out << n << '\n';
        return 0;
      }
      return cmd_verify(c, names, out, err);
    }
    if (kernel->parsed()) return cmd_kernel(c, which, t_str, kgrid, out);
    if (transform->parsed()) return cmd_transform(c, tf, method, power, inverse, tpoints, tgrid, out, err);
    if (evolve->parsed()) return cmd_evolve(c, ea, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace bdeform::cli
