#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ch/complex_calculus.hpp"
#include "ch/domain.hpp"
#include "ch/errors.hpp"
#include "ch/gamma.hpp"
#include "ch/hardy.hpp"
#include "ch/hartogs.hpp"
#include "ch/quadrature.hpp"
#include "ch/report.hpp"
#include "ch/tyz.hpp"

namespace ch {

namespace {

struct Options {
  std::string base = "typeI:1,1";
  Real mu = 1.0;
  int d0 = 1;
  int m = 5;
  std::uint64_t seed = 7;
  int samples = 0;  // per-command default when 0
  Real fd_step = 1e-3;
  bool richardson = true;
  std::string point;
  int m_cutoff = 400;
  int degree_cutoff = 20;
  bool with_oracle = false;
  std::string quad = "radial";
  std::string out_file;
  std::vector<std::string> tol_overrides;

  Stencil stencil() const { return Stencil{fd_step, richardson}; }
};

class Pipeline {
 public:
  Pipeline(std::string command, const Options& opts) : opts_(opts) {
    report_.command = std::move(command);
    report_.seed = opts.seed;
    for (const std::string& entry : opts.tol_overrides) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos)
        throw Error(errc::invalid_kind, "--tol expects NAME=VALUE");
      overrides_[entry.substr(0, eq)] = std::stod(entry.substr(eq + 1));
    }
  }

  Real tol(const std::string& name, Real fallback) const {
    const auto it = overrides_.find(name);
    return it == overrides_.end() ? fallback : it->second;
  }

  void check(const std::string& name, Real measured, Real expected, Real tolerance,
             bool relative) {
    report_.checks.push_back(
        make_check(name, measured, expected, tol(name, tolerance), relative));
  }

  VerificationReport& report() { return report_; }
  const Options& opts() const { return opts_; }

 private:
  const Options& opts_;
  VerificationReport report_;
  std::map<std::string, Real> overrides_;
};

ComplexVector parse_point(const std::string& text, int needed) {
  std::vector<Real> values;
  if (!text.empty()) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const std::string field =
          text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        values.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw Error(errc::invalid_kind, "bad --point component '" + field + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (values.size() % 2 != 0)
    throw Error(errc::invalid_kind, "--point expects re,im pairs");
  if (static_cast<int>(values.size()) > 2 * needed)
    throw Error(errc::invalid_kind,
                "--point has more than " + std::to_string(needed) + " coordinates");
  ComplexVector v = ComplexVector::Zero(needed);
  for (std::size_t i = 0; 2 * i < values.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = Complex(values[2 * i], values[2 * i + 1]);
  return v;
}

std::vector<ComplexVector> collect_interior_points(const DomainSpec& spec, int n,
                                                   std::uint64_t seed, Real min_norm) {
  std::vector<ComplexVector> points;
  int batch = 2 * n;
  for (int attempt = 0; attempt < 8 && static_cast<int>(points.size()) < n; ++attempt) {
    points.clear();
    const SampleSet set = sample_interior(spec, batch, seed);
    for (const ComplexVector& z : set.points) {
      if (generic_norm(spec, z) > min_norm) points.push_back(z);
      if (static_cast<int>(points.size()) == n) break;
    }
    batch *= 2;
  }
  if (static_cast<int>(points.size()) < n)
    throw Error(errc::sampling_failure, "could not collect enough interior points");
  return points;
}

/// Deterministic interior base points used by the scan commands.
ComplexVector scan_point(const DomainSpec& spec, int index, Real radius) {
  ComplexVector z(spec.dim);
  for (int j = 0; j < spec.dim; ++j) {
    const Real angle = 0.9 * (index + 1) + 1.7 * j;
    z(j) = radius / std::sqrt(static_cast<Real>(spec.dim)) *
           Complex(std::cos(angle), std::sin(angle));
  }
  return z;
}

void run_catalog(Pipeline& p, const DomainSpec& spec) {
  const Real genus_rhs = 2 + spec.mult_a * (spec.rank - 1) + spec.mult_b;
  const Real dim_rhs = spec.rank + spec.mult_a * spec.rank * (spec.rank - 1) / 2 +
                       spec.rank * spec.mult_b;
  p.check("genus-identity", spec.genus, genus_rhs, 0.0, false);
  p.check("dim-identity", spec.dim, dim_rhs, 0.0, false);
  Json& result = p.report().result;
  result["kind"] = to_string(spec.kind);
  result["rank"] = spec.rank;
  result["a"] = spec.mult_a;
  result["b"] = spec.mult_b;
  result["genus"] = spec.genus;
  result["dim"] = spec.dim;
}

void run_verify_metric(Pipeline& p, const DomainSpec& spec) {
  const Options& o = p.opts();
  const int count = o.samples > 0 ? o.samples : 100;
  const auto points = collect_interior_points(spec, count, o.seed, 0.1);
  const auto [constant, deviation] =
      det_identity_residual(spec, o.mu, points, o.stencil());
  p.check("det-identity-deviation", deviation, 0.0, 1e-4, false);
  const Real paper_constant = std::pow(o.mu / spec.genus, spec.dim);
  if (spec.rank == 1)
    p.check("det-identity-constant-rank1", constant, paper_constant, 1e-4, true);
  Json& result = p.report().result;
  result["constant"] = constant;
  result["deviation"] = deviation;
  result["paper_constant"] = paper_constant;
  result["discrepancy_factor"] = constant / paper_constant;
}

void run_verify_volume_form(Pipeline& p, const DomainSpec& spec) {
  const Options& o = p.opts();
  const int count = o.samples > 0 ? o.samples : 100;
  const auto points = collect_interior_points(spec, count, o.seed, 0.1);
  const Stencil stencil = o.stencil();

  std::vector<Real> scaled(points.size());
  Real max_unit_gap = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Real a = boundary_density_A(spec, o.mu, points[i], stencil);
    const Real n_z = generic_norm(spec, points[i]);
    scaled[i] = a * std::pow(n_z, spec.genus - o.mu * (spec.dim + 1));
    max_unit_gap = std::max(max_unit_gap, std::abs(a - 1.0));
  }
  const Real mean = pairwise_sum(scaled) / static_cast<Real>(scaled.size());
  Real deviation = 0.0;
  for (const Real c : scaled)
    deviation = std::max(deviation, std::abs(c / mean - 1.0));

  p.check("volume-form-deviation", deviation, 0.0, 1e-4, false);
  const bool disk_case = spec.kind.type == DomainType::type_i && spec.kind.p == 1 &&
                         spec.kind.q == 1 && std::abs(o.mu - 1.0) < 1e-12;
  if (disk_case) p.check("disk-density-unit", max_unit_gap, 0.0, 1e-5, false);

  const Real paper_constant = std::pow(2.0 * o.mu / spec.genus, spec.dim);
  Json& result = p.report().result;
  result["constant"] = mean;            // measured density of alpha ^ (d alpha)^d / 2^d... times N^{gamma-mu(d+1)}
  result["measured_density_constant"] = std::pow(2.0, spec.dim) * mean;
  result["paper_constant"] = paper_constant;
  result["discrepancy_factor"] = std::pow(2.0, spec.dim) * mean / paper_constant;
  result["deviation"] = deviation;
}

void run_tyz(Pipeline& p, const DomainSpec& spec) {
  const Options& o = p.opts();
  const HartogsParams params = make_hartogs(spec, o.mu, o.d0);
  const int n = spec.dim + o.d0;
  HartogsPoint v = split_point(params, parse_point(o.point, n));
  if (rho(params, v) <= 0.0)
    throw Error(errc::outside_domain, "--point lies outside M");

  const Real value = kempf_distortion(params, o.m, v);
  const DistortionReport report =
      tyz_coefficients(params, v, default_m_grid(params), default_check_grid(params));

  p.check("interpolation-residual", report.interpolation_residual, 0.0, 1e-8, false);
  p.check("leading-coefficient", report.coefficients.front(), 1.0, 1e-8, false);

  Json& result = p.report().result;
  result["m"] = o.m;
  result["value"] = value;
  result["m_grid"] = report.m_grid;
  result["values"] = report.values;
  result["coefficients"] = report.coefficients;
  result["residual"] = report.interpolation_residual;

  if (o.with_oracle) {
    Real oracle = 0.0;
    if (o.quad == "radial") {
      oracle = rawnsley_oracle_radial(params, o.m, v, o.degree_cutoff);
    } else {
      const int count = o.samples > 0 ? o.samples : 20000;
      const SampleSet quad = sample_hartogs_interior(params, count, o.seed);
      oracle = rawnsley_oracle(params, o.m, v, o.degree_cutoff, quad);
    }
    p.check("oracle-ratio", value / oracle, 1.0, 1e-2, false);
    result["oracle"] = oracle;
  }
}

void run_szego(Pipeline& p, const DomainSpec& spec) {
  const Options& o = p.opts();
  const HartogsParams params = make_hartogs(spec, o.mu, 1);
  const int n = spec.dim + 1;
  HartogsPoint v = split_point(params, parse_point(o.point, n));
  if (rho(params, v) <= 0.0)
    throw Error(errc::outside_domain, "--point lies outside M");

  const std::vector<Real> b = default_b_coefficients(params, o.degree_cutoff);
  const Real closed = szego_closed(params, b, v);

  Json& result = p.report().result;
  result["b"] = b;
  result["closed"] = closed;

  try {
    const SzegoEvaluation eval = szego_series(params, b, v, o.m_cutoff, o.degree_cutoff);
    result["series"] = eval.series_value;
    result["tail"] = eval.tail_estimate;
    p.check("series-closed-agreement", eval.series_value, closed, 1e-6, true);
    p.check("tail-bound", eval.tail_estimate, 0.0,
            1e-8 * std::abs(eval.series_value), false);
  } catch (const Error& e) {
    if (e.code() != errc::near_boundary) throw;
    result["series"] = nullptr;
    result["tail"] = nullptr;
    p.check("series-closed-agreement",
            std::numeric_limits<Real>::quiet_NaN(), closed, 1e-6, true);
  }

  const std::vector<Real> grid = default_radial_grid(params, v.z);
  const LogTermFit fit = log_term_fit(params, b, v.z, grid);
  const Real t_min = *std::min_element(grid.begin(), grid.end());
  const Real scale = std::abs(fit.a_estimate) * std::pow(t_min, -(spec.dim + 1));
  p.check("logterm-b", std::abs(fit.b_estimate), 0.0, 1e-6 * scale, false);
  result["logterm"] = {{"a", fit.a_estimate},
                       {"b", fit.b_estimate},
                       {"residual", fit.residual}};
}

void run_logterm_scan(Pipeline& p, const DomainSpec& spec) {
  const Options& o = p.opts();
  const HartogsParams params = make_hartogs(spec, o.mu, 1);
  const std::vector<Real> b = default_b_coefficients(params, o.degree_cutoff);
  const int d = spec.dim;

  Json families = Json::array();
  const Real radii[5] = {0.0, 0.15, 0.3, 0.45, 0.6};
  for (int k = 0; k < 5; ++k) {
    const ComplexVector z = scan_point(spec, k, radii[k]);
    const std::vector<Real> grid = default_radial_grid(params, z);
    const LogTermFit fit = log_term_fit(params, b, z, grid);
    const Real t_min = *std::min_element(grid.begin(), grid.end());
    const Real scale = std::abs(fit.a_estimate) * std::pow(t_min, -(d + 1));
    p.check("logterm-b-z" + std::to_string(k), std::abs(fit.b_estimate), 0.0,
            1e-6 * scale, false);

    // Boundary limit of rho^{d+1} S along this family.
    const Real n_mu = std::pow(generic_norm(spec, z), o.mu);
    HartogsPoint v;
    v.z = z;
    v.w = ComplexVector(1);
    const Real t_lim = 1e-6 * n_mu;
    v.w(0) = std::sqrt(n_mu - t_lim);
    const Real limit = szego_closed(params, b, v) * std::pow(t_lim, d + 1);
    const Real expected = std::pow(2.0, -d) * b.back();
    p.check("boundary-limit-z" + std::to_string(k), limit, expected, 1e-4, true);

    families.push_back({{"z_radius", radii[k]},
                        {"a", fit.a_estimate},
                        {"b", fit.b_estimate},
                        {"residual", fit.residual}});
  }

  // Detector validity on a synthetic profile with a planted log component.
  std::vector<Real> t_grid, s_grid;
  for (int i = 0; i < 16; ++i) {
    const Real t = std::pow(10.0, -3.0 + 2.0 * i / 15.0);
    t_grid.push_back(t);
    s_grid.push_back(std::pow(t, -(d + 1)) + 0.1 * std::log(t));
  }
  const LogTermFit planted = fit_radial_profile(t_grid, s_grid, d + 1);
  p.check("detector-planted", planted.b_estimate, 0.1, 1e-6, false);

  Json& result = p.report().result;
  result["b"] = b;
  result["families"] = families;
}

void run_isometry(Pipeline& p, const DomainSpec& spec) {
  const Options& o = p.opts();
  const HartogsParams params = make_hartogs(spec, o.mu, 1);
  const int count = o.samples > 0 ? o.samples : 100000;
  const Stencil stencil = o.stencil();

  const auto boundary = sample_boundary(params, count, o.seed, stencil);
  const SampleSet base_quad = sample_interior(spec, count, o.seed + 1);

  const std::vector<int> powers = {0, 1, 2};
  std::vector<Real> ratios;
  for (const int k : powers) {
    auto section = [k](const ComplexVector& z) { return std::pow(z(0), k); };
    ratios.push_back(
        isometry_ratio(spec, o.mu, o.m, section, boundary, base_quad, stencil));
  }

  for (std::size_t i = 0; i < ratios.size(); ++i)
    for (std::size_t j = i + 1; j < ratios.size(); ++j)
      p.check("ratio-pairwise-" + std::to_string(i) + std::to_string(j),
              ratios[i] / ratios[j], 1.0, 2e-2, false);

  Json& result = p.report().result;
  result["m"] = o.m;
  result["ratios"] = ratios;
}

int finish(Pipeline& p, const Options& opts, std::ostream& out, std::ostream& err,
           std::chrono::steady_clock::time_point start) {
  VerificationReport& report = p.report();
  report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  const Json j = to_json(report);
  if (!opts.out_file.empty()) {
    std::ofstream file(opts.out_file);
    if (!file) {
      err << "cannot open --out file '" << opts.out_file << "'\n";
      return 2;
    }
    file << j.dump(2) << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
  if (!report.all_pass()) {
    for (const Check& c : report.checks)
      if (!c.pass) err << "check failed: " << c.name << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  Options opts;
  std::string kind_text;

  CLI::App app{"numerical verification toolkit for Cartan-Hartogs domains"};
  app.name("hartogs");
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool with_base) {
    if (with_base)
      sub->add_option("--base", opts.base, "base domain, e.g. typeI:1,2");
    sub->add_option("--mu", opts.mu, "fiber exponent mu > 0");
    sub->add_option("--seed", opts.seed, "RNG seed");
    sub->add_option("--samples", opts.samples, "sample count");
    sub->add_option("--fd-step", opts.fd_step, "finite-difference step");
    sub->add_option("--richardson", opts.richardson, "Richardson extrapolation");
    sub->add_option("--out", opts.out_file, "write the JSON report here");
    sub->add_option("--tol", opts.tol_overrides, "override NAME=VALUE")
        ->take_all();
  };

  CLI::App* catalog = app.add_subcommand("catalog", "domain invariants");
  catalog->add_option("kind", kind_text, "domain kind, e.g. typeI:2,2")->required();
  add_common(catalog, false);

  CLI::App* metric = app.add_subcommand("verify-metric", "determinant identity");
  add_common(metric, true);

  CLI::App* volume =
      app.add_subcommand("verify-volume-form", "boundary volume density");
  add_common(volume, true);

  CLI::App* tyz = app.add_subcommand("tyz", "distortion function and coefficients");
  add_common(tyz, true);
  tyz->add_option("--d0", opts.d0, "fiber dimension");
  tyz->add_option("--m", opts.m, "weight m");
  tyz->add_option("--point", opts.point, "re,im[,re,im...]");
  tyz->add_flag("--oracle", opts.with_oracle, "compare against the Gram oracle");
  tyz->add_option("--quad", opts.quad, "radial|mc")
      ->check(CLI::IsMember({"radial", "mc"}));
  tyz->add_option("--degree-cutoff", opts.degree_cutoff, "monomial degree cutoff");

  CLI::App* szego = app.add_subcommand("szego", "Szego kernel evaluation");
  add_common(szego, true);
  szego->add_option("--point", opts.point, "re,im[,re,im...]");
  szego->add_option("--m-cutoff", opts.m_cutoff, "series cutoff");
  szego->add_option("--degree-cutoff", opts.degree_cutoff, "basis cutoff");

  CLI::App* logterm = app.add_subcommand("logterm-scan", "log-term vanishing scan");
  add_common(logterm, true);
  logterm->add_option("--degree-cutoff", opts.degree_cutoff, "basis cutoff");

  CLI::App* isometry = app.add_subcommand("isometry", "hat-map isometry ratios");
  add_common(isometry, true);
  isometry->add_option("--m", opts.m, "weight m");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  CLI::App* active = app.get_subcommands().front();
  const std::string name = active->get_name();

  try {
    const DomainSpec spec =
        make_domain(parse_kind(name == "catalog" ? kind_text : opts.base));
    Pipeline pipeline(name, opts);
    Json& params = pipeline.report().params;
    params["base"] = to_string(spec.kind);
    params["mu"] = opts.mu;
    if (name == "tyz") {
      params["d0"] = opts.d0;
      params["m"] = opts.m;
      params["point"] = opts.point;
    }
    if (name == "szego") {
      params["point"] = opts.point;
      params["m_cutoff"] = opts.m_cutoff;
      params["degree_cutoff"] = opts.degree_cutoff;
    }
    if (name == "isometry") params["m"] = opts.m;
    params["samples"] = opts.samples;
    params["fd_step"] = opts.fd_step;
    params["richardson"] = opts.richardson;

    if (name == "catalog") run_catalog(pipeline, spec);
    else if (name == "verify-metric") run_verify_metric(pipeline, spec);
    else if (name == "verify-volume-form") run_verify_volume_form(pipeline, spec);
    else if (name == "tyz") run_tyz(pipeline, spec);
    else if (name == "szego") run_szego(pipeline, spec);
    else if (name == "logterm-scan") run_logterm_scan(pipeline, spec);
    else if (name == "isometry") run_isometry(pipeline, spec);
    else {
      err << "unknown subcommand " << name << "\n";
      return 2;
    }
    return finish(pipeline, opts, out, err, start);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.is_usage() ? 2 : 1;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
}

}  // namespace ch
