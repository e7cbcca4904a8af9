// Command-line surface: validation suites, transforms, star-products and
// propagator experiments driven by a JSON config; CSV data and JSON reports.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage/config error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ncgf/checks.hpp"
#include "ncgf/oracle.hpp"
#include "ncgf/propagator.hpp"
#include "ncgf/threading.hpp"

namespace fs = std::filesystem;
using ncgf::Complex;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::string command;
  std::string group = "su2";
  int rd_dim = 1;
  std::string chart = "exp";
  int n_per_dim = 0;  // 0: per-command default
  double box_radius = 6.0;
  double dual_lambda = 40.0;
  int dual_n = 800;
  std::string damping = "none";
  double damping_sigma = 10.0;
  double epsilon = 0.0078125;
  int steps = 64;
  std::string scheme = "imaginary";
  std::string hamiltonian = "free";
  std::string out = "out";
  std::uint64_t seed = 12345;
  int threads = 0;
  bool full = false;
  double chart_scale = 1.0;  // validation fixture: deliberately mis-scaled chart
  std::string baseline;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void load_config_file(const std::string& path, RunConfig* cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw UsageError(std::string("config parse error: ") + e.what());
  }
  auto get = [&](const char* key, auto* out) {
    if (j.contains(key)) *out = j.at(key).get<std::decay_t<decltype(*out)>>();
  };
  get("command", &cfg->command);
  get("group", &cfg->group);
  get("rd_dim", &cfg->rd_dim);
  get("chart", &cfg->chart);
  get("n_per_dim", &cfg->n_per_dim);
  get("box_radius", &cfg->box_radius);
  get("dual_lambda", &cfg->dual_lambda);
  get("dual_n", &cfg->dual_n);
  get("damping", &cfg->damping);
  get("damping_sigma", &cfg->damping_sigma);
  get("epsilon", &cfg->epsilon);
  get("steps", &cfg->steps);
  get("scheme", &cfg->scheme);
  get("hamiltonian", &cfg->hamiltonian);
  get("out", &cfg->out);
  get("seed", &cfg->seed);
  get("threads", &cfg->threads);
  get("full", &cfg->full);
  get("chart_scale", &cfg->chart_scale);
  get("baseline", &cfg->baseline);
}

ordered_json config_echo(const RunConfig& c) {
  ordered_json j;
  j["command"] = c.command;
  j["group"] = c.group;
  if (c.group == "rd") j["rd_dim"] = c.rd_dim;
  j["chart"] = c.chart;
  j["n_per_dim"] = c.n_per_dim;
  j["box_radius"] = c.box_radius;
  j["dual_lambda"] = c.dual_lambda;
  j["dual_n"] = c.dual_n;
  j["damping"] = c.damping;
  j["damping_sigma"] = c.damping_sigma;
  j["epsilon"] = c.epsilon;
  j["steps"] = c.steps;
  j["scheme"] = c.scheme;
  j["hamiltonian"] = c.hamiltonian;
  j["out"] = c.out;
  j["seed"] = c.seed;
  j["full"] = c.full;
  if (c.chart_scale != 1.0) j["chart_scale"] = c.chart_scale;
  if (!c.baseline.empty()) j["baseline"] = c.baseline;
  return j;
}

const ncgf::LieGroupModel& model_of(const RunConfig& c) {
  if (c.group == "u1") return ncgf::LieGroupModel::u1();
  if (c.group == "su2") return ncgf::LieGroupModel::su2();
  if (c.group == "so3") return ncgf::LieGroupModel::so3();
  if (c.group == "rd") return ncgf::LieGroupModel::rd(c.rd_dim);
  throw UsageError("unknown group '" + c.group + "' (want rd|u1|su2|so3)");
}

ncgf::Chart chart_of(const RunConfig& c) {
  if (c.chart != "exp" && c.chart != "trace")
    throw UsageError("unknown chart '" + c.chart + "' (want exp|trace)");
  return ncgf::Chart(c.chart == "exp" ? ncgf::ChartKind::Exponential : ncgf::ChartKind::Trace,
                     model_of(c));
}

ncgf::EvolutionScheme scheme_of(const RunConfig& c) {
  if (c.scheme == "real") return ncgf::EvolutionScheme::RealTime;
  if (c.scheme == "imaginary") return ncgf::EvolutionScheme::ImaginaryTime;
  throw UsageError("unknown scheme '" + c.scheme + "' (want real|imaginary)");
}

ncgf::DampingSpec damping_of(const RunConfig& c) {
  ncgf::DampingSpec spec;
  spec.sigma = c.damping_sigma;
  if (c.damping == "none") spec.kind = ncgf::Damping::None;
  else if (c.damping == "gaussian") spec.kind = ncgf::Damping::Gaussian;
  else if (c.damping == "fejer") spec.kind = ncgf::Damping::Fejer;
  else if (c.damping == "flattop") spec.kind = ncgf::Damping::FlatTop;
  else throw UsageError("unknown damping '" + c.damping + "'");
  return spec;
}

void write_kernel_csv(const std::string& path, const ncgf::Kernel& kernel) {
  const ncgf::GroupGrid& grid = *kernel.grid;
  ncgf::CsvTable t;
  std::string zcols;
  for (int i = 0; i < grid.dim(); ++i) zcols += ",z" + std::to_string(i + 1) + "[chart]";
  t.header = "node" + zcols + ",weight[haar],re,im";
  for (int k = 0; k < grid.size(); ++k) {
    std::vector<double> row{static_cast<double>(k)};
    for (int i = 0; i < grid.dim(); ++i) row.push_back(grid.node(k).c[i]);
    row.push_back(grid.weight(k));
    row.push_back(kernel.values[k].real());
    row.push_back(kernel.values[k].imag());
    t.rows.push_back(std::move(row));
  }
  ncgf::write_csv(path, t);
}

void write_function_csv(const std::string& path, const ncgf::GroupGrid& grid,
                        std::span<const Complex> values) {
  ncgf::CsvTable t;
  std::string zcols;
  for (int i = 0; i < grid.dim(); ++i) zcols += ",z" + std::to_string(i + 1) + "[chart]";
  t.header = "node" + zcols + ",weight[haar],re,im";
  for (int k = 0; k < grid.size(); ++k) {
    std::vector<double> row{static_cast<double>(k)};
    for (int i = 0; i < grid.dim(); ++i) row.push_back(grid.node(k).c[i]);
    row.push_back(grid.weight(k));
    row.push_back(values[k].real());
    row.push_back(values[k].imag());
    t.rows.push_back(std::move(row));
  }
  ncgf::write_csv(path, t);
}

// ---------------------------------------------------------------- validate
int run_validate(const RunConfig& cfg) {
  if (cfg.chart_scale != 1.0) {
    // Fixture: deliberately mis-scaled coordinates must fail condition 2.
    const ncgf::Chart base = chart_of(cfg);
    ncgf::detail::ChartCallbacks cb;
    cb.group = &base.group();
    const double s = cfg.chart_scale;
    cb.coordinates = [base, s](const ncgf::GroupElement& g) {
      return ncgf::scale(base.coordinates(g), s);
    };
    cb.sample_domain = [base](ncgf::Rng& rng) {
      const double radius =
          base.group().kind() == ncgf::GroupKind::Rd ? 3.0 : 0.9 * base.range_radius();
      for (;;) {
        ncgf::AlgebraVector z = ncgf::zero_vector(base.group());
        for (int i = 0; i < base.group().dim(); ++i) z.c[i] = rng.uniform(-radius, radius);
        if (z.norm() < radius) return base.point(z);
      }
    };
    const ncgf::ValidationReport rep =
        ncgf::detail::validate_chart_impl(cb, 200, cfg.seed, 1e-3, 1e-6);
    ncgf::Report report;
    report.command = "validate";
    report.config_echo_json = config_echo(cfg).dump();
    report.checks.push_back(ncgf::CheckResult{
        "fixture_mis_scaled_chart_condition2", rep.max_derivative, 1e-6, rep.pass,
        "derivative normalization violation for scale " + ncgf::format_double(s)});
    fs::create_directories(cfg.out);
    ncgf::write_text_file(cfg.out + "/report.json", report.to_json());
    std::cout << report.to_json();
    return rep.pass ? 0 : 1;
  }

  const auto results = ncgf::checks::run_suite(cfg.seed, cfg.full);
  const ncgf::Report report = ncgf::checks::make_validate_report(results, cfg.seed, cfg.full);
  fs::create_directories(cfg.out);
  ncgf::write_text_file(cfg.out + "/report.json", report.to_json());

  bool ok = true;
  std::ostringstream log;
  for (const auto& c : results) {
    ok = ok && c.gate_pass();
    log << "criterion " << c.id << " (" << c.title << "): "
        << (c.gate_pass() ? "PASS" : "FAIL") << "  [" << c.seconds << " s]\n";
  }
  std::cout << log.str();
  ncgf::write_text_file(cfg.out + "/run.log", log.str());
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- transform
int run_transform(const RunConfig& cfg) {
  const ncgf::Chart chart = chart_of(cfg);
  const int n = cfg.n_per_dim > 0 ? cfg.n_per_dim : (chart.group().dim() == 1 ? 401 : 16);
  auto grid = ncgf::GroupGrid::build(chart, n, chart.group().kind() == ncgf::GroupKind::Rd
                                                   ? cfg.box_radius
                                                   : 0.0);
  // Seeded smooth test function: sum of a few chart-space bumps.
  ncgf::Rng rng(cfg.seed);
  ncgf::GroupFunction phi{grid, std::vector<Complex>(grid->size(), 0.0)};
  const double radius = std::min(chart.range_radius(), 4.0);
  for (int b = 0; b < 3; ++b) {
    ncgf::AlgebraVector c0 = ncgf::zero_vector(chart.group());
    for (int i = 0; i < chart.group().dim(); ++i) c0.c[i] = rng.uniform(-0.3, 0.3) * radius / 2;
    const double w = rng.uniform(0.3, 0.5) * radius / 2;
    const Complex amp(rng.uniform(0.3, 1.0), rng.uniform(-0.3, 0.3));
    for (int k = 0; k < grid->size(); ++k) {
      double d2 = 0;
      for (int i = 0; i < chart.group().dim(); ++i) {
        const double d = grid->node(k).c[i] - c0.c[i];
        d2 += d * d;
      }
      phi.values[k] += amp * std::exp(-0.5 * d2 / (w * w));
    }
  }

  const ncgf::DualFunction ft = ncgf::fourier_transform(phi);
  fs::create_directories(cfg.out);
  write_function_csv(cfg.out + "/transform.csv", *grid, ft.z_density);

  // Dual-side evaluation on an axis grid.
  ncgf::CsvTable dual;
  dual.header = "x1[dual],re,im";
  const int m = 65;
  for (int i = 0; i < m; ++i) {
    const double x = -cfg.dual_lambda + 2 * cfg.dual_lambda * i / (m - 1);
    ncgf::AlgebraVector xv = ncgf::zero_vector(chart.group());
    xv.c[0] = x;
    const Complex v = ncgf::evaluate_dual(ft, xv);
    dual.rows.push_back({x, v.real(), v.imag()});
  }
  ncgf::write_csv(cfg.out + "/dual_eval.csv", dual);

  // Round-trip sanity for the report.
  const ncgf::GroupFunction back = ncgf::inverse_transform_exact(ft);
  double rt = 0;
  for (int k = 0; k < grid->size(); ++k) rt = std::max(rt, std::abs(back.values[k] - phi.values[k]));
  ncgf::Report report;
  report.command = "transform";
  report.config_echo_json = config_echo(cfg).dump();
  report.checks.push_back(ncgf::CheckResult{"round_trip_exact", rt, 1e-14, rt <= 1e-14, ""});
  ncgf::write_text_file(cfg.out + "/report.json", report.to_json());
  std::cout << report.to_json();
  return report.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------- star
int run_star(const RunConfig& cfg) {
  const ncgf::Chart chart = chart_of(cfg);
  if (chart.group().kind() == ncgf::GroupKind::Rd)
    throw UsageError("star command expects a compact group");
  const int n = cfg.n_per_dim > 0 ? cfg.n_per_dim : (chart.group().dim() == 1 ? 257 : 14);
  auto grid = ncgf::GroupGrid::build(chart, n);
  ncgf::Rng rng(cfg.seed);

  auto bump = [&](double spread) {
    ncgf::GroupFunction f{grid, std::vector<Complex>(grid->size())};
    ncgf::AlgebraVector c0 = ncgf::zero_vector(chart.group());
    for (int i = 0; i < chart.group().dim(); ++i)
      c0.c[i] = rng.uniform(-0.2, 0.2) * chart.range_radius();
    for (int k = 0; k < grid->size(); ++k) {
      double d2 = 0;
      for (int i = 0; i < chart.group().dim(); ++i) {
        const double d = grid->node(k).c[i] - c0.c[i];
        d2 += d * d;
      }
      f.values[k] = std::exp(-0.5 * d2 / (spread * spread));
    }
    return f;
  };
  const double w = 0.25 * chart.range_radius();
  const ncgf::DualFunction a = ncgf::fourier_transform(bump(w));
  const ncgf::DualFunction b = ncgf::fourier_transform(bump(w * 1.2));
  const ncgf::DualFunction ab = ncgf::star_product(a, b);
  const ncgf::DualFunction ba = ncgf::star_product(b, a);

  fs::create_directories(cfg.out);
  write_function_csv(cfg.out + "/star.csv", *grid, ab.z_density);

  double noncomm = 0;
  for (int k = 0; k < grid->size(); ++k)
    noncomm = std::max(noncomm, std::abs(ab.z_density[k] - ba.z_density[k]));
  const std::array<ncgf::DualFunction, 2> two{a, b};
  const double cyc = ncgf::cyclic_check(two);

  ncgf::Report report;
  report.command = "star";
  report.config_echo_json = config_echo(cfg).dump();
  report.checks.push_back(ncgf::CheckResult{"cyclic_two_factor", cyc,
                                            chart.group().dim() == 1 ? 1e-6 : 1e-2,
                                            cyc <= (chart.group().dim() == 1 ? 1e-6 : 1e-2), ""});
  report.checks.push_back(ncgf::CheckResult{
      "noncommutativity_witness", noncomm, 0.0,
      chart.group().abelian() ? noncomm <= 1e-10 : noncomm > 1e-10,
      chart.group().abelian() ? "abelian: star-product commutes" : "sup |a*b - b*a|"});
  ncgf::write_text_file(cfg.out + "/report.json", report.to_json());
  std::cout << report.to_json();
  return report.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------- propagate
int run_propagate(const RunConfig& cfg) {
  const ncgf::Chart chart = chart_of(cfg);
  const ncgf::CorrectedHamiltonian h =
      ncgf::quantum_correct(ncgf::free_particle_symbol(chart));
  const int n = cfg.n_per_dim > 0 ? cfg.n_per_dim : (chart.group().dim() == 1 ? 512 : 24);

  ncgf::PropagatorConfig pc{chart,
                            n,
                            chart.group().kind() == ncgf::GroupKind::Rd ? cfg.box_radius : 0.0,
                            cfg.epsilon,
                            cfg.steps,
                            scheme_of(cfg),
                            h,
                            std::nullopt,
                            1.0 / 3.0,
                            chart.group().dim() == 1};
  if (cfg.hamiltonian == "free+cos") {
    if (chart.group().kind() != ncgf::GroupKind::U1)
      throw UsageError("free+cos potential is defined on U(1)");
    auto grid = ncgf::GroupGrid::build(chart, n);
    ncgf::GroupFunction v{grid, std::vector<Complex>(grid->size())};
    for (int k = 0; k < grid->size(); ++k) v.values[k] = std::cos(grid->node(k).c[0]);
    pc.potential = v;
  } else if (cfg.hamiltonian != "free") {
    throw UsageError("unknown hamiltonian '" + cfg.hamiltonian + "' (want free|free+cos)");
  }

  const double total_time = cfg.epsilon * cfg.steps;
  fs::create_directories(cfg.out);

  // Refinement ladder: epsilon halvings ending at the requested resolution;
  // 1-d runs refine the grid proportionally.
  ncgf::CsvTable ladder;
  ladder.header = "epsilon[time],steps,n_per_dim,sup_error[rel],l2_error[rel]";
  ncgf::PropagateResult finest;
  const ncgf::SpectralTruncation trunc{chart.group().dim() == 1 ? 64.0 : 12.0, 1e-9,
                                       h.constant_shift()};
  for (int rung = 2; rung >= 0; --rung) {
    const int factor = 1 << rung;
    if (cfg.steps % factor != 0 || cfg.steps / factor < 1) continue;
    ncgf::PropagatorConfig rc = pc;
    rc.steps = cfg.steps / factor;
    rc.epsilon = cfg.epsilon * factor;
    if (chart.group().dim() == 1 && n % factor == 0 && n / factor >= 32) rc.n_per_dim = n / factor;
    const ncgf::PropagateResult res = ncgf::propagate(rc);
    double sup_err = 0, sup_val = 0, l2_err = 0, l2_val = 0;
    for (int k = 0; k < res.kernel.grid->size(); ++k) {
      double want = 0;
      const ncgf::GroupElement g = res.kernel.grid->element(k);
      switch (chart.group().kind()) {
        case ncgf::GroupKind::U1:
          want = ncgf::u1_heat_kernel(g.a[0], total_time, trunc);
          break;
        case ncgf::GroupKind::SU2:
        case ncgf::GroupKind::SO3:
          want = ncgf::su_heat_kernel(g, total_time, trunc);
          break;
        case ncgf::GroupKind::Rd: {
          std::array<double, 3> x{g.a[0], g.a[1], g.a[2]};
          want = ncgf::rd_gaussian_kernel(std::span<const double>(x.data(), chart.group().dim()),
                                          total_time);
          break;
        }
      }
      const double err = std::abs(res.kernel.values[k] - Complex(want));
      const double wk = res.kernel.grid->weight(k);
      sup_err = std::max(sup_err, err);
      sup_val = std::max(sup_val, std::abs(want));
      l2_err += wk * err * err;
      l2_val += wk * want * want;
    }
    ladder.rows.push_back({rc.epsilon, static_cast<double>(rc.steps),
                           static_cast<double>(rc.n_per_dim), sup_err / sup_val,
                           std::sqrt(l2_err / l2_val)});
    if (rung == 0) finest = res;
  }
  ncgf::write_csv(cfg.out + "/ladder.csv", ladder);
  write_kernel_csv(cfg.out + "/kernel.csv", finest.kernel);

  // Per-mode spectral decay vs the oracle eigenvalues.
  ncgf::Report report;
  report.command = "propagate";
  report.config_echo_json = config_echo(cfg).dump();
  ordered_json modes = ordered_json::array();
  if (chart.group().kind() == ncgf::GroupKind::U1) {
    const ncgf::GroupGrid& grid = *finest.kernel.grid;
    for (int mode = 0; mode <= 5; ++mode) {
      Complex acc = 0;
      for (int k = 0; k < grid.size(); ++k)
        acc += grid.weight(k) * finest.kernel.values[k] *
               std::exp(Complex(0, -mode * grid.node(k).c[0]));
      const double fitted = -std::log(std::abs(acc)) / total_time;
      const double want = 0.5 * mode * mode + h.constant_shift();
      ordered_json e;
      e["mode"] = mode;
      e["fitted"] = ncgf::format_double(fitted);
      e["oracle"] = ncgf::format_double(want);
      if (want != 0) e["ratio"] = ncgf::format_double(fitted / want);
      modes.push_back(e);
    }
  } else if (chart.group().dim() == 3) {
    const double jstep = chart.group().kind() == ncgf::GroupKind::SU2 ? 0.5 : 1.0;
    for (double j = 0.0; j <= 3.0 + 1e-9; j += jstep) {
      const double cj =
          ncgf::character_coefficient(*finest.kernel.grid, finest.kernel.values, j, 1e-2);
      const double fitted =
          -std::log(cj * chart.group().volume() / (2 * j + 1)) / total_time;
      const double want = 0.5 * j * (j + 1) + h.constant_shift();
      ordered_json e;
      e["mode"] = j;
      e["fitted"] = ncgf::format_double(fitted);
      e["oracle"] = ncgf::format_double(want);
      e["ratio"] = ncgf::format_double(fitted / want);
      modes.push_back(e);
    }
  }
  ordered_json extra;
  extra["spectral_modes"] = modes;
  extra["constant_shift"] = ncgf::format_double(h.constant_shift());
  report.checks.push_back(ncgf::CheckResult{"propagate_completed", 0.0, 1.0, true,
                                            extra.dump()});
  ncgf::write_text_file(cfg.out + "/report.json", report.to_json());
  std::cout << report.to_json();
  return 0;
}

// ---------------------------------------------------------------- compare
int run_compare(const RunConfig& cfg) {
  const fs::path prior(cfg.out);
  if (!fs::exists(prior / "kernel.csv") || !fs::exists(prior / "report.json"))
    throw UsageError("compare: no prior propagate output in " + cfg.out);

  // Recover the prior run configuration.
  std::ifstream rin(prior / "report.json");
  ordered_json rj;
  rin >> rj;
  RunConfig prior_cfg = cfg;
  const auto& cj = rj.at("config");
  prior_cfg.group = cj.at("group").get<std::string>();
  prior_cfg.chart = cj.at("chart").get<std::string>();
  prior_cfg.epsilon = cj.at("epsilon").get<double>();
  prior_cfg.steps = cj.at("steps").get<int>();
  if (cj.contains("rd_dim")) prior_cfg.rd_dim = cj.at("rd_dim").get<int>();
  const double total_time = prior_cfg.epsilon * prior_cfg.steps;
  const ncgf::Chart chart = chart_of(prior_cfg);

  // Load kernel.csv.
  std::ifstream kin(prior / "kernel.csv");
  std::string line;
  std::getline(kin, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(kin, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  const int d = chart.group().dim();

  std::vector<std::vector<double>> baseline_rows;
  if (!cfg.baseline.empty()) {
    std::ifstream bin(fs::path(cfg.baseline) / "kernel.csv");
    if (!bin) throw UsageError("compare: cannot read baseline kernel.csv");
    std::getline(bin, line);
    while (std::getline(bin, line)) {
      if (line.empty()) continue;
      std::vector<double> row;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
      baseline_rows.push_back(std::move(row));
    }
    if (baseline_rows.size() != rows.size())
      throw UsageError("compare: baseline grid does not match");
  }

  const ncgf::CorrectedHamiltonian h =
      ncgf::quantum_correct(ncgf::free_particle_symbol(chart));
  const ncgf::SpectralTruncation trunc{d == 1 ? 64.0 : 12.0, 1e-9, h.constant_shift()};

  ncgf::CsvTable cmp;
  std::string zcols;
  for (int i = 0; i < d; ++i) zcols += ",z" + std::to_string(i + 1) + "[chart]";
  cmp.header = "node" + zcols + ",kernel_re,kernel_im,reference,abs_error";
  double sup_err = 0, sup_val = 0, l2_err = 0, l2_val = 0;
  for (const auto& row : rows) {
    ncgf::AlgebraVector z = ncgf::zero_vector(chart.group());
    for (int i = 0; i < d; ++i) z.c[i] = row[1 + i];
    const double wk = row[1 + d];
    const Complex val(row[2 + d], row[3 + d]);
    double want = 0;
    if (!cfg.baseline.empty()) {
      const auto& b = baseline_rows[cmp.rows.size()];
      want = b[2 + d];
    } else {
      const ncgf::GroupElement g = chart.point(z);
      switch (chart.group().kind()) {
        case ncgf::GroupKind::U1:
          want = ncgf::u1_heat_kernel(g.a[0], total_time, trunc);
          break;
        case ncgf::GroupKind::SU2:
        case ncgf::GroupKind::SO3:
          want = ncgf::su_heat_kernel(g, total_time, trunc);
          break;
        case ncgf::GroupKind::Rd: {
          std::array<double, 3> x{g.a[0], g.a[1], g.a[2]};
          want = ncgf::rd_gaussian_kernel(std::span<const double>(x.data(), d), total_time);
          break;
        }
      }
    }
    const double err = std::abs(val - Complex(want));
    sup_err = std::max(sup_err, err);
    sup_val = std::max(sup_val, std::abs(want));
    l2_err += wk * err * err;
    l2_val += wk * want * want;
    std::vector<double> out_row{row[0]};
    for (int i = 0; i < d; ++i) out_row.push_back(z.c[i]);
    out_row.push_back(val.real());
    out_row.push_back(val.imag());
    out_row.push_back(want);
    out_row.push_back(err);
    cmp.rows.push_back(std::move(out_row));
  }
  const fs::path outdir = cfg.baseline.empty() ? prior : fs::path(cfg.out);
  ncgf::write_csv((outdir / "compare.csv").string(), cmp);

  // Per-mode ratio table for 3-d groups: one column per mode j.
  if (d == 3 && cfg.baseline.empty()) {
    const double jstep = chart.group().kind() == ncgf::GroupKind::SU2 ? 0.5 : 1.0;
    ncgf::CsvTable modes;
    std::vector<double> ratios;
    for (double j = 0.0; j <= 3.0 + 1e-9; j += jstep) {
      if (!modes.header.empty()) modes.header += ",";
      modes.header += "ratio_j" + ncgf::format_double(j);
      Complex cj = 0.0;
      for (const auto& row : rows) {
        double r2 = 0;
        for (int i = 0; i < d; ++i) r2 += row[1 + i] * row[1 + i];
        const double r = std::sqrt(r2);
        const double theta =
            chart.kind() == ncgf::ChartKind::Trace ? 2.0 * std::asin(0.5 * r) : r;
        cj += row[1 + d] * Complex(row[2 + d], row[3 + d]) * ncgf::su2_character(j, theta);
      }
      const double fitted = -std::log(cj.real() / (2 * j + 1)) / total_time;
      const double want = 0.5 * j * (j + 1) + h.constant_shift();
      ratios.push_back(fitted / want);
    }
    modes.rows.push_back(ratios);
    ncgf::write_csv((outdir / "mode_ratios.csv").string(), modes);
  }
  ncgf::Report report;
  report.command = "compare";
  report.config_echo_json = config_echo(cfg).dump();
  const double rel_sup = sup_val > 0 ? sup_err / sup_val : sup_err;
  report.checks.push_back(ncgf::CheckResult{
      "compare_sup_error", rel_sup, cfg.baseline.empty() ? 1e-2 : 1e-12,
      rel_sup <= (cfg.baseline.empty() ? 1e-2 : 1e-12),
      "l2_error " + ncgf::format_double(l2_val > 0 ? std::sqrt(l2_err / l2_val) : 0.0)});
  ncgf::write_text_file((outdir / "compare_report.json").string(), report.to_json());
  std::cout << report.to_json();
  return report.all_pass() ? 0 : 1;
}

int dispatch(const RunConfig& cfg) {
  if (cfg.command == "validate") return run_validate(cfg);
  if (cfg.command == "transform") return run_transform(cfg);
  if (cfg.command == "star") return run_star(cfg);
  if (cfg.command == "propagate") return run_propagate(cfg);
  if (cfg.command == "compare") return run_compare(cfg);
  throw UsageError("unknown command '" + cfg.command +
                   "' (want validate|transform|star|propagate|compare)");
}

void print_usage() {
  std::cerr << "usage: ncgf <validate|transform|star|propagate|compare> [options]\n"
               "  --config PATH   JSON config (flat keys; flags override)\n"
               "  --group G       rd|u1|su2|so3\n"
               "  --chart C       exp|trace\n"
               "  --out DIR       output directory (compare: prior propagate dir)\n"
               "  --seed INT      deterministic seed\n"
               "  --threads INT   worker threads (or NCGF_THREADS)\n"
               "  --full          validate: include the propagator criteria\n"
               "  --baseline DIR  compare: compare against another run\n";
}

}  // namespace

int main(int argc, char** argv) {
  try {
    if (argc < 2) {
      print_usage();
      return 2;
    }
    RunConfig cfg;
    cfg.command = argv[1];
    // First pass: locate --config, load it, then let flags override.
    for (int i = 2; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--config") load_config_file(argv[i + 1], &cfg);
    if (std::string(argv[1]) == "--config" || cfg.command.empty()) {
      print_usage();
      return 2;
    }
    cfg.command = argv[1];
    for (int i = 2; i < argc; ++i) {
      const std::string flag = argv[i];
      auto next = [&]() -> std::string {
        if (i + 1 >= argc) throw UsageError("missing value for " + flag);
        return argv[++i];
      };
      if (flag == "--config") { next(); continue; }
      else if (flag == "--group") cfg.group = next();
      else if (flag == "--chart") cfg.chart = next();
      else if (flag == "--out") cfg.out = next();
      else if (flag == "--seed") cfg.seed = std::stoull(next());
      else if (flag == "--threads") cfg.threads = std::stoi(next());
      else if (flag == "--full") cfg.full = true;
      else if (flag == "--baseline") cfg.baseline = next();
      else if (flag == "--rd-dim") cfg.rd_dim = std::stoi(next());
      else if (flag == "--n") cfg.n_per_dim = std::stoi(next());
      else if (flag == "--epsilon") cfg.epsilon = std::stod(next());
      else if (flag == "--steps") cfg.steps = std::stoi(next());
      else if (flag == "--scheme") cfg.scheme = next();
      else if (flag == "--hamiltonian") cfg.hamiltonian = next();
      else throw UsageError("unknown flag " + flag);
    }

    int threads = cfg.threads;
    if (threads <= 0) {
      if (const char* env = std::getenv("NCGF_THREADS")) threads = std::atoi(env);
    }
    ncgf::set_num_threads(threads > 0 ? threads : 1);

    return dispatch(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
