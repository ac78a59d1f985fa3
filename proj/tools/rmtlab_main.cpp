// rmtlab: seeded, configuration-driven experiment runner. Every subcommand is
// a pure function of its RunConfig; identical configs produce byte-identical
// output files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "rmtlab/asymptotics.hpp"
#include "rmtlab/charpoly.hpp"
#include "rmtlab/detkit.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/gmc.hpp"
#include "rmtlab/mom.hpp"
#include "rmtlab/painleve.hpp"
#include "rmtlab/runconfig.hpp"
#include "rmtlab/ubm.hpp"

namespace {

using namespace rmtlab;

constexpr const char* kVersion = "0.1.0";
constexpr double kPi = std::numbers::pi;

std::string fd(double v) { return format_double(v); }

Group group_from_config(const RunConfig& cfg) {
  Group g = Group::parse(cfg.get("group", "U"));
  g.n = cfg.get_int("n", 4);
  if (g.n < (g.kind == GroupKind::SOminus ? 2 : 1))
    throw std::invalid_argument("group size parameter n too small");
  return g;
}

QuadratureSpec quad_spec(const RunConfig& cfg) {
  QuadratureSpec spec;
  spec.abs_tol = cfg.get_double("quad-abs-tol", 1e-11);
  spec.rel_tol = cfg.get_double("quad-rel-tol", 1e-11);
  spec.max_subdivisions = cfg.get_int("quad-max-subdivisions", 20000);
  return spec;
}

FHSymbol symbol_from_config(const RunConfig& cfg) {
  const std::string name = cfg.get("symbol", "trivial");
  if (name == "json") {
    std::ifstream in(cfg.get("symbol-json"));
    if (!in) throw std::invalid_argument("cannot open symbol-json file");
    std::stringstream buf;
    buf << in.rdbuf();
    return FHSymbol::from_json(buf.str());
  }
  if (name == "trivial") return FHSymbol::trivial();
  if (name == "abs2")  // |1 - z|^2
    return FHSymbol({}, {{0.0, 1.0, 0.0}});
  if (name == "cosine")  // e^{cos theta}
    return FHSymbol({{-1, 0.5}, {1, 0.5}}, {});
  if (name == "single-alpha")
    return FHSymbol({}, {{cfg.get_double("theta", kPi), cfg.get_double("alpha", 0.3),
                          cfg.get_double("beta-im", 0.0)}});
  if (name == "even-pair") {
    const double theta = cfg.get_double("theta", kPi / 2);
    const double alpha = cfg.get_double("alpha", 0.3);
    const double b = cfg.get_double("beta-im", 0.0);
    return FHSymbol({}, {{theta, alpha, b}, {2 * kPi - theta, alpha, -b}});
  }
  throw std::invalid_argument("unknown symbol preset: " + name);
}

Table run_sample(const RunConfig& cfg) {
  const Group g = group_from_config(cfg);
  const int samples = cfg.get_int("samples", 10);
  RngStream rng(cfg.seed);
  Table t;
  t.columns = {"sample", "angle_index", "angle", "fixed_plus", "fixed_minus", "group"};
  for (int s = 0; s < samples; ++s) {
    const EnsembleSample es = sample(g, rng);
    for (std::size_t i = 0; i < es.angles.size(); ++i)
      t.add_row({std::to_string(s), std::to_string(i), fd(es.angles[i]),
                 std::to_string(es.fixed_plus_one), std::to_string(es.fixed_minus_one),
                 es.group.name()});
  }
  return t;
}

Table run_det(const RunConfig& cfg) {
  const FHSymbol sym = symbol_from_config(cfg);
  const int n = cfg.get_int("n", 4);
  const int kappa = cfg.get_int("kappa", 0);
  const QuadratureSpec spec = quad_spec(cfg);
  const DetReport rep = (kappa == 0) ? toeplitz_det(sym, n, spec) : th_det(sym, n, kappa, spec);
  Table t;
  t.columns = {"n", "kappa", "value_re", "value_im", "condition"};
  t.add_row({std::to_string(rep.n), std::to_string(rep.kappa), fd(rep.value.real()),
             fd(rep.value.imag()), fd(rep.condition_estimate)});
  return t;
}

Table run_identity_check(const RunConfig& cfg) {
  const std::string which = cfg.get("which", "heine-szego");
  const QuadratureSpec spec = quad_spec(cfg);
  Table t;
  if (which == "heine-szego") {
    const FHSymbol sym = symbol_from_config(cfg);
    RngStream rng(cfg.seed);
    const auto rep =
        heine_szego_check(sym, cfg.get_int("n", 3), cfg.get_int("samples", 4000), rng, spec);
    t.columns = {"mc_re", "mc_im", "se", "det_re", "det_im", "z"};
    t.add_row({fd(rep.mc_estimate.real()), fd(rep.mc_estimate.imag()), fd(rep.se),
               fd(rep.determinant.real()), fd(rep.determinant.imag()), fd(rep.z_score)});
    return t;
  }
  if (which == "baik-rains") {
    const Group g = group_from_config(cfg);
    const FHSymbol h = symbol_from_config(cfg);
    const cdouble v = baik_rains_expectation(g, h, spec);
    t.columns = {"group", "n", "value_re", "value_im"};
    t.add_row({g.name(), std::to_string(g.n), fd(v.real()), fd(v.imag())});
    return t;
  }
  if (which == "orthopoly") {
    const FHSymbol sym = symbol_from_config(cfg);
    const auto rep = orthopoly_connection_check(sym, cfg.get_int("n", 2), spec);
    t.columns = {"kappa", "residual"};
    for (int k = 1; k <= 4; ++k)
      t.add_row({std::to_string(k), fd(rep.residual[k - 1])});
    return t;
  }
  throw std::invalid_argument("identity-check: unknown 'which': " + which);
}

Table run_asym(const RunConfig& cfg) {
  const std::string evaluator = cfg.get("evaluator", "szego");
  const int n = cfg.get_int("n", 16);
  const bool with_exact = cfg.get_int("exact", 1) != 0;
  const QuadratureSpec spec = quad_spec(cfg);
  Table t;
  t.columns = {"n", "t", "exact", "predicted", "ratio"};

  const auto emit = [&](double tval, double exact_log, double predicted_log, bool have_exact) {
    const double ratio = have_exact ? std::exp(exact_log - predicted_log) : 0.0;
    t.add_row({std::to_string(n), fd(tval), have_exact ? fd(exact_log) : "nan",
               fd(predicted_log), have_exact ? fd(ratio) : "nan"});
  };

  if (evaluator == "szego" || evaluator == "ehrhardt" || evaluator == "dik") {
    const FHSymbol sym = symbol_from_config(cfg);
    const int kappa = cfg.get_int("kappa", 1);
    AsymptoticPrediction pred;
    if (evaluator == "szego") pred = szego(sym, n);
    else if (evaluator == "ehrhardt") pred = ehrhardt(sym, n);
    else pred = dik_th(sym, n, kappa);
    double exact_log = 0.0;
    if (with_exact) {
      const DetReport rep =
          (evaluator == "dik") ? th_det(sym, n, kappa, spec) : toeplitz_det(sym, n, spec);
      exact_log = std::log(std::abs(rep.value));
    }
    emit(0.0, exact_log, pred.log_value.real(), with_exact);
    return t;
  }
  if (evaluator == "uniform-t" || evaluator == "uniform-th") {
    MergingSymbolParams mp;
    mp.alpha0 = cfg.get_double("alpha0", 0.0);
    mp.alpha1 = cfg.get_double("alpha1", 0.25);
    mp.alpha2 = cfg.get_double("alpha2", 0.25);
    mp.alpha3 = cfg.get_double("alpha3", 0.0);
    mp.b1 = cfg.get_double("b1", 0.0);
    mp.b2 = cfg.get_double("b2", 0.0);
    const double p = cfg.get_double("p", kPi / 2);
    const double tval = cfg.get_double("t", 0.1);
    const int kappa = cfg.get_int("kappa", 2);
    PainleveParams pp{mp.alpha1, mp.alpha2, mp.b1, mp.b2};
    const double scale = (evaluator == "uniform-t") ? 2.0 : 4.0;
    const PainleveSolution sol =
        solve_sigma(pp, std::max(10.0, scale * n * tval * 1.05), 1e-8);
    AsymptoticPrediction pred = (evaluator == "uniform-t")
                                    ? uniform_toeplitz(p, tval, mp, {}, n, sol)
                                    : uniform_th(p, tval, mp, {}, n, kappa, sol);
    double exact_log = 0.0;
    if (with_exact) {
      const FHSymbol sym = merging_symbol(p, tval, mp, {});
      const DetReport rep = (evaluator == "uniform-t") ? toeplitz_det(sym, n, spec)
                                                       : th_det(sym, n, kappa, spec);
      exact_log = std::log(std::abs(rep.value));
    }
    emit(tval, exact_log, pred.log_value.real(), with_exact);
    return t;
  }
  if (evaluator == "envelope") {
    const double theta1 = cfg.get_double("theta1", kPi / 2);
    const double theta2 = cfg.get_double("theta2", 0.0);  // 0 = single singularity
    const double alpha = cfg.get_double("alpha", 0.3);
    const int kappa = cfg.get_int("kappa", 2);
    std::vector<Singularity> interior{{theta1, alpha, 0.0}};
    if (theta2 > 0.0) interior.push_back({theta2, alpha, 0.0});
    const auto pred = claeys_envelope(interior, 0.0, n, kappa);
    double exact_log = 0.0;
    if (with_exact) {
      std::vector<Singularity> sing = interior;
      for (const auto& s : interior) sing.push_back({2 * kPi - s.theta, s.alpha, 0.0});
      const FHSymbol sym({}, sing);
      exact_log = std::log(std::abs(th_det(sym, n, kappa, spec).value));
    }
    emit(0.0, exact_log, pred.log_value.real(), with_exact);
    return t;
  }
  throw std::invalid_argument("asym: unknown evaluator: " + evaluator);
}

Table run_painleve(const RunConfig& cfg) {
  PainleveParams p;
  p.alpha1 = cfg.get_double("alpha1", 0.25);
  p.alpha2 = cfg.get_double("alpha2", 0.25);
  p.b1 = cfg.get_double("b1", 0.0);
  p.b2 = cfg.get_double("b2", 0.0);
  const double xmax = cfg.get_double("xmax", 40.0);
  const double tol = cfg.get_double("tol", 1e-8);
  const PainleveSolution sol = solve_sigma(p, xmax, tol);
  const int points = cfg.get_int("points", 200);
  Table t;
  t.columns = {"x", "sigma", "dsigma"};
  for (int i = 0; i < points; ++i) {
    const double x = sol.x0 * std::pow(xmax / sol.x0, i / static_cast<double>(points - 1));
    t.add_row({fd(x), fd(sol.sigma(x)), fd(sol.dsigma(x))});
  }
  return t;
}

Table run_mom(const RunConfig& cfg) {
  Table t;
  if (cfg.get_int("phase-diagram", 0) != 0) {
    const Group g = group_from_config(cfg);
    const int m = cfg.get_int("m", 1);
    const double lo = cfg.get_double("alpha-min", 0.05);
    const double hi = cfg.get_double("alpha-max", 1.5);
    const int steps = cfg.get_int("alpha-steps", 30);
    t.columns = {"alpha", "phase", "exponent", "log_factor"};
    for (int i = 0; i <= steps; ++i) {
      const double alpha = lo + (hi - lo) * i / steps;
      const PhaseReport rep = phase_classify(g, m, alpha);
      t.add_row({fd(alpha), rep.label, fd(rep.growth_exponent),
                 rep.log_factor ? "1" : "0"});
    }
    return t;
  }
  MoMQuery q;
  q.group = group_from_config(cfg);
  q.m = cfg.get_int("m", 1);
  q.alpha = cfg.get_double("alpha", 0.3);
  q.estimator = cfg.get("estimator", "mc") == "quadrature-m1" ? MomEstimator::quadrature_m1
                                                              : MomEstimator::mc;
  q.samples = cfg.get_int("samples", 400);
  q.grid_per_n = cfg.get_int("grid", 8);
  RngStream rng(cfg.seed);
  const MomEstimate est = mom_estimate(q, rng);
  t.columns = {"group", "n", "m", "alpha", "estimate", "se"};
  t.add_row({q.group.name(), std::to_string(q.group.n), std::to_string(q.m), fd(q.alpha),
             fd(est.value), fd(est.standard_error)});
  return t;
}

Table run_gmc(const RunConfig& cfg) {
  const std::string mode = cfg.get("mode", "measure");
  const double alpha = cfg.get_double("alpha", 0.3);
  const double beta_im = cfg.get_double("beta-im", 0.0);
  const int grid_size = cfg.get_int("grid", 256);
  RngStream rng(cfg.seed);
  Table t;
  if (mode == "truncated") {
    const int k = cfg.get_int("k", 64);
    const auto field = sample_gaussian_coefficients(k, cfg.get_int("shift", 0), rng);
    const auto mu = truncated_gmc(field, alpha, beta_im, uniform_grid(grid_size));
    t.columns = {"theta", "weight"};
    for (std::size_t i = 0; i < mu.thetas.size(); ++i)
      t.add_row({fd(mu.thetas[i]), fd(mu.weights[i])});
    return t;
  }
  if (mode == "measure") {
    const Group g = group_from_config(cfg);
    const auto norm = cfg.get("normalization", "determinant") == "mc"
                          ? GmcNormalization::mc
                          : GmcNormalization::determinant;
    auto grid = uniform_grid(grid_size, 0.5 + 0.1 * rng.uniform());
    const double eps = cfg.get_double("exclude-eps", 0.0);
    const auto mu = rm_gmc(g, alpha, beta_im, grid, norm, rng, cfg.get_int("samples", 2000));
    const auto mask = window_mask(grid, eps);
    t.columns = {"theta", "weight", "in_window"};
    for (std::size_t i = 0; i < mu.thetas.size(); ++i)
      t.add_row({fd(mu.thetas[i]), fd(mu.weights[i]), mask[i] ? "1" : "0"});
    return t;
  }
  if (mode == "mass-moment") {
    const int m = cfg.get_int("m", 2);
    const int count = cfg.get_int("samples", 200);
    const int k = cfg.get_int("k", 64);
    std::vector<DiscreteMeasure> measures;
    for (int i = 0; i < count; ++i) {
      const auto field = sample_gaussian_coefficients(k, 0, rng);
      measures.push_back(truncated_gmc(field, alpha, beta_im, uniform_grid(grid_size)));
    }
    const auto est = mass_moment(measures, m);
    t.columns = {"m", "alpha", "estimate", "se", "fb_reference"};
    double fb = 0.0;
    try {
      fb = fyodorov_bouchaud(m, alpha);
    } catch (const DivergenceSignal&) {
      fb = std::numeric_limits<double>::quiet_NaN();
    }
    t.add_row({std::to_string(m), fd(alpha), fd(est.value), fd(est.standard_error), fd(fb)});
    return t;
  }
  throw std::invalid_argument("gmc: unknown mode: " + mode);
}

Table run_ubm(const RunConfig& cfg) {
  const std::string mode = cfg.get("mode", "dyson");
  RngStream rng(cfg.seed);
  Table t;
  if (mode == "dyson") {
    const int n = cfg.get_int("n", 8);
    const DysonPath path = dyson_simulate(n, cfg.get_double("T", 1.0), cfg.get_double("dt", 0.01),
                                          rng);
    t.columns = {"t"};
    for (int j = 0; j < n; ++j) t.columns.push_back("theta_" + std::to_string(j + 1));
    for (std::size_t i = 0; i < path.times.size(); ++i) {
      std::vector<std::string> row{fd(path.times[i])};
      for (int j = 0; j < n; ++j) row.push_back(fd(path.angles[i][j]));
      t.add_row(std::move(row));
    }
    return t;
  }
  if (mode == "ou") {
    const int kmax = cfg.get_int("kmax", 8);
    const OUFieldPath path =
        ou_simulate(kmax, cfg.get_double("T", 1.0), cfg.get_double("dt", 0.01), rng);
    t.columns = {"t"};
    for (int k = 1; k <= kmax; ++k) {
      t.columns.push_back("re_A" + std::to_string(k));
      t.columns.push_back("im_A" + std::to_string(k));
    }
    for (std::size_t i = 0; i < path.times.size(); ++i) {
      std::vector<std::string> row{fd(path.times[i])};
      for (int k = 0; k < kmax; ++k) {
        row.push_back(fd(path.coefficients[i][k].real()));
        row.push_back(fd(path.coefficients[i][k].imag()));
      }
      t.add_row(std::move(row));
    }
    return t;
  }
  if (mode == "two-time-cov") {
    const int n = cfg.get_int("n", 8);
    const int k = cfg.get_int("k", 1);
    t.columns = {"n", "k", "t", "cov"};
    for (double tv : {0.0, 0.1, 0.5, 1.0, 2.0})
      t.add_row({std::to_string(n), std::to_string(k), fd(tv), fd(two_time_cov(n, k, tv))});
    return t;
  }
  if (mode == "sobolev") {
    const int n = cfg.get_int("n", 8);
    const DysonPath path = dyson_simulate(n, cfg.get_double("T", 1.0), cfg.get_double("dt", 0.01),
                                          rng);
    const auto field = log_charpoly_modes(path, cfg.get_int("kmax", 64));
    const double s = cfg.get_double("s", 0.0);
    const double eps = cfg.get_double("eps", 0.6);
    t.columns = {"n", "s", "eps", "norm_sq"};
    t.add_row({std::to_string(n), fd(s), fd(eps), fd(sobolev_norm_squared(field, s, eps))});
    return t;
  }
  throw std::invalid_argument("ubm: unknown mode: " + mode);
}

std::vector<long> parse_sigma(const std::string& text) {
  std::vector<long> sigma;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) sigma.push_back(std::stol(item));
  if (sigma.empty()) throw std::invalid_argument("wick: empty sigma list");
  return sigma;
}

Table run_wick(const RunConfig& cfg) {
  const std::vector<long> sigma = parse_sigma(cfg.get("sigma", "1"));
  const int n = cfg.get_int("n", 5);
  const int samples = cfg.get_int("samples", 2000);
  RngStream rng(cfg.seed);
  bool used_fallback = false;
  const double exact = wick_rhs(sigma, n, &rng, 4000, &used_fallback);
  WickReport mc = wick_mc(sigma, n, samples, rng);
  Table t;
  t.columns = {"j", "sigma", "n", "exact", "exact_is_ds", "mc", "se"};
  std::string sig_text;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    sig_text += (i ? ";" : "") + std::to_string(sigma[i]);
  t.add_row({std::to_string(sigma.size()), sig_text, std::to_string(n), fd(exact),
             used_fallback ? "0" : "1", fd(mc.mc), fd(mc.se)});
  return t;
}

Table dispatch(const RunConfig& cfg);

Table run_sweep(const RunConfig& cfg) {
  const std::string axis = cfg.get("axis");
  if (axis.empty()) throw std::invalid_argument("sweep: 'axis' is required");
  const std::string values = cfg.get("values");
  std::vector<std::string> value_list;
  {
    std::stringstream ss(values);
    std::string item;
    while (std::getline(ss, item, ',')) value_list.push_back(item);
  }
  RunConfig inner = cfg;
  inner.subcommand = cfg.get("run");
  if (inner.subcommand.empty()) throw std::invalid_argument("sweep: 'run' is required");
  inner.params.erase("axis");
  inner.params.erase("values");
  inner.params.erase("run");

  Table out;
  out.columns = {axis};
  for (const auto& v : value_list) {
    inner.params[axis] = v;
    const Table row_table = dispatch(inner);
    if (out.columns.size() == 1)
      for (const auto& c : row_table.columns) out.columns.push_back(c);
    for (const auto& row : row_table.rows) {
      std::vector<std::string> full{v};
      full.insert(full.end(), row.begin(), row.end());
      out.add_row(std::move(full));
    }
  }
  return out;
}

Table dispatch(const RunConfig& cfg) {
  if (cfg.subcommand == "sample") return run_sample(cfg);
  if (cfg.subcommand == "det") return run_det(cfg);
  if (cfg.subcommand == "identity-check") return run_identity_check(cfg);
  if (cfg.subcommand == "asym") return run_asym(cfg);
  if (cfg.subcommand == "painleve") return run_painleve(cfg);
  if (cfg.subcommand == "mom") return run_mom(cfg);
  if (cfg.subcommand == "gmc") return run_gmc(cfg);
  if (cfg.subcommand == "ubm") return run_ubm(cfg);
  if (cfg.subcommand == "wick") return run_wick(cfg);
  if (cfg.subcommand == "sweep") return run_sweep(cfg);
  throw std::invalid_argument("unknown subcommand: " + cfg.subcommand);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    RunConfig cfg;
    if (const char* env_seed = std::getenv("RMTLAB_SEED")) cfg.seed = std::stoull(env_seed);

    int i = 1;
    if (i < argc && argv[i][0] != '-') cfg.subcommand = argv[i++];
    for (; i < argc; ++i) {
      std::string arg = argv[i];
      if (arg.rfind("--", 0) != 0) {
        std::cerr << "error: expected --key value, got: " << arg << "\n";
        return 2;
      }
      arg = arg.substr(2);
      if (i + 1 >= argc) {
        std::cerr << "error: missing value for --" << arg << "\n";
        return 2;
      }
      const std::string value = argv[++i];
      if (arg == "config") {
        RunConfig file_cfg = RunConfig::from_file(value);
        // file provides defaults; command line wins
        if (cfg.subcommand.empty()) cfg.subcommand = file_cfg.subcommand;
        for (const auto& [k, v] : file_cfg.params)
          if (!cfg.params.count(k)) cfg.params[k] = v;
        if (cfg.seed == 0) cfg.seed = file_cfg.seed;
        if (cfg.output.empty()) cfg.output = file_cfg.output;
        if (file_cfg.format != "csv") cfg.format = file_cfg.format;
      } else {
        cfg.apply_override(arg, value);
      }
    }
    if (cfg.subcommand.empty()) {
      std::cerr << "usage: rmtlab <sample|det|identity-check|asym|painleve|mom|gmc|ubm|wick|sweep>"
                   " [--config file] [--key value ...]\n";
      return 2;
    }
    const Table table = dispatch(cfg);
    write_table(cfg, table, kVersion);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
