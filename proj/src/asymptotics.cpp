#include "rmtlab/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "rmtlab/special_functions.hpp"

namespace rmtlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cdouble kI{0.0, 1.0};

struct KappaConstants {
  double q_slope;   // q = q_slope * n + q_const
  double q_const;
  double s_prime;
  double t_prime;
};

KappaConstants kappa_constants(int kappa) {
  switch (kappa) {
    case 1: return {-2.0, 2.0, -0.5, -0.5};
    case 2: return {0.0, 0.0, 0.5, 0.5};
    case 3: return {-1.0, 0.0, 0.5, -0.5};
    case 4: return {-1.0, 0.0, -0.5, 0.5};
    default: throw std::invalid_argument("kappa must be 1..4");
  }
}

cdouble v_plus_of(const std::map<long, cdouble>& v, double theta) {
  cdouble s = 0.0;
  for (const auto& [k, vk] : v)
    if (k >= 1) s += vk * std::polar(1.0, k * theta);
  return s;
}

cdouble v_minus_of(const std::map<long, cdouble>& v, double theta) {
  cdouble s = 0.0;
  for (const auto& [k, vk] : v)
    if (k <= -1) s += vk * std::polar(1.0, k * theta);
  return s;
}

cdouble szego_sum(const std::map<long, cdouble>& v) {
  cdouble s = 0.0;
  for (const auto& [k, vk] : v) {
    if (k < 1) continue;
    const auto it = v.find(-k);
    const cdouble vmk = (it == v.end()) ? cdouble(0.0) : it->second;
    s += static_cast<double>(k) * vk * vmk;
  }
  return s;
}

double chord(double theta_a, double theta_b) {
  return 2.0 * std::abs(std::sin(0.5 * (theta_a - theta_b)));
}

}  // namespace

EvenSymbolView EvenSymbolView::from(const FHSymbol& sym) {
  if (!sym.is_even(1e-9)) throw RegimeError("even symbol required");
  EvenSymbolView view;
  view.symbol = &sym;
  for (const auto& s : sym.singularities()) {
    if (s.theta < 1e-12) {
      view.alpha0 = s.alpha;
    } else if (std::abs(s.theta - kPi) < 1e-12) {
      view.alpha_pi = s.alpha;
    } else if (s.theta < kPi) {
      view.interior.push_back(s);
    }
    // conjugate copies in (pi, 2 pi) are implied by evenness
  }
  return view;
}

cdouble EvenSymbolView::v_plus(double theta) const { return v_plus_of(symbol->v(), theta); }
cdouble EvenSymbolView::v_minus(double theta) const { return v_minus_of(symbol->v(), theta); }

AsymptoticPrediction szego(const FHSymbol& sym, int n) {
  if (!sym.singularities().empty())
    throw RegimeError("szego: symbol has singularities; use the singular expansions");
  AsymptoticPrediction out;
  out.n = n;
  out.regime = Regime::szego;
  out.log_value = static_cast<double>(n) * sym.v_at(0) + szego_sum(sym.v());
  return out;
}

AsymptoticPrediction ehrhardt(const FHSymbol& sym, int n, double min_separation) {
  const auto& sing = sym.singularities();
  if (sing.empty()) return szego(sym, n);
  for (std::size_t j = 0; j < sing.size(); ++j)
    for (std::size_t k = j + 1; k < sing.size(); ++k)
      if (chord(sing[j].theta, sing[k].theta) < min_separation)
        throw RegimeError("ehrhardt: singularities merge; use the uniform/envelope evaluators");

  AsymptoticPrediction out;
  out.n = n;
  out.regime = Regime::separated;
  cdouble log_value = static_cast<double>(n) * sym.v_at(0) + szego_sum(sym.v());

  double sum_sq = 0.0;
  for (const auto& s : sing) sum_sq += s.alpha * s.alpha + s.beta_im * s.beta_im;
  log_value += std::log(static_cast<double>(n)) * sum_sq;

  for (const auto& s : sing) {
    const cdouble beta = kI * s.beta_im;
    log_value -= (s.alpha - beta) * v_plus_of(sym.v(), s.theta) +
                 (s.alpha + beta) * v_minus_of(sym.v(), s.theta);
  }

  for (std::size_t j = 0; j < sing.size(); ++j) {
    for (std::size_t k = j + 1; k < sing.size(); ++k) {
      const double bb = -sing[j].beta_im * sing[k].beta_im;  // Re of beta_j beta_k is -bj bk
      log_value += 2.0 * (bb - sing[j].alpha * sing[k].alpha) *
                   std::log(chord(sing[j].theta, sing[k].theta));
      // (alpha_j beta_k - alpha_k beta_j) log(z_k / (z_j e^{i pi})),
      // the log taken as i (theta_k - theta_j - pi).
      const cdouble cross =
          kI * (sing[j].alpha * sing[k].beta_im - sing[k].alpha * sing[j].beta_im);
      log_value += cross * kI * (sing[k].theta - sing[j].theta - kPi);
    }
  }

  for (const auto& s : sing) log_value += log_barnes_fh_factor(s.alpha, s.beta_im);
  out.log_value = log_value;
  return out;
}

AsymptoticPrediction dik_th(const FHSymbol& sym, int n, int kappa, double min_separation) {
  const EvenSymbolView view = EvenSymbolView::from(sym);
  for (std::size_t j = 0; j < view.interior.size(); ++j) {
    const auto& s = view.interior[j];
    if (chord(s.theta, 0.0) < min_separation || chord(s.theta, kPi) < min_separation)
      throw RegimeError("dik_th: singularity too close to +-1");
    for (std::size_t k = j + 1; k < view.interior.size(); ++k)
      if (chord(s.theta, view.interior[k].theta) < min_separation)
        throw RegimeError("dik_th: singularities merge; use the uniform/envelope evaluators");
  }
  const KappaConstants kc = kappa_constants(kappa);
  const double sp = kc.s_prime, tp = kc.t_prime;
  const double a0 = view.alpha0, api = view.alpha_pi;
  const double asum0 = a0 + api + sp + tp;
  const auto& v = sym.v();
  const cdouble v0 = sym.v_at(0);
  const cdouble v_at_1 = sym.v_eval(0.0);
  const cdouble v_at_m1 = sym.v_eval(kPi);

  AsymptoticPrediction out;
  out.n = n;
  out.kappa = kappa;
  out.regime = Regime::separated;

  cdouble log_value = static_cast<double>(n) * v0 +
                      0.5 * (asum0 * v0 - (a0 + sp) * v_at_1 - (api + tp) * v_at_m1 +
                             szego_sum(v));

  double interior_sq = 0.0;
  double sum_alpha = 0.0, sum_b = 0.0;
  for (const auto& s : view.interior) {
    interior_sq += s.alpha * s.alpha + s.beta_im * s.beta_im;
    sum_alpha += s.alpha;
    sum_b += s.beta_im;
  }

  for (const auto& s : view.interior) {
    const cdouble beta = kI * s.beta_im;
    log_value += (-s.alpha + beta) * view.v_plus(s.theta) +
                 (-s.alpha - beta) * view.v_minus(s.theta);
  }

  // e^{-i pi ((a0 + s' + sum alpha) sum beta + sum_{j<k} (a_j b_k - a_k b_j))}
  log_value += kPi * (a0 + sp + sum_alpha) * sum_b;
  double cross = 0.0;
  for (std::size_t j = 0; j < view.interior.size(); ++j)
    for (std::size_t k = j + 1; k < view.interior.size(); ++k)
      cross += view.interior[j].alpha * view.interior[k].beta_im -
               view.interior[k].alpha * view.interior[j].beta_im;
  log_value += kPi * cross;

  const double q = kc.q_slope * n + kc.q_const;
  log_value += std::log(2.0) * ((1.0 - sp - tp) * n + q + interior_sq - 0.5 * asum0 * asum0 +
                                0.5 * asum0);
  log_value += std::log(static_cast<double>(n)) *
               (0.5 * (a0 * a0 + api * api) + a0 * sp + api * tp + interior_sq);

  for (std::size_t j = 0; j < view.interior.size(); ++j) {
    for (std::size_t k = j + 1; k < view.interior.size(); ++k) {
      const auto& sj = view.interior[j];
      const auto& sk = view.interior[k];
      log_value -= 2.0 * (sj.alpha * sk.alpha + sj.beta_im * sk.beta_im) *
                   std::log(chord(sj.theta, sk.theta));
      log_value -= 2.0 * (sj.alpha * sk.alpha - sj.beta_im * sk.beta_im) *
                   std::log(chord(sj.theta, -sk.theta));
    }
  }

  const double a_tilde = 0.5 * asum0 + sum_alpha;
  for (const auto& s : view.interior) {
    log_value += -2.0 * a_tilde * s.beta_im * s.theta;  // z_j^{2 A beta_j}
    log_value -= (s.alpha * s.alpha - s.beta_im * s.beta_im) *
                 std::log(std::abs(2.0 * std::sin(s.theta)));  // |1 - z_j^2|
    log_value -= 2.0 * s.alpha * (a0 + sp) * std::log(chord(s.theta, 0.0));
    log_value -= 2.0 * s.alpha * (api + tp) * std::log(chord(s.theta, kPi));
  }

  log_value += 0.5 * (asum0 + 1.0) * std::log(kPi) + 2.0 * log_barnes_g(0.5) -
               log_barnes_g(1.0 + a0 + sp) - log_barnes_g(1.0 + api + tp);
  for (const auto& s : view.interior) log_value += log_barnes_fh_factor(s.alpha, s.beta_im);

  out.log_value = log_value;
  return out;
}

FHSymbol merging_symbol(double p, double t, const MergingSymbolParams& params,
                        const std::map<long, cdouble>& v) {
  if (!(p > 0.0 && p < kPi) || !(t > 0.0) || !(p - t > 0.0) || !(p + t < kPi))
    throw RegimeError("merging_symbol: need 0 < p - t and p + t < pi");
  std::vector<Singularity> s;
  if (params.alpha0 != 0.0) s.push_back({0.0, params.alpha0, 0.0});
  s.push_back({p - t, params.alpha1, params.b1});
  s.push_back({p + t, params.alpha2, params.b2});
  if (params.alpha3 != 0.0) s.push_back({kPi, params.alpha3, 0.0});
  s.push_back({kTwoPi - p - t, params.alpha2, -params.b2});
  s.push_back({kTwoPi - p + t, params.alpha1, -params.b1});
  return FHSymbol(v, std::move(s));
}

AsymptoticPrediction uniform_toeplitz(double p, double t, const MergingSymbolParams& params,
                                      const std::map<long, cdouble>& v, int n,
                                      const PainleveSolution& painleve) {
  if (!(p > 0.0 && p < kPi) || !(t > 0.0) || !(p - t > 0.0) || !(p + t < kPi))
    throw RegimeError("uniform_toeplitz: parameter domain violated");
  if (params.alpha1 + params.alpha2 <= -0.5)
    throw RegimeError("uniform_toeplitz: requires alpha1 + alpha2 > -1/2");

  struct Node {
    double theta, alpha, b;
  };
  const Node nodes[6] = {{0.0, params.alpha0, 0.0},
                         {p - t, params.alpha1, params.b1},
                         {p + t, params.alpha2, params.b2},
                         {kPi, params.alpha3, 0.0},
                         {kTwoPi - p - t, params.alpha2, -params.b2},
                         {kTwoPi - p + t, params.alpha1, -params.b1}};

  AsymptoticPrediction out;
  out.n = n;
  out.regime = Regime::merging;

  cdouble log_value = -2.0 * n * t * (params.b1 - params.b2);  // 2 i n t (beta1 - beta2)
  const auto it0 = v.find(0);
  const cdouble v0 = (it0 == v.end()) ? cdouble(0.0) : it0->second;
  log_value += static_cast<double>(n) * v0 + szego_sum(v);

  double sum_sq = 0.0;
  for (const auto& nd : nodes) sum_sq += nd.alpha * nd.alpha + nd.b * nd.b;
  log_value += std::log(static_cast<double>(n)) * sum_sq;

  for (const auto& nd : nodes) {
    const cdouble beta = kI * nd.b;
    log_value -= (nd.alpha - beta) * v_plus_of(v, nd.theta) +
                 (nd.alpha + beta) * v_plus_of(v, -nd.theta);
  }

  for (int j = 0; j < 6; ++j) {
    for (int k = j + 1; k < 6; ++k) {
      if ((j == 1 && k == 2) || (j == 4 && k == 5)) continue;
      const double bb = -nodes[j].b * nodes[k].b;
      log_value += 2.0 * (bb - nodes[j].alpha * nodes[k].alpha) *
                   std::log(chord(nodes[j].theta, nodes[k].theta));
      const cdouble cross = kI * (nodes[j].alpha * nodes[k].b - nodes[k].alpha * nodes[j].b);
      log_value += cross * kI * (nodes[k].theta - nodes[j].theta - kPi);
    }
  }

  log_value += -4.0 * t * (params.alpha1 * params.b2 - params.alpha2 * params.b1);

  log_value += 2.0 * log_integral(painleve, 2.0 * n * t);
  log_value += 4.0 * (-params.b1 * params.b2 - params.alpha1 * params.alpha2) *
               std::log(std::sin(t) / (n * t));

  log_value += log_barnes_fh_factor(params.alpha0, 0.0) +
               log_barnes_fh_factor(params.alpha3, 0.0) +
               2.0 * log_barnes_fh_factor(params.alpha1 + params.alpha2, params.b1 + params.b2);

  out.log_value = log_value;
  return out;
}

AsymptoticPrediction uniform_th(double p, double t, const MergingSymbolParams& params,
                                const std::map<long, cdouble>& v, int n, int kappa,
                                const PainleveSolution& painleve) {
  if (!(p > 0.0 && p < kPi) || !(t > 0.0) || !(p - t > 0.0) || !(p + t < kPi))
    throw RegimeError("uniform_th: parameter domain violated");
  const KappaConstants kc = kappa_constants(kappa);
  const double sp = kc.s_prime, tp = kc.t_prime;
  const double a0 = params.alpha0, api = params.alpha3;
  const double asum0 = a0 + api + sp + tp;
  const auto it0 = v.find(0);
  const cdouble v0 = (it0 == v.end()) ? cdouble(0.0) : it0->second;

  cdouble v_at_1 = 0.0, v_at_m1 = 0.0;
  for (const auto& [k, vk] : v) {
    v_at_1 += vk;
    v_at_m1 += vk * ((k % 2 == 0) ? 1.0 : -1.0);
  }

  struct Node {
    double theta, alpha, b;
  };
  const Node inner[2] = {{p - t, params.alpha1, params.b1}, {p + t, params.alpha2, params.b2}};

  AsymptoticPrediction out;
  out.n = n;
  out.kappa = kappa;
  out.regime = Regime::merging;

  cdouble log_value = -2.0 * n * t * (params.b1 - params.b2);
  log_value += static_cast<double>(n) * v0 +
               0.5 * (asum0 * v0 - (a0 + sp) * v_at_1 - (api + tp) * v_at_m1 + szego_sum(v));

  double interior_sq = 0.0;
  for (const auto& nd : inner) interior_sq += nd.alpha * nd.alpha + nd.b * nd.b;

  for (const auto& nd : inner) {
    const cdouble beta = kI * nd.b;
    log_value += (-nd.alpha + beta) * v_plus_of(v, nd.theta) +
                 (-nd.alpha - beta) * v_plus_of(v, -nd.theta);
  }
  log_value += kPi * (a0 + sp + params.alpha1 + params.alpha2) * (params.b1 + params.b2);

  const double q = kc.q_slope * n + kc.q_const;
  log_value += std::log(2.0) * ((1.0 - sp - tp) * n + q + interior_sq - 0.5 * asum0 * asum0 +
                                0.5 * asum0);
  log_value += std::log(static_cast<double>(n)) *
               (0.5 * (a0 * a0 + api * api) + a0 * sp + api * tp + interior_sq);

  const double aa_bb_minus = params.alpha1 * params.alpha2 + params.b1 * params.b2;
  const double aa_bb_plus = params.alpha1 * params.alpha2 - params.b1 * params.b2;
  log_value += -2.0 * aa_bb_minus * std::log(std::abs(std::sin(t) / (2.0 * n * t)));
  log_value += -2.0 * aa_bb_plus * std::log(std::abs(2.0 * std::sin(p)));
  log_value += log_integral(painleve, 4.0 * n * t);

  const double a_tilde = 0.5 * asum0 + params.alpha1 + params.alpha2;
  for (const auto& nd : inner) {
    log_value += -2.0 * a_tilde * nd.b * nd.theta;
    log_value -= (nd.alpha * nd.alpha - nd.b * nd.b) *
                 std::log(std::abs(2.0 * std::sin(nd.theta)));
    log_value -= 2.0 * nd.alpha * (a0 + sp) * std::log(chord(nd.theta, 0.0));
    log_value -= 2.0 * nd.alpha * (api + tp) * std::log(chord(nd.theta, kPi));
  }

  log_value += 0.5 * (asum0 + 1.0) * std::log(kPi) + 2.0 * log_barnes_g(0.5) -
               log_barnes_g(1.0 + a0 + sp) - log_barnes_g(1.0 + api + tp);
  log_value +=
      log_barnes_fh_factor(params.alpha1 + params.alpha2, params.b1 + params.b2);

  out.log_value = log_value;
  return out;
}

AsymptoticPrediction claeys_envelope(const std::vector<Singularity>& interior, double v0, int n,
                                     int kappa) {
  for (const auto& s : interior) {
    if (s.alpha < 0.0) throw DomainError("claeys_envelope: requires alpha_j >= 0");
    if (!(s.theta > 0.0 && s.theta < kPi))
      throw DomainError("claeys_envelope: interior singularities must lie in (0, pi)");
  }
  kappa_constants(kappa);  // validates kappa

  AsymptoticPrediction out;
  out.n = n;
  out.kappa = kappa;
  out.regime = Regime::envelope;

  const double invn = 1.0 / n;
  double log_value = n * v0;
  for (const auto& s : interior) {
    const double asq = s.alpha * s.alpha + s.beta_im * s.beta_im;  // alpha^2 - beta^2
    log_value += asq * std::log(static_cast<double>(n));
    const double abm = s.alpha - s.alpha * s.alpha + s.beta_im * s.beta_im;   // alpha - alpha^2 - beta^2
    const double abp = -s.alpha - s.alpha * s.alpha + s.beta_im * s.beta_im;  // -alpha - alpha^2 - beta^2
    switch (kappa) {
      case 1: log_value += abm * std::log(std::sin(s.theta) + invn); break;
      case 2: log_value += abp * std::log(std::sin(s.theta) + invn); break;
      case 3:
        log_value += abp * std::log(std::sin(0.5 * s.theta) + invn) +
                     abm * std::log(std::cos(0.5 * s.theta) + invn);
        break;
      case 4:
        log_value += abm * std::log(std::sin(0.5 * s.theta) + invn) +
                     abp * std::log(std::cos(0.5 * s.theta) + invn);
        break;
    }
  }
  for (std::size_t j = 0; j < interior.size(); ++j) {
    for (std::size_t k = j + 1; k < interior.size(); ++k) {
      const auto& sj = interior[j];
      const auto& sk = interior[k];
      log_value += -2.0 * (sj.alpha * sk.alpha + sj.beta_im * sk.beta_im) *
                   std::log(std::sin(std::abs(sj.theta - sk.theta) / 2.0) + invn);
      log_value += -2.0 * (sj.alpha * sk.alpha - sj.beta_im * sk.beta_im) *
                   std::log(std::sin(std::abs(sj.theta + sk.theta) / 2.0) + invn);
    }
  }
  out.log_value = log_value;
  return out;
}

double relation_lhs(const MergingSymbolParams& params) {
  return 2.0 * log_barnes_fh_factor(params.alpha1, params.b1) +
         2.0 * log_barnes_fh_factor(params.alpha2, params.b2) +
         2.0 * kPi * (params.alpha1 * params.b2 - params.alpha2 * params.b1);
}

double relation_rhs(const MergingSymbolParams& params, double nt,
                    const PainleveSolution& painleve) {
  return -2.0 * nt * (params.b1 - params.b2) + 2.0 * log_integral(painleve, 2.0 * nt) +
         4.0 * (-params.b1 * params.b2 - params.alpha1 * params.alpha2) *
             std::log(1.0 / (2.0 * nt)) +
         2.0 * log_barnes_fh_factor(params.alpha1 + params.alpha2, params.b1 + params.b2);
}

}  // namespace rmtlab
