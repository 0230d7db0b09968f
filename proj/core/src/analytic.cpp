#include "skycell/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "skycell/model.hpp"

namespace skycell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxTruncation = 1e8;

static_assert(2 * kMaxFadingShape <= kMaxComponents, "Laplace integrand needs 2 * m components");

int type_index(LinkType xi) { return xi == LinkType::los ? 0 : 1; }

// Piecewise-constant antenna gain for the configured (non-randomized) network.
struct GainLayout {
  double main_lo = 0.0, main_hi = 0.0, r_max = kInf, g_main = 0.0, g_side = 0.0;

  explicit GainLayout(const Scenario& sc) {
    const Interval w = mainlobe_window(sc.h_bs(), sc.theta_t(), sc);
    main_lo = w.lo;
    main_hi = w.hi;
    r_max = sc.r_max();
    g_main = sc.g_main() * sc.ue_gain();
    g_side = sc.g_side() * sc.ue_gain();
  }

  double at(double r) const {
    if (!(r < r_max)) return 0.0;
    return (main_lo < r && r < main_hi) ? g_main : g_side;
  }
};

}  // namespace

double interference_tail_radius(const Scenario& sc, double rel_tol, double start_radius) {
  const double g_max = sc.g_main() * sc.ue_gain();
  const double dh2 = sc.delta_h() * sc.delta_h();
  const double bulk_end = std::max(start_radius, 2000.0);

  std::vector<double> pts;
  sc.los().append_breakpoints(0.0, bulk_end, pts);
  for (double x = 1000.0; x < bulk_end; x *= 2.0) pts.push_back(x);
  const auto edges = make_edges(std::move(pts), 0.0, bulk_end);
  auto f = [&](double r, double* out) {
    const double d2 = r * r + dh2;
    const double p = sc.los().at(r);
    out[0] = r * (p * sc.path_gain_ref(LinkType::los) * std::pow(d2, -sc.alpha(LinkType::los) / 2.0) +
                  (1.0 - p) * sc.path_gain_ref(LinkType::nlos) * std::pow(d2, -sc.alpha(LinkType::nlos) / 2.0));
  };
  const auto bulk = integrate_panels(f, edges, 1, 1e-6, 0.0, 4000);
  const double core = kTwoPi * sc.lambda() * sc.p_tx() * g_max * bulk.value[0];

  // Mean interference beyond `radius`, bounded with d >= r and a
  // non-increasing LoS probability.
  auto tail = [&](double radius) {
    double t = 0.0;
    const double p = sc.los().at(radius);
    if (p > 0.0) {
      const double al = sc.alpha(LinkType::los);
      if (al <= 2.0) return kInf;
      t += p * sc.path_gain_ref(LinkType::los) * std::pow(radius, 2.0 - al) / (al - 2.0);
    }
    const double an = sc.alpha(LinkType::nlos);
    if (an <= 2.0) return kInf;
    t += sc.path_gain_ref(LinkType::nlos) * std::pow(radius, 2.0 - an) / (an - 2.0);
    return kTwoPi * sc.lambda() * sc.p_tx() * g_max * t;
  };

  double radius = start_radius;
  while (tail(radius) > rel_tol * core) {
    radius *= 1.25;
    if (radius > kMaxTruncation) {
      throw NumericError("interference tail does not decay within the truncation cap", tail(radius) / core);
    }
  }
  return radius;
}

namespace {

class Engine {
 public:
  Engine(const Scenario& sc, const QuadratureSpec& quad, const AnalyticOptions& opts)
      : sc_(sc), quad_(quad), opts_(opts), gain_(sc), dh2_(sc.delta_h() * sc.delta_h()) {
    require_analytic_fading(sc.config());
    n0_ = opts.ignore_noise ? 0.0 : sc.n0();
    domain_end_ = interference_domain_end(sc, quad);
    if (quad.split_at_breakpoints) {
      sc.los().append_breakpoints(0.0, domain_end_, base_edges_);
      for (double x : {gain_.main_lo, gain_.main_hi}) {
        if (x > 0.0 && x < domain_end_) base_edges_.push_back(x);
      }
      if (!sc.is_drone()) {
        double x = std::max(1000.0, sc.los().table_extent());
        for (; x < domain_end_; x *= 2.0) base_edges_.push_back(x);
      }
    }
  }

  double density(LinkType xi, double r) const {
    const double p = sc_.los().at(r);
    if (xi == LinkType::los) return sc_.lambda() * p;
    return opts_.drop_nlos ? 0.0 : sc_.lambda() * (1.0 - p);
  }

  // Exact integral of lambda_xi(r) r over a set, stepping through the
  // piecewise-constant LoS probability.
  double density_mass(LinkType xi, const RegionSet& set) const {
    const double rate = sc_.los().step_rate();
    double total = 0.0;
    for (const auto& iv : set.intervals()) {
      double a = iv.lo;
      while (a < iv.hi) {
        double b = iv.hi;
        if (a < sc_.los().table_extent() || !sc_.los().cut_off()) {
          b = std::min(iv.hi, (std::floor(a * rate) + 1.0) / rate);
          if (!(b > a)) b = std::min(iv.hi, a + 1.0 / rate);
        }
        total += density(xi, 0.5 * (a + b)) * 0.5 * (b - a) * (b + a);
        a = b;
      }
    }
    return total;
  }

  double serving_pdf(const ServingContext& ctx, const StrongerSets& sets) const {
    const double lam = density(ctx.link, ctx.r_s);
    if (lam == 0.0) return 0.0;
    double exponent = 0.0;
    for (LinkType xi : kLinkTypes) exponent += density_mass(xi, sets.for_type(xi));
    return kTwoPi * lam * ctx.r_s * std::exp(-kTwoPi * exponent);
  }

  LaplaceEval laplace(const StrongerSets& sets, double s, int k_max) const {
    const std::size_t per_type = static_cast<std::size_t>(k_max) + 1;
    const RegionSet interferers[2] = {sets.no_los.complement(domain_end_), sets.no_nlos.complement(domain_end_)};

    std::vector<double> pts = base_edges_;
    for (const auto& set : interferers) {
      for (const auto& iv : set.intervals()) {
        pts.push_back(iv.lo);
        pts.push_back(iv.hi);
      }
    }
    const auto edges = make_edges(std::move(pts), 0.0, domain_end_);

    auto f = [&](double r, double* out) {
      const double g = gain_.at(r);
      const double d2 = r * r + dh2_;
      for (LinkType xi : kLinkTypes) {
        double* o = out + type_index(xi) * per_type;
        std::fill(o, o + per_type, 0.0);
        if (g == 0.0 || !interferers[type_index(xi)].contains(r)) continue;
        const double lam = density(xi, r);
        if (lam == 0.0) continue;
        const double c = sc_.p_tx() * g * sc_.path_gain_ref(xi) * std::pow(d2, -sc_.alpha(xi) / 2.0);
        const double m = sc_.fading_shape(xi);
        const double load = s * c / m;
        const double weight = lam * r;
        o[0] = weight * -std::expm1(-m * std::log1p(load));
        double factor = std::pow(1.0 + load, -m);
        const double ratio = -c / (m + s * c);
        for (std::size_t j = 1; j < per_type; ++j) {
          factor *= ratio * (m + static_cast<double>(j) - 1.0);
          o[j] = weight * factor;
        }
      }
    };

    const auto res = integrate_panels(f, edges, 2 * per_type, quad_.rel_tol, quad_.abs_tol, quad_.max_segments);
    if (!res.converged) throw NumericError("laplace_interference did not converge", res.worst_ratio * quad_.rel_tol);

    const double exponent = -kTwoPi * (res.value[0] + res.value[per_type]);
    std::vector<double> g_deriv(per_type, 0.0);
    for (std::size_t j = 1; j < per_type; ++j) g_deriv[j] = kTwoPi * (res.value[j] + res.value[per_type + j]);

    LaplaceEval out;
    out.value = std::exp(exponent);
    out.log_value = exponent;
    out.derivatives.assign(per_type, 0.0);
    out.derivatives[0] = out.value;
    // L = exp(G)  =>  L^(k) = sum_{j<k} C(k-1, j) G^(k-j) L^(j)
    for (std::size_t k = 1; k < per_type; ++k) {
      double acc = 0.0;
      double binom = 1.0;
      for (std::size_t j = 0; j < k; ++j) {
        acc += binom * g_deriv[k - j] * out.derivatives[j];
        binom = binom * static_cast<double>(k - 1 - j) / static_cast<double>(j + 1);
      }
      out.derivatives[k] = acc;
    }
    return out;
  }

  double conditional_coverage(const ServingContext& ctx, const StrongerSets& sets) const {
    const int m = sc_.fading_shape(ctx.link);
    const double s = laplace_argument(ctx, sc_);
    const LaplaceEval lt = laplace(sets, s, m - 1);
    const double noise_load = n0_ * s;

    // q_k L^(k) = e^{-N0 s} [s^k L^(k) / k!] sum_{j=k}^{m-1} (N0 s)^{j-k} / (j-k)!
    double total = 0.0;
    double s_pow_over_fact = 1.0;
    for (int k = 0; k < m; ++k) {
      if (k > 0) s_pow_over_fact *= s / k;
      double noise_series = 0.0;
      double term = 1.0;
      for (int j = k; j < m; ++j) {
        if (j > k) term *= noise_load / (j - k);
        noise_series += term;
      }
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      total += sign * s_pow_over_fact * lt.derivatives[static_cast<std::size_t>(k)] * noise_series;
    }
    return std::clamp(std::exp(-noise_load) * total, 0.0, 1.0);
  }

  // Outer integral over serving distances. `emit` receives (ctx, sets, pdf)
  // for each link type with non-zero density and writes its components.
  template <class Emit>
  QuadResult outer(std::size_t n, Emit&& emit) const {
    std::vector<double> pts;
    auto integrand = [&](double r, double* out) {
      std::fill(out, out + n, 0.0);
      if (gain_.at(r) == 0.0) return;
      for (LinkType v : kLinkTypes) {
        if (density(v, r) == 0.0) continue;
        const ServingContext ctx = make_serving(r, v, sc_);
        const StrongerSets sets = exclusion_sets(ctx, sc_);
        const double pdf = serving_pdf(ctx, sets);
        if (!(pdf > 1e-300)) continue;
        emit(ctx, sets, pdf, out);
      }
    };

    auto breakpoints = [&](double lo, double hi) {
      std::vector<double> p;
      if (quad_.split_at_breakpoints) {
        sc_.los().append_breakpoints(lo, hi, p);
        for (double x : {gain_.main_lo, gain_.main_hi}) p.push_back(x);
      }
      return make_edges(std::move(p), lo, hi);
    };

    if (sc_.is_drone()) {
      const auto edges = breakpoints(0.0, sc_.r_max());
      return checked(integrate_panels(integrand, edges, n, quad_.rel_tol, quad_.outer_abs_tol * 1e-2,
                                      quad_.max_segments));
    }

    // Ground users: extend outwards until a shell contributes no mass. The
    // mass component is expected at index `n - 1`.
    double hi = 2.0 * std::sqrt(30.0 / (std::numbers::pi * sc_.lambda()));
    for (double x : {gain_.main_lo, gain_.main_hi}) {
      if (std::isfinite(x)) hi = std::max(hi, x * 1.5);
    }
    QuadResult total =
        checked(integrate_panels(integrand, breakpoints(0.0, hi), n, quad_.rel_tol, quad_.outer_abs_tol * 1e-2,
                                 quad_.max_segments));
    for (int shell = 0; shell < 40; ++shell) {
      const double next = 2.0 * hi;
      const QuadResult part = checked(integrate_panels(integrand, breakpoints(hi, next), n, quad_.rel_tol,
                                                       quad_.outer_abs_tol * 1e-2, quad_.max_segments));
      for (std::size_t j = 0; j < n; ++j) {
        total.value[j] += part.value[j];
        total.error[j] += part.error[j];
      }
      hi = next;
      if (part.value[n - 1] < 1e-12) break;
    }
    return total;
  }

  double domain_end() const { return domain_end_; }
  const Scenario& scenario() const { return sc_; }

 private:
  QuadResult checked(QuadResult res) const {
    if (!res.converged) throw NumericError("outer coverage integral did not converge", res.worst_ratio);
    return res;
  }

  const Scenario& sc_;
  QuadratureSpec quad_;
  AnalyticOptions opts_;
  GainLayout gain_;
  double dh2_;
  double n0_ = 0.0;
  double domain_end_ = 0.0;
  std::vector<double> base_edges_;
};

}  // namespace

double interference_domain_end(const Scenario& sc, const QuadratureSpec& quad) {
  return sc.is_drone() ? sc.r_max() : interference_tail_radius(sc, quad.tail_rel_tol, quad.truncation_radius);
}

double upsilon(double r, double s, LinkType xi, const Scenario& sc) {
  const double c = sc.p_tx() * bs_gain(r, sc) * path_loss(r, xi, sc);
  const double m = sc.fading_shape(xi);
  return std::pow(m / (m + s * c), m);
}

std::vector<double> upsilon_derivatives(double r, double s, LinkType xi, const Scenario& sc, int k_max) {
  if (k_max < 0 || k_max > std::max(sc.fading_shape(LinkType::los), sc.fading_shape(LinkType::nlos)) - 1) {
    throw std::invalid_argument("upsilon_derivatives: k_max outside [0, max(m) - 1]");
  }
  const double c = sc.p_tx() * bs_gain(r, sc) * path_loss(r, xi, sc);
  const double m = sc.fading_shape(xi);
  std::vector<double> out(static_cast<std::size_t>(k_max) + 1);
  double factor = std::pow(m / (m + s * c), m);
  out[0] = factor;
  for (int j = 1; j <= k_max; ++j) {
    factor *= -c * (m + j - 1.0) / (m + s * c);
    out[static_cast<std::size_t>(j)] = factor;
  }
  return out;
}

double laplace_argument(const ServingContext& serving, const Scenario& sc) {
  return sc.fading_shape(serving.link) * sc.threshold() / serving.serving_signal;
}

double serving_pdf(const ServingContext& serving, const Scenario& sc, const AnalyticOptions& opts) {
  const Engine engine(sc, QuadratureSpec{}, opts);
  return engine.serving_pdf(serving, exclusion_sets(serving, sc));
}

LaplaceEval laplace_interference(const ServingContext& serving, double s, const Scenario& sc, int k_max,
                                 const QuadratureSpec& quad, const AnalyticOptions& opts) {
  if (s < 0.0) throw std::invalid_argument("laplace_interference: s must be >= 0");
  if (k_max < 0 || k_max >= kMaxFadingShape) throw std::invalid_argument("laplace_interference: bad k_max");
  const Engine engine(sc, quad, opts);
  return engine.laplace(exclusion_sets(serving, sc), s, k_max);
}

double conditional_coverage(const ServingContext& serving, const Scenario& sc, const QuadratureSpec& quad,
                            const AnalyticOptions& opts) {
  const Engine engine(sc, quad, opts);
  return engine.conditional_coverage(serving, exclusion_sets(serving, sc));
}

CoverageResult coverage_probability(const Scenario& sc, const QuadratureSpec& quad, const AnalyticOptions& opts) {
  const Engine engine(sc, quad, opts);
  // Components: LoS coverage, NLoS coverage, LoS mass, total mass.
  const auto res = engine.outer(4, [&](const ServingContext& ctx, const StrongerSets& sets, double pdf, double* out) {
    const double p = engine.conditional_coverage(ctx, sets);
    out[type_index(ctx.link)] += p * pdf;
    if (ctx.link == LinkType::los) out[2] += pdf;
    out[3] += pdf;
  });
  CoverageResult out;
  out.los_part = res.value[0];
  out.nlos_part = res.value[1];
  out.probability = std::clamp(res.value[0] + res.value[1], 0.0, 1.0);
  out.serving_mass = std::min(res.value[3], 1.0);
  out.no_server = 1.0 - out.serving_mass;
  out.abs_error = res.error[0] + res.error[1];
  return out;
}

CoverageResult drone_coverage_approx(const Scenario& sc, const QuadratureSpec& quad) {
  if (!sc.is_drone()) throw std::invalid_argument("drone_coverage_approx: requires a drone user");
  return coverage_probability(sc, quad, AnalyticOptions{.drop_nlos = true, .ignore_noise = true});
}

double mean_conditional_interference(const ServingContext& serving, const Scenario& sc, const QuadratureSpec& quad) {
  const Engine engine(sc, quad, {});
  const LaplaceEval lt = engine.laplace(exclusion_sets(serving, sc), 0.0, 1);
  return -lt.derivatives[1];
}

ServingSummary serving_summary(const Scenario& sc, const QuadratureSpec& quad) {
  const Engine engine(sc, quad, {});
  // Components: LoS mass, r-weighted mass, interference-weighted mass, mass.
  const auto res = engine.outer(4, [&](const ServingContext& ctx, const StrongerSets& sets, double pdf, double* out) {
    const LaplaceEval lt = engine.laplace(sets, 0.0, 1);
    if (ctx.link == LinkType::los) out[0] += pdf;
    out[1] += ctx.r_s * pdf;
    out[2] += -lt.derivatives[1] * pdf;
    out[3] += pdf;
  });
  ServingSummary s;
  s.mass = res.value[3];
  if (s.mass > 0.0) {
    s.los_share = res.value[0] / s.mass;
    s.mean_distance = res.value[1] / s.mass;
    s.mean_interference = res.value[2] / s.mass;
  }
  return s;
}

}  // namespace skycell
