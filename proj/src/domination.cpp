#include "evdom/domination.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "evdom/errors.hpp"

namespace evdom {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_same_dim(const Generator& a, const Generator& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "generators have dimensions " + std::to_string(a.dim()) + " and " +
                    std::to_string(b.dim()));
  }
}

void require_u(const Generator& a, const ComparisonVector& u) {
  if (u.size() != a.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "comparison vector length differs from generators");
  }
}

double parse_field(std::string_view text, double fallback) {
  if (text.empty()) return fallback;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kParse, "grid: cannot parse '" + std::string(text) + "'");
  }
  return v;
}

// Smallest positive distance from the spectral bound to the rest of the spectrum.
double second_gap(const Spectrum& s) {
  const auto values = s.values();
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double d = s.spb - values[k].real();
    if (d > 0.0) gap = std::min(gap, d);
  }
  return gap;
}

double min_nonreal_imag(const Spectrum& s, double tol) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& v : s.values()) {
    if (std::abs(v.imag()) > tol) m = std::min(m, std::abs(v.imag()));
  }
  return m;
}

}  // namespace

SemigroupEvaluator::SemigroupEvaluator(const Generator& g, const Tolerances& tol) : g_(g) {
  if (g_.self_adjoint) eig_ = eig_weighted_symmetric(g_.matrix, *g_.weight, tol);
}

Matrix SemigroupEvaluator::at(double t) const {
  if (!eig_) return expm(g_.matrix, t);
  Matrix e = expm_spectral(*eig_, t);
  if (!e.allFinite()) throw Error(ErrorCode::kOverflow, "e^{tA} overflowed at t = " + std::to_string(t));
  return e;
}

GridSpec GridSpec::parse(std::string_view text) {
  GridSpec spec;
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) {
    throw Error(ErrorCode::kParse, "grid must look like tmin:tmax:points");
  }
  spec.t_min = parse_field(parts[0], spec.t_min);
  spec.t_max = parse_field(parts[1], spec.t_max);
  const double points = parse_field(parts[2], spec.points);
  if (points < 2 || points != std::floor(points)) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs an integer number of points >= 2");
  }
  spec.points = static_cast<int>(points);
  if (spec.t_max >= 0.0 && spec.t_min > spec.t_max) {
    throw Error(ErrorCode::kInvalidArgument, "grid has tmin > tmax");
  }
  return spec;
}

std::vector<double> make_grid(const GridSpec& spec, double default_t_max) {
  if (spec.points < 2) throw Error(ErrorCode::kInvalidArgument, "grid needs at least 2 points");
  const double t_max = spec.t_max >= 0.0 ? spec.t_max : default_t_max;
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs a positive finite tmax");
  }
  const double t_min = spec.t_min < 0.0 ? std::min(1e-3, t_max / 100.0) : spec.t_min;
  if (t_min > t_max) throw Error(ErrorCode::kInvalidArgument, "grid has tmin > tmax");
  std::vector<double> grid(static_cast<std::size_t>(spec.points));
  const double last = spec.points - 1;
  for (int k = 0; k < spec.points; ++k) {
    if (t_min > 0.0) {
      grid[static_cast<std::size_t>(k)] = t_min * std::pow(t_max / t_min, k / last);
    } else {
      grid[static_cast<std::size_t>(k)] = t_max * (k / last);
    }
  }
  grid.back() = t_max;
  return grid;
}

bool check_all_time_domination(const Generator& a, const Generator& b, const Tolerances& tol) {
  require_same_dim(a, b);
  if (!is_metzler(a, tol.metzler) || !is_metzler(b, tol.metzler)) {
    throw Error(ErrorCode::kNotPositiveSemigroup,
                "the entrywise criterion needs Metzler generators");
  }
  return operator_leq(a.matrix, b.matrix, tol.order);
}

bool nonnegative_within(double min_entry, double max_abs_entry, double scale,
                        const Tolerances& tol) {
  return min_entry >= -std::max(64.0 * kEps * scale, tol.crossover * max_abs_entry);
}

double default_horizon(const Generator& a, const Generator& b, const Tolerances& tol) {
  const Spectrum sa = compute_spectrum(a, tol);
  const Spectrum sb = compute_spectrum(b, tol);
  const double diff = std::abs(sb.spb - sa.spb);
  if (diff > tol.gap_tol(std::max(std::abs(sa.spb), std::abs(sb.spb)))) return 20.0 / diff;
  const double gap = std::min(second_gap(sa), second_gap(sb));
  if (std::isfinite(gap) && gap > 0.0) return 20.0 / gap;
  return 50.0;
}

EmpiricalReport empirical_crossover(const Generator& a, const Generator& b,
                                    const GridSpec& grid, const Tolerances& tol) {
  require_same_dim(a, b);
  const double horizon = grid.t_max >= 0.0 ? grid.t_max : default_horizon(a, b, tol);
  EmpiricalReport report;
  report.grid = make_grid(grid, horizon);
  report.samples_tested = static_cast<std::size_t>(a.dim());
  const SemigroupEvaluator ea(a, tol);
  const SemigroupEvaluator eb(b, tol);

  std::optional<std::size_t> last_fail;
  for (std::size_t k = 0; k < report.grid.size(); ++k) {
    const double t = report.grid[k];
    const Matrix pa = ea.at(t);
    const Matrix pb = eb.at(t);
    const Matrix d = pb - pa;
    Eigen::Index i = 0;
    Eigen::Index j = 0;
    const double min_entry = d.minCoeff(&i, &j);
    const bool ok =
        nonnegative_within(min_entry, max_abs(d), std::max(max_abs(pa), max_abs(pb)), tol);
    report.per_time_min_entry.push_back(min_entry);
    report.nonnegative.push_back(ok);
    if (!ok) {
      last_fail = k;
      Witness w;
      w.x = Vector::Unit(a.dim(), j);
      w.t = t;
      w.coordinate = i;
      w.violation = min_entry;
      report.witness = std::move(w);
    }
  }
  if (!last_fail) {
    report.crossover = report.grid.front();
    report.witness.reset();
  } else if (*last_fail + 1 < report.grid.size()) {
    report.crossover = report.grid[*last_fail + 1];
    report.witness.reset();
  }
  return report;
}

CertifiedTimeReport certify_uniform_time(const Generator& a, const Generator& b,
                                         const ComparisonVector& u,
                                         const CertifyOptions& options,
                                         const Tolerances& tol) {
  require_same_dim(a, b);
  require_u(a, u);
  if (!a.self_adjoint || !b.self_adjoint) {
    throw Error(ErrorCode::kNotSelfAdjoint, "certified times need self-adjoint generators");
  }
  const EigenDecomposition eb = eig_weighted_symmetric(b.matrix, *b.weight, tol);
  const EigenDecomposition ea = eig_weighted_symmetric(a.matrix, *a.weight, tol);
  const double s = eb.values[0];
  const double spb_a = ea.values[0];
  if (s - spb_a <= tol.gap_tol(std::max(std::abs(s), std::abs(spb_a)))) {
    throw Error(ErrorCode::kSpectralOrderViolated,
                "spb(B) = " + std::to_string(s) + " does not exceed spb(A) = " +
                    std::to_string(spb_a));
  }
  const Eigen::Index n = b.dim();
  if (n > 1 && s - eb.values[1] <= tol.gap_tol(s)) {
    throw Error(ErrorCode::kNoGap, "spb(B) is not separated from the rest of the spectrum");
  }

  Vector f0 = eb.vectors.col(0);
  if (f0.sum() < 0.0) f0 = -f0;
  const double c = (f0.array() / u.values().array()).minCoeff();
  if (!(c > tol.pos)) {
    throw Error(ErrorCode::kNoStrongPositivity,
                "ground state of B has margin " + std::to_string(c) + " over u");
  }

  const Vector& wa = a.weight->values();
  const Vector& wb = b.weight->values();
  CertifiedTimeReport r;
  r.shift = s;
  r.c = c;
  r.delta = c * c / 2.0;
  r.paper_faithful = options.paper_faithful;
  r.weight_ratio = (wa.array() / wb.array()).maxCoeff();
  r.weight = wb;
  const auto uniform = [&](const Vector& w) {
    return (u.values().array() * w.array().sqrt()).inverse().maxCoeff();
  };
  r.M = std::max(uniform(wa), uniform(wb));
  const double m2 = r.M * r.M;

  for (Eigen::Index k = 1; k < n; ++k) {
    const double g = gauge_norm(eb.vectors.col(k), u);
    r.b_terms.push_back({s - eb.values[k], options.paper_faithful ? m2 : g * g});
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double g = gauge_norm(ea.vectors.col(k), u);
    r.a_terms.push_back({s - ea.values[k], options.paper_faithful ? m2 : g * g});
  }

  const double target = r.delta;
  if (certificate_series(r, 0.0) <= target) {
    r.t1 = 0.0;
  } else {
    double lo = 0.0;
    double hi = 1.0;
    while (certificate_series(r, hi) > target) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) throw Error(ErrorCode::kNoConvergence, "series never drops below c^2/2");
    }
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (certificate_series(r, mid) > target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    r.t1 = hi;
  }
  r.series_value_at_t1 = certificate_series(r, r.t1);
  return r;
}

double certificate_series(const CertifiedTimeReport& report, double t) {
  double b = 0.0;
  for (const auto& m : report.b_terms) b += std::exp(-t * m.rate) * m.gauge_sq;
  double a = 0.0;
  for (const auto& m : report.a_terms) a += std::exp(-t * m.rate) * m.gauge_sq;
  return b + report.weight_ratio * a;
}

std::vector<VerificationPoint> verify_certificate(const Generator& a, const Generator& b,
                                                  const ComparisonVector& u,
                                                  const CertifiedTimeReport& report,
                                                  const std::vector<double>& times,
                                                  const Tolerances& tol) {
  require_same_dim(a, b);
  require_u(a, u);
  const SemigroupEvaluator ea(a, tol);
  const SemigroupEvaluator eb(b, tol);
  const Vector wu = report.weight.cwiseProduct(u.values());
  std::vector<VerificationPoint> out;
  for (double t : times) {
    const Matrix bound = std::exp(report.shift * t) * report.delta * u.values() * wu.transpose();
    out.push_back({t, (eb.at(t) - ea.at(t) - bound).minCoeff()});
  }
  return out;
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::kIdentical: return "Identical";
    case VerdictKind::kDominatesForAllT: return "DominatesForAllT";
    case VerdictKind::kEventuallyDominates: return "EventuallyDominates";
    case VerdictKind::kNeverEventuallyDominates: return "NeverEventuallyDominates";
    case VerdictKind::kHypothesesNotVerified: return "HypothesesNotVerified";
  }
  return "Unknown";
}

std::optional<Witness> find_witness(const Generator& a, const Generator& b, double t_end,
                                    int points, std::uint64_t seed, int random_candidates,
                                    const Tolerances& tol) {
  require_same_dim(a, b);
  const Eigen::Index n = a.dim();
  Matrix candidates(n, n + random_candidates);
  candidates.leftCols(n).setIdentity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.05, 1.0);
  for (int r = 0; r < random_candidates; ++r) {
    for (Eigen::Index i = 0; i < n; ++i) candidates(i, n + r) = dist(rng);
  }

  const SemigroupEvaluator ea(a, tol);
  const SemigroupEvaluator eb(b, tol);
  for (int k = points; k >= 1; --k) {
    const double t = t_end * k / points;
    const Matrix d = (eb.at(t) - ea.at(t)) * candidates;
    Eigen::Index i = 0;
    Eigen::Index j = 0;
    const double v = d.minCoeff(&i, &j);
    if (v < -tol.witness) {
      Witness w;
      w.x = candidates.col(j);
      w.t = t;
      w.coordinate = i;
      w.violation = v;
      return w;
    }
  }
  return std::nullopt;
}

DominationVerdict decide_eventual_domination(const Generator& a, const Generator& b,
                                             const ComparisonVector& u,
                                             const DecideOptions& options,
                                             const Tolerances& tol) {
  require_same_dim(a, b);
  require_u(a, u);
  DominationVerdict v;
  const Spectrum sa = compute_spectrum(a, tol);
  const Spectrum sb = compute_spectrum(b, tol);
  v.spb_a = sa.spb;
  v.spb_b = sb.spb;

  HypothesisReport& h = v.hypotheses;
  h.a_metzler = is_metzler(a, tol.metzler);
  h.b_metzler = is_metzler(b, tol.metzler);
  h.a_self_adjoint = a.self_adjoint;
  h.b_self_adjoint = b.self_adjoint;
  h.common_weight = a.weight && b.weight &&
                    (a.weight->values() - b.weight->values()).cwiseAbs().maxCoeff() <=
                        1e-12 * a.weight->values().cwiseAbs().maxCoeff();

  if (max_abs(a.matrix - b.matrix) <= tol.identical * (1.0 + max_abs(a.matrix))) {
    v.kind = VerdictKind::kIdentical;
    return v;
  }

  if (h.a_metzler && h.b_metzler && operator_leq(a.matrix, b.matrix, tol.order)) {
    v.kind = VerdictKind::kDominatesForAllT;
    v.empirical_t1 = 0.0;
    return v;
  }

  const CertificateOutcome ca = eventual_strong_positivity_certificate(a, u, tol);
  h.a_certified = static_cast<bool>(ca);
  h.a_refusal = ca.reason;
  h.a_detail = ca.detail;
  const CertificateOutcome cb = eventual_strong_positivity_certificate(b, u, tol);
  h.b_certified = static_cast<bool>(cb);
  h.b_refusal = cb.reason;
  h.b_detail = cb.detail;

  if (!h.verified()) {
    v.kind = VerdictKind::kHypothesesNotVerified;
    return v;
  }

  const double gap_tol = tol.gap_tol(std::max(std::abs(sa.spb), std::abs(sb.spb)));
  if (sb.spb > sa.spb + gap_tol) {
    v.kind = VerdictKind::kEventuallyDominates;
    if (options.attach_certificate && a.self_adjoint && b.self_adjoint) {
      try {
        const CertifiedTimeReport r =
            certify_uniform_time(a, b, u, CertifyOptions{options.paper_faithful}, tol);
        v.certified_t1 = r.t1;
        v.certified_delta = r.delta;
      } catch (const Error& e) {
        v.notes.emplace_back(std::string("no certified time: ") + e.what());
      }
    }
    if (options.attach_empirical) {
      const EmpiricalReport r = empirical_crossover(a, b, options.grid, tol);
      if (r.crossover) {
        v.empirical_t1 = r.crossover;
      } else {
        v.notes.emplace_back("no empirical crossover on the grid");
      }
    }
    return v;
  }

  v.kind = VerdictKind::kNeverEventuallyDominates;
  const double ptol = tol.peripheral_tol(std::max(std::abs(sa.spb), std::abs(sb.spb)));
  const double imag = std::min(min_nonreal_imag(sa, ptol), min_nonreal_imag(sb, ptol));
  double window = 50.0;
  if (std::isfinite(imag)) {
    window = 4.0 * std::numbers::pi / imag;
  } else {
    const double gap = std::min(second_gap(sa), second_gap(sb));
    if (std::isfinite(gap) && gap > 0.0) window = 20.0 / gap;
  }
  if (options.grid.t_max > 0.0) window = options.grid.t_max;
  v.witness = find_witness(a, b, window, 200, options.seed, options.random_candidates, tol);
  if (!v.witness) v.notes.emplace_back("no witness found on [0, " + std::to_string(window) + "]");
  return v;
}

std::string_view to_string(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::kCoincide: return "Coincide";
    case OrbitKind::kADominatesEverywhere: return "ADominatesEverywhere";
    case OrbitKind::kBDominatesEverywhere: return "BDominatesEverywhere";
    case OrbitKind::kAEventually: return "AEventually";
    case OrbitKind::kBEventually: return "BEventually";
    case OrbitKind::kIncomparable: return "Incomparable";
  }
  return "Unknown";
}

OrbitReport orbit_compare(const Generator& a, const Generator& b, const Vector& x,
                          const GridSpec& grid, const Tolerances& tol) {
  require_same_dim(a, b);
  if (x.size() != a.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "orbit vector length differs from generators");
  }
  if (!x.allFinite() || (x.array() < 0.0).any() || (x.array() == 0.0).all()) {
    throw Error(ErrorCode::kNonPositiveInput, "orbit vector must be >= 0 and nonzero");
  }
  const double horizon = grid.t_max >= 0.0 ? grid.t_max : default_horizon(a, b, tol);
  OrbitReport r;
  r.grid = make_grid(grid, horizon);
  const SemigroupEvaluator ea(a, tol);
  const SemigroupEvaluator eb(b, tol);

  std::vector<bool> a_ok;
  std::vector<bool> b_ok;
  for (double t : r.grid) {
    const Vector ya = ea.at(t) * x;
    const Vector yb = eb.at(t) * x;
    const Vector d = yb - ya;
    const double scale = std::max(ya.lpNorm<Eigen::Infinity>(), yb.lpNorm<Eigen::Infinity>());
    const double big = d.lpNorm<Eigen::Infinity>();
    Eigen::Index imin = 0;
    Eigen::Index imax = 0;
    const double lo = d.minCoeff(&imin);
    const double hi = d.maxCoeff(&imax);
    r.min_difference.push_back(lo);
    r.max_difference.push_back(hi);
    b_ok.push_back(nonnegative_within(lo, big, scale, tol));
    a_ok.push_back(nonnegative_within(-hi, big, scale, tol));
    if (!b_ok.back()) r.b_fails = Witness{x, t, imin, lo};
    if (!a_ok.back()) r.a_fails = Witness{x, t, imax, -hi};
  }

  const auto all = [](const std::vector<bool>& v) {
    return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
  };
  // index from which every sample passes, or size() when the last one fails
  const auto tail_start = [](const std::vector<bool>& v) {
    std::size_t k = v.size();
    while (k > 0 && v[k - 1]) --k;
    return k;
  };
  if (all(a_ok) && all(b_ok)) {
    r.kind = OrbitKind::kCoincide;
  } else if (all(a_ok)) {
    r.kind = OrbitKind::kADominatesEverywhere;
  } else if (all(b_ok)) {
    r.kind = OrbitKind::kBDominatesEverywhere;
  } else {
    const std::size_t ta = tail_start(a_ok);
    const std::size_t tb = tail_start(b_ok);
    if (tb < r.grid.size() && (ta >= r.grid.size() || tb <= ta)) {
      r.kind = OrbitKind::kBEventually;
      r.from_time = r.grid[tb];
    } else if (ta < r.grid.size()) {
      r.kind = OrbitKind::kAEventually;
      r.from_time = r.grid[ta];
    } else {
      r.kind = OrbitKind::kIncomparable;
    }
  }
  return r;
}

}  // namespace evdom
