#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evdom/semigroup.hpp"

namespace evdom {

/// e^{tA} for one generator; self-adjoint generators are evaluated from their
/// eigendecomposition, everything else through expm().
class SemigroupEvaluator {
 public:
  explicit SemigroupEvaluator(const Generator& g, const Tolerances& tol = {});
  Matrix at(double t) const;
  const Generator& generator() const { return g_; }

 private:
  Generator g_;
  std::optional<EigenDecomposition> eig_;
};

/// Sample times. t_min <= 0 gives a uniform grid starting at 0, t_min > 0 a
/// geometric one. Negative t_max means "pick from the spectral data".
struct GridSpec {
  double t_min = -1.0;  // < 0: auto; == 0: uniform from 0
  double t_max = -1.0;
  int points = 64;

  /// "tmin:tmax:points"; empty fields keep their defaults.
  static GridSpec parse(std::string_view text);
};

/// Resolves auto fields against `default_t_max` and returns the times.
std::vector<double> make_grid(const GridSpec& spec, double default_t_max);

struct Witness {
  Vector x;
  double t = 0.0;
  Eigen::Index coordinate = 0;
  double violation = 0.0;  // (e^{tB}x - e^{tA}x)_coordinate, negative
};

/// a_ij <= b_ij for Metzler A and B.
bool check_all_time_domination(const Generator& a, const Generator& b,
                               const Tolerances& tol = {});

struct EmpiricalReport {
  std::vector<double> grid;
  std::vector<double> per_time_min_entry;  // min entry of e^{tB} - e^{tA}
  std::vector<bool> nonnegative;           // sample passed the sign test
  std::optional<double> crossover;
  std::size_t samples_tested = 0;
  std::optional<Witness> witness;  // last failing entry when no crossover
};

/// Sign test used by the oracle: min_entry >= -max(64 eps scale, crossover * max|D|).
bool nonnegative_within(double min_entry, double max_abs_entry, double scale,
                        const Tolerances& tol = {});

EmpiricalReport empirical_crossover(const Generator& a, const Generator& b,
                                    const GridSpec& grid = {}, const Tolerances& tol = {});

/// Default t_max for the oracle: 20 / |spb(B) - spb(A)| when the bounds
/// differ, 20 / (smallest spectral gap) when they coincide, else 50.
double default_horizon(const Generator& a, const Generator& b, const Tolerances& tol = {});

struct ModeTerm {
  double rate = 0.0;      // mu_n or lambda_n after the shift
  double gauge_sq = 0.0;  // ||f_n||_u^2 (or the uniform M^2)
};

struct CertifyOptions {
  bool paper_faithful = false;
};

struct CertifiedTimeReport {
  double t1 = 0.0;
  double delta = 0.0;
  double c = 0.0;
  double M = 0.0;
  double series_value_at_t1 = 0.0;
  double shift = 0.0;
  double weight_ratio = 1.0;  // max_i w_A,i / w_B,i
  bool paper_faithful = false;
  std::vector<ModeTerm> b_terms;  // n >= 1
  std::vector<ModeTerm> a_terms;
  Vector weight;  // w_B, the weight in the rank-one lower bound
};

/// Certified uniform domination time for self-adjoint A and B.
///
/// For all t >= t1: e^{tB} - e^{tA} >= e^{st} delta u (w_B o u)^T entrywise,
/// with s = spb(B).
CertifiedTimeReport certify_uniform_time(const Generator& a, const Generator& b,
                                         const ComparisonVector& u,
                                         const CertifyOptions& options = {},
                                         const Tolerances& tol = {});

/// The series phi(t) of a report (tight or paper-faithful as recorded).
double certificate_series(const CertifiedTimeReport& report, double t);

struct VerificationPoint {
  double t = 0.0;
  double margin = 0.0;  // min entry of e^{tB} - e^{tA} - e^{st} delta u (w o u)^T
};

std::vector<VerificationPoint> verify_certificate(const Generator& a, const Generator& b,
                                                  const ComparisonVector& u,
                                                  const CertifiedTimeReport& report,
                                                  const std::vector<double>& times,
                                                  const Tolerances& tol = {});

enum class VerdictKind {
  kIdentical,
  kDominatesForAllT,
  kEventuallyDominates,
  kNeverEventuallyDominates,
  kHypothesesNotVerified,
};

std::string_view to_string(VerdictKind kind);

struct HypothesisReport {
  bool a_metzler = false;
  bool b_metzler = false;
  bool a_certified = false;
  RefusalReason a_refusal = RefusalReason::kNone;
  std::string a_detail;
  bool b_certified = false;
  RefusalReason b_refusal = RefusalReason::kNone;
  std::string b_detail;
  bool a_self_adjoint = false;
  bool b_self_adjoint = false;
  bool common_weight = false;

  bool a_eventually_positive() const { return a_metzler || a_certified; }
  bool verified() const { return a_eventually_positive() && b_certified; }
};

struct DominationVerdict {
  VerdictKind kind = VerdictKind::kHypothesesNotVerified;
  double spb_a = 0.0;
  double spb_b = 0.0;
  std::optional<double> certified_t1;
  std::optional<double> certified_delta;
  std::optional<double> empirical_t1;
  std::optional<Witness> witness;
  HypothesisReport hypotheses;
  std::vector<std::string> notes;
};

struct DecideOptions {
  GridSpec grid;
  std::uint64_t seed = 42;
  bool paper_faithful = false;
  int random_candidates = 8;
  bool attach_certificate = true;
  bool attach_empirical = true;
};

/// Does (e^{tB}) eventually dominate (e^{tA})?
DominationVerdict decide_eventual_domination(const Generator& a, const Generator& b,
                                             const ComparisonVector& u,
                                             const DecideOptions& options = {},
                                             const Tolerances& tol = {});

/// Latest time in `window` at which some candidate vector x >= 0 has
/// (e^{tB}x)_i < (e^{tA}x)_i - tol.witness. Candidates are the unit vectors
/// and `random_candidates` seeded positive vectors.
std::optional<Witness> find_witness(const Generator& a, const Generator& b, double t_end,
                                    int points, std::uint64_t seed, int random_candidates,
                                    const Tolerances& tol = {});

enum class OrbitKind {
  kCoincide,
  kADominatesEverywhere,
  kBDominatesEverywhere,
  kAEventually,
  kBEventually,
  kIncomparable,
};

std::string_view to_string(OrbitKind kind);

struct OrbitReport {
  OrbitKind kind = OrbitKind::kIncomparable;
  std::vector<double> grid;
  std::vector<double> min_difference;  // min_i (e^{tB}x - e^{tA}x)_i
  std::vector<double> max_difference;
  std::optional<double> from_time;  // start of the dominated tail for *Eventually
  std::optional<Witness> a_fails;   // latest time with e^{tA}x not >= e^{tB}x
  std::optional<Witness> b_fails;   // latest time with e^{tB}x not >= e^{tA}x
};

OrbitReport orbit_compare(const Generator& a, const Generator& b, const Vector& x,
                          const GridSpec& grid = {}, const Tolerances& tol = {});

}  // namespace evdom
