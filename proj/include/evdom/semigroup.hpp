#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "evdom/linalg.hpp"
#include "evdom/tolerances.hpp"

namespace evdom {

/// The matrix whose exponential family e^{tA} is analyzed.
///
/// `self_adjoint` is true iff a weight is present and diag(w) * matrix passes
/// the symmetry check. Metric-graph generators also record which rows are
/// vertex degrees of freedom so that vertices can be identified later.
struct Generator {
  Matrix matrix;
  std::optional<WeightVector> weight;
  std::string label;
  bool self_adjoint = false;
  std::vector<Eigen::Index> vertex_dofs;
  std::vector<std::string> warnings;

  static Generator make(Matrix matrix, std::optional<WeightVector> weight = std::nullopt,
                        std::string label = {}, const Tolerances& tol = {});

  Eigen::Index dim() const { return matrix.rows(); }
  /// The weight, or all ones when none was given.
  WeightVector weight_or_ones() const;
};

/// Strictly positive comparison vector u. Defines the gauge norm
/// ||f||_u = max_i |f_i| / u_i and the margin order f >>_u 0.
class ComparisonVector {
 public:
  explicit ComparisonVector(Vector u);
  static ComparisonVector ones(Eigen::Index n) { return ComparisonVector(Vector::Ones(n)); }

  const Vector& values() const { return u_; }
  Eigen::Index size() const { return u_.size(); }

 private:
  Vector u_;
};

struct Spectrum {
  std::variant<GeneralSpectrum, EigenDecomposition> data;
  double spb = 0.0;
  std::vector<Complex> peripheral;

  /// All eigenvalues, descending real part.
  std::vector<Complex> values() const;
};

Spectrum compute_spectrum(const Generator& g, const Tolerances& tol = {});

double spectral_bound(const Generator& g, const Tolerances& tol = {});

bool is_metzler(const Generator& g, double tol = Tolerances{}.metzler);
bool is_metzler(const Matrix& a, double tol = Tolerances{}.metzler);

double gauge_norm(const Vector& f, const ComparisonVector& u);

/// epsilon* = min_i f_i / u_i when positive; empty otherwise.
std::optional<double> strongly_positive_margin(const Vector& f, const ComparisonVector& u);

struct PerronCertificate {
  double s = 0.0;     // spectral bound, a real dominant eigenvalue
  Vector right;       // w-normalized, entrywise > 0
  Vector left;        // eigenvector of W^{-1} A^T W, scaled so <left, right>_w = 1
  double gap = 0.0;   // s - max{Re l : l in spectrum, l != s}
  double right_residual = 0.0;
  double left_residual = 0.0;
  double right_margin = 0.0;  // min_i right_i / u_i
  double left_margin = 0.0;   // min_i left_i / u_i
};

enum class RefusalReason { kNone, kNonDominant, kNonSimple, kEigenvectorNotPositive };

std::string_view to_string(RefusalReason r);

struct CertificateOutcome {
  std::optional<PerronCertificate> certificate;
  RefusalReason reason = RefusalReason::kNone;
  std::string detail;

  explicit operator bool() const { return certificate.has_value(); }
};

/// Checks the sufficient conditions for eventual strong positivity with
/// respect to u: the spectral bound is a real eigenvalue separated from the
/// rest of the spectrum by more than gap_tol, and both its right eigenvector
/// and the eigenvector of the w-adjoint are entrywise positive.
CertificateOutcome eventual_strong_positivity_certificate(const Generator& g,
                                                          const ComparisonVector& u,
                                                          const Tolerances& tol = {});

/// T <= S entrywise (S - T >= -tol).
bool operator_leq(const Matrix& t, const Matrix& s, double tol = Tolerances{}.order);

/// 0 <= T <= id: nonnegative diagonal matrix with entries at most one.
bool is_center_element(const Matrix& t, double tol = Tolerances{}.order);

}  // namespace evdom
