#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "evdom/tolerances.hpp"

namespace evdom {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;

/// Throws kInvalidArgument unless `a` is square with finite entries.
void require_dense_square(const Matrix& a, const char* what = "matrix");

/// Strictly positive weights of the inner product <f,g>_w = sum_i w_i f_i g_i.
class WeightVector {
 public:
  explicit WeightVector(Vector w);
  static WeightVector ones(Eigen::Index n) { return WeightVector(Vector::Ones(n)); }

  const Vector& values() const { return w_; }
  Eigen::Index size() const { return w_.size(); }
  double operator[](Eigen::Index i) const { return w_[i]; }

  double inner(const Vector& f, const Vector& g) const;
  double norm(const Vector& f) const;

 private:
  Vector w_;
};

/// True when diag(w) * a is symmetric within tol.symmetry * max|diag(w) * a|.
bool is_weighted_symmetric(const Matrix& a, const WeightVector& w,
                           const Tolerances& tol = {});

struct EigenDecomposition {
  Vector values;   // descending
  Matrix vectors;  // column k pairs with values[k]; w-orthonormal
  WeightVector weight;
  double residual = 0.0;  // max_k ||A v_k - values_k v_k||_w
};

/// Eigendecomposition of a matrix that is self-adjoint in <.,.>_w.
///
/// Works on the similar symmetric matrix W^{1/2} A W^{-1/2} and maps the
/// orthonormal eigenvectors back with W^{-1/2}. Each eigenvector is signed so
/// that its largest-magnitude entry is positive.
EigenDecomposition eig_weighted_symmetric(const Matrix& a, const WeightVector& w,
                                          const Tolerances& tol = {});

enum class SpectrumMethod { kSchur, kSymmetric };

struct GeneralSpectrum {
  // Sorted by descending real part; conjugate pairs adjacent, positive
  // imaginary part first.
  std::vector<Complex> values;
  SpectrumMethod method = SpectrumMethod::kSchur;
  // max over values of ||A v - lambda v|| / (||v|| (1 + ||A||)).
  double residual = 0.0;
  // False when the QR iteration ran out of budget; values are then partial.
  bool usable = true;
};

GeneralSpectrum general_spectrum(const Matrix& a);

/// e^{tA} by scaling and squaring with the (6,6) diagonal Pade approximant.
/// Throws kOverflow rather than returning non-finite entries.
Matrix expm(const Matrix& a, double t);

/// e^{tA} = V diag(e^{t values}) V^T W for a w-self-adjoint A.
Matrix expm_spectral(const EigenDecomposition& eig, double t);

/// max_i |f_i|, the entrywise maximum norm used for scales.
double max_abs(const Matrix& a);

}  // namespace evdom
