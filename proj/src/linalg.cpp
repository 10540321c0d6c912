#include "evdom/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "evdom/errors.hpp"

namespace evdom {

void require_dense_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " is not square (" + std::to_string(a.rows()) +
                    "x" + std::to_string(a.cols()) + ")");
  }
  if (a.rows() == 0) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is empty");
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " has non-finite entries");
  }
}

WeightVector::WeightVector(Vector w) : w_(std::move(w)) {
  if (w_.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "weight vector is empty");
  }
  for (Eigen::Index i = 0; i < w_.size(); ++i) {
    if (!(w_[i] > 0.0) || !std::isfinite(w_[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weight " + std::to_string(i) + " is not strictly positive");
    }
  }
}

double WeightVector::inner(const Vector& f, const Vector& g) const {
  return (w_.array() * f.array() * g.array()).sum();
}

double WeightVector::norm(const Vector& f) const { return std::sqrt(inner(f, f)); }

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_weighted_symmetric(const Matrix& a, const WeightVector& w,
                           const Tolerances& tol) {
  if (a.rows() != a.cols() || a.rows() != w.size()) return false;
  const Matrix wa = w.values().asDiagonal() * a;
  const double scale = max_abs(wa);
  return max_abs(wa - wa.transpose()) <= tol.symmetry * scale;
}

EigenDecomposition eig_weighted_symmetric(const Matrix& a, const WeightVector& w,
                                          const Tolerances& tol) {
  require_dense_square(a);
  if (a.rows() != w.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "weight length differs from matrix size");
  }
  if (!is_weighted_symmetric(a, w, tol)) {
    throw Error(ErrorCode::kNotSelfAdjoint,
                "matrix is not self-adjoint in the weighted inner product");
  }

  const Vector sqrt_w = w.values().cwiseSqrt();
  const Vector inv_sqrt_w = sqrt_w.cwiseInverse();
  Matrix sym = sqrt_w.asDiagonal() * a * inv_sqrt_w.asDiagonal();
  sym = 0.5 * (sym + sym.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNoConvergence, "symmetric eigensolver did not converge");
  }

  const Eigen::Index n = a.rows();
  EigenDecomposition out{Vector(n), Matrix(n, n), w, 0.0};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = n - 1 - k;  // Eigen sorts ascending
    out.values[k] = solver.eigenvalues()[src];
    Vector v = inv_sqrt_w.asDiagonal() * solver.eigenvectors().col(src);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    out.vectors.col(k) = v;
  }

  for (Eigen::Index k = 0; k < n; ++k) {
    const Vector r = a * out.vectors.col(k) - out.values[k] * out.vectors.col(k);
    out.residual = std::max(out.residual, w.norm(r));
  }
  return out;
}

GeneralSpectrum general_spectrum(const Matrix& a) {
  require_dense_square(a);
  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/true);
  GeneralSpectrum out;
  out.method = SpectrumMethod::kSchur;
  out.usable = solver.info() == Eigen::Success;

  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  const auto& ev = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    const Complex lx = ev[x];
    const Complex ly = ev[y];
    // Conjugates share a real part up to rounding; keep them together.
    const double dr = lx.real() - ly.real();
    const double scale = 1.0 + std::max(std::abs(lx.real()), std::abs(ly.real()));
    if (std::abs(dr) > 64 * std::numeric_limits<double>::epsilon() * scale) {
      return dr > 0;
    }
    if (std::abs(lx.imag()) != std::abs(ly.imag())) {
      return std::abs(lx.imag()) < std::abs(ly.imag());
    }
    return lx.imag() > ly.imag();
  });

  const double norm_a = a.lpNorm<Eigen::Infinity>();
  const Eigen::MatrixXcd ac = a.cast<Complex>();
  for (Eigen::Index idx : order) {
    const Complex lambda = ev[idx];
    out.values.push_back(lambda);
    if (out.usable) {
      const Eigen::VectorXcd v = solver.eigenvectors().col(idx);
      const double vn = v.norm();
      if (vn > 0.0) {
        const double r = (ac * v - lambda * v).norm() / (vn * (1.0 + norm_a));
        out.residual = std::max(out.residual, r);
      }
    }
  }
  return out;
}

namespace {

constexpr int kPadeOrder = 6;

// c_k = (2m-k)! m! / ((2m)! k! (m-k)!)
std::array<double, kPadeOrder + 1> pade_coefficients() {
  std::array<double, kPadeOrder + 1> c{};
  c[0] = 1.0;
  for (int k = 0; k < kPadeOrder; ++k) {
    c[k + 1] = c[k] * static_cast<double>(kPadeOrder - k) /
               static_cast<double>((k + 1) * (2 * kPadeOrder - k));
  }
  return c;
}

}  // namespace

Matrix expm(const Matrix& a, double t) {
  require_dense_square(a);
  if (!std::isfinite(t)) {
    throw Error(ErrorCode::kInvalidArgument, "expm time is not finite");
  }
  const Eigen::Index n = a.rows();
  if (t == 0.0) return Matrix::Identity(n, n);

  Matrix x = t * a;
  const double norm = x.lpNorm<Eigen::Infinity>();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    x /= std::ldexp(1.0, squarings);
  }

  static const auto c = pade_coefficients();
  const Matrix id = Matrix::Identity(n, n);
  Matrix power = id;
  Matrix num = c[0] * id;
  Matrix den = c[0] * id;
  for (int k = 1; k <= kPadeOrder; ++k) {
    power = power * x;
    num += c[k] * power;
    den += ((k % 2) ? -c[k] : c[k]) * power;
  }
  Matrix r = den.partialPivLu().solve(num);
  for (int s = 0; s < squarings; ++s) {
    r = r * r;
  }
  if (!r.allFinite()) {
    throw Error(ErrorCode::kOverflow,
                "e^{tA} exceeds the floating-point range at t = " + std::to_string(t));
  }
  return r;
}

Matrix expm_spectral(const EigenDecomposition& eig, double t) {
  if (!std::isfinite(t)) {
    throw Error(ErrorCode::kInvalidArgument, "expm time is not finite");
  }
  Vector scaled = (t * eig.values).array().exp();
  if (!scaled.allFinite()) {
    throw Error(ErrorCode::kOverflow,
                "e^{tA} exceeds the floating-point range at t = " + std::to_string(t));
  }
  // Modes below this cut are invisible in the result; zeroing them keeps
  // subnormals out of the products below.
  const double cut = std::max(1e-250 * scaled.maxCoeff(),
                              1e20 * std::numeric_limits<double>::min());
  scaled = (scaled.array() < cut).select(0.0, scaled);
  Matrix left = eig.vectors * scaled.asDiagonal();
  Matrix right = eig.vectors.transpose() * eig.weight.values().asDiagonal();
  Matrix out = left * right;
  if (!out.allFinite()) {
    throw Error(ErrorCode::kOverflow,
                "e^{tA} exceeds the floating-point range at t = " + std::to_string(t));
  }
  return out;
}

}  // namespace evdom
