#include "evdom/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "evdom/errors.hpp"

namespace evdom {

Generator Generator::make(Matrix matrix, std::optional<WeightVector> weight,
                          std::string label, const Tolerances& tol) {
  require_dense_square(matrix, "generator");
  if (weight && weight->size() != matrix.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "weight length differs from generator size");
  }
  Generator g;
  g.self_adjoint = weight && is_weighted_symmetric(matrix, *weight, tol);
  g.matrix = std::move(matrix);
  g.weight = std::move(weight);
  g.label = std::move(label);
  return g;
}

WeightVector Generator::weight_or_ones() const {
  return weight ? *weight : WeightVector::ones(dim());
}

ComparisonVector::ComparisonVector(Vector u) : u_(std::move(u)) {
  if (u_.size() == 0) throw Error(ErrorCode::kInvalidArgument, "comparison vector is empty");
  for (Eigen::Index i = 0; i < u_.size(); ++i) {
    if (!(u_[i] > 0.0) || !std::isfinite(u_[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "comparison vector entry " + std::to_string(i) + " is not strictly positive");
    }
  }
}

std::vector<Complex> Spectrum::values() const {
  if (const auto* eig = std::get_if<EigenDecomposition>(&data)) {
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(eig->values.size()));
    for (Eigen::Index k = 0; k < eig->values.size(); ++k) out.emplace_back(eig->values[k], 0.0);
    return out;
  }
  return std::get<GeneralSpectrum>(data).values;
}

Spectrum compute_spectrum(const Generator& g, const Tolerances& tol) {
  Spectrum out;
  if (g.self_adjoint) {
    out.data = eig_weighted_symmetric(g.matrix, *g.weight, tol);
  } else {
    GeneralSpectrum gs = general_spectrum(g.matrix);
    if (!gs.usable) {
      throw Error(ErrorCode::kNoConvergence, "QR iteration did not converge for " + g.label);
    }
    out.data = std::move(gs);
  }
  const auto values = out.values();
  out.spb = -std::numeric_limits<double>::infinity();
  for (const auto& v : values) out.spb = std::max(out.spb, v.real());
  const double ptol = tol.peripheral_tol(out.spb);
  for (const auto& v : values) {
    if (v.real() >= out.spb - ptol) out.peripheral.push_back(v);
  }
  return out;
}

double spectral_bound(const Generator& g, const Tolerances& tol) {
  return compute_spectrum(g, tol).spb;
}

bool is_metzler(const Matrix& a, double tol) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j && a(i, j) < -tol) return false;
    }
  }
  return true;
}

bool is_metzler(const Generator& g, double tol) { return is_metzler(g.matrix, tol); }

double gauge_norm(const Vector& f, const ComparisonVector& u) {
  if (f.size() != u.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "gauge norm: vector lengths differ");
  }
  return (f.cwiseAbs().array() / u.values().array()).maxCoeff();
}

std::optional<double> strongly_positive_margin(const Vector& f, const ComparisonVector& u) {
  if (f.size() != u.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "margin: vector lengths differ");
  }
  const double eps = (f.array() / u.values().array()).minCoeff();
  if (eps > 0.0) return eps;
  return std::nullopt;
}

std::string_view to_string(RefusalReason r) {
  switch (r) {
    case RefusalReason::kNone: return "None";
    case RefusalReason::kNonDominant: return "NonDominant";
    case RefusalReason::kNonSimple: return "NonSimple";
    case RefusalReason::kEigenvectorNotPositive: return "EigenvectorNotPositive";
  }
  return "Unknown";
}

namespace {

Vector null_vector(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(m.cols() - 1);
}

void orient_positive(Vector& v) {
  const double sum = v.sum();
  if (sum < 0.0) {
    v = -v;
  } else if (sum == 0.0) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
  }
}

CertificateOutcome refuse(RefusalReason reason, std::string detail) {
  CertificateOutcome out;
  out.reason = reason;
  out.detail = std::move(detail);
  return out;
}

}  // namespace

CertificateOutcome eventual_strong_positivity_certificate(const Generator& g,
                                                          const ComparisonVector& u,
                                                          const Tolerances& tol) {
  if (u.size() != g.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "comparison vector length differs from generator");
  }
  const Spectrum spec = compute_spectrum(g, tol);
  const auto values = spec.values();
  const double s = spec.spb;
  const double ptol = tol.peripheral_tol(s);

  for (const auto& p : spec.peripheral) {
    if (std::abs(p.imag()) > ptol) {
      return refuse(RefusalReason::kNonDominant, "peripheral spectrum contains non-real values");
    }
  }
  if (spec.peripheral.size() > 1) {
    return refuse(RefusalReason::kNonSimple, "spectral bound is a repeated eigenvalue");
  }

  double gap = std::numeric_limits<double>::infinity();
  if (values.size() > 1) {
    gap = s - values[1].real();
    if (gap <= tol.gap_tol(s)) {
      const bool real_neighbour = std::abs(values[1].imag()) <= ptol;
      return refuse(real_neighbour ? RefusalReason::kNonSimple : RefusalReason::kNonDominant,
                    "spectral gap " + std::to_string(gap) + " is below tolerance");
    }
  }

  const WeightVector w = g.weight_or_ones();
  const Eigen::Index n = g.dim();
  const Matrix shifted = g.matrix - s * Matrix::Identity(n, n);

  Vector right;
  Vector left;
  if (const auto* eig = std::get_if<EigenDecomposition>(&spec.data)) {
    right = eig->vectors.col(0);
    left = right;
  } else {
    right = null_vector(shifted);
    const Matrix adjoint = w.values().cwiseInverse().asDiagonal() * g.matrix.transpose() *
                           w.values().asDiagonal();
    left = null_vector(adjoint - s * Matrix::Identity(n, n));
  }
  orient_positive(right);
  orient_positive(left);
  right /= w.norm(right);
  const double pairing = w.inner(left, right);
  if (!(pairing > 0.0)) {
    return refuse(RefusalReason::kEigenvectorNotPositive,
                  "left and right eigenvectors pair non-positively");
  }
  left /= pairing;

  PerronCertificate cert;
  cert.s = s;
  cert.gap = gap;
  cert.right_residual = w.norm(shifted * right);
  {
    const Matrix adjoint = w.values().cwiseInverse().asDiagonal() * g.matrix.transpose() *
                           w.values().asDiagonal();
    cert.left_residual = w.norm(adjoint * left - s * left) / w.norm(left);
  }

  const double rmin = right.minCoeff();
  const double lmin = left.minCoeff();
  if (!(rmin > tol.pos * right.lpNorm<Eigen::Infinity>())) {
    return refuse(RefusalReason::kEigenvectorNotPositive,
                  "right eigenvector has min entry " + std::to_string(rmin));
  }
  if (!(lmin > tol.pos * left.lpNorm<Eigen::Infinity>())) {
    return refuse(RefusalReason::kEigenvectorNotPositive,
                  "left eigenvector has min entry " + std::to_string(lmin));
  }
  const auto rmargin = strongly_positive_margin(right, u);
  const auto lmargin = strongly_positive_margin(left, u);
  if (!rmargin || !lmargin) {
    return refuse(RefusalReason::kEigenvectorNotPositive, "eigenvector is not >>_u 0");
  }
  cert.right_margin = *rmargin;
  cert.left_margin = *lmargin;
  cert.right = std::move(right);
  cert.left = std::move(left);

  CertificateOutcome out;
  out.certificate = std::move(cert);
  return out;
}

bool operator_leq(const Matrix& t, const Matrix& s, double tol) {
  if (t.rows() != s.rows() || t.cols() != s.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "operator_leq: shapes differ");
  }
  return ((s - t).array() >= -tol).all();
}

bool is_center_element(const Matrix& t, double tol) {
  if (t.rows() != t.cols()) return false;
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      const double x = t(i, j);
      if (i == j) {
        if (x < -tol || x > 1.0 + tol) return false;
      } else if (std::abs(x) > tol) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace evdom
