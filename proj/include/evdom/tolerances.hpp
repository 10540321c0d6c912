#pragma once

#include <cmath>

namespace evdom {

/// Every numeric comparison in the library routes through one of these.
struct Tolerances {
  // W*A symmetric within symmetry * max|W*A|.
  double symmetry = 1e-9;
  // <v_j, v_k>_w = delta_jk within this.
  double orthonormality = 1e-10;
  // Eigen-residual bound, relative to (1 + max|value|).
  double eig_residual = 1e-8;
  // Eigenvector entries must exceed pos * ||v||_inf to count as positive.
  double pos = 1e-9;
  // gap_tol = gap * (1 + |spb|).
  double gap = 1e-7;
  // peripheral_tol = peripheral * (1 + |spb|).
  double peripheral = 1e-8;
  // Off-diagonal entries >= -metzler count as nonnegative.
  double metzler = 1e-12;
  // Entrywise operator order slack.
  double order = 1e-12;
  // max|A - B| <= identical * (1 + max|A|) means the generators coincide.
  double identical = 1e-12;
  // Relative slack for the empirical oracle's sign tests.
  double crossover = 1e-9;
  // Absolute threshold for a reported domination-failure witness.
  double witness = 1e-10;
  // Lower bound for diffusion coefficients.
  double ellipticity = 1e-12;

  double gap_tol(double spb) const { return gap * (1.0 + std::abs(spb)); }
  double peripheral_tol(double spb) const {
    return peripheral * (1.0 + std::abs(spb));
  }
};

}  // namespace evdom
