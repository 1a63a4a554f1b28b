#pragma once

#include <complex>

#include <Eigen/Dense>

namespace solvcert {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr Complex kJ{0.0, 1.0};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
struct HermitianSpectrum {
  RVector values;
  CMatrix vectors;

  double min() const { return values.size() ? values(0) : 0.0; }
  double max() const { return values.size() ? values(values.size() - 1) : 0.0; }
  /// Largest absolute eigenvalue, i.e. the spectral norm.
  double norm() const;
};

HermitianSpectrum hermitian_spectrum(const CMatrix& h);

// Tolerances below are relative to ||h||_2. A matrix with ||h||_2 <= scale_floor
// counts as zero (PSD, every eigenvalue near zero); callers that know the
// natural size of h use this to absorb rounding noise in matrices that vanish
// exactly. The default 0 keeps the test purely relative.

/// True when min eigenvalue >= -psd_tol * ||h||_2.
bool is_psd(const HermitianSpectrum& spec, double psd_tol, double scale_floor = 0.0);

/// True when min eigenvalue > psd_tol * ||h||_2.
bool is_positive_definite(const HermitianSpectrum& spec, double psd_tol, double scale_floor = 0.0);

/// Orthonormal basis of eigenvectors whose |eigenvalue| <= mult_tol * ||h||_2.
/// A zero matrix has the whole space as its null space.
CMatrix null_basis(const HermitianSpectrum& spec, double mult_tol, double scale_floor = 0.0);

/// Number of eigenvalues with |lambda| <= mult_tol * ||h||_2.
int count_near_zero(const HermitianSpectrum& spec, double mult_tol, double scale_floor = 0.0);

/// Minimum-norm solution of h x = b using the spectrum with the numerical null
/// space (per mult_tol) removed.
CVector pseudo_solve(const HermitianSpectrum& spec, const CVector& b, double mult_tol,
                     double scale_floor = 0.0);

/// Largest entrywise deviation from Hermitian symmetry.
double hermitian_defect(const CMatrix& h);

}  // namespace solvcert
