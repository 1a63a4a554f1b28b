#include "solvcert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace solvcert {

double HermitianSpectrum::norm() const {
  if (values.size() == 0) return 0.0;
  return std::max(std::abs(min()), std::abs(max()));
}

HermitianSpectrum hermitian_spectrum(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

bool is_psd(const HermitianSpectrum& spec, double psd_tol, double scale_floor) {
  return spec.norm() <= scale_floor || spec.min() >= -psd_tol * spec.norm();
}

bool is_positive_definite(const HermitianSpectrum& spec, double psd_tol, double scale_floor) {
  return spec.norm() > scale_floor && spec.min() > psd_tol * spec.norm();
}

namespace {

bool near_zero(double lambda, double scale, double mult_tol, double scale_floor) {
  return scale <= scale_floor || std::abs(lambda) <= mult_tol * scale;
}

}  // namespace

CMatrix null_basis(const HermitianSpectrum& spec, double mult_tol, double scale_floor) {
  const double scale = spec.norm();
  const Eigen::Index n = spec.values.size();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < n; ++k)
    if (near_zero(spec.values(k), scale, mult_tol, scale_floor)) cols.push_back(k);
  CMatrix basis(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t m = 0; m < cols.size(); ++m)
    basis.col(static_cast<Eigen::Index>(m)) = spec.vectors.col(cols[m]);
  return basis;
}

int count_near_zero(const HermitianSpectrum& spec, double mult_tol, double scale_floor) {
  const double scale = spec.norm();
  int count = 0;
  for (Eigen::Index k = 0; k < spec.values.size(); ++k)
    if (near_zero(spec.values(k), scale, mult_tol, scale_floor)) ++count;
  return count;
}

CVector pseudo_solve(const HermitianSpectrum& spec, const CVector& b, double mult_tol,
                     double scale_floor) {
  const double scale = spec.norm();
  CVector x = CVector::Zero(b.size());
  for (Eigen::Index k = 0; k < spec.values.size(); ++k) {
    if (near_zero(spec.values(k), scale, mult_tol, scale_floor)) continue;
    const auto v = spec.vectors.col(k);
    x += v * (v.dot(b) / spec.values(k));
  }
  return x;
}

double hermitian_defect(const CMatrix& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace solvcert
