#pragma once

#include <complex>

#include <Eigen/Core>

namespace sg {

/// 2x2 reduced density operator of the spin, basis ordered (|+>, |->).
template <typename Scalar>
class BasicSpinDensityMatrix {
 public:
  using complex_type = std::complex<Scalar>;
  using matrix_type = Eigen::Matrix<complex_type, 2, 2>;

  BasicSpinDensityMatrix(Scalar rho_pp, Scalar rho_mm, complex_type rho_pm) {
    m_ << complex_type(rho_pp, 0), rho_pm, std::conj(rho_pm), complex_type(rho_mm, 0);
  }

  Scalar rho_pp() const { return m_(0, 0).real(); }
  Scalar rho_mm() const { return m_(1, 1).real(); }
  complex_type rho_pm() const { return m_(0, 1); }
  complex_type rho_mp() const { return m_(1, 0); }

  const matrix_type& matrix() const noexcept { return m_; }

  Scalar trace() const { return m_.trace().real(); }

  /// Tr(rho^2).
  Scalar purity() const { return (m_ * m_).trace().real(); }

  /// rho_pp * rho_mm - |rho_pm|^2; non-negative for a physical state.
  Scalar determinant() const { return rho_pp() * rho_mm() - std::norm(rho_pm()); }

 private:
  matrix_type m_;
};

using SpinDensityMatrix = BasicSpinDensityMatrix<double>;

}  // namespace sg
