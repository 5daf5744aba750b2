#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace cqlearn {

using Complex = std::complex<double>;

// Absolute tolerance used for matrix/state validation and equality.
inline constexpr double kMatrixTol = 1e-10;

// Square complex matrix with tolerance-based equality. The thin wrapper
// guarantees squareness at construction; numerical work goes through raw().
class ComplexMatrix {
 public:
  explicit ComplexMatrix(Eigen::MatrixXcd m);

  static ComplexMatrix zero(int dim);
  static ComplexMatrix identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& raw() const { return m_; }

  Complex operator()(int r, int c) const { return m_(r, c); }

  bool approx_equal(const ComplexMatrix& other, double tol = kMatrixTol) const;

  bool is_hermitian(double tol = kMatrixTol) const;
  Complex trace() const { return m_.trace(); }

  ComplexMatrix adjoint() const { return ComplexMatrix(m_.adjoint()); }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(double s, const ComplexMatrix& a);

 private:
  Eigen::MatrixXcd m_;
};

// Eigenvalues of a Hermitian matrix, ascending. Throws SpecError if the
// input is not Hermitian within tol.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m,
                                      double tol = kMatrixTol);

// Full Hermitian eigendecomposition (ascending eigenvalues).
struct HermitianEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;  // columns
};
HermitianEigen hermitian_eigendecomposition(const ComplexMatrix& m,
                                            double tol = kMatrixTol);

// Text form of one complex entry: "a+bi" / "a-bi" (also accepts plain "a"
// and pure-imaginary "bi" when parsing).
std::string format_complex(Complex z, int precision = 17);
Complex parse_complex(const std::string& token);

}  // namespace cqlearn
