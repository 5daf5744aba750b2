#include "cqlearn/complex_matrix.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "cqlearn/errors.hpp"

namespace cqlearn {

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    throw SpecError("ComplexMatrix must be square with dim >= 1");
  }
}

ComplexMatrix ComplexMatrix::zero(int dim) {
  return ComplexMatrix(Eigen::MatrixXcd::Zero(dim, dim));
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  return ComplexMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& other, double tol) const {
  if (dim() != other.dim()) return false;
  return ((m_ - other.m_).cwiseAbs().maxCoeff() <= tol);
}

bool ComplexMatrix::is_hermitian(double tol) const {
  return ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol);
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw SpecError("matrix dimension mismatch");
  return ComplexMatrix(a.m_ + b.m_);
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw SpecError("matrix dimension mismatch");
  return ComplexMatrix(a.m_ - b.m_);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw SpecError("matrix dimension mismatch");
  return ComplexMatrix(a.m_ * b.m_);
}

ComplexMatrix operator*(double s, const ComplexMatrix& a) {
  return ComplexMatrix(s * a.m_);
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
  return hermitian_eigendecomposition(m, tol).values;
}

HermitianEigen hermitian_eigendecomposition(const ComplexMatrix& m,
                                            double tol) {
  if (!m.is_hermitian(tol)) {
    throw SpecError("matrix is not Hermitian within tolerance");
  }
  // Symmetrize before decomposing so round-off in the input cannot leak
  // imaginary parts into the spectrum.
  Eigen::MatrixXcd sym = 0.5 * (m.raw() + m.raw().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw GuardError("Hermitian eigendecomposition failed to converge");
  }
  return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

std::string format_complex(Complex z, int precision) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.*g%+.*gi", precision, z.real(), precision,
                z.imag());
  return buf;
}

Complex parse_complex(const std::string& token) {
  // Accepted forms: "a+bi", "a-bi", "a", "bi", "+bi", "-bi", "i", "-i".
  if (token.empty()) throw SpecError("empty complex literal");
  const char* s = token.c_str();
  char* end = nullptr;
  double first = std::strtod(s, &end);
  if (end == s) {
    // No leading number: allow "i", "+i", "-i".
    if (token == "i" || token == "+i") return Complex(0.0, 1.0);
    if (token == "-i") return Complex(0.0, -1.0);
    throw SpecError("bad complex literal: " + token);
  }
  if (*end == '\0') return Complex(first, 0.0);
  if (*end == 'i' && *(end + 1) == '\0') return Complex(0.0, first);
  // Remainder must be the imaginary part "+b i" / "-b i" or "+i"/"-i".
  const char* rest = end;
  if (*rest != '+' && *rest != '-') {
    throw SpecError("bad complex literal: " + token);
  }
  std::string imag_part(rest);
  if (imag_part == "+i") return Complex(first, 1.0);
  if (imag_part == "-i") return Complex(first, -1.0);
  char* end2 = nullptr;
  double second = std::strtod(rest, &end2);
  if (end2 == rest || *end2 != 'i' || *(end2 + 1) != '\0') {
    throw SpecError("bad complex literal: " + token);
  }
  return Complex(first, second);
}

}  // namespace cqlearn
