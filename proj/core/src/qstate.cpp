#include "cqlearn/qstate.hpp"

#include <algorithm>
#include <cmath>

#include "cqlearn/errors.hpp"

namespace cqlearn {

namespace {

constexpr double kEigTol = 1e-10;
constexpr double kDistinguishTol = 1e-8;

void require_same_dim(int a, int b, const char* where) {
  if (a != b) throw SpecError(std::string(where) + ": dimension mismatch");
}

}  // namespace

PureState::PureState(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 1) throw SpecError("PureState needs dim >= 1");
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > kMatrixTol) {
    throw SpecError("PureState amplitudes must have unit norm");
  }
}

PureState PureState::basis(int dim, int k) {
  if (k < 0 || k >= dim) throw SpecError("basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(k) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_hermitian(kMatrixTol)) {
    throw SpecError("DensityMatrix must be Hermitian within tolerance");
  }
  if (std::abs(m_.trace().real() - 1.0) > kMatrixTol ||
      std::abs(m_.trace().imag()) > kMatrixTol) {
    throw SpecError("DensityMatrix must have unit trace");
  }
  const Eigen::VectorXd eigs = hermitian_eigenvalues(m_);
  if (eigs.minCoeff() < -kEigTol) {
    throw SpecError("DensityMatrix must be positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  return DensityMatrix(
      ComplexMatrix(psi.amplitudes() * psi.amplitudes().adjoint()));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(
      ComplexMatrix(Eigen::MatrixXcd::Identity(dim, dim) / double(dim)));
}

double DensityMatrix::purity() const {
  return (m_.raw() * m_.raw()).trace().real();
}

TwoOutcomePovm::TwoOutcomePovm(ComplexMatrix e0, ComplexMatrix e1)
    : e0_(std::move(e0)), e1_(std::move(e1)) {
  require_same_dim(e0_.dim(), e1_.dim(), "TwoOutcomePovm");
  if (!(e0_ + e1_).approx_equal(ComplexMatrix::identity(e0_.dim()), 1e-9)) {
    throw SpecError("TwoOutcomePovm effects must sum to the identity");
  }
  for (const ComplexMatrix* e : {&e0_, &e1_}) {
    const Eigen::VectorXd eigs = hermitian_eigenvalues(*e, 1e-9);
    if (eigs.minCoeff() < -kEigTol || eigs.maxCoeff() > 1.0 + kEigTol) {
      throw SpecError("POVM effect spectrum must lie in [0, 1]");
    }
  }
}

double TwoOutcomePovm::outcome_one_probability(const DensityMatrix& rho) const {
  require_same_dim(dim(), rho.dim(), "measure");
  double p = (e1_.raw() * rho.raw()).trace().real();
  return std::clamp(p, 0.0, 1.0);
}

NoisePair::NoisePair(double e0, double e1) : eta0(e0), eta1(e1) {
  if (eta0 < -kEigTol || eta0 > 1.0 + kEigTol || eta1 < -kEigTol ||
      eta1 > 1.0 + kEigTol) {
    throw SpecError("noise rates must lie in [0, 1]");
  }
  eta0 = std::clamp(eta0, 0.0, 1.0);
  eta1 = std::clamp(eta1, 0.0, 1.0);
}

void NoisePair::require_invertible() const {
  if (eta0 + eta1 >= 1.0) {
    throw GuardError("degenerate noise: eta0 + eta1 >= 1");
  }
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "trace_distance");
  const Eigen::VectorXd eigs =
      hermitian_eigenvalues(rho.matrix() - sigma.matrix());
  return eigs.cwiseAbs().sum();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "fidelity");
  const HermitianEigen er = hermitian_eigendecomposition(rho.matrix());
  Eigen::VectorXd sqrt_eigs = er.values.cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXcd sqrt_rho =
      er.vectors * sqrt_eigs.asDiagonal() * er.vectors.adjoint();
  Eigen::MatrixXcd inner = sqrt_rho * sigma.raw() * sqrt_rho;
  inner = 0.5 * (inner + inner.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(inner);
  if (solver.info() != Eigen::Success) {
    throw GuardError("fidelity: eigendecomposition failed");
  }
  const double f = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(f, 0.0, 1.0);
}

TwoOutcomePovm holevo_helstrom(const DensityMatrix& sigma0,
                               const DensityMatrix& sigma1) {
  require_same_dim(sigma0.dim(), sigma1.dim(), "holevo_helstrom");
  if (trace_distance(sigma0, sigma1) <= kDistinguishTol) {
    throw GuardError("holevo_helstrom: states are indistinguishable");
  }
  const HermitianEigen ed =
      hermitian_eigendecomposition(sigma0.matrix() - sigma1.matrix());
  const int n = sigma0.dim();
  Eigen::MatrixXcd e0 = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    // Strictly positive eigenspaces only; eigenvalues within +-1e-10 of zero
    // are assigned to E1 so that E0 matches the minimal sign projector.
    if (ed.values(i) > kEigTol) {
      e0 += ed.vectors.col(i) * ed.vectors.col(i).adjoint();
    }
  }
  Eigen::MatrixXcd e1 = Eigen::MatrixXcd::Identity(n, n) - e0;
  return TwoOutcomePovm(ComplexMatrix(std::move(e0)),
                        ComplexMatrix(std::move(e1)));
}

NoisePair error_rates(const TwoOutcomePovm& povm, const DensityMatrix& sigma0,
                      const DensityMatrix& sigma1) {
  require_same_dim(povm.dim(), sigma0.dim(), "error_rates");
  require_same_dim(povm.dim(), sigma1.dim(), "error_rates");
  const double eta0 = (povm.e1().raw() * sigma0.raw()).trace().real();
  const double eta1 = (povm.e0().raw() * sigma1.raw()).trace().real();
  return NoisePair(eta0, eta1);
}

int measure(const TwoOutcomePovm& povm, const DensityMatrix& state,
            RandomSource& rng) {
  const double p1 = povm.outcome_one_probability(state);
  return rng.uniform() < p1 ? 1 : 0;
}

std::pair<double, double> mixture_eigenvalues(double alpha, double beta,
                                              const PureState& psi,
                                              const PureState& phi) {
  require_same_dim(psi.dim(), phi.dim(), "mixture_eigenvalues");
  if (alpha < 0.0 || beta < 0.0) {
    throw SpecError("mixture_eigenvalues: weights must be nonnegative");
  }
  const double ov = overlap_magnitude(psi, phi);
  return mixture_eigenvalues_overlap(alpha, beta, ov * ov);
}

std::pair<double, double> mixture_eigenvalues_overlap(double alpha, double beta,
                                                      double overlap_sq) {
  const double disc = std::sqrt((alpha - beta) * (alpha - beta) +
                                4.0 * alpha * beta * overlap_sq);
  return {(alpha + beta + disc) / 2.0, (alpha + beta - disc) / 2.0};
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::VectorXd eigs = hermitian_eigenvalues(rho.matrix());
  double h = 0.0;
  for (int i = 0; i < eigs.size(); ++i) {
    const double lam = std::clamp(eigs(i), 0.0, 1.0);
    if (lam > 0.0) h -= lam * std::log2(lam);
  }
  return h;
}

double helstrom_success_probability(const DensityMatrix& sigma0,
                                    const DensityMatrix& sigma1) {
  return 0.5 * (1.0 + 0.5 * trace_distance(sigma0, sigma1));
}

double discrimination_success(const TwoOutcomePovm& povm,
                              const DensityMatrix& sigma0,
                              const DensityMatrix& sigma1) {
  const double p00 = (povm.e0().raw() * sigma0.raw()).trace().real();
  const double p11 = (povm.e1().raw() * sigma1.raw()).trace().real();
  return 0.5 * (p00 + p11);
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  const int na = a.dim(), nb = b.dim();
  Eigen::MatrixXcd out(na * nb, na * nb);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a.raw()(i, j) * b.raw();
    }
  }
  return DensityMatrix(ComplexMatrix(std::move(out)));
}

double overlap_magnitude(const PureState& psi, const PureState& phi) {
  require_same_dim(psi.dim(), phi.dim(), "overlap");
  // Eigen's complex dot conjugates the left argument: this is |<psi|phi>|.
  return std::abs(psi.amplitudes().dot(phi.amplitudes()));
}

}  // namespace cqlearn
