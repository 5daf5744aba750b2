#pragma once

#include <utility>

#include "cqlearn/complex_matrix.hpp"
#include "cqlearn/random.hpp"

namespace cqlearn {

// Unit vector in C^dim.
class PureState {
 public:
  explicit PureState(Eigen::VectorXcd amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }

  // |k> in C^dim.
  static PureState basis(int dim, int k);

 private:
  Eigen::VectorXcd amps_;
};

// PSD, unit-trace, Hermitian matrix. Validated at construction:
// Hermitian within kMatrixTol, eigenvalues >= -1e-10, trace 1 within 1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);
  explicit DensityMatrix(const Eigen::MatrixXcd& m)
      : DensityMatrix(ComplexMatrix(m)) {}

  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Eigen::MatrixXcd& raw() const { return m_.raw(); }

  double purity() const;  // tr[rho^2]

 private:
  ComplexMatrix m_;
};

// Two-outcome measurement (E0, E1) with E0 + E1 = I and both effects
// Hermitian with spectrum in [-1e-10, 1 + 1e-10].
class TwoOutcomePovm {
 public:
  TwoOutcomePovm(ComplexMatrix e0, ComplexMatrix e1);

  int dim() const { return e0_.dim(); }
  const ComplexMatrix& e0() const { return e0_; }
  const ComplexMatrix& e1() const { return e1_; }

  // Probability of outcome 1 when measuring rho.
  double outcome_one_probability(const DensityMatrix& rho) const;

 private:
  ComplexMatrix e0_, e1_;
};

// Measurement error rates eta0 = tr[sigma0 E1], eta1 = tr[sigma1 E0].
struct NoisePair {
  double eta0 = 0.0;
  double eta1 = 0.0;

  NoisePair() = default;
  NoisePair(double e0, double e1);

  double sum() const { return eta0 + eta1; }
  // Learners that invert the noise require eta0 + eta1 < 1.
  void require_invertible() const;
};

// Schatten-1 norm ||rho - sigma||_1 (not halved), in [0, 2].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Uhlmann fidelity F(rho, sigma) = tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Minimum-error measurement for distinguishing sigma0 vs sigma1: E0 is the
// projector onto eigenspaces of sigma0 - sigma1 with eigenvalue > 1e-10
// (the zero eigenspace goes to E1), E1 = I - E0. Throws GuardError when
// ||sigma0 - sigma1||_1 <= 1e-8.
TwoOutcomePovm holevo_helstrom(const DensityMatrix& sigma0,
                               const DensityMatrix& sigma1);

NoisePair error_rates(const TwoOutcomePovm& povm, const DensityMatrix& sigma0,
                      const DensityMatrix& sigma1);

// Samples the measurement outcome; consumes exactly one uniform draw.
int measure(const TwoOutcomePovm& povm, const DensityMatrix& state,
            RandomSource& rng);

// Nonzero eigenvalues of alpha |psi><psi| + beta |phi><phi|, larger first:
// (alpha + beta +- sqrt((alpha-beta)^2 + 4 alpha beta |<psi|phi>|^2)) / 2.
std::pair<double, double> mixture_eigenvalues(double alpha, double beta,
                                              const PureState& psi,
                                              const PureState& phi);
// Same formula with the squared overlap passed directly.
std::pair<double, double> mixture_eigenvalues_overlap(double alpha, double beta,
                                                      double overlap_sq);

// Von Neumann entropy in bits; eigenvalues clamped into [0, 1] first.
double von_neumann_entropy(const DensityMatrix& rho);

// (1 + ||sigma0 - sigma1||_1 / 2) / 2, in [1/2, 1].
double helstrom_success_probability(const DensityMatrix& sigma0,
                                    const DensityMatrix& sigma1);

// Probability that the povm assigns the wrong index when the label bit is b
// drawn with equal priors; equals tr[E0 sigma0]/2 + tr[E1 sigma1]/2.
double discrimination_success(const TwoOutcomePovm& povm,
                              const DensityMatrix& sigma0,
                              const DensityMatrix& sigma1);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

// |<psi|phi>|.
double overlap_magnitude(const PureState& psi, const PureState& phi);

}  // namespace cqlearn
