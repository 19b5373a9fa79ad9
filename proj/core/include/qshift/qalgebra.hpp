#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "qshift/errors.hpp"

namespace qshift::qalgebra {

/// Deformation strength of the nonlinear oscillator algebra, q = exp(lambda).
/// lambda = 0 recovers the ordinary boson oscillator.
class QDeformation {
 public:
  static constexpr double max_abs_lambda = 50.0;

  explicit QDeformation(double lambda);

  double lambda() const { return m_lambda; }
  double q() const { return m_q; }

 private:
  double m_lambda;
  double m_q;
};

/// Truncated number-state basis holding levels 0..dim-1.
class FockSpace {
 public:
  explicit FockSpace(int dim);

  int dim() const { return m_dim; }

 private:
  int m_dim;
};

enum class OperatorRole { annihilation, creation, number, hamiltonian, generic };

/// Dense matrix representation of a ladder/number/Hamiltonian operator on a
/// truncated Fock space. Hamiltonian entries are dimensionless (units of
/// hbar*omega); the omega scale travels separately (see ScaledOperator).
struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  FockSpace space;
  OperatorRole role;
};

/// Throws std::invalid_argument if the matrix is not square of the space's
/// dimension, or if a number/hamiltonian-role matrix deviates from Hermitian
/// by more than 1e-13 entrywise.
void validate(const OperatorMatrix& op);

/// Max entrywise |A - A^dagger|.
double hermiticity_defect(const OperatorMatrix& op);

/// Dimensionless operator plus the angular-frequency scale it was built at.
struct ScaledOperator {
  OperatorMatrix op;
  double omega;  // rad/s
};

/// Energy levels of one mode. `levels` are in units of hbar*omega and
/// `transition_freqs[n] = levels[n+1] - levels[n]` in units of omega.
struct ModeSpectrum {
  std::vector<double> levels;
  std::vector<double> transition_freqs;
  double omega;  // rad/s
};

/// sinh(x)/x, continuous at 0; series branch below |x| = 1e-4 keeps the
/// truncation error under 1e-16 relative.
double sinhc(double x);

/// Deformed number [n] = sinh(lambda*n)/sinh(lambda). Exactly n at
/// lambda = 0. Throws RangeError when |lambda*n| > 700 (sinh overflow).
double q_bracket(double n, const QDeformation& deform);

/// Ordinary annihilation operator: a[n-1, n] = sqrt(n).
OperatorMatrix build_annihilation(const FockSpace& space);

/// a^dagger, the transpose of build_annihilation.
OperatorMatrix build_creation(const FockSpace& space);

/// Number operator diag(0, 1, ..., dim-1).
OperatorMatrix build_number(const FockSpace& space);

/// Deformed annihilation operator a_q = a * f(n_hat) with
/// f(n) = sqrt(sinh(lambda*n) / (n*sinh(lambda))); f(0) continued to
/// sqrt(lambda/sinh(lambda)). The only nonzero entries are
/// a_q[n-1, n] = sqrt([n]).
OperatorMatrix build_q_annihilation(const FockSpace& space, const QDeformation& deform);

/// Adjoint of build_q_annihilation.
OperatorMatrix build_q_creation(const FockSpace& space, const QDeformation& deform);

/// Residual of the deformed commutation identity
///   a_q a_q^dagger - q a_q^dagger a_q = q^(-n_hat)
/// evaluated by matrix arithmetic on levels 0..dim-2 (the top level is a
/// truncation artifact and is excluded). The residual is scaled by the
/// largest operand magnitude on the retained subspace, max(1, |entries|),
/// so machine-precision agreement reads as ~1e-16 at any lambda.
double verify_q_commutator(const FockSpace& space, const QDeformation& deform);

/// Level n energy in units of hbar*omega:
///   E_n = (sinh(lambda*(n+1)) + sinh(lambda*n)) / (2 sinh lambda),
/// reducing to n + 1/2 at lambda = 0.
double energy_level(double n, const QDeformation& deform);

/// Deformed Hamiltonian as a diagonal matrix of energy_level values
/// (dimensionless, units of hbar*omega) with omega carried alongside.
ScaledOperator q_hamiltonian(const FockSpace& space, const QDeformation& deform, double omega);

/// Full level stack and adjacent-level spacings for one mode.
ModeSpectrum mode_spectrum(const FockSpace& space, const QDeformation& deform, double omega);

/// (E_{n+1} - E_n)/hbar in rad/s via the closed form omega*cosh(lambda*(n+1)).
/// Subtracting near-equal sinh values is left to test oracles.
double transition_frequency(int n, const QDeformation& deform, double omega);

/// Amplitude-dependent frequency of large-amplitude vibrations:
///   omega_eff = omega * (lambda/sinh lambda) * cosh(lambda*n),
/// tending to omega as lambda -> 0.
double effective_frequency_large_n(double n, const QDeformation& deform, double omega);

/// Small-parameter fractional shift delta_omega/omega = lambda^2 n^2 / 2.
double blue_shift_approx(double n, const QDeformation& deform);

/// True when lambda*n > 0.1, i.e. blue_shift_approx is used outside its
/// small-parameter regime and should be flagged to the caller.
bool blue_shift_regime_flagged(double n, const QDeformation& deform);

/// Coherent-state amplitude correlation <alpha| a^dagger(t) a(0) |alpha>,
/// evaluated in the Fock basis with Heisenberg phases from the
/// q_hamiltonian eigenvalues. Equals |alpha|^2 exp(i*omega*t) at lambda = 0.
///
/// Requires |alpha|^2 < dim/4 so the coherent state sits well inside the
/// truncation; throws TruncationError if the neglected Poisson mass would
/// contribute more than 1e-9.
std::complex<double> correlation_function(std::complex<double> alpha,
                                          const QDeformation& deform, double omega,
                                          double t, const FockSpace& space);

/// Debug export: row-major, each cell written as "re,im".
void write_matrix_csv(std::ostream& out, const OperatorMatrix& op);

}  // namespace qshift::qalgebra
