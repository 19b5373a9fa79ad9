#include "qshift/qalgebra.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace qshift::qalgebra {

namespace {

// sinh overflows double range just above this argument.
constexpr double overflow_arg = 700.0;

void check_sinh_arg(double x, const char* what) {
  if (std::abs(x) > overflow_arg) {
    throw RangeError(std::string(what) + ": |lambda*n| = " + std::to_string(std::abs(x)) +
                     " exceeds 700, sinh would overflow double range");
  }
}

}  // namespace

QDeformation::QDeformation(double lambda) : m_lambda(lambda), m_q(std::exp(lambda)) {
  if (!std::isfinite(lambda) || std::abs(lambda) > max_abs_lambda) {
    throw RangeError("QDeformation: lambda must be finite with |lambda| <= 50");
  }
}

FockSpace::FockSpace(int dim) : m_dim(dim) {
  if (dim < 2) {
    throw std::invalid_argument("FockSpace: dim must be >= 2");
  }
}

double hermiticity_defect(const OperatorMatrix& op) {
  return (op.entries - op.entries.adjoint()).cwiseAbs().maxCoeff();
}

void validate(const OperatorMatrix& op) {
  const int d = op.space.dim();
  if (op.entries.rows() != d || op.entries.cols() != d) {
    throw std::invalid_argument("OperatorMatrix: entries must be dim x dim");
  }
  if (op.role == OperatorRole::number || op.role == OperatorRole::hamiltonian) {
    if (hermiticity_defect(op) > 1e-13) {
      throw std::invalid_argument("OperatorMatrix: number/hamiltonian role must be Hermitian");
    }
  }
}

double sinhc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    // sinh(x)/x = 1 + x^2/6 + x^4/120 + O(x^6); the x^6 term is < 1e-27
    // relative here.
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

double q_bracket(double n, const QDeformation& deform) {
  if (n < 0.0 || !std::isfinite(n)) {
    throw std::invalid_argument("q_bracket: n must be finite and >= 0");
  }
  const double lambda = deform.lambda();
  check_sinh_arg(lambda * n, "q_bracket");
  // [n] = n * sinhc(lambda*n) / sinhc(lambda): continuous through lambda = 0
  // and free of the 0/0 cancellation of the raw sinh ratio.
  return n * sinhc(lambda * n) / sinhc(lambda);
}

OperatorMatrix build_annihilation(const FockSpace& space) {
  const int d = space.dim();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 1; n < d; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return {std::move(a), space, OperatorRole::annihilation};
}

OperatorMatrix build_creation(const FockSpace& space) {
  OperatorMatrix a = build_annihilation(space);
  return {a.entries.adjoint(), space, OperatorRole::creation};
}

OperatorMatrix build_number(const FockSpace& space) {
  const int d = space.dim();
  Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    n(k, k) = static_cast<double>(k);
  }
  return {std::move(n), space, OperatorRole::number};
}

OperatorMatrix build_q_annihilation(const FockSpace& space, const QDeformation& deform) {
  const int d = space.dim();
  // a_q = a * f(n_hat) with f a diagonal function of the number operator;
  // the product leaves sqrt([n]) on the superdiagonal.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 1; n < d; ++n) {
    a(n - 1, n) = std::sqrt(q_bracket(static_cast<double>(n), deform));
  }
  return {std::move(a), space, OperatorRole::annihilation};
}

OperatorMatrix build_q_creation(const FockSpace& space, const QDeformation& deform) {
  OperatorMatrix a = build_q_annihilation(space, deform);
  return {a.entries.adjoint(), space, OperatorRole::creation};
}

double verify_q_commutator(const FockSpace& space, const QDeformation& deform) {
  if (space.dim() < 3) {
    throw std::invalid_argument("verify_q_commutator: dim must be >= 3");
  }
  const int d = space.dim();
  const double lambda = deform.lambda();
  check_sinh_arg(lambda * (d - 1.0), "verify_q_commutator");

  const Eigen::MatrixXcd aq = build_q_annihilation(space, deform).entries;
  const Eigen::MatrixXcd aq_dag = aq.adjoint();

  Eigen::MatrixXcd q_pow_minus_n = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    q_pow_minus_n(n, n) = std::exp(-lambda * n);
  }

  const Eigen::MatrixXcd residual = aq * aq_dag - deform.q() * (aq_dag * aq) - q_pow_minus_n;

  // Levels 0..dim-2 only; the top diagonal entry misses the [dim] ladder
  // term that truncation removed.
  const int keep = d - 1;
  const double defect = residual.topLeftCorner(keep, keep).cwiseAbs().maxCoeff();
  double scale = std::max((aq * aq_dag).topLeftCorner(keep, keep).cwiseAbs().maxCoeff(),
                          q_pow_minus_n.topLeftCorner(keep, keep).cwiseAbs().maxCoeff());
  scale = std::max(scale, 1.0);
  return defect / scale;
}

double energy_level(double n, const QDeformation& deform) {
  if (n < 0.0) {
    throw std::invalid_argument("energy_level: n must be >= 0");
  }
  const double lambda = deform.lambda();
  check_sinh_arg(lambda * (n + 1.0), "energy_level");
  // ((n+1) sinhc(lambda (n+1)) + n sinhc(lambda n)) / (2 sinhc lambda)
  // == (sinh(lambda (n+1)) + sinh(lambda n)) / (2 sinh lambda),
  // and equals n + 1/2 exactly at lambda = 0.
  return ((n + 1.0) * sinhc(lambda * (n + 1.0)) + n * sinhc(lambda * n)) / (2.0 * sinhc(lambda));
}

ScaledOperator q_hamiltonian(const FockSpace& space, const QDeformation& deform, double omega) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("q_hamiltonian: omega must be > 0");
  }
  const int d = space.dim();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    h(n, n) = energy_level(static_cast<double>(n), deform);
  }
  return {{std::move(h), space, OperatorRole::hamiltonian}, omega};
}

ModeSpectrum mode_spectrum(const FockSpace& space, const QDeformation& deform, double omega) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("mode_spectrum: omega must be > 0");
  }
  const int d = space.dim();
  ModeSpectrum spectrum;
  spectrum.omega = omega;
  spectrum.levels.reserve(d);
  for (int n = 0; n < d; ++n) {
    spectrum.levels.push_back(energy_level(static_cast<double>(n), deform));
  }
  spectrum.transition_freqs.reserve(d - 1);
  for (int n = 0; n + 1 < d; ++n) {
    spectrum.transition_freqs.push_back(spectrum.levels[n + 1] - spectrum.levels[n]);
  }
  return spectrum;
}

double transition_frequency(int n, const QDeformation& deform, double omega) {
  if (n < 0) {
    throw std::invalid_argument("transition_frequency: n must be >= 0");
  }
  if (!(omega > 0.0)) {
    throw std::invalid_argument("transition_frequency: omega must be > 0");
  }
  const double arg = deform.lambda() * (n + 1.0);
  check_sinh_arg(arg, "transition_frequency");
  // E_{n+1} - E_n collapses to cosh(lambda (n+1)) by the sinh difference
  // identity; no large-value cancellation.
  return omega * std::cosh(arg);
}

double effective_frequency_large_n(double n, const QDeformation& deform, double omega) {
  if (n < 0.0) {
    throw std::invalid_argument("effective_frequency_large_n: n must be >= 0");
  }
  if (!(omega > 0.0)) {
    throw std::invalid_argument("effective_frequency_large_n: omega must be > 0");
  }
  const double lambda = deform.lambda();
  check_sinh_arg(lambda * n, "effective_frequency_large_n");
  // omega * (lambda / sinh lambda) * cosh(lambda n); the prefactor is
  // 1/sinhc(lambda), stable at small lambda.
  return omega * std::cosh(lambda * n) / sinhc(lambda);
}

double blue_shift_approx(double n, const QDeformation& deform) {
  if (n < 0.0) {
    throw std::invalid_argument("blue_shift_approx: n must be >= 0");
  }
  const double x = deform.lambda() * n;
  return 0.5 * x * x;
}

bool blue_shift_regime_flagged(double n, const QDeformation& deform) {
  return std::abs(deform.lambda()) * n > 0.1;
}

std::complex<double> correlation_function(std::complex<double> alpha,
                                          const QDeformation& deform, double omega,
                                          double t, const FockSpace& space) {
  const int d = space.dim();
  const double mu = std::norm(alpha);
  if (!(mu < d / 4.0)) {
    throw std::invalid_argument(
        "correlation_function: need |alpha|^2 < dim/4 so the coherent state "
        "fits inside the truncation");
  }

  // Poisson weights P(n) = e^{-mu} mu^n / n!, built iteratively.
  std::vector<double> pn(d);
  pn[0] = std::exp(-mu);
  for (int n = 1; n < d; ++n) {
    pn[n] = pn[n - 1] * mu / n;
  }

  // Neglected contribution is bounded by sum_{n>=dim} n P(n)
  // = mu * P(X >= dim-1) for Poisson X.
  double cdf = 0.0;
  for (int n = 0; n <= d - 2; ++n) {
    cdf += pn[n];
  }
  const double truncation_error = mu * std::max(0.0, 1.0 - cdf);
  if (truncation_error > 1e-9) {
    throw TruncationError("correlation_function: neglected Poisson mass contributes " +
                          std::to_string(truncation_error) + " (> 1e-9); enlarge the space");
  }

  // Coherent amplitudes c_n = e^{-mu/2} alpha^n / sqrt(n!).
  Eigen::VectorXcd coherent(d);
  coherent(0) = std::exp(-mu / 2.0);
  for (int n = 1; n < d; ++n) {
    coherent(n) = coherent(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }

  // Heisenberg evolution in the Fock basis: conjugate a^dagger by the
  // diagonal propagator built from the q_hamiltonian eigenvalues.
  const ScaledOperator ham = q_hamiltonian(space, deform, omega);
  Eigen::VectorXcd phase(d);
  for (int n = 0; n < d; ++n) {
    const double energy = ham.op.entries(n, n).real();
    phase(n) = std::polar(1.0, energy * omega * t);
  }
  const Eigen::MatrixXcd a = build_annihilation(space).entries;
  const Eigen::MatrixXcd a_dag_t =
      phase.asDiagonal() * a.adjoint() * phase.conjugate().asDiagonal();

  const Eigen::VectorXcd ket = a * coherent;
  const Eigen::VectorXcd bra_side = a_dag_t * ket;
  return coherent.dot(bra_side);  // Eigen's dot conjugates the left argument
}

void write_matrix_csv(std::ostream& out, const OperatorMatrix& op) {
  const int d = op.space.dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const std::complex<double> z = op.entries(i, j);
      out << z.real() << ',' << z.imag();
      if (j + 1 < d) {
        out << ',';
      }
    }
    out << '\n';
  }
}

}  // namespace qshift::qalgebra
