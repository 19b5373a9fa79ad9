// Deformed-oscillator algebra tests.
//
// Independent oracles:
//   - 50-digit evaluation of the sinh ratios (Boost.Multiprecision), used
//     wherever a double expression could hide cancellation;
//   - explicit level subtraction E_{n+1} - E_n at 50 digits as the oracle
//     for the closed-form transition frequency;
//   - a 200-term Poisson series for the coherent-state correlation
//     function, independent of the matrix evaluation under test.

#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "qshift/qalgebra.hpp"

using namespace qshift;
using namespace qshift::qalgebra;
using float50 = boost::multiprecision::cpp_bin_float_50;

namespace {

double bracket_oracle(double n, double lambda) {
  // sinh(lambda n)/sinh(lambda) at 50 digits, rounded once to double.
  const float50 l(lambda);
  return static_cast<double>(sinh(l * n) / sinh(l));
}

double level_oracle(int n, double lambda) {
  const float50 l(lambda);
  return static_cast<double>((sinh(l * (n + 1)) + sinh(l * n)) / (2 * sinh(l)));
}

double transition_oracle(int n, double lambda) {
  // Explicit subtraction of adjacent levels, safe at 50 digits.
  const float50 l(lambda);
  const float50 upper = (sinh(l * (n + 2)) + sinh(l * (n + 1))) / (2 * sinh(l));
  const float50 lower = (sinh(l * (n + 1)) + sinh(l * n)) / (2 * sinh(l));
  return static_cast<double>(upper - lower);
}

}  // namespace

// ---------------------------------------------------------------------------
// domain types
// ---------------------------------------------------------------------------

TEST_CASE("QDeformation stores q = exp(lambda) and rejects out-of-range lambda") {
  for (double lambda : {-2.0, -1e-9, 0.0, 0.5, 42.0}) {
    const QDeformation d(lambda);
    CHECK(d.lambda() == lambda);
    CHECK(d.q() == doctest::Approx(std::exp(lambda)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(QDeformation(60.0), RangeError);
  CHECK_THROWS_AS(QDeformation(-51.0), RangeError);
  CHECK_THROWS_AS(QDeformation(std::nan("")), RangeError);
}

TEST_CASE("FockSpace requires at least two levels") {
  CHECK(FockSpace(2).dim() == 2);
  CHECK_THROWS_AS(FockSpace(1), std::invalid_argument);
  CHECK_THROWS_AS(FockSpace(0), std::invalid_argument);
}

TEST_CASE("OperatorMatrix validation catches shape and Hermiticity defects") {
  const FockSpace space(3);
  OperatorMatrix bad{Eigen::MatrixXcd::Zero(2, 2), space, OperatorRole::generic};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  OperatorMatrix skew{Eigen::MatrixXcd::Zero(3, 3), space, OperatorRole::number};
  skew.entries(0, 1) = 1.0;  // no matching (1,0) entry
  CHECK(hermiticity_defect(skew) == doctest::Approx(1.0));
  CHECK_THROWS_AS(validate(skew), std::invalid_argument);

  CHECK_NOTHROW(validate(build_number(space)));
}

// ---------------------------------------------------------------------------
// q_bracket
// ---------------------------------------------------------------------------

TEST_CASE("q_bracket limits and exact points") {
  CHECK(q_bracket(5.0, QDeformation(0.0)) == 5.0);        // lambda -> 0 identity
  CHECK(q_bracket(1.0, QDeformation(2.3)) == 1.0);        // sinh l / sinh l
  CHECK(q_bracket(0.0, QDeformation(1.0)) == 0.0);

  // [2] at lambda = 1 against the 50-digit oracle and its frozen value.
  const double b = q_bracket(2.0, QDeformation(1.0));
  CHECK(b == doctest::Approx(3.0861612696304876).epsilon(1e-15));
  CHECK(b == doctest::Approx(bracket_oracle(2.0, 1.0)).epsilon(1e-14));
}

TEST_CASE("q_bracket matches the high-precision ratio across magnitudes") {
  for (double lambda : {1e-9, 1e-7, 1e-5, 1e-3, 0.1, 1.0, 5.0}) {
    for (double n : {0.5, 1.0, 2.0, 7.0, 31.0, 100.0}) {
      const double got = q_bracket(n, QDeformation(lambda));
      const double want = bracket_oracle(n, lambda);
      CAPTURE(lambda);
      CAPTURE(n);
      CHECK(got == doctest::Approx(want).epsilon(1e-13));
    }
  }
}

TEST_CASE("q_bracket small-lambda expansion bound") {
  // |[n] - n| <= 1.01 * n * lambda^2 n^2 / 6 whenever lambda*n < 0.1.
  for (double lambda : {1e-8, 1e-5, 1e-3}) {
    for (double n : {1.0, 2.0, 5.0, 17.3, 99.0}) {
      if (lambda * n >= 0.1) continue;
      const double diff = std::abs(q_bracket(n, QDeformation(lambda)) - n);
      CHECK(diff <= 1.01 * n * lambda * lambda * n * n / 6.0 + 1e-15);
    }
  }
}

TEST_CASE("q_bracket reports overflow instead of returning infinity") {
  CHECK_THROWS_AS(q_bracket(701.0, QDeformation(1.0)), RangeError);
  CHECK_THROWS_AS(q_bracket(15.0, QDeformation(50.0)), RangeError);
  CHECK_THROWS_AS(q_bracket(-1.0, QDeformation(1.0)), std::invalid_argument);
}

TEST_CASE("sinhc series branch is continuous at the branch point") {
  for (double x : {9.999e-5, 1.0001e-4, 5e-5, 2e-4}) {
    CHECK(sinhc(x) == doctest::Approx(static_cast<double>(sinh(float50(x)) / float50(x)))
                          .epsilon(1e-15));
  }
  CHECK(sinhc(0.0) == 1.0);
}

// ---------------------------------------------------------------------------
// ladder operators
// ---------------------------------------------------------------------------

TEST_CASE("build_annihilation lays sqrt(n) on the superdiagonal") {
  const OperatorMatrix a2 = build_annihilation(FockSpace(2));
  CHECK(a2.entries(0, 0) == std::complex<double>(0.0));
  CHECK(a2.entries(0, 1) == std::complex<double>(1.0));
  CHECK(a2.entries(1, 0) == std::complex<double>(0.0));
  CHECK(a2.entries(1, 1) == std::complex<double>(0.0));

  const OperatorMatrix a3 = build_annihilation(FockSpace(3));
  CHECK(a3.entries(0, 1).real() == doctest::Approx(1.0));
  CHECK(a3.entries(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(a3.entries.cwiseAbs().sum() ==
        doctest::Approx(1.0 + std::sqrt(2.0)));  // nothing else is set
}

TEST_CASE("[a, a^dagger] = 1 away from the truncation level") {
  const FockSpace space(16);
  const Eigen::MatrixXcd a = build_annihilation(space).entries;
  const Eigen::MatrixXcd comm = a * a.adjoint() - a.adjoint() * a;
  const Eigen::MatrixXcd expect = Eigen::MatrixXcd::Identity(15, 15);
  CHECK((comm.topLeftCorner(15, 15) - expect).cwiseAbs().maxCoeff() < 1e-14);
  // the top level absorbs the truncation defect
  CHECK(comm(15, 15).real() == doctest::Approx(-15.0));
}

TEST_CASE("build_q_annihilation reduces to the boson ladder at lambda = 0") {
  const FockSpace space(4);
  const Eigen::MatrixXcd aq = build_q_annihilation(space, QDeformation(0.0)).entries;
  const Eigen::MatrixXcd a = build_annihilation(space).entries;
  CHECK((aq - a).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("build_q_annihilation entries are sqrt of the deformed number") {
  const FockSpace space(8);
  // [1] = 1 for every lambda
  CHECK(build_q_annihilation(space, QDeformation(0.1)).entries(0, 1).real() == 1.0);

  // (1,2) entry at lambda = 1: sqrt(2 * [2]/2) = sqrt([2])
  const double entry = build_q_annihilation(space, QDeformation(1.0)).entries(1, 2).real();
  CHECK(entry == doctest::Approx(std::sqrt(bracket_oracle(2.0, 1.0))).epsilon(1e-14));
  CHECK(build_q_creation(space, QDeformation(1.0)).entries(2, 1).real() ==
        doctest::Approx(entry));
}

// ---------------------------------------------------------------------------
// deformed commutator identity
// ---------------------------------------------------------------------------

TEST_CASE("deformed commutator identity holds on the retained subspace") {
  CHECK(verify_q_commutator(FockSpace(16), QDeformation(0.0)) < 1e-14);
  CHECK(verify_q_commutator(FockSpace(32), QDeformation(0.1)) < 1e-12);
  CHECK(verify_q_commutator(FockSpace(8), QDeformation(1.0)) < 1e-12);
}

TEST_CASE("deformed commutator residual over the full parameter grid") {
  for (double lambda : {0.0, 1e-8, 1e-3, 0.1, 1.0}) {
    for (int dim : {8, 32, 64}) {
      CAPTURE(lambda);
      CAPTURE(dim);
      CHECK(verify_q_commutator(FockSpace(dim), QDeformation(lambda)) < 1e-12);
    }
  }
}

TEST_CASE("verify_q_commutator guards its domain") {
  CHECK_THROWS_AS(verify_q_commutator(FockSpace(2), QDeformation(0.1)), std::invalid_argument);
  CHECK_THROWS_AS(verify_q_commutator(FockSpace(32), QDeformation(30.0)), RangeError);
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

TEST_CASE("q_hamiltonian reproduces the harmonic ladder at lambda = 0") {
  const ScaledOperator h = q_hamiltonian(FockSpace(3), QDeformation(0.0), 1.0);
  CHECK(h.op.entries(0, 0).real() == 0.5);
  CHECK(h.op.entries(1, 1).real() == 1.5);
  CHECK(h.op.entries(2, 2).real() == 2.5);
  CHECK(h.omega == 1.0);
}

TEST_CASE("q_hamiltonian levels against the 50-digit oracle") {
  // ground level is 1/2 for every lambda (sinh 0 = 0)
  CHECK(q_hamiltonian(FockSpace(4), QDeformation(1.0), 1.0).op.entries(0, 0).real() == 0.5);

  // E_3 at lambda = 0.5: (sinh 2 + sinh 1.5)/(2 sinh 0.5)
  const double e3 = energy_level(3.0, QDeformation(0.5));
  CHECK(e3 == doctest::Approx(5.5231162152648719).epsilon(1e-15));
  CHECK(e3 == doctest::Approx(level_oracle(3, 0.5)).epsilon(1e-14));

  CHECK_THROWS_AS(q_hamiltonian(FockSpace(4), QDeformation(0.5), 0.0), std::invalid_argument);
}

TEST_CASE("q_hamiltonian output is Hermitian") {
  for (double lambda : {0.0, 0.3, 1.0}) {
    const ScaledOperator h = q_hamiltonian(FockSpace(24), QDeformation(lambda), 2.0e15);
    CHECK(hermiticity_defect(h.op) < 1e-13);
    CHECK_NOTHROW(validate(h.op));
  }
}

TEST_CASE("mode_spectrum levels increase and spacings match the level stack") {
  for (double lambda : {0.0, 0.1, 1.0}) {
    const ModeSpectrum s = mode_spectrum(FockSpace(16), QDeformation(lambda), 3.0);
    REQUIRE(s.levels.size() == 16);
    REQUIRE(s.transition_freqs.size() == 15);
    for (std::size_t n = 0; n + 1 < s.levels.size(); ++n) {
      CHECK(s.levels[n] < s.levels[n + 1]);
      CHECK(s.transition_freqs[n] == s.levels[n + 1] - s.levels[n]);
    }
  }
}

TEST_CASE("transition_frequency closed form vs explicit subtraction oracle") {
  const double omega = 2.0;

  // lambda = 0: no amplitude dependence
  for (int n : {0, 5, 1000}) {
    CHECK(transition_frequency(n, QDeformation(0.0), omega) == omega);
  }

  // lambda = 1, n = 0 -> omega cosh(1)
  CHECK(transition_frequency(0, QDeformation(1.0), omega) ==
        doctest::Approx(omega * 1.5430806348152437).epsilon(1e-15));
  CHECK(transition_frequency(0, QDeformation(1.0), omega) ==
        doctest::Approx(omega * transition_oracle(0, 1.0)).epsilon(1e-14));

  // lambda = 1e-3, n = 1000 -> omega cosh(1.001)
  CHECK(transition_frequency(1000, QDeformation(1e-3), omega) ==
        doctest::Approx(omega * 1.5442566077451362).epsilon(1e-15));
  CHECK(transition_frequency(1000, QDeformation(1e-3), omega) ==
        doctest::Approx(omega * transition_oracle(1000, 1e-3)).epsilon(1e-13));

  // a spread of parameters against the subtraction oracle
  for (double lambda : {1e-6, 1e-2, 0.5}) {
    for (int n : {0, 3, 50}) {
      CHECK(transition_frequency(n, QDeformation(lambda), omega) ==
            doctest::Approx(omega * transition_oracle(n, lambda)).epsilon(1e-13));
    }
  }

  CHECK_THROWS_AS(transition_frequency(700, QDeformation(1.0), omega), RangeError);
}

TEST_CASE("transition_frequency increases with n for positive lambda") {
  const QDeformation d(0.01);
  double prev = 0.0;
  for (int n = 0; n < 200; ++n) {
    const double f = transition_frequency(n, d, 1.0);
    CHECK(f > prev);
    prev = f;
  }
}

// ---------------------------------------------------------------------------
// amplitude-dependent frequency and the small-parameter shift
// ---------------------------------------------------------------------------

TEST_CASE("effective_frequency_large_n limits") {
  const double omega = 5.0;
  CHECK(effective_frequency_large_n(123.0, QDeformation(0.0), omega) == omega);

  // lambda = 1e-6, n = 1e6: omega * (1 - 1.67e-13) * cosh(1)
  CHECK(effective_frequency_large_n(1e6, QDeformation(1e-6), omega) ==
        doctest::Approx(omega * 1.5430806348149866).epsilon(1e-13));

  // bench-scale parameters: fractional change of about 1e-14
  const double lambda = 1.41e-17;
  const double ratio = effective_frequency_large_n(1e10, QDeformation(lambda), omega) / omega;
  const double expected = 0.5 * (lambda * 1e10) * (lambda * 1e10);
  CHECK(ratio - 1.0 == doctest::Approx(expected).epsilon(1e-3));

  CHECK_THROWS_AS(effective_frequency_large_n(1e6, QDeformation(1e-3), omega), RangeError);
}

TEST_CASE("blue_shift_approx values and regime flag") {
  CHECK(blue_shift_approx(1e9, QDeformation(0.0)) == 0.0);

  // bound arithmetic: lambda = 1.414e-17 at n = 1e10 gives ~1e-14
  const double shift = blue_shift_approx(1e10, QDeformation(1.414e-17));
  CHECK(shift == doctest::Approx(9.99698e-15).epsilon(1e-6));
  CHECK(shift == doctest::Approx(1e-14).epsilon(5e-3));

  CHECK_FALSE(blue_shift_regime_flagged(1e3, QDeformation(1e-6)));
  CHECK(blue_shift_regime_flagged(1e6, QDeformation(1e-6)));
}

TEST_CASE("blue_shift_approx tracks the exact frequency ratio in-regime") {
  // lambda = 1e-6, n = 1000 -> 5e-7, matching the exact expression to 1e-6
  const QDeformation d(1e-6);
  const double approx = blue_shift_approx(1000.0, d);
  CHECK(approx == doctest::Approx(5e-7).epsilon(1e-12));
  const double exact = effective_frequency_large_n(1000.0, d, 1.0) - 1.0;
  CHECK(std::abs(approx - exact) / approx < 1e-6);
}

TEST_CASE("blue_shift_approx vs exact ratio carries the analytic error terms") {
  // The prefactor lambda/sinh(lambda) leaves an intrinsic relative gap of
  // |1/(3n^2) - (lambda n)^2/12| between the approximation and the exact
  // ratio; check the measured gap against that form (50% headroom) across
  // the small-parameter region, including small n.
  for (double n : {10.0, 30.0, 100.0, 1e3, 1e5}) {
    for (double frac : {0.1, 0.5, 1.0}) {
      const double lambda = 1e-3 * frac / n;
      const QDeformation d(lambda);
      const double approx = blue_shift_approx(n, d);
      const double exact = effective_frequency_large_n(n, d, 1.0) - 1.0;
      const double gap = std::abs(approx - exact) / approx;
      const double x = lambda * n;
      const double predicted = std::abs(1.0 / (3.0 * n * n) - x * x / 12.0);
      CAPTURE(n);
      CAPTURE(lambda);
      // 1e-15/approx allows for double rounding of the exact ratio near 1
      CHECK(gap < 1.5 * predicted + 1e-15 / approx);
    }
  }
}

// ---------------------------------------------------------------------------
// correlation function
// ---------------------------------------------------------------------------

TEST_CASE("correlation_function harmonic limit and normalization") {
  const FockSpace space(32);
  const double omega = 3.0;

  for (double t : {0.1, 0.7}) {
    const std::complex<double> c =
        correlation_function({1.0, 0.0}, QDeformation(0.0), omega, t, space);
    CHECK(c.real() == doctest::Approx(std::cos(omega * t)).epsilon(1e-10));
    CHECK(c.imag() == doctest::Approx(std::sin(omega * t)).epsilon(1e-10));
  }

  // t = 0 normalization, independent of lambda
  for (double lambda : {0.0, 0.5}) {
    const std::complex<double> c =
        correlation_function({2.0, 0.0}, QDeformation(lambda), omega, 0.0, FockSpace(64));
    CHECK(c.real() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::abs(c.imag()) < 1e-12);
  }

  // a complex amplitude normalizes the same way
  const std::complex<double> c =
      correlation_function({1.0, 1.0}, QDeformation(0.3), omega, 0.0, FockSpace(64));
  CHECK(c.real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(c.imag()) < 1e-12);
}

TEST_CASE("correlation_function against the brute-force Poisson series") {
  // lambda = 0.1, alpha = 2, omega t = 1; the oracle sums
  // sum_n P(n) n exp(i t cosh(lambda n)) to 200 terms at 50 digits.
  using mp_complex = std::complex<float50>;
  const float50 lambda("0.1");
  const float50 mu = 4;
  mp_complex series(0, 0);
  float50 pn = exp(-mu);  // P(0)
  for (int n = 1; n <= 200; ++n) {
    pn = pn * mu / n;
    const float50 phase = cosh(lambda * n);
    series += mp_complex(pn * n) * mp_complex(cos(phase), sin(phase));
  }

  const std::complex<double> got =
      correlation_function({2.0, 0.0}, QDeformation(0.1), 1.0, 1.0, FockSpace(64));
  CHECK(got.real() == doctest::Approx(static_cast<double>(series.real())).epsilon(1e-10));
  CHECK(got.imag() == doctest::Approx(static_cast<double>(series.imag())).epsilon(1e-10));

  // frozen values of the same oracle
  CHECK(got.real() == doctest::Approx(1.6209993159138093).epsilon(1e-10));
  CHECK(got.imag() == doctest::Approx(3.6240467258749067).epsilon(1e-10));
}

TEST_CASE("correlation_function reports truncation problems") {
  // coherent state too large for the space
  CHECK_THROWS_AS(correlation_function({2.0, 0.0}, QDeformation(0.0), 1.0, 0.0, FockSpace(8)),
                  std::invalid_argument);
  // inside the precondition but with a Poisson tail above the 1e-9 report
  // threshold
  CHECK_THROWS_AS(
      correlation_function({1.97, 0.0}, QDeformation(0.0), 1.0, 0.0, FockSpace(16)),
      TruncationError);
}

// ---------------------------------------------------------------------------
// debug CSV export
// ---------------------------------------------------------------------------

TEST_CASE("write_matrix_csv emits re,im cells row-major") {
  std::ostringstream out;
  write_matrix_csv(out, build_annihilation(FockSpace(2)));
  CHECK(out.str() == "0,0,1,0\n0,0,0,0\n");
}
