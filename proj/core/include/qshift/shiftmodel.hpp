#pragma once

#include <optional>
#include <string>

#include "qshift/qalgebra.hpp"

namespace qshift::shiftmodel {

/// One laser beam as it reaches the detector.
class LaserSource {
 public:
  /// wavelength in m (must lie in (100 nm, 10 um)), power in W (>= 0),
  /// linewidth in Hz FWHM (> 0).
  LaserSource(double wavelength, double power, double linewidth);

  double wavelength() const { return m_wavelength; }
  double power() const { return m_power; }
  double linewidth() const { return m_linewidth; }

 private:
  double m_wavelength;
  double m_power;
  double m_linewidth;
};

/// How the coherence time tau entering n = P*tau/(h*nu) is chosen. The
/// conversion from power to a single-mode photon number is convention
/// dependent, so the method is recorded in every output that uses it.
enum class PhotonMethod { inverse_linewidth, inverse_two_pi_linewidth, explicit_time };

const char* to_string(PhotonMethod method);
PhotonMethod photon_method_from_string(const std::string& name);

struct PhotonNumberEstimate {
  double n;               // photons in the mode
  double coherence_time;  // s
  PhotonMethod method;
};

/// Links an absolute beat-note sensitivity in Hz to the fractional
/// frequency sensitivity it implies at a given optical frequency.
struct SensitivityBudget {
  double fractional_sensitivity;    // delta_omega / omega
  double absolute_beat_sensitivity; // Hz
  double optical_frequency;         // Hz

  static SensitivityBudget from_fractional(double fractional, double optical_frequency_hz);
  static SensitivityBudget from_absolute(double beat_hz, double optical_frequency_hz);
};

/// c / wavelength with exact c.
double optical_frequency(double wavelength);

/// Single-mode photon number n = P * tau / (h * nu). `explicit_time` is
/// required iff method == explicit_time and ignored otherwise.
PhotonNumberEstimate mode_photon_number(const LaserSource& source, PhotonMethod method,
                                        std::optional<double> explicit_time = std::nullopt);

/// Inverts the small-parameter shift law: the largest lambda compatible
/// with a null measurement of fractional sensitivity s at photon number n
/// is sqrt(2 s)/n. Exact functional inverse of blue_shift_approx.
double lambda_upper_bound(double fractional_sensitivity, double n);

/// Carrier shift of a single beam in Hz: nu_opt * lambda^2 n^2 / 2.
double beam_shift_hz(const LaserSource& source, const qalgebra::QDeformation& deform,
                     PhotonMethod method, std::optional<double> explicit_time = std::nullopt);

/// Beat-note displacement between a high-power and a low-power beam,
///   delta_f = nu_opt * lambda^2 (n_hi^2 - n_lo^2) / 2,
/// positive when hi carries more power (blue shift). Both sources must
/// share a wavelength.
double predicted_beat_shift(const LaserSource& hi, const LaserSource& lo,
                            const qalgebra::QDeformation& deform, PhotonMethod method,
                            std::optional<double> explicit_time = std::nullopt);

}  // namespace qshift::shiftmodel
