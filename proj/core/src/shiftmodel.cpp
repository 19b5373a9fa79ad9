#include "qshift/shiftmodel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qshift/constants.hpp"

namespace qshift::shiftmodel {

LaserSource::LaserSource(double wavelength, double power, double linewidth)
    : m_wavelength(wavelength), m_power(power), m_linewidth(linewidth) {
  if (!(wavelength > 100e-9) || !(wavelength < 10e-6)) {
    throw std::invalid_argument("LaserSource: wavelength must lie in (100 nm, 10 um)");
  }
  if (!(power >= 0.0)) {
    throw std::invalid_argument("LaserSource: power must be >= 0");
  }
  if (!(linewidth > 0.0)) {
    throw std::invalid_argument("LaserSource: linewidth must be > 0");
  }
}

const char* to_string(PhotonMethod method) {
  switch (method) {
    case PhotonMethod::inverse_linewidth:
      return "inverse_linewidth";
    case PhotonMethod::inverse_two_pi_linewidth:
      return "inverse_two_pi_linewidth";
    case PhotonMethod::explicit_time:
      return "explicit_time";
  }
  return "unknown";
}

PhotonMethod photon_method_from_string(const std::string& name) {
  if (name == "inverse_linewidth") return PhotonMethod::inverse_linewidth;
  if (name == "inverse_two_pi_linewidth") return PhotonMethod::inverse_two_pi_linewidth;
  if (name == "explicit_time") return PhotonMethod::explicit_time;
  throw std::invalid_argument("unknown photon-number method: " + name);
}

SensitivityBudget SensitivityBudget::from_fractional(double fractional,
                                                     double optical_frequency_hz) {
  if (!(fractional >= 0.0) || !(optical_frequency_hz > 0.0)) {
    throw std::invalid_argument("SensitivityBudget: need fractional >= 0 and nu > 0");
  }
  return {fractional, fractional * optical_frequency_hz, optical_frequency_hz};
}

SensitivityBudget SensitivityBudget::from_absolute(double beat_hz, double optical_frequency_hz) {
  if (!(beat_hz >= 0.0) || !(optical_frequency_hz > 0.0)) {
    throw std::invalid_argument("SensitivityBudget: need beat_hz >= 0 and nu > 0");
  }
  return {beat_hz / optical_frequency_hz, beat_hz, optical_frequency_hz};
}

double optical_frequency(double wavelength) {
  if (!(wavelength > 0.0)) {
    throw std::invalid_argument("optical_frequency: wavelength must be > 0");
  }
  return constants::speed_of_light / wavelength;
}

PhotonNumberEstimate mode_photon_number(const LaserSource& source, PhotonMethod method,
                                        std::optional<double> explicit_time) {
  double tau = 0.0;
  switch (method) {
    case PhotonMethod::inverse_linewidth:
      tau = 1.0 / source.linewidth();
      break;
    case PhotonMethod::inverse_two_pi_linewidth:
      tau = 1.0 / (2.0 * std::numbers::pi * source.linewidth());
      break;
    case PhotonMethod::explicit_time:
      if (!explicit_time || !(*explicit_time > 0.0)) {
        throw std::invalid_argument("mode_photon_number: explicit_time method needs a time > 0");
      }
      tau = *explicit_time;
      break;
  }
  const double photon_energy = constants::planck * optical_frequency(source.wavelength());
  return {source.power() * tau / photon_energy, tau, method};
}

double lambda_upper_bound(double fractional_sensitivity, double n) {
  if (!(fractional_sensitivity >= 0.0)) {
    throw std::invalid_argument("lambda_upper_bound: sensitivity must be >= 0");
  }
  if (!(n > 0.0)) {
    throw std::invalid_argument("lambda_upper_bound: undefined bound for n = 0");
  }
  return std::sqrt(2.0 * fractional_sensitivity) / n;
}

double beam_shift_hz(const LaserSource& source, const qalgebra::QDeformation& deform,
                     PhotonMethod method, std::optional<double> explicit_time) {
  const double n = mode_photon_number(source, method, explicit_time).n;
  return optical_frequency(source.wavelength()) * qalgebra::blue_shift_approx(n, deform);
}

double predicted_beat_shift(const LaserSource& hi, const LaserSource& lo,
                            const qalgebra::QDeformation& deform, PhotonMethod method,
                            std::optional<double> explicit_time) {
  if (hi.wavelength() != lo.wavelength()) {
    throw std::invalid_argument("predicted_beat_shift: both sources must share a wavelength");
  }
  return beam_shift_hz(hi, deform, method, explicit_time) -
         beam_shift_hz(lo, deform, method, explicit_time);
}

}  // namespace qshift::shiftmodel
