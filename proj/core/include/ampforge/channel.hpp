#pragma once

#include <utility>
#include <vector>

#include "ampforge/gaussian.hpp"

namespace ampforge {

// Single-mode loss channel with rate gamma(t) >= 0 (Markovian) or an
// oscillating rate that can dip negative (non-Markovian revivals).
class ChannelModel {
 public:
  enum class Kind { PureLoss, TimeDependentLoss };

  static ChannelModel pure_loss(double rate = 1.0);
  // gamma(t) = offset + amplitude * cos(omega t)
  static ChannelModel cosine_rate(double offset, double amplitude,
                                  double omega);
  // piecewise-linear gamma(t) through (times, rates); trapezoidal Gamma(t)
  static ChannelModel tabulated(std::vector<double> times,
                                std::vector<double> rates);

  Kind kind() const { return kind_; }
  double rate(double t) const;        // gamma(t)
  double integrated(double t) const;  // Gamma(t) = int_0^t gamma
  bool markovian() const { return markovian_; }

 private:
  ChannelModel() = default;
  Kind kind_ = Kind::PureLoss;
  double offset_ = 1.0, amplitude_ = 0.0, omega_ = 1.0;
  std::vector<double> tab_t_, tab_rate_, tab_cum_;
  bool tabulated_ = false;
  bool markovian_ = true;
};

GaussianState apply_loss(const GaussianState& state, const ChannelModel& ch,
                         double t);
Complex apply_loss(Complex alpha, const ChannelModel& ch, double t);

// (t, D(t)) with D the phase-space distance of the evolved pair.
std::vector<std::pair<double, double>> distance_trajectory(
    const GaussianState& a, const GaussianState& b, const ChannelModel& ch,
    const std::vector<double>& times);

// Central finite differences (one-sided at the ends).
std::vector<std::pair<double, double>> decay_rate(
    const std::vector<std::pair<double, double>>& series);

struct HorizonResult {
  double t_plain = 0.0;
  double t_amplified = 0.0;
};

// Times at which D(t) and g^2 D(t) cross the detector threshold under a
// constant-rate channel.
HorizonResult detection_horizon(const GaussianState& a, const GaussianState& b,
                                double gain, const ChannelModel& ch,
                                double threshold);

}  // namespace ampforge
