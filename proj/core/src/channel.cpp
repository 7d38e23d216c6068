#include "ampforge/channel.hpp"

#include <algorithm>
#include <cmath>

namespace ampforge {

ChannelModel ChannelModel::pure_loss(double rate) {
  if (rate < 0.0) throw InvalidParameters("loss rate must be >= 0");
  ChannelModel ch;
  ch.kind_ = Kind::PureLoss;
  ch.offset_ = rate;
  ch.amplitude_ = 0.0;
  ch.markovian_ = true;
  return ch;
}

ChannelModel ChannelModel::cosine_rate(double offset, double amplitude,
                                       double omega) {
  if (omega <= 0.0) throw InvalidParameters("omega must be > 0");
  ChannelModel ch;
  ch.kind_ = Kind::TimeDependentLoss;
  ch.offset_ = offset;
  ch.amplitude_ = amplitude;
  ch.omega_ = omega;
  ch.markovian_ = offset >= std::abs(amplitude);
  return ch;
}

ChannelModel ChannelModel::tabulated(std::vector<double> times,
                                     std::vector<double> rates) {
  if (times.size() < 2 || times.size() != rates.size())
    throw InvalidParameters("tabulated rate needs >= 2 aligned samples");
  if (times.front() != 0.0)
    throw InvalidParameters("tabulated rate must start at t = 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw UnsortedTimes("tabulated times must be strictly increasing");
  ChannelModel ch;
  ch.kind_ = Kind::TimeDependentLoss;
  ch.tabulated_ = true;
  ch.markovian_ =
      std::all_of(rates.begin(), rates.end(), [](double r) { return r >= 0; });
  // trapezoidal cumulative integral
  ch.tab_cum_.assign(times.size(), 0.0);
  for (std::size_t i = 1; i < times.size(); ++i)
    ch.tab_cum_[i] = ch.tab_cum_[i - 1] + 0.5 * (rates[i] + rates[i - 1]) *
                                              (times[i] - times[i - 1]);
  ch.tab_t_ = std::move(times);
  ch.tab_rate_ = std::move(rates);
  return ch;
}

double ChannelModel::rate(double t) const {
  if (!tabulated_) return offset_ + amplitude_ * std::cos(omega_ * t);
  if (t <= tab_t_.front()) return tab_rate_.front();
  if (t >= tab_t_.back()) return tab_rate_.back();
  auto it = std::upper_bound(tab_t_.begin(), tab_t_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - tab_t_.begin());
  double w = (t - tab_t_[i - 1]) / (tab_t_[i] - tab_t_[i - 1]);
  return (1.0 - w) * tab_rate_[i - 1] + w * tab_rate_[i];
}

double ChannelModel::integrated(double t) const {
  if (!tabulated_)
    return offset_ * t + amplitude_ * std::sin(omega_ * t) / omega_;
  if (t <= 0.0) return 0.0;
  if (t >= tab_t_.back())
    return tab_cum_.back() + tab_rate_.back() * (t - tab_t_.back());
  auto it = std::upper_bound(tab_t_.begin(), tab_t_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - tab_t_.begin());
  double r = rate(t);
  return tab_cum_[i - 1] +
         0.5 * (tab_rate_[i - 1] + r) * (t - tab_t_[i - 1]);
}

GaussianState apply_loss(const GaussianState& state, const ChannelModel& ch,
                         double t) {
  if (t < 0.0) throw NegativeTime("time must be >= 0");
  double damp = std::exp(-ch.integrated(t));
  GaussianState out;
  out.d = std::sqrt(damp) * state.d;
  out.gamma = damp * state.gamma +
              (1.0 - damp) * Eigen::Matrix2d::Identity();
  out.label = state.label;
  return out;
}

Complex apply_loss(Complex alpha, const ChannelModel& ch, double t) {
  if (t < 0.0) throw NegativeTime("time must be >= 0");
  return alpha * std::exp(-ch.integrated(t) / 2.0);
}

std::vector<std::pair<double, double>> distance_trajectory(
    const GaussianState& a, const GaussianState& b, const ChannelModel& ch,
    const std::vector<double>& times) {
  if (!times.empty() && times.front() < 0.0)
    throw NegativeTime("times must start >= 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw UnsortedTimes("times must be sorted strictly ascending");
  double d0 = phase_distance(a, b);
  std::vector<std::pair<double, double>> series;
  series.reserve(times.size());
  for (double t : times)
    series.emplace_back(t, std::exp(-ch.integrated(t)) * d0);
  return series;
}

std::vector<std::pair<double, double>> decay_rate(
    const std::vector<std::pair<double, double>>& series) {
  const std::size_t n = series.size();
  if (n < 3) throw TooFewPoints("decay_rate needs at least 3 points");
  for (std::size_t i = 1; i < n; ++i)
    if (series[i].first <= series[i - 1].first)
      throw UnsortedTimes("series times must be strictly increasing");
  std::vector<std::pair<double, double>> chi;
  chi.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double slope;
    if (i == 0) {
      slope = (series[1].second - series[0].second) /
              (series[1].first - series[0].first);
    } else if (i == n - 1) {
      slope = (series[n - 1].second - series[n - 2].second) /
              (series[n - 1].first - series[n - 2].first);
    } else {
      slope = (series[i + 1].second - series[i - 1].second) /
              (series[i + 1].first - series[i - 1].first);
    }
    chi.emplace_back(series[i].first, slope);
  }
  return chi;
}

HorizonResult detection_horizon(const GaussianState& a, const GaussianState& b,
                                double gain, const ChannelModel& ch,
                                double threshold) {
  if (ch.kind() != ChannelModel::Kind::PureLoss)
    throw InvalidParameters("detection_horizon requires a constant-rate channel");
  double rate = ch.rate(0.0);
  if (rate <= 0.0) throw InvalidParameters("loss rate must be > 0");
  double d0 = phase_distance(a, b);
  if (threshold <= 0.0 || threshold >= d0)
    throw ThresholdUnreachable("threshold must lie in (0, D(0))");
  double d0_amp = gain * gain * d0;
  if (threshold > d0_amp)
    throw ThresholdUnreachable("threshold exceeds the amplified D(0)");
  HorizonResult h;
  h.t_plain = std::log(d0 / threshold) / rate;
  h.t_amplified = std::log(d0_amp / threshold) / rate;
  return h;
}

}  // namespace ampforge
