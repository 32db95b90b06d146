// Copyright 2026 The ecoorc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ECOORC_WUE_HPP_
#define ECOORC_WUE_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ecoorc/footprint.hpp"

namespace ecoorc {

/// Configuration of the empirical time-varying WUE model.
struct WueModelConfig {
  double s = 10.0;           ///< cycles of concentration, > 1
  bool clamp_negative = true;

  void validate() const {
    if (!(s > 1.0)) throw Error("wue model: cycles of concentration s must be > 1");
  }
};

/// One hourly meteorological observation.
struct WeatherSample {
  std::int64_t timestamp = 0;  ///< UTC, seconds since epoch, on the hour
  double temp_c = 0.0;
  double dewpoint_c = 0.0;
};

/// Relative humidity in percent from dry-bulb and dew-point temperature,
/// via the Magnus formula (a = 17.625, b = 243.04 C):
///   RH = 100 * exp(a*Td/(b+Td)) / exp(a*T/(b+T))
inline double relative_humidity(double temp_c, double dewpoint_c) {
  if (dewpoint_c > temp_c) {
    throw Error("dew point above dry-bulb temperature");
  }
  constexpr double a = 17.625;
  constexpr double b = 243.04;
  return 100.0 * std::exp(a * dewpoint_c / (b + dewpoint_c)) /
         std::exp(a * temp_c / (b + temp_c));
}

/// Stull's approximation is fitted for RH 5..99 % and T -20..50 C.
inline bool stull_in_range(double temp_c, double rh_percent) {
  return rh_percent >= 5.0 && rh_percent <= 99.0 && temp_c >= -20.0 &&
         temp_c <= 50.0;
}

/// Wet-bulb temperature in Fahrenheit, estimated with Stull's (2011)
/// closed-form approximation in Celsius:
///   Tw = T*atan(0.151977*sqrt(RH + 8.313659)) + atan(T + RH)
///        - atan(RH - 1.676331) + 0.00391838*RH^1.5*atan(0.023101*RH)
///        - 4.686035
/// Inputs outside the approximation's fitted range append a note to
/// `warnings` (when given) but still evaluate.
inline double wet_bulb_f(const WeatherSample& sample,
                         std::vector<std::string>* warnings = nullptr) {
  double rh = relative_humidity(sample.temp_c, sample.dewpoint_c);
  if (warnings && !stull_in_range(sample.temp_c, rh)) {
    warnings->push_back("wet-bulb estimate outside fitted range (T=" +
                        std::to_string(sample.temp_c) +
                        " C, RH=" + std::to_string(rh) + " %)");
  }
  double t = sample.temp_c;
  double tw_c = t * std::atan(0.151977 * std::sqrt(rh + 8.313659)) +
                std::atan(t + rh) - std::atan(rh - 1.676331) +
                0.00391838 * std::pow(rh, 1.5) * std::atan(0.023101 * rh) -
                4.686035;
  return tw_c * 9.0 / 5.0 + 32.0;
}

/// Empirical WUE (l/kWh) at wet-bulb temperature t_w_f (Fahrenheit):
///   (s/(s-1)) * (6e-5*Tw^3 - 0.01*Tw^2 + 0.61*Tw - 10.40)
/// Negative values of the cubic are clamped to zero (cold hours consume
/// no makeup water) unless clamping is disabled.
inline double wue_estimate(double t_w_f, const WueModelConfig& cfg) {
  cfg.validate();
  double inner = 6e-5 * t_w_f * t_w_f * t_w_f - 0.01 * t_w_f * t_w_f +
                 0.61 * t_w_f - 10.40;
  if (cfg.clamp_negative && inner < 0.0) return 0.0;
  return (cfg.s / (cfg.s - 1.0)) * inner;
}

/// Pointwise wet-bulb + WUE model over an hourly series. Samples must be
/// strictly increasing in time.
inline std::vector<std::pair<std::int64_t, double>> hourly_wue_series(
    const std::vector<WeatherSample>& samples, const WueModelConfig& cfg,
    std::vector<std::string>* warnings = nullptr) {
  cfg.validate();
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i > 0 && samples[i].timestamp <= samples[i - 1].timestamp) {
      throw Error("weather samples not strictly increasing at index " +
                  std::to_string(i));
    }
    out.emplace_back(samples[i].timestamp,
                     wue_estimate(wet_bulb_f(samples[i], warnings), cfg));
  }
  return out;
}

}  // namespace ecoorc

#endif  // ECOORC_WUE_HPP_
