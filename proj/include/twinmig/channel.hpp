#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 the twinmig authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "twinmig/errors.hpp"

namespace twinmig {

/// 10^((p - 30) / 10): dBm to watts.
inline double dbm_to_watts(double p_dbm) {
  return std::pow(10.0, (p_dbm - 30.0) / 10.0);
}

/// Physical parameters of the link between the task publisher and one
/// bandwidth provider. All fields are linear units; dB/dBm inputs are
/// converted exactly once, in from_dbm, and never downstream.
struct ChannelParams {
  double transmit_power_w = 0.1995262314968879;  // 23 dBm
  double unit_gain = 1.0;                        // linear power gain at 1 m
  double distance_m = 500.0;
  double path_loss_exponent = 2.0;
  double noise_density_w_hz = 3.9810717055349695e-21;  // -174 dBm/Hz

  static ChannelParams from_dbm(double transmit_power_dbm, double unit_gain,
                                double distance_m, double path_loss_exponent,
                                double noise_density_dbm_hz) {
    ChannelParams p;
    p.transmit_power_w = dbm_to_watts(transmit_power_dbm);
    p.unit_gain = unit_gain;
    p.distance_m = distance_m;
    p.path_loss_exponent = path_loss_exponent;
    p.noise_density_w_hz = dbm_to_watts(noise_density_dbm_hz);
    return p;
  }

  void validate() const {
    if (!(transmit_power_w > 0.0))
      throw validation_error("channel.transmit_power: must be positive in watts");
    if (!(unit_gain > 0.0))
      throw validation_error("channel.unit_gain: must be positive");
    if (!(distance_m > 0.0))
      throw validation_error("channel.distance_m: must be positive");
    if (!(path_loss_exponent >= 0.0))
      throw validation_error("channel.path_loss_exponent: must be non-negative");
    if (!(noise_density_w_hz > 0.0))
      throw validation_error("channel.noise_density: must be positive in watts/Hz");
  }
};

/// One migration task: payload size, the bandwidth-independent time share,
/// and the freshness bound the publisher will tolerate.
struct MigrationTask {
  double data_bits = 8e8;
  double fixed_time_s = 5.0;  // collection + processing, constant across providers
  double max_aomt_s = 50.0;

  void validate() const {
    if (!(data_bits >= 0.0))
      throw validation_error("task.data_bits: must be non-negative");
    if (!(fixed_time_s > 0.0))
      throw validation_error("task.fixed_time_s: must be positive");
    if (!(max_aomt_s > fixed_time_s))
      throw validation_error("task.max_aomt_s: must exceed task.fixed_time_s");
  }
};

/// Channel power gain h0 * d^-alpha.
inline double channel_gain(const ChannelParams& params) {
  if (!(params.distance_m > 0.0))
    throw std::invalid_argument("channel_gain: distance must be positive");
  return params.unit_gain * std::pow(params.distance_m, -params.path_loss_exponent);
}

/// Achievable rate b * log2(1 + snr) in bit/s over an orthogonal channel of
/// width b, where snr = p * G / (N0 * b). Strictly increasing in b and
/// bounded above by p * G / (N0 * ln 2).
inline double transmission_rate(double bandwidth_hz, const ChannelParams& params) {
  if (!(bandwidth_hz > 0.0))
    throw std::invalid_argument("transmission_rate: bandwidth must be positive");
  const double snr_hz =
      params.transmit_power_w * channel_gain(params) / params.noise_density_w_hz;
  // log1p keeps precision in the wideband regime where snr/b is tiny.
  return bandwidth_hz * std::log1p(snr_hz / bandwidth_hz) / std::numbers::ln2;
}

/// Age of the migration task at bandwidth b: transfer time of the payload
/// plus the fixed collection/processing time. Never below fixed_time_s.
inline double aomt(double bandwidth_hz, const MigrationTask& task,
                   const ChannelParams& params) {
  return task.data_bits / transmission_rate(bandwidth_hz, params) + task.fixed_time_s;
}

}  // namespace twinmig
