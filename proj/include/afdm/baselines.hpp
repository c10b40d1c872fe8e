// SPDX-License-Identifier: Apache-2.0
#pragma once

// Comparator estimators: integer-only peak decode and a continuous 2-D
// maximum-correlation search over (L, K).

#include <string_view>

#include "afdm/estimator.hpp"

namespace afdm {

enum class BaselineKind { IntegerOnly, TwoDSearch };

std::string_view to_string(BaselineKind kind);

/// integer_estimate with both fractional parts zero. pspr is measured at the peak.
Estimate integer_only(const DaftFrame& y, const AfdmGrid& g);

struct TwoDResult {
  double delay = 0.0;
  double doppler = 0.0;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Correlation of the observed pilot response with the exact-sum model column
/// for a path (L, K), normalized by the model energy over the same rows:
///   |sum_m conj(y[m]) model[m]| / ||model||,  model[m] = exp(-i2pi c2 m^2) F(m, 0).
/// Rows are the pilot observation region padded by half a comb period.
double two_d_objective(const DaftFrame& y, const AfdmGrid& g, double delay, double doppler);

/// Nelder-Mead simplex over (L, K) in [0, l_max] x [-k_max, k_max], started from
/// `init` with unit-half-sample steps. Stops when the simplex size falls below
/// 1e-3 or after 200 iterations; the best point so far is returned either way.
TwoDResult two_d_search(const DaftFrame& y, const AfdmGrid& g, const IntegerEstimate& init);

/// two_d_search wrapped as an Estimate (floor/fraction split of L and K).
Estimate two_d_estimate(const DaftFrame& y, const AfdmGrid& g);

}  // namespace afdm
