#pragma once

#include <vector>

#include "renn/rng.hpp"

namespace renn {

enum class RunMode { kTrain, kEval };

/// Inverted-dropout mask: each entry is 0 with probability `rate`, otherwise
/// 1/(1-rate), so the expectation of masked values matches the input.
std::vector<double> dropout_mask(std::size_t len, double rate, Rng& rng);

/// Training mode: zero entries independently with probability `rate` and
/// scale survivors by 1/(1-rate). Inference mode: identity.
std::vector<double> apply_dropout(const std::vector<double>& v, double rate,
                                  RunMode mode, Rng& rng);

}  // namespace renn
