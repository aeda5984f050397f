#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gridee/params.hpp"

namespace gridee {

struct GradCheckResult {
  int checked = 0;
  int skipped = 0;         // coordinates below the measurability floor
  int params_covered = 0;  // parameters with at least one checked coordinate
  double max_rel_err = 0.0;
  std::string worst;  // "name[i]" of the worst coordinate
};

// Compares tape gradients against central differences of the given scalar
// function. Spreads the probed coordinates over every parameter in the
// registry, picking them with the given rng seed. The loss closure must not
// mutate parameters. Relative error per coordinate:
//   |g_tape - g_num| / max(|g_tape|, |g_num|, 1e-8)
//
// A central difference of a loss of magnitude F has roughly F * 2^-52 / eps
// of cancellation noise, so coordinates whose true gradient sits below that
// carry no signal at all: the measured relative error there is the rounding
// of F, not the correctness of the tape. min_grad skips such coordinates
// (both gradients nonzero yet below the floor) and draws replacements, so
// every probed coordinate is one the instrument can actually judge. Exact
// zeros are kept: agreement at zero is meaningful. min_grad = 0 probes
// everything.
GradCheckResult gradcheck(ParamRegistry& params, const std::function<double()>& loss_value,
                          const std::function<void()>& loss_backward, int coords_per_param,
                          double eps, uint64_t seed, double min_grad = 0.0);

}  // namespace gridee
