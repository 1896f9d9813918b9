#pragma once

#include "olb/config.hpp"

namespace olb {

// Each scenario writes CSVs plus a machine-readable summary.json into
// rc.out_dir and returns 0 iff every applicable assertion passed; partial
// results are still written on failure.
int scenario_constants_audit(const RunConfig& rc);
int scenario_lp_audit(const RunConfig& rc);
int scenario_linear_decay(const RunConfig& rc);
int scenario_prop31_audit(const RunConfig& rc);
int scenario_small_data_global(const RunConfig& rc);
int scenario_norms(const RunConfig& rc);

} // namespace olb
