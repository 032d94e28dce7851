// baselines.hpp - fixed-antenna and tied-position reference schemes
#pragma once

#include "marelay/ao_driver.hpp"

namespace marelay {

// Fixed antennas on the reference grid; weights from one SDP solve.
SolutionState fpa_solve(const SystemConfig& cfg, const ChannelRealization& ch);

// One shared position set for both stages. Starts from the fpa solution and
// alternates finite-difference position ascent on the rate with SDP weight
// updates, so its rate never falls below fpa's on the same channel.
SolutionState otpa_solve(const SystemConfig& cfg, const ChannelRealization& ch);

}  // namespace marelay
