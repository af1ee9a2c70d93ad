#pragma once

#include "rtmwb/machine.hpp"

namespace rtmwb {

/// Replace every stay rule s -a[d/e]S-> t by s -a[d/e]L-> s%t plus
/// s%t -tau[d'/d']R-> t for every tape symbol d'. L/R rules are copied
/// verbatim. The result has no stay moves and is divergence-preserving
/// branching bisimilar to the input.
Rtm eliminate_stay(const Rtm &m);

/// The RTM (with stay moves) whose configuration graph is pointwise equal
/// to the ITM's: input rules s -in?i[d/e]M-> t@o from the transition
/// function, and output rules s@o -out!o[d/d]S-> s for every tape symbol d.
Rtm itm_to_rtm(const Itm &i);

}  // namespace rtmwb
