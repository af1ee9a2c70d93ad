#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rtmwb/lts.hpp"

namespace rtmwb {

/// A distinguishing witness: a state pair and a move of one system that the
/// other cannot match under the computed relation. `side` names the system
/// (1 or 2) owning the move; clause 3/4 witnesses cite a tau move opening
/// an unmatchable divergence.
struct BisimWitness {
  int s1 = 0;
  int s2 = 0;
  int clause = 1;  // 1..4, matching the definition's clauses
  Transition move;  // in the system named by `side`
  int side = 1;
  /// Transition path from the initial state to the witness state, per system.
  std::vector<Transition> path1, path2;
};

struct BisimVerdict {
  enum class Value { Yes, No, UnknownBeyondBound };
  Value value = Value::Yes;
  std::optional<BisimWitness> witness;  // present iff value == No

  bool yes() const { return value == Value::Yes; }
  bool no() const { return value == Value::No; }
  bool unknown() const { return value == Value::UnknownBeyondBound; }
};

/// Decide (divergence-preserving) branching bisimilarity of two finite LTSs
/// by partition refinement over their disjoint union. Both horizons must be
/// empty. With `divergence`, blocks are additionally split between states
/// that admit an infinite internal run inside their own block and states
/// that do not, iterated to a fixpoint.
BisimVerdict branching_bisim(const Lts &l1, const Lts &l2, bool divergence);

/// Direct greatest-fixpoint transliteration of the four defining clauses:
/// start from the full relation on S1 x S2 and delete violating pairs until
/// stable. Serves as the independent oracle for branching_bisim.
/// Throws if |S1|*|S2| exceeds `pair_cap`.
BisimVerdict naive_fixpoint(const Lts &l1, const Lts &l2, bool divergence,
                            long pair_cap = 10000);

/// Three-valued check on possibly truncated systems: horizon states are
/// optimistically related to everything, so a No is sound for the untruncated
/// systems; a Yes is only reported when both horizons are empty, otherwise
/// UnknownBeyondBound.
BisimVerdict bounded_bisim(const Lts &l1, const Lts &l2, bool divergence);

/// Render a witness as a transition-sequence script.
std::string describe_witness(const BisimWitness &w);

}  // namespace rtmwb
