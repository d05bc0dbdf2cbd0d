#pragma once
// Maximal simplification of a generator family: repeatedly trade a member
// for one of its proper subsets while nu(.,t) stays <= s, keeping members
// inclusion-minimal.  At the fixed point no member can shrink any further.

#include "sf/family.hpp"

namespace sf {

// Scan order: members by decreasing size (canonical order within a size),
// candidate subsets by decreasing size (lex within a size); first acceptable
// replacement wins, then the scan restarts.  Throws if nu(S,t) > s.
SetFamily simplify(const SetFamily& s_in, int t, int s);

// True iff every member/every proper subset replacement pushes nu above s:
// the fixed-point test behind simplify, exposed for verification.
bool is_maximal_simplified(const SetFamily& f, int t, int s);

}  // namespace sf
