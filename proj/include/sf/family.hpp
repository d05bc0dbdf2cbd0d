#pragma once
// Finite families of subsets of {1..n}: construction, the standard family
// operators (restriction, star, slice, upper shadow, shifts), and text/JSON
// round-trip.  Members are kept sorted (lex on element lists) and deduped,
// so equality of families is plain vector equality.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sf/mask.hpp"

namespace sf {

// Enumeration caps guard against accidental blow-ups, not correctness.
// Override with the SETFAM_CAP environment variable (CLI) or per call.
inline constexpr std::uint64_t kDefaultEnumCap = 20'000'000ULL;

struct SetFamily {
    int n = 0;
    std::vector<Mask> members;          // sorted by lex_less, unique
    std::optional<int> uniform;         // k iff nonempty and all sizes == k

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
    bool contains(const Mask& m) const;
    int max_member_size() const;        // 0 for empty family
    int min_member_size() const;        // 0 for empty family
};

// Canonicalises: validates members against n, sorts, dedupes, sets uniform.
SetFamily make_family(int n, std::vector<Mask> members);

// All k-subsets of {1..n}.
SetFamily complete_family(int n, int k);

// F(X) = { S \ X : S in F, X subset S }.
SetFamily restrict_family(const SetFamily& f, const Mask& x);

// F[X] = { S in F : X subset S }.
SetFamily star(const SetFamily& f, const Mask& x);

// { S in F : S inter Y == X }, as-is or with X stripped.
// Requires X subset Y.
SetFamily slice(const SetFamily& f, const Mask& x, const Mask& y, bool keep_x);

// Upper shadow A[S]: all k-subsets of {1..n} containing some member of S.
// Every member of S must have size <= k.  Throws when C(n,k) exceeds cap.
SetFamily generated_family(const SetFamily& s, int k,
                           std::uint64_t cap = kDefaultEnumCap);

bool is_antichain(const SetFamily& f);

// Members that contain another member are dropped; duplicates collapse.
SetFamily minimal_members(const SetFamily& f);

// The (i<-j)-shift: each member holding j but not i trades j for i unless
// the traded set is already present.  Family size is preserved.
SetFamily shift_family(const SetFamily& f, int i, int j);

// Text format: optional comment/blank lines, "n=<int>" header, then one set
// per line as whitespace-separated elements.  '#' starts a comment.
SetFamily parse_family_text(const std::string& text);
std::string serialize_family_text(const SetFamily& f);

// JSON format: {"n": int, "sets": [[ints...], ...]}.
SetFamily parse_family_json(const std::string& text);
std::string serialize_family_json(const SetFamily& f);

// Dispatches on the first non-space byte ('{' selects JSON).
SetFamily parse_family(const std::string& text);

}  // namespace sf
