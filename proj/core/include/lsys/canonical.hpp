#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lsys/turtle.hpp"
#include "lsys/word.hpp"

namespace lsys {

/// Angle used for the doubled-segment check. It divides no right angle, so
/// only coincidences that hold for every branching angle are reported.
inline constexpr double kValidationAngle = 25.714285;

/// Endpoint tolerance for coincident segments, relative to the F-length.
inline constexpr double kCoincidenceTolerance = 1e-6;

/// Where a violation sits: a token index, a character index in the char
/// form (rule 2), or a pair of segment indices in turtle order (rule 1).
struct ViolationLocation {
    enum class Kind { Token, Character, SegmentPair };

    Kind kind = Kind::Token;
    std::size_t first = 0;
    std::size_t second = 0;

    bool operator==(const ViolationLocation&) const = default;
};

/// Breach of one of the five word rules:
///   1. no doubled segments      2. no adjacent +- / -+
///   3. no empty branch []       4. sibling branches sorted right to left
///   5. a branch never ends with a sub-branch
struct RuleViolation {
    int rule = 0;
    ViolationLocation location;
    std::string description;
};

struct CheckOptions {
    /// Also report collinear segments that overlap only partially (rule 1).
    bool flag_partial_overlaps = false;
};

/// Rewrites a word into canonical form (rules 4 and 5) and returns it in the
/// same scheme. Working from the innermost branch outwards, each branch
/// repeatedly
///   - stably sorts every run of adjacent sibling groups by branch key,
///   - unwraps a trailing bracketed group in place,
/// until neither step changes it. Empty groups are left for check() to
/// reject, and an unwrap that would place opposite rotations next to each
/// other (possible only in the char scheme) is skipped. Idempotent.
Word rewrite_canonical(const Word& word);

/// Sort order of sibling groups: compares the content token sequences
/// lexicographically under the rank + < F < - < [ < ] (fused +F < F < -F).
/// Returns <0, 0 or >0.
int compare_branches(std::span<const Token> lhs, std::span<const Token> rhs) noexcept;

/// Every rule violation of `word`. Rule 1 interprets the word at
/// `validation_angle` with F-length `length`.
std::vector<RuleViolation> check(const Word& word, double validation_angle = kValidationAngle,
                                 double length = 100.0, const CheckOptions& options = {});

bool is_canonical(const Word& word, double validation_angle = kValidationAngle, double length = 100.0);

/// Index pairs (i < j) of segments whose endpoints coincide within
/// `tolerance`, in either orientation. Runs in expected linear time.
std::vector<std::pair<std::size_t, std::size_t>> coincident_segments(std::span<const Segment> segments,
                                                                     double tolerance);

/// Collinear pairs that share a stretch longer than `tolerance` without
/// being coincident. Quadratic.
std::vector<std::pair<std::size_t, std::size_t>> partially_overlapping_segments(std::span<const Segment> segments,
                                                                                double tolerance);

}  // namespace lsys
