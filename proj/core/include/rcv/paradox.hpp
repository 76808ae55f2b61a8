#pragma once

// Monotonicity and consistency paradoxes under instant runoff.
//
// Verification functions take a concrete ballot modification (Scenario) or
// electorate split (Partition) and return evidence when the paradox holds.
// Search functions enumerate or sample those objects and keep every verified
// finding. All results are deterministic for fixed inputs, including under
// parallel evaluation.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcv/methods.hpp"
#include "rcv/profile.hpp"

namespace rcv {

struct BallotShift {
  Ranking from;
  Ranking to;
  std::string precinct{kAnyPrecinct};
  Count count = 0;

  bool operator==(const BallotShift&) const = default;
};

struct Scenario {
  std::vector<BallotShift> shifts;

  bool operator==(const Scenario&) const = default;
};

/// Applies shifts in order, then normalizes. Rankings in a shift are compared
/// after length n-1 completion. Throws InvalidArgument for an empty scenario
/// or a malformed shift, InsufficientCount when a source group is too small.
Profile apply_scenario(const Profile& profile, const Scenario& scenario);

enum class ShiftEffect { Favorable, Unfavorable, Neither };

const char* to_string(ShiftEffect effect);

/// Favorable: the subject moves strictly up (unranked is below every ranked
/// position) while the other candidates keep their relative order, or the
/// target is the subject's bullet ballot. Unfavorable is the mirror image
/// without the bullet form.
ShiftEffect classify_shift(const BallotShift& shift, CandidateId subject, std::size_t n);

enum class Direction { Up, Down };

const char* to_string(Direction direction);
std::optional<Direction> parse_direction(std::string_view text);

struct MonotonicityFinding {
  Direction direction = Direction::Up;
  CandidateId subject = 0;
  Scenario scenario;
  Profile modified_profile;
  IrvOutcome original;
  IrvOutcome modified;
};

/// Up: subject wins the original, loses the modified election and every shift
/// is favorable to the subject. Down: the mirror image.
std::optional<MonotonicityFinding> verify_monotonicity(const Profile& profile,
                                                       const Scenario& scenario,
                                                       CandidateId subject, Direction direction);

struct MonotonicityLimits {
  /// Upper bound on scenarios evaluated.
  std::uint64_t max_scenarios = 5'000'000;
  /// Ballots move in multiples of step.
  Count step = 1;
  /// 1 for single-shift scenarios only, 2 to add shift pairs.
  unsigned max_shifts = 2;
  unsigned workers = 1;
};

/// Moves multiples of `step` ballots from existing groups to targets that
/// swap the subject with an adjacent candidate (towards the top for Up,
/// towards the bottom for Down) or, for Up only, to the subject's bullet
/// ballot. Up examines the current winner; Down examines every loser.
std::vector<MonotonicityFinding> search_monotonicity(const Profile& profile, Direction direction,
                                                     const MonotonicityLimits& limits = {});

enum class PartitionLevel { Precinct, Ballot };

const char* to_string(PartitionLevel level);

/// side1[g] ballots of profile.groups()[g] go to side 1, the rest to side 2.
/// Only meaningful for the normalized profile it was built against.
struct Partition {
  PartitionLevel level = PartitionLevel::Ballot;
  std::vector<Count> side1;

  auto operator<=>(const Partition&) const = default;
};

/// Side 1 receives every group whose precinct is in `labels`.
Partition precinct_partition(const Profile& profile, const std::vector<std::string>& labels);

struct Split {
  Profile side1;
  Profile side2;
};

/// Throws InvalidArgument if the partition does not fit the profile or leaves
/// a side empty.
Split split_by_partition(const Profile& profile, const Partition& partition);

struct ConsistencyFinding {
  CandidateId subject = 0;
  Partition partition;
  IrvOutcome side1;
  IrvOutcome side2;
  IrvOutcome combined;
};

/// Finding iff the subject wins both sides and loses the combined election.
std::optional<ConsistencyFinding> verify_consistency(const Profile& profile,
                                                     const Partition& partition,
                                                     CandidateId subject);

/// Every bipartition of the precinct labels (the last label stays on side 2),
/// bitmask ascending, each candidate as subject. Needs at least two labels.
std::vector<ConsistencyFinding> enumerate_precinct_partitions(const Profile& profile);

/// Random ballot-level splits; trial t draws from a stream seeded by
/// (seed, t). Findings are de-duplicated on (subject, slices) and sorted.
std::vector<ConsistencyFinding> search_ballot_partitions(const Profile& profile,
                                                         std::uint64_t seed, std::uint64_t trials,
                                                         unsigned workers = 1);

// Text forms used on the command line and in reports.
//
// Shift: `<count> x '<from>' -> '<to>' [@<precinct>]`, rankings written as
// `A>B>C`; a scenario joins shifts with `;`.
// Precinct partition: `P1,P5|rest` or `P1,P5|P2,P3,...`.

std::string format_shift(const Profile& profile, const BallotShift& shift);
std::string format_scenario(const Profile& profile, const Scenario& scenario);
/// Throws InvalidArgument on malformed text or unknown names.
Scenario parse_scenario(const Profile& profile, std::string_view text);
Partition parse_precinct_partition(const Profile& profile, std::string_view text);

}  // namespace rcv
