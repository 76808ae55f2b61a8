#pragma once

// Ballot profile data model.
//
// A Profile is a candidate roster plus a multiset of weighted, precinct-tagged
// rankings. Rankings are strict orders that may be truncated; a candidate that
// does not appear on a ballot is unranked, never tied-last. All counts are
// exact 64-bit integers.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rcv {

using Count = std::uint64_t;
using CandidateId = std::uint32_t;

/// Label used when a ballot's precinct is not known.
inline constexpr std::string_view kAnyPrecinct = "*";

struct Candidate {
  CandidateId index = 0;
  std::string name;

  bool operator==(const Candidate&) const = default;
};

/// True when `name` is non-empty and free of `>`, `;`, `,` and line breaks.
bool is_valid_name(std::string_view name);

/// Ordered, duplicate-free preference list. Roster membership is checked by
/// the owning Profile.
class Ranking {
 public:
  Ranking() = default;
  explicit Ranking(std::vector<CandidateId> entries);
  Ranking(std::initializer_list<CandidateId> entries);

  std::span<const CandidateId> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  CandidateId front() const { return entries_.front(); }
  CandidateId operator[](std::size_t i) const { return entries_[i]; }

  bool contains(CandidateId c) const;
  /// 0-based position of `c`, or nullopt when unranked.
  std::optional<std::size_t> position(CandidateId c) const;

  auto operator<=>(const Ranking&) const = default;
  bool operator==(const Ranking&) const = default;

 private:
  std::vector<CandidateId> entries_;
};

struct BallotGroup {
  Ranking ranking;
  Count count = 0;
  std::string precinct{kAnyPrecinct};

  bool operator==(const BallotGroup&) const = default;
};

class Profile {
 public:
  Profile() = default;
  /// Validates names, rankings and counts; throws InvalidArgument. Does not
  /// normalize.
  Profile(std::vector<std::string> names, std::vector<BallotGroup> groups);

  std::span<const Candidate> roster() const { return roster_; }
  std::size_t candidate_count() const { return roster_.size(); }
  std::span<const BallotGroup> groups() const { return groups_; }
  Count total_ballots() const { return total_; }

  const std::string& name(CandidateId c) const { return roster_.at(c).name; }
  std::vector<std::string> names() const;
  std::optional<CandidateId> find(std::string_view name) const;
  /// Like find() but throws InvalidArgument for unknown names.
  CandidateId id(std::string_view name) const;

  /// Distinct precinct labels in sorted order.
  std::vector<std::string> precincts() const;

  bool operator==(const Profile&) const = default;

 private:
  std::vector<Candidate> roster_;
  std::vector<BallotGroup> groups_;
  Count total_ = 0;
};

/// Per-candidate first-choice counts. `exhausted` holds ballots with no
/// continuing candidate left; continuing() + exhausted is the ballot total.
struct Tally {
  std::vector<Count> votes;
  Count exhausted = 0;

  Count continuing() const;
  bool operator==(const Tally&) const = default;
};

/// Completes length n-1 rankings, merges identical (ranking, precinct) groups
/// and sorts groups by ranking then precinct.
Profile normalize(const Profile& profile);

struct Restriction {
  Profile profile;
  Count exhausted = 0;
};

/// Drops `eliminated` from the roster and every ranking. Remaining candidates
/// are re-indexed in roster order; emptied ballots are counted as exhausted.
Restriction restrict(const Profile& profile, const std::set<CandidateId>& eliminated);

Tally first_place_tally(const Profile& profile);

/// Names joined by `separator`, e.g. "Kiss>Montroll".
std::string format_ranking(const Profile& profile, const Ranking& ranking,
                           std::string_view separator = ">");

/// Ranking with the single missing candidate appended when it has n-1
/// entries; otherwise a copy.
Ranking complete_ranking(const Ranking& ranking, std::size_t n);

}  // namespace rcv
