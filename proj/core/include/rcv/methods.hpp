#pragma once

// Winner determination over a Profile: plurality, instant runoff with full
// round records, Borda under three truncation conventions, and pairwise
// (Condorcet) analysis.

#include <optional>
#include <string>
#include <vector>

#include "rcv/profile.hpp"

namespace rcv {

/// How ties for elimination (or for the lead) are resolved.
///
/// Backward: compare the tied candidates' tallies in the previous round, then
/// the round before, and so on; fall back to the lowest candidate index.
/// LowestIndex: go straight to the lowest-index fallback.
enum class TieBreakPolicy { Backward, LowestIndex };

struct PluralityResult {
  CandidateId winner = 0;
  Tally tally;
  bool tie_broken = false;
};

/// Throws InvalidArgument on an empty roster or a profile with no ballots.
PluralityResult plurality(const Profile& profile);

struct IrvRound {
  std::size_t number = 1;
  /// Candidates still in the race this round, by index.
  std::vector<CandidateId> continuing;
  /// votes[c] for continuing c; zero for eliminated candidates. exhausted is
  /// cumulative.
  Tally tally;
  std::optional<CandidateId> eliminated;
  /// Ballots received this round from the previous round's elimination.
  std::vector<Count> transfers;
  Count exhausted_this_round = 0;
  bool tie_broken = false;

  bool operator==(const IrvRound&) const = default;
};

enum class StopReason { MajorityReached, TwoRemaining };

const char* to_string(StopReason reason);

struct IrvOutcome {
  CandidateId winner = 0;
  std::vector<IrvRound> rounds;
  StopReason stop_reason = StopReason::MajorityReached;

  const IrvRound& final_round() const { return rounds.back(); }
  bool operator==(const IrvOutcome&) const = default;
};

/// Sequential-elimination instant runoff. Stops once the leader holds more
/// than half of the continuing votes or two candidates remain.
///
/// Throws InvalidArgument for an empty profile and NoWinner if every ballot
/// exhausts before a winner exists.
IrvOutcome irv(const Profile& profile, TieBreakPolicy policy = TieBreakPolicy::Backward);

/// IRV winner only; same semantics as irv() without building round records.
CandidateId irv_winner(const Profile& profile, TieBreakPolicy policy = TieBreakPolicy::Backward);

/// Exact score with denominator at most 2, stored as a count of half points.
class HalfPoints {
 public:
  constexpr HalfPoints() = default;
  static constexpr HalfPoints from_halves(Count halves) { return HalfPoints(halves); }
  static constexpr HalfPoints whole(Count points) { return HalfPoints(points * 2); }

  constexpr Count halves() const { return halves_; }
  constexpr bool is_whole() const { return halves_ % 2 == 0; }
  /// "17496" or "18425.5".
  std::string to_string() const;

  constexpr HalfPoints& operator+=(HalfPoints other) {
    halves_ += other.halves_;
    return *this;
  }
  constexpr auto operator<=>(const HalfPoints&) const = default;

 private:
  constexpr explicit HalfPoints(Count halves) : halves_(halves) {}
  Count halves_ = 0;
};

/// Points given to candidates a ballot leaves unranked.
enum class BordaConvention { Zero, Average, Last };

const char* to_string(BordaConvention convention);
std::optional<BordaConvention> parse_borda_convention(std::string_view text);

struct BordaResult {
  std::vector<HalfPoints> scores;
  CandidateId winner = 0;
  BordaConvention convention = BordaConvention::Average;
  bool tie_broken = false;
};

BordaResult borda(const Profile& profile, BordaConvention convention = BordaConvention::Average);

/// m(a, b) = ballots ranking a above b. A ranked candidate beats an unranked
/// one; two unranked candidates count for neither.
class PairwiseMatrix {
 public:
  PairwiseMatrix() = default;
  explicit PairwiseMatrix(std::size_t n) : n_(n), cells_(n * n, 0) {}

  std::size_t size() const { return n_; }
  Count operator()(CandidateId a, CandidateId b) const { return cells_[a * n_ + b]; }
  Count& at(CandidateId a, CandidateId b) { return cells_[a * n_ + b]; }

  PairwiseMatrix& operator+=(const PairwiseMatrix& other);
  bool operator==(const PairwiseMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Count> cells_;
};

/// `workers` > 1 splits ballot groups across threads; the result does not
/// depend on it.
PairwiseMatrix pairwise_matrix(const Profile& profile, unsigned workers = 1);

std::optional<CandidateId> condorcet_winner(const PairwiseMatrix& matrix);

struct CycleReport {
  std::optional<CandidateId> condorcet_winner;
  /// c1 -> c2 -> ... -> ck -> c1, each step a strict majority win. Rotated to
  /// start at its smallest index.
  std::optional<std::vector<CandidateId>> cycle;
  bool has_pairwise_tie = false;
};

/// Shortest cycle in the strict majority graph. Among shortest cycles the one
/// with the smallest starting index wins, then the lexicographically smallest.
CycleReport majority_cycle(const PairwiseMatrix& matrix);

}  // namespace rcv
