#pragma once

// JSON analysis reports.
//
// Every report is an object with `"schema": 1` and a `"kind"` of irv,
// plurality, borda, pairwise, condorcet, monotonicity or consistency.
// Candidates appear by name in roster order; counts are plain JSON integers.
// Borda scores are exact decimal strings. Output is byte-stable for equal
// inputs.
//
// Paradox findings must be reported against the normalized profile they were
// computed on (partitions index its ballot groups).

#include <optional>
#include <span>
#include <string>

#include "rcv/methods.hpp"
#include "rcv/paradox.hpp"
#include "rcv/profile.hpp"

namespace rcv {

inline constexpr int kReportSchema = 1;

std::string write_report(const Profile& profile, const PluralityResult& result);
std::string write_report(const Profile& profile, const IrvOutcome& outcome);
std::string write_report(const Profile& profile, const BordaResult& result);
std::string write_report(const Profile& profile, const PairwiseMatrix& matrix);
std::string write_report(const Profile& profile, const CycleReport& report);

std::string write_report(const Profile& profile, const MonotonicityFinding& finding);
std::string write_report(const Profile& profile, std::span<const MonotonicityFinding> findings,
                         std::optional<Direction> direction = std::nullopt);

std::string write_report(const Profile& profile, const ConsistencyFinding& finding);
std::string write_report(const Profile& profile, std::span<const ConsistencyFinding> findings,
                         std::optional<PartitionLevel> level = std::nullopt);

}  // namespace rcv
