#include "rcv/profile.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "rcv/error.hpp"

namespace rcv {

bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  return name.find_first_of(">;,\n\r") == std::string_view::npos;
}

Ranking::Ranking(std::vector<CandidateId> entries) : entries_(std::move(entries)) {
  std::vector<CandidateId> sorted = entries_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("ranking lists a candidate twice");
  }
}

Ranking::Ranking(std::initializer_list<CandidateId> entries)
    : Ranking(std::vector<CandidateId>(entries)) {}

bool Ranking::contains(CandidateId c) const {
  return std::find(entries_.begin(), entries_.end(), c) != entries_.end();
}

std::optional<std::size_t> Ranking::position(CandidateId c) const {
  auto it = std::find(entries_.begin(), entries_.end(), c);
  if (it == entries_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - entries_.begin());
}

Profile::Profile(std::vector<std::string> names, std::vector<BallotGroup> groups)
    : groups_(std::move(groups)) {
  std::unordered_set<std::string> seen;
  roster_.reserve(names.size());
  for (auto& name : names) {
    if (!is_valid_name(name)) {
      throw InvalidArgument("invalid candidate name '" + name + "'");
    }
    if (!seen.insert(name).second) {
      throw InvalidArgument("duplicate candidate name '" + name + "'");
    }
    roster_.push_back({static_cast<CandidateId>(roster_.size()), std::move(name)});
  }
  for (const auto& g : groups_) {
    if (g.count == 0) throw InvalidArgument("ballot group count must be positive");
    if (g.ranking.empty()) throw InvalidArgument("ballot group has an empty ranking");
    if (g.precinct.empty() || g.precinct.find_first_of(">;,\n\r") != std::string::npos) {
      throw InvalidArgument("invalid precinct label '" + g.precinct + "'");
    }
    for (CandidateId c : g.ranking.entries()) {
      if (c >= roster_.size()) throw InvalidArgument("ranking refers to an unknown candidate");
    }
    if (total_ + g.count < total_) throw InvalidArgument("ballot total overflows");
    total_ += g.count;
  }
}

std::vector<std::string> Profile::names() const {
  std::vector<std::string> out;
  out.reserve(roster_.size());
  for (const auto& c : roster_) out.push_back(c.name);
  return out;
}

std::optional<CandidateId> Profile::find(std::string_view name) const {
  for (const auto& c : roster_) {
    if (c.name == name) return c.index;
  }
  return std::nullopt;
}

CandidateId Profile::id(std::string_view name) const {
  if (auto c = find(name)) return *c;
  throw InvalidArgument("unknown candidate '" + std::string(name) + "'");
}

std::vector<std::string> Profile::precincts() const {
  std::set<std::string> labels;
  for (const auto& g : groups_) labels.insert(g.precinct);
  return {labels.begin(), labels.end()};
}

Count Tally::continuing() const {
  return std::accumulate(votes.begin(), votes.end(), Count{0});
}

Ranking complete_ranking(const Ranking& ranking, std::size_t n) {
  if (n < 2 || ranking.size() + 1 != n) return ranking;
  std::vector<CandidateId> entries(ranking.entries().begin(), ranking.entries().end());
  for (CandidateId c = 0; c < n; ++c) {
    if (!ranking.contains(c)) {
      entries.push_back(c);
      break;
    }
  }
  return Ranking(std::move(entries));
}

std::string format_ranking(const Profile& profile, const Ranking& ranking,
                           std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (i) out += separator;
    out += profile.name(ranking[i]);
  }
  return out;
}

Profile normalize(const Profile& profile) {
  const std::size_t n = profile.candidate_count();
  std::map<std::pair<Ranking, std::string>, Count> merged;
  for (const auto& g : profile.groups()) {
    merged[{complete_ranking(g.ranking, n), g.precinct}] += g.count;
  }
  std::vector<BallotGroup> groups;
  groups.reserve(merged.size());
  for (auto& [key, count] : merged) {
    groups.push_back({key.first, count, key.second});
  }
  return Profile(profile.names(), std::move(groups));
}

Restriction restrict(const Profile& profile, const std::set<CandidateId>& eliminated) {
  const std::size_t n = profile.candidate_count();
  for (CandidateId c : eliminated) {
    if (c >= n) throw InvalidArgument("cannot eliminate an unknown candidate");
  }
  if (eliminated.size() >= n) {
    throw InvalidArgument("cannot eliminate every candidate");
  }

  std::vector<std::optional<CandidateId>> remap(n);
  std::vector<std::string> names;
  for (const auto& c : profile.roster()) {
    if (eliminated.count(c.index)) continue;
    remap[c.index] = static_cast<CandidateId>(names.size());
    names.push_back(c.name);
  }

  Restriction out;
  std::vector<BallotGroup> groups;
  for (const auto& g : profile.groups()) {
    std::vector<CandidateId> kept;
    for (CandidateId c : g.ranking.entries()) {
      if (remap[c]) kept.push_back(*remap[c]);
    }
    if (kept.empty()) {
      out.exhausted += g.count;
      continue;
    }
    groups.push_back({Ranking(std::move(kept)), g.count, g.precinct});
  }
  out.profile = normalize(Profile(std::move(names), std::move(groups)));
  return out;
}

Tally first_place_tally(const Profile& profile) {
  Tally tally;
  tally.votes.assign(profile.candidate_count(), 0);
  for (const auto& g : profile.groups()) tally.votes[g.ranking.front()] += g.count;
  return tally;
}

}  // namespace rcv
