#include "rcv/methods.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <thread>

#include "rcv/error.hpp"

namespace rcv {
namespace {

void require_ballots(const Profile& profile) {
  if (profile.candidate_count() == 0) throw InvalidArgument("profile has no candidates");
  if (profile.total_ballots() == 0) throw InvalidArgument("profile has no ballots");
}

// Narrows `tied` using earlier rounds, newest first. `prefer_fewer` selects the
// candidates with the smallest earlier tally (elimination); otherwise the
// largest (leader). Falls back to the lowest index.
CandidateId break_tie(std::vector<CandidateId> tied,
                      const std::vector<std::vector<Count>>& history,
                      TieBreakPolicy policy, bool prefer_fewer) {
  if (policy == TieBreakPolicy::Backward && history.size() > 1) {
    for (auto round = history.rbegin() + 1; round != history.rend() && tied.size() > 1; ++round) {
      const auto& votes = *round;
      Count best = votes[tied.front()];
      for (CandidateId c : tied) {
        best = prefer_fewer ? std::min(best, votes[c]) : std::max(best, votes[c]);
      }
      std::erase_if(tied, [&](CandidateId c) { return votes[c] != best; });
    }
  }
  return *std::min_element(tied.begin(), tied.end());
}

}  // namespace

PluralityResult plurality(const Profile& profile) {
  require_ballots(profile);
  PluralityResult out;
  out.tally = first_place_tally(profile);
  const auto& votes = out.tally.votes;
  const Count best = *std::max_element(votes.begin(), votes.end());
  const auto leaders = std::count(votes.begin(), votes.end(), best);
  out.winner = static_cast<CandidateId>(std::find(votes.begin(), votes.end(), best) - votes.begin());
  out.tie_broken = leaders > 1;
  return out;
}

const char* to_string(StopReason reason) {
  return reason == StopReason::MajorityReached ? "majority-reached" : "two-remaining";
}

IrvOutcome irv(const Profile& profile, TieBreakPolicy policy) {
  require_ballots(profile);
  const std::size_t n = profile.candidate_count();
  const auto groups = profile.groups();

  // cursor[g] indexes the group's highest-ranked continuing candidate; equal
  // to the ranking size once the ballot is exhausted.
  std::vector<std::size_t> cursor(groups.size(), 0);
  std::vector<bool> alive(n, true);
  std::size_t alive_count = n;
  std::vector<std::vector<Count>> history;

  IrvOutcome outcome;
  Count exhausted = 0;
  std::vector<Count> transfers(n, 0);
  Count exhausted_this_round = 0;

  for (std::size_t number = 1;; ++number) {
    IrvRound round;
    round.number = number;
    round.tally.votes.assign(n, 0);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (cursor[g] < groups[g].ranking.size()) {
        round.tally.votes[groups[g].ranking[cursor[g]]] += groups[g].count;
      }
    }
    round.tally.exhausted = exhausted;
    round.transfers = transfers;
    round.exhausted_this_round = exhausted_this_round;
    for (CandidateId c = 0; c < n; ++c) {
      if (alive[c]) round.continuing.push_back(c);
    }
    history.push_back(round.tally.votes);

    const auto& votes = round.tally.votes;
    const Count continuing = round.tally.continuing();
    if (continuing == 0) throw NoWinner("every ballot is exhausted");

    Count best = 0;
    Count worst = std::numeric_limits<Count>::max();
    for (CandidateId c : round.continuing) {
      best = std::max(best, votes[c]);
      worst = std::min(worst, votes[c]);
    }

    const bool majority = best > continuing - best;
    if (majority || alive_count <= 2) {
      std::vector<CandidateId> leaders;
      for (CandidateId c : round.continuing) {
        if (votes[c] == best) leaders.push_back(c);
      }
      round.tie_broken = leaders.size() > 1;
      outcome.winner = break_tie(std::move(leaders), history, policy, false);
      outcome.stop_reason = majority ? StopReason::MajorityReached : StopReason::TwoRemaining;
      outcome.rounds.push_back(std::move(round));
      return outcome;
    }

    std::vector<CandidateId> trailing;
    for (CandidateId c : round.continuing) {
      if (votes[c] == worst) trailing.push_back(c);
    }
    round.tie_broken = trailing.size() > 1;
    const CandidateId loser = break_tie(std::move(trailing), history, policy, true);
    round.eliminated = loser;
    alive[loser] = false;
    --alive_count;

    std::fill(transfers.begin(), transfers.end(), 0);
    exhausted_this_round = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& ranking = groups[g].ranking;
      if (cursor[g] >= ranking.size() || ranking[cursor[g]] != loser) continue;
      while (cursor[g] < ranking.size() && !alive[ranking[cursor[g]]]) ++cursor[g];
      if (cursor[g] < ranking.size()) {
        transfers[ranking[cursor[g]]] += groups[g].count;
      } else {
        exhausted_this_round += groups[g].count;
      }
    }
    exhausted += exhausted_this_round;
    outcome.rounds.push_back(std::move(round));
  }
}

CandidateId irv_winner(const Profile& profile, TieBreakPolicy policy) {
  return irv(profile, policy).winner;
}

std::string HalfPoints::to_string() const {
  std::string out = std::to_string(halves_ / 2);
  if (!is_whole()) out += ".5";
  return out;
}

const char* to_string(BordaConvention convention) {
  switch (convention) {
    case BordaConvention::Zero:
      return "zero";
    case BordaConvention::Average:
      return "average";
    case BordaConvention::Last:
      return "last";
  }
  return "average";
}

std::optional<BordaConvention> parse_borda_convention(std::string_view text) {
  if (text == "zero") return BordaConvention::Zero;
  if (text == "average") return BordaConvention::Average;
  if (text == "last") return BordaConvention::Last;
  return std::nullopt;
}

BordaResult borda(const Profile& profile, BordaConvention convention) {
  require_ballots(profile);
  const std::size_t n = profile.candidate_count();
  BordaResult out;
  out.convention = convention;
  out.scores.assign(n, HalfPoints{});

  for (const auto& g : profile.groups()) {
    const auto& ranking = g.ranking;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      out.scores[ranking[i]] += HalfPoints::whole((n - i) * g.count);
    }
    const std::size_t unranked = n - ranking.size();
    if (unranked == 0 || convention == BordaConvention::Zero) continue;
    // Mean of the point values 1..unranked is (unranked + 1) / 2.
    const HalfPoints each = convention == BordaConvention::Last
                                ? HalfPoints::whole(g.count)
                                : HalfPoints::from_halves((unranked + 1) * g.count);
    for (CandidateId c = 0; c < n; ++c) {
      if (!ranking.contains(c)) out.scores[c] += each;
    }
  }

  const auto best = std::max_element(out.scores.begin(), out.scores.end());
  out.winner = static_cast<CandidateId>(best - out.scores.begin());
  out.tie_broken = std::count(out.scores.begin(), out.scores.end(), *best) > 1;
  return out;
}

PairwiseMatrix& PairwiseMatrix::operator+=(const PairwiseMatrix& other) {
  if (other.n_ != n_) throw InvalidArgument("pairwise matrices differ in size");
  for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += other.cells_[i];
  return *this;
}

namespace {

PairwiseMatrix count_pairs(std::span<const BallotGroup> groups, std::size_t n) {
  PairwiseMatrix m(n);
  std::vector<bool> ranked(n);
  for (const auto& g : groups) {
    std::fill(ranked.begin(), ranked.end(), false);
    const auto& ranking = g.ranking;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      const CandidateId a = ranking[i];
      ranked[a] = true;
      for (std::size_t j = i + 1; j < ranking.size(); ++j) m.at(a, ranking[j]) += g.count;
    }
    for (CandidateId a : ranking.entries()) {
      for (CandidateId b = 0; b < n; ++b) {
        if (!ranked[b]) m.at(a, b) += g.count;
      }
    }
  }
  return m;
}

}  // namespace

PairwiseMatrix pairwise_matrix(const Profile& profile, unsigned workers) {
  const std::size_t n = profile.candidate_count();
  const auto groups = profile.groups();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(groups.size())));
  if (workers <= 1) return count_pairs(groups, n);

  std::vector<PairwiseMatrix> partial(workers);
  std::vector<std::thread> threads;
  const std::size_t chunk = (groups.size() + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(groups.size(), w * chunk);
    const std::size_t end = std::min(groups.size(), begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      partial[w] = count_pairs(groups.subspan(begin, end - begin), n);
    });
  }
  for (auto& t : threads) t.join();
  PairwiseMatrix m(n);
  for (const auto& p : partial) m += p;
  return m;
}

std::optional<CandidateId> condorcet_winner(const PairwiseMatrix& m) {
  const std::size_t n = m.size();
  for (CandidateId a = 0; a < n; ++a) {
    bool beats_all = true;
    for (CandidateId b = 0; b < n && beats_all; ++b) {
      if (a != b && m(a, b) <= m(b, a)) beats_all = false;
    }
    if (beats_all) return a;
  }
  return std::nullopt;
}

CycleReport majority_cycle(const PairwiseMatrix& m) {
  const std::size_t n = m.size();
  CycleReport report;
  report.condorcet_winner = condorcet_winner(m);

  auto beats = [&](CandidateId a, CandidateId b) { return m(a, b) > m(b, a); };
  for (CandidateId a = 0; a < n; ++a) {
    for (CandidateId b = a + 1; b < n; ++b) {
      if (m(a, b) == m(b, a)) report.has_pairwise_tie = true;
    }
  }

  // A cycle is reported starting from its smallest member, so a search rooted
  // at `start` only visits larger indices. Iterative deepening on the length
  // with a distance-to-start bound keeps the DFS lexicographic and shortest.
  for (std::size_t length = 3; length <= n; ++length) {
    for (CandidateId start = 0; start < n; ++start) {
      std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
      dist[start] = 0;
      std::vector<CandidateId> frontier{start};
      while (!frontier.empty()) {
        std::vector<CandidateId> next;
        for (CandidateId v : frontier) {
          for (CandidateId u = start + 1; u < n; ++u) {
            if (dist[u] == std::numeric_limits<std::size_t>::max() && beats(u, v)) {
              dist[u] = dist[v] + 1;
              next.push_back(u);
            }
          }
        }
        frontier = std::move(next);
      }

      std::vector<CandidateId> path{start};
      std::vector<bool> used(n, false);
      used[start] = true;
      std::function<bool(CandidateId)> extend = [&](CandidateId v) {
        if (path.size() == length) return beats(v, start);
        for (CandidateId u = start + 1; u < n; ++u) {
          if (used[u] || !beats(v, u)) continue;
          if (dist[u] == std::numeric_limits<std::size_t>::max()) continue;
          if (path.size() + dist[u] > length) continue;
          used[u] = true;
          path.push_back(u);
          if (extend(u)) return true;
          path.pop_back();
          used[u] = false;
        }
        return false;
      };
      if (extend(start)) {
        report.cycle = path;
        return report;
      }
    }
  }
  return report;
}

}  // namespace rcv
