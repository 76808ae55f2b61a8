#include "rcv/paradox.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "rcv/error.hpp"

namespace rcv {
namespace {

using GroupKey = std::pair<Ranking, std::string>;

void check_ranking(const Ranking& ranking, std::size_t n, const char* what) {
  if (ranking.empty()) throw InvalidArgument(std::string("shift has an empty ") + what + " ranking");
  for (CandidateId c : ranking.entries()) {
    if (c >= n) throw InvalidArgument(std::string("shift ") + what + " ranks an unknown candidate");
  }
}

// Runs `job(i)` for i in [0, count) on up to `workers` threads. Job i writes
// only to slot i of whatever it owns, so the caller's merge order is fixed.
template <typename Job>
void parallel_for(std::size_t count, unsigned workers, Job job) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) job(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace

Profile apply_scenario(const Profile& profile, const Scenario& scenario) {
  if (scenario.shifts.empty()) throw InvalidArgument("scenario has no shifts");
  const std::size_t n = profile.candidate_count();

  std::map<GroupKey, Count> groups;
  const Profile normalized = normalize(profile);
  for (const auto& g : normalized.groups()) groups[{g.ranking, g.precinct}] = g.count;

  for (std::size_t i = 0; i < scenario.shifts.size(); ++i) {
    const auto& shift = scenario.shifts[i];
    check_ranking(shift.from, n, "source");
    check_ranking(shift.to, n, "target");
    if (shift.count == 0) throw InvalidArgument("shift count must be positive");
    const Ranking from = complete_ranking(shift.from, n);
    const Ranking to = complete_ranking(shift.to, n);
    if (from == to) throw InvalidArgument("shift source and target are the same ranking");

    auto source = groups.find({from, shift.precinct});
    const Count available = source == groups.end() ? 0 : source->second;
    if (available < shift.count) {
      throw InsufficientCount("shift " + std::to_string(i + 1) + " (" +
                              format_shift(profile, shift) + ") needs " +
                              std::to_string(shift.count) + " ballots but the group holds " +
                              std::to_string(available));
    }
    source->second -= shift.count;
    if (source->second == 0) groups.erase(source);
    groups[{to, shift.precinct}] += shift.count;
  }

  std::vector<BallotGroup> out;
  out.reserve(groups.size());
  for (const auto& [key, count] : groups) out.push_back({key.first, count, key.second});
  return normalize(Profile(profile.names(), std::move(out)));
}

const char* to_string(ShiftEffect effect) {
  switch (effect) {
    case ShiftEffect::Favorable:
      return "favorable";
    case ShiftEffect::Unfavorable:
      return "unfavorable";
    case ShiftEffect::Neither:
      return "neither";
  }
  return "neither";
}

ShiftEffect classify_shift(const BallotShift& shift, CandidateId subject, std::size_t n) {
  const Ranking from = complete_ranking(shift.from, n);
  const Ranking to = complete_ranking(shift.to, n);
  if (from == to) return ShiftEffect::Neither;
  if (shift.to.size() == 1 && shift.to.front() == subject) return ShiftEffect::Favorable;

  auto others = [subject](const Ranking& r) {
    std::vector<CandidateId> rest;
    for (CandidateId c : r.entries()) {
      if (c != subject) rest.push_back(c);
    }
    return rest;
  };
  if (others(from) != others(to)) return ShiftEffect::Neither;

  const std::size_t before = from.position(subject).value_or(n);
  const std::size_t after = to.position(subject).value_or(n);
  if (after < before) return ShiftEffect::Favorable;
  if (after > before) return ShiftEffect::Unfavorable;
  return ShiftEffect::Neither;
}

const char* to_string(Direction direction) { return direction == Direction::Up ? "up" : "down"; }

std::optional<Direction> parse_direction(std::string_view text) {
  if (text == "up") return Direction::Up;
  if (text == "down") return Direction::Down;
  return std::nullopt;
}

std::optional<MonotonicityFinding> verify_monotonicity(const Profile& profile,
                                                       const Scenario& scenario,
                                                       CandidateId subject, Direction direction) {
  if (subject >= profile.candidate_count()) throw InvalidArgument("unknown subject candidate");
  Profile modified = apply_scenario(profile, scenario);

  const ShiftEffect wanted = direction == Direction::Up ? ShiftEffect::Favorable
                                                        : ShiftEffect::Unfavorable;
  for (const auto& shift : scenario.shifts) {
    if (classify_shift(shift, subject, profile.candidate_count()) != wanted) return std::nullopt;
  }

  IrvOutcome original = irv(profile);
  const bool won_before = original.winner == subject;
  if (won_before != (direction == Direction::Up)) return std::nullopt;
  IrvOutcome after = irv(modified);
  const bool wins_after = after.winner == subject;
  if (wins_after == won_before) return std::nullopt;

  return MonotonicityFinding{direction, subject, scenario, std::move(modified),
                             std::move(original), std::move(after)};
}

namespace {

struct Move {
  std::size_t group;
  Ranking target;
};

// One unit of search work: a single move (second == npos) or a move pair,
// expanded over every multiple of the step.
struct SearchUnit {
  CandidateId subject;
  std::size_t first;
  std::size_t second;
  std::uint64_t scenarios;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::vector<Move> candidate_moves(const Profile& profile, CandidateId subject, Direction direction) {
  const std::size_t n = profile.candidate_count();
  std::vector<Move> moves;
  const auto groups = profile.groups();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const Ranking& ranking = groups[g].ranking;
    std::vector<Ranking> targets;
    if (auto pos = ranking.position(subject)) {
      std::vector<CandidateId> entries(ranking.entries().begin(), ranking.entries().end());
      if (direction == Direction::Up && *pos > 0) {
        std::swap(entries[*pos - 1], entries[*pos]);
        targets.emplace_back(entries);
      } else if (direction == Direction::Down && *pos + 1 < entries.size()) {
        std::swap(entries[*pos], entries[*pos + 1]);
        targets.emplace_back(entries);
      }
    }
    if (direction == Direction::Up) targets.push_back(complete_ranking(Ranking{subject}, n));
    for (auto& t : targets) {
      if (t == ranking) continue;
      bool seen = false;
      for (const auto& m : moves) seen = seen || (m.group == g && m.target == t);
      if (!seen) moves.push_back({g, std::move(t)});
    }
  }
  return moves;
}

}  // namespace

std::vector<MonotonicityFinding> search_monotonicity(const Profile& input, Direction direction,
                                                     const MonotonicityLimits& limits) {
  if (limits.step == 0) throw InvalidArgument("search step must be positive");
  const Profile profile = normalize(input);
  const std::size_t n = profile.candidate_count();
  const auto groups = profile.groups();
  const CandidateId winner = irv_winner(profile);

  std::vector<CandidateId> subjects;
  for (CandidateId c = 0; c < n; ++c) {
    if ((c == winner) == (direction == Direction::Up)) subjects.push_back(c);
  }

  std::vector<std::vector<Move>> moves(n);
  std::vector<SearchUnit> units;
  std::uint64_t budget = limits.max_scenarios;
  auto add_unit = [&](CandidateId s, std::size_t i, std::size_t j, std::uint64_t count) {
    if (count == 0 || budget == 0) return;
    count = std::min(count, budget);
    budget -= count;
    units.push_back({s, i, j, count});
  };
  const Count step = limits.step;
  for (CandidateId s : subjects) {
    moves[s] = candidate_moves(profile, s, direction);
    const auto& ms = moves[s];
    for (std::size_t i = 0; i < ms.size(); ++i) add_unit(s, i, kNone, groups[ms[i].group].count / step);
    if (limits.max_shifts < 2) continue;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      for (std::size_t j = i + 1; j < ms.size(); ++j) {
        const Count a = groups[ms[i].group].count / step;
        const Count b = groups[ms[j].group].count / step;
        std::uint64_t count = a * b;
        if (ms[i].group == ms[j].group) {
          // k1 + k2 <= a with k1, k2 >= 1 (in units of step).
          count = a >= 2 ? a * (a - 1) / 2 : 0;
        }
        add_unit(s, i, j, count);
      }
    }
  }

  std::vector<std::vector<Scenario>> found(units.size());
  parallel_for(units.size(), limits.workers, [&](std::size_t u) {
    const SearchUnit& unit = units[u];
    const auto& ms = moves[unit.subject];
    const Move& first = ms[unit.first];
    const Move* second = unit.second == kNone ? nullptr : &ms[unit.second];
    const Count first_max = groups[first.group].count / step;
    const Count second_max = second ? groups[second->group].count / step : 1;
    const bool shared = second && second->group == first.group;

    std::vector<BallotGroup> work(groups.begin(), groups.end());
    const std::size_t base = work.size();
    work.push_back({first.target, 0, groups[first.group].precinct});
    if (second) work.push_back({second->target, 0, groups[second->group].precinct});

    std::uint64_t remaining = unit.scenarios;
    for (Count k1 = 1; k1 <= first_max && remaining; ++k1) {
      for (Count k2 = 1; k2 <= second_max && remaining; ++k2) {
        if (shared && k1 + k2 > first_max) break;
        --remaining;
        std::vector<BallotGroup> trial = work;
        trial[first.group].count -= k1 * step;
        trial[base].count = k1 * step;
        if (second) {
          trial[second->group].count -= k2 * step;
          trial[base + 1].count = k2 * step;
        }
        std::erase_if(trial, [](const BallotGroup& g) { return g.count == 0; });
        const bool subject_wins = irv_winner(Profile(profile.names(), std::move(trial))) == unit.subject;
        if (subject_wins != (direction == Direction::Down)) continue;

        Scenario scenario;
        scenario.shifts.push_back({groups[first.group].ranking, first.target,
                                   groups[first.group].precinct, k1 * step});
        if (second) {
          scenario.shifts.push_back({groups[second->group].ranking, second->target,
                                     groups[second->group].precinct, k2 * step});
        }
        found[u].push_back(std::move(scenario));
      }
    }
  });

  std::vector<MonotonicityFinding> findings;
  for (std::size_t u = 0; u < units.size(); ++u) {
    for (const auto& scenario : found[u]) {
      auto finding = verify_monotonicity(profile, scenario, units[u].subject, direction);
      if (!finding) throw InvariantViolation("search produced a scenario that does not verify");
      findings.push_back(std::move(*finding));
    }
  }
  return findings;
}

const char* to_string(PartitionLevel level) {
  return level == PartitionLevel::Precinct ? "precinct" : "ballot";
}

Partition precinct_partition(const Profile& profile, const std::vector<std::string>& labels) {
  const std::set<std::string> side1(labels.begin(), labels.end());
  Partition partition{PartitionLevel::Precinct, {}};
  for (const auto& g : profile.groups()) partition.side1.push_back(side1.count(g.precinct) ? g.count : 0);
  return partition;
}

Split split_by_partition(const Profile& profile, const Partition& partition) {
  const auto groups = profile.groups();
  if (partition.side1.size() != groups.size()) {
    throw InvalidArgument("partition does not match the profile's ballot groups");
  }
  std::vector<BallotGroup> one;
  std::vector<BallotGroup> two;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const Count left = partition.side1[g];
    if (left > groups[g].count) throw InvalidArgument("partition slice exceeds its group count");
    if (left) one.push_back({groups[g].ranking, left, groups[g].precinct});
    if (left < groups[g].count) two.push_back({groups[g].ranking, groups[g].count - left, groups[g].precinct});
  }
  if (one.empty()) throw InvalidArgument("partition leaves side 1 empty");
  if (two.empty()) throw InvalidArgument("partition leaves side 2 empty");
  return {normalize(Profile(profile.names(), std::move(one))),
          normalize(Profile(profile.names(), std::move(two)))};
}

std::optional<ConsistencyFinding> verify_consistency(const Profile& profile,
                                                     const Partition& partition,
                                                     CandidateId subject) {
  if (subject >= profile.candidate_count()) throw InvalidArgument("unknown subject candidate");
  const Split split = split_by_partition(profile, partition);
  IrvOutcome one = irv(split.side1);
  if (one.winner != subject) return std::nullopt;
  IrvOutcome two = irv(split.side2);
  if (two.winner != subject) return std::nullopt;
  IrvOutcome combined = irv(profile);
  if (combined.winner == subject) return std::nullopt;
  return ConsistencyFinding{subject, partition, std::move(one), std::move(two), std::move(combined)};
}

std::vector<ConsistencyFinding> enumerate_precinct_partitions(const Profile& input) {
  const Profile profile = normalize(input);
  const auto labels = profile.precincts();
  if (labels.size() < 2) throw InvalidArgument("need at least two precinct labels to partition");
  if (labels.size() > 24) throw InvalidArgument("too many precinct labels to enumerate");

  std::vector<ConsistencyFinding> findings;
  const std::uint64_t masks = std::uint64_t{1} << (labels.size() - 1);
  for (std::uint64_t mask = 1; mask < masks; ++mask) {
    std::vector<std::string> side1;
    for (std::size_t i = 0; i + 1 < labels.size(); ++i) {
      if (mask >> i & 1) side1.push_back(labels[i]);
    }
    const Partition partition = precinct_partition(profile, side1);
    for (CandidateId c = 0; c < profile.candidate_count(); ++c) {
      if (auto f = verify_consistency(profile, partition, c)) findings.push_back(std::move(*f));
    }
  }
  return findings;
}

std::vector<ConsistencyFinding> search_ballot_partitions(const Profile& input, std::uint64_t seed,
                                                         std::uint64_t trials, unsigned workers) {
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  const Profile profile = normalize(input);
  const auto groups = profile.groups();
  const CandidateId overall = irv_winner(profile);

  using Hit = std::pair<CandidateId, std::vector<Count>>;
  workers = std::max(1u, workers);
  std::vector<std::set<Hit>> hits(workers);
  const std::uint64_t chunk = (trials + workers - 1) / workers;

  parallel_for(workers, workers, [&](std::size_t w) {
    const std::uint64_t begin = std::min(trials, w * chunk);
    const std::uint64_t end = std::min(trials, begin + chunk);
    std::vector<Count> slices(groups.size());
    for (std::uint64_t t = begin; t < end; ++t) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
      std::mt19937_64 rng(seq);
      Count left = 0;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        slices[g] = std::uniform_int_distribution<Count>(0, groups[g].count)(rng);
        left += slices[g];
      }
      if (left == 0 || left == profile.total_ballots()) continue;

      std::vector<BallotGroup> one;
      std::vector<BallotGroup> two;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (slices[g]) one.push_back({groups[g].ranking, slices[g], groups[g].precinct});
        if (slices[g] < groups[g].count) {
          two.push_back({groups[g].ranking, groups[g].count - slices[g], groups[g].precinct});
        }
      }
      const CandidateId w1 = irv_winner(Profile(profile.names(), std::move(one)));
      if (w1 == overall) continue;
      const CandidateId w2 = irv_winner(Profile(profile.names(), std::move(two)));
      if (w2 != w1) continue;
      hits[w].insert({w1, slices});
    }
  });

  std::set<Hit> merged;
  for (auto& h : hits) merged.merge(h);

  std::vector<ConsistencyFinding> findings;
  findings.reserve(merged.size());
  for (const auto& [subject, slices] : merged) {
    auto f = verify_consistency(profile, Partition{PartitionLevel::Ballot, slices}, subject);
    if (!f) throw InvariantViolation("sampled partition does not verify");
    findings.push_back(std::move(*f));
  }
  return findings;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

Ranking parse_names(const Profile& profile, std::string_view text) {
  std::vector<CandidateId> entries;
  for (auto name : split(text, '>')) entries.push_back(profile.id(trim(name)));
  return Ranking(std::move(entries));
}

// Reads a quoted field starting at `text[pos]`; advances pos past the quote.
std::string_view quoted(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && text[pos] == ' ') ++pos;
  if (pos >= text.size() || (text[pos] != '\'' && text[pos] != '"')) {
    throw InvalidArgument("expected a quoted ranking in shift '" + std::string(text) + "'");
  }
  const char quote = text[pos];
  const auto close = text.find(quote, pos + 1);
  if (close == std::string_view::npos) {
    throw InvalidArgument("unterminated quote in shift '" + std::string(text) + "'");
  }
  auto field = text.substr(pos + 1, close - pos - 1);
  pos = close + 1;
  return field;
}

}  // namespace

std::string format_shift(const Profile& profile, const BallotShift& shift) {
  std::string out = std::to_string(shift.count) + " x '" + format_ranking(profile, shift.from) +
                    "' -> '" + format_ranking(profile, shift.to) + "'";
  if (shift.precinct != kAnyPrecinct) out += " @" + shift.precinct;
  return out;
}

std::string format_scenario(const Profile& profile, const Scenario& scenario) {
  std::string out;
  for (std::size_t i = 0; i < scenario.shifts.size(); ++i) {
    if (i) out += "; ";
    out += format_shift(profile, scenario.shifts[i]);
  }
  return out;
}

Scenario parse_scenario(const Profile& profile, std::string_view text) {
  Scenario scenario;
  for (auto part : split(text, ';')) {
    const auto shift_text = trim(part);
    if (shift_text.empty()) continue;
    const auto x = shift_text.find('x');
    if (x == std::string_view::npos) {
      throw InvalidArgument("shift '" + std::string(shift_text) + "' lacks '<count> x'");
    }
    const auto count_text = trim(shift_text.substr(0, x));
    if (count_text.empty() || count_text.find_first_not_of("0123456789") != std::string_view::npos) {
      throw InvalidArgument("bad shift count in '" + std::string(shift_text) + "'");
    }
    BallotShift shift;
    shift.count = std::stoull(std::string(count_text));

    std::size_t pos = x + 1;
    shift.from = parse_names(profile, quoted(shift_text, pos));
    auto rest = trim(shift_text.substr(pos));
    if (!rest.starts_with("->")) {
      throw InvalidArgument("expected '->' in shift '" + std::string(shift_text) + "'");
    }
    pos = shift_text.size() - rest.size() + 2;
    shift.to = parse_names(profile, quoted(shift_text, pos));
    rest = trim(shift_text.substr(pos));
    if (!rest.empty()) {
      if (rest.front() != '@' || trim(rest.substr(1)).empty()) {
        throw InvalidArgument("unexpected text after shift '" + std::string(shift_text) + "'");
      }
      shift.precinct = std::string(trim(rest.substr(1)));
    }
    scenario.shifts.push_back(std::move(shift));
  }
  if (scenario.shifts.empty()) throw InvalidArgument("scenario has no shifts");
  return scenario;
}

Partition parse_precinct_partition(const Profile& profile, std::string_view text) {
  const auto sides = split(text, '|');
  if (sides.size() != 2) throw InvalidArgument("precinct partition must look like 'A,B|rest'");
  const auto known = profile.precincts();
  auto labels_of = [&](std::string_view side) {
    std::set<std::string> labels;
    for (auto label : split(side, ',')) {
      const std::string name(trim(label));
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw InvalidArgument("unknown precinct '" + name + "'");
      }
      labels.insert(name);
    }
    return labels;
  };
  const auto left = labels_of(sides[0]);
  if (trim(sides[1]) != "rest") {
    const auto right = labels_of(sides[1]);
    for (const auto& label : known) {
      if (left.count(label) == right.count(label)) {
        throw InvalidArgument("precinct '" + label + "' must be on exactly one side");
      }
    }
  }
  return precinct_partition(profile, {left.begin(), left.end()});
}

}  // namespace rcv
