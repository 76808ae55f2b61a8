// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "properties.hpp"
#include "rcv/methods.hpp"
#include "rcv/paradox.hpp"
#include "rcv/report.hpp"

namespace {

using namespace rcv;

// Collects mismatches for one criterion.
class Check {
 public:
  template <typename A, typename B>
  void eq(const A& actual, const B& expected, const std::string& what) {
    if (actual == expected) return;
    std::ostringstream line;
    line << what << ": got " << actual << ", want " << expected;
    failures_.push_back(line.str());
  }

  void that(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }

  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

Count votes(const Profile& p, const Tally& tally, const char* name) { return tally.votes.at(p.id(name)); }

std::string winner_name(const Profile& p, CandidateId c) { return p.name(c); }

void burlington_irv(Check& c) {
  const Profile b = fixtures::burlington();
  const Tally first = first_place_tally(b);
  c.eq(votes(b, first, "Kiss"), 2982u, "Kiss first places");
  c.eq(votes(b, first, "Montroll"), 2554u, "Montroll first places");
  c.eq(votes(b, first, "Wright"), 3297u, "Wright first places");
  const IrvOutcome out = irv(b);
  c.eq(out.rounds.size(), 2u, "rounds");
  c.that(out.rounds.front().eliminated == b.id("Montroll"), "Montroll eliminated in round 1");
  // Transfers are recorded on the round that receives them.
  const IrvRound& r2 = out.final_round();
  c.eq(r2.transfers.at(b.id("Kiss")), 1332u, "Kiss transfer");
  c.eq(r2.transfers.at(b.id("Wright")), 767u, "Wright transfer");
  c.eq(r2.exhausted_this_round, 455u, "exhausted after round 1");
  c.eq(votes(b, out.final_round().tally, "Kiss"), 4314u, "Kiss final");
  c.eq(votes(b, out.final_round().tally, "Wright"), 4064u, "Wright final");
  c.eq(winner_name(b, out.winner), "Kiss", "IRV winner");
}

void burlington_other_methods(Check& c) {
  const Profile b = fixtures::burlington();
  c.eq(winner_name(b, plurality(b).winner), "Wright", "plurality winner");
  const PairwiseMatrix m = pairwise_matrix(b);
  const auto cw = condorcet_winner(m);
  c.that(cw && b.name(*cw) == "Montroll", "Condorcet winner is Montroll");
  const CandidateId kiss = b.id("Kiss"), montroll = b.id("Montroll"), wright = b.id("Wright");
  c.eq(m(montroll, kiss), 4067u, "Montroll over Kiss");
  c.eq(m(kiss, montroll), 3477u, "Kiss over Montroll");
  c.eq(m(montroll, wright), 4597u, "Montroll over Wright");
  c.eq(m(wright, montroll), 3668u, "Wright over Montroll");
  for (const auto convention : {BordaConvention::Zero, BordaConvention::Average, BordaConvention::Last}) {
    c.eq(winner_name(b, borda(b, convention).winner), "Montroll",
         std::string("Borda winner (") + to_string(convention) + ")");
  }
  const BordaResult zero = borda(b, BordaConvention::Zero);
  c.eq(zero.scores.at(kiss).to_string(), "14880", "Kiss Borda (zero)");
  c.eq(zero.scores.at(montroll).to_string(), "15640", "Montroll Borda (zero)");
  c.eq(zero.scores.at(wright).to_string(), "15542", "Wright Borda (zero)");
}

void minneapolis_methods(Check& c) {
  const Profile m = fixtures::minneapolis();
  c.eq(winner_name(m, plurality(m).winner), "Arab", "plurality winner");
  const IrvOutcome out = irv(m);
  c.eq(winner_name(m, out.winner), "Worlobah", "IRV winner");
  c.eq(votes(m, out.final_round().tally, "Worlobah"), 4056u, "Worlobah final");
  c.eq(votes(m, out.final_round().tally, "Arab"), 4037u, "Arab final");
  c.eq(out.final_round().tally.exhausted, 822u, "exhausted");
  c.eq(winner_name(m, borda(m, BordaConvention::Average).winner), "Arab", "Borda winner (average)");
  // The other conventions are reported, not asserted.
  for (const auto convention : {BordaConvention::Zero, BordaConvention::Last}) {
    std::printf("  note: Minneapolis Borda winner under %s: %s\n", to_string(convention),
                m.name(borda(m, convention).winner).c_str());
  }
}

void minneapolis_pairwise(Check& c) {
  const Profile m = fixtures::minneapolis();
  const PairwiseMatrix mat = pairwise_matrix(m);
  const CandidateId arab = m.id("Arab"), gordon = m.id("Gordon"), worlobah = m.id("Worlobah");
  c.eq(mat(arab, gordon), 4324u, "Arab over Gordon");
  c.eq(mat(gordon, arab), 4099u, "Gordon over Arab (table recount)");
  c.eq(mat(gordon, worlobah), 3708u, "Gordon over Worlobah");
  c.eq(mat(worlobah, gordon), 3635u, "Worlobah over Gordon");
  c.eq(mat(worlobah, arab), 4056u, "Worlobah over Arab");
  c.eq(mat(arab, worlobah), 4037u, "Arab over Worlobah");
  const CycleReport cycle = majority_cycle(mat);
  c.that(!cycle.condorcet_winner, "no Condorcet winner");
  c.that(cycle.cycle == std::vector<CandidateId>{arab, gordon, worlobah}, "cycle Arab -> Gordon -> Worlobah -> Arab");
}

bool contains_scenario(const std::vector<MonotonicityFinding>& findings, const Scenario& scenario,
                       CandidateId subject) {
  for (const auto& f : findings) {
    if (f.subject == subject && f.scenario == scenario) return true;
  }
  return false;
}

void burlington_monotonicity(Check& c) {
  const Profile b = fixtures::burlington();
  const CandidateId kiss = b.id("Kiss");
  const Scenario s = parse_scenario(b, "300 x 'Wright>Kiss>Montroll' -> 'Kiss'; 450 x 'Wright' -> 'Kiss'");
  const auto f = verify_monotonicity(b, s, kiss, Direction::Up);
  c.that(f.has_value(), "upward scenario verifies");
  if (f) {
    c.that(f->modified.rounds.front().eliminated == b.id("Wright"), "Wright eliminated first");
    c.eq(winner_name(b, f->modified.winner), "Montroll", "modified winner");
    c.eq(votes(b, f->modified.final_round().tally, "Montroll"), 4067u, "Montroll final");
    c.eq(votes(b, f->modified.final_round().tally, "Kiss"), 3927u, "Kiss final");
  }
  const auto found = search_monotonicity(b, Direction::Up, {.step = 50});
  bool any_kiss = false;
  for (const auto& x : found) any_kiss = any_kiss || x.subject == kiss;
  c.that(any_kiss, "search (up, step 50) finds a Kiss finding");
  std::printf("  note: %zu upward findings at step 50\n", found.size());
}

void minneapolis_monotonicity(Check& c) {
  const Profile m = fixtures::minneapolis();
  const CandidateId arab = m.id("Arab");
  const Scenario s = parse_scenario(m, "80 x 'Arab>Gordon>Worlobah' -> 'Gordon>Arab>Worlobah'");
  const auto f = verify_monotonicity(m, s, arab, Direction::Down);
  c.that(f.has_value(), "downward scenario verifies");
  if (f) {
    c.that(f->modified.rounds.front().eliminated == m.id("Worlobah"), "Worlobah eliminated first");
    c.eq(winner_name(m, f->modified.winner), "Arab", "modified winner");
    c.eq(votes(m, f->modified.final_round().tally, "Arab"), 4244u, "Arab final");
    c.eq(votes(m, f->modified.final_round().tally, "Gordon"), 4179u, "Gordon final");
  }
  const auto found = search_monotonicity(m, Direction::Down, {.step = 10});
  c.that(contains_scenario(found, s, arab), "search (down, step 10) finds the scenario");
}

void precinct_consistency(Check& c) {
  const Profile p = fixtures::minneapolis_precincts();
  const auto findings = enumerate_precinct_partitions(p);
  c.eq(findings.size(), 1u, "findings");
  if (findings.size() != 1) return;
  const ConsistencyFinding& f = findings.front();
  c.eq(winner_name(p, f.subject), "Arab", "subject");
  c.eq(votes(p, f.side1.final_round().tally, "Arab"), 944u, "side 1 Arab");
  c.eq(votes(p, f.side1.final_round().tally, "Gordon"), 939u, "side 1 Gordon");
  c.eq(votes(p, f.side2.final_round().tally, "Arab"), 3153u, "side 2 Arab");
  c.eq(votes(p, f.side2.final_round().tally, "Worlobah"), 3141u, "side 2 Worlobah");
  c.eq(winner_name(p, f.combined.winner), "Worlobah", "combined winner");
}

void burlington_consistency(Check& c) {
  const Profile b = fixtures::burlington();
  const auto findings = search_ballot_partitions(b, 1, 100'000);
  c.that(!findings.empty(), "ballot-level search finds a split at seed 1 within 1e5 trials");
  for (const auto& f : findings) {
    if (!verify_consistency(b, f.partition, f.subject)) {
      c.that(false, "finding re-verifies");
      break;
    }
  }
  std::printf("  note: %zu ballot-level findings\n", findings.size());
}

void property_suites(Check& c) {
  constexpr std::uint64_t kSeed = 20240611;
  constexpr std::size_t kCases = 1000;
  for (const auto& p : props::all()) {
    const props::Outcome o = p.run(kSeed, kCases);
    c.that(o.ok(), std::string(p.name) + ": " + o.failure);
    c.that(o.cases >= kCases, std::string(p.name) + ": too few cases");
    std::printf("  note: %s: %zu cases, %zu interesting\n", p.name, o.cases, o.interesting);
  }
}

void determinism(Check& c) {
  const Profile b = fixtures::burlington();
  const Profile m = fixtures::minneapolis();
  const Profile mp = fixtures::minneapolis_precincts();
  // Each report is produced twice and under several worker counts.
  const std::vector<std::pair<std::string, std::function<std::string(unsigned)>>> reports = {
      {"analyze", [&](unsigned) {
         return write_report(m, plurality(m)) + write_report(m, irv(m)) + write_report(m, borda(m)) +
                write_report(m, majority_cycle(pairwise_matrix(m)));
       }},
      {"matrix", [&](unsigned w) { return write_report(b, pairwise_matrix(b, w)); }},
      {"monotonic up",
       [&](unsigned w) {
         const auto f = search_monotonicity(b, Direction::Up, {.step = 50, .workers = w});
         return write_report(b, std::span(f), Direction::Up);
       }},
      {"monotonic down",
       [&](unsigned w) {
         const auto f = search_monotonicity(m, Direction::Down, {.step = 10, .workers = w});
         return write_report(m, std::span(f), Direction::Down);
       }},
      {"precinct consistency",
       [&](unsigned) {
         const auto f = enumerate_precinct_partitions(mp);
         return write_report(mp, std::span(f), PartitionLevel::Precinct);
       }},
      {"ballot consistency",
       [&](unsigned w) {
         const auto f = search_ballot_partitions(m, 7, 5000, w);
         return write_report(m, std::span(f), PartitionLevel::Ballot);
       }},
  };
  for (const auto& [name, make] : reports) {
    const std::string first = make(1);
    c.that(make(1) == first, name + ": rerun differs");
    for (const unsigned w : {2u, 4u}) {
      c.that(make(w) == first, name + ": differs with " + std::to_string(w) + " workers");
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, void (*)(Check&)>> criteria = {
      {"Burlington IRV tallies, transfers and final", burlington_irv},
      {"Burlington plurality, Condorcet and Borda", burlington_other_methods},
      {"Minneapolis plurality, IRV and Borda", minneapolis_methods},
      {"Minneapolis pairwise matrix and majority cycle", minneapolis_pairwise},
      {"Burlington upward monotonicity", burlington_monotonicity},
      {"Minneapolis downward monotonicity", minneapolis_monotonicity},
      {"Minneapolis precinct consistency", precinct_consistency},
      {"Burlington ballot-level consistency", burlington_consistency},
      {"property suites", property_suites},
      {"determinism across runs and workers", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.that(false, std::string("exception: ") + e.what());
    }
    const bool ok = check.failures().empty();
    failed += ok ? 0 : 1;
    std::printf("%s criterion %zu: %s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first);
    for (const auto& f : check.failures()) std::printf("  %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
