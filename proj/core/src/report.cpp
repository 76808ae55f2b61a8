#include "rcv/report.hpp"

#include <json.hpp>

namespace rcv {
namespace {

using Json = nlohmann::ordered_json;

Json header(const char* kind) {
  Json j;
  j["schema"] = kReportSchema;
  j["kind"] = kind;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json names(const Profile& profile) {
  Json out = Json::array();
  for (const auto& c : profile.roster()) out.push_back(c.name);
  return out;
}

Json ranking_json(const Profile& profile, const Ranking& ranking) {
  Json out = Json::array();
  for (CandidateId c : ranking.entries()) out.push_back(profile.name(c));
  return out;
}

Json per_candidate(const Profile& profile, std::span<const CandidateId> who,
                   const std::vector<Count>& values) {
  Json out = Json::object();
  for (CandidateId c : who) out[profile.name(c)] = values[c];
  return out;
}

Json irv_json(const Profile& profile, const IrvOutcome& outcome) {
  Json j;
  j["winner"] = profile.name(outcome.winner);
  j["stop_reason"] = to_string(outcome.stop_reason);
  Json rounds = Json::array();
  for (const auto& r : outcome.rounds) {
    Json round;
    round["round"] = r.number;
    round["tallies"] = per_candidate(profile, r.continuing, r.tally.votes);
    round["eliminated"] = r.eliminated ? Json(profile.name(*r.eliminated)) : Json(nullptr);
    round["transfers"] = per_candidate(profile, r.continuing, r.transfers);
    round["exhausted"] = r.tally.exhausted;
    round["exhausted_this_round"] = r.exhausted_this_round;
    round["tie_broken"] = r.tie_broken;
    rounds.push_back(std::move(round));
  }
  j["rounds"] = std::move(rounds);
  return j;
}

Json shift_json(const Profile& profile, const BallotShift& shift) {
  Json j;
  j["count"] = shift.count;
  j["from"] = ranking_json(profile, shift.from);
  j["to"] = ranking_json(profile, shift.to);
  j["precinct"] = shift.precinct;
  return j;
}

Json monotonicity_json(const Profile& profile, const MonotonicityFinding& f) {
  Json j;
  j["direction"] = to_string(f.direction);
  j["subject"] = profile.name(f.subject);
  j["beneficiary"] = profile.name(f.modified.winner);
  Json scenario;
  scenario["text"] = format_scenario(profile, f.scenario);
  Json shifts = Json::array();
  for (const auto& s : f.scenario.shifts) shifts.push_back(shift_json(profile, s));
  scenario["shifts"] = std::move(shifts);
  j["scenario"] = std::move(scenario);
  j["original"] = irv_json(profile, f.original);
  j["modified"] = irv_json(profile, f.modified);
  return j;
}

Json consistency_json(const Profile& profile, const ConsistencyFinding& f) {
  Json j;
  j["subject"] = profile.name(f.subject);
  j["combined_winner"] = profile.name(f.combined.winner);

  Json partition;
  partition["level"] = to_string(f.partition.level);
  Json slices = Json::array();
  Count side1 = 0;
  const auto groups = profile.groups();
  for (std::size_t g = 0; g < groups.size() && g < f.partition.side1.size(); ++g) {
    Json slice;
    slice["ranking"] = ranking_json(profile, groups[g].ranking);
    slice["precinct"] = groups[g].precinct;
    slice["count"] = groups[g].count;
    slice["side1"] = f.partition.side1[g];
    slices.push_back(std::move(slice));
    side1 += f.partition.side1[g];
  }
  partition["side1_total"] = side1;
  partition["side2_total"] = profile.total_ballots() - side1;
  partition["groups"] = std::move(slices);
  j["partition"] = std::move(partition);

  j["side1"] = irv_json(profile, f.side1);
  j["side2"] = irv_json(profile, f.side2);
  j["combined"] = irv_json(profile, f.combined);
  return j;
}

}  // namespace

std::string write_report(const Profile& profile, const PluralityResult& result) {
  Json j = header("plurality");
  j["candidates"] = names(profile);
  j["total_ballots"] = profile.total_ballots();
  j["winner"] = profile.name(result.winner);
  j["tie_broken"] = result.tie_broken;
  Json tallies = Json::object();
  for (const auto& c : profile.roster()) tallies[c.name] = result.tally.votes[c.index];
  j["tallies"] = std::move(tallies);
  return dump(j);
}

std::string write_report(const Profile& profile, const IrvOutcome& outcome) {
  Json j = header("irv");
  j["candidates"] = names(profile);
  j["total_ballots"] = profile.total_ballots();
  j.update(irv_json(profile, outcome));
  return dump(j);
}

std::string write_report(const Profile& profile, const BordaResult& result) {
  Json j = header("borda");
  j["candidates"] = names(profile);
  j["total_ballots"] = profile.total_ballots();
  j["convention"] = to_string(result.convention);
  j["winner"] = profile.name(result.winner);
  j["tie_broken"] = result.tie_broken;
  Json scores = Json::object();
  for (const auto& c : profile.roster()) scores[c.name] = result.scores[c.index].to_string();
  j["scores"] = std::move(scores);
  return dump(j);
}

std::string write_report(const Profile& profile, const PairwiseMatrix& matrix) {
  Json j = header("pairwise");
  j["candidates"] = names(profile);
  j["total_ballots"] = profile.total_ballots();
  Json rows = Json::array();
  for (CandidateId a = 0; a < matrix.size(); ++a) {
    Json row = Json::array();
    for (CandidateId b = 0; b < matrix.size(); ++b) row.push_back(matrix(a, b));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  Json matchups = Json::array();
  for (CandidateId a = 0; a < matrix.size(); ++a) {
    for (CandidateId b = a + 1; b < matrix.size(); ++b) {
      Json m;
      m["a"] = profile.name(a);
      m["b"] = profile.name(b);
      m["a_over_b"] = matrix(a, b);
      m["b_over_a"] = matrix(b, a);
      matchups.push_back(std::move(m));
    }
  }
  j["matchups"] = std::move(matchups);
  return dump(j);
}

std::string write_report(const Profile& profile, const CycleReport& report) {
  Json j = header("condorcet");
  j["candidates"] = names(profile);
  j["condorcet_winner"] =
      report.condorcet_winner ? Json(profile.name(*report.condorcet_winner)) : Json(nullptr);
  if (report.cycle) {
    Json cycle = Json::array();
    for (CandidateId c : *report.cycle) cycle.push_back(profile.name(c));
    j["cycle"] = std::move(cycle);
  } else {
    j["cycle"] = nullptr;
  }
  j["has_pairwise_tie"] = report.has_pairwise_tie;
  return dump(j);
}

std::string write_report(const Profile& profile, const MonotonicityFinding& finding) {
  Json j = header("monotonicity");
  j.update(monotonicity_json(profile, finding));
  return dump(j);
}

std::string write_report(const Profile& profile, std::span<const MonotonicityFinding> findings,
                         std::optional<Direction> direction) {
  Json j = header("monotonicity");
  if (direction) j["direction"] = to_string(*direction);
  j["count"] = findings.size();
  Json list = Json::array();
  for (const auto& f : findings) list.push_back(monotonicity_json(profile, f));
  j["findings"] = std::move(list);
  return dump(j);
}

std::string write_report(const Profile& profile, const ConsistencyFinding& finding) {
  Json j = header("consistency");
  j.update(consistency_json(profile, finding));
  return dump(j);
}

std::string write_report(const Profile& profile, std::span<const ConsistencyFinding> findings,
                         std::optional<PartitionLevel> level) {
  Json j = header("consistency");
  if (level) j["level"] = to_string(*level);
  j["count"] = findings.size();
  Json list = Json::array();
  for (const auto& f : findings) list.push_back(consistency_json(profile, f));
  j["findings"] = std::move(list);
  return dump(j);
}

}  // namespace rcv
