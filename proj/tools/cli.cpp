#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "rcv/error.hpp"
#include "rcv/formats.hpp"
#include "rcv/methods.hpp"
#include "rcv/paradox.hpp"
#include "rcv/report.hpp"

namespace rcv::cli {
namespace {

// Bad flag values discovered after CLI11 has accepted the command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FileFormat require_format(const std::string& path) {
  auto format = format_for_path(path);
  if (!format) throw UsageError("cannot infer the format of '" + path + "' (use .rcv, .soi or .toi)");
  return *format;
}

Profile load(const std::string& path) {
  const FileFormat format = require_format(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_profile(buffer.str(), format);
  } catch (const ParseError& e) {
    throw IoError(path + ":" + std::to_string(e.line()) + ": " + to_string(e.kind()) + ": " +
                  e.detail());
  }
}

template <typename F>
auto interpret(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

// "Worlobah 4056, Arab 4037": continuing candidates, most votes first.
std::string standings(const Profile& profile, const IrvRound& round) {
  std::vector<CandidateId> order = round.continuing;
  std::stable_sort(order.begin(), order.end(), [&](CandidateId a, CandidateId b) {
    return round.tally.votes[a] > round.tally.votes[b];
  });
  std::string out;
  for (CandidateId c : order) {
    if (!out.empty()) out += ", ";
    out += profile.name(c) + " " + std::to_string(round.tally.votes[c]);
  }
  return out;
}

std::string by_score(const Profile& profile, const std::vector<Count>& votes) {
  IrvRound round;
  for (CandidateId c = 0; c < profile.candidate_count(); ++c) round.continuing.push_back(c);
  round.tally.votes = votes;
  return standings(profile, round);
}

std::string cycle_text(const Profile& profile, const std::vector<CandidateId>& cycle) {
  std::string out;
  for (CandidateId c : cycle) out += profile.name(c) + " -> ";
  return out + profile.name(cycle.front());
}

const char* tie_note(bool tie_broken) { return tie_broken ? " [tie broken]" : ""; }

std::string plurality_line(const Profile& profile, const PluralityResult& r) {
  return "plurality: " + profile.name(r.winner) + " (" + by_score(profile, r.tally.votes) + ")" +
         tie_note(r.tie_broken);
}

std::string irv_line(const Profile& profile, const IrvOutcome& o) {
  const auto& last = o.final_round();
  return "irv: " + profile.name(o.winner) + " (final " + standings(profile, last) + "; exhausted " +
         std::to_string(last.tally.exhausted) + ")" + tie_note(last.tie_broken);
}

std::string borda_line(const Profile& profile, const BordaResult& r) {
  std::vector<CandidateId> order(profile.candidate_count());
  for (CandidateId c = 0; c < order.size(); ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(),
                   [&](CandidateId a, CandidateId b) { return r.scores[a] > r.scores[b]; });
  std::string scores;
  for (CandidateId c : order) {
    if (!scores.empty()) scores += ", ";
    scores += profile.name(c) + " " + r.scores[c].to_string();
  }
  return std::string("borda (") + to_string(r.convention) + "): " + profile.name(r.winner) + " (" +
         scores + ")" + tie_note(r.tie_broken);
}

std::string condorcet_line(const Profile& profile, const CycleReport& r) {
  if (r.condorcet_winner) return "condorcet: " + profile.name(*r.condorcet_winner);
  if (r.cycle) return "condorcet: none (cycle " + cycle_text(profile, *r.cycle) + ")";
  return "condorcet: none (pairwise tie)";
}

std::string json_array(const std::vector<std::string>& reports) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    std::string r = reports[i];
    if (!r.empty() && r.back() == '\n') r.pop_back();
    out += r;
    out += i + 1 < reports.size() ? ",\n" : "\n";
  }
  return out + "]\n";
}

std::string round_line(const Profile& profile, const IrvRound& r) {
  std::ostringstream line;
  line << "round " << r.number << ":";
  if (r.number > 1) {
    line << " transfers";
    bool first = true;
    for (CandidateId c : r.continuing) {
      line << (first ? " " : ", ") << profile.name(c) << " +" << r.transfers[c];
      first = false;
    }
    line << ", exhausted +" << r.exhausted_this_round << ";";
  }
  bool first = true;
  for (CandidateId c : r.continuing) {
    line << (first ? " " : ", ") << profile.name(c) << " " << r.tally.votes[c];
    first = false;
  }
  line << "; exhausted " << r.tally.exhausted;
  if (r.eliminated) line << "; eliminated " << profile.name(*r.eliminated);
  if (r.tie_broken) line << " [tie broken]";
  return line.str();
}

std::string rounds_text(const Profile& profile, const IrvOutcome& o) {
  std::string out;
  for (const auto& r : o.rounds) out += round_line(profile, r) + "\n";
  out += "winner: " + profile.name(o.winner) + " (" + to_string(o.stop_reason) + "); final " +
         standings(profile, o.final_round()) + "\n";
  return out;
}

std::string matrix_text(const Profile& profile, const PairwiseMatrix& m) {
  std::size_t width = 4;
  for (const auto& c : profile.roster()) width = std::max(width, c.name.size());
  for (CandidateId a = 0; a < m.size(); ++a) {
    for (CandidateId b = 0; b < m.size(); ++b) width = std::max(width, std::to_string(m(a, b)).size());
  }
  std::ostringstream out;
  out << std::setw(static_cast<int>(width)) << "";
  for (const auto& c : profile.roster()) out << "  " << std::setw(static_cast<int>(width)) << c.name;
  out << "\n";
  for (CandidateId a = 0; a < m.size(); ++a) {
    out << std::left << std::setw(static_cast<int>(width)) << profile.name(a) << std::right;
    for (CandidateId b = 0; b < m.size(); ++b) {
      out << "  " << std::setw(static_cast<int>(width)) << (a == b ? std::string("-") : std::to_string(m(a, b)));
    }
    out << "\n";
  }
  for (CandidateId a = 0; a < m.size(); ++a) {
    for (CandidateId b = a + 1; b < m.size(); ++b) {
      out << profile.name(a) << " vs " << profile.name(b) << ": " << m(a, b) << "-" << m(b, a) << "\n";
    }
  }
  return out.str();
}

std::string monotonicity_text(const Profile& profile, const MonotonicityFinding& f) {
  return "  " + profile.name(f.subject) + ": " + format_scenario(profile, f.scenario) +
         " => winner " + profile.name(f.modified.winner) + " (final " +
         standings(profile, f.modified.final_round()) + "; round 1 eliminates " +
         (f.modified.rounds.front().eliminated ? profile.name(*f.modified.rounds.front().eliminated)
                                               : std::string("nobody")) +
         ")\n";
}

std::string consistency_text(const Profile& profile, const ConsistencyFinding& f) {
  Count side1 = 0;
  for (Count c : f.partition.side1) side1 += c;
  std::string label1 = "side 1";
  std::string label2 = "side 2";
  if (f.partition.level == PartitionLevel::Precinct) {
    std::set<std::string> one;
    std::set<std::string> two;
    const auto groups = profile.groups();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      (f.partition.side1[g] ? one : two).insert(groups[g].precinct);
    }
    auto join = [](const std::set<std::string>& labels) {
      std::string s;
      for (const auto& l : labels) s += (s.empty() ? "" : ",") + l;
      return s;
    };
    label1 = join(one);
    label2 = join(two);
  }
  return "  " + profile.name(f.subject) + " wins " + label1 + " [" + std::to_string(side1) +
         " ballots] (" + standings(profile, f.side1.final_round()) + ") and " + label2 + " [" +
         std::to_string(profile.total_ballots() - side1) + " ballots] (" +
         standings(profile, f.side2.final_round()) + "); combined winner " +
         profile.name(f.combined.winner) + " (" + standings(profile, f.combined.final_round()) +
         ")\n";
}

struct Options {
  std::string file;
  std::string output;
  std::string method = "all";
  std::string convention = "average";
  std::string direction;
  std::string level;
  std::string scenario;
  std::string subject;
  std::string partition;
  bool json = false;
  Count step = 1;
  std::uint64_t max_scenarios = MonotonicityLimits{}.max_scenarios;
  unsigned max_shifts = 2;
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  unsigned workers = 1;
};

int analyze(const Options& o, std::ostream& out) {
  const Profile profile = load(o.file);
  const auto convention = interpret([&] {
    auto c = parse_borda_convention(o.convention);
    if (!c) throw InvalidArgument("unknown Borda convention '" + o.convention + "'");
    return *c;
  });
  const bool all = o.method == "all";
  std::vector<std::string> reports;
  std::vector<std::string> lines;
  if (all || o.method == "plurality") {
    const auto r = plurality(profile);
    reports.push_back(write_report(profile, r));
    lines.push_back(plurality_line(profile, r));
  }
  if (all || o.method == "irv") {
    const auto r = irv(profile);
    reports.push_back(write_report(profile, r));
    lines.push_back(irv_line(profile, r));
  }
  if (all || o.method == "borda") {
    const auto r = borda(profile, convention);
    reports.push_back(write_report(profile, r));
    lines.push_back(borda_line(profile, r));
  }
  if (all || o.method == "condorcet") {
    const auto r = majority_cycle(pairwise_matrix(profile));
    reports.push_back(write_report(profile, r));
    lines.push_back(condorcet_line(profile, r));
  }
  if (o.json) {
    out << (all ? json_array(reports) : reports.front());
    return kSuccess;
  }
  out << "candidates: " << profile.candidate_count() << ", ballots: " << profile.total_ballots() << "\n";
  for (const auto& line : lines) out << line << "\n";
  return kSuccess;
}

int rounds(const Options& o, std::ostream& out) {
  const Profile profile = load(o.file);
  const auto outcome = irv(profile);
  out << (o.json ? write_report(profile, outcome) : rounds_text(profile, outcome));
  return kSuccess;
}

int matrix(const Options& o, std::ostream& out) {
  const Profile profile = load(o.file);
  const auto m = pairwise_matrix(profile, o.workers);
  out << (o.json ? write_report(profile, m) : matrix_text(profile, m));
  return kSuccess;
}

Direction direction_of(const std::string& text) {
  return interpret([&] {
    auto d = parse_direction(text);
    if (!d) throw InvalidArgument("direction must be 'up' or 'down'");
    return *d;
  });
}

int paradox_monotonic(const Options& o, std::ostream& out) {
  const Profile profile = load(o.file);
  const Direction direction = direction_of(o.direction);
  MonotonicityLimits limits;
  limits.step = o.step;
  limits.max_scenarios = o.max_scenarios;
  limits.max_shifts = o.max_shifts;
  limits.workers = o.workers;
  const auto findings = interpret([&] { return search_monotonicity(profile, direction, limits); });
  if (o.json) {
    out << write_report(profile, std::span<const MonotonicityFinding>(findings), direction);
    return kSuccess;
  }
  out << "monotonicity (" << to_string(direction) << "): " << findings.size()
      << (findings.size() == 1 ? " finding" : " findings") << "\n";
  for (const auto& f : findings) out << monotonicity_text(profile, f);
  return kSuccess;
}

int paradox_consistency(const Options& o, std::ostream& out) {
  const Profile profile = load(o.file);
  std::vector<ConsistencyFinding> findings;
  PartitionLevel level = PartitionLevel::Precinct;
  if (o.level == "precinct") {
    findings = interpret([&] { return enumerate_precinct_partitions(profile); });
  } else if (o.level == "ballot") {
    level = PartitionLevel::Ballot;
    findings = interpret([&] { return search_ballot_partitions(profile, o.seed, o.trials, o.workers); });
  } else {
    throw UsageError("level must be 'precinct' or 'ballot'");
  }
  if (o.json) {
    out << write_report(profile, std::span<const ConsistencyFinding>(findings), level);
    return kSuccess;
  }
  out << "consistency (" << to_string(level) << "): " << findings.size()
      << (findings.size() == 1 ? " finding" : " findings") << "\n";
  for (const auto& f : findings) out << consistency_text(profile, f);
  return kSuccess;
}

int convert(const Options& o, std::ostream& out) {
  const FileFormat target = require_format(o.output);
  const Profile profile = load(o.file);
  const std::string text = write_profile(profile, target);
  std::ofstream file(o.output, std::ios::binary);
  if (!file || !(file << text)) throw IoError("cannot write '" + o.output + "'");
  out << "wrote " << o.output << " (" << profile.candidate_count() << " candidates, "
      << profile.total_ballots() << " ballots)\n";
  return kSuccess;
}

int verify_monotonic(const Options& o, std::ostream& out) {
  const Profile profile = load(o.file);
  const Direction direction = direction_of(o.direction);
  const Scenario scenario = interpret([&] { return parse_scenario(profile, o.scenario); });
  const CandidateId subject = interpret([&] { return profile.id(o.subject); });
  const auto finding = verify_monotonicity(profile, scenario, subject, direction);
  if (o.json) {
    if (finding) {
      out << write_report(profile, *finding);
    } else {
      out << write_report(profile, std::span<const MonotonicityFinding>(), direction);
    }
    return kSuccess;
  }
  if (!finding) {
    out << "not a monotonicity paradox (" << to_string(direction) << ") for " << o.subject << ": "
        << format_scenario(profile, scenario) << "\n";
    return kSuccess;
  }
  out << "monotonicity paradox (" << to_string(direction) << ") for " << o.subject << "\n";
  out << "original:\n" << rounds_text(profile, finding->original);
  out << "modified (" << format_scenario(profile, scenario) << "):\n"
      << rounds_text(profile, finding->modified);
  return kSuccess;
}

int verify_consistency_cmd(const Options& o, std::ostream& out) {
  const Profile profile = load(o.file);
  const Partition partition = interpret([&] { return parse_precinct_partition(profile, o.partition); });
  const CandidateId subject = interpret([&] { return profile.id(o.subject); });
  const auto finding = interpret([&] { return verify_consistency(profile, partition, subject); });
  if (o.json) {
    if (finding) {
      out << write_report(profile, *finding);
    } else {
      out << write_report(profile, std::span<const ConsistencyFinding>(), PartitionLevel::Precinct);
    }
    return kSuccess;
  }
  if (!finding) {
    out << "not a consistency paradox for " << o.subject << " under " << o.partition << "\n";
    return kSuccess;
  }
  out << "consistency paradox for " << o.subject << "\n" << consistency_text(profile, *finding);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ranked-choice election analysis: tabulation and paradox detection", "rcvtool"};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&, std::ostream&)> command;

  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Emit a JSON report"); };
  auto workers_flag = [&](CLI::App* sub) {
    sub->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1u, 256u));
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Winners under plurality, IRV, Borda and Condorcet");
  analyze_cmd->add_option("file", o.file, "Profile (.rcv, .soi, .toi)")->required();
  analyze_cmd->add_option("--method", o.method, "Method")
      ->check(CLI::IsMember({"plurality", "irv", "borda", "condorcet", "all"}));
  analyze_cmd->add_option("--borda-convention", o.convention, "Points for unranked candidates")
      ->check(CLI::IsMember({"zero", "average", "last"}));
  json_flag(analyze_cmd);
  analyze_cmd->callback([&] { command = analyze; });

  auto* rounds_cmd = app.add_subcommand("rounds", "Round-by-round IRV trace");
  rounds_cmd->add_option("file", o.file, "Profile")->required();
  json_flag(rounds_cmd);
  rounds_cmd->callback([&] { command = rounds; });

  auto* matrix_cmd = app.add_subcommand("matrix", "Pairwise preference matrix");
  matrix_cmd->add_option("file", o.file, "Profile")->required();
  json_flag(matrix_cmd);
  workers_flag(matrix_cmd);
  matrix_cmd->callback([&] { command = matrix; });

  auto* paradox_cmd = app.add_subcommand("paradox", "Search for voting paradoxes");
  paradox_cmd->require_subcommand(1);
  auto* mono = paradox_cmd->add_subcommand("monotonic", "Monotonicity paradox search");
  mono->add_option("file", o.file, "Profile")->required();
  mono->add_option("--direction", o.direction, "up or down")->required()->check(CLI::IsMember({"up", "down"}));
  mono->add_option("--step", o.step, "Ballots move in multiples of this")->check(CLI::PositiveNumber);
  mono->add_option("--max-scenarios", o.max_scenarios, "Scenario budget");
  mono->add_option("--max-shifts", o.max_shifts, "1 or 2 shifts per scenario")->check(CLI::Range(1u, 2u));
  json_flag(mono);
  workers_flag(mono);
  mono->callback([&] { command = paradox_monotonic; });

  auto* cons = paradox_cmd->add_subcommand("consistency", "Consistency paradox search");
  cons->add_option("file", o.file, "Profile")->required();
  cons->add_option("--level", o.level, "precinct or ballot")->required()->check(CLI::IsMember({"precinct", "ballot"}));
  cons->add_option("--seed", o.seed, "Random seed (ballot level)");
  cons->add_option("--trials", o.trials, "Random partitions to try (ballot level)")->check(CLI::PositiveNumber);
  json_flag(cons);
  workers_flag(cons);
  cons->callback([&] { command = paradox_consistency; });

  auto* convert_cmd = app.add_subcommand("convert", "Convert between .rcv, .soi and .toi");
  convert_cmd->add_option("input", o.file, "Input profile")->required();
  convert_cmd->add_option("output", o.output, "Output profile")->required();
  convert_cmd->callback([&] { command = convert; });

  auto* verify_cmd = app.add_subcommand("verify", "Check a specific paradox witness");
  verify_cmd->require_subcommand(1);
  auto* vmono = verify_cmd->add_subcommand("monotonic", "Check a ballot-shift scenario");
  vmono->add_option("file", o.file, "Profile")->required();
  vmono->add_option("--scenario", o.scenario, "e.g. \"80 x 'A>G>W' -> 'G>A>W'\"")->required();
  vmono->add_option("--subject", o.subject, "Candidate name")->required();
  vmono->add_option("--direction", o.direction, "up or down")->required()->check(CLI::IsMember({"up", "down"}));
  json_flag(vmono);
  vmono->callback([&] { command = verify_monotonic; });
  auto* vcons = verify_cmd->add_subcommand("consistency", "Check a precinct partition");
  vcons->add_option("file", o.file, "Profile")->required();
  vcons->add_option("--partition", o.partition, "e.g. \"P1,P5|rest\"")->required();
  vcons->add_option("--subject", o.subject, "Candidate name")->required();
  json_flag(vcons);
  vcons->callback([&] { command = verify_consistency_cmd; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    return command(o, out);
  } catch (const UsageError& e) {
    err << "rcvtool: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "rcvtool: " << e.what() << "\n";
    return kInput;
  } catch (const InvariantViolation& e) {
    err << "rcvtool: internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    err << "rcvtool: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    err << "rcvtool: internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace rcv::cli
