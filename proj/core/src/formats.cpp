#include "rcv/formats.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <vector>

#include "rcv/error.hpp"

namespace rcv {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
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

std::vector<std::string_view> lines_of(std::string_view text) {
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

bool parse_uint(std::string_view text, Count& value) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

Count parse_count(std::string_view text, std::size_t line) {
  Count value = 0;
  if (!parse_uint(text, value)) {
    throw ParseError(line, ParseErrorKind::BadCount, "'" + std::string(text) + "' is not a count");
  }
  if (value == 0) throw ParseError(line, ParseErrorKind::BadCount, "count must be at least 1");
  return value;
}

void add_to_total(Count& total, Count count, std::size_t line) {
  if (total + count < total) throw ParseError(line, ParseErrorKind::BadCount, "ballot total overflows");
  total += count;
}

void check_name(std::string_view name, std::size_t line) {
  if (name.find_first_of(">;,") != std::string_view::npos) {
    throw ParseError(line, ParseErrorKind::ReservedCharacter,
                     "name '" + std::string(name) + "' contains a reserved character");
  }
}

void push_unique(std::vector<CandidateId>& entries, CandidateId c, std::string_view name,
                 std::size_t line) {
  if (std::find(entries.begin(), entries.end(), c) != entries.end()) {
    throw ParseError(line, ParseErrorKind::DuplicateCandidateInRanking,
                     "'" + std::string(name) + "' appears twice in one ranking");
  }
  entries.push_back(c);
}

}  // namespace

Profile parse_native(std::string_view text) {
  std::vector<std::string> names;
  std::map<std::string, CandidateId, std::less<>> index;
  std::vector<BallotGroup> groups;
  bool have_header = false;
  Count total = 0;

  const auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    const auto content = trim(lines[i]);
    if (content.empty() || content.front() == '#') continue;

    if (!have_header) {
      constexpr std::string_view kPrefix = "candidates:";
      if (!content.starts_with(kPrefix)) {
        throw ParseError(line, ParseErrorKind::BadHeader, "expected 'candidates: <name>, ...'");
      }
      for (auto raw : split(content.substr(kPrefix.size()), ',')) {
        const auto name = trim(raw);
        if (name.empty()) throw ParseError(line, ParseErrorKind::BadHeader, "empty candidate name");
        check_name(name, line);
        if (!index.emplace(std::string(name), static_cast<CandidateId>(names.size())).second) {
          throw ParseError(line, ParseErrorKind::BadHeader,
                           "candidate '" + std::string(name) + "' listed twice");
        }
        names.emplace_back(name);
      }
      have_header = true;
      continue;
    }

    const auto fields = split(content, ';');
    if (fields.size() > 3) {
      throw ParseError(line, ParseErrorKind::ReservedCharacter, "too many ';' separated fields");
    }
    if (fields.size() < 3) {
      throw ParseError(line, ParseErrorKind::BadCount,
                       "expected '<count> ; <precinct> ; <ranking>'");
    }
    const Count count = parse_count(trim(fields[0]), line);

    const auto precinct = trim(fields[1]);
    if (precinct.empty() || precinct.find_first_of(">,") != std::string_view::npos) {
      throw ParseError(line, ParseErrorKind::ReservedCharacter,
                       "invalid precinct label '" + std::string(precinct) + "'");
    }

    const auto ranking_text = trim(fields[2]);
    if (ranking_text.empty()) throw ParseError(line, ParseErrorKind::EmptyRanking, "ballot ranks nobody");
    std::vector<CandidateId> entries;
    for (auto raw : split(ranking_text, '>')) {
      const auto name = trim(raw);
      if (name.empty()) {
        throw ParseError(line, ParseErrorKind::EmptyRanking, "ranking has a blank position");
      }
      check_name(name, line);
      auto it = index.find(name);
      if (it == index.end()) {
        throw ParseError(line, ParseErrorKind::UnknownCandidate,
                         "'" + std::string(name) + "' is not a candidate");
      }
      push_unique(entries, it->second, name, line);
    }
    add_to_total(total, count, line);
    groups.push_back({Ranking(std::move(entries)), count, std::string(precinct)});
  }

  if (!have_header) throw ParseError(1, ParseErrorKind::BadHeader, "missing 'candidates:' line");
  return normalize(Profile(std::move(names), std::move(groups)));
}

std::string write_native(const Profile& input) {
  const Profile profile = normalize(input);
  std::string out = "candidates: ";
  for (std::size_t i = 0; i < profile.candidate_count(); ++i) {
    if (i) out += ", ";
    out += profile.name(static_cast<CandidateId>(i));
  }
  out += '\n';
  for (const auto& g : profile.groups()) {
    out += std::to_string(g.count) + " ; " + g.precinct + " ; " +
           format_ranking(profile, g.ranking, " > ") + "\n";
  }
  return out;
}

Profile parse_preflib(std::string_view text) {
  std::optional<std::size_t> declared;
  std::map<std::size_t, std::string> alt_names;
  std::vector<BallotGroup> groups;
  std::vector<std::string> names;
  bool header_checked = false;
  Count total = 0;

  auto check_header = [&](std::size_t line) {
    if (!declared) throw ParseError(line, ParseErrorKind::BadHeader, "missing '# NUMBER ALTERNATIVES'");
    for (std::size_t a = 1; a <= *declared; ++a) {
      auto it = alt_names.find(a);
      if (it == alt_names.end()) {
        throw ParseError(line, ParseErrorKind::BadHeader,
                         "missing '# ALTERNATIVE NAME " + std::to_string(a) + "'");
      }
      names.push_back(it->second);
    }
    if (alt_names.size() != *declared) {
      throw ParseError(line, ParseErrorKind::BadHeader, "alternative names exceed the declared count");
    }
    header_checked = true;
  };

  const auto lines = lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    const auto content = trim(lines[i]);
    if (content.empty()) continue;

    if (content.front() == '#') {
      const auto meta = trim(content.substr(1));
      const auto colon = meta.find(':');
      if (colon == std::string_view::npos) continue;
      const auto key = trim(meta.substr(0, colon));
      const auto value = trim(meta.substr(colon + 1));
      constexpr std::string_view kAltName = "ALTERNATIVE NAME ";
      if (key == "NUMBER ALTERNATIVES") {
        Count n = 0;
        if (!parse_uint(value, n)) {
          throw ParseError(line, ParseErrorKind::BadHeader, "bad alternative count");
        }
        declared = static_cast<std::size_t>(n);
      } else if (key.starts_with(kAltName)) {
        Count a = 0;
        if (!parse_uint(trim(key.substr(kAltName.size())), a) || a == 0) {
          throw ParseError(line, ParseErrorKind::BadHeader, "bad alternative number");
        }
        if (value.empty()) throw ParseError(line, ParseErrorKind::BadHeader, "empty alternative name");
        check_name(value, line);
        for (const auto& [other, name] : alt_names) {
          if (name == value && other != a) {
            throw ParseError(line, ParseErrorKind::BadHeader,
                             "alternative name '" + std::string(value) + "' used twice");
          }
        }
        alt_names[static_cast<std::size_t>(a)] = std::string(value);
      }
      continue;
    }

    if (!header_checked) check_header(line);
    if (content.find('{') != std::string_view::npos) {
      throw ParseError(line, ParseErrorKind::TiesUnsupported, "tied preferences are not supported");
    }
    const auto colon = content.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line, ParseErrorKind::BadCount, "expected '<count>: <alternatives>'");
    }
    const Count count = parse_count(trim(content.substr(0, colon)), line);
    const auto order = trim(content.substr(colon + 1));
    if (order.empty()) throw ParseError(line, ParseErrorKind::EmptyRanking, "ballot ranks nobody");

    std::vector<CandidateId> entries;
    for (auto raw : split(order, ',')) {
      const auto item = trim(raw);
      if (item.empty()) throw ParseError(line, ParseErrorKind::EmptyRanking, "ranking has a blank position");
      Count a = 0;
      if (!parse_uint(item, a) || a == 0 || a > names.size()) {
        throw ParseError(line, ParseErrorKind::UnknownCandidate,
                         "'" + std::string(item) + "' is not an alternative number");
      }
      push_unique(entries, static_cast<CandidateId>(a - 1), item, line);
    }
    add_to_total(total, count, line);
    groups.push_back({Ranking(std::move(entries)), count, std::string(kAnyPrecinct)});
  }

  if (!header_checked) check_header(lines.size() + 1);
  return normalize(Profile(std::move(names), std::move(groups)));
}

std::string write_preflib(const Profile& profile, std::string_view data_type) {
  std::map<Ranking, Count> orders;
  const Profile normalized = normalize(profile);
  for (const auto& g : normalized.groups()) orders[g.ranking] += g.count;

  std::vector<std::pair<Ranking, Count>> sorted(orders.begin(), orders.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  std::string out = "# DATA TYPE: " + std::string(data_type) + "\n";
  out += "# NUMBER ALTERNATIVES: " + std::to_string(profile.candidate_count()) + "\n";
  for (std::size_t i = 0; i < profile.candidate_count(); ++i) {
    out += "# ALTERNATIVE NAME " + std::to_string(i + 1) + ": " +
           profile.name(static_cast<CandidateId>(i)) + "\n";
  }
  out += "# NUMBER VOTERS: " + std::to_string(profile.total_ballots()) + "\n";
  out += "# NUMBER UNIQUE ORDERS: " + std::to_string(sorted.size()) + "\n";
  for (const auto& [ranking, count] : sorted) {
    out += std::to_string(count) + ":";
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      out += (i ? "," : " ") + std::to_string(ranking[i] + 1);
    }
    out += "\n";
  }
  return out;
}

std::optional<FileFormat> format_for_path(std::string_view path) {
  if (path.ends_with(".rcv")) return FileFormat::Native;
  if (path.ends_with(".soi")) return FileFormat::PreflibSoi;
  if (path.ends_with(".toi")) return FileFormat::PreflibToi;
  return std::nullopt;
}

Profile parse_profile(std::string_view text, FileFormat format) {
  return format == FileFormat::Native ? parse_native(text) : parse_preflib(text);
}

std::string write_profile(const Profile& profile, FileFormat format) {
  switch (format) {
    case FileFormat::Native:
      return write_native(profile);
    case FileFormat::PreflibSoi:
      return write_preflib(profile, "soi");
    case FileFormat::PreflibToi:
      return write_preflib(profile, "toi");
  }
  return write_native(profile);
}

}  // namespace rcv
