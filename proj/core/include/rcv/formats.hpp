#pragma once

// Profile serialization.
//
// Native `.rcv` format, one record per line:
//
//   # comment
//   candidates: Kiss, Montroll, Wright
//   2043 ; * ; Kiss > Montroll > Wright
//   568 ; * ; Kiss
//
// Fields are `<count> ; <precinct> ; <ranking>`; `*` means no precinct.
//
// PrefLib subset (`.soi`, `.toi`): `# NUMBER ALTERNATIVES: n`,
// `# ALTERNATIVE NAME i: name` and data lines `count: i1,i2,...`. Ties are
// rejected. Precinct labels are not representable and read back as `*`.
//
// Parsers stop at the first error and throw ParseError.

#include <optional>
#include <string>
#include <string_view>

#include "rcv/profile.hpp"

namespace rcv {

/// Returns the normalized profile.
Profile parse_native(std::string_view text);

/// Canonical text of normalize(profile).
std::string write_native(const Profile& profile);

/// Returns the normalized profile; every ballot gets precinct `*`.
Profile parse_preflib(std::string_view text);

/// `data_type` goes into the `# DATA TYPE:` line ("soi" or "toi"). Precincts
/// are merged.
std::string write_preflib(const Profile& profile, std::string_view data_type = "soi");

enum class FileFormat { Native, PreflibSoi, PreflibToi };

/// From the file extension: .rcv, .soi, .toi. nullopt otherwise.
std::optional<FileFormat> format_for_path(std::string_view path);

Profile parse_profile(std::string_view text, FileFormat format);
std::string write_profile(const Profile& profile, FileFormat format);

}  // namespace rcv
