#pragma once

#include <mwb/structure.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace mwb {

/// Parses the structure file format
///   { "universe": n, "relations": { "<name>": { "arity": k, "tuples": [[..],..] } } }
/// rejecting out-of-range entries, duplicate tuples and width mismatches.
FiniteStructure parse_structure(std::string_view json_text);

/// Canonical rendering: relation names and tuples sorted lexicographically,
/// one relation per line, trailing newline. Byte-identical for equal
/// structures.
std::string to_canonical_json(const FiniteStructure& s);

FiniteStructure read_structure_file(const std::filesystem::path& path);
void write_structure_file(const std::filesystem::path& path, const FiniteStructure& s);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace mwb
