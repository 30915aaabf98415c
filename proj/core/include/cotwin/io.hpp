#pragma once

// Text formats: building bundles (`%building 1`) and codistance files
// (`%codistance 1`).  Both are LF-terminated and written canonically, so
// reading and writing a canonical file reproduces it byte for byte.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cotwin/codistance.hpp"

namespace cotwin {

/// A word over the generator names.  Letters are separated by '.', or
/// written without separator when every name is a single character; "-"
/// and "1" denote the identity.  Sets *canonical to whether the text is the
/// dot-separated ShortLex normal form ("-" for the identity).  Throws Parse.
WeylElt parse_word(const WeylTable& W, std::string_view text, bool* canonical = nullptr);

std::string write_building(const Building& b);
/// Throws Parse for format errors; construction errors of the chamber
/// system (InvalidChamberSystem, Disconnected, InvalidMatrix, ...) pass
/// through unchanged.
BuildingPtr read_building(std::string_view text);

std::string write_codistance(const Codistance& f);
/// Values are read against b; non-canonical words are accepted and reported
/// in `warnings`.  Throws Parse, and BuildingMismatch when the file names
/// another building or has the wrong number of values.
Codistance read_codistance(std::string_view text, const BuildingPtr& b, std::vector<std::string>* warnings = nullptr);

/// Throws Io.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace cotwin
