#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbrecomb/machine.hpp"

namespace bbrecomb {

struct CatalogEntry {
  std::string id;
  std::string name;  // canonical machine-name text
  std::string attribution;
  std::optional<uint64_t> expected_ones;
  std::optional<uint64_t> expected_steps;
};

// The 14 published seed machines (rows 0-13). Rows 0-8 carry full
// ones/steps expectations; rows 9-13 only their ones class.
const std::vector<CatalogEntry>& builtin_catalog();

// The 22 published recombined machines, each with its ones/steps
// expectations. Ids are the labels the machines were published under
// ("fig5a" ... "fig10c").
const std::vector<CatalogEntry>& golden_recombinations();

// Nonnegative integer with optional '.', ',' or '_' thousands separators,
// e.g. "70.740.809".
uint64_t parse_count(std::string_view text);

// Pool file: UTF-8 lines "id, (name-tuple)[, attribution[, ones[, steps]]]",
// '#' starts a comment, blank lines are skipped. Fields are positional;
// leave one empty to skip it. Errors are reported with line numbers.
std::vector<CatalogEntry> parse_pool(std::istream& in, std::string_view label,
                                     int num_states = kDefaultStates);
std::vector<CatalogEntry> load_pool(const std::filesystem::path& path,
                                    int num_states = kDefaultStates);
void write_pool(std::ostream& out, std::span<const CatalogEntry> entries);

}  // namespace bbrecomb
