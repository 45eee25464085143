#include "bbrecomb/catalog.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace bbrecomb {

namespace {

struct RawEntry {
  const char* id;
  const char* name;  // any accepted name form; canonicalized on load
  const char* attribution;
  long long ones;   // -1 = absent
  long long steps;  // -1 = absent
};

// The fourteen published seed machines. Rows 0-8 come with full tape-count
// and step-count records; rows 9-13 were published with their ones count
// only, so they stay step-less rather than carrying guessed numbers.
constexpr RawEntry kBuiltinRows[] = {
    {"0", "(0, 11, 1, 15, 2, 17, 3, 11, 4, 23, 5, 24, 6, 3, 7, 21, 9, 0)",
     "Marxen-Buntrock", 4097, 47176869},
    {"1", "(0, 11, 1, 18, 2, 15, 3, 23, 4, 3, 5, 15, 7, 29, 8, 5, 9, 8)",
     "Marxen-Buntrock", 4096, 23554763},
    {"2", "(0, 11, 1, 5, 2, 15, 3, 20, 4, 3, 5, 15, 7, 29, 8, 24, 9, 11)",
     "Marxen-Buntrock", 4095, 11804909},
    {"3", "(0, 11, 1, 5, 2, 15, 3, 20, 4, 3, 5, 15, 7, 29, 8, 15, 9, 11)",
     "Marxen-Buntrock", 4095, 11804895},
    {"4", "(0, 11, 1, 5, 2, 15, 3, 9, 4, 5, 5, 21, 6, 5, 7, 27, 9, 12)",
     "Marxen-Buntrock", 4097, 11798825},
    {"5", "(0, 11, 1, 5, 2, 15, 3, 23, 4, 3, 5, 15, 7, 26, 8, 15, 9, 11)",
     "Marxen-Buntrock", 4096, 11798795},
    {"6", "(0, 11, 2, 15, 3, 17, 4, 26, 5, 18, 6, 15, 7, 6, 8, 23, 9, 5)",
     "Uhing", 1471, 2358063},
    {"7", "(0, 11, 1, 15, 2, 0, 3, 18, 4, 3, 6, 9, 7, 29, 8, 20, 9, 8)",
     "Uhing", 1915, 2133491},
    {"8", "(0, 11, 1, 12, 2, 17, 3, 23, 4, 3, 5, 8, 6, 26, 8, 15, 9, 5)",
     "Schult", 501, 134466},
    {"9", "(0, 9, 1, 12, 2, 15, 3, 21, 4, 29, 5, 1, 7, 24, 8, 2, 9, 27)",
     "M_PP(160)", 160, -1},
    {"10", "(0, 21, 1, 9, 2, 24, 3, 6, 4, 3, 5, 20, 6, 17, 7, 0, 9, 15)",
     "M_PP(32)", 32, -1},
    {"11", "(0, 9, 1, 11, 2, 17, 3, 21, 4, 19, 5, 29, 6, 5, 7, 6, 8, 8)",
     "M_PP(26)", 26, -1},
    {"12", "(0, 9, 1, 11, 2, 15, 3, 20, 4, 21, 5, 27, 6, 4, 7, 2, 8, 12)",
     "M_PP(21)", 21, -1},
    {"13", "(0, 9, 1, 11, 2, 26, 3, 23, 4, 27, 5, 2, 7, 17, 8, 5, 9, 13)",
     "M_PP(19)", 19, -1},
};

// Every recombined machine published with its ones/steps record. Ids keep
// the labels the machines were published under.
constexpr RawEntry kGoldenRows[] = {
    {"fig5a", "(9, 0, 11, 1, 5, 2, 15, 3, 9, 4, 19, 5, 21, 6, 5, 7, 27, 9, 12)",
     "recombination", 4097, 11801882},
    {"fig5b", "(9, 0, 11, 1, 5, 2, 15, 3, 9, 4, 5, 5, 21, 6, 4, 7, 27, 9, 12)",
     "recombination", 4097, 11798832},
    {"fig5c", "(9, 0, 11, 1, 15, 2, 17, 3, 1, 4, 23, 5, 24, 6, 3, 7, 21, 9, 0)",
     "recombination", 4097, 70740809},
    {"fig5d", "(9, 0, 11, 1, 13, 2, 15, 3, 9, 4, 5, 5, 21, 6, 5, 7, 27, 9, 12)",
     "recombination", 4097, 17689051},
    {"fig5e", "(9, 0, 11, 1, 13, 2, 15, 3, 9, 4, 19, 5, 21, 6, 5, 7, 27, 9, 12)",
     "recombination", 4097, 23582334},
    {"fig5f", "(9, 0, 11, 1, 13, 2, 15, 3, 9, 4, 5, 5, 21, 6, 4, 7, 27, 9, 12)",
     "recombination", 4097, 17689065},
    {"fig5g", "(9, 0, 11, 1, 5, 2, 15, 3, 9, 4, 19, 5, 21, 6, 4, 7, 27, 9, 12)",
     "recombination", 4097, 11804946},
    {"fig7a", "(9, 0, 11, 1, 5, 2, 15, 3, 23, 4, 3, 5, 15, 7, 29, 8, 5, 9, 8)",
     "recombination", 4096, 11792681},
    {"fig7b", "(9, 0, 11, 1, 5, 2, 15, 3, 23, 4, 3, 5, 15, 7, 29, 8, 24, 9, 8)",
     "recombination", 4096, 11792723},
    {"fig7c", "(9, 0, 11, 1, 5, 2, 15, 3, 23, 4, 3, 5, 15, 7, 26, 8, 15, 9, 1)",
     "recombination", 4096, 11803885},
    {"fig8a", "(9, 0, 11, 1, 5, 2, 15, 3, 20, 4, 3, 5, 15, 7, 29, 8, 15, 9, 0)",
     "recombination", 4095, 11815075},
    {"fig8b", "(9, 0, 11, 1, 5, 2, 15, 3, 20, 4, 3, 5, 15, 7, 29, 8, 15, 9, 1)",
     "recombination", 4095, 11809985},
    {"fig8c", "(9, 0, 11, 1, 5, 2, 15, 3, 20, 4, 3, 5, 15, 7, 29, 8, 24, 9, 1)",
     "recombination", 4095, 11810006},
    {"fig8d", "(9, 0, 11, 1, 5, 2, 18, 3, 20, 4, 3, 5, 15, 7, 29, 8, 15, 9, 0)",
     "recombination", 4095, 11821189},
    {"fig8e", "(9, 0, 11, 1, 5, 2, 18, 3, 20, 4, 3, 5, 15, 7, 29, 8, 15, 9, 1)",
     "recombination", 4095, 11816099},
    {"fig8f", "(9, 0, 11, 1, 5, 2, 18, 3, 20, 4, 3, 5, 15, 7, 29, 8, 15, 9, 11)",
     "recombination", 4095, 11811009},
    {"fig9a", "(9, 0, 11, 1, 5, 2, 15, 3, 20, 4, 3, 5, 15, 7, 29, 8, 2, 9, 1)",
     "recombination", 239, 41082},
    {"fig9b", "(9, 0, 11, 1, 5, 2, 15, 3, 20, 4, 3, 5, 15, 7, 29, 8, 2, 9, 0)",
     "recombination", 239, 41359},
    {"fig9c", "(9, 0, 11, 1, 5, 2, 15, 3, 20, 4, 3, 5, 15, 7, 29, 8, 2, 9, 11)",
     "recombination", 239, 40805},
    {"fig10a", "(9, 0, 11, 1, 5, 2, 15, 3, 23, 4, 3, 5, 15, 7, 29, 8, 15, 9, 8)",
     "recombination", 20, 279},
    {"fig10b", "(9, 0, 11, 1, 5, 2, 15, 3, 23, 4, 3, 5, 15, 7, 26, 8, 0, 9, 11)",
     "recombination", 20, 297},
    {"fig10c", "(9, 0, 11, 1, 5, 2, 15, 3, 23, 4, 3, 5, 15, 7, 26, 8, 0, 9, 1)",
     "recombination", 20, 314},
};

std::vector<CatalogEntry> make_entries(std::span<const RawEntry> rows) {
  std::vector<CatalogEntry> entries;
  entries.reserve(rows.size());
  for (const RawEntry& row : rows) {
    CatalogEntry entry;
    entry.id = row.id;
    entry.name = encode_name(decode_name(row.name));  // validate + canonicalize
    entry.attribution = row.attribution;
    if (row.ones >= 0) entry.expected_ones = static_cast<uint64_t>(row.ones);
    if (row.steps >= 0) entry.expected_steps = static_cast<uint64_t>(row.steps);
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() &&
         std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() &&
         std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

// Splits on commas that sit outside parentheses, so the name tuple stays in
// one piece. Fields come back trimmed.
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '(') ++depth;
    else if (c == ')' && depth > 0) --depth;
    else if (c == ',' && depth == 0) {
      fields.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  fields.push_back(trim(line.substr(start)));
  return fields;
}

[[noreturn]] void fail_line(std::string_view label, size_t line_number,
                            const std::string& message) {
  throw ParseError(std::string(label) + ":" + std::to_string(line_number) +
                   ": " + message);
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> entries = make_entries(kBuiltinRows);
  return entries;
}

const std::vector<CatalogEntry>& golden_recombinations() {
  static const std::vector<CatalogEntry> entries = make_entries(kGoldenRows);
  return entries;
}

uint64_t parse_count(std::string_view text) {
  text = trim(text);
  std::string digits;
  digits.reserve(text.size());
  for (char c : text) {
    if (c == '.' || c == ',' || c == '_') continue;
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("count '" + std::string(text) +
                       "' contains a non-digit character");
    }
    digits.push_back(c);
  }
  if (digits.empty()) {
    throw ParseError("count '" + std::string(text) + "' has no digits");
  }
  uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError("count '" + std::string(text) +
                     "' does not fit in 64 bits");
  }
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParseError("count '" + std::string(text) + "' is not a number");
  }
  return value;
}

std::vector<CatalogEntry> parse_pool(std::istream& in, std::string_view label,
                                     int num_states) {
  std::vector<CatalogEntry> entries;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view text = line;
    if (const size_t hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;

    const std::vector<std::string_view> fields = split_fields(text);
    if (fields.size() < 2) {
      fail_line(label, line_number, "expected at least `id, (name-tuple)`");
    }
    if (fields.size() > 5) {
      fail_line(label, line_number,
                "too many fields; the format is "
                "`id, (name-tuple)[, attribution[, ones[, steps]]]`");
    }

    CatalogEntry entry;
    entry.id = std::string(fields[0]);
    if (entry.id.empty()) {
      fail_line(label, line_number, "empty machine id");
    }
    for (char c : entry.id) {
      if (c == '[' || c == ']' ||
          std::isspace(static_cast<unsigned char>(c))) {
        fail_line(label, line_number,
                  "machine id '" + entry.id +
                      "' must not contain brackets or whitespace");
      }
    }
    for (const CatalogEntry& existing : entries) {
      if (existing.id == entry.id) {
        fail_line(label, line_number, "duplicate machine id '" + entry.id + "'");
      }
    }

    try {
      entry.name = encode_name(decode_name(fields[1], num_states));
      if (fields.size() >= 3) entry.attribution = std::string(fields[2]);
      if (fields.size() >= 4 && !fields[3].empty()) {
        entry.expected_ones = parse_count(fields[3]);
      }
      if (fields.size() >= 5 && !fields[4].empty()) {
        entry.expected_steps = parse_count(fields[4]);
      }
    } catch (const ParseError& error) {
      fail_line(label, line_number, error.what());
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<CatalogEntry> load_pool(const std::filesystem::path& path,
                                    int num_states) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open pool file: " + path.string());
  }
  return parse_pool(in, path.string(), num_states);
}

void write_pool(std::ostream& out, std::span<const CatalogEntry> entries) {
  out << "# id, (machine name), attribution, ones, steps\n";
  for (const CatalogEntry& entry : entries) {
    out << entry.id << ", " << entry.name;
    const bool has_counts = entry.expected_ones || entry.expected_steps;
    if (!entry.attribution.empty() || has_counts) {
      out << ", " << entry.attribution;
    }
    if (has_counts) {
      out << ", ";
      if (entry.expected_ones) out << *entry.expected_ones;
    }
    if (entry.expected_steps) {
      out << ", " << *entry.expected_steps;
    }
    out << "\n";
  }
}

}  // namespace bbrecomb

