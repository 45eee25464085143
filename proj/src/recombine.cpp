#include "bbrecomb/recombine.hpp"

#include <cassert>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bbrecomb {

Machine recombine(std::span<const Machine> sources, std::span<const int> cuts) {
  if (sources.empty()) {
    throw std::invalid_argument("recombination needs at least one source");
  }
  const int n = sources.front().num_states();
  for (const Machine& s : sources) {
    if (s.num_states() != n) {
      throw std::invalid_argument("sources disagree on state count");
    }
  }
  if (cuts.size() != sources.size() - 1) {
    throw std::invalid_argument("expected " +
                                std::to_string(sources.size() - 1) +
                                " cut points, got " +
                                std::to_string(cuts.size()));
  }
  const int slots = 2 * n;
  int previous = 0;
  for (int cut : cuts) {
    if (cut < 0 || cut >= slots) {
      throw std::invalid_argument("cut point " + std::to_string(cut) +
                                  " out of range [0, " +
                                  std::to_string(slots) + ")");
    }
    if (cut < previous) {
      throw std::invalid_argument("cut points must be nondecreasing");
    }
    previous = cut;
  }

  // Slot i belongs to the segment after the last cut <= i.
  Machine result(n);
  size_t segment = 0;
  for (int i = 0; i < slots; ++i) {
    while (segment < cuts.size() && cuts[segment] <= i) ++segment;
    const Machine& source = sources[segment];
    if (source.has_rule(i)) {
      result.set_rule(i, source.rule_code(i));
    }
  }
  return result;
}

Machine recombine(const RecombinationSpec& spec) {
  return recombine(std::span<const Machine>(spec.sources),
                   std::span<const int>(spec.cuts));
}

uint64_t multichoose(uint64_t set_size, uint64_t picks) {
  // C(set_size + picks - 1, picks), checked.
  if (picks == 0) return 1;
  if (set_size == 0) return 0;
  uint64_t result = 1;
  for (uint64_t i = 1; i <= picks; ++i) {
    const uint64_t factor = set_size - 1 + i;
    if (result > std::numeric_limits<uint64_t>::max() / factor) {
      throw std::overflow_error("multichoose overflows 64 bits");
    }
    result = result * factor / i;  // product of i consecutive ints divides i!
  }
  return result;
}

RecombinationEnumeration::RecombinationEnumeration(int pool_size, int arity,
                                                   int num_states)
    : pool_size_(pool_size), arity_(arity), num_states_(num_states) {
  if (pool_size < 1) throw std::invalid_argument("pool must not be empty");
  if (arity < 1) throw std::invalid_argument("arity must be >= 1");
  if (num_states < 1) throw std::invalid_argument("state count must be >= 1");

  cut_count_ = multichoose(static_cast<uint64_t>(2 * num_states),
                           static_cast<uint64_t>(arity - 1));
  uint64_t selections = 1;
  for (int i = 0; i < arity; ++i) {
    if (selections > std::numeric_limits<uint64_t>::max() /
                         static_cast<uint64_t>(pool_size)) {
      throw std::overflow_error("enumeration size overflows 64 bits");
    }
    selections *= static_cast<uint64_t>(pool_size);
  }
  if (cut_count_ != 0 &&
      selections > std::numeric_limits<uint64_t>::max() / cut_count_) {
    throw std::overflow_error("enumeration size overflows 64 bits");
  }
  size_ = selections * cut_count_;
}

RecombinationEnumeration::Item RecombinationEnumeration::at(
    uint64_t index) const {
  if (index >= size_) {
    throw std::out_of_range("enumeration index " + std::to_string(index) +
                            " out of range [0, " + std::to_string(size_) +
                            ")");
  }
  Item item;
  uint64_t selection = index / cut_count_;
  uint64_t cut_rank = index % cut_count_;

  // Sources: mixed-radix digits, first source most significant.
  item.sources.assign(static_cast<size_t>(arity_), 0);
  for (int slot = arity_ - 1; slot >= 0; --slot) {
    item.sources[static_cast<size_t>(slot)] =
        static_cast<int>(selection % static_cast<uint64_t>(pool_size_));
    selection /= static_cast<uint64_t>(pool_size_);
  }

  // Cuts: unrank the nondecreasing tuple in lexicographic order.
  const uint64_t alphabet = static_cast<uint64_t>(2 * num_states_);
  const int cut_slots = arity_ - 1;
  item.cuts.reserve(static_cast<size_t>(cut_slots));
  uint64_t floor = 0;
  for (int slot = 0; slot < cut_slots; ++slot) {
    const uint64_t remaining = static_cast<uint64_t>(cut_slots - slot - 1);
    for (uint64_t value = floor;; ++value) {
      assert(value < alphabet);
      const uint64_t block = multichoose(alphabet - value, remaining);
      if (cut_rank < block) {
        item.cuts.push_back(static_cast<int>(value));
        floor = value;
        break;
      }
      cut_rank -= block;
    }
  }
  return item;
}

// ---- Lineage ----

Lineage Lineage::leaf(std::string id) {
  if (id.empty()) throw std::invalid_argument("leaf id must not be empty");
  for (char c : id) {
    if (c == '[' || c == ']' ||
        std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument(
          "leaf id must not contain brackets or whitespace");
    }
  }
  if (id == "recomb") throw std::invalid_argument("leaf id 'recomb' is reserved");
  Lineage l;
  l.leaf_ = true;
  l.id_ = std::move(id);
  return l;
}

Lineage Lineage::recomb(std::vector<Lineage> children, std::vector<int> cuts) {
  if (children.empty()) {
    throw std::invalid_argument("recombination node needs children");
  }
  if (cuts.size() != children.size() - 1) {
    throw std::invalid_argument("recombination node needs one cut less than "
                                "children");
  }
  Lineage l;
  l.leaf_ = false;
  l.children_ = std::move(children);
  l.cuts_ = std::move(cuts);
  return l;
}

const std::string& Lineage::id() const {
  if (!leaf_) throw std::logic_error("not a leaf");
  return id_;
}

const std::vector<Lineage>& Lineage::children() const {
  if (leaf_) throw std::logic_error("not a recombination node");
  return children_;
}

const std::vector<int>& Lineage::cuts() const {
  if (leaf_) throw std::logic_error("not a recombination node");
  return cuts_;
}

std::string Lineage::to_string() const {
  if (leaf_) return "[" + id_ + "]";
  std::ostringstream os;
  os << "[recomb cuts=(";
  for (size_t i = 0; i < cuts_.size(); ++i) {
    if (i > 0) os << ',';
    os << cuts_[i];
  }
  os << ')';
  for (const Lineage& child : children_) os << ' ' << child.to_string();
  os << ']';
  return os.str();
}

namespace {

struct LineageParser {
  std::string_view text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("lineage: " + message + " at offset " +
                     std::to_string(pos));
  }

  void skip_space() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  void expect(char c) {
    if (pos >= text.size() || text[pos] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos;
  }

  bool consume(std::string_view word) {
    if (text.substr(pos, word.size()) == word) {
      pos += word.size();
      return true;
    }
    return false;
  }

  int parse_int() {
    size_t start = pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (pos == start) fail("expected an integer");
    int value = 0;
    std::from_chars(text.data() + start, text.data() + pos, value);
    return value;
  }

  Lineage parse_node() {
    skip_space();
    expect('[');
    if (consume("recomb")) {
      skip_space();
      if (!consume("cuts=(")) fail("expected cuts=(");
      std::vector<int> cuts;
      skip_space();
      if (!consume(")")) {
        for (;;) {
          skip_space();
          cuts.push_back(parse_int());
          skip_space();
          if (consume(")")) break;
          expect(',');
        }
      }
      std::vector<Lineage> children;
      for (;;) {
        skip_space();
        if (pos >= text.size()) fail("unterminated recombination node");
        if (text[pos] == ']') {
          ++pos;
          break;
        }
        children.push_back(parse_node());
      }
      if (children.empty()) fail("recombination node has no children");
      if (cuts.size() != children.size() - 1) {
        fail("node with " + std::to_string(children.size()) +
             " children needs " + std::to_string(children.size() - 1) +
             " cuts, has " + std::to_string(cuts.size()));
      }
      return Lineage::recomb(std::move(children), std::move(cuts));
    }
    size_t start = pos;
    while (pos < text.size() && text[pos] != ']' && text[pos] != '[' &&
           !std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (pos == start) fail("expected a leaf id");
    std::string id(text.substr(start, pos - start));
    expect(']');
    return Lineage::leaf(std::move(id));
  }
};

}  // namespace

Lineage Lineage::parse(std::string_view text) {
  LineageParser parser{text};
  Lineage result = parser.parse_node();
  parser.skip_space();
  if (parser.pos != text.size()) {
    parser.fail("trailing characters after lineage");
  }
  return result;
}

Machine Lineage::evaluate(const MachineRegistry& registry) const {
  if (leaf_) {
    auto it = registry.find(id_);
    if (it == registry.end()) {
      throw std::invalid_argument("lineage leaf '" + id_ +
                                  "' not found in the registry");
    }
    return it->second;
  }
  std::vector<Machine> machines;
  machines.reserve(children_.size());
  for (const Lineage& child : children_) {
    machines.push_back(child.evaluate(registry));
  }
  return recombine(machines, cuts_);
}

}  // namespace bbrecomb
