#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbrecomb/machine.hpp"

namespace bbrecomb {

// k source machines and k-1 nondecreasing cut points over [0, 2n-1].
// Segment m (1-based) contributes the table entries at indices
// [v_{m-1}, v_m), with v_0 = 0 and the last segment running through 2n-1.
// Undefined entries are copied like any other: a recombination can drop a
// source's rule.
struct RecombinationSpec {
  std::vector<Machine> sources;
  std::vector<int> cuts;
};

Machine recombine(std::span<const Machine> sources, std::span<const int> cuts);
Machine recombine(const RecombinationSpec& spec);

// Number of nondecreasing `picks`-tuples over a `set_size`-value alphabet,
// C(set_size + picks - 1, picks). Throws std::overflow_error past uint64.
uint64_t multichoose(uint64_t set_size, uint64_t picks);

// The full k-way recombination space over a pool: every ordered k-selection
// of pool members (with repetition) times every nondecreasing cut vector.
// Items are indexed in lexicographic order (sources outermost, cuts
// innermost), so the space can be split into contiguous ranges and
// reassembled deterministically.
class RecombinationEnumeration {
 public:
  RecombinationEnumeration(int pool_size, int arity, int num_states);

  struct Item {
    std::vector<int> sources;  // pool indexes, size k
    std::vector<int> cuts;     // size k-1, nondecreasing
  };

  uint64_t size() const { return size_; }
  uint64_t cut_vector_count() const { return cut_count_; }
  int arity() const { return arity_; }
  int pool_size() const { return pool_size_; }

  Item at(uint64_t index) const;

 private:
  int pool_size_;
  int arity_;
  int num_states_;
  uint64_t cut_count_;
  uint64_t size_;
};

// Pairwise convenience: every (i, j, u) in (i, j, u) order.
inline RecombinationEnumeration enumerate_pairwise(int pool_size,
                                                   int num_states) {
  return RecombinationEnumeration(pool_size, 2, num_states);
}

using MachineRegistry = std::map<std::string, Machine>;

// A recombination ancestry: leaves are registry identifiers, internal nodes
// recombine their children at the recorded cuts. Text form:
//
//   lineage := '[' id ']'
//            | '[recomb cuts=(' u ',' v ',' ... ')' lineage lineage ... ']'
//
// e.g. "[recomb cuts=(7,9) [row:5] [row:2] [row:1]]". Leaf ids may not
// contain brackets or whitespace, and "recomb" is reserved.
class Lineage {
 public:
  static Lineage leaf(std::string id);
  static Lineage recomb(std::vector<Lineage> children, std::vector<int> cuts);

  bool is_leaf() const { return leaf_; }
  const std::string& id() const;
  const std::vector<Lineage>& children() const;
  const std::vector<int>& cuts() const;

  std::string to_string() const;
  static Lineage parse(std::string_view text);

  // Bottom-up evaluation; throws on leaves missing from the registry.
  Machine evaluate(const MachineRegistry& registry) const;

 private:
  Lineage() = default;

  bool leaf_ = true;
  std::string id_;
  std::vector<Lineage> children_;
  std::vector<int> cuts_;
};

}  // namespace bbrecomb
