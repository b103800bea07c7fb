#pragma once

#include <cstdint>
#include <vector>

namespace qge {

// Successor/predecessor tables over {0,1}^n arranged as one designated
// line starting at 0 plus disjoint cycles. Absent neighbours are encoded
// as self-loops, so P(0) = 0 != S(0) always holds and cycles contain no
// solutions.
struct EolInstance {
  int bits = 0;
  std::vector<std::uint32_t> successor;
  std::vector<std::uint32_t> predecessor;

  std::size_t vertex_count() const { return successor.size(); }

  // the search predicate: P(S(x)) != x, or S(P(x)) != x with x != 0
  bool is_solution(std::uint32_t x) const;

  void validate() const;
};

// Seeded instance: a random-length line from 0 through shuffled vertices,
// remaining vertices split into random cycles. bits <= 20.
EolInstance random_eol_instance(int bits, std::uint64_t seed);

// Explicit line 0 -> 1 -> ... -> length (for tests and docs).
EolInstance line_eol_instance(int bits, std::uint32_t length);

// Follows successors from 0 until the line ends; the returned vertex
// satisfies is_solution. Throws on malformed instances (a revisited
// vertex means some vertex has two predecessors).
std::uint32_t end_of_line_solve(const EolInstance& instance);

}  // namespace qge
