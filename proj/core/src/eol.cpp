#include "qge/eol.hpp"

#include <stdexcept>
#include <vector>

#include "qge/rng.hpp"

namespace qge {

bool EolInstance::is_solution(std::uint32_t x) const {
  if (predecessor[successor[x]] != x) return true;
  return x != 0 && successor[predecessor[x]] != x;
}

void EolInstance::validate() const {
  if (bits < 1 || bits > 20) throw std::invalid_argument("eol: bits must be in [1,20]");
  const auto n = static_cast<std::size_t>(1) << bits;
  if (successor.size() != n || predecessor.size() != n) {
    throw std::invalid_argument("eol: table size != 2^bits");
  }
  if (predecessor[0] != 0 || successor[0] == 0) {
    throw std::invalid_argument("eol: requires P(0)=0 and S(0)!=0");
  }
}

EolInstance random_eol_instance(int bits, std::uint64_t seed) {
  if (bits < 1 || bits > 20) throw std::invalid_argument("eol: bits must be in [1,20]");
  const auto n = static_cast<std::uint32_t>(1u << bits);
  Rng rng(seed);

  // random order of the nonzero vertices
  std::vector<std::uint32_t> order(n - 1);
  for (std::uint32_t v = 1; v < n; ++v) order[v - 1] = v;
  for (std::uint32_t i = n - 2; i > 0; --i) {
    auto j = static_cast<std::uint32_t>(rng.next_below(i + 1));
    std::swap(order[i], order[j]);
  }

  EolInstance inst;
  inst.bits = bits;
  inst.successor.resize(n);
  inst.predecessor.resize(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    inst.successor[v] = v;
    inst.predecessor[v] = v;
  }

  // line of random length through the first vertices of the shuffle
  auto line_len = static_cast<std::uint32_t>(1 + rng.next_below(n - 1));
  std::uint32_t prev = 0;
  for (std::uint32_t i = 0; i < line_len; ++i) {
    std::uint32_t v = order[i];
    inst.successor[prev] = v;
    inst.predecessor[v] = prev;
    prev = v;
  }

  // leftover vertices into random cycles
  std::uint32_t idx = line_len;
  while (idx < n - 1) {
    auto remaining = n - 1 - idx;
    auto cycle_len = static_cast<std::uint32_t>(1 + rng.next_below(remaining));
    std::uint32_t head = order[idx];
    std::uint32_t cur = head;
    for (std::uint32_t i = 1; i < cycle_len; ++i) {
      std::uint32_t nxt = order[idx + i];
      inst.successor[cur] = nxt;
      inst.predecessor[nxt] = cur;
      cur = nxt;
    }
    inst.successor[cur] = head;
    inst.predecessor[head] = cur;
    idx += cycle_len;
  }

  inst.validate();
  return inst;
}

EolInstance line_eol_instance(int bits, std::uint32_t length) {
  if (bits < 1 || bits > 20) throw std::invalid_argument("eol: bits must be in [1,20]");
  const auto n = static_cast<std::uint32_t>(1u << bits);
  if (length < 1 || length >= n) throw std::invalid_argument("eol: bad line length");
  EolInstance inst;
  inst.bits = bits;
  inst.successor.resize(n);
  inst.predecessor.resize(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    inst.successor[v] = v;
    inst.predecessor[v] = v;
  }
  for (std::uint32_t v = 0; v < length; ++v) {
    inst.successor[v] = v + 1;
    inst.predecessor[v + 1] = v;
  }
  inst.validate();
  return inst;
}

std::uint32_t end_of_line_solve(const EolInstance& instance) {
  instance.validate();
  std::vector<bool> seen(instance.vertex_count(), false);
  std::uint32_t x = 0;
  while (true) {
    if (seen[x]) {
      throw std::runtime_error("end_of_line_solve: walk revisited a vertex "
                               "(some vertex has two predecessors)");
    }
    seen[x] = true;
    if (instance.is_solution(x)) return x;
    std::uint32_t next = instance.successor[x];
    if (next == x) {
      // self-loop sink that failed the predicate can only be vertex 0
      throw std::runtime_error("end_of_line_solve: malformed instance");
    }
    x = next;
  }
}

}  // namespace qge
