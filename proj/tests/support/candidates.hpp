#ifndef EFEQ_TESTS_CANDIDATES_HPP
#define EFEQ_TESTS_CANDIDATES_HPP

#include <string>
#include <vector>

#include "efeq/strategy.hpp"

namespace candidates {

struct Named {
  std::string name;
  efeq::ObstructionCandidate candidate;
};

/// Synthetic candidates on [0, n). The first `closing` admit a closure point,
/// the next `open` do not. Deterministic in `seed`.
std::vector<Named> synthetic(std::uint64_t n, std::size_t closing, std::size_t open, std::uint64_t seed);

}  // namespace candidates

#endif  // EFEQ_TESTS_CANDIDATES_HPP
