#ifndef WCM_LIMITS_HPP
#define WCM_LIMITS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wcm {

/// Resource guards for the grammar and automaton constructions. The
/// defaults are sized for desk-scale inputs; every guarded operation
/// accepts an explicit Limits so callers (CLI flags, tests) can override.
struct Limits {
  std::size_t max_productions = 200'000;  ///< grammar production guard
  std::size_t max_dfa_states = 10'000;    ///< subset-construction guard
  std::size_t max_enumerate_words = 2'000'000;
  std::size_t max_congruence_words = 400'000;
};

inline const Limits& default_limits() {
  static const Limits limits;
  return limits;
}

/// Thrown when a construction exceeds a Limits guard. The message names
/// the operation so staged pipelines can report where the blowup happened.
struct guard_error : std::runtime_error {
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wcm

#endif
