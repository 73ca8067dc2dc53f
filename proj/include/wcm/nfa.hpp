#ifndef WCM_NFA_HPP
#define WCM_NFA_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "wcm/limits.hpp"
#include "wcm/words.hpp"

namespace wcm {

/// Nondeterministic finite automaton, possibly with epsilon moves.
/// States are 0..state_count-1. The alphabet is carried explicitly so
/// that complementation has a well-defined universe.
struct Nfa {
  struct Transition {
    std::uint32_t from = 0;
    std::optional<Symbol> label;  // nullopt = epsilon
    std::uint32_t to = 0;
  };

  std::uint32_t state_count = 0;
  std::vector<Symbol> alphabet;  // sorted, unique
  std::vector<Transition> transitions;
  std::vector<std::uint32_t> initial;
  std::vector<std::uint32_t> accepting;
};

bool nfa_accepts(const Nfa& n, const Word& w);

Nfa nfa_empty(std::vector<Symbol> alphabet);
Nfa nfa_epsilon(std::vector<Symbol> alphabet);
Nfa nfa_word(const Word& w, std::vector<Symbol> alphabet);
Nfa nfa_words(const std::vector<Word>& ws, std::vector<Symbol> alphabet);
Nfa nfa_universal(std::vector<Symbol> alphabet);
/// A* w A* — all words containing the non-empty factor w.
Nfa nfa_factor(const Word& w, std::vector<Symbol> alphabet);

Nfa nfa_union(const Nfa& a, const Nfa& b);
Nfa nfa_concat(const Nfa& a, const Nfa& b);
Nfa nfa_star(const Nfa& a);
Nfa nfa_plus(const Nfa& a);
Nfa nfa_reverse(const Nfa& a);
Nfa nfa_intersect(const Nfa& a, const Nfa& b);

/// Removes epsilon transitions; language preserved.
Nfa nfa_eps_free(const Nfa& a);
/// Subset construction. Result is a complete DFA (with sink) whose
/// accepting set is as expected; throws guard_error past the state guard.
Nfa determinize(const Nfa& a, const Limits& limits = default_limits());
Nfa nfa_complement(const Nfa& a, const Limits& limits = default_limits());
/// Brzozowski minimization (reverse-determinize twice).
Nfa nfa_minimize(const Nfa& a, const Limits& limits = default_limits());

bool nfa_is_empty(const Nfa& a);
/// All accepted words of length <= maxlen, by breadth-first product walk.
std::set<Word> enumerate_nfa(const Nfa& a, std::size_t maxlen);

}  // namespace wcm

#endif
