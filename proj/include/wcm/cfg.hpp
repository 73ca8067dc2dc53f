#ifndef WCM_CFG_HPP
#define WCM_CFG_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "wcm/limits.hpp"
#include "wcm/nfa.hpp"
#include "wcm/words.hpp"

namespace wcm {

/// Grammar symbol: terminal (an interned Symbol) or nonterminal (index).
struct GSym {
  enum class Kind : std::uint8_t { terminal, nonterminal };
  Kind kind = Kind::terminal;
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(const GSym&, const GSym&) = default;
};

inline GSym gsym(Symbol s) { return GSym{GSym::Kind::terminal, s.id}; }
inline GSym gsym_nt(std::uint32_t n) { return GSym{GSym::Kind::nonterminal, n}; }

struct Production {
  std::uint32_t lhs = 0;
  std::vector<GSym> body;

  friend auto operator<=>(const Production&, const Production&) = default;
};

/// Context-free grammar over a declared terminal alphabet (which may
/// include the reserved marker and diamond symbols). Treat as immutable
/// once built; all operations return fresh grammars.
struct Cfg {
  std::vector<Symbol> terminals;  // sorted, unique
  std::uint32_t nt_count = 0;
  std::uint32_t start = 0;
  std::vector<Production> productions;
  std::vector<std::string> nt_names;  // optional, size nt_count when present

  bool has_terminal(Symbol s) const;
};

Cfg empty_cfg(std::vector<Symbol> terminals);
Cfg epsilon_cfg(std::vector<Symbol> terminals);
Cfg word_cfg(const Word& w, std::vector<Symbol> terminals = {});
Cfg words_cfg(const std::vector<Word>& ws, std::vector<Symbol> terminals = {});

/// Removes unproductive and unreachable nonterminals and duplicate
/// productions; language preserved.
Cfg simplify(const Cfg& g);

/// { w # w^rev | w over the alphabet } — the word problem of the free
/// monoid, the seed of every word-problem construction here.
Cfg wp_free_monoid_grammar(const Alphabet& a);
Cfg wp_free_monoid_grammar(const std::vector<Symbol>& letters);

bool nonempty(const Cfg& g);

/// Exact bounded language: L(g) ∩ (length <= maxlen), computed by a
/// bottom-up fixpoint over the grammar. Oracle-grade; guarded.
std::set<Word> enumerate(const Cfg& g, std::size_t maxlen,
                         const Limits& limits = default_limits());

/// CNF + CYK membership tables, built once per grammar.
class CykMatcher {
 public:
  explicit CykMatcher(const Cfg& g);
  bool matches(const Word& w) const;

 private:
  bool start_nullable_ = false;
  bool empty_language_ = false;
  std::uint32_t nt_count_ = 0;
  std::uint32_t start_ = 0;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> binary_;  // (B,C) -> A
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> term_;    // symbol -> A
};

/// One-shot membership; loops should build a CykMatcher instead.
bool member(const Cfg& g, const Word& w);

Cfg cfg_union(const Cfg& a, const Cfg& b);
Cfg cfg_concat(const Cfg& a, const Cfg& b);
Cfg cfg_star(const Cfg& a);
Cfg cfg_reverse(const Cfg& a);

/// Image under the homomorphism h (total on g's terminals).
Cfg hom_image(const Cfg& g, const std::map<Symbol, Word>& h,
              const Limits& limits = default_limits());

/// Bar-Hillel style product with a regular language; see fst.hpp for the
/// underlying construction.
Cfg intersect_regular(const Cfg& g, const Nfa& n, const Limits& limits = default_limits());

/// { u | u # \in L(wp) } with the marker erased: the identity language of
/// a word-problem grammar.
Cfg identity_language_grammar(const Cfg& wp, const Alphabet& a,
                              const Limits& limits = default_limits());

/// Internal helper shared by the product constructions and enumerate:
/// bodies of length <= 2 (terminal, nonterminal, pair, or empty).
Cfg binarize(const Cfg& g);

}  // namespace wcm

#endif
