#ifndef WCM_FST_HPP
#define WCM_FST_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "wcm/limits.hpp"
#include "wcm/nfa.hpp"
#include "wcm/words.hpp"

namespace wcm {

struct Cfg;

/// Finite-state transducer. Transitions consume one input letter (or
/// epsilon) and emit an output word; accepting states may emit a final
/// exit word. Nondeterministic: the transduction of a word is the set of
/// outputs over all accepting runs.
struct Fst {
  struct Transition {
    std::uint32_t from = 0;
    std::optional<Symbol> in;  // nullopt = epsilon input
    Word out;
    std::uint32_t to = 0;
  };

  std::uint32_t state_count = 0;
  std::vector<Symbol> input_alphabet;
  std::vector<Symbol> output_alphabet;
  std::vector<Transition> transitions;
  std::vector<std::uint32_t> initial;
  std::vector<std::pair<std::uint32_t, Word>> finals;  // (state, exit word)
};

/// t(L(g)) as a grammar: the pushdown-times-transducer triple
/// construction, built productively (only derivable triples are
/// materialized) and pruned. This one construction backs regular
/// intersection, inverse homomorphisms, quotients and the re-diamonding
/// maps.
Cfg apply_fst(const Cfg& g, const Fst& t, const Limits& limits = default_limits());

/// Transduce a single word directly (test/CLI helper; breadth-first run).
std::vector<Word> fst_apply_word(const Fst& t, const Word& w, std::size_t max_outputs = 1024);

Fst fst_identity(std::vector<Symbol> alphabet);
/// Identity on L(n): apply_fst with this realizes Bar-Hillel intersection.
Fst fst_identity_restricted(const Nfa& n);

/// { (xs, x) : x over the alphabet } — right quotient by the fixed word s.
Fst fst_right_quotient(const Word& s, std::vector<Symbol> alphabet);

/// Deterministic maximal replacement of the self-overlap-free factor
/// `alpha` by the single symbol `diamond` (KMP scanner; pending partial
/// matches are flushed at word end). Letters outside alpha pass through.
Fst fst_replace_factor(const Word& alpha, Symbol diamond, std::vector<Symbol> alphabet);

/// Applies `left` to letters before the marker and `right` after it; the
/// marker itself maps to `marker_image`.
Fst fst_two_sided(const std::map<Symbol, Word>& left, const std::map<Symbol, Word>& right,
                  Symbol marker, const Word& marker_image);

/// Decodes concatenations of code words into their code symbols, with
/// separate codes on the two sides of the marker (the right side is
/// decoded against `right_code` as written).
Fst fst_decode_two_sided(const std::map<Word, Symbol>& left_code,
                         const std::map<Word, Symbol>& right_code, Symbol marker);

/// { (h(b1..bk), b1..bk) } — inverse of a homomorphism with non-empty
/// letter images.
Fst fst_inverse_hom(const std::map<Symbol, Word>& h);

/// Deletes alpha immediately left of the marker and alpha^rev immediately
/// right of it; elsewhere the identity.
Fst fst_strip_marker_context(const Word& alpha, std::vector<Symbol> alphabet);

}  // namespace wcm

#endif
