#ifndef WCM_COMPRESSION_HPP
#define WCM_COMPRESSION_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "wcm/cfg.hpp"
#include "wcm/presentation.hpp"
#include "wcm/rewriting.hpp"

namespace wcm {

/// One application of weak compression: the sealing word, the left
/// pieces, the piece-to-letter bijection and the compressed presentation.
struct CompressionStep {
  Word alpha;
  std::vector<Word> sigma;            // left pieces, first-occurrence order
  std::vector<Symbol> gamma;          // fresh letters, parallel to sigma
  std::map<Word, Symbol> phi;         // piece -> letter
  std::map<Symbol, Word> phi_inv;     // letter -> piece
  MonoidPresentation source;
  MonoidPresentation target;
};

struct CanonicalForm {
  Word prefix;  // alpha-free
  Word core;    // begins and ends with alpha
  Word suffix;  // alpha-free

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

struct CompressionChain {
  MonoidPresentation initial;
  std::vector<CompressionStep> steps;

  const MonoidPresentation& terminal() const {
    return steps.empty() ? initial : steps.back().target;
  }
};

/// Factors of the relation sides (final alpha stripped) over the suffix
/// code alpha(A* - A*alphaA*), in first-occurrence order.
std::vector<Word> left_pieces(const MonoidPresentation& p, const Word& alpha);

/// Weak compression. Requires a weakly compressible presentation over at
/// least two letters (one-letter monoids are cyclic and handled
/// arithmetically by the solver instead).
CompressionStep compress(const MonoidPresentation& p);

/// Iterates compression until the presentation is incompressible (or has
/// a one-letter alphabet, where compression is refused).
CompressionChain compress_chain(const MonoidPresentation& p);

/// The unique factorization w = prefix . core . suffix with the core
/// spanning the first through last alpha occurrence; absent when w does
/// not contain alpha.
std::optional<CanonicalForm> canonical_form(const Word& w, const Word& alpha);

/// phi-image of the core with its final alpha stripped; pieces outside
/// sigma get fresh primed letters (they generate the free factor of the
/// extended left monoid and only compare literally).
Word gamma_part(const Word& w, const CompressionStep& step);

/// Deterministic spelling used for the fresh gamma letters.
std::string piece_spelling(const Word& piece);

/// Decides equality at the bottom of a compression chain.
using BaseSolver = std::function<Eq(const Word&, const Word&)>;

BaseSolver make_bfs_solver(const MonoidPresentation& p, std::size_t maxlen,
                           std::size_t maxstates);
/// Null when completion does not terminate within maxrules.
std::optional<BaseSolver> make_complete_solver(const MonoidPresentation& p,
                                               std::size_t maxrules);
/// Decides via membership of u#v^rev in a caller-supplied word-problem
/// grammar (a totality claim: answers are always definite).
BaseSolver make_grammar_solver(const Cfg& wp);
/// complete_bounded if it converges, bounded search otherwise.
BaseSolver make_auto_solver(const MonoidPresentation& p, std::size_t maxrules = 200,
                            std::size_t maxlen = 12, std::size_t maxstates = 200000);

/// Word equality by compression: canonical forms and free-product block
/// normal forms reduce the question to the left monoid, recursively down
/// the chain; the base solver answers at the incompressible bottom.
/// One-letter alphabets are decided by cyclic-monoid arithmetic.
Eq word_equal(const MonoidPresentation& p, const Word& u, const Word& v,
              const BaseSolver& base);

/// For a one-relation presentation: itself if special, the special
/// terminal of the compression chain if subspecial, absent otherwise.
std::optional<MonoidPresentation> compress_to_special(const MonoidPresentation& p);

/// JSON report of a chain: per step alpha, sigma, the phi table and the
/// target presentation text.
std::string chain_report_json(const CompressionChain& chain);

}  // namespace wcm

#endif
