#ifndef WCM_REWRITING_HPP
#define WCM_REWRITING_HPP

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "wcm/cfg.hpp"
#include "wcm/limits.hpp"
#include "wcm/words.hpp"

namespace wcm {

struct Rule {
  Word lhs, rhs;
  friend auto operator<=>(const Rule&, const Rule&) = default;
};

/// A string rewriting system with a finite rule list. Grammar-described
/// rule sets (infinitely many left-hand sides per target) are the
/// MonadicCfSystem below; they feed the ancestor constructions and are
/// deliberately kept away from completion.
class RewriteSystem {
 public:
  RewriteSystem(Alphabet alphabet, std::vector<Rule> rules);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Rule>& rules() const { return rules_; }

  /// |lhs| >= |rhs| and rhs a letter or empty, for every rule.
  bool is_monadic() const;
  /// every rhs empty.
  bool is_special() const;
  bool is_length_nonincreasing() const;

 private:
  Alphabet alphabet_;
  std::vector<Rule> rules_;
};

/// Monadic rewriting system whose left-hand-side set for each target (a
/// letter, or the empty word for insertion rules) is a context-free
/// language.
struct MonadicCfSystem {
  std::vector<Symbol> alphabet;
  std::vector<std::pair<std::optional<Symbol>, Cfg>> targets;
};

/// Builds the grammar-backed view of a finite monadic system.
MonadicCfSystem to_monadic_cf(const RewriteSystem& r);

enum class Eq { equal, distinct, unknown };

/// All words reachable from w by one rule application.
std::set<Word> rewrite_once(const Word& w, const RewriteSystem& r);
std::set<Word> rewrite_once(const Word& w, const MonadicCfSystem& r);

/// Breadth-first search of the undirected rewrite graph restricted to
/// words of length <= maxlen. `distinct` only when the component of u was
/// exhausted and is provably closed (no one-step neighbour of any
/// explored word leaves the bound); otherwise `unknown`.
Eq equal_bounded(const Word& u, const Word& v, const RewriteSystem& r, std::size_t maxlen,
                 std::size_t maxstates);

/// Exactly { w : |w| <= maxlen, w ->* x for some x in target }. Requires
/// every rule length-non-increasing, which makes the upward closure
/// complete within the bound.
std::set<Word> ancestors_bounded(const std::set<Word>& target, const RewriteSystem& r,
                                 std::size_t maxlen, const Limits& limits = default_limits());
std::set<Word> ancestors_bounded(const std::set<Word>& target, const MonadicCfSystem& r,
                                 std::size_t maxlen, const Limits& limits = default_limits());

struct ConfluenceResult {
  enum class Status { complete, incomplete, inapplicable };
  Status status = Status::complete;
  std::optional<std::pair<Word, Word>> witness;  // unjoinable critical pair
};

/// Critical-pair check for systems oriented by strict shortlex descent.
ConfluenceResult check_confluence_lengthreducing(const RewriteSystem& r);

/// Knuth-Bendix completion under shortlex (alphabet order from the
/// system's alphabet). Returns an equivalent complete system, or nullopt
/// once more than maxrules rules accumulate.
std::optional<RewriteSystem> complete_bounded(const RewriteSystem& r, std::size_t maxrules);

/// Normal form under a terminating system (leftmost-innermost strategy).
Word normal_form(const Word& w, const RewriteSystem& r);

/// shortlex comparison: shorter first, ties by the alphabet's declared
/// letter order.
int shortlex_compare(const Word& a, const Word& b, const Alphabet& alphabet);

}  // namespace wcm

#endif
