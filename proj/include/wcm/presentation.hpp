#ifndef WCM_PRESENTATION_HPP
#define WCM_PRESENTATION_HPP

#include <optional>
#include <utility>
#include <vector>

#include "wcm/limits.hpp"
#include "wcm/words.hpp"

namespace wcm {

using Relation = std::pair<Word, Word>;

/// A finite monoid presentation Mon<A | u_i = v_i>. Relations are stored
/// exactly as given; length orientation is applied on demand by the
/// operations that need it.
class MonoidPresentation {
 public:
  MonoidPresentation(Alphabet alphabet, std::vector<Relation> relations);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Relation>& relations() const { return relations_; }

  /// Relations with |lhs| >= |rhs|, the orientation used by the
  /// structural classification and the rewriting-based solvers.
  std::vector<Relation> oriented_relations() const;

  friend bool operator==(const MonoidPresentation&, const MonoidPresentation&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Relation> relations_;
};

struct Classification {
  bool special = false;              // every oriented rhs is empty
  bool subspecial = false;           // single relation with u in vA* ∩ A*v
  bool weakly_compressible = false;  // common self-overlap-free seal exists
  bool incompressible = true;
  std::optional<Word> sealing_word;

  friend bool operator==(const Classification&, const Classification&) = default;
};

enum class Tri { yes, no, unknown };

/// True iff w is empty or no proper non-empty prefix of w is also a
/// proper non-empty suffix.
bool is_self_overlap_free(const Word& w);

/// True iff both u and v begin and end with w. w must be non-empty.
bool is_sealed_by(const Word& u, const Word& v, const Word& w);

/// The unique self-overlap-free word sealing every relation pair, if one
/// exists. Any common seal is a prefix of every relation side, so the
/// search runs over the self-overlap-free prefixes of the shortest side.
std::optional<Word> find_sealing_word(const MonoidPresentation& p);

Classification classify(const MonoidPresentation& p);

/// Lallement's criterion for a non-trivial idempotent in a one-relation
/// monoid: definite `yes` for subspecial presentations with |u| > |v| > 0,
/// definite `no` when the presentation is neither special nor subspecial.
/// For special presentations the answer depends on right cancellativity;
/// a bounded probe searches words of length <= probe_bound for a witness
/// x, y, z with xz = yz and x != y, and reports `unknown` when it finds
/// none.
Tri has_nontrivial_idempotent(const MonoidPresentation& p, std::size_t probe_bound = 8,
                              const Limits& limits = default_limits());

}  // namespace wcm

#endif
