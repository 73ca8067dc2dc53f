#ifndef WCM_CLOSURES_HPP
#define WCM_CLOSURES_HPP

#include <variant>

#include "wcm/cfg.hpp"
#include "wcm/limits.hpp"
#include "wcm/rewriting.hpp"

namespace wcm {

/// Rewriting system { (w·alpha, alpha) : w in L(lhs_core) } for a
/// self-overlap-free word alpha. lhs_core must not contain the empty
/// word. These systems preserve context-free ancestry via the diamond
/// reduction below even though their targets are words, not letters.
struct AlphaMonadicSystem {
  Word alpha;
  Cfg lhs_core;
};

/// Grammar for the ancestors ⟨L(g)⟩ under a monadic grammar-backed
/// system: every letter a gains a nonterminal X_a -> a | U_a with the
/// lhs grammars lifted through the shared X family (the fixpoint is
/// exactly nested iterated substitution); insertion rules (target empty)
/// are realized by an E nonterminal interleaved through every body.
Cfg monadic_ancestors(const Cfg& g, const MonadicCfSystem& r,
                      const Limits& limits = default_limits());

/// Ancestors under an alpha-system: re-diamond (replace maximal alpha
/// factors by a fresh symbol), take monadic ancestors of the diamonded
/// system, expand the diamond again. Requires alpha self-overlap free,
/// which makes the diamonding unique.
Cfg alpha_monadic_ancestors(const Cfg& g, const AlphaMonadicSystem& s,
                            const Limits& limits = default_limits());

/// Alternating product of two marker languages: all words
/// u_1..u_k # v_k..v_1 whose blocks u_i # v_i come alternately from the
/// two languages (either phase).
Cfg alternating_product(const Cfg& g1, const Cfg& g2, const Limits& limits = default_limits());

/// One side of a bipartisan ancestor operation. `reversed` applies the
/// mirror image of the system, which is how right-of-marker sides are
/// rewritten (they carry reversed words).
struct SideSystem {
  std::variant<MonadicCfSystem, AlphaMonadicSystem> system;
  bool reversed = false;

  SideSystem(MonadicCfSystem m) : system(std::move(m)) {}          // NOLINT
  SideSystem(AlphaMonadicSystem a) : system(std::move(a)) {}       // NOLINT
  SideSystem(std::variant<MonadicCfSystem, AlphaMonadicSystem> v, bool rev)
      : system(std::move(v)), reversed(rev) {}
};

inline SideSystem mirrored(MonadicCfSystem m) { return SideSystem{std::move(m), true}; }
inline SideSystem mirrored(AlphaMonadicSystem a) { return SideSystem{std::move(a), true}; }

/// Independent ancestry on the two sides of the marker: the left system
/// rewrites letters before '#', the right system letters after it.
Cfg bipartisan_ancestors(const Cfg& g, const SideSystem& left, const SideSystem& right,
                         const Limits& limits = default_limits());

/// Word-problem grammar of the monoid presented by a finite complete
/// monadic system: bipartisan ancestors of { w # w^rev : w irreducible }.
Cfg wp_from_complete_monadic(const RewriteSystem& r, const Limits& limits = default_limits());

}  // namespace wcm

#endif
