#ifndef WCM_PIPELINE_HPP
#define WCM_PIPELINE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wcm/cfg.hpp"
#include "wcm/closures.hpp"
#include "wcm/compression.hpp"

namespace wcm {

/// Word-problem grammar for a weakly compressible monoid, built from a
/// word-problem grammar of its left monoid, with every intermediate stage
/// retained under its construction name.
struct WpGrammarBundle {
  MonoidPresentation presentation;
  CompressionStep step;
  Cfg base_wp;   // over the gamma letters and the marker
  Cfg built_wp;  // over the original letters and the marker
  std::vector<std::pair<std::string, Cfg>> stages;

  const Cfg& stage(const std::string& name) const;
};

/// Stage order: G_Sigma1, P_2, Q, tau_Q, IP, I_alpha_lhs_core,
/// L_alpha (= WP_alpha_cap_alpha), R_alpha_lhs, WP_alpha, W_alpha_minus.
WpGrammarBundle build_wp_grammar(const MonoidPresentation& p, const Cfg& base_wp,
                                 const Limits& limits = default_limits());

/// The converse direction: recover the left monoid's word-problem grammar
/// from one for the monoid itself (restrict to the sealed strip around
/// the marker, strip alpha # alpha^rev down to #, decode pieces).
Cfg extract_lm_wp_grammar(const MonoidPresentation& p, const Cfg& wp_m,
                          const Limits& limits = default_limits());

/// Does w equal some element of L(r) in the monoid whose word problem wp
/// is? (The right of the marker stores reversed words, so r is reversed.)
bool rational_membership(const Cfg& wp, const Word& w, const Nfa& r,
                         const Limits& limits = default_limits());

/// Lifts a word-problem grammar from the terminal of a compression chain
/// back up to its initial presentation, one build per step. Returns the
/// bundles outermost-last.
std::vector<WpGrammarBundle> lift_wp_through_chain(const CompressionChain& chain,
                                                   const Cfg& terminal_wp,
                                                   const Limits& limits = default_limits());

/// Report of the decision pipeline for one-relation presentations. The
/// final context-freeness verdict depends on virtual freeness of the
/// terminal's group of units, which this toolkit does not decide; the
/// report says so rather than guessing.
struct WpDecisionReport {
  Classification classification;
  Tri idempotent = Tri::unknown;
  CompressionChain chain;
  bool terminal_special = false;
  std::optional<Cfg> built_wp;
  std::vector<std::string> notes;
};

WpDecisionReport decide_word_problem_cf(const MonoidPresentation& p,
                                        const std::optional<Cfg>& base_wp = std::nullopt,
                                        const Limits& limits = default_limits());

}  // namespace wcm

#endif
