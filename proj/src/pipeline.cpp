#include "wcm/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "wcm/fst.hpp"

namespace wcm {

namespace {

std::vector<Symbol> sorted_unique(std::vector<Symbol> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

template <typename F>
auto staged(const char* name, F&& f) {
  try {
    return f();
  } catch (const guard_error& e) {
    throw guard_error(std::string("stage ") + name + ": " + e.what());
  }
}

// Regular pieces shared by both directions of the construction.
struct AlphaSets {
  Nfa no_alpha;      // A* - A* alpha A*
  Nfa sigma1;        // the finite piece set
  Nfa sigma2_star;   // (Sigma* - Sigma)^*
  Nfa sigma2_star_rev;
};

AlphaSets alpha_sets(const CompressionStep& step, const std::vector<Symbol>& letters,
                     const Limits& limits) {
  AlphaSets s;
  s.no_alpha = nfa_minimize(nfa_complement(nfa_factor(step.alpha, letters), limits), limits);
  s.sigma1 = nfa_words(step.sigma, letters);
  Nfa sigma_star = nfa_concat(nfa_word(step.alpha, letters), s.no_alpha);
  Nfa sigma2 = nfa_minimize(
      nfa_intersect(sigma_star, nfa_complement(s.sigma1, limits)), limits);
  s.sigma2_star = nfa_minimize(nfa_star(sigma2), limits);
  s.sigma2_star_rev = nfa_minimize(nfa_reverse(s.sigma2_star), limits);
  return s;
}

void validate_base_alphabet(const CompressionStep& step, const Cfg& base_wp) {
  std::vector<Symbol> allowed = step.gamma;
  allowed.push_back(marker_symbol());
  allowed = sorted_unique(std::move(allowed));
  for (Symbol t : base_wp.terminals)
    if (!std::binary_search(allowed.begin(), allowed.end(), t))
      throw std::invalid_argument(
          "base word-problem grammar uses a letter outside the compressed alphabet: " +
          symbol_name(t));
}

// Exactly one marker, nothing else constrained.
Nfa single_marker_shape(const std::vector<Symbol>& letters) {
  return nfa_concat(nfa_universal(letters),
                    nfa_concat(nfa_word({marker_symbol()}, {}), nfa_universal(letters)));
}

}  // namespace

const Cfg& WpGrammarBundle::stage(const std::string& name) const {
  for (const auto& [n, g] : stages)
    if (n == name) return g;
  throw std::invalid_argument("unknown stage " + name);
}

WpGrammarBundle build_wp_grammar(const MonoidPresentation& p, const Cfg& base_wp,
                                 const Limits& limits) {
  Classification cls = classify(p);
  if (!cls.weakly_compressible)
    throw std::invalid_argument("build_wp_grammar: presentation is incompressible");
  CompressionStep step = compress(p);
  validate_base_alphabet(step, base_wp);
  const std::vector<Symbol>& letters = p.alphabet().letters();
  const Symbol mk = marker_symbol();
  const Word& alpha = step.alpha;

  WpGrammarBundle bundle{p, step, base_wp, Cfg{}, {}};
  auto keep = [&](const char* name, const Cfg& g) { bundle.stages.push_back({name, g}); };

  AlphaSets sets = staged("regular_sets", [&] { return alpha_sets(step, letters, limits); });

  // The word problem of the left monoid over the pieces themselves:
  // gamma letters expand to their pieces, reversed on the right of the
  // marker to keep the letter-level reversal convention.
  Cfg g_sigma1 = staged("G_Sigma1", [&] {
    std::map<Symbol, Word> left, right;
    for (const auto& [piece, letter] : step.phi) {
      left[letter] = piece;
      right[letter] = reverse_word(piece);
    }
    return apply_fst(base_wp, fst_two_sided(left, right, mk, {mk}), limits);
  });
  keep("G_Sigma1", g_sigma1);

  Cfg p2 = staged("P_2", [&] {
    Nfa shape = nfa_concat(sets.sigma2_star,
                           nfa_concat(nfa_word({mk}, {}), sets.sigma2_star_rev));
    return intersect_regular(wp_free_monoid_grammar(letters), shape, limits);
  });
  keep("P_2", p2);

  Cfg q = staged("Q", [&] { return alternating_product(g_sigma1, p2, limits); });
  keep("Q", q);

  Cfg tau_q = staged("tau_Q", [&] {
    std::map<Symbol, Word> tau;
    for (Symbol t : q.terminals) tau[t] = Word{t};
    Word image = alpha;
    image.push_back(mk);
    Word arev = reverse_word(alpha);
    image.insert(image.end(), arev.begin(), arev.end());
    tau[mk] = image;
    return hom_image(q, tau, limits);
  });
  keep("tau_Q", tau_q);

  Cfg ip = staged("IP", [&] {
    return identity_language_grammar(base_wp, Alphabet(step.gamma), limits);
  });
  keep("IP", ip);

  Cfg lhs_core = staged("I_alpha_lhs_core", [&] {
    std::map<Symbol, Word> expand;
    for (const auto& [piece, letter] : step.phi) expand[letter] = piece;
    Cfg over_pieces = hom_image(ip, expand, limits);
    return intersect_regular(over_pieces, nfa_plus(sets.sigma1), limits);
  });
  keep("I_alpha_lhs_core", lhs_core);

  AlphaMonadicSystem i_alpha{alpha, lhs_core};
  Cfg l_alpha = staged("L_alpha", [&] {
    return bipartisan_ancestors(tau_q, SideSystem{i_alpha}, mirrored(i_alpha), limits);
  });
  keep("L_alpha", l_alpha);
  keep("WP_alpha_cap_alpha", l_alpha);

  Cfg r_alpha_lhs = staged("R_alpha_lhs", [&] {
    return simplify(cfg_union(l_alpha, wp_free_monoid_grammar(letters)));
  });
  keep("R_alpha_lhs", r_alpha_lhs);

  Cfg wp_alpha = staged("WP_alpha", [&] {
    MonadicCfSystem r_alpha;
    r_alpha.alphabet = r_alpha_lhs.terminals;
    r_alpha.targets.push_back({mk, r_alpha_lhs});
    Cfg anc = monadic_ancestors(wp_free_monoid_grammar(letters), r_alpha, limits);
    Nfa strip = nfa_concat(
        nfa_universal(letters),
        nfa_concat(nfa_word(alpha, {}),
                   nfa_concat(nfa_universal(letters),
                              nfa_concat(nfa_word({mk}, {}),
                                         nfa_concat(nfa_universal(letters),
                                                    nfa_concat(nfa_word(reverse_word(alpha), {}),
                                                               nfa_universal(letters)))))));
    return intersect_regular(anc, nfa_minimize(strip, limits), limits);
  });
  keep("WP_alpha", wp_alpha);

  Cfg w_minus = staged("W_alpha_minus", [&] {
    Nfa no_alpha_rev = nfa_minimize(
        nfa_complement(nfa_factor(reverse_word(alpha), letters), limits), limits);
    Nfa shape = nfa_concat(sets.no_alpha, nfa_concat(nfa_word({mk}, {}), no_alpha_rev));
    return intersect_regular(wp_free_monoid_grammar(letters), shape, limits);
  });
  keep("W_alpha_minus", w_minus);

  bundle.built_wp = staged("union", [&] { return simplify(cfg_union(wp_alpha, w_minus)); });

  // Boundary validator: every word has exactly one marker.
  Cfg bad = intersect_regular(bundle.built_wp,
                              nfa_complement(single_marker_shape(letters), limits), limits);
  if (nonempty(bad))
    throw std::logic_error("build_wp_grammar: built grammar violates the marker convention");
  return bundle;
}

Cfg extract_lm_wp_grammar(const MonoidPresentation& p, const Cfg& wp_m, const Limits& limits) {
  Classification cls = classify(p);
  if (!cls.weakly_compressible)
    throw std::invalid_argument("extract_lm_wp_grammar: presentation is incompressible");
  CompressionStep step = compress(p);
  const std::vector<Symbol>& letters = p.alphabet().letters();
  const Symbol mk = marker_symbol();
  AlphaSets sets = alpha_sets(step, letters, limits);

  // Restrict to Sigma1* alpha # alpha^rev (Sigma1^rev)*.
  Nfa strip = nfa_concat(
      nfa_star(sets.sigma1),
      nfa_concat(nfa_word(step.alpha, {}),
                 nfa_concat(nfa_word({mk}, {}),
                            nfa_concat(nfa_word(reverse_word(step.alpha), {}),
                                       nfa_star(nfa_reverse(sets.sigma1))))));
  Cfg restricted = intersect_regular(wp_m, nfa_minimize(strip, limits), limits);

  // tau_# is injective there; peel alpha # alpha^rev back to #.
  std::vector<Symbol> full = restricted.terminals;
  full.push_back(mk);
  Cfg peeled = apply_fst(restricted, fst_strip_marker_context(step.alpha, sorted_unique(full)),
                         limits);

  // Decode pieces into gamma letters (reversed pieces right of the marker).
  std::map<Word, Symbol> left_code, right_code;
  for (const auto& [piece, letter] : step.phi) {
    left_code[piece] = letter;
    right_code[reverse_word(piece)] = letter;
  }
  Cfg decoded = apply_fst(peeled, fst_decode_two_sided(left_code, right_code, mk), limits);
  return simplify(decoded);
}

bool rational_membership(const Cfg& wp, const Word& w, const Nfa& r, const Limits& limits) {
  Nfa query = nfa_concat(nfa_word(w, {}),
                         nfa_concat(nfa_word({marker_symbol()}, {}), nfa_reverse(r)));
  return nonempty(intersect_regular(wp, query, limits));
}

std::vector<WpGrammarBundle> lift_wp_through_chain(const CompressionChain& chain,
                                                   const Cfg& terminal_wp, const Limits& limits) {
  std::vector<WpGrammarBundle> bundles;
  Cfg wp = terminal_wp;
  for (auto it = chain.steps.rbegin(); it != chain.steps.rend(); ++it) {
    bundles.push_back(build_wp_grammar(it->source, wp, limits));
    wp = bundles.back().built_wp;
  }
  return bundles;
}

WpDecisionReport decide_word_problem_cf(const MonoidPresentation& p,
                                        const std::optional<Cfg>& base_wp, const Limits& limits) {
  if (p.relations().size() != 1)
    throw std::invalid_argument("decide_word_problem_cf: needs exactly one relation");
  WpDecisionReport report{classify(p), Tri::unknown, compress_chain(p), false, std::nullopt, {}};
  report.idempotent = has_nontrivial_idempotent(p);
  const MonoidPresentation& terminal = report.chain.terminal();
  report.terminal_special = classify(terminal).special;

  std::optional<Cfg> terminal_wp = base_wp;
  if (!terminal_wp) {
    std::vector<Rule> rules;
    for (const auto& [u, v] : terminal.oriented_relations())
      if (u != v) rules.push_back({u, v});
    RewriteSystem sys(terminal.alphabet(), std::move(rules));
    try {
      terminal_wp = wp_from_complete_monadic(sys, limits);
      report.notes.push_back("terminal word-problem grammar built from its complete monadic system");
    } catch (const std::invalid_argument&) {
      report.notes.push_back(
          "no base word-problem grammar available: the terminal system is not complete monadic "
          "and none was supplied");
    }
  }
  if (terminal_wp) {
    if (report.chain.steps.empty()) {
      report.built_wp = terminal_wp;
    } else {
      auto bundles = lift_wp_through_chain(report.chain, *terminal_wp, limits);
      report.built_wp = bundles.back().built_wp;
    }
  }
  report.notes.push_back(
      "context-freeness of the word problem reduces to virtual freeness of the terminal group "
      "of units, which this toolkit does not decide");
  return report;
}

}  // namespace wcm
