#include "wcm/closures.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "wcm/fst.hpp"
#include "wcm/presentation.hpp"

namespace wcm {

namespace {

std::vector<Symbol> sorted_unique(std::vector<Symbol> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool derives_epsilon(const Cfg& g) {
  return CykMatcher(g).matches({});
}

void check_guard(const Cfg& g, const char* op, const Limits& limits) {
  if (g.productions.size() > limits.max_productions)
    throw guard_error(std::string(op) + ": production guard exceeded (" +
                      std::to_string(g.productions.size()) + ")");
}

// Sampled shape validation for marker languages: every short word has
// exactly one marker.
void validate_marker_shape(const Cfg& g, const char* op, const Limits& limits) {
  std::set<Word> sample;
  try {
    sample = enumerate(g, 4, limits);
  } catch (const guard_error&) {
    return;  // too big to sample; shape enforced by construction upstream
  }
  for (const Word& w : sample) {
    std::size_t markers = 0;
    for (Symbol s : w)
      if (s == marker_symbol()) ++markers;
    if (markers != 1)
      throw std::invalid_argument(std::string(op) + ": language is not of the form A*#A* (saw " +
                                  word_str(w) + ")");
  }
}

}  // namespace

Cfg monadic_ancestors(const Cfg& g, const MonadicCfSystem& r, const Limits& limits) {
  // Alphabet of the result: letters of g plus everything the rules can
  // introduce (lhs letters and rule targets).
  std::vector<Symbol> letters = g.terminals;
  letters.insert(letters.end(), r.alphabet.begin(), r.alphabet.end());
  for (const auto& [target, lhs] : r.targets) {
    if (target) letters.push_back(*target);
    letters.insert(letters.end(), lhs.terminals.begin(), lhs.terminals.end());
  }
  letters = sorted_unique(std::move(letters));

  bool has_insertions = false;
  std::vector<std::pair<std::optional<Symbol>, Cfg>> live_targets;
  for (const auto& [target, lhs] : r.targets) {
    Cfg s = simplify(lhs);
    if (s.productions.empty()) continue;  // no rules for this target
    if (target && derives_epsilon(s))
      throw std::invalid_argument("monadic_ancestors: empty lhs for letter target " +
                                  symbol_name(*target));
    if (!target) has_insertions = true;
    live_targets.push_back({target, std::move(s)});
  }

  Cfg out;
  out.terminals = letters;
  // X_a for every letter, then optionally E.
  std::map<Symbol, std::uint32_t> x_of;
  for (Symbol a : letters) {
    x_of[a] = out.nt_count++;
  }
  std::uint32_t e_nt = 0;
  if (has_insertions) e_nt = out.nt_count++;

  // Lifts a grammar: nonterminals are copied at an offset, terminals b
  // become X_b, and (with insertion rules present) E is interleaved at
  // every position of every body.
  auto lift = [&](const Cfg& src) -> std::uint32_t {
    std::uint32_t offset = out.nt_count;
    out.nt_count += src.nt_count;
    for (const auto& p : src.productions) {
      std::vector<GSym> body;
      if (has_insertions) body.push_back(gsym_nt(e_nt));
      for (const GSym& s : p.body) {
        if (s.kind == GSym::Kind::nonterminal)
          body.push_back(gsym_nt(s.index + offset));
        else
          body.push_back(gsym_nt(x_of.at(Symbol{s.index})));
        if (has_insertions) body.push_back(gsym_nt(e_nt));
      }
      out.productions.push_back({p.lhs + offset, std::move(body)});
    }
    return src.start + offset;
  };

  for (Symbol a : letters) out.productions.push_back({x_of[a], {gsym(a)}});
  if (has_insertions) out.productions.push_back({e_nt, {}});
  for (const auto& [target, lhs] : live_targets) {
    std::uint32_t lifted = lift(lhs);
    if (target) {
      out.productions.push_back({x_of.at(*target), {gsym_nt(lifted)}});
    } else {
      out.productions.push_back({e_nt, {gsym_nt(lifted), gsym_nt(e_nt)}});
    }
  }
  out.start = lift(simplify(g));
  check_guard(out, "monadic_ancestors", limits);
  return simplify(out);
}

Cfg alpha_monadic_ancestors(const Cfg& g, const AlphaMonadicSystem& s, const Limits& limits) {
  if (s.alpha.empty() || !is_self_overlap_free(s.alpha))
    throw std::invalid_argument("alpha_monadic_ancestors: alpha must be non-empty and self-overlap free");
  Cfg core = simplify(s.lhs_core);
  if (!core.productions.empty() && derives_epsilon(core))
    throw std::invalid_argument("alpha_monadic_ancestors: lhs_core contains the empty word");

  if (core.productions.empty()) {
    // No rules; the ancestor closure is the language itself.
    return simplify(g);
  }
  Symbol dia = diamond_symbol();
  std::vector<Symbol> letters = g.terminals;
  letters.insert(letters.end(), s.alpha.begin(), s.alpha.end());
  letters.insert(letters.end(), core.terminals.begin(), core.terminals.end());
  letters = sorted_unique(std::move(letters));

  Fst diamonder = fst_replace_factor(s.alpha, dia, letters);
  Cfg g_dia = apply_fst(g, diamonder, limits);
  Cfg lhs_dia = apply_fst(cfg_concat(core, word_cfg(s.alpha)), diamonder, limits);

  MonadicCfSystem dia_sys;
  dia_sys.alphabet = letters;
  dia_sys.alphabet.push_back(dia);
  dia_sys.targets.push_back({dia, lhs_dia});
  Cfg anc = monadic_ancestors(g_dia, dia_sys, limits);

  std::map<Symbol, Word> h;
  for (Symbol t : anc.terminals) h[t] = Word{t};
  h[dia] = s.alpha;
  return hom_image(anc, h, limits);
}

Cfg alternating_product(const Cfg& g1, const Cfg& g2, const Limits& limits) {
  validate_marker_shape(g1, "alternating_product", limits);
  validate_marker_shape(g2, "alternating_product", limits);
  Cfg a = simplify(g1);
  Cfg b = simplify(g2);
  Cfg out;
  out.terminals = sorted_unique([&] {
    std::vector<Symbol> t = a.terminals;
    t.insert(t.end(), b.terminals.begin(), b.terminals.end());
    t.push_back(marker_symbol());
    return t;
  }());
  // Layout: [a's nts][b's nts][Inner1][Inner2][Start]
  std::uint32_t off_b = a.nt_count;
  std::uint32_t inner1 = off_b + b.nt_count;
  std::uint32_t inner2 = inner1 + 1;
  std::uint32_t start = inner2 + 1;
  out.nt_count = start + 1;
  out.start = start;
  auto copy_with_marker = [&](const Cfg& src, std::uint32_t offset, std::uint32_t marker_nt) {
    for (const auto& p : src.productions) {
      Production q{p.lhs + offset, {}};
      for (const GSym& s : p.body) {
        if (s.kind == GSym::Kind::nonterminal)
          q.body.push_back(gsym_nt(s.index + offset));
        else if (Symbol{s.index} == marker_symbol())
          q.body.push_back(gsym_nt(marker_nt));
        else
          q.body.push_back(s);
      }
      out.productions.push_back(std::move(q));
    }
  };
  copy_with_marker(a, 0, inner1);
  copy_with_marker(b, off_b, inner2);
  // Inner1 sits at the marker position of an L1 block: either the real
  // marker or a nested L2 block, and symmetrically for Inner2.
  out.productions.push_back({inner1, {gsym(marker_symbol())}});
  if (!b.productions.empty()) out.productions.push_back({inner1, {gsym_nt(off_b + b.start)}});
  out.productions.push_back({inner2, {gsym(marker_symbol())}});
  if (!a.productions.empty()) out.productions.push_back({inner2, {gsym_nt(a.start)}});
  if (!a.productions.empty()) out.productions.push_back({start, {gsym_nt(a.start)}});
  if (!b.productions.empty()) out.productions.push_back({start, {gsym_nt(off_b + b.start)}});
  check_guard(out, "alternating_product", limits);
  return simplify(out);
}

namespace {

struct PreparedSide {
  // letter-target entries, already renamed into the side's alphabet
  std::vector<std::pair<std::optional<Symbol>, Cfg>> targets;
  // alpha systems to diamond on this side: (effective factor, diamond, lhs grammar)
  std::optional<std::tuple<Word, Symbol, Cfg>> alpha;
};

PreparedSide prepare_side(const SideSystem& side, bool primed, const Limits& limits) {
  PreparedSide out;
  auto decorate_word = [&](const Word& w) {
    if (!primed) return w;
    Word p;
    for (Symbol s : w) p.push_back(primed_symbol(s));
    return p;
  };
  auto decorate_cfg = [&](Cfg g) {
    if (side.reversed) g = cfg_reverse(g);
    if (!primed) return g;
    std::map<Symbol, Word> h;
    for (Symbol t : g.terminals) h[t] = Word{primed_symbol(t)};
    return hom_image(g, h, limits);
  };
  if (std::holds_alternative<MonadicCfSystem>(side.system)) {
    const auto& m = std::get<MonadicCfSystem>(side.system);
    for (const auto& [target, lhs] : m.targets) {
      std::optional<Symbol> t = target;
      if (t && primed) t = primed_symbol(*t);
      out.targets.push_back({t, decorate_cfg(lhs)});
    }
  } else {
    const auto& a = std::get<AlphaMonadicSystem>(side.system);
    if (a.alpha.empty() || !is_self_overlap_free(a.alpha))
      throw std::invalid_argument("bipartisan_ancestors: alpha must be self-overlap free");
    Cfg core = simplify(a.lhs_core);
    if (!core.productions.empty() && derives_epsilon(core))
      throw std::invalid_argument("bipartisan_ancestors: lhs_core contains the empty word");
    Symbol dia = primed ? diamond_right_symbol() : diamond_symbol();
    Word effective = side.reversed ? decorate_word(reverse_word(a.alpha)) : decorate_word(a.alpha);
    Cfg lhs = cfg_concat(core, word_cfg(a.alpha));  // rules are (w·alpha -> alpha)
    lhs = decorate_cfg(lhs);
    if (simplify(lhs).productions.empty()) return out;  // no rules
    out.alpha = {effective, dia, std::move(lhs)};
  }
  return out;
}

}  // namespace

Cfg bipartisan_ancestors(const Cfg& g, const SideSystem& left, const SideSystem& right,
                         const Limits& limits) {
  validate_marker_shape(g, "bipartisan_ancestors", limits);
  const Symbol mk = marker_symbol();

  // 1. Rename the right of the marker to a disjoint primed copy.
  std::map<Symbol, Word> id_map, prime_map;
  for (Symbol t : g.terminals) {
    if (t == mk) continue;
    id_map[t] = Word{t};
    prime_map[t] = Word{primed_symbol(t)};
  }
  PreparedSide pl = prepare_side(left, false, limits);
  PreparedSide pr = prepare_side(right, true, limits);
  Cfg cur = apply_fst(g, fst_two_sided(id_map, prime_map, mk, {mk}), limits);

  // 2. Diamond the alpha systems (left factor unprimed, right primed).
  auto diamond_in = [&](const Word& factor, Symbol dia) {
    std::vector<Symbol> letters = cur.terminals;
    letters.insert(letters.end(), factor.begin(), factor.end());
    letters = sorted_unique(std::move(letters));
    cur = apply_fst(cur, fst_replace_factor(factor, dia, letters), limits);
  };
  MonadicCfSystem combined;
  for (auto& [t, lhs] : pl.targets) combined.targets.push_back({t, std::move(lhs)});
  for (auto& [t, lhs] : pr.targets) combined.targets.push_back({t, std::move(lhs)});
  if (pl.alpha) {
    auto& [factor, dia, lhs] = *pl.alpha;
    diamond_in(factor, dia);
    Fst d = fst_replace_factor(factor, dia, [&] {
      std::vector<Symbol> ls = lhs.terminals;
      ls.insert(ls.end(), factor.begin(), factor.end());
      return sorted_unique(std::move(ls));
    }());
    combined.targets.push_back({dia, apply_fst(lhs, d, limits)});
  }
  if (pr.alpha) {
    auto& [factor, dia, lhs] = *pr.alpha;
    diamond_in(factor, dia);
    Fst d = fst_replace_factor(factor, dia, [&] {
      std::vector<Symbol> ls = lhs.terminals;
      ls.insert(ls.end(), factor.begin(), factor.end());
      return sorted_unique(std::move(ls));
    }());
    combined.targets.push_back({dia, apply_fst(lhs, d, limits)});
  }
  combined.alphabet = cur.terminals;

  // 3. One combined ancestor pass; letter rules cannot cross the marker
  //    (the two sides use disjoint letters) and insertion rules are
  //    fenced afterwards by the shape intersection.
  Cfg anc = monadic_ancestors(cur, combined, limits);

  // 4. Keep only properly shaped words: unprimed left, primed right.
  std::vector<Symbol> left_letters, right_letters;
  for (Symbol t : anc.terminals) {
    if (t == mk) continue;
    const std::string& name = symbol_name(t);
    if (name.rfind("\xE2\x97\x8Ap:", 0) == 0 || t == diamond_right_symbol())
      right_letters.push_back(t);
    else
      left_letters.push_back(t);
  }
  Nfa proper = nfa_concat(nfa_universal(left_letters),
                          nfa_concat(nfa_word({mk}, {}), nfa_universal(right_letters)));
  Cfg shaped = intersect_regular(anc, proper, limits);

  // 5. Expand diamonds, then strip the priming.
  std::map<Symbol, Word> undia;
  for (Symbol t : shaped.terminals) undia[t] = Word{t};
  if (pl.alpha) undia[std::get<1>(*pl.alpha)] = std::get<0>(*pl.alpha);
  if (pr.alpha) undia[std::get<1>(*pr.alpha)] = std::get<0>(*pr.alpha);
  Cfg expanded = hom_image(shaped, undia, limits);
  std::map<Symbol, Word> unprime;
  for (Symbol t : expanded.terminals) {
    const std::string& name = symbol_name(t);
    if (name.rfind("\xE2\x97\x8Ap:", 0) == 0)
      unprime[t] = Word{intern_symbol(name.substr(std::string("\xE2\x97\x8Ap:").size()))};
    else
      unprime[t] = Word{t};
  }
  return hom_image(expanded, unprime, limits);
}

Cfg wp_from_complete_monadic(const RewriteSystem& r, const Limits& limits) {
  if (!r.is_monadic()) throw std::invalid_argument("wp_from_complete_monadic: system not monadic");
  auto conf = check_confluence_lengthreducing(r);
  if (conf.status != ConfluenceResult::Status::complete)
    throw std::invalid_argument("wp_from_complete_monadic: system not complete");
  const std::vector<Symbol>& letters = r.alphabet().letters();
  Nfa irr = nfa_universal(letters);
  if (!r.rules().empty()) {
    Nfa reducible = nfa_empty(letters);
    for (const Rule& rule : r.rules())
      reducible = nfa_union(reducible, nfa_factor(rule.lhs, letters));
    irr = nfa_minimize(nfa_complement(reducible, limits), limits);
  }
  Nfa shape = nfa_concat(irr, nfa_concat(nfa_word({marker_symbol()}, {}), nfa_reverse(irr)));
  Cfg diagonal = intersect_regular(wp_free_monoid_grammar(letters), shape, limits);
  if (r.rules().empty()) return diagonal;
  MonadicCfSystem m = to_monadic_cf(r);
  return bipartisan_ancestors(diagonal, SideSystem{m}, mirrored(m), limits);
}

}  // namespace wcm
