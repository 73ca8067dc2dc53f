#include "wcm/cfg.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "wcm/fst.hpp"

namespace wcm {

namespace {

std::vector<Symbol> sorted_unique(std::vector<Symbol> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Symbol> merged_terminals(const Cfg& a, const Cfg& b) {
  std::vector<Symbol> t = a.terminals;
  t.insert(t.end(), b.terminals.begin(), b.terminals.end());
  return sorted_unique(std::move(t));
}

void check_guard(const Cfg& g, const char* op, const Limits& limits) {
  if (g.productions.size() > limits.max_productions)
    throw guard_error(std::string(op) + ": production guard exceeded (" +
                      std::to_string(g.productions.size()) + ")");
}

}  // namespace

bool Cfg::has_terminal(Symbol s) const {
  return std::binary_search(terminals.begin(), terminals.end(), s);
}

Cfg empty_cfg(std::vector<Symbol> terminals) {
  Cfg g;
  g.terminals = sorted_unique(std::move(terminals));
  g.nt_count = 1;
  g.start = 0;
  return g;
}

Cfg epsilon_cfg(std::vector<Symbol> terminals) {
  Cfg g = empty_cfg(std::move(terminals));
  g.productions.push_back({0, {}});
  return g;
}

Cfg word_cfg(const Word& w, std::vector<Symbol> terminals) {
  terminals.insert(terminals.end(), w.begin(), w.end());
  Cfg g = empty_cfg(std::move(terminals));
  Production p{0, {}};
  for (Symbol s : w) p.body.push_back(gsym(s));
  g.productions.push_back(std::move(p));
  return g;
}

Cfg words_cfg(const std::vector<Word>& ws, std::vector<Symbol> terminals) {
  for (const Word& w : ws) terminals.insert(terminals.end(), w.begin(), w.end());
  Cfg g = empty_cfg(std::move(terminals));
  for (const Word& w : ws) {
    Production p{0, {}};
    for (Symbol s : w) p.body.push_back(gsym(s));
    g.productions.push_back(std::move(p));
  }
  return g;
}

Cfg simplify(const Cfg& g) {
  // Productive nonterminals.
  std::vector<char> productive(g.nt_count, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions) {
      if (productive[p.lhs]) continue;
      bool ok = true;
      for (const GSym& s : p.body)
        if (s.kind == GSym::Kind::nonterminal && !productive[s.index]) {
          ok = false;
          break;
        }
      if (ok) {
        productive[p.lhs] = 1;
        changed = true;
      }
    }
  }
  // Reachable through productive productions.
  std::vector<char> reachable(g.nt_count, 0);
  if (g.start < g.nt_count) reachable[g.start] = 1;
  changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions) {
      if (!reachable[p.lhs] || !productive[p.lhs]) continue;
      bool ok = true;
      for (const GSym& s : p.body)
        if (s.kind == GSym::Kind::nonterminal && !productive[s.index]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      for (const GSym& s : p.body)
        if (s.kind == GSym::Kind::nonterminal && !reachable[s.index]) {
          reachable[s.index] = 1;
          changed = true;
        }
    }
  }
  std::vector<std::uint32_t> remap(g.nt_count, UINT32_MAX);
  Cfg out;
  out.terminals = g.terminals;
  bool keep_names = !g.nt_names.empty();
  for (std::uint32_t n = 0; n < g.nt_count; ++n)
    if (reachable[n] && productive[n]) {
      remap[n] = out.nt_count++;
      if (keep_names) out.nt_names.push_back(g.nt_names[n]);
    }
  if (remap[g.start] == UINT32_MAX) {
    // Empty language: keep a bare start symbol.
    Cfg e = empty_cfg(g.terminals);
    return e;
  }
  out.start = remap[g.start];
  std::set<Production> dedup;
  for (const auto& p : g.productions) {
    if (remap[p.lhs] == UINT32_MAX) continue;
    Production q{remap[p.lhs], {}};
    bool ok = true;
    for (const GSym& s : p.body) {
      if (s.kind == GSym::Kind::nonterminal) {
        if (remap[s.index] == UINT32_MAX) {
          ok = false;
          break;
        }
        q.body.push_back(gsym_nt(remap[s.index]));
      } else {
        q.body.push_back(s);
      }
    }
    if (ok) dedup.insert(std::move(q));
  }
  out.productions.assign(dedup.begin(), dedup.end());
  return out;
}

Cfg wp_free_monoid_grammar(const Alphabet& a) { return wp_free_monoid_grammar(a.letters()); }

Cfg wp_free_monoid_grammar(const std::vector<Symbol>& letters) {
  std::vector<Symbol> terms = letters;
  terms.push_back(marker_symbol());
  Cfg g = empty_cfg(std::move(terms));
  g.nt_names = {"S"};
  g.productions.push_back({0, {gsym(marker_symbol())}});
  for (Symbol x : letters) g.productions.push_back({0, {gsym(x), gsym_nt(0), gsym(x)}});
  return g;
}

Cfg binarize(const Cfg& g0) {
  Cfg g = g0;
  Cfg out;
  out.terminals = g.terminals;
  out.nt_count = g.nt_count;
  out.start = g.start;
  for (const auto& p : g.productions) {
    if (p.body.size() <= 2 &&
        !(p.body.size() == 2 &&
          (p.body[0].kind == GSym::Kind::terminal || p.body[1].kind == GSym::Kind::terminal))) {
      out.productions.push_back(p);
      continue;
    }
    // Wrap terminals of long/mixed bodies, then chain.
    std::vector<GSym> body;
    for (const GSym& s : p.body) {
      if (s.kind == GSym::Kind::terminal && p.body.size() >= 2) {
        std::uint32_t t = out.nt_count++;
        out.productions.push_back({t, {s}});
        body.push_back(gsym_nt(t));
      } else {
        body.push_back(s);
      }
    }
    std::uint32_t lhs = p.lhs;
    while (body.size() > 2) {
      std::uint32_t mid = out.nt_count++;
      out.productions.push_back({lhs, {body[0], gsym_nt(mid)}});
      body.erase(body.begin());
      lhs = mid;
    }
    out.productions.push_back({lhs, body});
  }
  return out;
}

bool nonempty(const Cfg& g) { return !simplify(g).productions.empty(); }

std::set<Word> enumerate(const Cfg& g0, std::size_t maxlen, const Limits& limits) {
  Cfg g = binarize(simplify(g0));
  if (g.productions.empty()) return {};
  std::vector<std::set<Word>> lang(g.nt_count);
  std::size_t total = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions) {
      std::set<Word>& target = lang[p.lhs];
      auto add = [&](const Word& w) {
        if (w.size() > maxlen) return;
        if (target.insert(w).second) {
          changed = true;
          if (++total > limits.max_enumerate_words)
            throw guard_error("enumerate: word guard exceeded");
        }
      };
      if (p.body.empty()) {
        add({});
      } else if (p.body.size() == 1) {
        const GSym& s = p.body[0];
        if (s.kind == GSym::Kind::terminal) {
          add({Symbol{s.index}});
        } else {
          for (const Word& w : lang[s.index]) add(w);
        }
      } else {
        const GSym& a = p.body[0];
        const GSym& b = p.body[1];
        const std::set<Word>& la = lang[a.index];
        const std::set<Word>& lb = lang[b.index];
        for (const Word& wa : la) {
          if (wa.size() > maxlen) continue;
          for (const Word& wb : lb) {
            if (wa.size() + wb.size() > maxlen) continue;
            add(concat(wa, wb));
          }
        }
      }
    }
  }
  return lang[g.start];
}

namespace {

// CNF construction: START + TERM + BIN + DEL + UNIT on a simplified grammar.
struct CnfBuild {
  bool start_nullable = false;
  bool empty_language = false;
  std::uint32_t nt_count = 0;
  std::uint32_t start = 0;
  std::vector<std::pair<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>>> binary;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> term;  // (A, symbol id)
};

CnfBuild to_cnf(const Cfg& g0) {
  CnfBuild out;
  Cfg g = binarize(simplify(g0));
  if (g.productions.empty()) {
    out.empty_language = true;
    return out;
  }
  // Nullable set.
  std::vector<char> nullable(g.nt_count, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions) {
      if (nullable[p.lhs]) continue;
      bool all = true;
      for (const GSym& s : p.body)
        if (s.kind == GSym::Kind::terminal || !nullable[s.index]) {
          all = false;
          break;
        }
      if (all) {
        nullable[p.lhs] = 1;
        changed = true;
      }
    }
  }
  out.start_nullable = nullable[g.start];
  out.nt_count = g.nt_count;
  out.start = g.start;

  // DEL: expand nullable occurrences in binary bodies; drop epsilon rules.
  std::vector<std::pair<std::uint32_t, std::vector<GSym>>> prods;
  for (const auto& p : g.productions) {
    if (p.body.empty()) continue;
    if (p.body.size() == 1) {
      prods.push_back({p.lhs, p.body});
      continue;
    }
    prods.push_back({p.lhs, p.body});
    if (p.body[0].kind == GSym::Kind::nonterminal && nullable[p.body[0].index])
      prods.push_back({p.lhs, {p.body[1]}});
    if (p.body[1].kind == GSym::Kind::nonterminal && nullable[p.body[1].index])
      prods.push_back({p.lhs, {p.body[0]}});
  }
  // UNIT: closure over single-nonterminal bodies.
  std::vector<std::set<std::uint32_t>> unit(g.nt_count);
  for (std::uint32_t n = 0; n < g.nt_count; ++n) unit[n].insert(n);
  changed = true;
  while (changed) {
    changed = false;
    for (const auto& [lhs, body] : prods)
      if (body.size() == 1 && body[0].kind == GSym::Kind::nonterminal)
        for (std::uint32_t n = 0; n < g.nt_count; ++n)
          if (unit[n].count(lhs) && unit[n].insert(body[0].index).second) changed = true;
  }
  std::set<std::pair<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>>> bin_set;
  std::set<std::pair<std::uint32_t, std::uint32_t>> term_set;
  for (std::uint32_t n = 0; n < g.nt_count; ++n) {
    for (std::uint32_t m : unit[n]) {
      for (const auto& [lhs, body] : prods) {
        if (lhs != m) continue;
        if (body.size() == 1 && body[0].kind == GSym::Kind::terminal)
          term_set.insert({n, body[0].index});
        else if (body.size() == 2)
          bin_set.insert({n, {body[0].index, body[1].index}});
      }
    }
  }
  out.binary.assign(bin_set.begin(), bin_set.end());
  out.term.assign(term_set.begin(), term_set.end());
  return out;
}

}  // namespace

CykMatcher::CykMatcher(const Cfg& g) {
  CnfBuild b = to_cnf(g);
  start_nullable_ = b.start_nullable;
  empty_language_ = b.empty_language;
  nt_count_ = b.nt_count;
  start_ = b.start;
  for (const auto& [a, bc] : b.binary)
    binary_[(static_cast<std::uint64_t>(bc.first) << 32) | bc.second].push_back(a);
  for (const auto& [a, t] : b.term) term_[t].push_back(a);
}

bool CykMatcher::matches(const Word& w) const {
  if (empty_language_) return false;
  if (w.empty()) return start_nullable_;
  const std::size_t n = w.size();
  const std::size_t words_per_cell = (nt_count_ + 63) / 64;
  std::vector<std::uint64_t> table(n * n * words_per_cell, 0);
  auto cell = [&](std::size_t i, std::size_t len) {
    return table.data() + ((len - 1) * n + i) * words_per_cell;
  };
  auto set_bit = [&](std::uint64_t* c, std::uint32_t nt) { c[nt >> 6] |= 1ull << (nt & 63); };
  auto get_bit = [&](const std::uint64_t* c, std::uint32_t nt) {
    return (c[nt >> 6] >> (nt & 63)) & 1;
  };
  for (std::size_t i = 0; i < n; ++i) {
    auto it = term_.find(w[i].id);
    if (it == term_.end()) continue;
    for (std::uint32_t a : it->second) set_bit(cell(i, 1), a);
  }
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      std::uint64_t* dst = cell(i, len);
      for (std::size_t k = 1; k < len; ++k) {
        const std::uint64_t* left = cell(i, k);
        const std::uint64_t* right = cell(i + k, len - k);
        for (std::uint32_t bw = 0; bw < words_per_cell; ++bw) {
          std::uint64_t bits = left[bw];
          while (bits) {
            std::uint32_t bidx = bw * 64 + static_cast<std::uint32_t>(__builtin_ctzll(bits));
            bits &= bits - 1;
            for (std::uint32_t cw = 0; cw < words_per_cell; ++cw) {
              std::uint64_t cbits = right[cw];
              while (cbits) {
                std::uint32_t cidx = cw * 64 + static_cast<std::uint32_t>(__builtin_ctzll(cbits));
                cbits &= cbits - 1;
                auto it =
                    binary_.find((static_cast<std::uint64_t>(bidx) << 32) | cidx);
                if (it == binary_.end()) continue;
                for (std::uint32_t a : it->second) set_bit(dst, a);
              }
            }
          }
        }
      }
    }
  }
  return get_bit(cell(0, n), start_);
}

bool member(const Cfg& g, const Word& w) {
  for (Symbol s : w)
    if (!g.has_terminal(s))
      throw std::invalid_argument("member: word uses a letter outside the grammar alphabet: " +
                                  symbol_name(s));
  return CykMatcher(g).matches(w);
}

Cfg cfg_union(const Cfg& a, const Cfg& b) {
  Cfg out;
  out.terminals = merged_terminals(a, b);
  out.nt_count = a.nt_count + b.nt_count + 1;
  out.start = out.nt_count - 1;
  out.productions = a.productions;
  for (const auto& p : b.productions) {
    Production q{p.lhs + a.nt_count, p.body};
    for (GSym& s : q.body)
      if (s.kind == GSym::Kind::nonterminal) s.index += a.nt_count;
    out.productions.push_back(std::move(q));
  }
  out.productions.push_back({out.start, {gsym_nt(a.start)}});
  out.productions.push_back({out.start, {gsym_nt(b.start + a.nt_count)}});
  return out;
}

Cfg cfg_concat(const Cfg& a, const Cfg& b) {
  Cfg out;
  out.terminals = merged_terminals(a, b);
  out.nt_count = a.nt_count + b.nt_count + 1;
  out.start = out.nt_count - 1;
  out.productions = a.productions;
  for (const auto& p : b.productions) {
    Production q{p.lhs + a.nt_count, p.body};
    for (GSym& s : q.body)
      if (s.kind == GSym::Kind::nonterminal) s.index += a.nt_count;
    out.productions.push_back(std::move(q));
  }
  out.productions.push_back({out.start, {gsym_nt(a.start), gsym_nt(b.start + a.nt_count)}});
  return out;
}

Cfg cfg_star(const Cfg& a) {
  Cfg out;
  out.terminals = a.terminals;
  out.nt_count = a.nt_count + 1;
  out.start = a.nt_count;
  out.productions = a.productions;
  out.productions.push_back({out.start, {}});
  out.productions.push_back({out.start, {gsym_nt(a.start), gsym_nt(out.start)}});
  return out;
}

Cfg cfg_reverse(const Cfg& a) {
  Cfg out = a;
  for (auto& p : out.productions) std::reverse(p.body.begin(), p.body.end());
  return out;
}

Cfg hom_image(const Cfg& g, const std::map<Symbol, Word>& h, const Limits& limits) {
  std::vector<Symbol> terms;
  for (Symbol t : g.terminals) {
    auto it = h.find(t);
    if (it == h.end())
      throw std::invalid_argument("hom_image: homomorphism undefined on " + symbol_name(t));
    terms.insert(terms.end(), it->second.begin(), it->second.end());
  }
  Cfg out;
  out.terminals = sorted_unique(std::move(terms));
  out.nt_count = g.nt_count;
  out.start = g.start;
  out.nt_names = g.nt_names;
  for (const auto& p : g.productions) {
    Production q{p.lhs, {}};
    for (const GSym& s : p.body) {
      if (s.kind == GSym::Kind::nonterminal) {
        q.body.push_back(s);
      } else {
        for (Symbol x : h.at(Symbol{s.index})) q.body.push_back(gsym(x));
      }
    }
    out.productions.push_back(std::move(q));
  }
  check_guard(out, "hom_image", limits);
  return simplify(out);
}

Cfg intersect_regular(const Cfg& g, const Nfa& n, const Limits& limits) {
  Fst t = fst_identity_restricted(n);
  // The product only reads letters the automaton knows; letters outside
  // its alphabet reject, which is the intended intersection semantics.
  std::vector<Symbol> in = t.input_alphabet;
  in.insert(in.end(), g.terminals.begin(), g.terminals.end());
  t.input_alphabet = sorted_unique(std::move(in));
  Cfg out = apply_fst(g, t, limits);
  std::vector<Symbol> terms = out.terminals;
  terms.insert(terms.end(), g.terminals.begin(), g.terminals.end());
  out.terminals = sorted_unique(std::move(terms));
  return out;
}

Cfg identity_language_grammar(const Cfg& wp, const Alphabet& a, const Limits& limits) {
  Nfa tail = nfa_concat(nfa_universal(a.letters()), nfa_word({marker_symbol()}, a.letters()));
  Cfg with_marker = intersect_regular(wp, tail, limits);
  std::map<Symbol, Word> h;
  for (Symbol t : with_marker.terminals) h[t] = Word{t};
  h[marker_symbol()] = Word{};
  return hom_image(with_marker, h, limits);
}

}  // namespace wcm
