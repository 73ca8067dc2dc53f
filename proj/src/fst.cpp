#include "wcm/fst.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "wcm/cfg.hpp"

namespace wcm {

namespace {

std::vector<Symbol> sorted_unique(std::vector<Symbol> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

using StateOut = std::pair<std::uint32_t, Word>;

// Epsilon-input closure with accumulated outputs. Guarded: an
// epsilon-input cycle with non-empty output diverges and is rejected.
std::vector<std::set<StateOut>> eps_closures(const Fst& t) {
  std::vector<std::set<StateOut>> closure(t.state_count);
  for (std::uint32_t q = 0; q < t.state_count; ++q) {
    std::set<StateOut> seen{{q, {}}};
    std::queue<StateOut> todo;
    todo.push({q, {}});
    while (!todo.empty()) {
      auto [s, out] = todo.front();
      todo.pop();
      for (const auto& tr : t.transitions) {
        if (tr.from != s || tr.in) continue;
        StateOut next{tr.to, concat(out, tr.out)};
        if (next.second.size() > 256 || seen.size() > 4096)
          throw guard_error("apply_fst: divergent epsilon closure");
        if (seen.insert(next).second) todo.push(next);
      }
    }
    closure[q] = std::move(seen);
  }
  return closure;
}

}  // namespace

std::vector<Word> fst_apply_word(const Fst& t, const Word& w, std::size_t max_outputs) {
  auto closure = eps_closures(t);
  std::set<StateOut> cur;
  for (std::uint32_t q : t.initial)
    for (const auto& so : closure[q]) cur.insert(so);
  for (Symbol a : w) {
    std::set<StateOut> next;
    for (const auto& [q, out] : cur)
      for (const auto& tr : t.transitions)
        if (tr.from == q && tr.in && *tr.in == a)
          for (const auto& [q2, out2] : closure[tr.to])
            next.insert({q2, concat(concat(out, tr.out), out2)});
    if (next.size() > max_outputs) throw guard_error("fst_apply_word: too many outputs");
    cur = std::move(next);
  }
  std::set<Word> outs;
  for (const auto& [q, out] : cur)
    for (const auto& [f, exit] : t.finals)
      if (f == q) outs.insert(concat(out, exit));
  return std::vector<Word>(outs.begin(), outs.end());
}

Cfg apply_fst(const Cfg& g0, const Fst& t, const Limits& limits) {
  for (Symbol s : g0.terminals) {
    bool known = false;
    for (Symbol a : t.input_alphabet)
      if (a == s) known = true;
    if (!known)
      throw std::invalid_argument("apply_fst: transducer does not read letter " + symbol_name(s));
  }
  Cfg g = binarize(simplify(g0));
  const std::uint32_t Q = t.state_count;
  Cfg out;
  out.terminals = t.output_alphabet;
  if (g.productions.empty() || Q == 0) return empty_cfg(out.terminals);

  auto closure = eps_closures(t);
  // Per input letter: (q, q', output) triples realizable by one
  // letter-consuming step with surrounding epsilon moves.
  std::unordered_map<std::uint32_t, std::set<std::tuple<std::uint32_t, std::uint32_t, Word>>> rel1;
  for (Symbol a : g.terminals) {
    auto& entry = rel1[a.id];
    for (std::uint32_t q = 0; q < Q; ++q)
      for (const auto& [q1, out1] : closure[q])
        for (const auto& tr : t.transitions) {
          if (tr.from != q1 || !tr.in || *tr.in != a) continue;
          for (const auto& [q2, out2] : closure[tr.to])
            entry.insert({q, q2, concat(concat(out1, tr.out), out2)});
        }
  }

  // Productive triple construction over binarized productions.
  std::unordered_map<std::uint64_t, std::uint32_t> triple_id;
  auto key = [&](std::uint32_t nt, std::uint32_t q, std::uint32_t q2) {
    return (static_cast<std::uint64_t>(nt) * Q + q) * Q + q2;
  };
  struct TripleInfo {
    std::uint32_t nt, q, q2, id;
  };
  std::vector<TripleInfo> triples;
  std::queue<std::uint32_t> fresh;
  out.nt_count = 0;

  auto get_triple = [&](std::uint32_t nt, std::uint32_t q, std::uint32_t q2,
                        bool& created) -> std::uint32_t {
    auto k = key(nt, q, q2);
    auto it = triple_id.find(k);
    if (it != triple_id.end()) {
      created = false;
      return it->second;
    }
    created = true;
    std::uint32_t id = out.nt_count++;
    triple_id.emplace(k, id);
    triples.push_back({nt, q, q2, id});
    fresh.push(static_cast<std::uint32_t>(triples.size() - 1));
    return id;
  };

  auto emit = [&](std::uint32_t lhs, std::vector<GSym> body) {
    out.productions.push_back({lhs, std::move(body)});
    if (out.productions.size() > limits.max_productions)
      throw guard_error("apply_fst: production guard exceeded");
  };
  auto word_body = [](const Word& w) {
    std::vector<GSym> b;
    for (Symbol s : w) b.push_back(gsym(s));
    return b;
  };

  // Production indexes on the binarized grammar.
  std::vector<std::vector<std::uint32_t>> unary_users(g.nt_count);   // B -> prod ids
  std::vector<std::vector<std::uint32_t>> left_users(g.nt_count);    // B of A->BC
  std::vector<std::vector<std::uint32_t>> right_users(g.nt_count);   // C of A->BC
  for (std::uint32_t i = 0; i < g.productions.size(); ++i) {
    const auto& p = g.productions[i];
    if (p.body.size() == 1 && p.body[0].kind == GSym::Kind::nonterminal)
      unary_users[p.body[0].index].push_back(i);
    if (p.body.size() == 2) {
      left_users[p.body[0].index].push_back(i);
      right_users[p.body[1].index].push_back(i);
    }
  }
  // Productive triples per nonterminal, indexed by end state.
  std::vector<std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>>>
      by_left(g.nt_count),  // nt -> q -> [(q2, triple)]
      by_right(g.nt_count); // nt -> q2 -> [(q, triple)]

  bool created = false;
  // Seed from terminal and epsilon productions.
  for (const auto& p : g.productions) {
    if (p.body.empty()) {
      for (std::uint32_t q = 0; q < Q; ++q)
        for (const auto& [q2, w] : closure[q])
          emit(get_triple(p.lhs, q, q2, created), word_body(w));
    } else if (p.body.size() == 1 && p.body[0].kind == GSym::Kind::terminal) {
      auto it = rel1.find(p.body[0].index);
      if (it == rel1.end()) continue;
      for (const auto& [q, q2, w] : it->second)
        emit(get_triple(p.lhs, q, q2, created), word_body(w));
    }
  }
  // Close under unary and binary productions.
  while (!fresh.empty()) {
    TripleInfo cur = triples[fresh.front()];
    fresh.pop();
    by_left[cur.nt][cur.q].push_back({cur.q2, cur.id});
    by_right[cur.nt][cur.q2].push_back({cur.q, cur.id});
    for (std::uint32_t pi : unary_users[cur.nt]) {
      const auto& p = g.productions[pi];
      emit(get_triple(p.lhs, cur.q, cur.q2, created), {gsym_nt(cur.id)});
    }
    for (std::uint32_t pi : left_users[cur.nt]) {
      const auto& p = g.productions[pi];
      std::uint32_t c_nt = p.body[1].index;
      auto it = by_left[c_nt].find(cur.q2);
      if (it == by_left[c_nt].end()) continue;
      auto partners = it->second;  // copy: emission may grow the index
      for (const auto& [qr, c_id] : partners)
        emit(get_triple(p.lhs, cur.q, qr, created), {gsym_nt(cur.id), gsym_nt(c_id)});
    }
    for (std::uint32_t pi : right_users[cur.nt]) {
      const auto& p = g.productions[pi];
      std::uint32_t b_nt = p.body[0].index;
      auto it = by_right[b_nt].find(cur.q);
      if (it == by_right[b_nt].end()) continue;
      auto partners = it->second;
      for (const auto& [ql, b_id] : partners) {
        if (b_nt == cur.nt && ql == cur.q && cur.q2 == cur.q && b_id == cur.id) continue;
        emit(get_triple(p.lhs, ql, cur.q2, created), {gsym_nt(b_id), gsym_nt(cur.id)});
      }
    }
  }

  // Start wrapper over initial/final state pairs.
  std::uint32_t new_start = out.nt_count++;
  out.start = new_start;
  std::set<std::uint32_t> inits(t.initial.begin(), t.initial.end());
  for (std::uint32_t q0 : inits) {
    for (const auto& [qf, exit] : t.finals) {
      auto it = triple_id.find(key(g.start, q0, qf));
      if (it == triple_id.end()) continue;
      std::vector<GSym> body{gsym_nt(it->second)};
      for (Symbol s : exit) body.push_back(gsym(s));
      emit(new_start, std::move(body));
    }
  }
  // Collect any output letters not declared by the transducer.
  std::vector<Symbol> terms = out.terminals;
  for (const auto& p : out.productions)
    for (const GSym& s : p.body)
      if (s.kind == GSym::Kind::terminal) terms.push_back(Symbol{s.index});
  out.terminals = sorted_unique(std::move(terms));
  return simplify(out);
}

Fst fst_identity(std::vector<Symbol> alphabet) {
  Fst t;
  t.state_count = 1;
  t.input_alphabet = sorted_unique(std::move(alphabet));
  t.output_alphabet = t.input_alphabet;
  t.initial = {0};
  t.finals = {{0, {}}};
  for (Symbol a : t.input_alphabet) t.transitions.push_back({0, a, {a}, 0});
  return t;
}

Fst fst_identity_restricted(const Nfa& n0) {
  Nfa n = nfa_eps_free(n0);
  Fst t;
  t.state_count = std::max<std::uint32_t>(n.state_count, 1);
  t.input_alphabet = n.alphabet;
  t.output_alphabet = n.alphabet;
  t.initial = n.initial;
  for (std::uint32_t f : n.accepting) t.finals.push_back({f, {}});
  for (const auto& tr : n.transitions)
    if (tr.label) t.transitions.push_back({tr.from, *tr.label, {*tr.label}, tr.to});
  return t;
}

Fst fst_right_quotient(const Word& s, std::vector<Symbol> alphabet) {
  Fst t;
  t.input_alphabet = sorted_unique(std::move(alphabet));
  t.output_alphabet = t.input_alphabet;
  t.state_count = static_cast<std::uint32_t>(s.size() + 1);
  t.initial = {0};
  t.finals = {{t.state_count - 1, {}}};
  for (Symbol a : t.input_alphabet) t.transitions.push_back({0, a, {a}, 0});
  for (std::uint32_t i = 0; i < s.size(); ++i) t.transitions.push_back({i, s[i], {}, i + 1});
  return t;
}

Fst fst_replace_factor(const Word& alpha, Symbol diamond, std::vector<Symbol> alphabet) {
  if (alpha.empty()) throw std::invalid_argument("fst_replace_factor: empty factor");
  Fst t;
  t.input_alphabet = sorted_unique(std::move(alphabet));
  t.output_alphabet = t.input_alphabet;
  t.output_alphabet.push_back(diamond);
  t.output_alphabet = sorted_unique(t.output_alphabet);
  t.state_count = static_cast<std::uint32_t>(alpha.size());  // state = matched prefix length
  t.initial = {0};
  for (std::uint32_t p = 0; p < alpha.size(); ++p) {
    Word pending = subword(alpha, 0, p);
    t.finals.push_back({p, pending});
    for (Symbol c : t.input_alphabet) {
      Word w = pending;
      w.push_back(c);
      if (w == alpha) {
        t.transitions.push_back({p, c, {diamond}, 0});
        continue;
      }
      // Longest suffix of w that is a proper prefix of alpha.
      std::size_t keep = std::min(w.size(), alpha.size() - 1);
      while (keep > 0 && !std::equal(w.end() - static_cast<std::ptrdiff_t>(keep), w.end(),
                                     alpha.begin()))
        --keep;
      Word emit = subword(w, 0, w.size() - keep);
      t.transitions.push_back({p, c, emit, static_cast<std::uint32_t>(keep)});
    }
  }
  return t;
}

Fst fst_two_sided(const std::map<Symbol, Word>& left, const std::map<Symbol, Word>& right,
                  Symbol marker, const Word& marker_image) {
  Fst t;
  t.state_count = 2;
  t.initial = {0};
  t.finals = {{0, {}}, {1, {}}};
  std::vector<Symbol> in{marker}, out;
  out.insert(out.end(), marker_image.begin(), marker_image.end());
  for (const auto& [a, w] : left) {
    in.push_back(a);
    out.insert(out.end(), w.begin(), w.end());
    t.transitions.push_back({0, a, w, 0});
  }
  t.transitions.push_back({0, marker, marker_image, 1});
  for (const auto& [a, w] : right) {
    in.push_back(a);
    out.insert(out.end(), w.begin(), w.end());
    t.transitions.push_back({1, a, w, 1});
  }
  t.input_alphabet = sorted_unique(in);
  t.output_alphabet = sorted_unique(out);
  return t;
}

namespace {

// Trie of code words; decoding transitions emit the code symbol on the
// last letter. Returns the root state id (== offset).
std::uint32_t add_decoder_trie(Fst& t, const std::map<Word, Symbol>& code) {
  std::uint32_t root = t.state_count++;
  std::map<Word, std::uint32_t> node{{Word{}, root}};
  for (const auto& [w, sym] : code) {
    if (w.empty()) throw std::invalid_argument("decoder: empty code word");
    for (std::size_t i = 1; i < w.size(); ++i) {
      Word prefix = subword(w, 0, i);
      if (!node.count(prefix)) {
        node[prefix] = t.state_count++;
        t.transitions.push_back({node[subword(w, 0, i - 1)], w[i - 1], {}, node[prefix]});
      }
    }
    t.transitions.push_back({node[subword(w, 0, w.size() - 1)], w.back(), {sym}, root});
    t.input_alphabet.insert(t.input_alphabet.end(), w.begin(), w.end());
    t.output_alphabet.push_back(sym);
  }
  return root;
}

}  // namespace

Fst fst_decode_two_sided(const std::map<Word, Symbol>& left_code,
                         const std::map<Word, Symbol>& right_code, Symbol marker) {
  Fst t;
  std::uint32_t left_root = add_decoder_trie(t, left_code);
  std::uint32_t right_root = add_decoder_trie(t, right_code);
  t.transitions.push_back({left_root, marker, {marker}, right_root});
  t.input_alphabet.push_back(marker);
  t.output_alphabet.push_back(marker);
  t.initial = {left_root};
  t.finals = {{right_root, {}}};
  t.input_alphabet = sorted_unique(t.input_alphabet);
  t.output_alphabet = sorted_unique(t.output_alphabet);
  return t;
}

Fst fst_inverse_hom(const std::map<Symbol, Word>& h) {
  Fst t;
  std::uint32_t root = t.state_count++;
  for (const auto& [b, image] : h) {
    if (image.empty()) throw std::invalid_argument("fst_inverse_hom: empty image");
    std::uint32_t cur = root;
    for (std::size_t i = 0; i + 1 < image.size(); ++i) {
      std::uint32_t next = t.state_count++;
      t.transitions.push_back({cur, image[i], {}, next});
      cur = next;
    }
    t.transitions.push_back({cur, image.back(), {b}, root});
    t.input_alphabet.insert(t.input_alphabet.end(), image.begin(), image.end());
    t.output_alphabet.push_back(b);
  }
  t.initial = {root};
  t.finals = {{root, {}}};
  t.input_alphabet = sorted_unique(t.input_alphabet);
  t.output_alphabet = sorted_unique(t.output_alphabet);
  return t;
}

Fst fst_strip_marker_context(const Word& alpha, std::vector<Symbol> alphabet) {
  Fst t;
  t.input_alphabet = sorted_unique(std::move(alphabet));
  t.output_alphabet = t.input_alphabet;
  Word arev = reverse_word(alpha);
  // copy state, |alpha| consuming states, marker, |alpha| consuming, copy.
  std::uint32_t pre = 0;
  t.state_count = 1;
  for (Symbol a : t.input_alphabet) t.transitions.push_back({pre, a, {a}, pre});
  std::uint32_t cur = pre;
  for (Symbol a : alpha) {
    std::uint32_t next = t.state_count++;
    t.transitions.push_back({cur, a, {}, next});
    cur = next;
  }
  std::uint32_t after_marker = t.state_count++;
  t.transitions.push_back({cur, marker_symbol(), {marker_symbol()}, after_marker});
  cur = after_marker;
  for (Symbol a : arev) {
    std::uint32_t next = t.state_count++;
    t.transitions.push_back({cur, a, {}, next});
    cur = next;
  }
  for (Symbol a : t.input_alphabet) t.transitions.push_back({cur, a, {a}, cur});
  t.initial = {0};
  t.finals = {{cur, {}}};
  return t;
}

}  // namespace wcm
