#include "wcm/nfa.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace wcm {

namespace {

std::vector<Symbol> merge_alphabets(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
  std::vector<Symbol> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Symbol> sorted_unique(std::vector<Symbol> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

using StateSet = std::set<std::uint32_t>;

void eps_close(const Nfa& n, StateSet& states) {
  std::queue<std::uint32_t> todo;
  for (std::uint32_t s : states) todo.push(s);
  while (!todo.empty()) {
    std::uint32_t s = todo.front();
    todo.pop();
    for (const auto& t : n.transitions)
      if (t.from == s && !t.label && states.insert(t.to).second) todo.push(t.to);
  }
}

StateSet step(const Nfa& n, const StateSet& states, Symbol a) {
  StateSet out;
  for (const auto& t : n.transitions)
    if (t.label && *t.label == a && states.count(t.from)) out.insert(t.to);
  eps_close(n, out);
  return out;
}

Nfa shifted_copy(const Nfa& a, std::uint32_t offset, Nfa& into) {
  for (const auto& t : a.transitions)
    into.transitions.push_back({t.from + offset, t.label, t.to + offset});
  return into;
}

}  // namespace

bool nfa_accepts(const Nfa& n, const Word& w) {
  StateSet cur(n.initial.begin(), n.initial.end());
  eps_close(n, cur);
  for (Symbol a : w) {
    cur = step(n, cur, a);
    if (cur.empty()) return false;
  }
  for (std::uint32_t s : n.accepting)
    if (cur.count(s)) return true;
  return false;
}

Nfa nfa_empty(std::vector<Symbol> alphabet) {
  Nfa n;
  n.alphabet = sorted_unique(std::move(alphabet));
  n.state_count = 1;
  n.initial = {0};
  return n;
}

Nfa nfa_epsilon(std::vector<Symbol> alphabet) {
  Nfa n = nfa_empty(std::move(alphabet));
  n.accepting = {0};
  return n;
}

Nfa nfa_word(const Word& w, std::vector<Symbol> alphabet) {
  Nfa n;
  n.alphabet = sorted_unique(merge_alphabets(std::move(alphabet), w));
  n.state_count = static_cast<std::uint32_t>(w.size() + 1);
  n.initial = {0};
  n.accepting = {n.state_count - 1};
  for (std::uint32_t i = 0; i < w.size(); ++i) n.transitions.push_back({i, w[i], i + 1});
  return n;
}

Nfa nfa_words(const std::vector<Word>& ws, std::vector<Symbol> alphabet) {
  // Shared-prefix trie.
  Nfa n;
  n.alphabet = std::move(alphabet);
  for (const Word& w : ws) n.alphabet = merge_alphabets(n.alphabet, w);
  n.state_count = 1;
  n.initial = {0};
  std::map<std::pair<std::uint32_t, Symbol>, std::uint32_t> edge;
  std::set<std::uint32_t> acc;
  for (const Word& w : ws) {
    std::uint32_t cur = 0;
    for (Symbol a : w) {
      auto it = edge.find({cur, a});
      if (it == edge.end()) {
        std::uint32_t next = n.state_count++;
        n.transitions.push_back({cur, a, next});
        edge[{cur, a}] = next;
        cur = next;
      } else {
        cur = it->second;
      }
    }
    acc.insert(cur);
  }
  n.accepting.assign(acc.begin(), acc.end());
  return n;
}

Nfa nfa_universal(std::vector<Symbol> alphabet) {
  Nfa n = nfa_empty(std::move(alphabet));
  n.accepting = {0};
  for (Symbol a : n.alphabet) n.transitions.push_back({0, a, 0});
  return n;
}

Nfa nfa_factor(const Word& w, std::vector<Symbol> alphabet) {
  if (w.empty()) return nfa_universal(std::move(alphabet));
  Nfa n = nfa_word(w, std::move(alphabet));
  for (Symbol a : n.alphabet) {
    n.transitions.push_back({0, a, 0});
    n.transitions.push_back({n.state_count - 1, a, n.state_count - 1});
  }
  return n;
}

Nfa nfa_union(const Nfa& a, const Nfa& b) {
  Nfa n;
  n.alphabet = merge_alphabets(a.alphabet, b.alphabet);
  n.state_count = a.state_count + b.state_count;
  shifted_copy(a, 0, n);
  shifted_copy(b, a.state_count, n);
  for (std::uint32_t s : a.initial) n.initial.push_back(s);
  for (std::uint32_t s : b.initial) n.initial.push_back(s + a.state_count);
  for (std::uint32_t s : a.accepting) n.accepting.push_back(s);
  for (std::uint32_t s : b.accepting) n.accepting.push_back(s + a.state_count);
  return n;
}

Nfa nfa_concat(const Nfa& a, const Nfa& b) {
  Nfa n;
  n.alphabet = merge_alphabets(a.alphabet, b.alphabet);
  n.state_count = a.state_count + b.state_count;
  shifted_copy(a, 0, n);
  shifted_copy(b, a.state_count, n);
  n.initial = a.initial;
  for (std::uint32_t f : a.accepting)
    for (std::uint32_t i : b.initial) n.transitions.push_back({f, std::nullopt, i + a.state_count});
  for (std::uint32_t s : b.accepting) n.accepting.push_back(s + a.state_count);
  return n;
}

Nfa nfa_star(const Nfa& a) {
  Nfa n;
  n.alphabet = a.alphabet;
  n.state_count = a.state_count + 1;  // fresh initial-accepting hub
  shifted_copy(a, 1, n);
  n.initial = {0};
  n.accepting = {0};
  for (std::uint32_t i : a.initial) n.transitions.push_back({0, std::nullopt, i + 1});
  for (std::uint32_t f : a.accepting) n.transitions.push_back({f + 1, std::nullopt, 0});
  return n;
}

Nfa nfa_plus(const Nfa& a) { return nfa_concat(a, nfa_star(a)); }

Nfa nfa_reverse(const Nfa& a) {
  Nfa n;
  n.alphabet = a.alphabet;
  n.state_count = a.state_count;
  for (const auto& t : a.transitions) n.transitions.push_back({t.to, t.label, t.from});
  n.initial = a.accepting;
  n.accepting = a.initial;
  return n;
}

Nfa nfa_eps_free(const Nfa& a) {
  Nfa n;
  n.alphabet = a.alphabet;
  n.state_count = a.state_count;
  std::vector<StateSet> closure(a.state_count);
  for (std::uint32_t s = 0; s < a.state_count; ++s) {
    closure[s] = {s};
    eps_close(a, closure[s]);
  }
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> seen;
  for (std::uint32_t s = 0; s < a.state_count; ++s)
    for (std::uint32_t c : closure[s])
      for (const auto& t : a.transitions)
        if (t.from == c && t.label)
          if (seen.insert({s, t.label->id, t.to}).second)
            n.transitions.push_back({s, t.label, t.to});
  n.initial = a.initial;
  std::set<std::uint32_t> acc(a.accepting.begin(), a.accepting.end());
  std::set<std::uint32_t> new_acc = acc;
  for (std::uint32_t s = 0; s < a.state_count; ++s)
    for (std::uint32_t c : closure[s])
      if (acc.count(c)) new_acc.insert(s);
  n.accepting.assign(new_acc.begin(), new_acc.end());
  return n;
}

Nfa determinize(const Nfa& a, const Limits& limits) {
  Nfa e = nfa_eps_free(a);
  std::map<StateSet, std::uint32_t> ids;
  std::vector<StateSet> sets;
  Nfa d;
  d.alphabet = e.alphabet;
  auto get_id = [&](const StateSet& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    if (sets.size() >= limits.max_dfa_states) throw guard_error("determinize: state guard exceeded");
    std::uint32_t id = static_cast<std::uint32_t>(sets.size());
    ids.emplace(s, id);
    sets.push_back(s);
    return id;
  };
  // Pre-indexed transition map for speed.
  std::map<std::pair<std::uint32_t, std::uint32_t>, StateSet> delta;
  for (const auto& t : e.transitions)
    if (t.label) delta[{t.from, t.label->id}].insert(t.to);
  StateSet init(e.initial.begin(), e.initial.end());
  std::queue<std::uint32_t> todo;
  todo.push(get_id(init));
  while (!todo.empty()) {
    std::uint32_t id = todo.front();
    todo.pop();
    StateSet cur = sets[id];
    for (Symbol sym : e.alphabet) {
      StateSet next;
      for (std::uint32_t s : cur) {
        auto it = delta.find({s, sym.id});
        if (it != delta.end()) next.insert(it->second.begin(), it->second.end());
      }
      bool fresh = !ids.count(next);
      std::uint32_t nid = get_id(next);
      d.transitions.push_back({id, sym, nid});
      if (fresh) todo.push(nid);
    }
  }
  d.state_count = static_cast<std::uint32_t>(sets.size());
  d.initial = {0};
  std::set<std::uint32_t> acc(e.accepting.begin(), e.accepting.end());
  for (std::uint32_t i = 0; i < sets.size(); ++i)
    for (std::uint32_t s : sets[i])
      if (acc.count(s)) {
        d.accepting.push_back(i);
        break;
      }
  return d;
}

Nfa nfa_complement(const Nfa& a, const Limits& limits) {
  Nfa d = determinize(a, limits);
  std::set<std::uint32_t> acc(d.accepting.begin(), d.accepting.end());
  d.accepting.clear();
  for (std::uint32_t s = 0; s < d.state_count; ++s)
    if (!acc.count(s)) d.accepting.push_back(s);
  return d;
}

Nfa nfa_minimize(const Nfa& a, const Limits& limits) {
  Nfa trimmed = determinize(nfa_reverse(determinize(nfa_reverse(a), limits)), limits);
  return trimmed;
}

Nfa nfa_intersect(const Nfa& a0, const Nfa& b0) {
  Nfa a = nfa_eps_free(a0);
  Nfa b = nfa_eps_free(b0);
  Nfa n;
  n.alphabet = merge_alphabets(a.alphabet, b.alphabet);
  auto code = [&](std::uint32_t x, std::uint32_t y) { return x * b.state_count + y; };
  n.state_count = a.state_count * b.state_count;
  for (const auto& ta : a.transitions)
    for (const auto& tb : b.transitions)
      if (ta.label && tb.label && *ta.label == *tb.label)
        n.transitions.push_back({code(ta.from, tb.from), ta.label, code(ta.to, tb.to)});
  for (std::uint32_t x : a.initial)
    for (std::uint32_t y : b.initial) n.initial.push_back(code(x, y));
  for (std::uint32_t x : a.accepting)
    for (std::uint32_t y : b.accepting) n.accepting.push_back(code(x, y));
  return n;
}

bool nfa_is_empty(const Nfa& a0) {
  Nfa a = nfa_eps_free(a0);
  std::set<std::uint32_t> reach(a.initial.begin(), a.initial.end());
  std::queue<std::uint32_t> todo;
  for (std::uint32_t s : reach) todo.push(s);
  while (!todo.empty()) {
    std::uint32_t s = todo.front();
    todo.pop();
    for (const auto& t : a.transitions)
      if (t.from == s && reach.insert(t.to).second) todo.push(t.to);
  }
  for (std::uint32_t s : a.accepting)
    if (reach.count(s)) return false;
  return true;
}

std::set<Word> enumerate_nfa(const Nfa& a0, std::size_t maxlen) {
  Nfa a = nfa_eps_free(a0);
  std::set<std::uint32_t> acc(a.accepting.begin(), a.accepting.end());
  std::set<Word> out;
  // BFS over (state set, word) frontiers, one layer per length.
  std::map<Word, StateSet> layer;
  StateSet init(a.initial.begin(), a.initial.end());
  layer[{}] = init;
  for (std::size_t len = 0; len <= maxlen; ++len) {
    std::map<Word, StateSet> next;
    for (const auto& [w, states] : layer) {
      for (std::uint32_t s : states)
        if (acc.count(s)) {
          out.insert(w);
          break;
        }
      if (len == maxlen) continue;
      for (Symbol sym : a.alphabet) {
        StateSet to;
        for (const auto& t : a.transitions)
          if (t.label && *t.label == sym && states.count(t.from)) to.insert(t.to);
        if (!to.empty()) {
          Word w2 = w;
          w2.push_back(sym);
          next[w2].insert(to.begin(), to.end());
        }
      }
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace wcm
