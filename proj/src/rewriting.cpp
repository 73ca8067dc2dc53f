#include "wcm/rewriting.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace wcm {

RewriteSystem::RewriteSystem(Alphabet alphabet, std::vector<Rule> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
  for (const Rule& r : rules_)
    if (!alphabet_.contains_word(r.lhs) || !alphabet_.contains_word(r.rhs))
      throw std::invalid_argument("rule uses a letter outside the alphabet");
}

bool RewriteSystem::is_monadic() const {
  return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) {
    return r.lhs.size() >= r.rhs.size() && r.rhs.size() <= 1;
  });
}

bool RewriteSystem::is_special() const {
  return std::all_of(rules_.begin(), rules_.end(),
                     [](const Rule& r) { return r.rhs.empty(); });
}

bool RewriteSystem::is_length_nonincreasing() const {
  return std::all_of(rules_.begin(), rules_.end(),
                     [](const Rule& r) { return r.lhs.size() >= r.rhs.size(); });
}

MonadicCfSystem to_monadic_cf(const RewriteSystem& r) {
  if (!r.is_monadic()) throw std::invalid_argument("to_monadic_cf: system is not monadic");
  MonadicCfSystem m;
  m.alphabet = r.alphabet().letters();
  std::map<std::optional<Symbol>, std::vector<Word>> by_target;
  for (const Rule& rule : r.rules()) {
    std::optional<Symbol> t;
    if (!rule.rhs.empty()) t = rule.rhs.front();
    by_target[t].push_back(rule.lhs);
  }
  for (auto& [t, ws] : by_target) m.targets.push_back({t, words_cfg(ws, m.alphabet)});
  return m;
}

std::set<Word> rewrite_once(const Word& w, const RewriteSystem& r) {
  std::set<Word> out;
  for (const Rule& rule : r.rules()) {
    if (rule.lhs.empty()) {
      for (std::size_t i = 0; i <= w.size(); ++i) {
        Word next = subword(w, 0, i);
        next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
        Word tail = subword(w, i, w.size());
        next.insert(next.end(), tail.begin(), tail.end());
        out.insert(next);
      }
      continue;
    }
    for (std::size_t at : occurrences(w, rule.lhs)) {
      Word next = subword(w, 0, at);
      next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
      Word tail = subword(w, at + rule.lhs.size(), w.size());
      next.insert(next.end(), tail.begin(), tail.end());
      out.insert(next);
    }
  }
  return out;
}

std::set<Word> rewrite_once(const Word& w, const MonadicCfSystem& r) {
  std::set<Word> out;
  for (const auto& [target, lhs_lang] : r.targets) {
    CykMatcher matcher(lhs_lang);
    Word rhs;
    if (target) rhs.push_back(*target);
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = i + 1; j <= w.size(); ++j) {
        if (!matcher.matches(subword(w, i, j))) continue;
        Word next = subword(w, 0, i);
        next.insert(next.end(), rhs.begin(), rhs.end());
        Word tail = subword(w, j, w.size());
        next.insert(next.end(), tail.begin(), tail.end());
        out.insert(next);
      }
    }
    // empty factor: insertion positions only matter when epsilon is a lhs
    if (matcher.matches({})) {
      for (std::size_t i = 0; i <= w.size(); ++i) {
        Word next = subword(w, 0, i);
        next.insert(next.end(), rhs.begin(), rhs.end());
        Word tail = subword(w, i, w.size());
        next.insert(next.end(), tail.begin(), tail.end());
        out.insert(next);
      }
    }
  }
  return out;
}

namespace {

Eq equal_bounded_one_sided(const Word& u, const Word& v, const RewriteSystem& r,
                           std::size_t maxlen, std::size_t maxstates) {
  std::unordered_set<Word, WordHash> seen{u};
  std::deque<Word> todo{u};
  bool closed = true;
  bool found = false;
  bool overflow = false;
  while (!todo.empty() && !found && !overflow) {
    Word w = todo.front();
    todo.pop_front();
    for (int dir = 0; dir < 2 && !found && !overflow; ++dir) {
      for (const Rule& rule : r.rules()) {
        const Word& from = dir == 0 ? rule.lhs : rule.rhs;
        const Word& to = dir == 0 ? rule.rhs : rule.lhs;
        std::vector<std::size_t> spots;
        if (from.empty()) {
          for (std::size_t i = 0; i <= w.size(); ++i) spots.push_back(i);
        } else {
          spots = occurrences(w, from);
        }
        for (std::size_t at : spots) {
          if (w.size() - from.size() + to.size() > maxlen) {
            closed = false;
            continue;
          }
          Word next = subword(w, 0, at);
          next.insert(next.end(), to.begin(), to.end());
          Word tail = subword(w, at + from.size(), w.size());
          next.insert(next.end(), tail.begin(), tail.end());
          if (next == v) {
            found = true;
            break;
          }
          if (seen.insert(next).second) {
            if (seen.size() > maxstates) {
              overflow = true;
              break;
            }
            todo.push_back(next);
          }
        }
        if (found || overflow) break;
      }
    }
  }
  if (found) return Eq::equal;
  if (overflow) return Eq::unknown;
  return closed ? Eq::distinct : Eq::unknown;
}

}  // namespace

Eq equal_bounded(const Word& u, const Word& v, const RewriteSystem& r, std::size_t maxlen,
                 std::size_t maxstates) {
  if (u.size() > maxlen || v.size() > maxlen)
    throw std::invalid_argument("equal_bounded: maxlen below the query words");
  if (u == v) return Eq::equal;
  // Either component may be the one that closes within the bound, so try
  // both sides before settling for `unknown`.
  Eq forward = equal_bounded_one_sided(u, v, r, maxlen, maxstates);
  if (forward != Eq::unknown) return forward;
  return equal_bounded_one_sided(v, u, r, maxlen, maxstates);
}

namespace {

std::set<Word> ancestors_core(
    const std::set<Word>& target, std::size_t maxlen,
    const std::vector<std::pair<Word, std::vector<Word>>>& expansions_by_rhs,
    const Limits& limits) {
  // expansions_by_rhs: (rhs, all lhs words of length <= maxlen). Walk the
  // rewrite relation backwards; length never decreases going up, so the
  // bounded closure is complete.
  std::set<Word> seen;
  std::deque<Word> todo;
  for (const Word& w : target)
    if (w.size() <= maxlen) {
      seen.insert(w);
      todo.push_back(w);
    }
  while (!todo.empty()) {
    Word w = todo.front();
    todo.pop_front();
    for (const auto& [rhs, lhss] : expansions_by_rhs) {
      std::vector<std::size_t> spots;
      if (rhs.empty()) {
        for (std::size_t i = 0; i <= w.size(); ++i) spots.push_back(i);
      } else {
        spots = occurrences(w, rhs);
      }
      for (std::size_t at : spots) {
        for (const Word& lhs : lhss) {
          if (w.size() - rhs.size() + lhs.size() > maxlen) continue;
          Word next = subword(w, 0, at);
          next.insert(next.end(), lhs.begin(), lhs.end());
          Word tail = subword(w, at + rhs.size(), w.size());
          next.insert(next.end(), tail.begin(), tail.end());
          if (seen.insert(next).second) {
            if (seen.size() > limits.max_enumerate_words)
              throw guard_error("ancestors_bounded: word guard exceeded");
            todo.push_back(next);
          }
        }
      }
    }
  }
  return seen;
}

}  // namespace

std::set<Word> ancestors_bounded(const std::set<Word>& target, const RewriteSystem& r,
                                 std::size_t maxlen, const Limits& limits) {
  if (!r.is_length_nonincreasing())
    throw std::invalid_argument("ancestors_bounded: length-increasing rule");
  std::map<Word, std::vector<Word>> by_rhs;
  for (const Rule& rule : r.rules())
    if (rule.lhs.size() <= maxlen) by_rhs[rule.rhs].push_back(rule.lhs);
  std::vector<std::pair<Word, std::vector<Word>>> exp(by_rhs.begin(), by_rhs.end());
  return ancestors_core(target, maxlen, exp, limits);
}

std::set<Word> ancestors_bounded(const std::set<Word>& target, const MonadicCfSystem& r,
                                 std::size_t maxlen, const Limits& limits) {
  std::vector<std::pair<Word, std::vector<Word>>> exp;
  for (const auto& [t, lhs_lang] : r.targets) {
    Word rhs;
    if (t) rhs.push_back(*t);
    std::set<Word> lhss = enumerate(lhs_lang, maxlen, limits);
    for (const Word& l : lhss)
      if (l.size() < rhs.size())
        throw std::invalid_argument("ancestors_bounded: length-increasing rule");
    exp.push_back({rhs, std::vector<Word>(lhss.begin(), lhss.end())});
  }
  return ancestors_core(target, maxlen, exp, limits);
}

int shortlex_compare(const Word& a, const Word& b, const Alphabet& alphabet) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    auto ia = alphabet.index_of(a[i]);
    auto ib = alphabet.index_of(b[i]);
    if (!ia || !ib) throw std::invalid_argument("shortlex_compare: letter outside alphabet");
    return *ia < *ib ? -1 : 1;
  }
  return 0;
}

Word normal_form(const Word& w, const RewriteSystem& r) {
  Word cur = w;
  bool changed = true;
  std::size_t steps = 0;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cur.size() && !changed; ++i) {
      for (const Rule& rule : r.rules()) {
        if (rule.lhs.empty() || i + rule.lhs.size() > cur.size()) continue;
        if (!std::equal(rule.lhs.begin(), rule.lhs.end(),
                        cur.begin() + static_cast<std::ptrdiff_t>(i)))
          continue;
        Word next = subword(cur, 0, i);
        next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
        Word tail = subword(cur, i + rule.lhs.size(), cur.size());
        next.insert(next.end(), tail.begin(), tail.end());
        cur = std::move(next);
        changed = true;
        break;
      }
    }
    if (++steps > 100000) throw guard_error("normal_form: no termination within step guard");
  }
  return cur;
}

namespace {

// Critical pairs of (l1 -> r1) with (l2 -> r2): proper overlaps where a
// suffix of l1 is a prefix of l2, and containments of l2 inside l1.
std::vector<std::pair<Word, Word>> critical_pairs(const Rule& a, const Rule& b) {
  std::vector<std::pair<Word, Word>> out;
  for (std::size_t k = 1; k < std::min(a.lhs.size(), b.lhs.size()); ++k) {
    if (!std::equal(a.lhs.end() - static_cast<std::ptrdiff_t>(k), a.lhs.end(), b.lhs.begin()))
      continue;
    // w = a.lhs + b.lhs[k..]
    Word left = a.rhs;
    Word btail = subword(b.lhs, k, b.lhs.size());
    left.insert(left.end(), btail.begin(), btail.end());
    Word right = subword(a.lhs, 0, a.lhs.size() - k);
    right.insert(right.end(), b.rhs.begin(), b.rhs.end());
    out.push_back({left, right});
  }
  if (b.lhs.size() <= a.lhs.size() && !b.lhs.empty()) {
    for (std::size_t at : occurrences(a.lhs, b.lhs)) {
      if (at == 0 && b.lhs.size() == a.lhs.size()) continue;  // identical redex
      Word right = subword(a.lhs, 0, at);
      right.insert(right.end(), b.rhs.begin(), b.rhs.end());
      Word tail = subword(a.lhs, at + b.lhs.size(), a.lhs.size());
      right.insert(right.end(), tail.begin(), tail.end());
      out.push_back({a.rhs, right});
    }
  }
  return out;
}

bool strictly_decreasing(const Rule& r, const Alphabet& a) {
  return shortlex_compare(r.lhs, r.rhs, a) > 0;
}

}  // namespace

ConfluenceResult check_confluence_lengthreducing(const RewriteSystem& r) {
  for (const Rule& rule : r.rules())
    if (!strictly_decreasing(rule, r.alphabet()))
      return {ConfluenceResult::Status::inapplicable, std::nullopt};
  for (const Rule& a : r.rules()) {
    for (const Rule& b : r.rules()) {
      for (const auto& [x, y] : critical_pairs(a, b)) {
        Word nx = normal_form(x, r);
        Word ny = normal_form(y, r);
        if (nx != ny) return {ConfluenceResult::Status::incomplete, std::make_pair(nx, ny)};
      }
    }
  }
  return {ConfluenceResult::Status::complete, std::nullopt};
}

std::optional<RewriteSystem> complete_bounded(const RewriteSystem& r, std::size_t maxrules) {
  const Alphabet& a = r.alphabet();
  std::vector<Rule> rules;
  std::deque<std::pair<Word, Word>> agenda;
  for (const Rule& rule : r.rules()) agenda.push_back({rule.lhs, rule.rhs});
  auto current = [&] { return RewriteSystem(a, rules); };
  while (!agenda.empty()) {
    auto [x, y] = agenda.front();
    agenda.pop_front();
    RewriteSystem sys = current();
    Word nx = normal_form(x, sys);
    Word ny = normal_form(y, sys);
    if (nx == ny) continue;
    int cmp = shortlex_compare(nx, ny, a);
    Rule fresh = cmp > 0 ? Rule{nx, ny} : Rule{ny, nx};
    rules.push_back(fresh);
    if (rules.size() > maxrules) return std::nullopt;
    for (const Rule& old : rules) {
      for (auto& pr : critical_pairs(fresh, old)) agenda.push_back(pr);
      for (auto& pr : critical_pairs(old, fresh)) agenda.push_back(pr);
    }
  }
  return current();
}

}  // namespace wcm
