#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "wcm/io.hpp"
#include "wcm/rewriting.hpp"

using namespace wcm;

namespace {

RewriteSystem sys(const std::string& text) { return parse_rewrite_system(text); }

// Homomorphism into Z as an independent equality oracle for <a,b | aba=1>:
// a -> 1, b -> -2 kills the relation, and the monoid is the group Z.
long zval(const Word& w) {
  long v = 0;
  for (Symbol s : w) v += symbol_name(s) == "a" ? 1 : -2;
  return v;
}

}  // namespace

TEST_CASE("rewrite_once") {
  auto r = sys("gens: a b\nrule: aba -> 1\n");
  Word w = parse_word("abab", r.alphabet().letters());
  auto out = rewrite_once(w, r);
  CHECK(out == std::set<Word>{parse_word("b", r.alphabet().letters())});

  auto r2 = sys("gens: a b\nrule: bb -> a\n");
  CHECK(rewrite_once(parse_word("bb", r2.alphabet().letters()), r2) ==
        std::set<Word>{parse_word("a", r2.alphabet().letters())});
  CHECK(rewrite_once({}, r2).empty());
}

TEST_CASE("equal_bounded") {
  auto m1 = sys("gens: x y\nrule: xyyxxxyxxyyxxxy -> xy\n");
  Word u = parse_word("xyyxxxyxxyyxxxy", m1.alphabet().letters());
  Word v = parse_word("xy", m1.alphabet().letters());
  CHECK(equal_bounded(u, v, m1, 16, 100000) == Eq::equal);
  CHECK(equal_bounded(v, v, m1, 16, 100000) == Eq::equal);

  // In <a,b | aba=1> the words a and b have distinct Z-values, so they
  // are distinct; the bounded search must never contradict that.
  auto g = sys("gens: a b\nrule: aba -> 1\n");
  Word a = parse_word("a", g.alphabet().letters());
  Word b = parse_word("b", g.alphabet().letters());
  REQUIRE(zval(a) != zval(b));
  CHECK(equal_bounded(a, b, g, 8, 100000) != Eq::equal);
}

TEST_CASE("equal_bounded definite answers are stable under larger bounds") {
  auto g = sys("gens: a b\nrule: aa -> b\nrule: bbb -> b\n");
  std::mt19937 rng(11);
  auto letters = g.alphabet().letters();
  for (int i = 0; i < 60; ++i) {
    Word u, v;
    for (std::size_t k = rng() % 5; k--;) u.push_back(letters[rng() % 2]);
    for (std::size_t k = rng() % 5; k--;) v.push_back(letters[rng() % 2]);
    Eq small = equal_bounded(u, v, g, 6, 100000);
    Eq big = equal_bounded(u, v, g, 9, 100000);
    if (small != Eq::unknown) CHECK(small == big);
    CHECK(equal_bounded(v, u, g, 6, 100000) == small);
  }
}

TEST_CASE("ancestors_bounded") {
  auto r = sys("gens: a b\nrule: bb -> a\n");
  std::set<Word> target{parse_word("a", r.alphabet().letters())};
  auto anc = ancestors_bounded(target, r, 4);
  std::set<Word> expect{parse_word("a", r.alphabet().letters()),
                        parse_word("bb", r.alphabet().letters())};
  CHECK(anc == expect);

  auto s = sys("gens: a\nrule: aa -> 1\n");
  auto anc2 = ancestors_bounded({Word{}}, s, 4);
  CHECK(anc2 == std::set<Word>{{}, parse_word("aa", s.alphabet().letters()),
                               parse_word("aaaa", s.alphabet().letters())});

  auto up = sys("gens: a b\nrule: a -> ab\n");
  CHECK_THROWS_AS(ancestors_bounded({Word{}}, up, 4), std::invalid_argument);
}

TEST_CASE("ancestors_bounded is monotone and agrees with forward search") {
  auto r = sys("gens: a b\nrule: ab -> b\nrule: bb -> a\n");
  std::set<Word> target{parse_word("a", r.alphabet().letters())};
  auto small = ancestors_bounded(target, r, 4);
  auto big = ancestors_bounded(target, r, 5);
  for (const Word& w : small) CHECK(big.count(w) == 1);
  auto letters = r.alphabet().letters();
  for (std::size_t n = 0; n <= 4; ++n) {
    for (std::size_t bits = 0; bits < (1u << n); ++bits) {
      Word w;
      for (std::size_t i = 0; i < n; ++i) w.push_back(letters[bits >> i & 1]);
      std::set<Word> frontier{w}, seen{w};
      bool reaches = w == *target.begin();
      while (!frontier.empty() && !reaches) {
        std::set<Word> next;
        for (const Word& f : frontier)
          for (const Word& g2 : rewrite_once(f, r))
            if (seen.insert(g2).second) next.insert(g2);
        if (seen.count(*target.begin())) reaches = true;
        frontier = std::move(next);
      }
      CHECK(reaches == (small.count(w) == 1));
    }
  }
}

TEST_CASE("grammar-backed rewrite and ancestors") {
  // rules (b^n, a) for n >= 1
  Symbol a = intern_symbol("a"), b = intern_symbol("b");
  Cfg bplus = cfg_concat(word_cfg({b}), cfg_star(word_cfg({b})));
  MonadicCfSystem m{{a, b}, {}};
  m.targets.push_back({a, bplus});
  auto out = rewrite_once(Word{b, b, a}, m);
  CHECK(out.count(Word{a, a}) == 1);
  CHECK(out.count(Word{b, a, a}) == 1);
  CHECK(out.count(Word{a, b, a}) == 1);
  auto anc = ancestors_bounded(std::set<Word>{{a}}, m, 3);
  CHECK(anc == std::set<Word>{{a}, {b}, {b, b}, {b, b, b}});
}

TEST_CASE("confluence check") {
  CHECK(check_confluence_lengthreducing(sys("gens: a1 a2 a3\nrule: a1 a1 a2 a2 a2 a3 a3 a3 a3 -> a2\n"))
            .status == ConfluenceResult::Status::complete);
  auto bad = check_confluence_lengthreducing(sys("gens: a b\nrule: aba -> 1\n"));
  CHECK(bad.status == ConfluenceResult::Status::incomplete);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->first != bad.witness->second);
  CHECK(check_confluence_lengthreducing(sys("gens: a b\n")).status ==
        ConfluenceResult::Status::complete);
  CHECK(check_confluence_lengthreducing(sys("gens: a b\nrule: a -> ab\n")).status ==
        ConfluenceResult::Status::inapplicable);
}

TEST_CASE("completion of aba -> 1 matches the Z oracle") {
  auto g = sys("gens: a b\nrule: aba -> 1\n");
  auto completed = complete_bounded(g, 64);
  REQUIRE(completed.has_value());
  CHECK(check_confluence_lengthreducing(*completed).status ==
        ConfluenceResult::Status::complete);

  for (const Rule& rule : completed->rules()) CHECK(zval(rule.lhs) == zval(rule.rhs));

  auto letters = g.alphabet().letters();
  std::map<long, Word> nf_of_val;
  std::set<Word> nfs;
  for (std::size_t n = 0; n <= 6; ++n) {
    for (std::size_t bits = 0; bits < (1u << n); ++bits) {
      Word w;
      for (std::size_t i = 0; i < n; ++i) w.push_back(letters[bits >> i & 1]);
      Word nf = normal_form(w, *completed);
      auto [it, fresh] = nf_of_val.emplace(zval(w), nf);
      if (!fresh) CHECK(it->second == nf);
      nfs.insert(nf);
    }
  }
  CHECK(nfs.size() == nf_of_val.size());
}

TEST_CASE("completion returns already-complete systems unchanged") {
  auto pi = sys("gens: a1 a2 a3\nrule: a1 a1 a2 a2 a2 a3 a3 a3 a3 -> a2\n");
  auto completed = complete_bounded(pi, 16);
  REQUIRE(completed.has_value());
  CHECK(completed->rules() == pi.rules());
  auto empty = complete_bounded(sys("gens: a\n"), 4);
  REQUIRE(empty.has_value());
  CHECK(empty->rules().empty());
}

TEST_CASE("complete system: unique normal forms on random words") {
  auto g = sys("gens: a b\nrule: aba -> 1\n");
  auto completed = complete_bounded(g, 64);
  REQUIRE(completed.has_value());
  std::mt19937 rng(3);
  auto letters = g.alphabet().letters();
  for (int i = 0; i < 1000; ++i) {
    Word w;
    for (std::size_t k = rng() % 9; k--;) w.push_back(letters[rng() % 2]);
    Word l = normal_form(w, *completed);
    Word r = w;
    bool changed = true;  // rightmost strategy must land on the same form
    while (changed) {
      changed = false;
      for (std::size_t i = r.size(); i-- > 0 && !changed;) {
        for (const Rule& rule : completed->rules()) {
          if (rule.lhs.empty() || i + rule.lhs.size() > r.size()) continue;
          if (!std::equal(rule.lhs.begin(), rule.lhs.end(), r.begin() + (std::ptrdiff_t)i))
            continue;
          Word next = subword(r, 0, i);
          next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
          Word tail = subword(r, i + rule.lhs.size(), r.size());
          next.insert(next.end(), tail.begin(), tail.end());
          r = std::move(next);
          changed = true;
          break;
        }
      }
    }
    CHECK(l == r);
    if (i % 50 == 0) {
      Word w2;
      for (std::size_t k = rng() % 6; k--;) w2.push_back(letters[rng() % 2]);
      Eq bfs = equal_bounded(w, w2, g, 10, 50000);
      if (bfs != Eq::unknown)
        CHECK((bfs == Eq::equal) == (normal_form(w, *completed) == normal_form(w2, *completed)));
    }
  }
}

TEST_CASE("rewrite system text round-trip") {
  const char* text = "gens: a b\nrule: aba -> 1\nrule: bb -> a\n";
  auto r = sys(text);
  CHECK(serialize_rewrite_system(r) == text);
}
