#include "wcm/presentation.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "wcm/rewriting.hpp"

namespace wcm {

MonoidPresentation::MonoidPresentation(Alphabet alphabet, std::vector<Relation> relations)
    : alphabet_(std::move(alphabet)), relations_(std::move(relations)) {
  for (const auto& [u, v] : relations_) {
    if (!alphabet_.contains_word(u) || !alphabet_.contains_word(v))
      throw std::invalid_argument("relation word uses a letter outside the alphabet");
  }
}

std::vector<Relation> MonoidPresentation::oriented_relations() const {
  std::vector<Relation> out = relations_;
  for (auto& [u, v] : out)
    if (u.size() < v.size()) std::swap(u, v);
  return out;
}

bool is_self_overlap_free(const Word& w) {
  // Longest proper border via the KMP failure function; w is
  // self-overlap free iff the longest border is empty.
  const std::size_t n = w.size();
  if (n <= 1) return true;
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t b = border[i - 1];
    while (b > 0 && w[i] != w[b]) b = border[b - 1];
    if (w[i] == w[b]) ++b;
    border[i] = b;
  }
  return border[n - 1] == 0;
}

bool is_sealed_by(const Word& u, const Word& v, const Word& w) {
  if (w.empty()) throw std::invalid_argument("sealing word must be non-empty");
  return starts_with(u, w) && ends_with(u, w) && starts_with(v, w) && ends_with(v, w);
}

std::optional<Word> find_sealing_word(const MonoidPresentation& p) {
  const auto& rels = p.relations();
  if (rels.empty()) return std::nullopt;
  const Word* shortest = nullptr;
  for (const auto& [u, v] : rels) {
    const Word& s = u.size() <= v.size() ? u : v;
    if (!shortest || s.size() < shortest->size()) shortest = &s;
  }
  if (shortest->empty()) return std::nullopt;  // a pair with 1 cannot be sealed
  for (std::size_t len = 1; len <= shortest->size(); ++len) {
    Word candidate = subword(*shortest, 0, len);
    if (!is_self_overlap_free(candidate)) continue;
    bool seals_all = true;
    for (const auto& [u, v] : rels)
      if (!is_sealed_by(u, v, candidate)) {
        seals_all = false;
        break;
      }
    if (seals_all) return candidate;
  }
  return std::nullopt;
}

Classification classify(const MonoidPresentation& p) {
  Classification c;
  auto oriented = p.oriented_relations();
  c.special = std::all_of(oriented.begin(), oriented.end(),
                          [](const Relation& r) { return r.second.empty(); });
  if (oriented.size() == 1) {
    const auto& [u, v] = oriented.front();
    c.subspecial = starts_with(u, v) && ends_with(u, v);
  }
  c.sealing_word = find_sealing_word(p);
  c.weakly_compressible = c.sealing_word.has_value();
  c.incompressible = !c.weakly_compressible;
  return c;
}

Tri has_nontrivial_idempotent(const MonoidPresentation& p, std::size_t probe_bound,
                              const Limits& limits) {
  if (p.relations().size() != 1)
    throw std::invalid_argument("idempotent criterion needs exactly one relation");
  auto [u, v] = p.oriented_relations().front();
  Classification c = classify(p);
  if (c.subspecial && u.size() > v.size() && !v.empty()) return Tri::yes;
  if (!c.special && !c.subspecial) return Tri::no;
  if (!c.special) return Tri::no;  // subspecial with u == v: the free monoid

  // Special case: a non-trivial idempotent exists iff the monoid is not
  // right cancellative. With a finite complete system, distinct normal
  // forms certify inequality, so a bounded sweep can find a definite
  // witness x, y, z with xz = yz and x != y (e.g. the bicyclic monoid).
  // Without one we stay at `unknown` rather than guess.
  std::optional<RewriteSystem> complete;
  try {
    complete = complete_bounded(RewriteSystem(p.alphabet(), {Rule{u, v}}), 64);
  } catch (const guard_error&) {
    complete = std::nullopt;
  }
  if (!complete) return Tri::unknown;

  const std::size_t word_bound = std::min<std::size_t>(probe_bound, 6);
  std::vector<Word> nfs;
  std::vector<Word> frontier{Word{}};
  nfs.push_back(Word{});
  for (std::size_t len = 1; len <= word_bound; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (Symbol a : p.alphabet().letters()) {
        Word cand = w;
        cand.push_back(a);
        if (normal_form(cand, *complete) == cand) {
          next.push_back(cand);
          nfs.push_back(cand);
          if (nfs.size() > limits.max_congruence_words) return Tri::unknown;
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Word> suffixes;
  for (const Word& w : nfs)
    if (!w.empty() && w.size() <= 3) suffixes.push_back(w);
  for (std::size_t i = 0; i < nfs.size(); ++i) {
    for (std::size_t j = i + 1; j < nfs.size(); ++j) {
      for (const Word& z : suffixes) {
        if (normal_form(concat(nfs[i], z), *complete) ==
            normal_form(concat(nfs[j], z), *complete))
          return Tri::yes;
      }
    }
  }
  return Tri::unknown;
}

}  // namespace wcm
