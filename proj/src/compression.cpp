#include "wcm/compression.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "wcm/io.hpp"

namespace wcm {

namespace {

std::size_t total_relation_length(const MonoidPresentation& p) {
  std::size_t n = 0;
  for (const auto& [u, v] : p.relations()) n += u.size() + v.size();
  return n;
}

bool all_relations_trivial(const MonoidPresentation& p) {
  for (const auto& [u, v] : p.relations())
    if (u != v) return false;
  return true;
}

// Piece boundaries of a sealed relation side: the alpha occurrences.
std::vector<Word> side_pieces(const Word& w, const Word& alpha) {
  if (w == alpha) return {};
  auto occ = occurrences(w, alpha);
  if (occ.empty() || occ.front() != 0 || occ.back() != w.size() - alpha.size())
    throw std::logic_error("relation side is not sealed by alpha");
  std::vector<Word> pieces;
  for (std::size_t i = 0; i + 1 < occ.size(); ++i)
    pieces.push_back(subword(w, occ[i], occ[i + 1]));
  return pieces;
}

}  // namespace

std::vector<Word> left_pieces(const MonoidPresentation& p, const Word& alpha) {
  if (alpha.empty() || !is_self_overlap_free(alpha))
    throw std::invalid_argument("left_pieces: alpha must be non-empty and self-overlap free");
  std::vector<Word> out;
  auto add = [&](const Word& piece) {
    if (std::find(out.begin(), out.end(), piece) == out.end()) out.push_back(piece);
  };
  for (const auto& [u, v] : p.relations()) {
    if (!is_sealed_by(u, v, alpha)) throw std::logic_error("left_pieces: relation not sealed");
    for (const Word& piece : side_pieces(u, alpha)) add(piece);
    for (const Word& piece : side_pieces(v, alpha)) add(piece);
  }
  return out;
}

std::string piece_spelling(const Word& piece) {
  bool single = true;
  for (Symbol s : piece)
    if (symbol_name(s).size() != 1) single = false;
  std::string out;
  for (std::size_t i = 0; i < piece.size(); ++i) {
    if (i && !single) out += '_';
    out += symbol_name(piece[i]);
  }
  return out;
}

CompressionStep compress(const MonoidPresentation& p) {
  Classification cls = classify(p);
  if (!cls.weakly_compressible)
    throw std::invalid_argument("compress: presentation is incompressible");
  if (p.alphabet().size() < 2)
    throw std::invalid_argument(
        "compress: one-letter presentations are cyclic monoids; compression is refused");
  const Word& alpha = *cls.sealing_word;
  std::vector<Word> sigma = left_pieces(p, alpha);
  if (sigma.empty())  // every relation side is alpha itself
    throw std::invalid_argument("compress: relations are trivial, nothing to compress");

  std::vector<Symbol> gamma;
  std::map<Word, Symbol> phi;
  std::map<Symbol, Word> phi_inv;
  std::set<std::string> used;
  for (const Word& piece : sigma) {
    std::string name = "gamma_" + piece_spelling(piece);
    while (used.count(name)) name += "_";
    used.insert(name);
    Symbol s = intern_symbol(name);
    gamma.push_back(s);
    phi[piece] = s;
    phi_inv[s] = piece;
  }

  std::vector<Relation> target_rels;
  for (const auto& [u, v] : p.relations()) {
    Word lhs, rhs;
    for (const Word& piece : side_pieces(u, alpha)) lhs.push_back(phi.at(piece));
    for (const Word& piece : side_pieces(v, alpha)) rhs.push_back(phi.at(piece));
    target_rels.push_back({lhs, rhs});
  }
  MonoidPresentation target(Alphabet(gamma), std::move(target_rels));
  if (total_relation_length(target) >= total_relation_length(p))
    throw std::logic_error("compress: relation length did not decrease");
  return CompressionStep{alpha, std::move(sigma), std::move(gamma), std::move(phi),
                         std::move(phi_inv), p, std::move(target)};
}

CompressionChain compress_chain(const MonoidPresentation& p) {
  CompressionChain chain{p, {}};
  const MonoidPresentation* cur = &p;
  while (cur->alphabet().size() > 1 && !all_relations_trivial(*cur) &&
         classify(*cur).weakly_compressible) {
    chain.steps.push_back(compress(*cur));
    cur = &chain.steps.back().target;
  }
  return chain;
}

std::optional<CanonicalForm> canonical_form(const Word& w, const Word& alpha) {
  if (alpha.empty() || !is_self_overlap_free(alpha))
    throw std::invalid_argument("canonical_form: alpha must be non-empty and self-overlap free");
  auto occ = occurrences(w, alpha);
  if (occ.empty()) return std::nullopt;
  CanonicalForm f;
  f.prefix = subword(w, 0, occ.front());
  f.core = subword(w, occ.front(), occ.back() + alpha.size());
  f.suffix = subword(w, occ.back() + alpha.size(), w.size());
  return f;
}

Word gamma_part(const Word& w, const CompressionStep& step) {
  auto cf = canonical_form(w, step.alpha);
  if (!cf) throw std::invalid_argument("gamma_part: word does not contain alpha");
  Word left = subword(cf->core, 0, cf->core.size() - step.alpha.size());
  Word out;
  if (left.empty()) return out;
  auto occ = occurrences(left, step.alpha);
  for (std::size_t i = 0; i < occ.size(); ++i) {
    std::size_t end = i + 1 < occ.size() ? occ[i + 1] : left.size();
    Word piece = subword(left, occ[i], end);
    auto it = step.phi.find(piece);
    if (it != step.phi.end())
      out.push_back(it->second);
    else
      out.push_back(intern_symbol("gamma_" + piece_spelling(piece) + "'"));
  }
  return out;
}

namespace {

// Cyclic monoid arithmetic: over one letter, u = v iff the exponents
// agree, or both lie past the smallest relation threshold and agree
// modulo the gcd of the relation differences.
Eq cyclic_equal(const MonoidPresentation& p, const Word& u, const Word& v) {
  std::size_t threshold = SIZE_MAX;
  std::size_t g = 0;
  for (const auto& [a, b] : p.oriented_relations()) {
    if (a.size() == b.size()) continue;
    threshold = std::min(threshold, b.size());
    g = std::gcd(g, a.size() - b.size());
  }
  if (u.size() == v.size()) return Eq::equal;
  if (g == 0) return Eq::distinct;  // free cyclic
  if (u.size() >= threshold && v.size() >= threshold &&
      (u.size() % g) == (v.size() % g))
    return Eq::equal;
  return Eq::distinct;
}

struct Block {
  bool in_sigma;  // pieces from sigma (left-monoid letters) vs free factor
  std::vector<Word> pieces;
};

std::vector<Block> piece_blocks(const Word& core, const CompressionStep& step) {
  Word left = subword(core, 0, core.size() - step.alpha.size());
  std::vector<Block> blocks;
  if (left.empty()) return blocks;
  auto occ = occurrences(left, step.alpha);
  for (std::size_t i = 0; i < occ.size(); ++i) {
    std::size_t end = i + 1 < occ.size() ? occ[i + 1] : left.size();
    Word piece = subword(left, occ[i], end);
    bool in_sigma = step.phi.count(piece) > 0;
    if (blocks.empty() || blocks.back().in_sigma != in_sigma)
      blocks.push_back({in_sigma, {}});
    blocks.back().pieces.push_back(std::move(piece));
  }
  return blocks;
}

Word phi_image(const std::vector<Word>& pieces, const CompressionStep& step) {
  Word out;
  for (const Word& piece : pieces) out.push_back(step.phi.at(piece));
  return out;
}

}  // namespace

Eq word_equal(const MonoidPresentation& p, const Word& u, const Word& v,
              const BaseSolver& base) {
  if (u == v) return Eq::equal;
  if (all_relations_trivial(p)) return Eq::distinct;  // the free monoid
  if (p.alphabet().size() == 1) return cyclic_equal(p, u, v);
  Classification cls = classify(p);
  if (!cls.weakly_compressible) return base(u, v);

  CompressionStep step = compress(p);
  const Word& alpha = step.alpha;
  bool cu = !occurrences(u, alpha).empty();
  bool cv = !occurrences(v, alpha).empty();
  if (cu != cv) return Eq::distinct;
  if (!cu) return Eq::distinct;  // alpha-free and u != v: equality is literal

  CanonicalForm fu = *canonical_form(u, alpha);
  CanonicalForm fv = *canonical_form(v, alpha);
  if (fu.prefix != fv.prefix || fu.suffix != fv.suffix) return Eq::distinct;
  if (fu.core == fv.core) return Eq::equal;

  // Free-product normal form of the gamma parts: delete left-monoid
  // blocks equal to the identity (free-factor blocks are never trivial),
  // merging their neighbours, then compare block by block.
  auto reduce = [&](std::vector<Block> blocks) -> std::optional<std::vector<Block>> {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (!blocks[i].in_sigma) continue;
        Eq is_identity = word_equal(step.target, phi_image(blocks[i].pieces, step), {}, base);
        if (is_identity == Eq::unknown) return std::nullopt;
        if (is_identity != Eq::equal) continue;
        blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(i));
        if (i > 0 && i < blocks.size() && blocks[i - 1].in_sigma == blocks[i].in_sigma) {
          auto& dst = blocks[i - 1].pieces;
          dst.insert(dst.end(), blocks[i].pieces.begin(), blocks[i].pieces.end());
          blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(i));
        }
        changed = true;
        break;
      }
    }
    return blocks;
  };
  auto bu = reduce(piece_blocks(fu.core, step));
  auto bv = reduce(piece_blocks(fv.core, step));
  if (!bu || !bv) return Eq::unknown;
  if (bu->size() != bv->size()) return Eq::distinct;
  for (std::size_t i = 0; i < bu->size(); ++i) {
    const Block& x = (*bu)[i];
    const Block& y = (*bv)[i];
    if (x.in_sigma != y.in_sigma) return Eq::distinct;
    if (!x.in_sigma) {
      if (x.pieces != y.pieces) return Eq::distinct;
      continue;
    }
    Eq e = word_equal(step.target, phi_image(x.pieces, step), phi_image(y.pieces, step), base);
    if (e != Eq::equal) return e;
  }
  return Eq::equal;
}

BaseSolver make_bfs_solver(const MonoidPresentation& p, std::size_t maxlen,
                           std::size_t maxstates) {
  std::vector<Rule> rules;
  for (const auto& [u, v] : p.relations()) rules.push_back({u, v});
  auto sys = std::make_shared<RewriteSystem>(p.alphabet(), std::move(rules));
  return [sys, maxlen, maxstates](const Word& u, const Word& v) {
    std::size_t bound = std::max({maxlen, u.size(), v.size()});
    return equal_bounded(u, v, *sys, bound, maxstates);
  };
}

std::optional<BaseSolver> make_complete_solver(const MonoidPresentation& p,
                                               std::size_t maxrules) {
  std::vector<Rule> rules;
  for (const auto& [u, v] : p.oriented_relations())
    if (u != v) rules.push_back({u, v});
  auto completed = complete_bounded(RewriteSystem(p.alphabet(), std::move(rules)), maxrules);
  if (!completed) return std::nullopt;
  auto sys = std::make_shared<RewriteSystem>(std::move(*completed));
  return BaseSolver([sys](const Word& u, const Word& v) {
    return normal_form(u, *sys) == normal_form(v, *sys) ? Eq::equal : Eq::distinct;
  });
}

BaseSolver make_grammar_solver(const Cfg& wp) {
  auto matcher = std::make_shared<CykMatcher>(wp);
  return [matcher](const Word& u, const Word& v) {
    Word query = u;
    query.push_back(marker_symbol());
    Word rv = reverse_word(v);
    query.insert(query.end(), rv.begin(), rv.end());
    return matcher->matches(query) ? Eq::equal : Eq::distinct;
  };
}

BaseSolver make_auto_solver(const MonoidPresentation& p, std::size_t maxrules,
                            std::size_t maxlen, std::size_t maxstates) {
  auto complete = make_complete_solver(p, maxrules);
  if (complete) return *complete;
  return make_bfs_solver(p, maxlen, maxstates);
}

std::optional<MonoidPresentation> compress_to_special(const MonoidPresentation& p) {
  if (p.relations().size() != 1)
    throw std::invalid_argument("compress_to_special: needs exactly one relation");
  Classification cls = classify(p);
  if (cls.special) return p;
  if (!cls.subspecial) return std::nullopt;
  if (p.alphabet().size() < 2) return std::nullopt;  // compression refused for cyclic monoids
  CompressionChain chain = compress_chain(p);
  if (!classify(chain.terminal()).special)
    throw std::logic_error("compress_to_special: subspecial chain did not end special");
  return chain.terminal();
}

std::string chain_report_json(const CompressionChain& chain) {
  nlohmann::json report;
  report["initial"] = serialize_presentation(chain.initial);
  report["length"] = chain.steps.size();
  report["steps"] = nlohmann::json::array();
  for (const auto& step : chain.steps) {
    nlohmann::json js;
    js["alpha"] = word_str(step.alpha);
    js["sigma"] = nlohmann::json::array();
    for (const Word& piece : step.sigma) js["sigma"].push_back(word_str(piece));
    js["phi"] = nlohmann::json::object();
    for (const auto& [piece, letter] : step.phi) js["phi"][word_str(piece)] = symbol_name(letter);
    js["target"] = serialize_presentation(step.target);
    report["steps"].push_back(std::move(js));
  }
  nlohmann::json terminal;
  Classification cls = classify(chain.terminal());
  terminal["presentation"] = serialize_presentation(chain.terminal());
  terminal["special"] = cls.special;
  terminal["incompressible"] = cls.incompressible;
  report["terminal"] = std::move(terminal);
  return report.dump(2);
}

}  // namespace wcm
