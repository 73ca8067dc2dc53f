#include "wcm/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace wcm {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

struct Lines {
  std::vector<std::pair<std::size_t, std::string>> content;  // (line number, text)

  explicit Lines(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
      ++no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      content.push_back({no, line});
    }
  }
};

// Segments a token into declared letters. Single letters pass through;
// multi-letter tokens must segment uniquely.
Word segment_token(const std::string& tok, const std::vector<Symbol>& letters, std::size_t line) {
  if (tok == "1") return {};
  std::map<std::string, Symbol> by_name;
  std::size_t max_len = 0;
  for (Symbol l : letters) {
    by_name[symbol_name(l)] = l;
    max_len = std::max(max_len, symbol_name(l).size());
  }
  auto it = by_name.find(tok);
  if (it != by_name.end()) return {it->second};
  // Count segmentations; reject ambiguity.
  const std::size_t n = tok.size();
  std::vector<std::size_t> ways(n + 1, 0);
  std::vector<Symbol> choice(n + 1);
  ways[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t len = 1; len <= std::min(max_len, i); ++len) {
      auto jt = by_name.find(tok.substr(i - len, len));
      if (jt == by_name.end() || ways[i - len] == 0) continue;
      ways[i] = std::min<std::size_t>(ways[i] + ways[i - len], 2);
      choice[i] = jt->second;
    }
  }
  if (ways[n] == 0) throw parse_error(line, "cannot read '" + tok + "' over the declared letters");
  if (ways[n] > 1) throw parse_error(line, "ambiguous word '" + tok + "'; separate letters with spaces");
  Word rev;
  std::size_t i = n;
  while (i > 0) {
    Symbol s = choice[i];
    rev.push_back(s);
    i -= symbol_name(s).size();
  }
  return Word(rev.rbegin(), rev.rend());
}

Word parse_word_tokens(const std::vector<std::string>& toks, std::size_t begin, std::size_t end,
                       const std::vector<Symbol>& letters, std::size_t line) {
  Word w;
  bool any = false;
  for (std::size_t i = begin; i < end; ++i) {
    if (toks[i] == "1" && end - begin == 1) return {};
    Word part = segment_token(toks[i], letters, line);
    w.insert(w.end(), part.begin(), part.end());
    any = true;
  }
  if (!any) throw parse_error(line, "missing word");
  return w;
}

std::string render_word(const Word& w) { return word_str(w); }

std::vector<Symbol> parse_gens_line(const Lines& lines, std::size_t idx) {
  const auto& [no, line] = lines.content.at(idx);
  auto toks = split_ws(line);
  if (toks.empty() || toks[0] != "gens:") throw parse_error(no, "expected 'gens:' line");
  std::vector<Symbol> letters;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    if (is_reserved_spelling(toks[i])) throw parse_error(no, "reserved generator name " + toks[i]);
    letters.push_back(intern_symbol(toks[i]));
  }
  if (letters.empty()) throw parse_error(no, "empty generator list");
  return letters;
}

}  // namespace

Word parse_word(const std::string& text, const std::vector<Symbol>& letters) {
  auto toks = split_ws(text);
  if (toks.empty()) throw parse_error(1, "missing word");
  return parse_word_tokens(toks, 0, toks.size(), letters, 1);
}

MonoidPresentation parse_presentation(const std::string& text) {
  Lines lines(text);
  if (lines.content.empty()) throw parse_error(1, "empty presentation file");
  std::vector<Symbol> letters = parse_gens_line(lines, 0);
  std::vector<Relation> rels;
  for (std::size_t i = 1; i < lines.content.size(); ++i) {
    const auto& [no, line] = lines.content[i];
    auto toks = split_ws(line);
    if (toks.empty() || toks[0] != "rel:") throw parse_error(no, "expected 'rel:' line");
    auto eq = std::find(toks.begin(), toks.end(), "=");
    if (eq == toks.end()) throw parse_error(no, "missing '=' in relation");
    std::size_t eq_idx = static_cast<std::size_t>(eq - toks.begin());
    Word lhs = parse_word_tokens(toks, 1, eq_idx, letters, no);
    Word rhs = parse_word_tokens(toks, eq_idx + 1, toks.size(), letters, no);
    rels.push_back({lhs, rhs});
  }
  return MonoidPresentation(Alphabet(letters), std::move(rels));
}

std::string serialize_presentation(const MonoidPresentation& p) {
  std::ostringstream out;
  out << "gens:";
  for (Symbol l : p.alphabet().letters()) out << ' ' << symbol_name(l);
  out << '\n';
  for (const auto& [u, v] : p.relations())
    out << "rel: " << render_word(u) << " = " << render_word(v) << '\n';
  return out.str();
}

RewriteSystem parse_rewrite_system(const std::string& text) {
  Lines lines(text);
  if (lines.content.empty()) throw parse_error(1, "empty rewrite system file");
  std::vector<Symbol> letters = parse_gens_line(lines, 0);
  std::vector<Rule> rules;
  for (std::size_t i = 1; i < lines.content.size(); ++i) {
    const auto& [no, line] = lines.content[i];
    auto toks = split_ws(line);
    if (toks.empty() || toks[0] != "rule:") throw parse_error(no, "expected 'rule:' line");
    auto arrow = std::find(toks.begin(), toks.end(), "->");
    if (arrow == toks.end()) throw parse_error(no, "missing '->' in rule");
    std::size_t idx = static_cast<std::size_t>(arrow - toks.begin());
    rules.push_back({parse_word_tokens(toks, 1, idx, letters, no),
                     parse_word_tokens(toks, idx + 1, toks.size(), letters, no)});
  }
  return RewriteSystem(Alphabet(letters), std::move(rules));
}

std::string serialize_rewrite_system(const RewriteSystem& r) {
  std::ostringstream out;
  out << "gens:";
  for (Symbol l : r.alphabet().letters()) out << ' ' << symbol_name(l);
  out << '\n';
  for (const Rule& rule : r.rules())
    out << "rule: " << render_word(rule.lhs) << " -> " << render_word(rule.rhs) << '\n';
  return out.str();
}

Cfg parse_cfg(const std::string& text) {
  Lines lines(text);
  if (lines.content.empty()) throw parse_error(1, "empty grammar file");
  {
    auto toks = split_ws(lines.content[0].second);
    if (toks.size() != 2 || toks[0] != "start:")
      throw parse_error(lines.content[0].first, "expected 'start: <symbol>'");
  }
  std::string start_name = split_ws(lines.content[0].second)[1];
  // First pass: every lhs is a nonterminal.
  std::map<std::string, std::uint32_t> nt;
  std::vector<std::string> names;
  auto get_nt = [&](const std::string& name) {
    auto it = nt.find(name);
    if (it != nt.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(names.size());
    nt[name] = id;
    names.push_back(name);
    return id;
  };
  for (std::size_t i = 1; i < lines.content.size(); ++i) {
    auto toks = split_ws(lines.content[i].second);
    if (toks.size() < 2 || toks[1] != "->")
      throw parse_error(lines.content[i].first, "expected '<nt> -> body | body'");
    get_nt(toks[0]);
  }
  Cfg g;
  g.nt_count = static_cast<std::uint32_t>(names.size());
  if (!nt.count(start_name)) {
    g.nt_count += 1;
    names.push_back(start_name);
    nt[start_name] = g.nt_count - 1;
  }
  g.start = nt[start_name];
  std::vector<Symbol> terms;
  for (std::size_t i = 1; i < lines.content.size(); ++i) {
    const auto& [no, line] = lines.content[i];
    auto toks = split_ws(line);
    std::uint32_t lhs = nt[toks[0]];
    std::vector<std::vector<GSym>> alts{{}};
    for (std::size_t j = 2; j < toks.size(); ++j) {
      if (toks[j] == "|") {
        alts.push_back({});
        continue;
      }
      if (toks[j] == "1") continue;  // epsilon contributes nothing to a body
      auto it = nt.find(toks[j]);
      if (it != nt.end()) {
        alts.back().push_back(gsym_nt(it->second));
      } else {
        Symbol s = intern_symbol(toks[j]);
        terms.push_back(s);
        alts.back().push_back(gsym(s));
      }
    }
    for (auto& body : alts) g.productions.push_back({lhs, std::move(body)});
  }
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  g.terminals = terms;
  g.nt_names = names;
  return g;
}

std::string serialize_cfg(const Cfg& g) {
  // Emit stable names; fall back to N<k> when names are absent or clash
  // with terminal spellings.
  std::vector<std::string> names(g.nt_count);
  std::set<std::string> taken;
  for (Symbol t : g.terminals) taken.insert(symbol_name(t));
  taken.insert("1");
  taken.insert("|");
  taken.insert("->");
  for (std::uint32_t n = 0; n < g.nt_count; ++n) {
    std::string cand =
        (n < g.nt_names.size() && !g.nt_names[n].empty()) ? g.nt_names[n] : "N" + std::to_string(n);
    while (taken.count(cand)) cand = "N" + std::to_string(n) + "_" + cand;
    names[n] = cand;
    taken.insert(cand);
  }
  std::ostringstream out;
  out << "start: " << names[g.start] << '\n';
  std::map<std::uint32_t, std::vector<std::string>> alts;
  for (const auto& p : g.productions) {
    std::string body;
    if (p.body.empty()) {
      body = "1";
    } else {
      for (std::size_t i = 0; i < p.body.size(); ++i) {
        if (i) body += ' ';
        const GSym& s = p.body[i];
        body += s.kind == GSym::Kind::nonterminal ? names[s.index] : symbol_name(Symbol{s.index});
      }
    }
    alts[p.lhs].push_back(body);
  }
  for (const auto& [lhs, bodies] : alts) {
    out << names[lhs] << " ->";
    for (std::size_t i = 0; i < bodies.size(); ++i) out << (i ? " | " : " ") << bodies[i];
    out << '\n';
  }
  return out.str();
}

Nfa parse_nfa(const std::string& text) {
  Lines lines(text);
  Nfa n;
  std::vector<Symbol> alphabet;
  for (const auto& [no, line] : lines.content) {
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "states:") {
      if (toks.size() != 2) throw parse_error(no, "expected 'states: <count>'");
      n.state_count = static_cast<std::uint32_t>(std::stoul(toks[1]));
    } else if (toks[0] == "alphabet:") {
      for (std::size_t i = 1; i < toks.size(); ++i) alphabet.push_back(intern_symbol(toks[i]));
    } else if (toks[0] == "initial:" || toks[0] == "accepting:") {
      auto& dst = toks[0] == "initial:" ? n.initial : n.accepting;
      for (std::size_t i = 1; i < toks.size(); ++i)
        dst.push_back(static_cast<std::uint32_t>(std::stoul(toks[i])));
    } else if (toks[0] == "trans:") {
      if (toks.size() != 4) throw parse_error(no, "expected 'trans: <from> <label> <to>'");
      Nfa::Transition t;
      t.from = static_cast<std::uint32_t>(std::stoul(toks[1]));
      t.to = static_cast<std::uint32_t>(std::stoul(toks[3]));
      if (toks[2] != "1") {
        t.label = intern_symbol(toks[2]);
        alphabet.push_back(*t.label);
      }
      n.transitions.push_back(t);
    } else {
      throw parse_error(no, "unknown directive " + toks[0]);
    }
  }
  for (const auto& t : n.transitions)
    if (t.from >= n.state_count || t.to >= n.state_count)
      throw parse_error(1, "transition state out of range");
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  n.alphabet = alphabet;
  return n;
}

std::string serialize_nfa(const Nfa& n) {
  std::ostringstream out;
  out << "states: " << n.state_count << '\n';
  out << "alphabet:";
  for (Symbol a : n.alphabet) out << ' ' << symbol_name(a);
  out << '\n';
  out << "initial:";
  for (auto s : n.initial) out << ' ' << s;
  out << '\n' << "accepting:";
  for (auto s : n.accepting) out << ' ' << s;
  out << '\n';
  for (const auto& t : n.transitions)
    out << "trans: " << t.from << ' ' << (t.label ? symbol_name(*t.label) : "1") << ' ' << t.to
        << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace wcm
