// wcm -- command-line driver for the weak-compression toolkit.
//
// Exit codes: 0 definite answer, 2 unknown, 1 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "wcm/io.hpp"
#include "wcm/pipeline.hpp"

using namespace wcm;
using nlohmann::json;

namespace {

constexpr int kExitDefinite = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;

struct Options {
  std::string format = "text";
  std::size_t maxlen = 12;
  std::size_t maxstates = 200000;
  std::size_t maxrules = 200;
  Limits limits;
};

bool json_out(const Options& o) { return o.format == "json"; }

Word parse_plain_word(const std::string& text, const MonoidPresentation& p) {
  return parse_word(text, p.alphabet().letters());
}

// u#v as a single token; either side may be empty.
Word parse_marker_word(const std::string& text, const MonoidPresentation& p) {
  auto at = text.find('#');
  if (at == std::string::npos || text.find('#', at + 1) != std::string::npos)
    throw std::runtime_error("expected a word with exactly one '#'");
  Word out;
  if (at > 0) out = parse_plain_word(text.substr(0, at), p);
  out.push_back(marker_symbol());
  if (at + 1 < text.size()) {
    Word right = parse_plain_word(text.substr(at + 1), p);
    out.insert(out.end(), right.begin(), right.end());
  }
  return out;
}

json classification_json(const Classification& c) {
  json j;
  j["special"] = c.special;
  j["subspecial"] = c.subspecial;
  j["weakly_compressible"] = c.weakly_compressible;
  j["incompressible"] = c.incompressible;
  if (c.sealing_word) j["sealing_word"] = word_str(*c.sealing_word);
  return j;
}

const char* tri_str(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    default: return "unknown";
  }
}

const char* eq_str(Eq e) {
  switch (e) {
    case Eq::equal: return "equal";
    case Eq::distinct: return "distinct";
    default: return "unknown";
  }
}

BaseSolver resolve_base(const std::string& spec, const MonoidPresentation& terminal,
                        const Options& opt, std::string& note) {
  if (spec == "auto") {
    auto complete = make_complete_solver(terminal, opt.maxrules);
    if (complete) {
      note = "complete rewriting system";
      return *complete;
    }
    note = "bounded search (completion did not converge)";
    return make_bfs_solver(terminal, opt.maxlen, opt.maxstates);
  }
  if (spec == "complete") {
    auto complete = make_complete_solver(terminal, opt.maxrules);
    if (!complete) throw std::runtime_error("completion did not converge within --maxrules");
    note = "complete rewriting system";
    return *complete;
  }
  if (spec == "bfs") {
    note = "bounded search";
    return make_bfs_solver(terminal, opt.maxlen, opt.maxstates);
  }
  if (spec.rfind("grammar:", 0) == 0) {
    note = "word-problem grammar";
    return make_grammar_solver(parse_cfg(read_file(spec.substr(8))));
  }
  throw std::runtime_error("unknown --base value " + spec);
}

int cmd_classify(const std::string& path, const Options& opt) {
  auto p = parse_presentation(read_file(path));
  Classification c = classify(p);
  if (json_out(opt)) {
    std::cout << classification_json(c).dump(2) << "\n";
  } else {
    std::printf("special:              %s\n", c.special ? "true" : "false");
    std::printf("subspecial:           %s\n", c.subspecial ? "true" : "false");
    std::printf("weakly compressible:  %s\n", c.weakly_compressible ? "true" : "false");
    std::printf("incompressible:       %s\n", c.incompressible ? "true" : "false");
    if (c.sealing_word) std::printf("sealing word:         %s\n", word_str(*c.sealing_word).c_str());
  }
  return kExitDefinite;
}

int cmd_compress(const std::string& path, bool whole_chain, const Options& opt) {
  auto p = parse_presentation(read_file(path));
  CompressionChain chain = compress_chain(p);
  if (!whole_chain && chain.steps.size() > 1)
    chain.steps.erase(chain.steps.begin() + 1, chain.steps.end());
  if (json_out(opt)) {
    std::cout << chain_report_json(chain) << "\n";
    return kExitDefinite;
  }
  if (chain.steps.empty()) {
    std::printf("presentation is incompressible\n");
    return kExitDefinite;
  }
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const auto& step = chain.steps[i];
    std::printf("step %zu: alpha = %s\n", i + 1, word_str(step.alpha).c_str());
    std::printf("  pieces:");
    for (const Word& piece : step.sigma) std::printf(" %s", word_str(piece).c_str());
    std::printf("\n  target:\n%s", serialize_presentation(step.target).c_str());
  }
  auto cls = classify(chain.terminal());
  std::printf("terminal is %s\n", cls.special ? "special" : cls.incompressible ? "incompressible"
                                                                               : "cyclic");
  return kExitDefinite;
}

int cmd_eq(const std::string& path, const std::string& us, const std::string& vs,
           const std::string& base_spec, const Options& opt) {
  auto p = parse_presentation(read_file(path));
  Word u = parse_plain_word(us, p);
  Word v = parse_plain_word(vs, p);
  std::string note;
  BaseSolver base = resolve_base(base_spec, compress_chain(p).terminal(), opt, note);
  Eq e = word_equal(p, u, v, base);
  if (json_out(opt)) {
    json j;
    j["result"] = eq_str(e);
    j["base"] = note;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("%s\n", eq_str(e));
  }
  return e == Eq::unknown ? kExitUnknown : kExitDefinite;
}

int cmd_idempotent(const std::string& path, std::size_t probe, const Options& opt) {
  auto p = parse_presentation(read_file(path));
  Tri t = has_nontrivial_idempotent(p, probe, opt.limits);
  if (json_out(opt)) {
    json j;
    j["nontrivial_idempotent"] = tri_str(t);
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("%s\n", tri_str(t));
  }
  return t == Tri::unknown ? kExitUnknown : kExitDefinite;
}

int cmd_build_wp(const std::string& path, const std::string& base_spec, const std::string& out_dir,
                 const Options& opt) {
  namespace fs = std::filesystem;
  auto p = parse_presentation(read_file(path));
  CompressionChain chain = compress_chain(p);

  Cfg terminal_wp;
  std::string base_note;
  if (base_spec == "auto") {
    const auto& terminal = chain.terminal();
    std::vector<Rule> rules;
    for (const auto& [u, v] : terminal.oriented_relations())
      if (u != v) rules.push_back({u, v});
    terminal_wp = wp_from_complete_monadic(RewriteSystem(terminal.alphabet(), rules), opt.limits);
    base_note = "constructed from the terminal's complete monadic system";
  } else {
    terminal_wp = parse_cfg(read_file(base_spec));
    base_note = "supplied: " + base_spec;
  }
  if (chain.steps.empty())
    throw std::runtime_error("presentation is incompressible; nothing to build");

  auto bundles = lift_wp_through_chain(chain, terminal_wp, opt.limits);
  const WpGrammarBundle& top = bundles.back();

  fs::create_directories(fs::path(out_dir) / "stages");
  write_file((fs::path(out_dir) / "presentation.pres").string(), serialize_presentation(p));
  write_file((fs::path(out_dir) / "base.cfg").string(), serialize_cfg(terminal_wp));
  write_file((fs::path(out_dir) / "built.cfg").string(), serialize_cfg(top.built_wp));
  json manifest;
  manifest["presentation"] = "presentation.pres";
  manifest["base"] = "base.cfg";
  manifest["base_note"] = base_note;
  manifest["built"] = "built.cfg";
  manifest["chain_length"] = chain.steps.size();
  manifest["alpha"] = word_str(top.step.alpha);
  manifest["stages"] = json::array();
  for (const auto& [name, g] : top.stages) {
    std::string file = "stages/" + name + ".cfg";
    write_file((fs::path(out_dir) / file).string(), serialize_cfg(g));
    json stage;
    stage["name"] = name;
    stage["file"] = file;
    stage["nonterminals"] = g.nt_count;
    stage["productions"] = g.productions.size();
    manifest["stages"].push_back(stage);
  }
  write_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
  if (json_out(opt)) {
    std::cout << manifest.dump(2) << "\n";
  } else {
    std::printf("bundle written to %s (%zu stages, built grammar: %zu productions)\n",
                out_dir.c_str(), top.stages.size(), top.built_wp.productions.size());
  }
  return kExitDefinite;
}

int cmd_member(const std::string& bundle_dir, const std::string& word_text, const Options& opt) {
  namespace fs = std::filesystem;
  auto p = parse_presentation(read_file((fs::path(bundle_dir) / "presentation.pres").string()));
  Cfg wp = parse_cfg(read_file((fs::path(bundle_dir) / "built.cfg").string()));
  Word w = parse_marker_word(word_text, p);
  bool in = member(wp, w);
  if (json_out(opt)) {
    json j;
    j["member"] = in;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("%s\n", in ? "true" : "false");
  }
  return kExitDefinite;
}

int cmd_ratmem(const std::string& bundle_dir, const std::string& word_text,
               const std::string& nfa_path, const Options& opt) {
  namespace fs = std::filesystem;
  auto p = parse_presentation(read_file((fs::path(bundle_dir) / "presentation.pres").string()));
  Cfg wp = parse_cfg(read_file((fs::path(bundle_dir) / "built.cfg").string()));
  Word w = parse_plain_word(word_text, p);
  Nfa r = parse_nfa(read_file(nfa_path));
  bool in = rational_membership(wp, w, r, opt.limits);
  if (json_out(opt)) {
    json j;
    j["member"] = in;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("%s\n", in ? "true" : "false");
  }
  return kExitDefinite;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weak compression toolkit for finitely presented monoids"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--maxlen", opt.maxlen, "bounded-search length bound");
  app.add_option("--maxstates", opt.maxstates, "bounded-search state bound");
  app.add_option("--maxrules", opt.maxrules, "completion rule bound");
  app.add_option("--max-productions", opt.limits.max_productions, "grammar production guard");
  app.add_option("--max-dfa-states", opt.limits.max_dfa_states, "determinization state guard");

  std::string path, word_u, word_v, base = "auto", out_dir = "bundle", nfa_path;
  bool whole_chain = false;
  std::size_t probe_bound = 8;

  auto* classify_cmd = app.add_subcommand("classify", "structural classification");
  classify_cmd->add_option("presentation", path)->required();

  auto* compress_cmd = app.add_subcommand("compress", "weak compression");
  compress_cmd->add_option("presentation", path)->required();
  compress_cmd->add_flag("--chain", whole_chain, "iterate to the incompressible terminal");

  auto* eq_cmd = app.add_subcommand("eq", "decide word equality");
  eq_cmd->add_option("presentation", path)->required();
  eq_cmd->add_option("u", word_u)->required();
  eq_cmd->add_option("v", word_v)->required();
  eq_cmd->add_option("--base", base, "auto | bfs | complete | grammar:FILE");

  auto* idem_cmd = app.add_subcommand("idempotent", "non-trivial idempotent test");
  idem_cmd->add_option("presentation", path)->required();
  idem_cmd->add_option("--probe-bound", probe_bound, "right-cancellativity probe bound");

  auto* build_cmd = app.add_subcommand("build-wp", "build a word-problem grammar bundle");
  build_cmd->add_option("presentation", path)->required();
  build_cmd->add_option("--base-wp", base, "auto or a grammar file for the chain terminal");
  build_cmd->add_option("--out", out_dir, "bundle output directory");

  auto* member_cmd = app.add_subcommand("member", "query a built bundle with u#v");
  member_cmd->add_option("bundle", path)->required();
  member_cmd->add_option("word", word_u)->required();

  auto* ratmem_cmd = app.add_subcommand("ratmem", "rational subset membership");
  ratmem_cmd->add_option("bundle", path)->required();
  ratmem_cmd->add_option("word", word_u)->required();
  ratmem_cmd->add_option("nfa", nfa_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) return cmd_classify(path, opt);
    if (compress_cmd->parsed()) return cmd_compress(path, whole_chain, opt);
    if (eq_cmd->parsed()) return cmd_eq(path, word_u, word_v, base, opt);
    if (idem_cmd->parsed()) return cmd_idempotent(path, probe_bound, opt);
    if (build_cmd->parsed()) return cmd_build_wp(path, base, out_dir, opt);
    if (member_cmd->parsed()) return cmd_member(path, word_u, opt);
    if (ratmem_cmd->parsed()) return cmd_ratmem(path, word_u, nfa_path, opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
