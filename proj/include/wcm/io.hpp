#ifndef WCM_IO_HPP
#define WCM_IO_HPP

#include <string>

#include "wcm/cfg.hpp"
#include "wcm/nfa.hpp"
#include "wcm/presentation.hpp"
#include "wcm/rewriting.hpp"

namespace wcm {

/// Line-based UTF-8 text formats. `#` at column 0 starts a comment line;
/// `1` denotes the empty word. Serializers emit exactly the format the
/// parsers accept, and round-trip bit-exactly.
///
/// Presentation:        gens: x y
///                      rel: xyyxxxyxxyyxxxy = xy
/// Rewrite system:      gens: a b
///                      rule: aba -> 1
/// Grammar:             start: S
///                      S -> a S a | #
/// Automaton:           states: 3
///                      initial: 0
///                      accepting: 2
///                      trans: 0 a 1        (label `1` = epsilon move)

struct parse_error : std::runtime_error {
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
  std::size_t line_no;
};

MonoidPresentation parse_presentation(const std::string& text);
std::string serialize_presentation(const MonoidPresentation& p);

RewriteSystem parse_rewrite_system(const std::string& text);
std::string serialize_rewrite_system(const RewriteSystem& r);

Cfg parse_cfg(const std::string& text);
std::string serialize_cfg(const Cfg& g);

Nfa parse_nfa(const std::string& text);
std::string serialize_nfa(const Nfa& n);

/// Tokenizes a word against a known letter set: whitespace-separated
/// tokens, each either a letter or an unambiguous concatenation of
/// letters ("xyx" over {x,y}).
Word parse_word(const std::string& text, const std::vector<Symbol>& letters);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace wcm

#endif
