#ifndef WCM_WORDS_HPP
#define WCM_WORDS_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wcm {

/// An interned symbol. Symbols are process-global: two symbols with the
/// same spelling always compare equal. Multi-character spellings are
/// fine ("gamma_xyx", "a1"); comparison order is interning order, so
/// ordered containers are deterministic within a run but alphabets carry
/// their own declared order.
struct Symbol {
  std::uint32_t id = 0;
  friend constexpr auto operator<=>(Symbol, Symbol) = default;
};

Symbol intern_symbol(std::string_view spelling);
const std::string& symbol_name(Symbol s);

/// The word-problem marker '#'. Reserved: never a member of an Alphabet.
Symbol marker_symbol();

/// Internal decorated symbols (diamonds, primed copies) all start with
/// the reserved diamond character, so they can never collide with user
/// alphabets.
Symbol diamond_symbol();         // "◊"
Symbol diamond_right_symbol();   // "◊r"
Symbol primed_symbol(Symbol s);  // "◊p:" + name
bool is_reserved_spelling(std::string_view spelling);

using Word = std::vector<Symbol>;

Word reverse_word(const Word& w);
bool starts_with(const Word& w, const Word& prefix);
bool ends_with(const Word& w, const Word& suffix);
/// All start indices of `factor` in `w` (naive scan; factor non-empty).
std::vector<std::size_t> occurrences(const Word& w, const Word& factor);
Word subword(const Word& w, std::size_t begin, std::size_t end);
Word concat(const Word& a, const Word& b);

/// Renders a word for display: letters are concatenated when every
/// spelling is a single character, otherwise space-separated. The empty
/// word prints as "1".
std::string word_str(const Word& w);
Word make_word(std::initializer_list<const char*> letters);

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    for (Symbol s : w) {
      h ^= s.id;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct SymbolHash {
  std::size_t operator()(Symbol s) const { return std::hash<std::uint32_t>{}(s.id); }
};

/// A finite ordered alphabet. Construction rejects duplicates and the
/// reserved marker/diamond spellings.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Symbol> letters);

  const std::vector<Symbol>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool contains(Symbol s) const;
  bool contains_word(const Word& w) const;
  /// Position in declared order; letters are few, linear scan is fine.
  std::optional<std::size_t> index_of(Symbol s) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<Symbol> letters_;
};

Alphabet make_alphabet(std::initializer_list<const char*> letters);

}  // namespace wcm

#endif
