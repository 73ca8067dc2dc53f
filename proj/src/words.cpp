#include "wcm/words.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace wcm {

namespace {

struct SymbolTable {
  std::mutex mutex;
  std::deque<std::string> names;  // stable addresses for symbol_name references
  std::unordered_map<std::string, std::uint32_t> index;

  std::uint32_t intern(std::string_view spelling) {
    std::lock_guard<std::mutex> lock(mutex);
    std::string key(spelling);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    names.push_back(key);
    std::uint32_t id = static_cast<std::uint32_t>(names.size() - 1);
    index.emplace(std::move(key), id);
    return id;
  }
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

}  // namespace

Symbol intern_symbol(std::string_view spelling) {
  if (spelling.empty()) throw std::invalid_argument("empty symbol spelling");
  return Symbol{table().intern(spelling)};
}

const std::string& symbol_name(Symbol s) {
  SymbolTable& t = table();
  std::lock_guard<std::mutex> lock(t.mutex);
  return t.names.at(s.id);
}

Symbol marker_symbol() {
  static const Symbol m = Symbol{table().intern("#")};
  return m;
}

Symbol diamond_symbol() {
  static const Symbol d = Symbol{table().intern("\xE2\x97\x8A")};
  return d;
}

Symbol diamond_right_symbol() {
  static const Symbol d = Symbol{table().intern("\xE2\x97\x8Ar")};
  return d;
}

Symbol primed_symbol(Symbol s) {
  return intern_symbol("\xE2\x97\x8Ap:" + symbol_name(s));
}

bool is_reserved_spelling(std::string_view spelling) {
  if (spelling == "#" || spelling == "1") return true;
  return spelling.rfind("\xE2\x97\x8A", 0) == 0;  // diamond prefix
}

Word reverse_word(const Word& w) { return Word(w.rbegin(), w.rend()); }

bool starts_with(const Word& w, const Word& prefix) {
  if (prefix.size() > w.size()) return false;
  return std::equal(prefix.begin(), prefix.end(), w.begin());
}

bool ends_with(const Word& w, const Word& suffix) {
  if (suffix.size() > w.size()) return false;
  return std::equal(suffix.rbegin(), suffix.rend(), w.rbegin());
}

std::vector<std::size_t> occurrences(const Word& w, const Word& factor) {
  std::vector<std::size_t> out;
  if (factor.empty() || factor.size() > w.size()) return out;
  for (std::size_t i = 0; i + factor.size() <= w.size(); ++i) {
    if (std::equal(factor.begin(), factor.end(), w.begin() + static_cast<std::ptrdiff_t>(i)))
      out.push_back(i);
  }
  return out;
}

Word subword(const Word& w, std::size_t begin, std::size_t end) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(begin),
              w.begin() + static_cast<std::ptrdiff_t>(end));
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  bool single = true;
  for (Symbol s : w)
    if (symbol_name(s).size() != 1) single = false;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !single) out += ' ';
    out += symbol_name(w[i]);
  }
  return out;
}

Word make_word(std::initializer_list<const char*> letters) {
  Word w;
  for (const char* l : letters) w.push_back(intern_symbol(l));
  return w;
}

Alphabet::Alphabet(std::vector<Symbol> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw std::invalid_argument("alphabet must be non-empty");
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (is_reserved_spelling(symbol_name(letters_[i])))
      throw std::invalid_argument("reserved symbol in alphabet: " + symbol_name(letters_[i]));
    for (std::size_t j = i + 1; j < letters_.size(); ++j)
      if (letters_[i] == letters_[j])
        throw std::invalid_argument("duplicate letter in alphabet: " + symbol_name(letters_[i]));
  }
}

bool Alphabet::contains(Symbol s) const {
  for (Symbol l : letters_)
    if (l == s) return true;
  return false;
}

bool Alphabet::contains_word(const Word& w) const {
  for (Symbol s : w)
    if (!contains(s)) return false;
  return true;
}

std::optional<std::size_t> Alphabet::index_of(Symbol s) const {
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i] == s) return i;
  return std::nullopt;
}

Alphabet make_alphabet(std::initializer_list<const char*> letters) {
  std::vector<Symbol> v;
  for (const char* l : letters) v.push_back(intern_symbol(l));
  return Alphabet(std::move(v));
}

}  // namespace wcm
