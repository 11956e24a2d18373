#include "syncrel/regex.hpp"

#include <cctype>
#include <functional>

#include "syncrel/errors.hpp"

namespace syncrel {

namespace {

// Longest-match letter recognizer: returns the letter and how many characters
// of `text` starting at `pos` it consumed.
using LetterMatcher =
    std::function<std::optional<std::pair<Letter, std::size_t>>(const std::string&, std::size_t)>;

class Parser {
 public:
  Parser(const std::string& text, const Alphabet& alphabet, LetterMatcher matcher)
      : text_(text), alphabet_(alphabet), matcher_(std::move(matcher)) {}

  Nfa parse() {
    skipSpace();
    if (pos_ == text_.size()) throwParse("empty expression");
    Nfa result = parseUnion();
    skipSpace();
    if (pos_ != text_.size()) fail("unexpected character");
    return result;
  }

 private:
  Nfa parseUnion() {
    Nfa result = parseConcat();
    while (true) {
      skipSpace();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '|')) {
        ++pos_;
        result = unionOf(result, parseConcat());
      } else {
        return result;
      }
    }
  }

  Nfa parseConcat() {
    Nfa result = parseFactor();
    while (true) {
      skipSpace();
      if (pos_ == text_.size() || text_[pos_] == ')' || text_[pos_] == '+' || text_[pos_] == '|')
        return result;
      result = concatOf(result, parseFactor());
    }
  }

  Nfa parseFactor() {
    Nfa result = parseAtom();
    while (true) {
      skipSpace();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        result = starOf(result);
      } else if (pos_ + 1 < text_.size() && text_[pos_] == '^' && text_[pos_ + 1] == '+') {
        pos_ += 2;
        result = plusOf(result);
      } else {
        return result;
      }
    }
  }

  Nfa parseAtom() {
    skipSpace();
    if (pos_ == text_.size()) fail("expected an atom");
    if (text_[pos_] == '(') {
      ++pos_;
      Nfa inner = parseUnion();
      skipSpace();
      if (pos_ == text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (text_.compare(pos_, 3, "eps") == 0) {
      pos_ += 3;
      return epsilonNfa(alphabet_);
    }
    if (auto match = matcher_(text_, pos_)) {
      pos_ += match->second;
      return wordNfa(alphabet_, {match->first});
    }
    fail("expected a letter, 'eps', or '('");
  }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) {
    throwParse(what + " at position " + std::to_string(pos_) + " in '" + text_ + "'");
  }

  const std::string& text_;
  const Alphabet& alphabet_;
  LetterMatcher matcher_;
  std::size_t pos_ = 0;
};

}  // namespace

Nfa parseRegex(const std::string& text, const Alphabet& alphabet) {
  auto matcher = [&alphabet](const std::string& s,
                             std::size_t pos) -> std::optional<std::pair<Letter, std::size_t>> {
    std::optional<std::pair<Letter, std::size_t>> best;
    for (std::size_t k = 0; k < alphabet.size(); ++k) {
      const std::string& name = alphabet.name(static_cast<Letter>(k));
      if (s.compare(pos, name.size(), name) == 0)
        if (!best || name.size() > best->second) best = {{static_cast<Letter>(k), name.size()}};
    }
    return best;
  };
  return Parser(text, alphabet, matcher).parse();
}

Nfa parseRegex(const std::string& text, const TaggedAlphabet& alphabet) {
  auto matcher = [&alphabet](const std::string& s,
                             std::size_t pos) -> std::optional<std::pair<Letter, std::size_t>> {
    // Role-forcing prefixes first, then bare names (which must be unambiguous).
    std::optional<std::pair<Letter, std::size_t>> best;
    for (Letter a = 0; a < alphabet.size(); ++a) {
      std::string bare = alphabet.displayToken(a);  // tagged form when ambiguous
      std::string tagged = (alphabet.isInput(a) ? "i:" : "o:") +
                           (bare.rfind("i:", 0) == 0 || bare.rfind("o:", 0) == 0 ? bare.substr(2)
                                                                                 : bare);
      for (const std::string& candidate : {tagged, bare}) {
        if (s.compare(pos, candidate.size(), candidate) != 0) continue;
        if (!best || candidate.size() > best->second) best = {{a, candidate.size()}};
      }
    }
    return best;
  };
  return Parser(text, alphabet.combined(), matcher).parse();
}

}  // namespace syncrel
