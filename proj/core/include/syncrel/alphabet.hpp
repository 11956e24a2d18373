#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace syncrel {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

inline constexpr Letter kEpsilon = std::numeric_limits<Letter>::max();

// Role of a letter in a synchronization word: produced while reading input,
// or while emitting output.
enum class Role : std::uint8_t { Input, Output };

// Immutable set of letter names; letters are dense indices into `names`.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Letter a) const;
  std::optional<Letter> find(const std::string& name) const;

  // Structural equality: same names in the same order.
  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

  Word parseWord(const std::string& text) const;        // space-separated or single-char tokens
  std::string renderWord(const Word& word) const;       // concatenated names

  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
};

// A combined alphabet for synchronization words: input letters first
// (indices 0..nInputs-1), then output letters. Input and output names may
// coincide; tokens are disambiguated with `i:`/`o:` prefixes when they do.
class TaggedAlphabet {
 public:
  TaggedAlphabet() = default;
  TaggedAlphabet(std::vector<std::string> inputNames, std::vector<std::string> outputNames);

  std::size_t size() const noexcept { return combined_.size(); }
  std::size_t numInputs() const noexcept { return nInputs_; }
  std::size_t numOutputs() const noexcept { return combined_.size() - nInputs_; }

  Role role(Letter a) const;
  bool isInput(Letter a) const { return role(a) == Role::Input; }
  bool isOutput(Letter a) const { return role(a) == Role::Output; }

  // View of the underlying combined alphabet (for plain automaton machinery).
  const Alphabet& combined() const noexcept { return combined_; }

  // The projected alphabets. Input letter k of combined() maps to letter k of
  // inputAlphabet(); output letter nInputs+k maps to letter k of outputAlphabet().
  Alphabet inputAlphabet() const;
  Alphabet outputAlphabet() const;

  // Letter of the combined alphabet for input letter k / output letter k.
  Letter inputLetter(std::size_t k) const;
  Letter outputLetter(std::size_t k) const;

  // Projection-side index of a combined letter (input index or output index).
  std::size_t projectedIndex(Letter a) const;

  // Token syntax: `i:name` / `o:name` always accepted; a bare `name` is
  // accepted when unambiguous (appears on exactly one side).
  std::optional<Letter> parseToken(const std::string& token) const;
  std::string displayToken(Letter a) const;  // bare when unambiguous, tagged otherwise

  Word parseWord(const std::string& text) const;
  std::string renderWord(const Word& word) const;

  friend bool operator==(const TaggedAlphabet& a, const TaggedAlphabet& b) {
    return a.nInputs_ == b.nInputs_ && a.combined_ == b.combined_;
  }

 private:
  Alphabet combined_;
  std::size_t nInputs_ = 0;
};

// The default two-letter tagged alphabet used throughout examples: input {a}, output {b}.
TaggedAlphabet defaultTagged();

}  // namespace syncrel
