#include "syncrel/alphabet.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "syncrel/errors.hpp"

namespace syncrel {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throwParse("empty letter name in alphabet");
    if (!seen.insert(n).second) throwParse("duplicate letter name '" + n + "' in alphabet");
  }
}

const std::string& Alphabet::name(Letter a) const {
  require(a < names_.size(), "letter index out of range");
  return names_[a];
}

std::optional<Letter> Alphabet::find(const std::string& name) const {
  for (std::size_t k = 0; k < names_.size(); ++k)
    if (names_[k] == name) return static_cast<Letter>(k);
  return std::nullopt;
}

namespace {

std::vector<std::string> splitTokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

bool allSingleChar(const std::vector<std::string>& names) {
  return std::all_of(names.begin(), names.end(), [](const std::string& n) { return n.size() == 1; });
}

}  // namespace

Word Alphabet::parseWord(const std::string& text) const {
  Word word;
  auto tokens = splitTokens(text);
  // A single unbroken token over a single-character alphabet reads letter by letter.
  if (tokens.size() == 1 && tokens[0].size() > 1 && allSingleChar(names_)) {
    for (char c : tokens[0]) {
      auto a = find(std::string(1, c));
      if (!a) throwParse("unknown letter '" + std::string(1, c) + "' in word");
      word.push_back(*a);
    }
    return word;
  }
  for (const auto& t : tokens) {
    auto a = find(t);
    if (!a) throwParse("unknown letter '" + t + "' in word");
    word.push_back(*a);
  }
  return word;
}

std::string Alphabet::renderWord(const Word& word) const {
  if (word.empty()) return "eps";
  std::string out;
  bool compact = allSingleChar(names_);
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (!compact && k > 0) out += ' ';
    out += name(word[k]);
  }
  return out;
}

TaggedAlphabet::TaggedAlphabet(std::vector<std::string> inputNames,
                               std::vector<std::string> outputNames)
    : nInputs_(inputNames.size()) {
  std::vector<std::string> combined;
  combined.reserve(inputNames.size() + outputNames.size());
  std::unordered_set<std::string> inputs(inputNames.begin(), inputNames.end());
  std::unordered_set<std::string> outputs(outputNames.begin(), outputNames.end());
  if (inputs.size() != inputNames.size()) throwParse("duplicate input letter name");
  if (outputs.size() != outputNames.size()) throwParse("duplicate output letter name");
  for (auto& n : inputNames) combined.push_back(inputs.count(n) && outputs.count(n) ? "i:" + n : n);
  for (auto& n : outputNames) combined.push_back(inputs.count(n) && outputs.count(n) ? "o:" + n : n);
  // Combined names are unique by construction; store the raw (untagged) names
  // separately by re-deriving them on demand from the tagged combined form.
  combined_ = Alphabet(std::move(combined));
}

namespace {

// Strip a leading "i:"/"o:" disambiguation tag from a combined-alphabet name.
std::string rawName(const std::string& combinedName) {
  if (combinedName.rfind("i:", 0) == 0 || combinedName.rfind("o:", 0) == 0)
    return combinedName.substr(2);
  return combinedName;
}

}  // namespace

Role TaggedAlphabet::role(Letter a) const {
  require(a < combined_.size(), "letter index out of range");
  return a < nInputs_ ? Role::Input : Role::Output;
}

Alphabet TaggedAlphabet::inputAlphabet() const {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < nInputs_; ++k) names.push_back(rawName(combined_.name(static_cast<Letter>(k))));
  return Alphabet(std::move(names));
}

Alphabet TaggedAlphabet::outputAlphabet() const {
  std::vector<std::string> names;
  for (std::size_t k = nInputs_; k < combined_.size(); ++k)
    names.push_back(rawName(combined_.name(static_cast<Letter>(k))));
  return Alphabet(std::move(names));
}

Letter TaggedAlphabet::inputLetter(std::size_t k) const {
  require(k < nInputs_, "input letter index out of range");
  return static_cast<Letter>(k);
}

Letter TaggedAlphabet::outputLetter(std::size_t k) const {
  require(nInputs_ + k < combined_.size(), "output letter index out of range");
  return static_cast<Letter>(nInputs_ + k);
}

std::size_t TaggedAlphabet::projectedIndex(Letter a) const {
  require(a < combined_.size(), "letter index out of range");
  return a < nInputs_ ? a : a - nInputs_;
}

std::optional<Letter> TaggedAlphabet::parseToken(const std::string& token) const {
  bool forcedInput = token.rfind("i:", 0) == 0;
  bool forcedOutput = token.rfind("o:", 0) == 0;
  std::string raw = (forcedInput || forcedOutput) ? token.substr(2) : token;
  std::optional<Letter> found;
  for (std::size_t k = 0; k < combined_.size(); ++k) {
    if (rawName(combined_.name(static_cast<Letter>(k))) != raw) continue;
    bool isIn = k < nInputs_;
    if (forcedInput && !isIn) continue;
    if (forcedOutput && isIn) continue;
    if (found) return std::nullopt;  // ambiguous bare token
    found = static_cast<Letter>(k);
  }
  return found;
}

std::string TaggedAlphabet::displayToken(Letter a) const {
  return combined_.name(a);  // already tagged exactly when the raw name is ambiguous
}

Word TaggedAlphabet::parseWord(const std::string& text) const {
  Word word;
  std::istringstream in(text);
  std::string tok;
  std::vector<std::string> tokens;
  while (in >> tok) tokens.push_back(tok);
  bool singleChars = true;
  for (std::size_t k = 0; k < combined_.size(); ++k)
    singleChars = singleChars && rawName(combined_.name(static_cast<Letter>(k))).size() == 1;
  if (tokens.size() == 1 && tokens[0].size() > 1 && singleChars &&
      tokens[0].find(':') == std::string::npos) {
    for (char c : tokens[0]) {
      auto a = parseToken(std::string(1, c));
      if (!a) throwParse("unknown or ambiguous letter '" + std::string(1, c) + "' in word");
      word.push_back(*a);
    }
    return word;
  }
  for (const auto& t : tokens) {
    auto a = parseToken(t);
    if (!a) throwParse("unknown or ambiguous letter '" + t + "' in word");
    word.push_back(*a);
  }
  return word;
}

std::string TaggedAlphabet::renderWord(const Word& word) const {
  if (word.empty()) return "eps";
  bool compact = true;
  for (Letter a : word) compact = compact && combined_.name(a).size() == 1;
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (!compact && k > 0) out += ' ';
    out += displayToken(word[k]);
  }
  return out;
}

TaggedAlphabet defaultTagged() { return TaggedAlphabet({"a"}, {"b"}); }

}  // namespace syncrel
