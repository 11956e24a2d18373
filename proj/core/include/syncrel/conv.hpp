#pragma once

#include <map>
#include <optional>
#include <utility>

#include "syncrel/alphabet.hpp"
#include "syncrel/nfa.hpp"

namespace syncrel {

// Alphabet of input/output convolutions: pairs over (inputs + pad) x
// (outputs + pad) minus the all-pad pair. A word over this alphabet spells a
// pair of words read in lockstep, the shorter one padded at the end.
class ConvAlphabet {
 public:
  ConvAlphabet() = default;
  explicit ConvAlphabet(const TaggedAlphabet& base);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const TaggedAlphabet& base() const noexcept { return base_; }

  // Pad sentinels: one past the last real index of each side.
  std::size_t padIn() const noexcept { return padIn_; }
  std::size_t padOut() const noexcept { return padOut_; }
  Letter make(std::size_t inIdx, std::size_t outIdx) const;
  std::pair<std::size_t, std::size_t> split(Letter c) const;
  bool hasIn(Letter c) const { return split(c).first != padIn_; }
  bool hasOut(Letter c) const { return split(c).second != padOut_; }
  // The combined-alphabet expansion of a convolution letter: input half first.
  Word expansion(Letter c) const;

 private:
  TaggedAlphabet base_;
  Alphabet alphabet_;
  std::size_t padIn_ = 0, padOut_ = 0;
};

// conv(u, v): u over the input alphabet, v over the output alphabet.
Word convolve(const ConvAlphabet& conv, const Word& u, const Word& v);
// Inverse: collect the non-pad halves.
std::pair<Word, Word> deconvolve(const ConvAlphabet& conv, const Word& w);

// Well-formed convolutions: pads appear only as a suffix of one track.
Nfa wellFormedConv(const ConvAlphabet& conv);

// Are two synchronization words extendable to the same input/output pair?
// Requires |x| == |y|; the projections must then be prefix-comparable with
// opposite tracks ahead.
bool compatibleWords(const TaggedAlphabet& alphabet, const Word& x, const Word& y);

// Shortest completions (u, v) with the pair of x·u equal to the pair of y·v.
// u is what x still owes, v what y owes; both homogeneous of opposite roles.
// Empty optional when x and y are incompatible.
std::optional<std::pair<Word, Word>> diffWords(const TaggedAlphabet& alphabet, const Word& x,
                                               const Word& y);

// Lockstep pair alphabet: one letter from each of two synchronization words
// read in parallel.
Alphabet lockstepAlphabet(const TaggedAlphabet& alphabet);
Letter lockstepLetter(const TaggedAlphabet& alphabet, Letter x, Letter y);
std::pair<Letter, Letter> lockstepSplit(const TaggedAlphabet& alphabet, Letter c);

// Materialized bounded-difference automaton over the lockstep alphabet.
// State 0 is the balanced pair; every state is accepting; a missing
// transition means the prefixes turned incompatible or the difference
// outgrew the bound.
Dfa differenceDfa(const TaggedAlphabet& alphabet, std::size_t k);

// Bounded-difference tracker: reads two synchronization words in lockstep and
// maintains diffWords of the prefixes, as long as it stays at most k per
// side. States are interned on demand; state 0 is the balanced pair.
class DiffTracker {
 public:
  DiffTracker(const TaggedAlphabet& alphabet, std::size_t k);

  static constexpr int kDead = -1;
  int initial() const noexcept { return 0; }
  // Advance by one letter on each track; kDead on incompatibility or when the
  // pending difference would exceed the bound.
  int step(int state, Letter xLetter, Letter yLetter);
  // The pending pair (what x owes, what y owes), words over the combined alphabet.
  const std::pair<Word, Word>& pending(int state) const;
  bool balanced(int state) const noexcept { return state == 0; }
  std::size_t bound() const noexcept { return k_; }
  std::size_t numStates() const noexcept { return states_.size(); }

 private:
  TaggedAlphabet alphabet_;
  std::size_t k_;
  std::vector<std::pair<Word, Word>> states_;
  std::map<std::pair<Word, Word>, int> index_;
  int intern(std::pair<Word, Word> s);
};

}  // namespace syncrel
