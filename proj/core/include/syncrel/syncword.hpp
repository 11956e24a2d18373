#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "syncrel/alphabet.hpp"
#include "syncrel/nfa.hpp"

namespace syncrel {

// Measures of how far a synchronization word strays from a straight
// input/output interleaving.
//
//  - lag: maximum over prefixes of |#inputs - #outputs|.
//  - shift: number of adjacent positions where the role changes.
//  - shiftlag: largest n such that n consecutive entries of the ordered
//    shift-position list are all n-lagged (the prefix ending at each such
//    position has |#inputs - #outputs| >= n).
struct WordMetrics {
  std::size_t lag = 0;
  std::size_t shift = 0;
  std::size_t shiftlag = 0;
};
WordMetrics wordMetrics(const TaggedAlphabet& alphabet, const Word& w);

// Projections to the input/output side, in projected letter indices.
Word inputProjection(const TaggedAlphabet& alphabet, const Word& w);
Word outputProjection(const TaggedAlphabet& alphabet, const Word& w);
std::pair<Word, Word> pairOf(const TaggedAlphabet& alphabet, const Word& w);

// Does `control` contain every word of `language`?
bool isControlled(const Nfa& language, const Nfa& control);

// Pumping scheme demonstrating an unbounded metric: the words
// prefix cycle^j mid cycle2^k suffix are all in the language, for all j, k
// (mid/cycle2 are empty when a single pumped cycle suffices).
struct PumpWitness {
  Word prefix, cycle, mid, cycle2, suffix;
};

struct FinitenessAnalysis {
  bool lagFinite = true;
  bool shiftFinite = true;
  bool shiftlagFinite = true;
  std::optional<PumpWitness> lagWitness, shiftWitness, shiftlagWitness;
};

// Decide finiteness of each metric over all words of the language, with a
// pumping witness for every unbounded metric.
FinitenessAnalysis analyzeFiniteness(const TaggedAlphabet& alphabet, const Nfa& sync);

// Per-state flags for a trimmed minimal DFA: does the state's residual
// language have finite shift? The flagged region is absorbing: transitions
// from a finite-shift state only reach finite-shift states.
std::vector<bool> finiteShiftStates(const TaggedAlphabet& alphabet, const Dfa& minimal);

// Language of first entries into the finite-shift region: prefixes whose run
// ends in a finite-shift state with all earlier states outside the region.
// Empty language when `minimal` accepts nothing; {eps} when the initial state
// is already in the region.
Nfa firstFiniteShiftEntry(const TaggedAlphabet& alphabet, const Dfa& minimal,
                          const std::vector<bool>& fs);
Nfa firstFiniteShiftEntry(const TaggedAlphabet& alphabet, const Nfa& sync);

// Width of the lagged zone: the largest |#inputs - #outputs| reachable while
// the run has not yet entered the finite-shift region. Requires finite
// shiftlag (error NotFiniteShiftlag otherwise); first-entry prefixes then
// have lag at most this width plus one.
std::size_t laggedZoneWidth(const TaggedAlphabet& alphabet, const Nfa& sync);

enum class SyncClass {
  LagAndShiftFinite,
  LagFinite,
  ShiftFinite,
  ShiftlagFinite,
  Unbounded,
};

struct SyncClassification {
  FinitenessAnalysis finiteness;
  SyncClass headline = SyncClass::Unbounded;
  Dfa minimal;                       // trimmed canonical minimal DFA of the language
  std::vector<bool> fsStates;        // finite-shift flags per minimal-DFA state
  std::optional<std::size_t> gamma;  // lagged zone width; present iff shiftlag is finite
};

SyncClassification classify(const TaggedAlphabet& alphabet, const Nfa& sync);

}  // namespace syncrel
