#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "syncrel/alphabet.hpp"
#include "syncrel/autorel.hpp"
#include "syncrel/definability.hpp"
#include "syncrel/nfa.hpp"

namespace syncrel {

// --- transducers ---

// One step of a finite transducer: read `input` (a word over the input
// alphabet, possibly empty), emit `output` (over the output alphabet), move
// from `from` to `to`.
struct NftTransition {
  State from;
  Word input;
  Word output;
  State to;
};

// Nondeterministic finite transducer. An accepting run additionally emits
// the final output of its halting state; `finalOutput` has an entry for
// every final state and for no other state.
struct Nft {
  TaggedAlphabet alphabet;
  std::size_t numStates = 1;
  State initial = 0;
  std::vector<NftTransition> transitions;
  std::vector<bool> finals = {false};
  std::map<State, Word> finalOutput;
};

// Step of an input-deterministic transducer: exactly one input letter.
struct SubseqTransition {
  State from;
  Letter input;  // letter of the input alphabet
  Word output;   // over the output alphabet
  State to;
};

// Subsequential transducer: at most one transition per (state, input letter)
// pair, so it computes a partial function from input words to output words.
struct SubseqTransducer {
  TaggedAlphabet alphabet;
  std::size_t numStates = 1;
  State initial = 0;
  std::vector<SubseqTransition> transitions;
  std::vector<bool> finals = {false};
  std::map<State, Word> finalOutput;
};

// The output of `f` on `u`: the concatenated step outputs followed by the
// final output of the halting state, or nullopt when the run dies on a
// missing transition or halts in a non-final state.
std::optional<Word> evalSubseq(const SubseqTransducer& f, const Word& u);

// The synchronization language of a transducer: every accepting transition
// sequence spells its input and output words in step order, followed by the
// final output of the halting state. The language captures the transducer's
// relation together with the interleaving discipline its runs obey.
Nfa syncLanguageOfTransducer(const Nft& t);
Nfa syncLanguageOfTransducer(const SubseqTransducer& f);

// The converse reading: a transducer with one single-letter step per edge of
// `sync`, whose synchronization language is exactly `sync`.
Nft transducerFromSync(const TaggedAlphabet& alphabet, const Nfa& sync);

// Does every synchronization the transducer produces stay inside the control
// language `T`?
bool isTControlled(const Nft& t, const Nfa& T);
bool isTControlled(const SubseqTransducer& f, const Nfa& T);

// --- distance automata ---

// Cost of traversing one transition. Words whose accepting runs all pass an
// infinite edge stay in the language but have no finite distance.
enum class Distance : std::uint8_t { Zero, One, Infinite };

struct WeightedTransition {
  State from;
  Letter letter;
  State to;
  Distance d = Distance::Zero;
  friend auto operator<=>(const WeightedTransition&, const WeightedTransition&) = default;
};

// Finite automaton whose transitions carry a cost. The distance of a word is
// the cheapest accepting run on it. Invariant maintained by the library:
// `transitions` is sorted, with one entry (the cheapest) per edge triple.
struct DistanceAutomaton {
  Alphabet alphabet;
  std::size_t numStates = 1;
  State initial = 0;
  std::vector<WeightedTransition> transitions;
  std::vector<bool> finals = {false};

  void addTransition(State from, Letter letter, State to, Distance d) {
    transitions.push_back({from, letter, to, d});
  }
  void normalize();
};

// The language of the automaton with costs forgotten.
Nfa underlyingLanguage(const DistanceAutomaton& b);

inline constexpr std::size_t kInfiniteDistance = std::numeric_limits<std::size_t>::max();

// Cost of the cheapest accepting run on `w`; kInfiniteDistance when no
// accepting run with finite cost exists (in particular when w is rejected).
std::size_t distanceOfWord(const DistanceAutomaton& b, const Word& w);

// The distance automaton of a synchronization language: same states, input
// letters only. An edge costs nothing when the language moves on the input
// letter alone, and one unit when the move also consumes an adjacent block
// of output letters (the block following the input letter, or the block a
// run starts with folded into its first input letter). The language becomes
// the domain of the relation of `sync`, and the distance of a domain word
// counts the fewest output blocks any of its synchronizations needs.
DistanceAutomaton buildDistanceAutomaton(const TaggedAlphabet& alphabet, const Nfa& sync);

// Is sup { distance(w) : w accepted } finite? Decided on the matrix monoid
// of the automaton's letters over costs {zero, bounded, unbounded, none},
// closed under products and under iteration of idempotents; the supremum is
// infinite exactly when some closure element connects the initial state to a
// final one at the unbounded cost.
bool isLimited(const DistanceAutomaton& b);

// The exact supremum of word distances. Preconditions: isLimited
// (NotLimited). Internal divergence past the structural growth cap is a
// defect, not an input error.
std::size_t boundedDistanceValue(const DistanceAutomaton& b);

// --- uniformization by recognizable relations ---

// Does a recognizable relation select exactly one output for every domain
// word of the relation of `sync`? Equivalent to boundedness of the distance
// automaton of `sync`: a selection with finitely many output choices exists
// exactly when output lengths can be bounded across the whole domain.
Verdict hasRecognizableUniformization(const TaggedAlphabet& alphabet, const Nfa& sync);

// A recognizable uniformizer: pairwise-disjoint regular input cells, each
// paired with the single output chosen for its words. Every domain word lies
// in exactly one cell, the chosen output is related to it by `sync`, and it
// is the length-lexicographically least such output. Errors:
// NoRecognizableUniformization when distances are unbounded.
RecognizableDecomposition synthesizeRecognizableUniformizer(const TaggedAlphabet& alphabet,
                                                            const Nfa& sync);

// Does an input-deterministic transducer whose synchronization language has
// finite shift uniformize the relation of `sync`? The answer coincides with
// hasRecognizableUniformization: reading the whole input before emitting
// turns a recognizable uniformizer into such a transducer, and conversely.
Verdict hasFiniteShiftSubseqUniformization(const TaggedAlphabet& alphabet, const Nfa& sync);

// Turn a uniformizer with singleton output cells into an input-deterministic
// transducer: run the input cells' automata in parallel, emit nothing while
// reading, and attach each cell's output word as the final output of its
// accepting states. Errors: NotFunctionalDecomposition when an output cell
// is not a single word or input cells overlap.
SubseqTransducer uniformizerToSubseq(const RecognizableDecomposition& dec);

// Does `f` uniformize the relation of `sync`? Checks that the domains agree
// and that the graph of `f` is included in the relation. Both checks run on
// relation automata, so the synchronization languages of `f` and `sync` must
// have finite shiftlag (Unsupported otherwise).
bool verifyUniformizer(const SubseqTransducer& f, const Nfa& sync);

}  // namespace syncrel
