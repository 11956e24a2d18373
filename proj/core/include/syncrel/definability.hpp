#pragma once

#include <optional>
#include <string>
#include <utility>

#include "syncrel/autorel.hpp"
#include "syncrel/nfa.hpp"
#include "syncrel/resync.hpp"
#include "syncrel/syncword.hpp"

namespace syncrel {

enum class Answer { Yes, No, Unknown };

// Outcome of a definability-style decision. When the answer is yes the
// witness is a regular subset of the target language whose relation equals
// the source relation.
struct Verdict {
  Answer answer = Answer::Unknown;
  std::string method;  // short identifier of the deciding argument
  std::optional<Nfa> witness;
  std::string reason;  // human-readable explanation
};

// The synchronization order of a target language: w is at most w' when every
// prefix length at which w' has already reached a finite-shift residual of T
// is one at which w has as well. Smaller words commit to the finite-shift
// tail earlier; larger words stay synchronous longer. The order is total on
// the words synchronizing one fixed pair.
// Preconditions: w, w' in T (NotInLanguage) with equal pairs (NotSamePair).
bool syncOrderLeq(const TaggedAlphabet& alphabet, const Nfa& T, const Word& w, const Word& wPrime);

// {w in T : some w' in Tsub with the pair of w lies strictly below w}.
// Built from a lockstep product that reads w, guesses w' up to its
// finite-shift entry, tracks the pending difference of the two prefixes, and
// then filters the tail of w through the rectangle cover of the remaining
// Tsub residual. Errors: NotFiniteShiftlag; NotSubset.
Nfa largerSyncSet(const TaggedAlphabet& alphabet, const Nfa& T, const Nfa& Tsub);

// The order-minimal synchronizations of T: T minus largerSyncSet(T, T).
// Every pair of the relation of T keeps at least one representative.
// Errors: NotFiniteShiftlag.
Nfa minsyncTT(const TaggedAlphabet& alphabet, const Nfa& T);

// Decide regularity of {w in T : pair(w) in pairs(S)} and construct it when
// regular. Errors: NotFiniteShiftlag.
Verdict allsyncRegular(const TaggedAlphabet& alphabet, const Nfa& S, const Nfa& T);

// Decide regularity of the order-minimal synchronizations in T of the pairs
// of S; delegates to allsyncRegular over minsyncTT(T).
Verdict minsyncRegular(const TaggedAlphabet& alphabet, const Nfa& S, const Nfa& T);

// Decide regularity of the order-maximal synchronizations in T of the pairs
// of S, via the finite set of transition profiles of first finite-shift
// entries. Errors: NotFiniteShiftlag; ProfileBudget.
Verdict maxsyncRegular(const TaggedAlphabet& alphabet, const Nfa& S, const Nfa& T);

// Does every pair of the relation of T have exactly one synchronization in
// T? Decided by annotating letters with the states of the minimal DFA,
// canonicalizing, and searching the self-product for two runs that agree on
// the letters but diverge on the annotations. Errors: NotFiniteShiftlag.
bool isUnambiguous(const TaggedAlphabet& alphabet, const Nfa& T);

// Is U a language of even alternating blocks (input output)* closed under
// removing the last input-output pair? Errors: NotAlternating.
bool isPrefixClosedEven(const TaggedAlphabet& alphabet, const Nfa& U);

// The longest-stem synchronizations of T = U inputs* outputs* for a
// prefix-closed even alternating U: words u x y with u in U such that x or y
// is empty, or the one-step alternating extension of u leaves U. Riding the
// stem longer never enters the finite-shift region earlier, so this is a
// subset of the order-maximal synchronizations covering every pair of T; it
// is the full order-maximal set whenever every stem with a continuation in T
// also has one inside U (stems that dead-end in U leave same-pair words tied
// at the same entry point, and the tie's other members are dropped here).
// Errors: NotPrefixClosed.
Dfa maxsyncPrefixClosed(const TaggedAlphabet& alphabet, const Nfa& U);

// Is r a finite union of sets U (V x W) = {(uv, uw)}? The input and output
// sides must carry the same letter names; the question reduces to
// maxsyncRegular against the target of identity-matched prefixes followed by
// an input block and an output block. Errors: AlphabetShapeMismatch.
Verdict isPrefixRecognizable(const AutomaticRelation& r);

// Is there a regular subset of T whose relation equals the relation of S?
// Routes through the decidable cases (containment, finite-shift operands,
// unambiguous targets, targets with regular order-maximal self-selection)
// and falls back to the sufficient witness cascade; unknown verdicts list
// the checks attempted.
Verdict decideDefinability(const TaggedAlphabet& alphabet, const Nfa& S, const Nfa& T);

// Reduce recognizable separability of two disjoint relations to
// definability: the returned (S, T) satisfy "pairs(S) definable in T" iff
// some recognizable relation contains r1 and misses r2. Errors: NotDisjoint.
std::pair<Nfa, Nfa> separabilityToDefinability(const AutomaticRelation& r1,
                                               const AutomaticRelation& r2);

}  // namespace syncrel
