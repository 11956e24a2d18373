#pragma once

#include "syncrel/autorel.hpp"
#include "syncrel/conv.hpp"
#include "syncrel/nfa.hpp"
#include "syncrel/syncword.hpp"

namespace syncrel {

// Rectangle decomposition of the relation of a finite-shift language, read
// off the alternation structure of its minimal DFA: every maximal-block
// pattern contributes the product of its input blocks and its output blocks.
// Errors: NotFiniteShift; DecompositionBudget when the block graph has too
// many patterns.
RecognizableDecomposition decomposeFiniteShift(const TaggedAlphabet& alphabet, const Nfa& sync);

// Convolution language of the relation of a finite-shiftlag language: the
// lagged zone is simulated with a pending buffer bounded by the lagged zone
// width plus one, and the finite-shift tail runs per-track through a
// rectangle decomposition. Errors: NotFiniteShiftlag.
Nfa convolutionOfSync(const TaggedAlphabet& alphabet, const Nfa& sync);

// The relation of a finite-shiftlag language. Errors: NotFiniteShiftlag.
AutomaticRelation relationOfSync(const TaggedAlphabet& alphabet, const Nfa& sync);

// Canonical alternating representative of a relation: controlled by
// (input output)* (inputs* + outputs*); one word per pair.
Nfa canonicalSyncOf(const AutomaticRelation& r);

// Canonical representative of the relation of a finite-shiftlag language.
Nfa toCanonicalShiftlag(const TaggedAlphabet& alphabet, const Nfa& sync);

// Canonical inputs-first representative (controlled by inputs* outputs*) of
// the relation of a finite-shift language. Errors: NotFiniteShift.
Nfa toCanonicalShift(const TaggedAlphabet& alphabet, const Nfa& sync);

// Shape language L_{<=gamma} (inputs* + outputs*)^m: a prefix whose every
// position is at most gamma-lagged, then m homogeneous blocks.
Nfa laggedZoneControl(const TaggedAlphabet& alphabet, std::size_t gamma, std::size_t m);

// {w in sync : pair(w) in parts}: the sync language filtered by membership of
// its pair in a finite union of rectangles.
Nfa filterByRecognizable(const TaggedAlphabet& alphabet, const Nfa& sync,
                         const RecognizableDecomposition& parts);

// {w in sync : pair(w) in r} for sync inside L_{<=gamma}(inputs*+outputs*)^m.
// For m <= 1 the filter is a buffered product with r's convolution DFA; for
// m >= 2 that set need not be regular, so the call must be justified by a
// rectangle decomposition of r restricted to sync's pairs, computed here.
// Errors: LagBoundExceeded when sync leaves the shape;
// NotRecognizableOnTarget when m >= 2 and no decomposition exists.
Nfa filterByAutomatic(const TaggedAlphabet& alphabet, const Nfa& sync, const AutomaticRelation& r,
                      std::size_t gamma, std::size_t m);

// The full gamma-lagged representation of the relation of a finite-shiftlag
// language: {w in L_{<=gamma}(inputs*+outputs*) : pair(w) in pairs(sync)}.
// For gamma >= 1 this is pair-equivalent to sync and closed under changing
// the synchronization of a pair within the shape. Errors: NotFiniteShiftlag.
Nfa fullGammaLagged(const TaggedAlphabet& alphabet, const Nfa& sync, std::size_t gamma);

}  // namespace syncrel
