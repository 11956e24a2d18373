#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "syncrel/conv.hpp"
#include "syncrel/nfa.hpp"

namespace syncrel {

// A relation between input words and output words, carried by the minimal
// DFA of its well-formed convolution language.
struct AutomaticRelation {
  TaggedAlphabet base;
  ConvAlphabet conv;
  Dfa dfa;  // over conv.alphabet(); accepts only well-formed words
};

// Normalizing constructor: intersects with the well-formed language,
// determinizes and minimizes. `convLanguage` is over ConvAlphabet(base).
AutomaticRelation makeAutomatic(const TaggedAlphabet& base, const Nfa& convLanguage);

AutomaticRelation emptyRelation(const TaggedAlphabet& base);
AutomaticRelation fullRelation(const TaggedAlphabet& base);
AutomaticRelation pairRelation(const TaggedAlphabet& base, const Word& u, const Word& v);
// The rectangle U x V; U over base.inputAlphabet(), V over base.outputAlphabet().
AutomaticRelation crossRelation(const TaggedAlphabet& base, const Nfa& U, const Nfa& V);
// {(w, w)}; requires the two sides to carry the same letter names.
AutomaticRelation identityRelation(const TaggedAlphabet& base);

bool relMember(const AutomaticRelation& r, const Word& u, const Word& v);
bool relIsEmpty(const AutomaticRelation& r);
// relIncludes(a, b) holds iff b is a subset of a.
bool relIncludes(const AutomaticRelation& a, const AutomaticRelation& b);
bool relEquivalent(const AutomaticRelation& a, const AutomaticRelation& b);
AutomaticRelation relUnion(const AutomaticRelation& a, const AutomaticRelation& b);
AutomaticRelation relIntersect(const AutomaticRelation& a, const AutomaticRelation& b);
AutomaticRelation relDifference(const AutomaticRelation& a, const AutomaticRelation& b);
AutomaticRelation relComplement(const AutomaticRelation& r);  // within all pairs

Nfa domainLanguage(const AutomaticRelation& r);  // over base.inputAlphabet()
Nfa rangeLanguage(const AutomaticRelation& r);   // over base.outputAlphabet()
// The section {v : (u, v) in r}, over base.outputAlphabet().
Nfa sectionLanguage(const AutomaticRelation& r, const Word& u);

// A finite union of rectangles U_i x V_i with pairwise-disjoint U_i.
struct RecognizableDecomposition {
  TaggedAlphabet base;
  std::vector<std::pair<Nfa, Nfa>> parts;  // (over inputAlphabet, over outputAlphabet)
};

// Exact decomposition of r into finitely many rectangles, when one exists.
// Input words are grouped by their section: the relation is a finite union of
// rectangles iff the section-equality equivalence has finite index, which is
// detected on the minimal-representative language of that equivalence.
std::optional<RecognizableDecomposition> recognizableDecomposition(const AutomaticRelation& r);

AutomaticRelation recToAutomatic(const RecognizableDecomposition& d);

}  // namespace syncrel
