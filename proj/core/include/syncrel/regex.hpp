#pragma once

#include <string>

#include "syncrel/alphabet.hpp"
#include "syncrel/nfa.hpp"

namespace syncrel {

// Regular expressions over an alphabet.
//
// Syntax:  `+` or `|` for union, juxtaposition for concatenation, postfix `*`
// for iteration, postfix `^+` for nonempty iteration, parentheses, and the
// keyword `eps` for the empty word. Letters are matched greedily by longest
// name; with a tagged alphabet the `i:`/`o:` prefixes force the role of a
// name used on both sides. Whitespace is ignored.
Nfa parseRegex(const std::string& text, const Alphabet& alphabet);

// Same syntax, producing an automaton over `alphabet.combined()`.
Nfa parseRegex(const std::string& text, const TaggedAlphabet& alphabet);

}  // namespace syncrel
