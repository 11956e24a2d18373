#pragma once

#include <optional>
#include <string>
#include <variant>

#include "syncrel/autorel.hpp"
#include "syncrel/nfa.hpp"
#include "syncrel/syncword.hpp"
#include "syncrel/uniform.hpp"

namespace syncrel {

// Kinds of model files. The line-oriented text format is shared: `#` starts a
// comment, directives are `name: values...` lines, every other nonblank line
// is a body line (a transition). Unknown directives are errors.
//
//   automaton / relation    input-alphabet: a b      transitions  q0 i:a q1
//                           output-alphabet: c       or a `regex: <expr>` body
//   transducer              tagged alphabets         transitions  q0 a / cc q1
//                                                    final words  finalout: q1 = c
//   distance-automaton      alphabet: a b            transitions  q0 a q1 w=1
//
// All kinds declare `states: q0 q1 ...`, `initial: q0` and `final: q1 ...`
// (the final line may be absent for an automaton accepting nothing). The
// kind comes from a `kind:` line or, for files, from the extension
// (.syna automaton, .synt transducer, .synd distance-automaton).
enum class ModelKind { Automaton, Transducer, DistanceAutomaton, Relation };

// A synchronization language over a tagged alphabet, classified at load time.
struct AutomatonModel {
  TaggedAlphabet alphabet;
  Nfa sync;  // over alphabet.combined()
  SyncClassification classification;
};

// A finite transducer; `subsequential` is filled when every step reads one
// input letter and no two steps share a source state and input letter.
struct TransducerModel {
  Nft transducer;
  std::optional<SubseqTransducer> subsequential;
};

struct DistanceModel {
  DistanceAutomaton automaton;
};

// An automaton body read as the relation its synchronization language
// defines; the language must have finite shiftlag.
struct RelationModel {
  TaggedAlphabet alphabet;
  Nfa sync;
  SyncClassification classification;
  AutomaticRelation relation;
};

using Model = std::variant<AutomatonModel, TransducerModel, DistanceModel, RelationModel>;

ModelKind kindOf(const Model& m);

// Parse model text. `origin` prefixes error messages (a path or a label).
// `kindHint` supplies the kind when the text carries no `kind:` line.
// Errors: Parse with line and column; Precondition for body inconsistencies.
Model parseModel(const std::string& text, const std::string& origin,
                 std::optional<ModelKind> kindHint = std::nullopt);

// Read and parse a model file; the kind comes from a `kind:` line or the
// extension. Errors: Parse when the file is unreadable or malformed.
Model loadModel(const std::string& path);

// Render models in the same format the parser reads (states become q0..qN).
std::string renderAutomaton(const TaggedAlphabet& alphabet, const Nfa& sync);
std::string renderTransducer(const SubseqTransducer& f);
std::string renderDistanceAutomaton(const DistanceAutomaton& b);

// Write text to a file. Errors: Parse when the file cannot be written.
void saveModelFile(const std::string& path, const std::string& text);

}  // namespace syncrel
