#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "syncrel/alphabet.hpp"

namespace syncrel {

using State = std::uint32_t;
inline constexpr State kNoState = std::numeric_limits<State>::max();

// Default ceiling on states produced by subset/product constructions.
// Exceeding it signals a runaway construction and raises a Defect error.
inline constexpr std::size_t kStateCap = 400000;

struct Trans {
  State from;
  Letter letter;  // kEpsilon for silent moves
  State to;
  friend auto operator<=>(const Trans&, const Trans&) = default;
};

// Nondeterministic finite automaton with optional epsilon moves.
// Invariant maintained by all library operations: `transitions` is sorted
// and duplicate-free, and `finals.size() == numStates`.
struct Nfa {
  Alphabet alphabet;
  std::size_t numStates = 1;
  State initial = 0;
  std::vector<Trans> transitions;
  std::vector<bool> finals = {false};

  void addTransition(State from, Letter letter, State to) {
    transitions.push_back({from, letter, to});
  }
  void normalize();
  // Range of transitions leaving `from` (requires normalized transitions).
  std::pair<const Trans*, const Trans*> transitionsFrom(State from) const;
};

// Deterministic automaton with a dense, possibly partial transition table.
struct Dfa {
  Alphabet alphabet;
  std::size_t numStates = 1;
  State initial = 0;
  std::vector<State> delta;  // numStates * alphabet.size(), kNoState when undefined
  std::vector<bool> finals = {false};

  State step(State q, Letter a) const { return delta[q * alphabet.size() + a]; }
  State& at(State q, Letter a) { return delta[q * alphabet.size() + a]; }
  State run(const Word& w) const;  // kNoState when the run dies
  bool member(const Word& w) const;
};

// --- construction helpers ---
Nfa emptyNfa(const Alphabet& alphabet);                  // empty language
Nfa epsilonNfa(const Alphabet& alphabet);                // {eps}
Nfa wordNfa(const Alphabet& alphabet, const Word& w);    // {w}
Nfa allWordsNfa(const Alphabet& alphabet);               // full language
Nfa toNfa(const Dfa& dfa);
Dfa emptyDfa(const Alphabet& alphabet);

// --- structural passes ---
Nfa removeEpsilon(const Nfa& nfa);
Nfa trim(const Nfa& nfa);  // keep states reachable from initial and co-reachable to a final
Dfa determinize(const Nfa& nfa, std::size_t stateCap = kStateCap);
Dfa minimize(const Dfa& dfa);  // canonical: BFS-numbered minimal partial DFA
Dfa minimalDfa(const Nfa& nfa, std::size_t stateCap = kStateCap);
Dfa completed(const Dfa& dfa);  // total transition table (adds a sink if needed)
Dfa withInitial(const Dfa& dfa, State q);

// --- boolean combinations (operands must share one alphabet) ---
Nfa unionOf(const Nfa& a, const Nfa& b);
Nfa intersectOf(const Nfa& a, const Nfa& b);
Nfa differenceOf(const Nfa& a, const Nfa& b);
Nfa complementOf(const Nfa& a);
Nfa concatOf(const Nfa& a, const Nfa& b);
Nfa starOf(const Nfa& a);
Nfa plusOf(const Nfa& a);

// --- queries ---
bool member(const Nfa& nfa, const Word& w);
bool isEmpty(const Nfa& nfa);
bool isFinite(const Nfa& nfa);
// includes(a, b) holds iff the language of `b` is contained in the language of `a`.
bool includes(const Nfa& a, const Nfa& b);
bool equivalent(const Nfa& a, const Nfa& b);
bool isomorphic(const Dfa& a, const Dfa& b);
std::optional<Word> shortestWord(const Nfa& nfa);

// --- derived languages ---
Nfa leftQuotient(const Nfa& nfa, const Word& w);  // { v : w v accepted }
// Replace every letter by a fixed word over `target` (empty word = erase).
Nfa substitute(const Nfa& nfa, const Alphabet& target, const std::vector<Word>& images);
// All accepted words of length <= maxLen, in length-lexicographic order.
std::vector<Word> enumerateUpTo(const Nfa& nfa, std::size_t maxLen,
                                std::size_t maxCount = 1u << 20);

// Strongly connected components (iterative Tarjan). Component ids are in
// reverse topological order: every edge u -> v across components has
// comp[u] >= comp[v], so increasing id walks the condensation from sinks up.
struct SccResult {
  std::vector<int> comp;
  int count = 0;
};
SccResult stronglyConnectedComponents(std::size_t numNodes,
                                      const std::vector<std::vector<int>>& adj);

// Shortest distance from each DFA state to some final state (kNoDistance if none).
inline constexpr std::size_t kNoDistance = std::numeric_limits<std::size_t>::max();
std::vector<std::size_t> distancesToFinal(const Dfa& dfa);

}  // namespace syncrel
