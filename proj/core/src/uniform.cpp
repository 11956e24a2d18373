#include "syncrel/uniform.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "syncrel/errors.hpp"
#include "syncrel/resync.hpp"
#include "syncrel/syncword.hpp"

namespace syncrel {

namespace {

// Ceiling on distinct cost matrices explored when deciding limitedness.
constexpr std::size_t kMonoidBudget = 100000;
// Ceiling on candidate outputs inspected by the length-lexicographic search.
constexpr std::size_t kSynthesisBudget = 20000;

void checkCombined(const TaggedAlphabet& alphabet, const Nfa& sync, const char* what) {
  if (!(sync.alphabet == alphabet.combined()))
    throwAlphabetMismatch(std::string(what) +
                          " must be built over the combined alphabet of the tagged alphabet");
}

void validateNft(const Nft& t) {
  if (t.numStates == 0 || t.initial >= t.numStates || t.finals.size() != t.numStates)
    throwPrecondition("MalformedTransducer", "transducer state bookkeeping is inconsistent");
  for (const auto& tr : t.transitions) {
    if (tr.from >= t.numStates || tr.to >= t.numStates)
      throwPrecondition("MalformedTransducer", "transition endpoint out of range");
    for (Letter a : tr.input)
      if (a >= t.alphabet.numInputs())
        throwPrecondition("MalformedTransducer", "input letter out of range");
    for (Letter b : tr.output)
      if (b >= t.alphabet.numOutputs())
        throwPrecondition("MalformedTransducer", "output letter out of range");
  }
  for (State q = 0; q < t.numStates; ++q) {
    if ((t.finalOutput.count(q) != 0) != static_cast<bool>(t.finals[q]))
      throwPrecondition("MalformedTransducer",
                        "final outputs must be defined exactly on the final states");
    if (!t.finals[q]) continue;
    for (Letter b : t.finalOutput.at(q))
      if (b >= t.alphabet.numOutputs())
        throwPrecondition("MalformedTransducer", "final-output letter out of range");
  }
}

Nft toNft(const SubseqTransducer& f) {
  Nft t;
  t.alphabet = f.alphabet;
  t.numStates = f.numStates;
  t.initial = f.initial;
  t.finals = f.finals;
  t.finalOutput = f.finalOutput;
  for (const auto& tr : f.transitions) t.transitions.push_back({tr.from, {tr.input}, tr.output, tr.to});
  return t;
}

void validateSubseq(const SubseqTransducer& f) {
  std::set<std::pair<State, Letter>> keys;
  for (const auto& tr : f.transitions)
    if (!keys.insert({tr.from, tr.input}).second)
      throwPrecondition("MalformedTransducer",
                        "two transitions share a source state and input letter");
  validateNft(toNft(f));
}

void validateDistance(const DistanceAutomaton& b) {
  if (b.numStates == 0 || b.initial >= b.numStates || b.finals.size() != b.numStates)
    throwPrecondition("MalformedAutomaton", "distance-automaton state bookkeeping is inconsistent");
  for (const auto& tr : b.transitions)
    if (tr.from >= b.numStates || tr.to >= b.numStates || tr.letter >= b.alphabet.size())
      throwPrecondition("MalformedAutomaton", "weighted transition out of range");
}

// Language restricted to the transitions with a finite cost.
Nfa finiteCostLanguage(const DistanceAutomaton& b) {
  Nfa n;
  n.alphabet = b.alphabet;
  n.numStates = b.numStates;
  n.initial = b.initial;
  n.finals = b.finals;
  for (const auto& tr : b.transitions)
    if (tr.d != Distance::Infinite) n.addTransition(tr.from, tr.letter, tr.to);
  n.normalize();
  return n;
}

}  // namespace

std::optional<Word> evalSubseq(const SubseqTransducer& f, const Word& u) {
  validateSubseq(f);
  std::map<std::pair<State, Letter>, const SubseqTransition*> step;
  for (const auto& tr : f.transitions) step[{tr.from, tr.input}] = &tr;
  State q = f.initial;
  Word out;
  for (Letter a : u) {
    auto it = step.find({q, a});
    if (it == step.end()) return std::nullopt;
    const SubseqTransition& tr = *it->second;
    out.insert(out.end(), tr.output.begin(), tr.output.end());
    q = tr.to;
  }
  if (!f.finals[q]) return std::nullopt;
  const Word& tail = f.finalOutput.at(q);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

Nfa syncLanguageOfTransducer(const Nft& t) {
  validateNft(t);
  Nfa out;
  out.alphabet = t.alphabet.combined();
  out.numStates = t.numStates;
  out.initial = t.initial;
  out.finals.assign(t.numStates, false);
  auto fresh = [&out]() {
    out.finals.push_back(false);
    return static_cast<State>(out.numStates++);
  };
  for (const auto& tr : t.transitions) {
    Word spelled;
    for (Letter a : tr.input) spelled.push_back(t.alphabet.inputLetter(a));
    for (Letter b : tr.output) spelled.push_back(t.alphabet.outputLetter(b));
    if (spelled.empty()) {
      out.addTransition(tr.from, kEpsilon, tr.to);
      continue;
    }
    State cur = tr.from;
    for (std::size_t i = 0; i + 1 < spelled.size(); ++i) {
      State next = fresh();
      out.addTransition(cur, spelled[i], next);
      cur = next;
    }
    out.addTransition(cur, spelled.back(), tr.to);
  }
  for (State q = 0; q < t.numStates; ++q) {
    if (!t.finals[q]) continue;
    const Word& w = t.finalOutput.at(q);
    State cur = q;
    for (Letter b : w) {
      State next = fresh();
      out.addTransition(cur, t.alphabet.outputLetter(b), next);
      cur = next;
    }
    out.finals[cur] = true;
  }
  out.normalize();
  return trim(removeEpsilon(out));
}

Nfa syncLanguageOfTransducer(const SubseqTransducer& f) {
  validateSubseq(f);
  return syncLanguageOfTransducer(toNft(f));
}

Nft transducerFromSync(const TaggedAlphabet& alphabet, const Nfa& sync) {
  checkCombined(alphabet, sync, "the synchronization language");
  Nft t;
  t.alphabet = alphabet;
  t.numStates = sync.numStates;
  t.initial = sync.initial;
  t.finals = sync.finals;
  for (const auto& tr : sync.transitions) {
    Word in, out;
    if (tr.letter != kEpsilon) {
      Letter k = static_cast<Letter>(alphabet.projectedIndex(tr.letter));
      (alphabet.isInput(tr.letter) ? in : out).push_back(k);
    }
    t.transitions.push_back({tr.from, std::move(in), std::move(out), tr.to});
  }
  for (State q = 0; q < t.numStates; ++q)
    if (t.finals[q]) t.finalOutput[q] = {};
  return t;
}

bool isTControlled(const Nft& t, const Nfa& T) {
  checkCombined(t.alphabet, T, "the control language");
  return includes(T, syncLanguageOfTransducer(t));
}

bool isTControlled(const SubseqTransducer& f, const Nfa& T) {
  checkCombined(f.alphabet, T, "the control language");
  return includes(T, syncLanguageOfTransducer(f));
}

void DistanceAutomaton::normalize() {
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end(),
                                [](const WeightedTransition& x, const WeightedTransition& y) {
                                  return x.from == y.from && x.letter == y.letter && x.to == y.to;
                                }),
                    transitions.end());
  require(finals.size() == numStates, "finals size does not match state count");
}

Nfa underlyingLanguage(const DistanceAutomaton& b) {
  validateDistance(b);
  Nfa n;
  n.alphabet = b.alphabet;
  n.numStates = b.numStates;
  n.initial = b.initial;
  n.finals = b.finals;
  for (const auto& tr : b.transitions) n.addTransition(tr.from, tr.letter, tr.to);
  n.normalize();
  return n;
}

std::size_t distanceOfWord(const DistanceAutomaton& b, const Word& w) {
  validateDistance(b);
  std::vector<std::size_t> cur(b.numStates, kInfiniteDistance);
  cur[b.initial] = 0;
  for (Letter a : w) {
    std::vector<std::size_t> next(b.numStates, kInfiniteDistance);
    for (const auto& tr : b.transitions) {
      if (tr.letter != a || tr.d == Distance::Infinite) continue;
      std::size_t base = cur[tr.from];
      if (base == kInfiniteDistance) continue;
      std::size_t cost = base + (tr.d == Distance::One ? 1 : 0);
      next[tr.to] = std::min(next[tr.to], cost);
    }
    cur = std::move(next);
  }
  std::size_t best = kInfiniteDistance;
  for (State q = 0; q < b.numStates; ++q)
    if (b.finals[q]) best = std::min(best, cur[q]);
  return best;
}

DistanceAutomaton buildDistanceAutomaton(const TaggedAlphabet& alphabet, const Nfa& sync) {
  checkCombined(alphabet, sync, "the synchronization language");
  Nfa a = removeEpsilon(sync);
  // States reachable through one or more output letters.
  std::vector<std::vector<State>> outStep(a.numStates);
  for (const auto& tr : a.transitions)
    if (alphabet.isOutput(tr.letter)) outStep[tr.from].push_back(tr.to);
  std::vector<std::vector<State>> plus(a.numStates);
  for (State s = 0; s < a.numStates; ++s) {
    std::vector<bool> seen(a.numStates, false);
    std::vector<State> stack = outStep[s];
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      if (seen[q]) continue;
      seen[q] = true;
      plus[s].push_back(q);
      stack.insert(stack.end(), outStep[q].begin(), outStep[q].end());
    }
  }

  DistanceAutomaton b;
  b.alphabet = alphabet.inputAlphabet();
  b.numStates = a.numStates;
  b.initial = a.initial;
  b.finals = a.finals;
  for (const auto& tr : a.transitions) {
    if (!alphabet.isInput(tr.letter)) continue;
    Letter in = static_cast<Letter>(alphabet.projectedIndex(tr.letter));
    b.addTransition(tr.from, in, tr.to, Distance::Zero);
    for (State q : plus[tr.to]) b.addTransition(tr.from, in, q, Distance::One);
  }
  // A run may open with a block of output letters; fold it (together with the
  // block after the first input letter) into one unit-cost first step.
  for (State p : plus[a.initial]) {
    auto [first, last] = a.transitionsFrom(p);
    for (const Trans* tr = first; tr != last; ++tr) {
      if (!alphabet.isInput(tr->letter)) continue;
      Letter in = static_cast<Letter>(alphabet.projectedIndex(tr->letter));
      b.addTransition(b.initial, in, tr->to, Distance::One);
      for (State q : plus[tr->to]) b.addTransition(b.initial, in, q, Distance::One);
    }
  }
  // A pure-output synchronization makes the empty word a domain word.
  for (State q : plus[a.initial])
    if (a.finals[q]) b.finals[b.initial] = true;
  b.normalize();
  return b;
}

namespace {

// Abstracted run costs: zero, bounded positive, unbounded, and no run at all.
// Matrices over these values track the cheapest runs between state pairs;
// composition takes the worst value along a run and the best over choices.
using CostMat = std::vector<std::uint8_t>;
constexpr std::uint8_t kCostZero = 0;
constexpr std::uint8_t kCostOne = 1;
constexpr std::uint8_t kCostOmega = 2;
constexpr std::uint8_t kCostNone = 3;

CostMat matProduct(const CostMat& x, const CostMat& y, std::size_t n) {
  CostMat z(n * n, kCostNone);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      std::uint8_t e = x[i * n + k];
      if (e == kCostNone) continue;
      for (std::size_t j = 0; j < n; ++j) {
        std::uint8_t v = std::max(e, y[k * n + j]);
        if (v < z[i * n + j]) z[i * n + j] = v;
      }
    }
  return z;
}

// Iterate an idempotent unboundedly often: a long power threads some state's
// self-loop over and over, so a bounded positive loop cost accumulates into
// an unbounded one while a free loop stays free.
CostMat matStabilize(const CostMat& e, std::size_t n) {
  CostMat z(n * n, kCostNone);
  for (std::size_t k = 0; k < n; ++k) {
    std::uint8_t loop = e[k * n + k];
    if (loop == kCostNone) continue;
    if (loop == kCostOne) loop = kCostOmega;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint8_t in = e[i * n + k];
      if (in == kCostNone) continue;
      std::uint8_t head = std::max(in, loop);
      for (std::size_t j = 0; j < n; ++j) {
        std::uint8_t v = std::max(head, e[k * n + j]);
        if (v < z[i * n + j]) z[i * n + j] = v;
      }
    }
  }
  return z;
}

}  // namespace

bool isLimited(const DistanceAutomaton& b) {
  validateDistance(b);
  // A word whose accepting runs all cross an infinite edge has no finite
  // distance at all.
  if (!includes(finiteCostLanguage(b), underlyingLanguage(b))) return false;
  const std::size_t n = b.numStates;
  std::map<Letter, CostMat> letters;
  for (const auto& tr : b.transitions) {
    if (tr.d == Distance::Infinite) continue;
    auto [it, fresh] = letters.try_emplace(tr.letter, CostMat(n * n, kCostNone));
    std::uint8_t v = tr.d == Distance::One ? kCostOne : kCostZero;
    std::uint8_t& cell = it->second[tr.from * n + tr.to];
    cell = std::min(cell, v);
  }
  auto unboundedWitness = [&](const CostMat& m) {
    std::uint8_t best = kCostNone;
    for (State f = 0; f < n; ++f)
      if (b.finals[f]) best = std::min(best, m[b.initial * n + f]);
    return best == kCostOmega;
  };
  std::map<CostMat, std::size_t> index;
  std::vector<CostMat> elems;
  std::queue<std::size_t> work;
  bool unbounded = false;
  auto add = [&](CostMat m) {
    if (index.count(m) != 0) return;
    std::size_t id = elems.size();
    index.emplace(m, id);
    elems.push_back(std::move(m));
    work.push(id);
    if (elems.size() > kMonoidBudget)
      throwUnsupported("MonoidBudget", "the cost-matrix closure outgrew its budget");
    if (unboundedWitness(elems[id])) unbounded = true;
  };
  for (auto& [letter, m] : letters) {
    add(std::move(m));
    if (unbounded) return false;
  }
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop();
    for (std::size_t j = 0; j < elems.size(); ++j) {
      add(matProduct(elems[i], elems[j], n));
      if (unbounded) return false;
      add(matProduct(elems[j], elems[i], n));
      if (unbounded) return false;
    }
    if (matProduct(elems[i], elems[i], n) == elems[i]) {
      add(matStabilize(elems[i], n));
      if (unbounded) return false;
    }
  }
  return true;
}

namespace {

// { w : some accepting run on w costs at most k }, by a subset construction
// that tracks the cheapest cost per state, saturating above k.
Nfa costBoundedLanguage(const DistanceAutomaton& b, std::size_t k) {
  const std::size_t n = b.numStates;
  const std::uint64_t top = static_cast<std::uint64_t>(k) + 1;
  using Key = std::vector<std::uint64_t>;
  std::map<Key, State> index;
  std::vector<Key> pool;
  Nfa out;
  out.alphabet = b.alphabet;
  out.numStates = 0;
  out.finals.clear();
  auto intern = [&](Key key) {
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    State id = static_cast<State>(pool.size());
    index.emplace(key, id);
    pool.push_back(std::move(key));
    out.finals.push_back(false);
    ++out.numStates;
    require(pool.size() <= kStateCap, "cost-bounded subset construction exceeded the state cap");
    return id;
  };
  Key start(n, top);
  start[b.initial] = 0;
  out.initial = intern(std::move(start));
  for (State s = 0; s < pool.size(); ++s) {
    const Key cur = pool[s];
    for (State q = 0; q < n; ++q)
      if (b.finals[q] && cur[q] < top) out.finals[s] = true;
    for (Letter a = 0; a < b.alphabet.size(); ++a) {
      Key next(n, top);
      for (const auto& tr : b.transitions) {
        if (tr.letter != a || tr.d == Distance::Infinite) continue;
        if (cur[tr.from] >= top) continue;
        std::uint64_t cost = cur[tr.from] + (tr.d == Distance::One ? 1 : 0);
        if (cost < top && cost < next[tr.to]) next[tr.to] = cost;
      }
      out.addTransition(s, a, intern(std::move(next)));
    }
  }
  out.normalize();
  return out;
}

}  // namespace

std::size_t boundedDistanceValue(const DistanceAutomaton& b) {
  if (!isLimited(b))
    throwPrecondition("NotLimited", "word distances grow without bound, so no supremum exists");
  Nfa domain = toNfa(minimalDfa(underlyingLanguage(b)));
  if (isEmpty(domain)) return 0;
  const std::size_t bits = b.numStates * b.numStates;
  const std::size_t cap =
      bits >= 62 ? kInfiniteDistance - 1 : (std::size_t{1} << bits) + 1;
  for (std::size_t k = 0;; ++k) {
    if (k > cap) throwDefect("the bounded-distance search diverged past its structural cap");
    if (equivalent(costBoundedLanguage(b, k), domain)) return k;
  }
}

Verdict hasRecognizableUniformization(const TaggedAlphabet& alphabet, const Nfa& sync) {
  DistanceAutomaton b = buildDistanceAutomaton(alphabet, sync);
  Verdict v;
  v.method = "distance-boundedness";
  if (isLimited(b)) {
    v.answer = Answer::Yes;
    v.reason =
        "every domain word has a synchronization using boundedly many output blocks, so the "
        "length-lexicographically least admissible outputs form finitely many regular cells";
  } else {
    v.answer = Answer::No;
    v.reason =
        "domain words need synchronizations with ever more output blocks, so no finite family "
        "of output choices covers the domain";
  }
  return v;
}

namespace {

// Inputs whose synchronizations in `sync` emit exactly the output word v.
Nfa sectionOfOutput(const TaggedAlphabet& alphabet, const Nfa& sync, const Word& v) {
  Nfa tracker;
  tracker.alphabet = alphabet.combined();
  tracker.numStates = v.size() + 1;
  tracker.finals.assign(tracker.numStates, false);
  tracker.finals[v.size()] = true;
  for (State i = 0; i <= v.size(); ++i)
    for (std::size_t a = 0; a < alphabet.numInputs(); ++a)
      tracker.addTransition(i, alphabet.inputLetter(a), i);
  for (std::size_t i = 0; i < v.size(); ++i)
    tracker.addTransition(static_cast<State>(i), alphabet.outputLetter(v[i]),
                          static_cast<State>(i + 1));
  tracker.normalize();
  std::vector<Word> images(alphabet.size());
  for (Letter c = 0; c < alphabet.size(); ++c)
    if (alphabet.isInput(c)) images[c] = {static_cast<Letter>(alphabet.projectedIndex(c))};
  return substitute(intersectOf(sync, tracker), alphabet.inputAlphabet(), images);
}

}  // namespace

RecognizableDecomposition synthesizeRecognizableUniformizer(const TaggedAlphabet& alphabet,
                                                            const Nfa& sync) {
  DistanceAutomaton b = buildDistanceAutomaton(alphabet, sync);
  if (!isLimited(b))
    throwPrecondition("NoRecognizableUniformization",
                      "required output lengths grow without bound across the domain");
  const std::size_t bound = boundedDistanceValue(b);
  const Nfa trimmed = trim(removeEpsilon(sync));
  // Each distance unit folds at most two output blocks, each realizable along
  // a simple path, so some admissible output fits within this length.
  const std::size_t maxLen = trimmed.transitions.size() * bound + trimmed.numStates;
  const Alphabet outputs = alphabet.outputAlphabet();
  Nfa domain = toNfa(minimalDfa(underlyingLanguage(b)));
  RecognizableDecomposition dec{alphabet, {}};
  Nfa covered = emptyNfa(alphabet.inputAlphabet());
  bool done = isEmpty(domain);
  std::size_t inspected = 0;
  for (std::size_t len = 0; !done && len <= maxLen; ++len) {
    if (len > 0 && outputs.size() == 0) break;
    Word v(len, 0);
    while (!done) {
      if (++inspected > kSynthesisBudget)
        throwUnsupported("SynthesisBudget",
                         "the length-lexicographic output search inspected too many candidates");
      Nfa cell = sectionOfOutput(alphabet, sync, v);
      Nfa fresh = differenceOf(cell, covered);
      if (!isEmpty(fresh)) {
        dec.parts.emplace_back(toNfa(minimalDfa(fresh)), wordNfa(outputs, v));
        covered = toNfa(minimalDfa(unionOf(covered, fresh)));
        done = equivalent(covered, domain);
      }
      // advance to the next output word of this length, in letter order
      std::size_t pos = len;
      while (pos > 0) {
        if (++v[pos - 1] < outputs.size()) break;
        v[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  if (!done)
    throwDefect("bounded distances promise a uniformizer, but the output search exhausted "
                "its length bound");
  return dec;
}

Verdict hasFiniteShiftSubseqUniformization(const TaggedAlphabet& alphabet, const Nfa& sync) {
  Verdict v = hasRecognizableUniformization(alphabet, sync);
  v.method = "finite-shift-subsequential";
  if (v.answer == Answer::Yes)
    v.reason =
        "a recognizable uniformizer reads the whole input before emitting its cell's output, "
        "which is an input-deterministic transducer whose synchronizations shift only once";
  else
    v.reason =
        "an input-deterministic uniformizer with finitely shifting synchronizations would "
        "induce a recognizable one, and unbounded distances rule that out";
  return v;
}

SubseqTransducer uniformizerToSubseq(const RecognizableDecomposition& dec) {
  const TaggedAlphabet& alphabet = dec.base;
  const Alphabet inputs = alphabet.inputAlphabet();
  const Alphabet outputs = alphabet.outputAlphabet();
  std::vector<Word> cellOutput;
  for (const auto& part : dec.parts) {
    if (!(part.first.alphabet == inputs) || !(part.second.alphabet == outputs))
      throwAlphabetMismatch("decomposition cells must use the base input and output alphabets");
    auto w = shortestWord(part.second);
    if (!w || !equivalent(part.second, wordNfa(outputs, *w)))
      throwPrecondition("NotFunctionalDecomposition", "every output cell must hold exactly one word");
    cellOutput.push_back(*w);
  }
  for (std::size_t i = 0; i < dec.parts.size(); ++i)
    for (std::size_t j = i + 1; j < dec.parts.size(); ++j)
      if (!isEmpty(intersectOf(dec.parts[i].first, dec.parts[j].first)))
        throwPrecondition("NotFunctionalDecomposition",
                          "input cells overlap, so some word would receive two outputs");
  std::vector<Dfa> cells;
  cells.reserve(dec.parts.size());
  for (const auto& part : dec.parts) cells.push_back(completed(minimalDfa(part.first)));

  SubseqTransducer f;
  f.alphabet = alphabet;
  f.numStates = 0;
  f.finals.clear();
  std::map<std::vector<State>, State> index;
  std::vector<std::vector<State>> pool;
  auto intern = [&](std::vector<State> key) {
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    State id = static_cast<State>(pool.size());
    index.emplace(key, id);
    pool.push_back(std::move(key));
    f.finals.push_back(false);
    ++f.numStates;
    return id;
  };
  std::vector<State> start(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) start[i] = cells[i].initial;
  f.initial = intern(std::move(start));
  for (State s = 0; s < pool.size(); ++s) {
    const std::vector<State> cur = pool[s];
    int owner = -1;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!cells[i].finals[cur[i]]) continue;
      require(owner < 0, "disjoint input cells accepted the same word");
      owner = static_cast<int>(i);
    }
    if (owner >= 0) {
      f.finals[s] = true;
      f.finalOutput[s] = cellOutput[owner];
    }
    for (Letter a = 0; a < inputs.size(); ++a) {
      std::vector<State> next(cells.size());
      for (std::size_t i = 0; i < cells.size(); ++i) next[i] = cells[i].step(cur[i], a);
      f.transitions.push_back({s, a, {}, intern(std::move(next))});
    }
  }
  return f;
}

bool verifyUniformizer(const SubseqTransducer& f, const Nfa& sync) {
  const TaggedAlphabet& alphabet = f.alphabet;
  checkCombined(alphabet, sync, "the relation's synchronization language");
  Nfa fSync = syncLanguageOfTransducer(f);
  if (!classify(alphabet, fSync).finiteness.shiftlagFinite ||
      !classify(alphabet, sync).finiteness.shiftlagFinite)
    throwUnsupported("RationalVerification",
                     "verification runs on relation automata, which need finite-shiftlag "
                     "synchronization languages on both sides");
  AutomaticRelation rf = relationOfSync(alphabet, fSync);
  AutomaticRelation rs = relationOfSync(alphabet, sync);
  return equivalent(domainLanguage(rf), domainLanguage(rs)) && relIncludes(rs, rf);
}

}  // namespace syncrel
