#include "syncrel/definability.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "syncrel/conv.hpp"
#include "syncrel/errors.hpp"

namespace syncrel {
namespace {

constexpr std::size_t kLockstepBudget = 200000;
constexpr std::size_t kProfileBudget = 50000;

SyncClassification classifyShiftlag(const TaggedAlphabet& alphabet, const Nfa& sync,
                                    const char* which) {
  SyncClassification cls = classify(alphabet, sync);
  if (!cls.finiteness.shiftlagFinite)
    throwPrecondition("NotFiniteShiftlag", std::string(which) + " must have finite shiftlag");
  return cls;
}

Nfa roleStar(const TaggedAlphabet& alphabet, Role role) {
  Nfa n;
  n.alphabet = alphabet.combined();
  n.numStates = 1;
  n.finals = {true};
  for (Letter c = 0; c < alphabet.size(); ++c)
    if (alphabet.role(c) == role) n.addTransition(0, c, 0);
  n.normalize();
  return n;
}

Nfa inputsThenOutputs(const TaggedAlphabet& alphabet) {
  return concatOf(roleStar(alphabet, Role::Input), roleStar(alphabet, Role::Output));
}

Nfa nfaWithFinals(const Dfa& dfa, std::vector<bool> finals) {
  Dfa copy = dfa;
  copy.finals = std::move(finals);
  return toNfa(copy);
}

Nfa compress(const Nfa& n) { return toNfa(minimalDfa(n)); }

Word projectWord(const TaggedAlphabet& alphabet, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter c : w) out.push_back(static_cast<Letter>(alphabet.projectedIndex(c)));
  return out;
}

std::string renderSample(const TaggedAlphabet& alphabet, const Nfa& language) {
  if (auto w = shortestWord(language)) return "\"" + alphabet.renderWord(*w) + "\"";
  return "<none>";
}

std::string joinList(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out.empty() ? "none" : out;
}

// Finite-shift flags along a member word's run through the minimal DFA, one
// per prefix. The flagged region is absorbing, so the flags are monotone.
std::vector<bool> prefixEntryFlags(const SyncClassification& cls, const Word& w) {
  std::vector<bool> flags;
  flags.reserve(w.size() + 1);
  State q = cls.minimal.initial;
  flags.push_back(cls.fsStates[q]);
  for (Letter c : w) {
    q = cls.minimal.step(q, c);
    require(q != kNoState, "run of a member word died in the minimal DFA");
    flags.push_back(cls.fsStates[q]);
  }
  return flags;
}

// Rectangle cover transformed by a pending lockstep difference: the read word
// still owes u (prepended on its side) while the guessed word already consumed
// v ahead (removed from the front of its side). u and v are homogeneous words
// of opposite roles over the combined alphabet.
RecognizableDecomposition shiftDecomposition(const TaggedAlphabet& alphabet,
                                             const RecognizableDecomposition& dec, const Word& u,
                                             const Word& v) {
  RecognizableDecomposition out{dec.base, {}};
  for (const auto& part : dec.parts) {
    Nfa left = part.first;
    Nfa right = part.second;
    if (!v.empty()) {
      Word proj = projectWord(alphabet, v);
      if (alphabet.isInput(v.front()))
        left = leftQuotient(left, proj);
      else
        right = leftQuotient(right, proj);
    }
    if (!u.empty()) {
      Word proj = projectWord(alphabet, u);
      if (alphabet.isInput(u.front()))
        left = concatOf(wordNfa(alphabet.inputAlphabet(), proj), left);
      else
        right = concatOf(wordNfa(alphabet.outputAlphabet(), proj), right);
    }
    if (isEmpty(left) || isEmpty(right)) continue;
    out.parts.emplace_back(std::move(left), std::move(right));
  }
  return out;
}

// Automatic relation transformed by a pending lockstep difference: the read
// word still owes u (prepended on its side of every pair) while the guessed
// word already consumed v ahead (removed from the front of its side). With u
// on the output track this is { (s, u·t) : (v·s, t) in r }, mirrored when the
// roles are swapped; u and v are homogeneous words of opposite roles and equal
// length delta.
//
// Built as a delayed product on r's convolution DFA: reading conv position i
// of a candidate pair supplies the checked track's letter for emission i - delta
// and the buffered track's letter for emission i + delta, so the simulation
// runs delta behind the input with a 2*delta window of buffered letters. At
// word end the still-buffered letters flush against pad.
AutomaticRelation shiftedRelation(const TaggedAlphabet& alphabet, const AutomaticRelation& r,
                                  const Word& u, const Word& v) {
  if (u.empty() && v.empty()) return r;
  require(!u.empty() && !v.empty() && u.size() == v.size() &&
              alphabet.isInput(u.front()) != alphabet.isInput(v.front()),
          "pending lockstep difference must be balanced with opposite roles");
  const ConvAlphabet& conv = r.conv;
  const Dfa& D = r.dfa;
  const std::uint32_t delta = static_cast<std::uint32_t>(u.size());
  const bool buffersInputs = alphabet.isInput(v.front());  // v's track carries the delay
  const Word owedProj = projectWord(alphabet, v);
  const Word aheadProj = projectWord(alphabet, u);
  const std::uint32_t padBuf =
      static_cast<std::uint32_t>(buffersInputs ? conv.padIn() : conv.padOut());
  const std::uint32_t padAhead =
      static_cast<std::uint32_t>(buffersInputs ? conv.padOut() : conv.padIn());
  auto compose = [&](std::uint32_t bufComp, std::uint32_t aheadComp) {
    return buffersInputs ? conv.make(bufComp, aheadComp) : conv.make(aheadComp, bufComp);
  };
  // Key layout: {phase, dfa state, buffered letters...}; phase counts read
  // positions, saturating at 2*delta once the window is full.
  auto isFinalKey = [&](const std::vector<std::uint32_t>& key) {
    const std::uint32_t phase = key[0];
    if (phase < delta) return false;  // the checked track's owed prefix never completed
    State cur = static_cast<State>(key[1]);
    for (std::uint32_t j = phase - delta; j < delta; ++j) {
      cur = D.step(cur, compose(owedProj[j], padAhead));
      if (cur == kNoState) return false;
    }
    for (std::size_t k = 2; k < key.size(); ++k) {
      if (key[k] == padBuf) break;
      cur = D.step(cur, compose(key[k], padAhead));
      if (cur == kNoState) return false;
    }
    return static_cast<bool>(D.finals[cur]);
  };
  Nfa out;
  out.alphabet = conv.alphabet();
  out.numStates = 0;
  out.finals.clear();
  std::map<std::vector<std::uint32_t>, State> index;
  std::vector<std::vector<std::uint32_t>> keys;
  auto intern = [&](std::vector<std::uint32_t> key) {
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (keys.size() >= kProfileBudget)
      throwUnsupported("ProfileBudget", "the pending-difference product exceeded the state budget");
    State id = static_cast<State>(out.numStates);
    ++out.numStates;
    out.finals.push_back(isFinalKey(key));
    index.emplace(key, id);
    keys.push_back(std::move(key));
    return id;
  };
  intern({0, D.initial});
  const std::size_t sigma = conv.alphabet().size();
  for (std::size_t head = 0; head < keys.size(); ++head) {
    const std::vector<std::uint32_t> key = keys[head];  // copy: keys may reallocate
    const std::uint32_t phase = key[0];
    const State d = static_cast<State>(key[1]);
    for (Letter c = 0; c < sigma; ++c) {
      const auto [ci, co] = conv.split(c);
      const std::uint32_t bufComp = static_cast<std::uint32_t>(buffersInputs ? ci : co);
      const std::uint32_t aheadComp = static_cast<std::uint32_t>(buffersInputs ? co : ci);
      std::vector<std::uint32_t> next;
      next.reserve(key.size() + 1);
      next.push_back(std::min(phase + 1, 2 * delta));
      State d2 = d;
      if (phase < delta) {
        if (aheadComp != aheadProj[phase]) continue;
        next.push_back(static_cast<std::uint32_t>(d2));
        next.insert(next.end(), key.begin() + 2, key.end());
      } else {
        std::size_t dropped = 0;
        std::uint32_t emitBuf;
        if (phase < 2 * delta) {
          emitBuf = owedProj[phase - delta];
        } else {
          emitBuf = key[2];
          dropped = 1;
        }
        if (emitBuf == padBuf && aheadComp == padAhead) continue;  // past the pair's end
        d2 = D.step(d, compose(emitBuf, aheadComp));
        if (d2 == kNoState) continue;
        next.push_back(static_cast<std::uint32_t>(d2));
        next.insert(next.end(), key.begin() + 2 + dropped, key.end());
      }
      next.push_back(bufComp);
      out.addTransition(static_cast<State>(head), c, intern(std::move(next)));
    }
  }
  out.normalize();
  return makeAutomatic(alphabet, out);
}

// Lazily computed relations of the residual languages at a DFA's states.
class ResidualRelations {
 public:
  ResidualRelations(const TaggedAlphabet& alphabet, const Dfa& dfa)
      : alphabet_(&alphabet), dfa_(&dfa) {}
  const AutomaticRelation& at(State q) {
    auto it = memo_.find(q);
    if (it == memo_.end())
      it = memo_.emplace(q, relationOfSync(*alphabet_, toNfa(withInitial(*dfa_, q)))).first;
    return it->second;
  }

 private:
  const TaggedAlphabet* alphabet_;
  const Dfa* dfa_;
  std::map<State, AutomaticRelation> memo_;
};

// Shared context for the selection deciders: the target's minimal DFA with
// finite-shift flags, and the completed DFA of the source's lag-bounded
// closure, whose state residuals are the pair sets still acceptable after a
// prefix of bounded lag.
struct SelectionContext {
  SyncClassification clsS, clsT;
  std::size_t gammaTilde = 1;
  Nfa sourceShape;  // lag-bounded closure of the source
  Dfa A;            // completed minimal DFA of sourceShape
};

SelectionContext makeSelectionContext(const TaggedAlphabet& alphabet, const Nfa& S, const Nfa& T,
                                      const char* sourceName, const char* targetName) {
  SelectionContext ctx;
  ctx.clsS = classifyShiftlag(alphabet, S, sourceName);
  ctx.clsT = classifyShiftlag(alphabet, T, targetName);
  ctx.gammaTilde = std::max(ctx.clsS.gamma.value_or(0), ctx.clsT.gamma.value_or(0)) + 1;
  ctx.sourceShape = fullGammaLagged(alphabet, S, ctx.gammaTilde);
  ctx.A = completed(minimalDfa(ctx.sourceShape));
  return ctx;
}

// Target words that never reach a finite-shift residual. Their pair lies in
// the source relation exactly when the word itself lies in the source's
// lag-bounded closure, and they are order-maximal vacuously.
Nfa neverEnteringPart(const SelectionContext& ctx) {
  const Dfa& B = ctx.clsT.minimal;
  std::vector<bool> finals(B.numStates);
  for (State q = 0; q < B.numStates; ++q) finals[q] = B.finals[q] && !ctx.clsT.fsStates[q];
  return intersectOf(ctx.sourceShape, nfaWithFinals(B, finals));
}

}  // namespace

bool syncOrderLeq(const TaggedAlphabet& alphabet, const Nfa& T, const Word& w,
                  const Word& wPrime) {
  SyncClassification cls = classifyShiftlag(alphabet, T, "the target language");
  if (!cls.minimal.member(w) || !cls.minimal.member(wPrime))
    throwPrecondition("NotInLanguage", "both words must belong to the target language");
  if (pairOf(alphabet, w) != pairOf(alphabet, wPrime))
    throwPrecondition("NotSamePair", "the words must synchronize the same input-output pair");
  std::vector<bool> mine = prefixEntryFlags(cls, w);
  std::vector<bool> theirs = prefixEntryFlags(cls, wPrime);
  for (std::size_t i = 0; i < mine.size(); ++i)
    if (theirs[i] && !mine[i]) return false;
  return true;
}

Nfa largerSyncSet(const TaggedAlphabet& alphabet, const Nfa& T, const Nfa& Tsub) {
  SyncClassification clsT = classifyShiftlag(alphabet, T, "the ambient language");
  if (!includes(T, Tsub))
    throwPrecondition("NotSubset", "the comparison language must be contained in the ambient one");
  Nfa none = emptyNfa(alphabet.combined());
  if (isEmpty(T) || isEmpty(Tsub)) return none;
  const Dfa& B = clsT.minimal;
  const std::vector<bool>& fs = clsT.fsStates;
  // When the whole language is a finite-shift residual already, every word
  // enters the region at position zero and nothing lies strictly above.
  if (fs[B.initial]) return none;
  Dfa sub = minimalDfa(Tsub);
  DiffTracker tracker(alphabet, *clsT.gamma + 1);

  // Lockstep entry machine: read a prefix x of the candidate (kept outside the
  // finite-shift region), guess a same-length prefix y of a comparison word,
  // and stop at y's first step into the region. A terminal is keyed by the
  // candidate's residual state, the comparison word's residual state, and the
  // pending difference of the two prefixes.
  using Pre = std::tuple<State, State, State, int>;  // (x in B, y in B, y in sub, pending)
  std::map<Pre, State> preIndex;
  std::vector<Pre> pending;
  std::map<std::tuple<State, State, int>, State> accepts;
  Nfa skeleton;
  skeleton.alphabet = alphabet.combined();
  skeleton.numStates = 0;
  auto intern = [&](const Pre& s) {
    auto [it, fresh] = preIndex.try_emplace(s, static_cast<State>(skeleton.numStates));
    if (fresh) {
      ++skeleton.numStates;
      pending.push_back(s);
    }
    return it->second;
  };
  intern({B.initial, B.initial, sub.initial, tracker.initial()});
  for (std::size_t i = 0; i < pending.size(); ++i) {
    auto [xc, yc, yq, d] = pending[i];
    State from = preIndex.at({xc, yc, yq, d});
    for (Letter cx = 0; cx < alphabet.size(); ++cx) {
      State xc2 = B.step(xc, cx);
      if (xc2 == kNoState || fs[xc2]) continue;
      for (Letter cy = 0; cy < alphabet.size(); ++cy) {
        State yc2 = B.step(yc, cy);
        if (yc2 == kNoState) continue;
        State yq2 = sub.step(yq, cy);
        if (yq2 == kNoState) continue;
        int d2 = tracker.step(d, cx, cy);
        if (d2 == DiffTracker::kDead) continue;
        if (fs[yc2]) {
          auto [it, fresh] =
              accepts.try_emplace({xc2, yq2, d2}, static_cast<State>(skeleton.numStates));
          if (fresh) ++skeleton.numStates;
          skeleton.addTransition(from, cx, it->second);
        } else {
          skeleton.addTransition(from, cx, intern({xc2, yc2, yq2, d2}));
        }
      }
    }
    if (preIndex.size() + accepts.size() > kLockstepBudget)
      throwUnsupported("LockstepBudget", "the lockstep entry machine exceeded the state budget");
  }
  skeleton.finals.assign(skeleton.numStates, false);
  skeleton.normalize();

  // Behind each terminal, the candidate's tail must complete its residual
  // while its pair, shifted by the pending difference, completes a comparison
  // word: that pair set is the rectangle cover of the comparison residual
  // (a finite-shift language) transformed by the difference.
  std::map<State, RecognizableDecomposition> coverCache;
  Nfa result = none;
  for (const auto& [key, accState] : accepts) {
    auto [p, qp, d] = key;
    auto it = coverCache.find(qp);
    if (it == coverCache.end())
      it = coverCache.emplace(qp, decomposeFiniteShift(alphabet, toNfa(withInitial(sub, qp))))
               .first;
    const auto& diff = tracker.pending(d);
    RecognizableDecomposition parts = shiftDecomposition(alphabet, it->second, diff.first,
                                                         diff.second);
    if (parts.parts.empty()) continue;
    Nfa entry = skeleton;
    entry.finals.assign(entry.numStates, false);
    entry.finals[accState] = true;
    result = unionOf(
        result, concatOf(entry, filterByRecognizable(alphabet, toNfa(withInitial(B, p)), parts)));
  }
  return compress(result);
}

Nfa minsyncTT(const TaggedAlphabet& alphabet, const Nfa& T) {
  Nfa bigger = largerSyncSet(alphabet, T, T);
  return compress(differenceOf(T, bigger));
}

Verdict allsyncRegular(const TaggedAlphabet& alphabet, const Nfa& S, const Nfa& T) {
  if (isEmpty(S) || isEmpty(T)) {
    classifyShiftlag(alphabet, S, "the source language");
    classifyShiftlag(alphabet, T, "the target language");
    return {Answer::Yes, "allsync", emptyNfa(alphabet.combined()),
            "an empty operand leaves nothing to select"};
  }
  SelectionContext ctx =
      makeSelectionContext(alphabet, S, T, "the source language", "the target language");
  const Dfa& B = ctx.clsT.minimal;
  const std::vector<bool>& fs = ctx.clsT.fsStates;
  Nfa witness = neverEnteringPart(ctx);

  // Entry machine: prefixes of target words up to their first step into the
  // finite-shift region, keyed by the residual states reached on both sides.
  std::map<std::pair<State, State>, State> accepts;
  Nfa skeleton;
  skeleton.alphabet = alphabet.combined();
  skeleton.numStates = 0;
  if (fs[B.initial]) {
    skeleton.numStates = 1;
    accepts[{ctx.A.initial, B.initial}] = 0;
  } else {
    std::map<std::pair<State, State>, State> preIndex;
    std::vector<std::pair<State, State>> pending;
    auto intern = [&](State a, State b) {
      auto [it, fresh] =
          preIndex.try_emplace({a, b}, static_cast<State>(skeleton.numStates));
      if (fresh) {
        ++skeleton.numStates;
        pending.push_back({a, b});
      }
      return it->second;
    };
    intern(ctx.A.initial, B.initial);
    for (std::size_t i = 0; i < pending.size(); ++i) {
      auto [a, b] = pending[i];
      State from = preIndex.at({a, b});
      for (Letter c = 0; c < alphabet.size(); ++c) {
        State a2 = ctx.A.step(a, c);
        State b2 = B.step(b, c);
        if (b2 == kNoState) continue;
        if (fs[b2]) {
          auto [it, fresh] =
              accepts.try_emplace({a2, b2}, static_cast<State>(skeleton.numStates));
          if (fresh) ++skeleton.numStates;
          skeleton.addTransition(from, c, it->second);
        } else {
          skeleton.addTransition(from, c, intern(a2, b2));
        }
      }
    }
  }
  skeleton.finals.assign(skeleton.numStates, false);
  skeleton.normalize();

  ResidualRelations relA(alphabet, ctx.A), relB(alphabet, B);
  for (const auto& [key, accState] : accepts) {
    auto [p, q] = key;
    AutomaticRelation selected = relIntersect(relA.at(p), relB.at(q));
    if (relIsEmpty(selected)) continue;
    Nfa entry = skeleton;
    entry.finals.assign(entry.numStates, false);
    entry.finals[accState] = true;
    auto cover = recognizableDecomposition(selected);
    if (!cover)
      return {Answer::No, "allsync", std::nullopt,
              "after the finite-shift entry prefix " + renderSample(alphabet, entry) +
                  " the selected pairs are not a finite union of rectangles, so the selection"
                  " is not regular"};
    if (cover->parts.empty()) continue;
    witness = unionOf(
        witness, concatOf(entry, filterByRecognizable(alphabet, toNfa(withInitial(B, q)), *cover)));
  }
  return {Answer::Yes, "allsync", compress(witness),
          "every finite-shift entry leaves a rectangle-coverable pair set"};
}

Verdict minsyncRegular(const TaggedAlphabet& alphabet, const Nfa& S, const Nfa& T) {
  classifyShiftlag(alphabet, S, "the source language");
  Nfa minimalPart = minsyncTT(alphabet, T);
  Verdict v = allsyncRegular(alphabet, S, minimalPart);
  v.method = "minsync";
  v.reason = "on the order-minimal selection of the target: " + v.reason;
  return v;
}

Verdict maxsyncRegular(const TaggedAlphabet& alphabet, const Nfa& S, const Nfa& T) {
  if (isEmpty(S) || isEmpty(T)) {
    classifyShiftlag(alphabet, S, "the source language");
    classifyShiftlag(alphabet, T, "the target language");
    return {Answer::Yes, "maxsync", emptyNfa(alphabet.combined()),
            "an empty operand leaves nothing to select"};
  }
  SelectionContext ctx =
      makeSelectionContext(alphabet, S, T, "the source language", "the target language");
  const Dfa& B = ctx.clsT.minimal;
  const std::vector<bool>& fs = ctx.clsT.fsStates;
  DiffTracker tracker(alphabet, ctx.gammaTilde);
  Nfa witness = neverEnteringPart(ctx);

  // Profile machine: read a prefix y of a target word up to its first step
  // into the finite-shift region while tracking, for every same-length
  // alternative prefix that stays outside the region, the alternative's
  // residual state and the pending difference with y. A word maximal for the
  // order must avoid completing any tracked alternative on the same pair.
  using GSet = std::vector<std::pair<State, int>>;
  using Key = std::tuple<State, State, GSet>;
  std::map<Key, State> accepts;
  Nfa skeleton;
  skeleton.alphabet = alphabet.combined();
  skeleton.numStates = 0;
  if (fs[B.initial]) {
    skeleton.numStates = 1;
    accepts[{ctx.A.initial, B.initial, GSet{}}] = 0;
  } else {
    std::map<Key, State> preIndex;
    std::vector<Key> pending;
    auto intern = [&](const Key& s) {
      auto [it, fresh] = preIndex.try_emplace(s, static_cast<State>(skeleton.numStates));
      if (fresh) {
        ++skeleton.numStates;
        pending.push_back(s);
      }
      return it->second;
    };
    intern({ctx.A.initial, B.initial, GSet{{B.initial, tracker.initial()}}});
    for (std::size_t i = 0; i < pending.size(); ++i) {
      Key current = pending[i];
      const auto& [a, b, alts] = current;
      State from = preIndex.at(current);
      for (Letter c = 0; c < alphabet.size(); ++c) {
        State a2 = ctx.A.step(a, c);
        State b2 = B.step(b, c);
        if (b2 == kNoState) continue;
        GSet next;
        for (const auto& [r, d] : alts) {
          for (Letter cg = 0; cg < alphabet.size(); ++cg) {
            State r2 = B.step(r, cg);
            if (r2 == kNoState || fs[r2]) continue;
            int d2 = tracker.step(d, c, cg);
            if (d2 == DiffTracker::kDead) continue;
            next.push_back({r2, d2});
          }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (fs[b2]) {
          auto [it, fresh] = accepts.try_emplace({a2, b2, std::move(next)},
                                                 static_cast<State>(skeleton.numStates));
          if (fresh) ++skeleton.numStates;
          skeleton.addTransition(from, c, it->second);
        } else {
          skeleton.addTransition(from, c, intern({a2, b2, std::move(next)}));
        }
      }
      if (preIndex.size() + accepts.size() > kProfileBudget)
        throwUnsupported("ProfileBudget", "the entry profile machine exceeded the state budget");
    }
  }
  skeleton.finals.assign(skeleton.numStates, false);
  skeleton.normalize();

  ResidualRelations relA(alphabet, ctx.A), relB(alphabet, B);
  std::map<std::pair<State, State>, AutomaticRelation> pairCache;
  std::map<std::pair<State, int>, AutomaticRelation> altCache;
  for (const auto& [key, accState] : accepts) {
    const auto& [p, q, alts] = key;
    auto pIt = pairCache.find({p, q});
    if (pIt == pairCache.end())
      pIt = pairCache.emplace(std::make_pair(p, q), relIntersect(relA.at(p), relB.at(q))).first;
    AutomaticRelation selected = pIt->second;
    for (const auto& alt : alts) {
      if (relIsEmpty(selected)) break;
      auto it = altCache.find(alt);
      if (it == altCache.end()) {
        const auto& diff = tracker.pending(alt.second);
        it = altCache
                 .emplace(alt,
                          shiftedRelation(alphabet, relB.at(alt.first), diff.first, diff.second))
                 .first;
      }
      selected = relDifference(selected, it->second);
    }
    if (relIsEmpty(selected)) continue;
    Nfa entry = skeleton;
    entry.finals.assign(entry.numStates, false);
    entry.finals[accState] = true;
    auto cover = recognizableDecomposition(selected);
    if (!cover)
      return {Answer::No, "maxsync", std::nullopt,
              "after the finite-shift entry prefix " + renderSample(alphabet, entry) +
                  " the order-maximal pairs are not a finite union of rectangles, so the"
                  " selection is not regular"};
    if (cover->parts.empty()) continue;
    witness = unionOf(
        witness, concatOf(entry, filterByRecognizable(alphabet, toNfa(withInitial(B, q)), *cover)));
  }
  return {Answer::Yes, "maxsync", compress(witness),
          "every entry profile leaves a rectangle-coverable set of order-maximal pairs"};
}

bool isUnambiguous(const TaggedAlphabet& alphabet, const Nfa& T) {
  SyncClassification cls = classifyShiftlag(alphabet, T, "the target language");
  if (isEmpty(T)) return true;
  const Dfa& D = cls.minimal;
  std::size_t n = D.numStates;
  std::size_t nIn = alphabet.numInputs(), nOut = alphabet.numOutputs();
  Alphabet baseIn = alphabet.inputAlphabet(), baseOut = alphabet.outputAlphabet();

  // Annotate every letter with the minimal-DFA state it was read from; the
  // language is unambiguous exactly when no two canonical representatives of
  // annotated runs spell the same base word with diverging annotations.
  std::vector<std::string> annIn, annOut;
  annIn.reserve(n * nIn);
  annOut.reserve(n * nOut);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t k = 0; k < nIn; ++k)
      annIn.push_back(baseIn.name(static_cast<Letter>(k)) + "@" + std::to_string(q));
    for (std::size_t k = 0; k < nOut; ++k)
      annOut.push_back(baseOut.name(static_cast<Letter>(k)) + "@" + std::to_string(q));
  }
  TaggedAlphabet ann(annIn, annOut);
  Nfa runs;
  runs.alphabet = ann.combined();
  runs.numStates = n;
  runs.initial = D.initial;
  runs.finals = D.finals;
  for (State q = 0; q < n; ++q) {
    for (Letter c = 0; c < alphabet.size(); ++c) {
      State r = D.step(q, c);
      if (r == kNoState) continue;
      std::size_t k = alphabet.projectedIndex(c);
      Letter lc = alphabet.isInput(c) ? ann.inputLetter(q * nIn + k)
                                      : ann.outputLetter(q * nOut + k);
      runs.addTransition(q, lc, r);
    }
  }
  runs.normalize();
  Nfa canon = trim(removeEpsilon(toCanonicalShiftlag(ann, runs)));

  auto decode = [&](Letter lc) -> std::pair<Letter, std::size_t> {
    if (lc < n * nIn) return {static_cast<Letter>(lc % nIn), lc / nIn};
    std::size_t k = lc - n * nIn;
    return {static_cast<Letter>(nIn + k % nOut), k / nOut};
  };
  // Self-product pairing positions with equal base letters; a reachable pair
  // of final states with an annotation mismatch exhibits two distinct
  // synchronizations of one pair.
  std::map<std::tuple<State, State, bool>, int> seen;
  std::vector<std::tuple<State, State, bool>> queue;
  auto push = [&](State s1, State s2, bool bit) {
    if (seen.emplace(std::tuple{s1, s2, bit}, 0).second) queue.push_back({s1, s2, bit});
  };
  push(canon.initial, canon.initial, false);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [s1, s2, bit] = queue[i];
    if (bit && canon.finals[s1] && canon.finals[s2]) return false;
    auto [t1, e1] = canon.transitionsFrom(s1);
    for (; t1 != e1; ++t1) {
      auto [base1, tag1] = decode(t1->letter);
      auto [t2, e2] = canon.transitionsFrom(s2);
      for (; t2 != e2; ++t2) {
        auto [base2, tag2] = decode(t2->letter);
        if (base1 != base2) continue;
        push(t1->to, t2->to, bit || tag1 != tag2);
      }
    }
  }
  return true;
}

bool isPrefixClosedEven(const TaggedAlphabet& alphabet, const Nfa& U) {
  Nfa control;
  control.alphabet = alphabet.combined();
  control.numStates = 2;
  control.finals = {true, false};
  for (Letter c = 0; c < alphabet.size(); ++c) {
    if (alphabet.isInput(c))
      control.addTransition(0, c, 1);
    else
      control.addTransition(1, c, 0);
  }
  control.normalize();
  if (!isControlled(U, control))
    throwPrecondition("NotAlternating",
                      "the block language must consist of even input-output alternations");
  if (isEmpty(U)) return true;
  Nfa ne = trim(removeEpsilon(U));
  // {u : some u a b is accepted}: shift the finals two alternating steps back.
  std::vector<bool> stripped(ne.numStates, false);
  for (State q = 0; q < ne.numStates; ++q) {
    auto [t1, e1] = ne.transitionsFrom(q);
    for (; t1 != e1 && !stripped[q]; ++t1) {
      if (!alphabet.isInput(t1->letter)) continue;
      auto [t2, e2] = ne.transitionsFrom(t1->to);
      for (; t2 != e2; ++t2) {
        if (alphabet.isOutput(t2->letter) && ne.finals[t2->to]) {
          stripped[q] = true;
          break;
        }
      }
    }
  }
  Nfa parent = ne;
  parent.finals = std::move(stripped);
  return includes(U, parent);
}

Dfa maxsyncPrefixClosed(const TaggedAlphabet& alphabet, const Nfa& U) {
  if (!isPrefixClosedEven(alphabet, U))
    throwPrecondition("NotPrefixClosed",
                      "the block language must be closed under removing its last pair");
  Nfa inStar = roleStar(alphabet, Role::Input);
  Nfa outStar = roleStar(alphabet, Role::Output);
  // A word u x y with u in U, x all-input, y all-output is order-maximal in
  // U inputs* outputs* exactly when x or y is empty or the one-pair extension
  // of its longest block decomposition leaves U.
  Nfa result = unionOf(concatOf(U, inStar), concatOf(U, outStar));
  if (!isEmpty(U)) {
    Nfa ne = trim(removeEpsilon(U));
    for (std::size_t ai = 0; ai < alphabet.numInputs(); ++ai) {
      Letter a = alphabet.inputLetter(ai);
      for (std::size_t bi = 0; bi < alphabet.numOutputs(); ++bi) {
        Letter b = alphabet.outputLetter(bi);
        std::vector<bool> extended(ne.numStates, false);
        for (State q = 0; q < ne.numStates; ++q) {
          auto [t1, e1] = ne.transitionsFrom(q);
          for (; t1 != e1 && !extended[q]; ++t1) {
            if (t1->letter != a) continue;
            auto [t2, e2] = ne.transitionsFrom(t1->to);
            for (; t2 != e2; ++t2) {
              if (t2->letter == b && ne.finals[t2->to]) {
                extended[q] = true;
                break;
              }
            }
          }
        }
        Nfa withPair = ne;
        withPair.finals = std::move(extended);
        Nfa blocked = differenceOf(U, withPair);
        if (isEmpty(blocked)) continue;
        Nfa tail = concatOf(wordNfa(alphabet.combined(), {a}),
                            concatOf(inStar, concatOf(wordNfa(alphabet.combined(), {b}), outStar)));
        result = unionOf(result, concatOf(blocked, tail));
      }
    }
  }
  return minimalDfa(result);
}

Verdict isPrefixRecognizable(const AutomaticRelation& r) {
  const TaggedAlphabet& alphabet = r.base;
  if (!(alphabet.inputAlphabet() == alphabet.outputAlphabet()))
    throwPrecondition("AlphabetShapeMismatch",
                      "prefix recognizability needs matching input and output letter names");
  // Target: an alternating prefix matching inputs to equal outputs, then one
  // input block and one output block. Its relation is all pairs, and its
  // order-maximal self-selection is regular, so regularity of the maximal
  // selection decides definability here.
  Nfa matched;
  matched.alphabet = alphabet.combined();
  matched.numStates = 1 + alphabet.numInputs();
  matched.finals.assign(matched.numStates, false);
  matched.finals[0] = true;
  for (std::size_t k = 0; k < alphabet.numInputs(); ++k) {
    matched.addTransition(0, alphabet.inputLetter(k), static_cast<State>(1 + k));
    matched.addTransition(static_cast<State>(1 + k), alphabet.outputLetter(k), 0);
  }
  matched.normalize();
  Nfa target = concatOf(matched, inputsThenOutputs(alphabet));
  Verdict v = maxsyncRegular(alphabet, canonicalSyncOf(r), target);
  v.method = "prefix-recognizable";
  if (v.answer == Answer::Yes)
    v.reason = "the relation is a finite union of shared-prefix rectangles";
  else
    v.reason = "no finite family of shared-prefix rectangles covers the relation; " + v.reason;
  return v;
}

Verdict decideDefinability(const TaggedAlphabet& alphabet, const Nfa& S, const Nfa& T) {
  if (equivalent(S, T))
    return {Answer::Yes, "identical-languages", compress(T),
            "the source and target coincide, so the target defines its own relation"};
  SyncClassification clsS = classify(alphabet, S);
  SyncClassification clsT = classify(alphabet, T);

  if (clsS.finiteness.shiftlagFinite && clsT.finiteness.shiftlagFinite) {
    Nfa canonS = toCanonicalShiftlag(alphabet, S);
    Nfa canonT = toCanonicalShiftlag(alphabet, T);
    if (!includes(canonT, canonS)) {
      Nfa gap = differenceOf(canonS, canonT);
      return {Answer::No, "pair-containment", std::nullopt,
              "a source pair lies outside the target relation; canonical sample " +
                  renderSample(alphabet, gap)};
    }
    if (clsS.finiteness.shiftFinite) {
      RecognizableDecomposition cover = decomposeFiniteShift(alphabet, S);
      return {Answer::Yes, "recognizable-source",
              compress(filterByRecognizable(alphabet, T, cover)),
              "the source relation is a finite union of rectangles, and selecting its pairs"
              " inside the target is regular"};
    }
    if (clsT.finiteness.shiftFinite) {
      auto cover = recognizableDecomposition(relationOfSync(alphabet, S));
      if (!cover)
        return {Answer::No, "finite-shift-target", std::nullopt,
                "every regular subset of a finite-shift target carries a relation that is a"
                " finite union of rectangles, but the source relation is not one"};
      return {Answer::Yes, "finite-shift-target",
              compress(filterByRecognizable(alphabet, T, *cover)),
              "the source relation is a finite union of rectangles selected inside the target"};
    }
    std::vector<std::string> attempted;
    if (isUnambiguous(alphabet, T)) {
      Verdict v = minsyncRegular(alphabet, S, T);
      std::string note =
          v.answer == Answer::Yes
              ? "the target synchronizes each pair once and the selection is regular"
              : "the target synchronizes each pair once, so the unique candidate selection"
                " must be regular; " +
                    v.reason;
      return {v.answer, "unambiguous-target", std::move(v.witness), std::move(note)};
    }
    attempted.push_back("unambiguous-target");
    if (maxsyncRegular(alphabet, T, T).answer == Answer::Yes) {
      Verdict v = maxsyncRegular(alphabet, S, T);
      std::string note =
          v.answer == Answer::Yes
              ? "the target's order-maximal self-selection is regular and so is the source's"
                " maximal selection"
              : "the target's order-maximal self-selection is regular, so definability needs"
                " the source's maximal selection to be regular; " +
                    v.reason;
      return {v.answer, "regular-max-target", std::move(v.witness), std::move(note)};
    }
    attempted.push_back("regular-max-target");

    // Sufficient cascade: any regular selection carrying exactly the source
    // pairs witnesses definability; failing all three is not conclusive.
    AutomaticRelation relS = relationOfSync(alphabet, S);
    for (int k = 0; k < 3; ++k) {
      const char* name = k == 0 ? "allsync" : k == 1 ? "minsync" : "maxsync";
      Verdict v = k == 0   ? allsyncRegular(alphabet, S, T)
                  : k == 1 ? minsyncRegular(alphabet, S, T)
                           : maxsyncRegular(alphabet, S, T);
      attempted.push_back(name);
      if (v.answer != Answer::Yes) continue;
      require(v.witness.has_value(), "a regular selection must come with a witness");
      require(relEquivalent(relationOfSync(alphabet, *v.witness), relS),
              "selection witness does not carry the source relation");
      return {Answer::Yes, std::string("sufficient-checks/") + name, std::move(v.witness),
              "a regular selection of the target carries exactly the source relation"};
    }
    return {Answer::Unknown, "sufficient-checks", std::nullopt,
            "no decidable case applies and the candidate selections are all non-regular; the"
            " relation may still be definable through an irregular selection (attempted: " +
                joinList(attempted) + ")"};
  }

  // An operand has unbounded shiftlag: only sufficient checks remain.
  std::vector<std::string> attempted;
  if (clsS.finiteness.shiftlagFinite) {
    AutomaticRelation relS = relationOfSync(alphabet, S);
    attempted.push_back("recognizable-source");
    if (auto cover = recognizableDecomposition(relS)) {
      Nfa selected = trim(removeEpsilon(filterByRecognizable(alphabet, T, *cover)));
      SyncClassification clsSel = classify(alphabet, selected);
      if (clsSel.finiteness.shiftlagFinite) {
        if (relEquivalent(relationOfSync(alphabet, selected), relS))
          return {Answer::Yes, "recognizable-source", compress(selected),
                  "selecting the source's rectangle pairs inside the target keeps the whole"
                  " relation"};
        return {Answer::No, "pair-containment", std::nullopt,
                "the target misses part of the source relation: selecting the source pairs"
                " inside the target loses pairs"};
      }
    }
    attempted.push_back("shape-intersection");
    Nfa shaped =
        trim(removeEpsilon(intersectOf(T, fullGammaLagged(alphabet, S, *clsS.gamma + 1))));
    if (relEquivalent(relationOfSync(alphabet, shaped), relS))
      return {Answer::Yes, "shape-intersection", compress(shaped),
              "the lag-bounded part of the target already carries the source relation"};
  }
  return {Answer::Unknown, "open-fragment", std::nullopt,
          "an operand has unbounded shiftlag, outside the decidable fragment (attempted: " +
              joinList(attempted) + ")"};
}

std::pair<Nfa, Nfa> separabilityToDefinability(const AutomaticRelation& r1,
                                               const AutomaticRelation& r2) {
  if (!(r1.base == r2.base))
    throwAlphabetMismatch("the relations must share one tagged alphabet");
  if (!relIsEmpty(relIntersect(r1, r2)))
    throwPrecondition("NotDisjoint", "the relations must be disjoint");
  const TaggedAlphabet& alphabet = r1.base;
  // A rectangle union contains the first relation and misses the second
  // exactly when the complement of the second, as a source, is definable in
  // the target made of all inputs-first words plus the canonical words of the
  // pairs in neither relation: a defining selection intersected with the
  // inputs-first block is forced to be a rectangle union sitting between them.
  AutomaticRelation notSecond = relComplement(r2);
  Nfa source = canonicalSyncOf(notSecond);
  AutomaticRelation neither = relIntersect(relComplement(r1), notSecond);
  Nfa target = unionOf(inputsThenOutputs(alphabet), canonicalSyncOf(neither));
  return {compress(source), compress(target)};
}

}  // namespace syncrel
