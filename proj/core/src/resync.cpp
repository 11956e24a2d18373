#include "syncrel/resync.hpp"

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "syncrel/errors.hpp"

namespace syncrel {

namespace {

constexpr std::size_t kPartBudget = 20000;

State runFrom(const Dfa& dfa, State q, const Word& w) {
  for (Letter a : w) {
    if (q == kNoState) break;
    q = dfa.step(q, a);
  }
  return q;
}

// Nonempty same-role words leading from `from` to `to`, over the projected
// side alphabet.
Nfa blockLanguage(const TaggedAlphabet& tagged, const Dfa& dfa, State from, State to, Role role) {
  Nfa h;
  h.alphabet = role == Role::Input ? tagged.inputAlphabet() : tagged.outputAlphabet();
  h.numStates = dfa.numStates + 1;
  const State start = static_cast<State>(dfa.numStates);
  h.initial = start;
  h.finals.assign(h.numStates, false);
  h.finals[to] = true;
  for (State q = 0; q < dfa.numStates; ++q)
    for (Letter a = 0; a < dfa.alphabet.size(); ++a) {
      if (tagged.role(a) != role) continue;
      const State t = dfa.step(q, a);
      if (t == kNoState) continue;
      const Letter p = static_cast<Letter>(tagged.projectedIndex(a));
      h.addTransition(q, p, t);
      if (q == from) h.addTransition(start, p, t);
    }
  h.normalize();
  return trim(h);
}

// Shared scaffolding for walking the maximal-block structure of a DFA.
struct BlockContext {
  const TaggedAlphabet& tagged;
  const Dfa& dfa;
  // reach[role][q]: states reachable from q by one or more `role` transitions.
  std::vector<std::vector<State>> reach[2];
  std::map<std::tuple<State, State, int>, Nfa> blockCache;

  BlockContext(const TaggedAlphabet& t, const Dfa& d) : tagged(t), dfa(d) {
    std::vector<std::vector<State>> adj[2];
    for (int r = 0; r < 2; ++r) adj[r].assign(d.numStates, {});
    for (State q = 0; q < d.numStates; ++q)
      for (Letter a = 0; a < d.alphabet.size(); ++a) {
        const State to = d.step(q, a);
        if (to != kNoState) adj[t.isInput(a) ? 0 : 1][q].push_back(to);
      }
    for (int r = 0; r < 2; ++r) {
      reach[r].assign(d.numStates, {});
      for (State q = 0; q < d.numStates; ++q) {
        std::vector<bool> seen(d.numStates, false);
        std::deque<State> work(adj[r][q].begin(), adj[r][q].end());
        while (!work.empty()) {
          const State s = work.front();
          work.pop_front();
          if (seen[s]) continue;
          seen[s] = true;
          reach[r][q].push_back(s);
          for (State nx : adj[r][s]) work.push_back(nx);
        }
      }
    }
  }

  const Nfa& block(State from, State to, int role) {
    auto it = blockCache.find({from, to, role});
    if (it == blockCache.end())
      it = blockCache
               .emplace(std::tuple{from, to, role},
                        blockLanguage(tagged, dfa, from, to, role == 0 ? Role::Input : Role::Output))
               .first;
    return it->second;
  }
};

struct BlockStep {
  int role;  // 0 input, 1 output
  State from, to;
};

// Every maximal-block pattern from `start` to an accepting state yields one
// rectangle: the concatenation of its input blocks times that of its output
// blocks. Sound because the blocks of a pattern connect fixed states, so any
// mix of block words recombines into an accepted word.
std::vector<std::pair<Dfa, Dfa>> decomposeParts(BlockContext& ctx, State start) {
  std::vector<std::pair<Dfa, Dfa>> parts;
  std::vector<BlockStep> path;
  std::set<std::pair<State, int>> onStack;

  auto record = [&]() {
    Nfa u = epsilonNfa(ctx.tagged.inputAlphabet());
    Nfa v = epsilonNfa(ctx.tagged.outputAlphabet());
    for (const BlockStep& s : path) {
      const Nfa& h = ctx.block(s.from, s.to, s.role);
      (s.role == 0 ? u : v) = concatOf(s.role == 0 ? u : v, h);
    }
    const Dfa du = minimalDfa(u), dv = minimalDfa(v);
    for (auto& [eu, ev] : parts) {
      if (!isomorphic(ev, dv)) continue;
      if (!isomorphic(eu, du)) eu = minimalDfa(unionOf(toNfa(eu), toNfa(du)));
      return;
    }
    if (parts.size() >= kPartBudget)
      throwUnsupported("DecompositionBudget",
                       "the finite-shift block structure has too many patterns");
    parts.push_back({du, dv});
  };

  // lastRole: -1 before the first block.
  std::function<void(State, int)> visit = [&](State q, int lastRole) {
    if (onStack.count({q, lastRole}))
      throwDefect("finite-shift block graph has a cycle");
    onStack.insert({q, lastRole});
    if (ctx.dfa.finals[q]) record();
    for (int role = 0; role < 2; ++role) {
      if (role == lastRole) continue;
      for (State to : ctx.reach[role][q]) {
        path.push_back({role, q, to});
        visit(to, role);
        path.pop_back();
      }
    }
    onStack.erase({q, lastRole});
  };
  if (ctx.dfa.numStates > 0) visit(start, -1);
  return parts;
}

Nfa inputsStar(const TaggedAlphabet& tagged) {
  Nfa n;
  n.alphabet = tagged.combined();
  n.finals = {true};
  for (std::size_t k = 0; k < tagged.numInputs(); ++k)
    n.addTransition(0, tagged.inputLetter(k), 0);
  n.normalize();
  return n;
}

Nfa outputsStar(const TaggedAlphabet& tagged) {
  Nfa n;
  n.alphabet = tagged.combined();
  n.finals = {true};
  for (std::size_t k = 0; k < tagged.numOutputs(); ++k)
    n.addTransition(0, tagged.outputLetter(k), 0);
  n.normalize();
  return n;
}

}  // namespace

RecognizableDecomposition decomposeFiniteShift(const TaggedAlphabet& alphabet, const Nfa& sync) {
  const auto analysis = analyzeFiniteness(alphabet, sync);
  if (!analysis.shiftFinite)
    throwPrecondition("NotFiniteShift", "a rectangle decomposition needs finite shift");
  const Dfa dfa = minimalDfa(sync);
  BlockContext ctx(alphabet, dfa);
  // The block patterns give a finite rectangle cover whose pieces may overlap;
  // regrouping by section restores the disjoint canonical form.
  AutomaticRelation rel = emptyRelation(alphabet);
  for (const auto& [du, dv] : decomposeParts(ctx, dfa.initial))
    rel = relUnion(rel, crossRelation(alphabet, toNfa(du), toNfa(dv)));
  auto dec = recognizableDecomposition(rel);
  require(dec.has_value(), "a finite rectangle cover must decompose into rectangles");
  return std::move(*dec);
}

Nfa convolutionOfSync(const TaggedAlphabet& tagged, const Nfa& sync) {
  const auto cls = classify(tagged, sync);
  if (!cls.finiteness.shiftlagFinite)
    throwPrecondition("NotFiniteShiftlag", "the relation of this language is not automatic");
  const Dfa& dfa = cls.minimal;
  const std::vector<bool>& fs = cls.fsStates;
  const std::size_t cap = cls.gamma.value() + 1;
  const ConvAlphabet conv(tagged);

  BlockContext ctx(tagged, dfa);
  std::map<State, std::vector<std::pair<Dfa, Dfa>>> partsCache;
  auto partsOf = [&](State f) -> const std::vector<std::pair<Dfa, Dfa>>& {
    auto it = partsCache.find(f);
    if (it == partsCache.end()) it = partsCache.emplace(f, decomposeParts(ctx, f)).first;
    return it->second;
  };

  // Interned construction states. Key layouts:
  //   zone: {0, state, uDone, vDone, |pendIn|, pendIn..., pendOut...}
  //   tail: {1, fsState, part, uState, vState, uDone, vDone}
  //   root: {2} (only when the initial state is already finite-shift)
  Nfa out;
  out.alphabet = conv.alphabet();
  out.numStates = 0;
  out.finals.clear();
  std::map<std::vector<std::uint32_t>, State> index;
  std::deque<std::vector<std::uint32_t>> work;
  auto intern = [&](std::vector<std::uint32_t> key, bool final) {
    auto [it, inserted] = index.try_emplace(std::move(key), static_cast<State>(out.numStates));
    if (inserted) {
      require(out.numStates < kStateCap, "convolution construction exceeded the state cap");
      ++out.numStates;
      out.finals.push_back(final);
      work.push_back(it->first);
    }
    return it->second;
  };
  auto internZone = [&](State q, const Word& pi, const Word& po, bool uD, bool vD) {
    std::vector<std::uint32_t> key{0, q, uD, vD, static_cast<std::uint32_t>(pi.size())};
    key.insert(key.end(), pi.begin(), pi.end());
    key.insert(key.end(), po.begin(), po.end());
    return intern(std::move(key), dfa.finals[q] && pi.empty() && po.empty());
  };
  auto internTail = [&](State f, std::size_t j, State su, State sv, bool uD, bool vD) {
    const auto& part = partsOf(f)[j];
    return intern({1, f, static_cast<std::uint32_t>(j), su, sv, uD, vD},
                  part.first.finals[su] && part.second.finals[sv]);
  };
  // All construction states for "run resumed at q with these pending letters".
  auto enterRun = [&](State q, const Word& pi, const Word& po, bool uD, bool vD) {
    std::vector<State> targets;
    if (!fs[q]) {
      targets.push_back(internZone(q, pi, po, uD, vD));
      return targets;
    }
    const auto& parts = partsOf(q);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const State su = runFrom(parts[j].first, parts[j].first.initial, pi);
      const State sv = runFrom(parts[j].second, parts[j].second.initial, po);
      if (su != kNoState && sv != kNoState) targets.push_back(internTail(q, j, su, sv, uD, vD));
    }
    return targets;
  };

  if (fs[dfa.initial]) {
    out.initial = intern({2}, false);
  } else {
    out.initial = internZone(dfa.initial, {}, {}, false, false);
  }

  while (!work.empty()) {
    const std::vector<std::uint32_t> key = work.front();
    work.pop_front();
    const State id = index.at(key);
    if (key[0] == 2u) {
      for (State t : enterRun(dfa.initial, {}, {}, false, false))
        out.addTransition(id, kEpsilon, t);
      continue;
    }
    if (key[0] == 0u) {
      const State q = key[1];
      const bool uD = key[2] != 0, vD = key[3] != 0;
      const std::size_t ni = key[4];
      const Word pi(key.begin() + 5, key.begin() + 5 + static_cast<long>(ni));
      const Word po(key.begin() + 5 + static_cast<long>(ni), key.end());
      for (Letter c = 0; c < conv.alphabet().size(); ++c) {
        const auto [x, y] = conv.split(c);
        Word pi2 = pi, po2 = po;
        bool uD2 = uD, vD2 = vD;
        if (x == conv.padIn()) {
          uD2 = true;
        } else {
          if (uD) continue;
          pi2.push_back(static_cast<Letter>(x));
          if (pi2.size() > cap) continue;
        }
        if (y == conv.padOut()) {
          vD2 = true;
        } else {
          if (vD) continue;
          po2.push_back(static_cast<Letter>(y));
          if (po2.size() > cap) continue;
        }
        out.addTransition(id, c, internZone(q, pi2, po2, uD2, vD2));
      }
      if (!pi.empty()) {
        const State q2 = dfa.step(q, tagged.inputLetter(pi.front()));
        if (q2 != kNoState)
          for (State t : enterRun(q2, Word(pi.begin() + 1, pi.end()), po, uD, vD))
            out.addTransition(id, kEpsilon, t);
      }
      if (!po.empty()) {
        const State q2 = dfa.step(q, tagged.outputLetter(po.front()));
        if (q2 != kNoState)
          for (State t : enterRun(q2, pi, Word(po.begin() + 1, po.end()), uD, vD))
            out.addTransition(id, kEpsilon, t);
      }
      continue;
    }
    const State f = key[1];
    const std::size_t j = key[2];
    const State su = key[3], sv = key[4];
    const bool uD = key[5] != 0, vD = key[6] != 0;
    const auto& part = partsOf(f)[j];
    for (Letter c = 0; c < conv.alphabet().size(); ++c) {
      const auto [x, y] = conv.split(c);
      State su2 = su, sv2 = sv;
      bool uD2 = uD, vD2 = vD;
      if (x == conv.padIn()) {
        uD2 = true;
      } else {
        if (uD) continue;
        su2 = part.first.step(su, static_cast<Letter>(x));
        if (su2 == kNoState) continue;
      }
      if (y == conv.padOut()) {
        vD2 = true;
      } else {
        if (vD) continue;
        sv2 = part.second.step(sv, static_cast<Letter>(y));
        if (sv2 == kNoState) continue;
      }
      out.addTransition(id, c, internTail(f, j, su2, sv2, uD2, vD2));
    }
  }
  out.normalize();
  return trim(out);
}

AutomaticRelation relationOfSync(const TaggedAlphabet& alphabet, const Nfa& sync) {
  return makeAutomatic(alphabet, convolutionOfSync(alphabet, sync));
}

Nfa canonicalSyncOf(const AutomaticRelation& r) {
  std::vector<Word> images(r.conv.alphabet().size());
  for (Letter c = 0; c < images.size(); ++c) images[c] = r.conv.expansion(c);
  return toNfa(minimalDfa(substitute(toNfa(r.dfa), r.base.combined(), images)));
}

Nfa toCanonicalShiftlag(const TaggedAlphabet& alphabet, const Nfa& sync) {
  return canonicalSyncOf(relationOfSync(alphabet, sync));
}

Nfa toCanonicalShift(const TaggedAlphabet& alphabet, const Nfa& sync) {
  const RecognizableDecomposition dec = decomposeFiniteShift(alphabet, sync);
  std::vector<Word> inImg(alphabet.numInputs()), outImg(alphabet.numOutputs());
  for (std::size_t k = 0; k < inImg.size(); ++k) inImg[k] = {alphabet.inputLetter(k)};
  for (std::size_t k = 0; k < outImg.size(); ++k) outImg[k] = {alphabet.outputLetter(k)};
  Nfa acc = emptyNfa(alphabet.combined());
  for (const auto& [u, v] : dec.parts)
    acc = unionOf(acc, concatOf(substitute(u, alphabet.combined(), inImg),
                                substitute(v, alphabet.combined(), outImg)));
  return toNfa(minimalDfa(acc));
}

Nfa laggedZoneControl(const TaggedAlphabet& alphabet, std::size_t gamma, std::size_t m) {
  Nfa zone;
  zone.alphabet = alphabet.combined();
  zone.numStates = 2 * gamma + 1;
  zone.initial = static_cast<State>(gamma);
  zone.finals.assign(zone.numStates, true);
  for (State s = 0; s < zone.numStates; ++s)
    for (Letter a = 0; a < alphabet.size(); ++a) {
      const long d = static_cast<long>(s) + (alphabet.isInput(a) ? 1 : -1);
      if (d >= 0 && d < static_cast<long>(zone.numStates))
        zone.addTransition(s, a, static_cast<State>(d));
    }
  zone.normalize();
  const Nfa hom = unionOf(inputsStar(alphabet), outputsStar(alphabet));
  Nfa acc = zone;
  for (std::size_t i = 0; i < m; ++i) acc = concatOf(acc, hom);
  return acc;
}

Nfa filterByRecognizable(const TaggedAlphabet& alphabet, const Nfa& sync,
                         const RecognizableDecomposition& parts) {
  if (!(parts.base == alphabet)) throwAlphabetMismatch("decomposition over a different alphabet");
  if (!(sync.alphabet == alphabet.combined()))
    throwAlphabetMismatch("synchronization language over the wrong alphabet");
  const Nfa clean = removeEpsilon(sync);
  Nfa acc = emptyNfa(alphabet.combined());
  for (const auto& [uLang, vLang] : parts.parts) {
    const Dfa du = minimalDfa(uLang), dv = minimalDfa(vLang);
    Nfa prod;
    prod.alphabet = alphabet.combined();
    prod.numStates = clean.numStates * du.numStates * dv.numStates;
    auto id = [&](State t, State a, State b) {
      return static_cast<State>((t * du.numStates + a) * dv.numStates + b);
    };
    prod.initial = id(clean.initial, du.initial, dv.initial);
    prod.finals.assign(prod.numStates, false);
    for (State t = 0; t < clean.numStates; ++t)
      for (State a = 0; a < du.numStates; ++a)
        for (State b = 0; b < dv.numStates; ++b)
          prod.finals[id(t, a, b)] = clean.finals[t] && du.finals[a] && dv.finals[b];
    for (const auto& tr : clean.transitions) {
      const Letter p = static_cast<Letter>(alphabet.projectedIndex(tr.letter));
      const bool input = alphabet.isInput(tr.letter);
      for (State a = 0; a < du.numStates; ++a)
        for (State b = 0; b < dv.numStates; ++b) {
          const State a2 = input ? du.step(a, p) : a;
          const State b2 = input ? b : dv.step(b, p);
          if (a2 == kNoState || b2 == kNoState) continue;
          prod.addTransition(id(tr.from, a, b), tr.letter, id(tr.to, a2, b2));
        }
    }
    prod.normalize();
    acc = unionOf(acc, trim(prod));
  }
  return acc;
}

Nfa filterByAutomatic(const TaggedAlphabet& alphabet, const Nfa& sync, const AutomaticRelation& r,
                      std::size_t gamma, std::size_t m) {
  if (!(r.base == alphabet)) throwAlphabetMismatch("relation over a different alphabet");
  if (!(sync.alphabet == alphabet.combined()))
    throwAlphabetMismatch("synchronization language over the wrong alphabet");
  if (!isControlled(sync, laggedZoneControl(alphabet, gamma, m)))
    throwPrecondition("LagBoundExceeded", "the language leaves the gamma-lagged shape");
  if (m >= 2) {
    // The filtered set need not be regular with two or more trailing blocks;
    // it is regular exactly when the relation restricted to the language's
    // pairs is a finite union of rectangles, so demand that certificate.
    const auto dec = recognizableDecomposition(relIntersect(r, relationOfSync(alphabet, sync)));
    if (!dec)
      throwPrecondition("NotRecognizableOnTarget",
                        "the relation is not recognizable on this language's pairs");
    return filterByRecognizable(alphabet, sync, *dec);
  }

  const Dfa td = minimalDfa(sync);
  const std::size_t cap = gamma + 1;
  // Key: {tState, mode, rState, |pendIn|, pendIn..., pendOut...};
  // mode 0: both tracks live; 1: outputs ended; 2: inputs ended.
  Nfa out;
  out.alphabet = alphabet.combined();
  out.numStates = 0;
  std::map<std::vector<std::uint32_t>, State> index;
  std::deque<std::vector<std::uint32_t>> workList;

  auto flushFinal = [&](State rs, const Word& pi, const Word& po) {
    for (Letter x : pi) {
      if (rs == kNoState) return false;
      rs = r.dfa.step(rs, r.conv.make(x, r.conv.padOut()));
    }
    for (Letter y : po) {
      if (rs == kNoState) return false;
      rs = r.dfa.step(rs, r.conv.make(r.conv.padIn(), y));
    }
    return rs != kNoState && r.dfa.finals[rs];
  };
  auto intern = [&](State t, std::uint32_t mode, State rs, const Word& pi, const Word& po) {
    std::vector<std::uint32_t> key{t, mode, rs, static_cast<std::uint32_t>(pi.size())};
    key.insert(key.end(), pi.begin(), pi.end());
    key.insert(key.end(), po.begin(), po.end());
    auto [it, inserted] = index.try_emplace(std::move(key), static_cast<State>(out.numStates));
    if (inserted) {
      require(out.numStates < kStateCap, "buffered product exceeded the state cap");
      ++out.numStates;
      out.finals.push_back(td.finals[t] && flushFinal(rs, pi, po));
      workList.push_back(it->first);
    }
    return it->second;
  };

  out.finals.clear();
  out.initial = intern(td.initial, 0, r.dfa.initial, {}, {});
  while (!workList.empty()) {
    const std::vector<std::uint32_t> key = workList.front();
    workList.pop_front();
    const State id = index.at(key);
    const State t = key[0];
    const std::uint32_t mode = key[1];
    const State rs = key[2];
    const std::size_t ni = key[3];
    const Word pi(key.begin() + 4, key.begin() + 4 + static_cast<long>(ni));
    const Word po(key.begin() + 4 + static_cast<long>(ni), key.end());

    if (mode == 0) {
      // Guess that one track has ended; pending letters on that track pair
      // with pads right away.
      State rFlushIn = rs;
      for (Letter x : pi)
        rFlushIn = rFlushIn == kNoState ? kNoState
                                        : r.dfa.step(rFlushIn, r.conv.make(x, r.conv.padOut()));
      if (rFlushIn != kNoState) out.addTransition(id, kEpsilon, intern(t, 1, rFlushIn, {}, po));
      State rFlushOut = rs;
      for (Letter y : po)
        rFlushOut = rFlushOut == kNoState ? kNoState
                                          : r.dfa.step(rFlushOut, r.conv.make(r.conv.padIn(), y));
      if (rFlushOut != kNoState) out.addTransition(id, kEpsilon, intern(t, 2, rFlushOut, pi, {}));
    }
    for (Letter a = 0; a < alphabet.size(); ++a) {
      const State t2 = td.step(t, a);
      if (t2 == kNoState) continue;
      const Letter p = static_cast<Letter>(alphabet.projectedIndex(a));
      const bool input = alphabet.isInput(a);
      if (mode == 0) {
        Word pi2 = pi, po2 = po;
        (input ? pi2 : po2).push_back(p);
        State rs2 = rs;
        while (!pi2.empty() && !po2.empty() && rs2 != kNoState) {
          rs2 = r.dfa.step(rs2, r.conv.make(pi2.front(), po2.front()));
          pi2.erase(pi2.begin());
          po2.erase(po2.begin());
        }
        if (rs2 == kNoState || pi2.size() > cap || po2.size() > cap) continue;
        out.addTransition(id, a, intern(t2, 0, rs2, pi2, po2));
      } else if (mode == 1 && input) {
        State rs2;
        Word po2 = po;
        if (!po2.empty()) {
          rs2 = r.dfa.step(rs, r.conv.make(p, po2.front()));
          po2.erase(po2.begin());
        } else {
          rs2 = r.dfa.step(rs, r.conv.make(p, r.conv.padOut()));
        }
        if (rs2 == kNoState) continue;
        out.addTransition(id, a, intern(t2, 1, rs2, {}, po2));
      } else if (mode == 2 && !input) {
        State rs2;
        Word pi2 = pi;
        if (!pi2.empty()) {
          rs2 = r.dfa.step(rs, r.conv.make(pi2.front(), p));
          pi2.erase(pi2.begin());
        } else {
          rs2 = r.dfa.step(rs, r.conv.make(r.conv.padIn(), p));
        }
        if (rs2 == kNoState) continue;
        out.addTransition(id, a, intern(t2, 2, rs2, pi2, {}));
      }
    }
  }
  out.normalize();
  return trim(out);
}

Nfa fullGammaLagged(const TaggedAlphabet& alphabet, const Nfa& sync, std::size_t gamma) {
  const AutomaticRelation r = relationOfSync(alphabet, sync);
  return filterByAutomatic(alphabet, laggedZoneControl(alphabet, gamma, 1), r, gamma, 1);
}

}  // namespace syncrel
