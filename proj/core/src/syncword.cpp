#include "syncrel/syncword.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>

#include "syncrel/errors.hpp"

namespace syncrel {

WordMetrics wordMetrics(const TaggedAlphabet& alphabet, const Word& w) {
  WordMetrics m;
  long diff = 0;
  std::vector<std::size_t> shiftLags;  // lag of the prefix ending at each shift position
  for (std::size_t k = 0; k < w.size(); ++k) {
    diff += alphabet.isInput(w[k]) ? 1 : -1;
    m.lag = std::max(m.lag, static_cast<std::size_t>(std::labs(diff)));
    if (k + 1 < w.size() && alphabet.role(w[k]) != alphabet.role(w[k + 1]))
      shiftLags.push_back(static_cast<std::size_t>(std::labs(diff)));
  }
  m.shift = shiftLags.size();
  for (std::size_t i = 0; i < shiftLags.size(); ++i) {
    std::size_t minLag = shiftLags[i];
    for (std::size_t j = i; j < shiftLags.size(); ++j) {
      minLag = std::min(minLag, shiftLags[j]);
      m.shiftlag = std::max(m.shiftlag, std::min(j - i + 1, minLag));
    }
  }
  return m;
}

Word inputProjection(const TaggedAlphabet& alphabet, const Word& w) {
  Word out;
  for (Letter a : w)
    if (alphabet.isInput(a)) out.push_back(static_cast<Letter>(alphabet.projectedIndex(a)));
  return out;
}

Word outputProjection(const TaggedAlphabet& alphabet, const Word& w) {
  Word out;
  for (Letter a : w)
    if (alphabet.isOutput(a)) out.push_back(static_cast<Letter>(alphabet.projectedIndex(a)));
  return out;
}

std::pair<Word, Word> pairOf(const TaggedAlphabet& alphabet, const Word& w) {
  return {inputProjection(alphabet, w), outputProjection(alphabet, w)};
}

bool isControlled(const Nfa& language, const Nfa& control) { return includes(control, language); }

namespace {

// Product of an automaton with the "last role seen" (0 none, 1 input, 2 output).
// Shifts of a run are exactly its traversals of shifting edges, and the
// running input/output difference is the sum of edge weights, which makes all
// three finiteness questions cycle-structure questions on this graph.
struct RoleProduct {
  const TaggedAlphabet* alphabet = nullptr;
  std::size_t numNodes = 0;
  int initial = -1;
  struct Edge {
    int from, to;
    Letter letter;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> out;  // edge ids by source node
  std::vector<bool> finals, useful;

  int weight(const Edge& e) const { return alphabet->isInput(e.letter) ? 1 : -1; }
  bool shifting(const Edge& e) const {
    int prev = e.from % 3;
    int next = alphabet->isInput(e.letter) ? 1 : 2;
    return prev != 0 && prev != next;
  }
};

RoleProduct buildRoleProduct(const TaggedAlphabet& alphabet, const Nfa& trimmedEpsFree) {
  const Nfa& t = trimmedEpsFree;
  RoleProduct p;
  p.alphabet = &alphabet;
  p.numNodes = t.numStates * 3;
  p.initial = static_cast<int>(t.initial) * 3;
  p.finals.assign(p.numNodes, false);
  p.out.assign(p.numNodes, {});
  for (State q = 0; q < t.numStates; ++q)
    if (t.finals[q])
      for (int r = 0; r < 3; ++r) p.finals[q * 3 + r] = true;
  for (const auto& tr : t.transitions) {
    int next = alphabet.isInput(tr.letter) ? 1 : 2;
    for (int r = 0; r < 3; ++r) {
      int from = static_cast<int>(tr.from) * 3 + r;
      int to = static_cast<int>(tr.to) * 3 + next;
      p.out[from].push_back(static_cast<int>(p.edges.size()));
      p.edges.push_back({from, to, tr.letter});
    }
  }
  // Usefulness: on some accepting run.
  std::vector<bool> reach(p.numNodes, false), coreach(p.numNodes, false);
  std::vector<int> stack = {p.initial};
  reach[p.initial] = true;
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    for (int e : p.out[n])
      if (!reach[p.edges[e].to]) {
        reach[p.edges[e].to] = true;
        stack.push_back(p.edges[e].to);
      }
  }
  std::vector<std::vector<int>> rin(p.numNodes);
  for (const auto& e : p.edges) rin[e.to].push_back(e.from);
  for (std::size_t n = 0; n < p.numNodes; ++n)
    if (p.finals[n]) {
      coreach[n] = true;
      stack.push_back(static_cast<int>(n));
    }
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    for (int m : rin[n])
      if (!coreach[m]) {
        coreach[m] = true;
        stack.push_back(m);
      }
  }
  p.useful.assign(p.numNodes, false);
  for (std::size_t n = 0; n < p.numNodes; ++n) p.useful[n] = reach[n] && coreach[n];
  return p;
}

bool edgeUseful(const RoleProduct& p, const RoleProduct::Edge& e) {
  return p.useful[e.from] && p.useful[e.to];
}

// BFS over useful edges from `from` to the first node satisfying `goal`;
// `restrictComp` >= 0 keeps the walk inside one strongly connected component.
// Returns the path word and the goal node reached.
std::optional<std::pair<Word, int>> bfsWord(const RoleProduct& p, int from,
                                            const std::function<bool(int)>& goal,
                                            const std::vector<int>& comp, int restrictComp = -1) {
  if (!p.useful[from]) return std::nullopt;
  std::vector<int> parentEdge(p.numNodes, -1);
  std::vector<bool> seen(p.numNodes, false);
  std::deque<int> queue = {from};
  seen[from] = true;
  auto emit = [&](int node) -> std::pair<Word, int> {
    int goalNode = node;
    Word w;
    while (parentEdge[node] != -1) {
      int e = parentEdge[node];
      w.push_back(p.edges[e].letter);
      node = p.edges[e].from;
    }
    std::reverse(w.begin(), w.end());
    return {w, goalNode};
  };
  if (goal(from)) return emit(from);
  while (!queue.empty()) {
    int n = queue.front();
    queue.pop_front();
    for (int eid : p.out[n]) {
      const auto& e = p.edges[eid];
      if (!edgeUseful(p, e) || seen[e.to]) continue;
      if (restrictComp >= 0 && comp[e.to] != restrictComp) continue;
      seen[e.to] = true;
      parentEdge[e.to] = eid;
      if (goal(e.to)) return emit(e.to);
      queue.push_back(e.to);
    }
  }
  return std::nullopt;
}

long balanceOf(const TaggedAlphabet& alphabet, const Word& w) {
  long b = 0;
  for (Letter a : w) b += alphabet.isInput(a) ? 1 : -1;
  return b;
}

std::pair<Word, int> pathRequired(std::optional<std::pair<Word, int>> w, const char* what) {
  require(w.has_value(), what);
  return *std::move(w);
}

}  // namespace

FinitenessAnalysis analyzeFiniteness(const TaggedAlphabet& alphabet, const Nfa& sync) {
  if (!(sync.alphabet == alphabet.combined()))
    throwAlphabetMismatch("automaton is not over the given tagged alphabet");
  FinitenessAnalysis result;
  Nfa t = trim(removeEpsilon(sync));
  bool hasFinal = std::find(t.finals.begin(), t.finals.end(), true) != t.finals.end();
  if (!hasFinal) return result;  // empty language: every metric is bounded

  RoleProduct p = buildRoleProduct(alphabet, t);
  std::vector<std::vector<int>> adj(p.numNodes);
  for (const auto& e : p.edges)
    if (edgeUseful(p, e)) adj[e.from].push_back(e.to);
  auto scc = stronglyConnectedComponents(p.numNodes, adj);

  std::vector<std::vector<int>> nodesOf(scc.count);
  for (std::size_t n = 0; n < p.numNodes; ++n)
    if (p.useful[n]) nodesOf[scc.comp[n]].push_back(static_cast<int>(n));

  // Per component: a cycle with nonzero input/output balance, if any.
  struct NzCycle {
    int rep;
    Word cycle;
  };
  std::vector<std::optional<NzCycle>> nz(scc.count);
  // Per component: an internal shifting edge, if any.
  std::vector<int> rcEdge(scc.count, -1);

  for (std::size_t eid = 0; eid < p.edges.size(); ++eid) {
    const auto& e = p.edges[eid];
    if (!edgeUseful(p, e) || scc.comp[e.from] != scc.comp[e.to]) continue;
    int c = scc.comp[e.from];
    if (rcEdge[c] < 0 && p.shifting(e)) rcEdge[c] = static_cast<int>(eid);
  }

  for (int c = 0; c < scc.count; ++c) {
    if (nodesOf[c].empty()) continue;
    int rep = nodesOf[c][0];
    // Potentials along a BFS tree inside the component.
    std::vector<long> phi(p.numNodes, 0);
    std::vector<int> parentEdge(p.numNodes, -1);
    std::vector<bool> seen(p.numNodes, false);
    std::deque<int> queue = {rep};
    seen[rep] = true;
    while (!queue.empty()) {
      int n = queue.front();
      queue.pop_front();
      for (int eid : p.out[n]) {
        const auto& e = p.edges[eid];
        if (!edgeUseful(p, e) || scc.comp[e.to] != c || seen[e.to]) continue;
        seen[e.to] = true;
        phi[e.to] = phi[n] + p.weight(e);
        parentEdge[e.to] = eid;
        queue.push_back(e.to);
      }
    }
    auto treeWord = [&](int node) {
      Word w;
      while (parentEdge[node] != -1) {
        w.push_back(p.edges[parentEdge[node]].letter);
        node = p.edges[parentEdge[node]].from;
      }
      std::reverse(w.begin(), w.end());
      return w;
    };
    for (int n : nodesOf[c]) {
      if (nz[c]) break;
      for (int eid : p.out[n]) {
        const auto& e = p.edges[eid];
        if (!edgeUseful(p, e) || scc.comp[e.to] != c) continue;
        if (phi[e.to] == phi[e.from] + p.weight(e)) continue;
        // Inconsistent potential: one of two derived cycles at rep has
        // nonzero balance (their balances differ by the violation amount).
        Word back = pathRequired(
                        bfsWord(p, e.to, [&](int m) { return m == rep; }, scc.comp, c),
                        "return path inside a strongly connected component must exist")
                        .first;
        Word cand1 = treeWord(e.from);
        cand1.push_back(e.letter);
        cand1.insert(cand1.end(), back.begin(), back.end());
        Word cand2 = treeWord(e.to);
        cand2.insert(cand2.end(), back.begin(), back.end());
        if (balanceOf(alphabet, cand1) != 0)
          nz[c] = NzCycle{rep, std::move(cand1)};
        else if (balanceOf(alphabet, cand2) != 0)
          nz[c] = NzCycle{rep, std::move(cand2)};
        else
          throwDefect("potential violation produced two balanced cycles");
        break;
      }
    }
  }

  auto isFinalNode = [&](int m) { return p.finals[m]; };

  for (int c = 0; c < scc.count && result.lagFinite; ++c) {
    if (!nz[c]) continue;
    result.lagFinite = false;
    PumpWitness w;
    w.prefix = pathRequired(bfsWord(p, p.initial, [&](int m) { return m == nz[c]->rep; }, scc.comp),
                            "pump anchor must be reachable")
                   .first;
    w.cycle = nz[c]->cycle;
    w.suffix = pathRequired(bfsWord(p, nz[c]->rep, isFinalNode, scc.comp),
                            "pump anchor must reach a final state")
                   .first;
    result.lagWitness = std::move(w);
  }

  for (int c = 0; c < scc.count && result.shiftFinite; ++c) {
    if (rcEdge[c] < 0) continue;
    result.shiftFinite = false;
    const auto& e = p.edges[rcEdge[c]];
    PumpWitness w;
    w.prefix = pathRequired(bfsWord(p, p.initial, [&](int m) { return m == e.from; }, scc.comp),
                            "shifting edge must be reachable")
                   .first;
    w.cycle = {e.letter};
    Word back = pathRequired(bfsWord(p, e.to, [&](int m) { return m == e.from; }, scc.comp, c),
                             "shifting edge must close a cycle")
                    .first;
    w.cycle.insert(w.cycle.end(), back.begin(), back.end());
    w.suffix = pathRequired(bfsWord(p, e.from, isFinalNode, scc.comp),
                            "shifting edge must reach a final state")
                   .first;
    result.shiftWitness = std::move(w);
  }

  // Shiftlag is unbounded iff a component with a nonzero-balance cycle can
  // reach a component with an internal shifting edge (possibly itself):
  // pumping the first builds up lag, pumping the second then shifts while
  // the accumulated lag decays by at most a constant per iteration.
  std::vector<bool> canReachRc(scc.count, false);
  for (int c = 0; c < scc.count; ++c) canReachRc[c] = rcEdge[c] >= 0;
  // Component ids are in reverse topological order, so successors come first.
  for (int c = 0; c < scc.count; ++c)
    if (!canReachRc[c])
      for (int n : nodesOf[c])
        for (int eid : p.out[n]) {
          const auto& e = p.edges[eid];
          if (edgeUseful(p, e) && canReachRc[scc.comp[e.to]]) {
            canReachRc[c] = true;
            break;
          }
        }

  for (int c = 0; c < scc.count; ++c) {
    if (!nz[c] || !canReachRc[c]) continue;
    result.shiftlagFinite = false;
    PumpWitness w;
    w.prefix = pathRequired(bfsWord(p, p.initial, [&](int m) { return m == nz[c]->rep; }, scc.comp),
                            "pump anchor must be reachable")
                   .first;
    w.cycle = nz[c]->cycle;
    auto rcAnchor = [&](int m) {
      return p.useful[m] && rcEdge[scc.comp[m]] >= 0 && p.edges[rcEdge[scc.comp[m]]].from == m;
    };
    auto [mid, anchor] = pathRequired(
        bfsWord(p, nz[c]->rep, rcAnchor, scc.comp),
        "shifting component must be reachable from the pump anchor");
    w.mid = std::move(mid);
    const auto& e2 = p.edges[rcEdge[scc.comp[anchor]]];
    w.cycle2 = {e2.letter};
    Word back = pathRequired(
                    bfsWord(p, e2.to, [&](int m) { return m == e2.from; }, scc.comp,
                            scc.comp[anchor]),
                    "shifting edge must close a cycle")
                    .first;
    w.cycle2.insert(w.cycle2.end(), back.begin(), back.end());
    w.suffix = pathRequired(bfsWord(p, anchor, isFinalNode, scc.comp),
                            "shifting anchor must reach a final state")
                   .first;
    result.shiftlagWitness = std::move(w);
    break;
  }

  return result;
}

std::vector<bool> finiteShiftStates(const TaggedAlphabet& alphabet, const Dfa& minimal) {
  std::vector<bool> fs(minimal.numStates, false);
  for (State q = 0; q < minimal.numStates; ++q) {
    Nfa residual = toNfa(withInitial(minimal, q));
    fs[q] = analyzeFiniteness(alphabet, residual).shiftFinite;
  }
  return fs;
}

Nfa firstFiniteShiftEntry(const TaggedAlphabet& alphabet, const Dfa& minimal,
                          const std::vector<bool>& fs) {
  (void)alphabet;
  bool hasFinal = std::find(minimal.finals.begin(), minimal.finals.end(), true) !=
                  minimal.finals.end();
  if (!hasFinal) return emptyNfa(minimal.alphabet);  // no words, so no prefixes
  Nfa out;
  out.alphabet = minimal.alphabet;
  out.numStates = minimal.numStates;
  out.initial = minimal.initial;
  out.finals = fs;
  for (State q = 0; q < minimal.numStates; ++q) {
    if (fs[q]) continue;  // runs stop counting once inside the region
    for (Letter a = 0; a < minimal.alphabet.size(); ++a)
      if (minimal.step(q, a) != kNoState) out.addTransition(q, a, minimal.step(q, a));
  }
  out.normalize();
  return trim(out);
}

Nfa firstFiniteShiftEntry(const TaggedAlphabet& alphabet, const Nfa& sync) {
  Dfa minimal = minimalDfa(sync);
  return firstFiniteShiftEntry(alphabet, minimal, finiteShiftStates(alphabet, minimal));
}

namespace {

// Width computation shared by laggedZoneWidth and classify; assumes the
// shiftlag of the language is known to be finite.
std::size_t laggedWidthImpl(const TaggedAlphabet& alphabet, const Dfa& minimal,
                            const std::vector<bool>& fs) {
  bool hasFinal = std::find(minimal.finals.begin(), minimal.finals.end(), true) !=
                  minimal.finals.end();
  if (!hasFinal || fs[minimal.initial]) return 0;
  const std::size_t sigma = minimal.alphabet.size();
  auto weight = [&](Letter a) { return alphabet.isInput(a) ? 1L : -1L; };
  // The finite-shift region is absorbing, so every run prefix that has not
  // entered it stays entirely among non-flagged states.
  std::vector<std::vector<int>> adj(minimal.numStates);
  for (State q = 0; q < minimal.numStates; ++q) {
    if (fs[q]) continue;
    for (Letter a = 0; a < sigma; ++a) {
      State to = minimal.step(q, a);
      if (to != kNoState && !fs[to]) adj[q].push_back(static_cast<int>(to));
    }
  }
  auto scc = stronglyConnectedComponents(minimal.numStates, adj);
  // Zero-balance cycles mean consistent potentials inside each component.
  std::vector<long> phi(minimal.numStates, 0);
  std::vector<bool> assigned(minimal.numStates, false);
  for (State q = 0; q < minimal.numStates; ++q) {
    if (fs[q] || assigned[q]) continue;
    std::deque<State> queue = {q};
    assigned[q] = true;
    while (!queue.empty()) {
      State u = queue.front();
      queue.pop_front();
      for (Letter a = 0; a < sigma; ++a) {
        State v = minimal.step(u, a);
        if (v == kNoState || fs[v] || scc.comp[v] != scc.comp[u]) continue;
        if (!assigned[v]) {
          assigned[v] = true;
          phi[v] = phi[u] + weight(a);
          queue.push_back(v);
        } else if (phi[v] != phi[u] + weight(a)) {
          throwDefect("nonzero-balance cycle in the lagged zone of a finite-shiftlag language");
        }
      }
    }
  }
  // Interval DP over the condensation: achievable difference at state q is
  // base + phi[q] with base in the component's interval.
  std::vector<long> baseMin(scc.count, 0), baseMax(scc.count, 0);
  std::vector<bool> reached(scc.count, false);
  int c0 = scc.comp[minimal.initial];
  reached[c0] = true;
  baseMin[c0] = baseMax[c0] = -phi[minimal.initial];
  for (int c = scc.count - 1; c >= 0; --c) {
    if (!reached[c]) continue;
    for (State u = 0; u < minimal.numStates; ++u) {
      if (fs[u] || scc.comp[u] != c) continue;
      for (Letter a = 0; a < sigma; ++a) {
        State v = minimal.step(u, a);
        if (v == kNoState || fs[v] || scc.comp[v] == c) continue;
        int d = scc.comp[v];
        long lo = baseMin[c] + phi[u] + weight(a) - phi[v];
        long hi = baseMax[c] + phi[u] + weight(a) - phi[v];
        if (!reached[d]) {
          reached[d] = true;
          baseMin[d] = lo;
          baseMax[d] = hi;
        } else {
          baseMin[d] = std::min(baseMin[d], lo);
          baseMax[d] = std::max(baseMax[d], hi);
        }
      }
    }
  }
  long width = 0;
  for (State q = 0; q < minimal.numStates; ++q) {
    if (fs[q] || !reached[scc.comp[q]]) continue;
    width = std::max({width, std::labs(baseMin[scc.comp[q]] + phi[q]),
                      std::labs(baseMax[scc.comp[q]] + phi[q])});
  }
  return static_cast<std::size_t>(width);
}

}  // namespace

std::size_t laggedZoneWidth(const TaggedAlphabet& alphabet, const Nfa& sync) {
  if (!analyzeFiniteness(alphabet, sync).shiftlagFinite)
    throwPrecondition("NotFiniteShiftlag", "lagged zone width requires finite shiftlag");
  Dfa minimal = minimalDfa(sync);
  return laggedWidthImpl(alphabet, minimal, finiteShiftStates(alphabet, minimal));
}

SyncClassification classify(const TaggedAlphabet& alphabet, const Nfa& sync) {
  SyncClassification c;
  c.finiteness = analyzeFiniteness(alphabet, sync);
  c.minimal = minimalDfa(sync);
  c.fsStates = finiteShiftStates(alphabet, c.minimal);
  if (c.finiteness.shiftlagFinite)
    c.gamma = laggedWidthImpl(alphabet, c.minimal, c.fsStates);
  if (c.finiteness.lagFinite && c.finiteness.shiftFinite)
    c.headline = SyncClass::LagAndShiftFinite;
  else if (c.finiteness.lagFinite)
    c.headline = SyncClass::LagFinite;
  else if (c.finiteness.shiftFinite)
    c.headline = SyncClass::ShiftFinite;
  else if (c.finiteness.shiftlagFinite)
    c.headline = SyncClass::ShiftlagFinite;
  else
    c.headline = SyncClass::Unbounded;
  return c;
}

}  // namespace syncrel
