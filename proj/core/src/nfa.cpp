#include "syncrel/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>

#include "syncrel/errors.hpp"

namespace syncrel {

namespace {

void checkSameAlphabet(const Nfa& a, const Nfa& b) {
  if (!(a.alphabet == b.alphabet))
    throwAlphabetMismatch("automaton operands use different alphabets");
}

std::vector<bool> epsilonClosure(const Nfa& nfa, const std::vector<bool>& seed) {
  std::vector<bool> in = seed;
  std::vector<State> stack;
  for (State q = 0; q < nfa.numStates; ++q)
    if (in[q]) stack.push_back(q);
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    auto [first, last] = nfa.transitionsFrom(q);
    for (auto* t = first; t != last; ++t) {
      if (t->letter != kEpsilon) continue;
      if (!in[t->to]) {
        in[t->to] = true;
        stack.push_back(t->to);
      }
    }
  }
  return in;
}

std::vector<State> sortedStates(const std::vector<bool>& in) {
  std::vector<State> out;
  for (State q = 0; q < in.size(); ++q)
    if (in[q]) out.push_back(q);
  return out;
}

}  // namespace

void Nfa::normalize() {
  require(finals.size() == numStates, "finals size does not match state count");
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
  for (const auto& t : transitions)
    require(t.from < numStates && t.to < numStates &&
                (t.letter == kEpsilon || t.letter < alphabet.size()),
            "transition references unknown state or letter");
}

std::pair<const Trans*, const Trans*> Nfa::transitionsFrom(State from) const {
  auto lo = std::lower_bound(transitions.begin(), transitions.end(), from,
                             [](const Trans& t, State q) { return t.from < q; });
  auto hi = std::upper_bound(transitions.begin(), transitions.end(), from,
                             [](State q, const Trans& t) { return q < t.from; });
  return {transitions.data() + (lo - transitions.begin()),
          transitions.data() + (hi - transitions.begin())};
}

State Dfa::run(const Word& w) const {
  State q = initial;
  for (Letter a : w) {
    q = step(q, a);
    if (q == kNoState) return kNoState;
  }
  return q;
}

bool Dfa::member(const Word& w) const {
  State q = run(w);
  return q != kNoState && finals[q];
}

Nfa emptyNfa(const Alphabet& alphabet) {
  Nfa n;
  n.alphabet = alphabet;
  return n;
}

Nfa epsilonNfa(const Alphabet& alphabet) {
  Nfa n;
  n.alphabet = alphabet;
  n.finals = {true};
  return n;
}

Nfa wordNfa(const Alphabet& alphabet, const Word& w) {
  Nfa n;
  n.alphabet = alphabet;
  n.numStates = w.size() + 1;
  n.finals.assign(n.numStates, false);
  n.finals[w.size()] = true;
  for (std::size_t k = 0; k < w.size(); ++k)
    n.addTransition(static_cast<State>(k), w[k], static_cast<State>(k + 1));
  n.normalize();
  return n;
}

Nfa allWordsNfa(const Alphabet& alphabet) {
  Nfa n;
  n.alphabet = alphabet;
  n.finals = {true};
  for (Letter a = 0; a < alphabet.size(); ++a) n.addTransition(0, a, 0);
  n.normalize();
  return n;
}

Nfa toNfa(const Dfa& dfa) {
  Nfa n;
  n.alphabet = dfa.alphabet;
  n.numStates = dfa.numStates;
  n.initial = dfa.initial;
  n.finals = dfa.finals;
  for (State q = 0; q < dfa.numStates; ++q)
    for (Letter a = 0; a < dfa.alphabet.size(); ++a)
      if (dfa.step(q, a) != kNoState) n.addTransition(q, a, dfa.step(q, a));
  n.normalize();
  return n;
}

Dfa emptyDfa(const Alphabet& alphabet) {
  Dfa d;
  d.alphabet = alphabet;
  d.numStates = 1;
  d.initial = 0;
  d.delta.assign(alphabet.size(), kNoState);
  d.finals = {false};
  return d;
}

Nfa removeEpsilon(const Nfa& nfa) {
  Nfa out;
  out.alphabet = nfa.alphabet;
  out.numStates = nfa.numStates;
  out.initial = nfa.initial;
  out.finals.assign(nfa.numStates, false);
  for (State q = 0; q < nfa.numStates; ++q) {
    std::vector<bool> seed(nfa.numStates, false);
    seed[q] = true;
    auto closure = epsilonClosure(nfa, seed);
    for (State t = 0; t < nfa.numStates; ++t) {
      if (!closure[t]) continue;
      if (nfa.finals[t]) out.finals[q] = true;
      auto [first, last] = nfa.transitionsFrom(t);
      for (auto* tr = first; tr != last; ++tr)
        if (tr->letter != kEpsilon) out.addTransition(q, tr->letter, tr->to);
    }
  }
  out.normalize();
  return out;
}

Nfa trim(const Nfa& nfa) {
  // Forward reachability.
  std::vector<bool> reach(nfa.numStates, false);
  {
    std::vector<State> stack = {nfa.initial};
    reach[nfa.initial] = true;
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      auto [first, last] = nfa.transitionsFrom(q);
      for (auto* t = first; t != last; ++t)
        if (!reach[t->to]) {
          reach[t->to] = true;
          stack.push_back(t->to);
        }
    }
  }
  // Backward reachability from finals.
  std::vector<std::vector<int>> radj(nfa.numStates);
  for (const auto& t : nfa.transitions) radj[t.to].push_back(t.from);
  std::vector<bool> coreach(nfa.numStates, false);
  {
    std::vector<State> stack;
    for (State q = 0; q < nfa.numStates; ++q)
      if (nfa.finals[q]) {
        coreach[q] = true;
        stack.push_back(q);
      }
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (int p : radj[q])
        if (!coreach[p]) {
          coreach[p] = true;
          stack.push_back(static_cast<State>(p));
        }
    }
  }
  std::vector<State> remap(nfa.numStates, kNoState);
  std::size_t next = 0;
  for (State q = 0; q < nfa.numStates; ++q)
    if (reach[q] && coreach[q]) remap[q] = static_cast<State>(next++);
  if (remap[nfa.initial] == kNoState) return emptyNfa(nfa.alphabet);
  Nfa out;
  out.alphabet = nfa.alphabet;
  out.numStates = next;
  out.initial = remap[nfa.initial];
  out.finals.assign(next, false);
  for (State q = 0; q < nfa.numStates; ++q)
    if (remap[q] != kNoState && nfa.finals[q]) out.finals[remap[q]] = true;
  for (const auto& t : nfa.transitions)
    if (remap[t.from] != kNoState && remap[t.to] != kNoState)
      out.addTransition(remap[t.from], t.letter, remap[t.to]);
  out.normalize();
  return out;
}

Dfa determinize(const Nfa& input, std::size_t stateCap) {
  Nfa nfa = removeEpsilon(input);
  const std::size_t sigma = nfa.alphabet.size();
  std::map<std::vector<State>, State> index;
  std::vector<std::vector<State>> subsets;
  auto intern = [&](std::vector<State> subset) -> State {
    auto it = index.find(subset);
    if (it != index.end()) return it->second;
    State id = static_cast<State>(subsets.size());
    if (subsets.size() >= stateCap) throwDefect("determinization exceeded the state cap");
    index.emplace(subset, id);
    subsets.push_back(std::move(subset));
    return id;
  };
  State start = intern({nfa.initial});
  Dfa out;
  out.alphabet = nfa.alphabet;
  out.initial = start;
  std::vector<std::vector<State>> rows;
  std::vector<bool> finals;
  for (State q = 0; q < subsets.size(); ++q) {
    const auto subset = subsets[q];  // copy: subsets may reallocate below
    std::vector<std::set<State>> succ(sigma);
    bool fin = false;
    for (State s : subset) {
      if (nfa.finals[s]) fin = true;
      auto [first, last] = nfa.transitionsFrom(s);
      for (auto* t = first; t != last; ++t) succ[t->letter].insert(t->to);
    }
    std::vector<State> row(sigma, kNoState);
    for (Letter a = 0; a < sigma; ++a)
      if (!succ[a].empty()) row[a] = intern({succ[a].begin(), succ[a].end()});
    rows.push_back(std::move(row));
    finals.push_back(fin);
  }
  out.numStates = subsets.size();
  out.finals = finals;
  out.delta.assign(out.numStates * sigma, kNoState);
  for (State q = 0; q < out.numStates; ++q)
    for (Letter a = 0; a < sigma; ++a) out.at(q, a) = rows[q][a];
  return out;
}

Dfa completed(const Dfa& dfa) {
  bool partial = std::find(dfa.delta.begin(), dfa.delta.end(), kNoState) != dfa.delta.end();
  if (!partial) return dfa;
  Dfa out = dfa;
  State sink = static_cast<State>(out.numStates++);
  out.finals.push_back(false);
  out.delta.resize(out.numStates * out.alphabet.size(), kNoState);
  for (auto& target : out.delta)
    if (target == kNoState) target = sink;
  return out;
}

Dfa withInitial(const Dfa& dfa, State q) {
  require(q < dfa.numStates, "initial state out of range");
  Dfa out = dfa;
  out.initial = q;
  return out;
}

namespace {

// Canonical renumbering: BFS from the initial state with letters ascending,
// dropping states that are unreachable or cannot reach a final state.
Dfa canonicalize(const Dfa& dfa) {
  const std::size_t sigma = dfa.alphabet.size();
  // Co-reachability.
  std::vector<std::vector<int>> radj(dfa.numStates);
  for (State q = 0; q < dfa.numStates; ++q)
    for (Letter a = 0; a < sigma; ++a)
      if (dfa.step(q, a) != kNoState) radj[dfa.step(q, a)].push_back(q);
  std::vector<bool> useful(dfa.numStates, false);
  std::vector<State> stack;
  for (State q = 0; q < dfa.numStates; ++q)
    if (dfa.finals[q]) {
      useful[q] = true;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (int p : radj[q])
      if (!useful[p]) {
        useful[p] = true;
        stack.push_back(static_cast<State>(p));
      }
  }
  if (!useful[dfa.initial]) return emptyDfa(dfa.alphabet);
  std::vector<State> remap(dfa.numStates, kNoState);
  std::vector<State> order;
  remap[dfa.initial] = 0;
  order.push_back(dfa.initial);
  for (std::size_t head = 0; head < order.size(); ++head) {
    State q = order[head];
    for (Letter a = 0; a < sigma; ++a) {
      State to = dfa.step(q, a);
      if (to == kNoState || !useful[to] || remap[to] != kNoState) continue;
      remap[to] = static_cast<State>(order.size());
      order.push_back(to);
    }
  }
  Dfa out;
  out.alphabet = dfa.alphabet;
  out.numStates = order.size();
  out.initial = 0;
  out.finals.assign(out.numStates, false);
  out.delta.assign(out.numStates * sigma, kNoState);
  for (std::size_t k = 0; k < order.size(); ++k) {
    State q = order[k];
    out.finals[k] = dfa.finals[q];
    for (Letter a = 0; a < sigma; ++a) {
      State to = dfa.step(q, a);
      if (to != kNoState && useful[to]) out.at(static_cast<State>(k), a) = remap[to];
    }
  }
  return out;
}

}  // namespace

Dfa minimize(const Dfa& input) {
  Dfa dfa = completed(input);
  const std::size_t sigma = dfa.alphabet.size();
  // Restrict to reachable states first.
  std::vector<bool> reach(dfa.numStates, false);
  std::vector<State> order = {dfa.initial};
  reach[dfa.initial] = true;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (Letter a = 0; a < sigma; ++a) {
      State to = dfa.step(order[head], a);
      if (!reach[to]) {
        reach[to] = true;
        order.push_back(to);
      }
    }
  // Moore partition refinement over reachable states.
  std::vector<int> cls(dfa.numStates, -1);
  for (State q : order) cls[q] = dfa.finals[q] ? 1 : 0;
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::vector<int>, int> sig;
    std::vector<int> next(dfa.numStates, -1);
    for (State q : order) {
      std::vector<int> key;
      key.reserve(sigma + 1);
      key.push_back(cls[q]);
      for (Letter a = 0; a < sigma; ++a) key.push_back(cls[dfa.step(q, a)]);
      auto [it, inserted] = sig.emplace(std::move(key), static_cast<int>(sig.size()));
      next[q] = it->second;
      (void)inserted;
    }
    // Classes only ever split, so the refinement is stable once their count stops growing.
    std::set<int> before, after;
    for (State q : order) {
      before.insert(cls[q]);
      after.insert(next[q]);
    }
    changed = after.size() != before.size();
    cls = std::move(next);
  }
  std::map<int, State> classId;
  for (State q : order) classId.emplace(cls[q], static_cast<State>(classId.size()));
  Dfa quo;
  quo.alphabet = dfa.alphabet;
  quo.numStates = classId.size();
  quo.initial = classId[cls[dfa.initial]];
  quo.finals.assign(quo.numStates, false);
  quo.delta.assign(quo.numStates * sigma, kNoState);
  for (State q : order) {
    State c = classId[cls[q]];
    if (dfa.finals[q]) quo.finals[c] = true;
    for (Letter a = 0; a < sigma; ++a) quo.at(c, a) = classId[cls[dfa.step(q, a)]];
  }
  return canonicalize(quo);
}

Dfa minimalDfa(const Nfa& nfa, std::size_t stateCap) {
  return minimize(determinize(trim(nfa), stateCap));
}

Nfa unionOf(const Nfa& a, const Nfa& b) {
  checkSameAlphabet(a, b);
  Nfa out;
  out.alphabet = a.alphabet;
  out.numStates = a.numStates + b.numStates + 1;
  State start = static_cast<State>(a.numStates + b.numStates);
  out.initial = start;
  out.finals.assign(out.numStates, false);
  for (State q = 0; q < a.numStates; ++q) out.finals[q] = a.finals[q];
  for (State q = 0; q < b.numStates; ++q) out.finals[a.numStates + q] = b.finals[q];
  out.transitions = a.transitions;
  for (const auto& t : b.transitions)
    out.addTransition(static_cast<State>(t.from + a.numStates), t.letter,
                      static_cast<State>(t.to + a.numStates));
  out.addTransition(start, kEpsilon, a.initial);
  out.addTransition(start, kEpsilon, static_cast<State>(b.initial + a.numStates));
  out.normalize();
  return out;
}

Nfa intersectOf(const Nfa& a0, const Nfa& b0) {
  checkSameAlphabet(a0, b0);
  Nfa a = removeEpsilon(a0);
  Nfa b = removeEpsilon(b0);
  std::map<std::pair<State, State>, State> index;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](State x, State y) -> State {
    auto it = index.find({x, y});
    if (it != index.end()) return it->second;
    State id = static_cast<State>(pairs.size());
    if (pairs.size() >= kStateCap) throwDefect("product construction exceeded the state cap");
    index.emplace(std::make_pair(x, y), id);
    pairs.emplace_back(x, y);
    return id;
  };
  Nfa out;
  out.alphabet = a.alphabet;
  out.initial = intern(a.initial, b.initial);
  for (std::size_t head = 0; head < pairs.size(); ++head) {
    auto [x, y] = pairs[head];
    auto [xf, xl] = a.transitionsFrom(x);
    auto [yf, yl] = b.transitionsFrom(y);
    for (auto* tx = xf; tx != xl; ++tx)
      for (auto* ty = yf; ty != yl; ++ty)
        if (tx->letter == ty->letter)
          out.addTransition(static_cast<State>(head), tx->letter, intern(tx->to, ty->to));
  }
  out.numStates = pairs.size();
  out.finals.assign(out.numStates, false);
  for (std::size_t k = 0; k < pairs.size(); ++k)
    out.finals[k] = a.finals[pairs[k].first] && b.finals[pairs[k].second];
  out.normalize();
  return trim(out);
}

Nfa complementOf(const Nfa& a) {
  Dfa d = completed(determinize(a));
  for (std::size_t q = 0; q < d.numStates; ++q) d.finals[q] = !d.finals[q];
  return toNfa(minimize(d));
}

Nfa differenceOf(const Nfa& a, const Nfa& b) {
  checkSameAlphabet(a, b);
  return intersectOf(a, complementOf(b));
}

Nfa concatOf(const Nfa& a, const Nfa& b) {
  checkSameAlphabet(a, b);
  Nfa out;
  out.alphabet = a.alphabet;
  out.numStates = a.numStates + b.numStates;
  out.initial = a.initial;
  out.finals.assign(out.numStates, false);
  for (State q = 0; q < b.numStates; ++q) out.finals[a.numStates + q] = b.finals[q];
  out.transitions = a.transitions;
  for (const auto& t : b.transitions)
    out.addTransition(static_cast<State>(t.from + a.numStates), t.letter,
                      static_cast<State>(t.to + a.numStates));
  for (State q = 0; q < a.numStates; ++q)
    if (a.finals[q]) out.addTransition(q, kEpsilon, static_cast<State>(b.initial + a.numStates));
  out.normalize();
  return out;
}

Nfa starOf(const Nfa& a) {
  Nfa out;
  out.alphabet = a.alphabet;
  out.numStates = a.numStates + 1;
  State start = static_cast<State>(a.numStates);
  out.initial = start;
  out.finals.assign(out.numStates, false);
  out.finals[start] = true;
  out.transitions = a.transitions;
  out.addTransition(start, kEpsilon, a.initial);
  for (State q = 0; q < a.numStates; ++q)
    if (a.finals[q]) out.addTransition(q, kEpsilon, start);
  out.normalize();
  return out;
}

Nfa plusOf(const Nfa& a) {
  Nfa out = a;
  for (State q = 0; q < a.numStates; ++q)
    if (a.finals[q]) out.addTransition(q, kEpsilon, a.initial);
  out.normalize();
  return out;
}

bool member(const Nfa& nfa, const Word& w) {
  std::vector<bool> current(nfa.numStates, false);
  current[nfa.initial] = true;
  current = epsilonClosure(nfa, current);
  for (Letter a : w) {
    std::vector<bool> next(nfa.numStates, false);
    for (State q = 0; q < nfa.numStates; ++q) {
      if (!current[q]) continue;
      auto [first, last] = nfa.transitionsFrom(q);
      for (auto* t = first; t != last; ++t)
        if (t->letter == a) next[t->to] = true;
    }
    current = epsilonClosure(nfa, next);
  }
  for (State q = 0; q < nfa.numStates; ++q)
    if (current[q] && nfa.finals[q]) return true;
  return false;
}

bool isEmpty(const Nfa& nfa) {
  Nfa t = trim(nfa);
  for (State q = 0; q < t.numStates; ++q)
    if (t.finals[q]) return false;
  return true;
}

bool isFinite(const Nfa& nfa) {
  Nfa t = removeEpsilon(trim(nfa));
  t = trim(t);
  // After trimming every state is useful, so any cycle pumps the language.
  std::vector<std::vector<int>> adj(t.numStates);
  for (const auto& tr : t.transitions) adj[tr.from].push_back(tr.to);
  auto scc = stronglyConnectedComponents(t.numStates, adj);
  std::vector<int> size(scc.count, 0);
  for (State q = 0; q < t.numStates; ++q) ++size[scc.comp[q]];
  for (const auto& tr : t.transitions) {
    if (scc.comp[tr.from] != scc.comp[tr.to]) continue;
    if (size[scc.comp[tr.from]] > 1 || tr.from == tr.to) return false;
  }
  return true;
}

bool includes(const Nfa& a, const Nfa& b) {
  checkSameAlphabet(a, b);
  // L(b) ⊆ L(a) iff no reachable product state is accepting in b but dead/rejecting in a.
  Dfa da = determinize(a);
  Dfa db = determinize(b);
  const std::size_t sigma = da.alphabet.size();
  std::set<std::pair<State, State>> seen;  // (b-state, a-state or kNoState)
  std::deque<std::pair<State, State>> queue;
  queue.emplace_back(db.initial, da.initial);
  seen.insert(queue.front());
  while (!queue.empty()) {
    auto [qb, qa] = queue.front();
    queue.pop_front();
    if (db.finals[qb] && (qa == kNoState || !da.finals[qa])) return false;
    for (Letter x = 0; x < sigma; ++x) {
      State nb = db.step(qb, x);
      if (nb == kNoState) continue;  // b dies: containment trivially holds on this branch
      State na = qa == kNoState ? kNoState : da.step(qa, x);
      if (seen.insert({nb, na}).second) queue.emplace_back(nb, na);
    }
  }
  return true;
}

bool equivalent(const Nfa& a, const Nfa& b) { return includes(a, b) && includes(b, a); }

bool isomorphic(const Dfa& a, const Dfa& b) {
  if (!(a.alphabet == b.alphabet) || a.numStates != b.numStates) return false;
  const std::size_t sigma = a.alphabet.size();
  std::vector<State> map(a.numStates, kNoState);
  std::vector<State> order;
  map[a.initial] = b.initial;
  order.push_back(a.initial);
  for (std::size_t head = 0; head < order.size(); ++head) {
    State qa = order[head];
    State qb = map[qa];
    if (a.finals[qa] != b.finals[qb]) return false;
    for (Letter x = 0; x < sigma; ++x) {
      State na = a.step(qa, x);
      State nb = b.step(qb, x);
      if ((na == kNoState) != (nb == kNoState)) return false;
      if (na == kNoState) continue;
      if (map[na] == kNoState) {
        map[na] = nb;
        order.push_back(na);
      } else if (map[na] != nb) {
        return false;
      }
    }
  }
  return order.size() == a.numStates;  // both trim: all states must be visited
}

std::optional<Word> shortestWord(const Nfa& input) {
  Dfa d = determinize(trim(input));
  auto dist = distancesToFinal(d);
  if (dist[d.initial] == kNoDistance) return std::nullopt;
  Word w;
  State q = d.initial;
  while (!d.finals[q]) {
    for (Letter a = 0; a < d.alphabet.size(); ++a) {
      State to = d.step(q, a);
      if (to != kNoState && dist[to] + 1 == dist[q]) {
        w.push_back(a);
        q = to;
        break;
      }
    }
  }
  return w;
}

Nfa leftQuotient(const Nfa& nfa, const Word& w) {
  std::vector<bool> current(nfa.numStates, false);
  current[nfa.initial] = true;
  current = epsilonClosure(nfa, current);
  for (Letter a : w) {
    std::vector<bool> next(nfa.numStates, false);
    for (State q = 0; q < nfa.numStates; ++q) {
      if (!current[q]) continue;
      auto [first, last] = nfa.transitionsFrom(q);
      for (auto* t = first; t != last; ++t)
        if (t->letter == a) next[t->to] = true;
    }
    current = epsilonClosure(nfa, next);
  }
  auto starts = sortedStates(current);
  if (starts.empty()) return emptyNfa(nfa.alphabet);
  Nfa out = nfa;
  State fresh = static_cast<State>(out.numStates++);
  out.finals.push_back(false);
  out.initial = fresh;
  for (State q : starts) out.addTransition(fresh, kEpsilon, q);
  out.normalize();
  return trim(out);
}

Nfa substitute(const Nfa& nfa, const Alphabet& target, const std::vector<Word>& images) {
  require(images.size() == nfa.alphabet.size(), "one image word required per letter");
  Nfa out;
  out.alphabet = target;
  out.numStates = nfa.numStates;
  out.initial = nfa.initial;
  out.finals = nfa.finals;
  for (const auto& t : nfa.transitions) {
    if (t.letter == kEpsilon) {
      out.addTransition(t.from, kEpsilon, t.to);
      continue;
    }
    const Word& img = images[t.letter];
    if (img.empty()) {
      out.addTransition(t.from, kEpsilon, t.to);
    } else if (img.size() == 1) {
      out.addTransition(t.from, img[0], t.to);
    } else {
      State prev = t.from;
      for (std::size_t k = 0; k + 1 < img.size(); ++k) {
        State mid = static_cast<State>(out.numStates++);
        out.finals.push_back(false);
        out.addTransition(prev, img[k], mid);
        prev = mid;
      }
      out.addTransition(prev, img.back(), t.to);
    }
  }
  out.normalize();
  return out;
}

std::vector<Word> enumerateUpTo(const Nfa& nfa, std::size_t maxLen, std::size_t maxCount) {
  Dfa d = minimalDfa(nfa);
  auto dist = distancesToFinal(d);
  std::vector<Word> out;
  Word current;
  // Depth-first by letter order within each target length gives length-lex order.
  auto dfs = [&](auto&& self, State q, std::size_t remaining) -> void {
    if (dist[q] == kNoDistance || dist[q] > remaining) return;
    if (remaining == 0) {
      if (d.finals[q]) {
        if (out.size() >= maxCount) throwDefect("word enumeration exceeded the count cap");
        out.push_back(current);
      }
      return;
    }
    for (Letter a = 0; a < d.alphabet.size(); ++a) {
      State to = d.step(q, a);
      if (to == kNoState) continue;
      current.push_back(a);
      self(self, to, remaining - 1);
      current.pop_back();
    }
  };
  for (std::size_t len = 0; len <= maxLen; ++len) dfs(dfs, d.initial, len);
  return out;
}

SccResult stronglyConnectedComponents(std::size_t numNodes,
                                      const std::vector<std::vector<int>>& adj) {
  SccResult result;
  result.comp.assign(numNodes, -1);
  std::vector<int> index(numNodes, -1), low(numNodes, 0);
  std::vector<bool> onStack(numNodes, false);
  std::vector<int> stack;
  int nextIndex = 0;
  // Iterative Tarjan with an explicit call frame stack.
  struct Frame {
    int node;
    std::size_t edge;
  };
  for (std::size_t root = 0; root < numNodes; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames = {{static_cast<int>(root), 0}};
    index[root] = low[root] = nextIndex++;
    stack.push_back(static_cast<int>(root));
    onStack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < adj[f.node].size()) {
        int next = adj[f.node][f.edge++];
        if (index[next] == -1) {
          index[next] = low[next] = nextIndex++;
          stack.push_back(next);
          onStack[next] = true;
          frames.push_back({next, 0});
        } else if (onStack[next]) {
          low[f.node] = std::min(low[f.node], index[next]);
        }
      } else {
        if (low[f.node] == index[f.node]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            onStack[w] = false;
            result.comp[w] = result.count;
            if (w == f.node) break;
          }
          ++result.count;
        }
        int node = f.node;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[node]);
      }
    }
  }
  return result;
}

std::vector<std::size_t> distancesToFinal(const Dfa& dfa) {
  std::vector<std::vector<int>> radj(dfa.numStates);
  for (State q = 0; q < dfa.numStates; ++q)
    for (Letter a = 0; a < dfa.alphabet.size(); ++a)
      if (dfa.step(q, a) != kNoState) radj[dfa.step(q, a)].push_back(q);
  std::vector<std::size_t> dist(dfa.numStates, kNoDistance);
  std::deque<State> queue;
  for (State q = 0; q < dfa.numStates; ++q)
    if (dfa.finals[q]) {
      dist[q] = 0;
      queue.push_back(q);
    }
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (int p : radj[q])
      if (dist[p] == kNoDistance) {
        dist[p] = dist[q] + 1;
        queue.push_back(static_cast<State>(p));
      }
  }
  return dist;
}

}  // namespace syncrel
