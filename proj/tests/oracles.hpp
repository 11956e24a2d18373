#pragma once

// Brute-force reference implementations used only by tests. They follow the
// literal definitions (or a semantic search) rather than the library's
// algorithms, so agreement is meaningful evidence.

#include <cstdlib>
#include <deque>
#include <set>

#include "syncrel/nfa.hpp"
#include "syncrel/syncword.hpp"

namespace syncrel::oracle {

// Word metrics straight from the definitions, quadratic and obvious.
inline WordMetrics bruteMetrics(const TaggedAlphabet& alphabet, const Word& w) {
  auto diffAt = [&](std::size_t p) {  // inputs minus outputs in w[0..p)
    long d = 0;
    for (std::size_t k = 0; k < p; ++k) d += alphabet.isInput(w[k]) ? 1 : -1;
    return d;
  };
  WordMetrics m;
  for (std::size_t p = 1; p <= w.size(); ++p)
    m.lag = std::max(m.lag, static_cast<std::size_t>(std::labs(diffAt(p))));
  std::vector<std::size_t> shiftPositions;  // 1-indexed position before each role change
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (alphabet.role(w[k]) != alphabet.role(w[k + 1])) shiftPositions.push_back(k + 1);
  m.shift = shiftPositions.size();
  for (std::size_t n = 1; n <= shiftPositions.size(); ++n) {
    bool found = false;
    for (std::size_t i = 0; i + n <= shiftPositions.size() && !found; ++i) {
      bool ok = true;
      for (std::size_t j = i; j < i + n; ++j)
        ok = ok && static_cast<std::size_t>(std::labs(diffAt(shiftPositions[j]))) >= n;
      found = ok;
    }
    if (found) m.shiftlag = n;
  }
  return m;
}

// Semantic search: the lag over run prefixes is unbounded iff a run reaches
// |#inputs - #outputs| beyond any value pigeonholeable without a
// nonzero-balance cycle. Works on configurations (state, difference).
inline bool bruteLagInfinite(const TaggedAlphabet& alphabet, const Nfa& sync) {
  Nfa t = trim(removeEpsilon(sync));
  if (std::find(t.finals.begin(), t.finals.end(), true) == t.finals.end()) return false;
  const long bound = 3 * static_cast<long>(t.numStates) + 2;
  std::set<std::pair<State, long>> seen;
  std::deque<std::pair<State, long>> queue = {{t.initial, 0}};
  seen.insert(queue.front());
  while (!queue.empty()) {
    auto [q, d] = queue.front();
    queue.pop_front();
    if (std::labs(d) >= bound) return true;
    auto [first, last] = t.transitionsFrom(q);
    for (auto* tr = first; tr != last; ++tr) {
      long nd = d + (alphabet.isInput(tr->letter) ? 1 : -1);
      if (seen.insert({tr->to, nd}).second) queue.emplace_back(tr->to, nd);
    }
  }
  return false;
}

// Same idea for the number of role changes, on configurations
// (state, last role, saturating shift count).
inline bool bruteShiftInfinite(const TaggedAlphabet& alphabet, const Nfa& sync) {
  Nfa t = trim(removeEpsilon(sync));
  if (std::find(t.finals.begin(), t.finals.end(), true) == t.finals.end()) return false;
  const long bound = 3 * static_cast<long>(t.numStates) + 2;
  std::set<std::tuple<State, int, long>> seen;
  std::deque<std::tuple<State, int, long>> queue = {{t.initial, 0, 0}};
  seen.insert(queue.front());
  while (!queue.empty()) {
    auto [q, role, shifts] = queue.front();
    queue.pop_front();
    if (shifts >= bound) return true;
    auto [first, last] = t.transitionsFrom(q);
    for (auto* tr = first; tr != last; ++tr) {
      int next = alphabet.isInput(tr->letter) ? 1 : 2;
      long ns = shifts + (role != 0 && role != next ? 1 : 0);
      if (seen.insert({tr->to, next, ns}).second) queue.emplace_back(tr->to, next, ns);
    }
  }
  return false;
}

// Assemble prefix cycle^j mid cycle2^k suffix.
inline Word pumped(const PumpWitness& w, std::size_t j, std::size_t k) {
  Word out = w.prefix;
  for (std::size_t i = 0; i < j; ++i) out.insert(out.end(), w.cycle.begin(), w.cycle.end());
  out.insert(out.end(), w.mid.begin(), w.mid.end());
  for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), w.cycle2.begin(), w.cycle2.end());
  out.insert(out.end(), w.suffix.begin(), w.suffix.end());
  return out;
}

}  // namespace syncrel::oracle
