#include <benchmark/benchmark.h>

#include "syncrel/nfa.hpp"
#include "syncrel/regex.hpp"

namespace {

using namespace syncrel;

// Worst-case subset construction: (a+b)* a (a+b)^(n-1) needs 2^n subsets.
Nfa lastNthIsA(std::size_t n) {
  Alphabet ab({"a", "b"});
  Nfa nfa;
  nfa.alphabet = ab;
  nfa.numStates = n + 1;
  nfa.finals.assign(n + 1, false);
  nfa.finals[n] = true;
  nfa.addTransition(0, 0, 0);
  nfa.addTransition(0, 1, 0);
  nfa.addTransition(0, 0, 1);
  for (std::size_t k = 1; k < n; ++k) {
    nfa.addTransition(static_cast<State>(k), 0, static_cast<State>(k + 1));
    nfa.addTransition(static_cast<State>(k), 1, static_cast<State>(k + 1));
  }
  nfa.normalize();
  return nfa;
}

void BM_DeterminizeMinimize(benchmark::State& state) {
  Nfa nfa = lastNthIsA(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Dfa d = minimalDfa(nfa);
    benchmark::DoNotOptimize(d.numStates);
  }
}
BENCHMARK(BM_DeterminizeMinimize)->Arg(8)->Arg(12)->Arg(14);

void BM_RegexParse(benchmark::State& state) {
  Alphabet ab({"a", "b"});
  for (auto _ : state) {
    Nfa n = parseRegex("((a+b)*abba(a+b)* + (ab)*(a*+b*))^+", ab);
    benchmark::DoNotOptimize(n.numStates);
  }
}
BENCHMARK(BM_RegexParse);

}  // namespace

BENCHMARK_MAIN();
