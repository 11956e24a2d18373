#include <doctest.h>

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "syncrel/autorel.hpp"
#include "syncrel/definability.hpp"
#include "syncrel/errors.hpp"
#include "syncrel/regex.hpp"
#include "syncrel/resync.hpp"
#include "syncrel/syncword.hpp"

#include "generators.hpp"
#include "testutil.hpp"

using namespace syncrel;
using namespace testutil;
using namespace testgen;

namespace {

const TaggedAlphabet kUnary({"a"}, {"b"});
const TaggedAlphabet kAB({"a", "b"}, {"c", "d"});
const TaggedAlphabet kSame({"a", "b"}, {"a", "b"});

Nfa straight() { return parseRegex("a*b*", kUnary); }
Nfa lockstep() { return parseRegex("(ab)*", kUnary); }
// Alternate for a while, then drift off by two or more on one side.
Nfa driftTails() { return parseRegex("(ab)*(aaa* + bbb*)", kUnary); }
Nfa mixedTarget() { return parseRegex("a*b* + (ab)*(aaa* + bbb*)", kUnary); }
Nfa mixedSource() { return parseRegex("(ab)* + (ab)*(aaa* + bbb*)", kUnary); }
Nfa twoStyle() { return parseRegex("(ab)* + a*b*", kUnary); }

// Per-prefix residual finite-shift test, memoized per prefix. Works from the
// residual language itself (left quotient plus a fresh finiteness analysis),
// independently of the library's per-state flags.
class ResidualShiftOracle {
 public:
  ResidualShiftOracle(const TaggedAlphabet& alphabet, Nfa lang)
      : alphabet_(alphabet), lang_(std::move(lang)) {}

  bool finiteShiftAt(const Word& prefix) {
    auto it = cache_.find(prefix);
    if (it != cache_.end()) return it->second;
    bool fs = analyzeFiniteness(alphabet_, leftQuotient(lang_, prefix)).shiftFinite;
    cache_.emplace(prefix, fs);
    return fs;
  }

  // First prefix length whose residual has finite shift; w.size() + 1 if none.
  std::size_t entry(const Word& w) {
    for (std::size_t i = 0; i <= w.size(); ++i)
      if (finiteShiftAt(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)))) return i;
    return w.size() + 1;
  }

  // Literal order: wherever wPrime's residual has finite shift, so does w's.
  bool leq(const Word& w, const Word& wPrime) {
    for (std::size_t i = 0; i <= w.size(); ++i) {
      Word pw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      Word pp(wPrime.begin(), wPrime.begin() + static_cast<std::ptrdiff_t>(i));
      if (finiteShiftAt(pp) && !finiteShiftAt(pw)) return false;
    }
    return true;
  }

 private:
  TaggedAlphabet alphabet_;
  Nfa lang_;
  std::map<Word, bool> cache_;
};

std::map<std::pair<Word, Word>, std::vector<Word>> byPair(const TaggedAlphabet& alphabet,
                                                          const std::set<Word>& words) {
  std::map<std::pair<Word, Word>, std::vector<Word>> classes;
  for (const Word& w : words) classes[pairOf(alphabet, w)].push_back(w);
  return classes;
}

std::set<std::pair<Word, Word>> pairSet(const TaggedAlphabet& alphabet,
                                        const std::set<Word>& words) {
  std::set<std::pair<Word, Word>> out;
  for (const Word& w : words) out.insert(pairOf(alphabet, w));
  return out;
}

std::set<Word> pairFiltered(const TaggedAlphabet& alphabet, const std::set<Word>& words,
                            const std::set<std::pair<Word, Word>>& pairs) {
  std::set<Word> out;
  for (const Word& w : words)
    if (pairs.count(pairOf(alphabet, w))) out.insert(w);
  return out;
}

// {w in langWords : some same-pair word of subWords enters finite shift
// strictly earlier}.
std::set<Word> bruteLarger(const TaggedAlphabet& alphabet, ResidualShiftOracle& ord,
                           const std::set<Word>& langWords, const std::set<Word>& subWords) {
  auto classes = byPair(alphabet, subWords);
  std::set<Word> out;
  for (const Word& w : langWords) {
    auto it = classes.find(pairOf(alphabet, w));
    if (it == classes.end()) continue;
    for (const Word& below : it->second) {
      if (ord.entry(below) < ord.entry(w)) {
        out.insert(w);
        break;
      }
    }
  }
  return out;
}

// Per pair class, the members whose entry position attains the class minimum
// (keepMin) or maximum (otherwise).
std::set<Word> bruteExtremal(const TaggedAlphabet& alphabet, ResidualShiftOracle& ord,
                             const std::set<Word>& words, bool keepMin) {
  std::set<Word> out;
  for (const auto& cls : byPair(alphabet, words)) {
    std::size_t best = ord.entry(cls.second.front());
    for (const Word& w : cls.second) {
      std::size_t e = ord.entry(w);
      if (keepMin ? e < best : e > best) best = e;
    }
    for (const Word& w : cls.second)
      if (ord.entry(w) == best) out.insert(w);
  }
  return out;
}

Nfa allStatesFinal(Nfa n) {
  n.finals.assign(n.numStates, true);
  return n;
}

}  // namespace

TEST_CASE("synchronization order ranks words by finite-shift entry") {
  Nfa T = mixedTarget();
  Word straightForm = kUnary.parseWord("aaab");
  Word rideForm = kUnary.parseWord("abaa");

  CHECK(syncOrderLeq(kUnary, T, straightForm, rideForm));
  CHECK_FALSE(syncOrderLeq(kUnary, T, rideForm, straightForm));
  CHECK(syncOrderLeq(kUnary, T, straightForm, straightForm));
  CHECK(syncOrderLeq(kUnary, T, rideForm, rideForm));

  ResidualShiftOracle ord(kUnary, T);
  CHECK(ord.entry(straightForm) == 2);
  CHECK(ord.entry(rideForm) == 4);

  SUBCASE("same-pair words of a two-style language compare by entry") {
    Nfa t = twoStyle();
    CHECK(syncOrderLeq(kUnary, t, kUnary.parseWord("aabb"), kUnary.parseWord("abab")));
    CHECK_FALSE(syncOrderLeq(kUnary, t, kUnary.parseWord("abab"), kUnary.parseWord("aabb")));
  }

  SUBCASE("inputs-first languages have one word per pair") {
    Nfa s = straight();
    for (const Word& w : acceptedSet(s, 5)) CHECK(syncOrderLeq(kUnary, s, w, w));
  }

  SUBCASE("membership precondition") {
    try {
      syncOrderLeq(kUnary, T, kUnary.parseWord("ba"), kUnary.parseWord("ab"));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(e.name() == "NotInLanguage");
    }
  }

  SUBCASE("pair precondition") {
    try {
      syncOrderLeq(kUnary, T, kUnary.parseWord("ab"), kUnary.parseWord("aabb"));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(e.name() == "NotSamePair");
    }
  }

  SUBCASE("agrees with residual comparison and is total per pair") {
    std::mt19937 rng(4501);
    int seen = 0;
    for (int round = 0; round < 120 && seen < 10; ++round) {
      Nfa cand = randomNfa(rng, kUnary.combined());
      if (isEmpty(cand) || !analyzeFiniteness(kUnary, cand).shiftlagFinite) continue;
      ++seen;
      ResidualShiftOracle ro(kUnary, cand);
      for (const auto& cls : byPair(kUnary, acceptedSet(cand, 5))) {
        for (const Word& w : cls.second) {
          for (const Word& v : cls.second) {
            CHECK(syncOrderLeq(kUnary, cand, w, v) == ro.leq(w, v));
            CHECK((ro.leq(w, v) || ro.leq(v, w)));
          }
        }
      }
    }
    CHECK(seen >= 10);
  }
}

TEST_CASE("larger-synchronization set collects strictly dominated words") {
  Nfa T = mixedTarget();

  SUBCASE("empty comparison set") {
    CHECK(isEmpty(largerSyncSet(kUnary, T, emptyNfa(kUnary.combined()))));
  }

  SUBCASE("rides above an even-length inputs-first core") {
    // Even-length words of a*b*: both block lengths even, or both odd.
    Nfa evenStraight = parseRegex("(aa)*(bb)* + (aa)*ab(bb)*", kUnary);
    Nfa sub = unionOf(evenStraight, driftTails());
    Nfa got = largerSyncSet(kUnary, T, sub);

    // A ride is dominated exactly when its even-drift inputs-first form is in
    // the comparison set and differs from the ride itself.
    Nfa expect = parseRegex("ab(ab)*aa(aa)* + abab(ab)*bb(bb)*", kUnary);
    CHECK(equivalent(got, expect));

    ResidualShiftOracle ord(kUnary, T);
    CHECK(acceptedSet(got, 8) == bruteLarger(kUnary, ord, acceptedSet(T, 8), acceptedSet(sub, 8)));

    CHECK(member(got, kUnary.parseWord("abaa")));
    CHECK(member(got, kUnary.parseWord("ababaa")));
    CHECK(member(got, kUnary.parseWord("ababbb")));
    CHECK_FALSE(member(got, kUnary.parseWord("aaaa")));   // its own only synchronization
    CHECK_FALSE(member(got, kUnary.parseWord("abbb")));   // equals its inputs-first form
    CHECK_FALSE(member(got, kUnary.parseWord("abaaa")));  // odd drift has no even partner
  }

  SUBCASE("maximal words dominate nothing") {
    CHECK(isEmpty(largerSyncSet(kUnary, T, driftTails())));
  }

  SUBCASE("subset precondition") {
    try {
      largerSyncSet(kUnary, lockstep(), straight());
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(e.name() == "NotSubset");
    }
  }

  SUBCASE("finite-shiftlag precondition") {
    Nfa any = parseRegex("(a+b)*", kUnary);
    try {
      largerSyncSet(kUnary, any, any);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(e.name() == "NotFiniteShiftlag");
    }
  }

  SUBCASE("random differential against residual comparison") {
    std::mt19937 rng(911);
    int seen = 0;
    for (int round = 0; round < 120 && seen < 8; ++round) {
      Nfa cand = randomNfa(rng, kUnary.combined());
      if (isEmpty(cand) || !analyzeFiniteness(kUnary, cand).shiftlagFinite) continue;
      Nfa sub = intersectOf(cand, randomNfa(rng, kUnary.combined()));
      ++seen;
      Nfa got = largerSyncSet(kUnary, cand, sub);
      ResidualShiftOracle ord(kUnary, cand);
      CHECK(acceptedSet(got, 6) ==
            bruteLarger(kUnary, ord, acceptedSet(cand, 6), acceptedSet(sub, 6)));
    }
    CHECK(seen >= 8);
  }
}

TEST_CASE("order-minimal self-selection keeps least synchronizations") {
  SUBCASE("inputs-first languages are already minimal") {
    Nfa wide = parseRegex("(a+b)*(c+d)*", kAB);
    CHECK(equivalent(minsyncTT(kAB, wide), wide));
  }

  SUBCASE("mixed-style target reduces to its inputs-first core") {
    CHECK(equivalent(minsyncTT(kUnary, mixedTarget()), straight()));
  }

  SUBCASE("two-style target drops the strictly later style") {
    CHECK(equivalent(minsyncTT(kUnary, twoStyle()), straight()));
  }

  SUBCASE("pair coverage is preserved") {
    Nfa T = mixedTarget();
    CHECK(relEquivalent(relationOfSync(kUnary, minsyncTT(kUnary, T)), relationOfSync(kUnary, T)));
  }

  SUBCASE("random invariants: subset, coverage, exact minimal classes") {
    std::mt19937 rng(7321);
    int seen = 0;
    for (int round = 0; round < 120 && seen < 10; ++round) {
      Nfa cand = randomNfa(rng, kUnary.combined());
      if (isEmpty(cand) || !analyzeFiniteness(kUnary, cand).shiftlagFinite) continue;
      ++seen;
      Nfa sel = minsyncTT(kUnary, cand);
      CHECK(includes(cand, sel));
      CHECK(relEquivalent(relationOfSync(kUnary, sel), relationOfSync(kUnary, cand)));
      ResidualShiftOracle ord(kUnary, cand);
      std::set<Word> words = acceptedSet(cand, 6);
      CHECK(acceptedSet(sel, 6) == bruteExtremal(kUnary, ord, words, true));
      for (const auto& cls : byPair(kUnary, words)) {
        for (const Word& w : cls.second) {
          if (!member(sel, w)) continue;
          for (const Word& other : cls.second) CHECK(ord.leq(w, other));
        }
      }
    }
    CHECK(seen >= 10);
  }
}

TEST_CASE("all-synchronizations regularity decision") {
  Nfa T = mixedTarget();

  SUBCASE("a language carries all of its own pairs") {
    Verdict v = allsyncRegular(kUnary, T, T);
    CHECK(v.answer == Answer::Yes);
    CHECK(v.method == "allsync");
    REQUIRE(v.witness.has_value());
    CHECK(equivalent(*v.witness, T));
  }

  SUBCASE("equal-length pairs inside the mixed target select a counting set") {
    Verdict v = allsyncRegular(kUnary, lockstep(), T);
    CHECK(v.answer == Answer::No);
    CHECK_FALSE(v.witness.has_value());
    CHECK_FALSE(v.reason.empty());
  }

  SUBCASE("the mixed source also selects a counting set") {
    CHECK(allsyncRegular(kUnary, mixedSource(), T).answer == Answer::No);
  }

  SUBCASE("two-style target: full pair set selects everything") {
    CHECK(allsyncRegular(kUnary, lockstep(), twoStyle()).answer == Answer::No);
    Verdict v = allsyncRegular(kUnary, straight(), twoStyle());
    CHECK(v.answer == Answer::Yes);
    REQUIRE(v.witness.has_value());
    CHECK(equivalent(*v.witness, twoStyle()));
  }

  SUBCASE("empty operands") {
    Nfa none = emptyNfa(kUnary.combined());
    Verdict v1 = allsyncRegular(kUnary, none, T);
    CHECK(v1.answer == Answer::Yes);
    REQUIRE(v1.witness.has_value());
    CHECK(isEmpty(*v1.witness));
    Verdict v2 = allsyncRegular(kUnary, T, none);
    CHECK(v2.answer == Answer::Yes);
    REQUIRE(v2.witness.has_value());
    CHECK(isEmpty(*v2.witness));
  }

  SUBCASE("finite-shiftlag precondition") {
    Nfa any = parseRegex("(a+b)*", kUnary);
    try {
      allsyncRegular(kUnary, any, any);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(e.name() == "NotFiniteShiftlag");
    }
  }

  SUBCASE("random witnesses match the brute selection") {
    std::mt19937 rng(6011);
    int seen = 0;
    for (int round = 0; round < 120 && seen < 8; ++round) {
      Nfa cand = randomNfa(rng, kUnary.combined());
      if (isEmpty(cand) || !analyzeFiniteness(kUnary, cand).shiftlagFinite) continue;
      Nfa src = cand;
      if (seen % 2 == 1) {
        Nfa other = randomNfa(rng, kUnary.combined());
        if (isEmpty(other) || !analyzeFiniteness(kUnary, other).shiftlagFinite) continue;
        src = other;
      }
      ++seen;
      Verdict v = allsyncRegular(kUnary, src, cand);
      CHECK(v.answer != Answer::Unknown);
      if (v.answer != Answer::Yes) continue;
      REQUIRE(v.witness.has_value());
      CHECK(includes(cand, *v.witness));
      CHECK(acceptedSet(*v.witness, 6) ==
            pairFiltered(kUnary, acceptedSet(cand, 6), pairSet(kUnary, acceptedSet(src, 6))));
    }
    CHECK(seen >= 8);
  }
}

TEST_CASE("least-synchronizations regularity decision") {
  SUBCASE("inputs-first self-selection") {
    Verdict v = minsyncRegular(kUnary, straight(), straight());
    CHECK(v.answer == Answer::Yes);
    CHECK(v.method == "minsync");
    REQUIRE(v.witness.has_value());
    CHECK(equivalent(*v.witness, straight()));
  }

  SUBCASE("mixed pair: the least selections count") {
    CHECK(minsyncRegular(kUnary, mixedSource(), mixedTarget()).answer == Answer::No);
  }

  SUBCASE("drift-two source: the least selections still count") {
    // The least synchronizations of the drift-two pairs are their inputs-first
    // forms {a^m b^n : |m - n| >= 2}, which needs unbounded counting.
    Verdict v = minsyncRegular(kUnary, driftTails(), mixedTarget());
    CHECK(v.answer == Answer::No);

    ResidualShiftOracle ord(kUnary, mixedTarget());
    std::set<Word> selected = pairFiltered(kUnary, acceptedSet(mixedTarget(), 8),
                                           pairSet(kUnary, acceptedSet(driftTails(), 8)));
    std::set<Word> brute = bruteExtremal(kUnary, ord, selected, true);
    Nfa flat = straight();
    for (const Word& w : brute) {
      auto pr = pairOf(kUnary, w);
      CHECK(member(flat, w));
      long drift = static_cast<long>(pr.first.size()) - static_cast<long>(pr.second.size());
      CHECK(std::abs(drift) >= 2);
    }
    for (const Word& w : acceptedSet(flat, 8)) {
      auto pr = pairOf(kUnary, w);
      long drift = static_cast<long>(pr.first.size()) - static_cast<long>(pr.second.size());
      if (std::abs(drift) >= 2) CHECK(brute.count(w) == 1);
    }
  }

  SUBCASE("least and full selections are regular together") {
    struct Case {
      Nfa src;
      Nfa tgt;
    };
    std::vector<Case> cases;
    cases.push_back({mixedSource(), mixedTarget()});
    cases.push_back({driftTails(), mixedTarget()});
    cases.push_back({lockstep(), twoStyle()});
    cases.push_back({straight(), twoStyle()});
    cases.push_back({mixedTarget(), mixedTarget()});
    cases.push_back({lockstep(), mixedTarget()});
    for (const Case& c : cases)
      CHECK(minsyncRegular(kUnary, c.src, c.tgt).answer == allsyncRegular(kUnary, c.src, c.tgt).answer);

    std::mt19937 rng(2741);
    int seen = 0;
    for (int round = 0; round < 120 && seen < 8; ++round) {
      Nfa tgt = randomNfa(rng, kUnary.combined());
      Nfa src = randomNfa(rng, kUnary.combined());
      if (isEmpty(tgt) || !analyzeFiniteness(kUnary, tgt).shiftlagFinite) continue;
      if (isEmpty(src) || !analyzeFiniteness(kUnary, src).shiftlagFinite) continue;
      ++seen;
      Verdict mn = minsyncRegular(kUnary, src, tgt);
      CHECK(mn.answer == allsyncRegular(kUnary, src, tgt).answer);
      if (mn.answer != Answer::Yes) continue;
      REQUIRE(mn.witness.has_value());
      ResidualShiftOracle ord(kUnary, tgt);
      std::set<Word> selected =
          pairFiltered(kUnary, acceptedSet(tgt, 6), pairSet(kUnary, acceptedSet(src, 6)));
      CHECK(acceptedSet(*mn.witness, 6) == bruteExtremal(kUnary, ord, selected, true));
    }
    CHECK(seen >= 8);
  }
}

TEST_CASE("greatest-synchronizations regularity decision") {
  SUBCASE("two-style self-selection is not regular") {
    Verdict v = maxsyncRegular(kUnary, twoStyle(), twoStyle());
    CHECK(v.answer == Answer::No);
    CHECK(v.method == "maxsync");
    CHECK_FALSE(v.reason.empty());
  }

  SUBCASE("inputs-first self-selection") {
    Verdict v = maxsyncRegular(kUnary, straight(), straight());
    CHECK(v.answer == Answer::Yes);
    REQUIRE(v.witness.has_value());
    CHECK(equivalent(*v.witness, straight()));

    Nfa wide = parseRegex("(a+b)*(c+d)*", kAB);
    Verdict v2 = maxsyncRegular(kAB, wide, wide);
    CHECK(v2.answer == Answer::Yes);
    REQUIRE(v2.witness.has_value());
    CHECK(equivalent(*v2.witness, wide));
  }

  SUBCASE("lockstep pairs in the two-style target keep the lockstep style") {
    Verdict v = maxsyncRegular(kUnary, lockstep(), twoStyle());
    CHECK(v.answer == Answer::Yes);
    REQUIRE(v.witness.has_value());
    CHECK(equivalent(*v.witness, lockstep()));

    ResidualShiftOracle ord(kUnary, twoStyle());
    std::set<Word> selected = pairFiltered(kUnary, acceptedSet(twoStyle(), 6),
                                           pairSet(kUnary, acceptedSet(lockstep(), 6)));
    CHECK(acceptedSet(*v.witness, 6) == bruteExtremal(kUnary, ord, selected, false));

    // The full selection of the same pairs is irregular: the greatest and the
    // full selections can disagree.
    CHECK(allsyncRegular(kUnary, lockstep(), twoStyle()).answer == Answer::No);
  }

  SUBCASE("prefix-closed stem keeps the stretched style regular") {
    Nfa T = parseRegex("(ab)*a*b*", kUnary);
    Verdict v = maxsyncRegular(kUnary, T, T);
    CHECK(v.answer == Answer::Yes);
    REQUIRE(v.witness.has_value());
    ResidualShiftOracle ord(kUnary, T);
    CHECK(acceptedSet(*v.witness, 6) ==
          bruteExtremal(kUnary, ord, acceptedSet(T, 6), false));
  }

  SUBCASE("finite-shiftlag precondition") {
    Nfa any = parseRegex("(a+b)*", kUnary);
    try {
      maxsyncRegular(kUnary, any, any);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(e.name() == "NotFiniteShiftlag");
    }
  }

  SUBCASE("random greatest selections match brute force") {
    std::mt19937 rng(8211);
    int seen = 0;
    for (int round = 0; round < 120 && seen < 6; ++round) {
      Nfa cand = randomNfa(rng, kUnary.combined());
      if (isEmpty(cand) || !analyzeFiniteness(kUnary, cand).shiftlagFinite) continue;
      ++seen;
      Verdict v = maxsyncRegular(kUnary, cand, cand);
      CHECK(v.answer != Answer::Unknown);
      if (v.answer != Answer::Yes) continue;
      REQUIRE(v.witness.has_value());
      CHECK(includes(cand, *v.witness));
      ResidualShiftOracle ord(kUnary, cand);
      CHECK(acceptedSet(*v.witness, 5) ==
            bruteExtremal(kUnary, ord, acceptedSet(cand, 5), false));
    }
    CHECK(seen >= 6);
  }
}

TEST_CASE("unambiguity of finite-shiftlag languages") {
  CHECK(isUnambiguous(kAB, parseRegex("((a+b)(c+d))*((a+b)* + (c+d)*)", kAB)));
  CHECK(isUnambiguous(kAB, parseRegex("(a+b)*(c+d)*", kAB)));
  CHECK(isUnambiguous(kUnary, straight()));
  CHECK(isUnambiguous(kUnary, lockstep()));
  CHECK_FALSE(isUnambiguous(kUnary, twoStyle()));      // aabb and abab share a pair
  CHECK_FALSE(isUnambiguous(kUnary, mixedTarget()));   // aaab and abaa share a pair

  SUBCASE("finite-shiftlag precondition") {
    try {
      isUnambiguous(kUnary, parseRegex("(a+b)*", kUnary));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(e.name() == "NotFiniteShiftlag");
    }
  }

  SUBCASE("an unambiguous language synchronizes each pair at most once") {
    std::mt19937 rng(3371);
    int seenTrue = 0;
    int rounds = 0;
    for (int round = 0; round < 120 && (seenTrue < 4 || rounds < 12); ++round) {
      Nfa cand = randomNfa(rng, kUnary.combined());
      if (isEmpty(cand) || !analyzeFiniteness(kUnary, cand).shiftlagFinite) continue;
      ++rounds;
      bool unique = isUnambiguous(kUnary, cand);
      bool collision = false;
      for (const auto& cls : byPair(kUnary, acceptedSet(cand, 6)))
        if (cls.second.size() >= 2) collision = true;
      if (collision) CHECK_FALSE(unique);
      if (unique) {
        CHECK_FALSE(collision);
        ++seenTrue;
      }
    }
    CHECK(seenTrue >= 4);
    CHECK(rounds >= 12);
  }
}

TEST_CASE("even prefix closure over alternating words") {
  CHECK(isPrefixClosedEven(kUnary, lockstep()));
  CHECK(isPrefixClosedEven(kUnary, emptyNfa(kUnary.combined())));
  CHECK(isPrefixClosedEven(kUnary, epsilonNfa(kUnary.combined())));
  CHECK(isPrefixClosedEven(kSame, parseRegex("(i:a o:a + i:b o:b)*", kSame)));
  CHECK(isPrefixClosedEven(kUnary, parseRegex("eps + ab + abab", kUnary)));
  CHECK_FALSE(isPrefixClosedEven(kUnary, parseRegex("abab", kUnary)));
  CHECK_FALSE(isPrefixClosedEven(kUnary, parseRegex("eps + abab", kUnary)));

  SUBCASE("alternation precondition") {
    for (const char* bad : {"a", "ba", "aab"}) {
      try {
        isPrefixClosedEven(kUnary, parseRegex(bad, kUnary));
        FAIL("expected an error");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Precondition);
        CHECK(e.name() == "NotAlternating");
      }
    }
  }
}

TEST_CASE("greatest synchronizations over a prefix-closed stem") {
  SUBCASE("empty stem leaves inputs-first words") {
    Dfa got = maxsyncPrefixClosed(kUnary, epsilonNfa(kUnary.combined()));
    CHECK(equivalent(toNfa(got), straight()));
  }

  SUBCASE("lockstep stem stretches each pair as far as possible") {
    Dfa got = maxsyncPrefixClosed(kUnary, lockstep());
    Nfa T = parseRegex("(ab)*a*b*", kUnary);
    ResidualShiftOracle ord(kUnary, T);
    CHECK(acceptedSet(toNfa(got), 6) ==
          bruteExtremal(kUnary, ord, acceptedSet(T, 6), false));
    CHECK(member(toNfa(got), kUnary.parseWord("abab")));
    CHECK_FALSE(member(toNfa(got), kUnary.parseWord("aabb")));
  }

  SUBCASE("identity stem yields the matched-prefix greatest set") {
    Nfa idStar = parseRegex("(i:a o:a + i:b o:b)*", kSame);
    Nfa T = concatOf(idStar, parseRegex("(i:a + i:b)*(o:a + o:b)*", kSame));
    Verdict v = maxsyncRegular(kSame, T, T);
    REQUIRE(v.answer == Answer::Yes);
    REQUIRE(v.witness.has_value());
    CHECK(equivalent(toNfa(maxsyncPrefixClosed(kSame, idStar)), *v.witness));
  }

  SUBCASE("random prefix-closed stems stay inside the profile decision") {
    // Equality cannot be asserted here: when a stem has no extension inside
    // the stem language, every same-pair word ties in the synchronization
    // order and the order-maximal set keeps them all, while the longest-stem
    // selection keeps only the word that rides the stem to its end. The
    // selection is still a member-of-T refinement covering every pair.
    std::mt19937 rng(5531);
    Nfa alternate = parseRegex("((a+b)(c+d))*", kAB);
    int seen = 0;
    for (int round = 0; round < 80 && seen < 5; ++round) {
      Nfa cand = randomNfa(rng, kAB.combined());
      Nfa closed = intersectOf(allStatesFinal(trim(removeEpsilon(cand))), alternate);
      if (isEmpty(closed)) continue;
      ++seen;
      CHECK(isPrefixClosedEven(kAB, closed));
      Dfa got = maxsyncPrefixClosed(kAB, closed);
      Nfa T = concatOf(closed, parseRegex("(a+b)*(c+d)*", kAB));
      Verdict v = maxsyncRegular(kAB, T, T);
      REQUIRE(v.answer == Answer::Yes);
      REQUIRE(v.witness.has_value());
      CHECK(includes(*v.witness, toNfa(got)));
      CHECK(includes(T, toNfa(got)));
      CHECK(relEquivalent(relationOfSync(kAB, toNfa(got)), relationOfSync(kAB, T)));
    }
    CHECK(seen >= 5);
  }

  SUBCASE("closure precondition") {
    try {
      maxsyncPrefixClosed(kUnary, parseRegex("abab", kUnary));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(e.name() == "NotPrefixClosed");
    }
    try {
      maxsyncPrefixClosed(kUnary, parseRegex("a", kUnary));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(e.name() == "NotAlternating");
    }
  }
}

TEST_CASE("prefix-recognizability of relations over a shared alphabet") {
  Nfa idStar = parseRegex("(i:a o:a + i:b o:b)*", kSame);

  SUBCASE("the prefix-extension relation") {
    AutomaticRelation r =
        relationOfSync(kSame, concatOf(idStar, parseRegex("(o:a + o:b)*", kSame)));
    Verdict v = isPrefixRecognizable(r);
    CHECK(v.answer == Answer::Yes);
    CHECK(v.method == "prefix-recognizable");
  }

  SUBCASE("the identity relation") {
    CHECK(isPrefixRecognizable(identityRelation(kSame)).answer == Answer::Yes);
  }

  SUBCASE("the equal-length relation is not prefix-recognizable") {
    AutomaticRelation r = relationOfSync(kSame, parseRegex("((i:a + i:b)(o:a + o:b))*", kSame));
    Verdict v = isPrefixRecognizable(r);
    CHECK(v.answer == Answer::No);
    CHECK_FALSE(v.reason.empty());
  }

  SUBCASE("empty and full relations") {
    CHECK(isPrefixRecognizable(emptyRelation(kSame)).answer == Answer::Yes);
    CHECK(isPrefixRecognizable(fullRelation(kSame)).answer == Answer::Yes);
  }

  SUBCASE("alphabet shape precondition") {
    try {
      isPrefixRecognizable(fullRelation(kAB));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(e.name() == "AlphabetShapeMismatch");
    }
  }
}

TEST_CASE("definability router") {
  SUBCASE("identical languages define themselves") {
    Verdict v = decideDefinability(kUnary, mixedTarget(), mixedTarget());
    CHECK(v.answer == Answer::Yes);
    CHECK(v.method == "identical-languages");
    REQUIRE(v.witness.has_value());
    CHECK(equivalent(*v.witness, mixedTarget()));
  }

  SUBCASE("missing pairs refute definability") {
    Verdict v = decideDefinability(kUnary, straight(), lockstep());
    CHECK(v.answer == Answer::No);
    CHECK(v.method == "pair-containment");
    CHECK_FALSE(v.reason.empty());
  }

  SUBCASE("rectangle sources select inside any finite-shiftlag target") {
    Verdict v = decideDefinability(kUnary, straight(), twoStyle());
    CHECK(v.answer == Answer::Yes);
    CHECK(v.method == "recognizable-source");
    REQUIRE(v.witness.has_value());
    CHECK(includes(twoStyle(), *v.witness));
    CHECK(relEquivalent(relationOfSync(kUnary, *v.witness), relationOfSync(kUnary, straight())));
  }

  SUBCASE("counting sources cannot enter a finite-shift target") {
    Verdict v = decideDefinability(kUnary, lockstep(), straight());
    CHECK(v.answer == Answer::No);
    CHECK(v.method == "finite-shift-target");
  }

  SUBCASE("rectangle relations carried by a counting source fit a finite-shift target") {
    Verdict v = decideDefinability(kUnary, twoStyle(), straight());
    CHECK(v.answer == Answer::Yes);
    CHECK(v.method == "finite-shift-target");
    REQUIRE(v.witness.has_value());
    CHECK(equivalent(*v.witness, straight()));
  }

  SUBCASE("unambiguous targets decide definability") {
    Nfa canonicalT = parseRegex("(ab)*(a* + b*)", kUnary);
    Verdict v = decideDefinability(kUnary, mixedSource(), canonicalT);
    CHECK(v.answer == Answer::Yes);
    CHECK(v.method == "unambiguous-target");
    REQUIRE(v.witness.has_value());
    CHECK(includes(canonicalT, *v.witness));
    CHECK(relEquivalent(relationOfSync(kUnary, *v.witness),
                        relationOfSync(kUnary, mixedSource())));
  }

  SUBCASE("a regular greatest self-selection decides through greatest selections") {
    Nfa T = parseRegex("(ab)*a*b*", kUnary);

    Verdict yes = decideDefinability(kUnary, lockstep(), T);
    CHECK(yes.answer == Answer::Yes);
    CHECK(yes.method == "regular-max-target");
    REQUIRE(yes.witness.has_value());
    CHECK(relEquivalent(relationOfSync(kUnary, *yes.witness), relationOfSync(kUnary, lockstep())));

    // Equal-length pairs over a matched-prefix target: the greatest
    // synchronizations ride the identity stem until the first mismatch, so
    // they pin the stem length to the longest common prefix of the two
    // sides, which no finite automaton can compare.
    Nfa idStar = parseRegex("(i:a o:a + i:b o:b)*", kSame);
    Nfa Tpr = concatOf(idStar, parseRegex("(i:a + i:b)*(o:a + o:b)*", kSame));
    Nfa equalLen = parseRegex("((i:a + i:b)(o:a + o:b))*", kSame);
    Verdict no = decideDefinability(kSame, equalLen, Tpr);
    CHECK(no.answer == Answer::No);
    CHECK(no.method == "regular-max-target");
  }

  SUBCASE("witness cascade: the greatest selection certifies") {
    Verdict v = decideDefinability(kUnary, lockstep(), twoStyle());
    CHECK(v.answer == Answer::Yes);
    CHECK(v.method == "sufficient-checks/maxsync");
    REQUIRE(v.witness.has_value());
    CHECK(equivalent(*v.witness, lockstep()));
  }

  SUBCASE("the open instance stays honest") {
    Verdict v = decideDefinability(kUnary, mixedSource(), mixedTarget());
    CHECK(v.answer == Answer::Unknown);
    CHECK(v.method == "sufficient-checks");
    CHECK_FALSE(v.witness.has_value());
    CHECK(v.reason.find("attempted") != std::string::npos);
  }

  SUBCASE("targets without bounded shiftlag still accept shape witnesses") {
    Nfa T = parseRegex("(a+b)*", kUnary);
    Verdict v = decideDefinability(kUnary, straight(), T);
    CHECK(v.answer == Answer::Yes);
    CHECK(v.method == "shape-intersection");
    REQUIRE(v.witness.has_value());
    CHECK(includes(T, *v.witness));
    CHECK(relEquivalent(relationOfSync(kUnary, *v.witness), relationOfSync(kUnary, straight())));
  }

  SUBCASE("a target without bounded shiftlag can still lose pairs") {
    Nfa needsInput = parseRegex("(a+b)*a(a+b)*", kUnary);
    Verdict v = decideDefinability(kUnary, wordNfa(kUnary.combined(), kUnary.parseWord("b")),
                                   needsInput);
    CHECK(v.answer == Answer::No);
    CHECK(v.method == "pair-containment");
  }

  SUBCASE("sources without bounded shiftlag stay open") {
    Verdict v = decideDefinability(kUnary, parseRegex("(a+b)*", kUnary), straight());
    CHECK(v.answer == Answer::Unknown);
    CHECK(v.method == "open-fragment");
    CHECK(v.reason.find("unbounded shiftlag") != std::string::npos);
  }

  SUBCASE("yes verdicts hand back faithful witnesses") {
    std::mt19937 rng(9419);
    int seen = 0;
    int agreed = 0;
    for (int round = 0; round < 150 && seen < 10; ++round) {
      Nfa tgt = randomNfa(rng, kUnary.combined());
      if (isEmpty(tgt) || !analyzeFiniteness(kUnary, tgt).shiftlagFinite) continue;
      Nfa src = tgt;
      if (seen % 2 == 1) {
        Nfa other = randomNfa(rng, kUnary.combined());
        if (isEmpty(other) || !analyzeFiniteness(kUnary, other).shiftlagFinite) continue;
        src = other;
      }
      ++seen;
      Verdict v = decideDefinability(kUnary, src, tgt);
      if (v.answer != Answer::Yes) continue;
      ++agreed;
      REQUIRE(v.witness.has_value());
      CHECK(includes(tgt, *v.witness));
      CHECK(relEquivalent(relationOfSync(kUnary, *v.witness), relationOfSync(kUnary, src)));
    }
    CHECK(seen >= 10);
    CHECK(agreed >= 5);  // self-targets always come back yes
  }
}

TEST_CASE("separability reduces to definability") {
  SUBCASE("disjointness is required") {
    AutomaticRelation id = identityRelation(kSame);
    try {
      separabilityToDefinability(id, id);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(e.name() == "NotDisjoint");
    }
  }

  SUBCASE("alphabets must match") {
    try {
      separabilityToDefinability(fullRelation(kSame), emptyRelation(kAB));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::AlphabetMismatch);
    }
  }

  SUBCASE("an empty second relation frees the source completely") {
    auto [source, target] = separabilityToDefinability(identityRelation(kSame),
                                                       emptyRelation(kSame));
    CHECK(relEquivalent(relationOfSync(kSame, source), fullRelation(kSame)));
    CHECK(includes(target, parseRegex("(i:a + i:b)*(o:a + o:b)*", kSame)));
    CHECK(relEquivalent(relationOfSync(kSame, target), fullRelation(kSame)));
  }

  SUBCASE("a singleton first relation keeps every pair reachable") {
    AutomaticRelation one = pairRelation(kUnary, kUnary.inputAlphabet().parseWord("a"),
                                         kUnary.outputAlphabet().parseWord("b"));
    auto [source, target] = separabilityToDefinability(one, emptyRelation(kUnary));
    CHECK(relEquivalent(relationOfSync(kUnary, source), fullRelation(kUnary)));
    CHECK(relEquivalent(relationOfSync(kUnary, target), fullRelation(kUnary)));
  }

  SUBCASE("the lockstep relation against its complement is not separable") {
    AutomaticRelation equalCounts = relationOfSync(kUnary, lockstep());
    AutomaticRelation offCounts = relComplement(equalCounts);
    auto [source, target] = separabilityToDefinability(equalCounts, offCounts);
    CHECK(relIsEmpty(relIntersect(relationOfSync(kUnary, source), offCounts)));
    Verdict v = decideDefinability(kUnary, source, target);
    CHECK(v.answer == Answer::No);
  }
}
