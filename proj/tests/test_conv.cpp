#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "syncrel/conv.hpp"
#include "syncrel/errors.hpp"
#include "syncrel/syncword.hpp"
#include "testutil.hpp"

using namespace syncrel;
using namespace syncrel::testutil;
using namespace syncrel::testgen;

namespace {

const TaggedAlphabet kAB(std::vector<std::string>{"a", "b"}, std::vector<std::string>{"c", "d"});

Word exactWord(std::mt19937& rng, std::size_t sigma, std::size_t len) {
  std::uniform_int_distribution<Letter> lt(0, static_cast<Letter>(sigma - 1));
  Word w(len);
  for (auto& a : w) a = lt(rng);
  return w;
}

// All shortest completion pairs found by blind search: u, v over the combined
// alphabet with equal pairs of x u and y v, at the smallest possible length.
std::vector<std::pair<Word, Word>> searchCompletions(const TaggedAlphabet& alphabet, const Word& x,
                                                     const Word& y, std::size_t maxLen) {
  for (std::size_t m = 0; m <= maxLen; ++m) {
    std::vector<std::pair<Word, Word>> found;
    const auto us = allWordsUpTo(alphabet.size(), m);
    for (const Word& u : us) {
      if (u.size() != m) continue;
      Word xu = x;
      xu.insert(xu.end(), u.begin(), u.end());
      const auto target = pairOf(alphabet, xu);
      for (const Word& v : us) {
        if (v.size() != m) continue;
        Word yv = y;
        yv.insert(yv.end(), v.begin(), v.end());
        if (pairOf(alphabet, yv) == target) found.push_back({u, v});
      }
    }
    if (!found.empty()) return found;
  }
  return {};
}

}  // namespace

TEST_CASE("convolution alphabet indexing round-trips") {
  const ConvAlphabet conv(kAB);
  CHECK(conv.alphabet().size() == 8);
  CHECK(conv.padIn() == 2);
  CHECK(conv.padOut() == 2);
  for (Letter c = 0; c < conv.alphabet().size(); ++c) {
    auto [x, y] = conv.split(c);
    CHECK(conv.make(x, y) == c);
  }
  CHECK(conv.alphabet().name(conv.make(0, 1)) == "(a,d)");
  CHECK(conv.alphabet().name(conv.make(2, 0)) == "(-,c)");
  CHECK(conv.alphabet().name(conv.make(1, 2)) == "(b,-)");
  CHECK(conv.expansion(conv.make(0, 1)) == kAB.parseWord("a d"));
  CHECK(conv.expansion(conv.make(2, 0)) == kAB.parseWord("c"));
  CHECK(conv.expansion(conv.make(1, 2)) == kAB.parseWord("b"));
}

TEST_CASE("convolve and deconvolve are inverse") {
  const ConvAlphabet conv(kAB);
  std::mt19937 rng(1351);
  for (int round = 0; round < 100; ++round) {
    const Word u = randomWord(rng, 2, 5);
    const Word v = randomWord(rng, 2, 5);
    const Word w = convolve(conv, u, v);
    CHECK(w.size() == std::max(u.size(), v.size()));
    CHECK(deconvolve(conv, w) == std::make_pair(u, v));
  }
}

TEST_CASE("well-formed convolutions pad only one trailing track") {
  const ConvAlphabet conv(kAB);
  const Nfa wf = wellFormedConv(conv);
  const auto wellFormed = [&](const Word& w) {
    const auto [u, v] = deconvolve(conv, w);
    return w == convolve(conv, u, v);
  };
  CHECK(agreesWith(wf, 4, wellFormed));
}

TEST_CASE("shortest completions match the blind search") {
  SUBCASE("worked example") {
    const Word x = kAB.parseWord("a c a b");
    const Word y = kAB.parseWord("c a d c");
    REQUIRE(compatibleWords(kAB, x, y));
    const auto d = diffWords(kAB, x, y);
    REQUIRE(d.has_value());
    CHECK(d->first == kAB.parseWord("d c"));
    CHECK(d->second == kAB.parseWord("a b"));
  }
  SUBCASE("incompatible pairs have no completion") {
    CHECK_FALSE(compatibleWords(kAB, kAB.parseWord("a"), kAB.parseWord("b")));
    CHECK_FALSE(diffWords(kAB, kAB.parseWord("a c"), kAB.parseWord("a d")).has_value());
    CHECK_THROWS_AS((void)compatibleWords(kAB, kAB.parseWord("a"), kAB.parseWord("a a")), Error);
  }
  SUBCASE("random differential") {
    std::mt19937 rng(2026);
    int compatibleSeen = 0;
    for (int round = 0; round < 150; ++round) {
      const std::size_t n = rng() % 5;
      const Word x = exactWord(rng, 4, n), y = exactWord(rng, 4, n);
      const auto found = searchCompletions(kAB, x, y, 4);
      const auto d = diffWords(kAB, x, y);
      if (!d.has_value()) {
        CHECK(found.empty());
        continue;
      }
      ++compatibleSeen;
      // The shortest completion exists, is unique, and is the computed one.
      REQUIRE(found.size() == 1);
      CHECK(found[0] == *d);
    }
    CHECK(compatibleSeen > 20);
  }
}

TEST_CASE("difference tracker follows prefix differences up to its bound") {
  SUBCASE("worked example trace") {
    DiffTracker t2(kAB, 2);
    const Word x = kAB.parseWord("a c a b");
    const Word y = kAB.parseWord("c a d c");
    int s = t2.initial();
    for (std::size_t j = 0; j < 4; ++j) s = t2.step(s, x[j], y[j]);
    REQUIRE(s != DiffTracker::kDead);
    CHECK(t2.pending(s) == std::make_pair(kAB.parseWord("d c"), kAB.parseWord("a b")));
    CHECK_FALSE(t2.balanced(s));
  }
  SUBCASE("bound one dies once the pending pair outgrows it") {
    DiffTracker t1(kAB, 1);
    const Letter a = *kAB.parseToken("a"), c = *kAB.parseToken("c");
    int s = t1.step(t1.initial(), a, c);
    REQUIRE(s != DiffTracker::kDead);
    CHECK(t1.pending(s).first == kAB.parseWord("c"));
    CHECK(t1.step(s, a, c) == DiffTracker::kDead);
  }
  SUBCASE("bound zero recognizes equality") {
    DiffTracker t0(kAB, 0);
    const Word w = kAB.parseWord("a c b d");
    int s = t0.initial();
    for (Letter l : w) {
      s = t0.step(s, l, l);
      REQUIRE(s == 0);
    }
    CHECK(t0.step(s, *kAB.parseToken("a"), *kAB.parseToken("b")) == DiffTracker::kDead);
  }
  SUBCASE("random differential against the direct computation") {
    std::mt19937 rng(77);
    for (int round = 0; round < 200; ++round) {
      const std::size_t k = rng() % 3;
      DiffTracker t(kAB, k);
      const std::size_t n = 1 + rng() % 6;
      const Word x = exactWord(rng, 4, n), y = exactWord(rng, 4, n);
      int s = t.initial();
      bool shouldBeDead = false;
      for (std::size_t j = 1; j <= n; ++j) {
        s = t.step(s, x[j - 1], y[j - 1]);
        const Word px(x.begin(), x.begin() + static_cast<long>(j));
        const Word py(y.begin(), y.begin() + static_cast<long>(j));
        const auto d = diffWords(kAB, px, py);
        shouldBeDead = shouldBeDead || !d.has_value() || d->first.size() > k;
        if (shouldBeDead) {
          CHECK(s == DiffTracker::kDead);
        } else {
          REQUIRE(s != DiffTracker::kDead);
          CHECK(t.pending(s) == *d);
          CHECK(t.balanced(s) == (pairOf(kAB, px) == pairOf(kAB, py)));
        }
      }
    }
  }
}
