#include <doctest.h>

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "generators.hpp"
#include "syncrel/autorel.hpp"
#include "syncrel/errors.hpp"
#include "syncrel/regex.hpp"
#include "testutil.hpp"

using namespace syncrel;
using namespace syncrel::testutil;
using namespace syncrel::testgen;

namespace {

const TaggedAlphabet kAB({"a", "b"}, {"c", "d"});
const TaggedAlphabet kABC({"a", "b", "c"}, {"d", "e"});

// All (u, v) with |u| + |v| <= total.
std::vector<std::pair<Word, Word>> allPairsUpTo(const TaggedAlphabet& base, std::size_t total) {
  std::vector<std::pair<Word, Word>> out;
  for (const Word& u : allWordsUpTo(base.numInputs(), total))
    for (const Word& v : allWordsUpTo(base.numOutputs(), total))
      if (u.size() + v.size() <= total) out.push_back({u, v});
  return out;
}

AutomaticRelation randomRelation(std::mt19937& rng, const TaggedAlphabet& base) {
  const ConvAlphabet conv(base);
  return makeAutomatic(base, randomNfa(rng, conv.alphabet()));
}

// {(a^n, b^n)} over a unary pair of tracks: the standard non-rectangle.
AutomaticRelation lengthTies(const TaggedAlphabet& base) {
  const ConvAlphabet conv(base);
  Nfa diag;
  diag.alphabet = conv.alphabet();
  diag.finals = {true};
  diag.addTransition(0, static_cast<Letter>(conv.make(0, 0)), 0);
  diag.normalize();
  return makeAutomatic(base, diag);
}

}  // namespace

TEST_CASE("relation constructors match pair logic") {
  const auto pairs = allPairsUpTo(kAB, 5);

  SUBCASE("empty and full") {
    const auto none = emptyRelation(kAB);
    const auto all = fullRelation(kAB);
    CHECK(relIsEmpty(none));
    CHECK_FALSE(relIsEmpty(all));
    for (const auto& [u, v] : pairs) {
      CHECK_FALSE(relMember(none, u, v));
      CHECK(relMember(all, u, v));
    }
  }

  SUBCASE("single pair") {
    const auto r = pairRelation(kAB, {0, 1}, {0});
    for (const auto& [u, v] : pairs)
      CHECK(relMember(r, u, v) == (u == Word{0, 1} && v == Word{0}));
  }

  SUBCASE("rectangle") {
    const Nfa u1 = parseRegex("a*b", kAB.inputAlphabet());
    const Nfa v1 = parseRegex("c(c+d)*", kAB.outputAlphabet());
    const auto r = crossRelation(kAB, u1, v1);
    for (const auto& [u, v] : pairs)
      CHECK(relMember(r, u, v) == (member(u1, u) && member(v1, v)));
    CHECK(equivalent(domainLanguage(r), u1));
    CHECK(equivalent(rangeLanguage(r), v1));
  }

  SUBCASE("identity needs matching track names") {
    const TaggedAlphabet same({"a", "b"}, {"a", "b"});
    const auto id = identityRelation(same);
    for (const auto& [u, v] : allPairsUpTo(same, 5)) CHECK(relMember(id, u, v) == (u == v));
    CHECK_THROWS_AS(identityRelation(kAB), Error);
  }

  SUBCASE("ill-formed convolution words are discarded") {
    const ConvAlphabet conv(kAB);
    const auto r = makeAutomatic(kAB, allWordsNfa(conv.alphabet()));
    CHECK(relEquivalent(r, fullRelation(kAB)));
  }
}

TEST_CASE("boolean operations on relations match pair logic") {
  std::mt19937 rng(20260814);
  const auto pairs = allPairsUpTo(kAB, 4);
  for (int round = 0; round < 40; ++round) {
    const auto a = randomRelation(rng, kAB);
    const auto b = randomRelation(rng, kAB);
    const auto uni = relUnion(a, b);
    const auto inter = relIntersect(a, b);
    const auto diff = relDifference(a, b);
    const auto comp = relComplement(a);
    for (const auto& [u, v] : pairs) {
      const bool inA = relMember(a, u, v), inB = relMember(b, u, v);
      CHECK(relMember(uni, u, v) == (inA || inB));
      CHECK(relMember(inter, u, v) == (inA && inB));
      CHECK(relMember(diff, u, v) == (inA && !inB));
      CHECK(relMember(comp, u, v) == !inA);
    }
    CHECK(relIncludes(uni, a));
    CHECK(relIncludes(a, inter));
    CHECK(relEquivalent(relUnion(inter, diff), a));
    CHECK(relIsEmpty(relIntersect(a, relComplement(a))));
  }
}

TEST_CASE("domain, range, and sections") {
  std::mt19937 rng(7);
  for (int round = 0; round < 40; ++round) {
    const auto r = randomRelation(rng, kAB);
    const Nfa dom = domainLanguage(r);
    const Nfa ran = rangeLanguage(r);
    CHECK(isEmpty(dom) == relIsEmpty(r));
    CHECK(isEmpty(ran) == relIsEmpty(r));
    for (const Word& u : allWordsUpTo(kAB.numInputs(), 4)) {
      const Nfa sec = sectionLanguage(r, u);
      CHECK(member(dom, u) == !isEmpty(sec));
      for (const Word& v : allWordsUpTo(kAB.numOutputs(), 4))
        CHECK(member(sec, v) == relMember(r, u, v));
    }
    for (const Word& v : allWordsUpTo(kAB.numOutputs(), 4)) {
      bool witness = false;
      for (const Word& u : allWordsUpTo(kAB.numInputs(), 4))
        witness = witness || relMember(r, u, v);
      if (witness) CHECK(member(ran, v));
    }
  }
}

TEST_CASE("sections of a two-rectangle relation") {
  const Nfa u1 = parseRegex("a*ba*", kABC.inputAlphabet());
  const Nfa v1 = parseRegex("d(d+e)*", kABC.outputAlphabet());
  const Nfa u2 = parseRegex("a*ca*", kABC.inputAlphabet());
  const Nfa v2 = parseRegex("e(d+e)*", kABC.outputAlphabet());
  const auto r2 = relUnion(crossRelation(kABC, u1, v1), crossRelation(kABC, u2, v2));

  CHECK(equivalent(sectionLanguage(r2, {0, 1, 0}), v1));  // aba
  CHECK(equivalent(sectionLanguage(r2, {2}), v2));        // c
  CHECK(isEmpty(sectionLanguage(r2, {0})));               // a
  CHECK(isEmpty(sectionLanguage(r2, {1, 2})));            // bc
  CHECK(equivalent(domainLanguage(r2), unionOf(u1, u2)));
  CHECK(equivalent(rangeLanguage(r2), unionOf(v1, v2)));
}

TEST_CASE("recognizable decomposition finds the rectangles") {
  SUBCASE("two-rectangle fixture") {
    const Nfa u1 = parseRegex("a*ba*", kABC.inputAlphabet());
    const Nfa v1 = parseRegex("d(d+e)*", kABC.outputAlphabet());
    const Nfa u2 = parseRegex("a*ca*", kABC.inputAlphabet());
    const Nfa v2 = parseRegex("e(d+e)*", kABC.outputAlphabet());
    const auto r2 = relUnion(crossRelation(kABC, u1, v1), crossRelation(kABC, u2, v2));
    const auto dec = recognizableDecomposition(r2);
    REQUIRE(dec.has_value());
    REQUIRE(dec->parts.size() == 2);
    CHECK(relEquivalent(recToAutomatic(*dec), r2));
    const auto& p0 = dec->parts[0];
    const auto& p1 = dec->parts[1];
    const bool asGiven = equivalent(p0.first, u1) && equivalent(p0.second, v1) &&
                         equivalent(p1.first, u2) && equivalent(p1.second, v2);
    const bool swapped = equivalent(p0.first, u2) && equivalent(p0.second, v2) &&
                         equivalent(p1.first, u1) && equivalent(p1.second, v1);
    CHECK((asGiven || swapped));
  }

  SUBCASE("full, empty, and finite relations") {
    const auto none = recognizableDecomposition(emptyRelation(kAB));
    REQUIRE(none.has_value());
    CHECK(none->parts.empty());

    const auto full = recognizableDecomposition(fullRelation(kAB));
    REQUIRE(full.has_value());
    REQUIRE(full->parts.size() == 1);
    CHECK(equivalent(full->parts[0].first, allWordsNfa(kAB.inputAlphabet())));
    CHECK(equivalent(full->parts[0].second, allWordsNfa(kAB.outputAlphabet())));

    const auto fin = relUnion(pairRelation(kAB, {0}, {0}), pairRelation(kAB, {0, 1}, {1}));
    const auto dec = recognizableDecomposition(fin);
    REQUIRE(dec.has_value());
    CHECK(dec->parts.size() == 2);
    CHECK(relEquivalent(recToAutomatic(*dec), fin));
  }

  SUBCASE("length ties and identity are not finite rectangle unions") {
    CHECK_FALSE(recognizableDecomposition(lengthTies(TaggedAlphabet({"a"}, {"b"}))).has_value());
    CHECK_FALSE(recognizableDecomposition(identityRelation(TaggedAlphabet({"a", "b"}, {"a", "b"})))
                    .has_value());
  }

  SUBCASE("random rectangle unions round-trip") {
    std::mt19937 rng(11);
    for (int round = 0; round < 25; ++round) {
      auto r = crossRelation(kAB, randomNfa(rng, kAB.inputAlphabet()),
                             randomNfa(rng, kAB.outputAlphabet()));
      r = relUnion(r, crossRelation(kAB, randomNfa(rng, kAB.inputAlphabet()),
                                    randomNfa(rng, kAB.outputAlphabet())));
      const auto dec = recognizableDecomposition(r);
      REQUIRE(dec.has_value());
      CHECK(relEquivalent(recToAutomatic(*dec), r));
      for (std::size_t i = 0; i < dec->parts.size(); ++i)
        for (std::size_t j = i + 1; j < dec->parts.size(); ++j) {
          CHECK(isEmpty(intersectOf(dec->parts[i].first, dec->parts[j].first)));
          CHECK_FALSE(equivalent(dec->parts[i].second, dec->parts[j].second));
        }
      for (const auto& [uPart, vPart] : dec->parts) {
        CHECK_FALSE(isEmpty(vPart));
        for (const Word& u : enumerateUpTo(uPart, 3))
          CHECK(equivalent(sectionLanguage(r, u), vPart));
      }
    }
  }

  SUBCASE("random relations decompose exactly whenever they decompose") {
    std::mt19937 rng(13);
    int found = 0;
    for (int round = 0; round < 40; ++round) {
      const auto r = randomRelation(rng, kAB);
      const auto dec = recognizableDecomposition(r);
      if (!dec) continue;
      ++found;
      CHECK(relEquivalent(recToAutomatic(*dec), r));
    }
    CHECK(found >= 3);
  }
}
