#include "syncrel/autorel.hpp"

#include <algorithm>
#include <string>

#include "syncrel/errors.hpp"

namespace syncrel {

namespace {

void checkSameBase(const AutomaticRelation& a, const AutomaticRelation& b) {
  if (!(a.base == b.base))
    throwAlphabetMismatch("relation operands use different alphabets");
}

}  // namespace

AutomaticRelation makeAutomatic(const TaggedAlphabet& base, const Nfa& convLanguage) {
  const ConvAlphabet conv(base);
  if (!(convLanguage.alphabet == conv.alphabet()))
    throwAlphabetMismatch("convolution language over the wrong alphabet");
  const Nfa wf = wellFormedConv(conv);
  return {base, conv, minimalDfa(intersectOf(convLanguage, wf))};
}

AutomaticRelation emptyRelation(const TaggedAlphabet& base) {
  const ConvAlphabet conv(base);
  return makeAutomatic(base, emptyNfa(conv.alphabet()));
}

AutomaticRelation fullRelation(const TaggedAlphabet& base) {
  const ConvAlphabet conv(base);
  return makeAutomatic(base, allWordsNfa(conv.alphabet()));
}

AutomaticRelation pairRelation(const TaggedAlphabet& base, const Word& u, const Word& v) {
  const ConvAlphabet conv(base);
  return makeAutomatic(base, wordNfa(conv.alphabet(), convolve(conv, u, v)));
}

AutomaticRelation crossRelation(const TaggedAlphabet& base, const Nfa& U, const Nfa& V) {
  const ConvAlphabet conv(base);
  if (!(U.alphabet == base.inputAlphabet()) || !(V.alphabet == base.outputAlphabet()))
    throwAlphabetMismatch("rectangle sides over the wrong alphabets");
  const Dfa du = minimalDfa(U), dv = minimalDfa(V);
  Nfa prod;
  prod.alphabet = conv.alphabet();
  prod.numStates = du.numStates * dv.numStates;
  prod.initial = static_cast<State>(du.initial * dv.numStates + dv.initial);
  prod.finals.assign(prod.numStates, false);
  for (State su = 0; su < du.numStates; ++su)
    for (State sv = 0; sv < dv.numStates; ++sv) {
      prod.finals[su * dv.numStates + sv] = du.finals[su] && dv.finals[sv];
      for (Letter c = 0; c < conv.alphabet().size(); ++c) {
        auto [x, y] = conv.split(c);
        // A padded half freezes its track; ill-formed pad patterns are
        // discarded by the well-formed intersection in makeAutomatic.
        const State nu = x == conv.padIn() ? su : du.step(su, static_cast<Letter>(x));
        const State nv = y == conv.padOut() ? sv : dv.step(sv, static_cast<Letter>(y));
        if (nu == kNoState || nv == kNoState) continue;
        prod.addTransition(su * dv.numStates + sv, c, nu * dv.numStates + nv);
      }
    }
  prod.normalize();
  return makeAutomatic(base, prod);
}

AutomaticRelation identityRelation(const TaggedAlphabet& base) {
  if (base.inputAlphabet().names() != base.outputAlphabet().names())
    throwAlphabetMismatch("identity requires equal input and output alphabets");
  const ConvAlphabet conv(base);
  Nfa id;
  id.alphabet = conv.alphabet();
  id.numStates = 1;
  id.finals = {true};
  for (std::size_t k = 0; k < base.numInputs(); ++k) id.addTransition(0, conv.make(k, k), 0);
  id.normalize();
  return makeAutomatic(base, id);
}

bool relMember(const AutomaticRelation& r, const Word& u, const Word& v) {
  return r.dfa.member(convolve(r.conv, u, v));
}

bool relIsEmpty(const AutomaticRelation& r) { return isEmpty(toNfa(r.dfa)); }

bool relIncludes(const AutomaticRelation& a, const AutomaticRelation& b) {
  checkSameBase(a, b);
  return includes(toNfa(a.dfa), toNfa(b.dfa));
}

bool relEquivalent(const AutomaticRelation& a, const AutomaticRelation& b) {
  checkSameBase(a, b);
  return isomorphic(a.dfa, b.dfa);
}

AutomaticRelation relUnion(const AutomaticRelation& a, const AutomaticRelation& b) {
  checkSameBase(a, b);
  return makeAutomatic(a.base, unionOf(toNfa(a.dfa), toNfa(b.dfa)));
}

AutomaticRelation relIntersect(const AutomaticRelation& a, const AutomaticRelation& b) {
  checkSameBase(a, b);
  return makeAutomatic(a.base, intersectOf(toNfa(a.dfa), toNfa(b.dfa)));
}

AutomaticRelation relDifference(const AutomaticRelation& a, const AutomaticRelation& b) {
  checkSameBase(a, b);
  return makeAutomatic(a.base, differenceOf(toNfa(a.dfa), toNfa(b.dfa)));
}

AutomaticRelation relComplement(const AutomaticRelation& r) {
  return makeAutomatic(r.base, differenceOf(wellFormedConv(r.conv), toNfa(r.dfa)));
}

Nfa domainLanguage(const AutomaticRelation& r) {
  std::vector<Word> images(r.conv.alphabet().size());
  for (Letter c = 0; c < images.size(); ++c) {
    auto [x, y] = r.conv.split(c);
    (void)y;
    if (x != r.conv.padIn()) images[c] = {static_cast<Letter>(x)};
  }
  return trim(substitute(toNfa(r.dfa), r.base.inputAlphabet(), images));
}

Nfa rangeLanguage(const AutomaticRelation& r) {
  std::vector<Word> images(r.conv.alphabet().size());
  for (Letter c = 0; c < images.size(); ++c) {
    auto [x, y] = r.conv.split(c);
    (void)x;
    if (y != r.conv.padOut()) images[c] = {static_cast<Letter>(y)};
  }
  return trim(substitute(toNfa(r.dfa), r.base.outputAlphabet(), images));
}

Nfa sectionLanguage(const AutomaticRelation& r, const Word& u) {
  const std::size_t len = u.size();
  const std::size_t cols = len + 1;
  // Whether the remaining input letters can be flushed against output pads
  // into an accepting state: covers outputs shorter than u.
  auto flushFinal = [&](State q, std::size_t pos) {
    for (std::size_t k = pos; k < len && q != kNoState; ++k)
      q = r.dfa.step(q, r.conv.make(u[k], r.conv.padOut()));
    return q != kNoState && r.dfa.finals[q];
  };
  Nfa out;
  out.alphabet = r.base.outputAlphabet();
  out.numStates = r.dfa.numStates * cols;
  out.initial = static_cast<State>(r.dfa.initial * cols);
  out.finals.assign(out.numStates, false);
  for (State q = 0; q < r.dfa.numStates; ++q)
    for (std::size_t pos = 0; pos <= len; ++pos) {
      out.finals[q * cols + pos] = flushFinal(q, pos);
      for (std::size_t y = 0; y < r.base.numOutputs(); ++y) {
        const Letter c = pos < len ? r.conv.make(u[pos], y) : r.conv.make(r.conv.padIn(), y);
        const State t = r.dfa.step(q, c);
        if (t == kNoState) continue;
        const std::size_t npos = pos < len ? pos + 1 : pos;
        out.addTransition(static_cast<State>(q * cols + pos), static_cast<Letter>(y),
                          static_cast<State>(t * cols + npos));
      }
    }
  out.normalize();
  return trim(out);
}

namespace {

// Three-track convolution alphabet (two input tracks and one output track),
// used to decide section equality with the output track quantified away.
struct TripleAlphabet {
  std::size_t nIn = 0, nOut = 0;
  Alphabet alphabet;

  TripleAlphabet(const Alphabet& ins, const Alphabet& outs) : nIn(ins.size()), nOut(outs.size()) {
    std::vector<std::string> names;
    for (std::size_t x = 0; x <= nIn; ++x)
      for (std::size_t x2 = 0; x2 <= nIn; ++x2)
        for (std::size_t y = 0; y <= nOut; ++y) {
          if (x == nIn && x2 == nIn && y == nOut) continue;
          names.push_back("(" + (x == nIn ? "-" : ins.name(static_cast<Letter>(x))) + "," +
                          (x2 == nIn ? "-" : ins.name(static_cast<Letter>(x2))) + "," +
                          (y == nOut ? "-" : outs.name(static_cast<Letter>(y))) + ")");
        }
    alphabet = Alphabet(std::move(names));
  }

  Letter make(std::size_t x, std::size_t x2, std::size_t y) const {
    return static_cast<Letter>((x * (nIn + 1) + x2) * (nOut + 1) + y);
  }
  std::size_t splitX(Letter c) const { return c / ((nIn + 1) * (nOut + 1)); }
  std::size_t splitX2(Letter c) const { return c / (nOut + 1) % (nIn + 1); }
  std::size_t splitY(Letter c) const { return c % (nOut + 1); }
};

// Well-formed three-track words: each track's pads form a suffix.
Nfa wellFormedTriple(const TripleAlphabet& t3) {
  Nfa nfa;
  nfa.alphabet = t3.alphabet;
  nfa.numStates = 8;  // bitmask of ended tracks
  nfa.initial = 0;
  nfa.finals.assign(8, true);
  for (Letter c = 0; c < t3.alphabet.size(); ++c) {
    unsigned padded = 0;
    if (t3.splitX(c) == t3.nIn) padded |= 1;
    if (t3.splitX2(c) == t3.nIn) padded |= 2;
    if (t3.splitY(c) == t3.nOut) padded |= 4;
    for (unsigned ended = 0; ended < 8; ++ended)
      if ((ended & ~padded) == 0) nfa.addTransition(ended, c, padded);
  }
  nfa.normalize();
  return nfa;
}

// The relation's convolution DFA run over a chosen input track and the output
// track of three-track words; positions where both chosen tracks are padded
// are skipped.
Nfa liftTrack(const AutomaticRelation& r, const TripleAlphabet& t3, bool secondTrack) {
  Nfa lift;
  lift.alphabet = t3.alphabet;
  lift.numStates = r.dfa.numStates;
  lift.initial = r.dfa.initial;
  lift.finals = r.dfa.finals;
  for (State q = 0; q < r.dfa.numStates; ++q)
    for (Letter c = 0; c < t3.alphabet.size(); ++c) {
      const std::size_t x = secondTrack ? t3.splitX2(c) : t3.splitX(c);
      const std::size_t y = t3.splitY(c);
      if (x == t3.nIn && y == t3.nOut) {
        lift.addTransition(q, c, q);
        continue;
      }
      const State t = r.dfa.step(q, r.conv.make(x, y));
      if (t != kNoState) lift.addTransition(q, c, t);
    }
  lift.normalize();
  return lift;
}

// Length-lexicographic strict order as a two-track convolution language:
// accepts conv(u, u') iff u precedes u'.
Nfa lengthLexConv(const ConvAlphabet& conv2) {
  // 0: equal so far; 1: equal length, lexicographically less; 2: equal
  // length, greater; 3: first track ended first (shorter, accept); 4: second
  // track ended first (longer, reject).
  Nfa nfa;
  nfa.alphabet = conv2.alphabet();
  nfa.numStates = 5;
  nfa.initial = 0;
  nfa.finals = {false, true, false, true, false};
  for (Letter c = 0; c < conv2.alphabet().size(); ++c) {
    auto [x, x2] = conv2.split(c);
    if (x != conv2.padIn() && x2 != conv2.padOut()) {
      nfa.addTransition(0, c, x < x2 ? 1 : (x > x2 ? 2 : 0));
      nfa.addTransition(1, c, 1);
      nfa.addTransition(2, c, 2);
    } else if (x == conv2.padIn()) {
      for (State s : {0, 1, 2, 3}) nfa.addTransition(s, c, 3);
    } else {
      for (State s : {0, 1, 2, 4}) nfa.addTransition(s, c, 4);
    }
  }
  nfa.normalize();
  return nfa;
}

}  // namespace

std::optional<RecognizableDecomposition> recognizableDecomposition(const AutomaticRelation& r) {
  const Alphabet ins = r.base.inputAlphabet();
  const Alphabet outs = r.base.outputAlphabet();
  const TripleAlphabet t3(ins, outs);

  // Pairs of input words whose sections differ on some output word.
  const Nfa wf3 = wellFormedTriple(t3);
  const Nfa lift1 = liftTrack(r, t3, false);
  const Nfa lift2 = liftTrack(r, t3, true);
  const Nfa xor3 = unionOf(intersectOf(lift1, differenceOf(wf3, lift2)),
                           intersectOf(lift2, differenceOf(wf3, lift1)));

  const TaggedAlphabet base2(ins.names(), ins.names());
  const ConvAlphabet conv2(base2);
  std::vector<Word> toPair(t3.alphabet.size());
  for (Letter c = 0; c < t3.alphabet.size(); ++c) {
    const std::size_t x = t3.splitX(c), x2 = t3.splitX2(c);
    if (x != t3.nIn || x2 != t3.nIn) toPair[c] = {conv2.make(x, x2)};
  }
  const Nfa sectionNeq = substitute(xor3, conv2.alphabet(), toPair);
  const Nfa sectionEq = differenceOf(wellFormedConv(conv2), sectionNeq);

  // Smallest representative of each section class, in length-lex order; the
  // relation is a finite union of rectangles iff there are finitely many.
  std::vector<Word> toSecond(conv2.alphabet().size());
  for (Letter c = 0; c < conv2.alphabet().size(); ++c) {
    auto [x, x2] = conv2.split(c);
    (void)x;
    if (x2 != conv2.padOut()) toSecond[c] = {static_cast<Letter>(x2)};
  }
  const Nfa nonMin = substitute(intersectOf(sectionEq, lengthLexConv(conv2)), ins, toSecond);
  const Dfa minDfa = minimalDfa(differenceOf(allWordsNfa(ins), nonMin));
  if (!isFinite(toNfa(minDfa))) return std::nullopt;

  const AutomaticRelation eqRel = makeAutomatic(base2, sectionEq);
  RecognizableDecomposition out;
  out.base = r.base;
  for (const Word& rep : enumerateUpTo(toNfa(minDfa), minDfa.numStates)) {
    const Nfa v = sectionLanguage(r, rep);
    if (isEmpty(v)) continue;
    const Nfa u = sectionLanguage(eqRel, rep);
    bool merged = false;
    for (auto& part : out.parts) {
      if (equivalent(part.second, v)) {
        part.first = unionOf(part.first, u);
        merged = true;
        break;
      }
    }
    if (!merged) out.parts.push_back({u, v});
  }
  for (auto& part : out.parts) {
    part.first = toNfa(minimalDfa(part.first));
    part.second = toNfa(minimalDfa(part.second));
  }
  return out;
}

AutomaticRelation recToAutomatic(const RecognizableDecomposition& d) {
  AutomaticRelation acc = emptyRelation(d.base);
  for (const auto& [u, v] : d.parts) acc = relUnion(acc, crossRelation(d.base, u, v));
  return acc;
}

}  // namespace syncrel
