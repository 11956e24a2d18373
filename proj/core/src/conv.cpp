#include "syncrel/conv.hpp"

#include <algorithm>

#include "syncrel/errors.hpp"
#include "syncrel/syncword.hpp"

namespace syncrel {

ConvAlphabet::ConvAlphabet(const TaggedAlphabet& base) : base_(base) {
  const Alphabet ins = base.inputAlphabet();
  const Alphabet outs = base.outputAlphabet();
  padIn_ = ins.size();
  padOut_ = outs.size();
  std::vector<std::string> names;
  names.reserve((padIn_ + 1) * (padOut_ + 1) - 1);
  for (std::size_t x = 0; x <= padIn_; ++x) {
    for (std::size_t y = 0; y <= padOut_; ++y) {
      if (x == padIn_ && y == padOut_) continue;
      std::string nx = x == padIn_ ? "-" : ins.name(static_cast<Letter>(x));
      std::string ny = y == padOut_ ? "-" : outs.name(static_cast<Letter>(y));
      names.push_back("(" + nx + "," + ny + ")");
    }
  }
  alphabet_ = Alphabet(std::move(names));
}

Letter ConvAlphabet::make(std::size_t inIdx, std::size_t outIdx) const {
  require(inIdx <= padIn_ && outIdx <= padOut_, "convolution letter index out of range");
  require(inIdx != padIn_ || outIdx != padOut_, "the all-pad convolution letter does not exist");
  return static_cast<Letter>(inIdx * (padOut_ + 1) + outIdx);
}

std::pair<std::size_t, std::size_t> ConvAlphabet::split(Letter c) const {
  require(c < alphabet_.size(), "convolution letter out of range");
  return {c / (padOut_ + 1), c % (padOut_ + 1)};
}

Word ConvAlphabet::expansion(Letter c) const {
  auto [x, y] = split(c);
  Word w;
  if (x != padIn_) w.push_back(base_.inputLetter(x));
  if (y != padOut_) w.push_back(base_.outputLetter(y));
  return w;
}

Word convolve(const ConvAlphabet& conv, const Word& u, const Word& v) {
  Word w;
  const std::size_t n = std::max(u.size(), v.size());
  w.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t x = k < u.size() ? u[k] : conv.padIn();
    const std::size_t y = k < v.size() ? v[k] : conv.padOut();
    w.push_back(conv.make(x, y));
  }
  return w;
}

std::pair<Word, Word> deconvolve(const ConvAlphabet& conv, const Word& w) {
  Word u, v;
  for (Letter c : w) {
    auto [x, y] = conv.split(c);
    if (x != conv.padIn()) u.push_back(static_cast<Letter>(x));
    if (y != conv.padOut()) v.push_back(static_cast<Letter>(y));
  }
  return {std::move(u), std::move(v)};
}

Nfa wellFormedConv(const ConvAlphabet& conv) {
  // State 0: both tracks live; 1: input track ended; 2: output track ended.
  Nfa nfa;
  nfa.alphabet = conv.alphabet();
  nfa.numStates = 3;
  nfa.initial = 0;
  nfa.finals = {true, true, true};
  for (Letter c = 0; c < conv.alphabet().size(); ++c) {
    const bool in = conv.hasIn(c);
    const bool out = conv.hasOut(c);
    if (in && out) nfa.addTransition(0, c, 0);
    if (!in) {
      nfa.addTransition(0, c, 1);
      nfa.addTransition(1, c, 1);
    }
    if (!out) {
      nfa.addTransition(0, c, 2);
      nfa.addTransition(2, c, 2);
    }
  }
  nfa.normalize();
  return nfa;
}

namespace {

bool isPrefix(const Word& a, const Word& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

bool compatibleWords(const TaggedAlphabet& alphabet, const Word& x, const Word& y) {
  if (x.size() != y.size())
    throwPrecondition("compatibleWords", "words must have equal length");
  const Word xi = inputProjection(alphabet, x), yi = inputProjection(alphabet, y);
  const Word xo = outputProjection(alphabet, x), yo = outputProjection(alphabet, y);
  return (isPrefix(xi, yi) || isPrefix(yi, xi)) && (isPrefix(xo, yo) || isPrefix(yo, xo));
}

std::optional<std::pair<Word, Word>> diffWords(const TaggedAlphabet& alphabet, const Word& x,
                                               const Word& y) {
  if (!compatibleWords(alphabet, x, y)) return std::nullopt;
  const Word xi = inputProjection(alphabet, x), yi = inputProjection(alphabet, y);
  const Word xo = outputProjection(alphabet, x), yo = outputProjection(alphabet, y);
  Word u, v;
  for (std::size_t k = xi.size(); k < yi.size(); ++k) u.push_back(alphabet.inputLetter(yi[k]));
  for (std::size_t k = xo.size(); k < yo.size(); ++k) u.push_back(alphabet.outputLetter(yo[k]));
  for (std::size_t k = yi.size(); k < xi.size(); ++k) v.push_back(alphabet.inputLetter(xi[k]));
  for (std::size_t k = yo.size(); k < xo.size(); ++k) v.push_back(alphabet.outputLetter(xo[k]));
  return std::make_pair(std::move(u), std::move(v));
}

Alphabet lockstepAlphabet(const TaggedAlphabet& alphabet) {
  std::vector<std::string> names;
  names.reserve(alphabet.size() * alphabet.size());
  for (Letter x = 0; x < alphabet.size(); ++x)
    for (Letter y = 0; y < alphabet.size(); ++y)
      names.push_back("(" + alphabet.displayToken(x) + "|" + alphabet.displayToken(y) + ")");
  return Alphabet(std::move(names));
}

Letter lockstepLetter(const TaggedAlphabet& alphabet, Letter x, Letter y) {
  require(x < alphabet.size() && y < alphabet.size(), "lockstep letter out of range");
  return static_cast<Letter>(x * alphabet.size() + y);
}

std::pair<Letter, Letter> lockstepSplit(const TaggedAlphabet& alphabet, Letter c) {
  return {static_cast<Letter>(c / alphabet.size()), static_cast<Letter>(c % alphabet.size())};
}

Dfa differenceDfa(const TaggedAlphabet& alphabet, std::size_t k) {
  DiffTracker tracker(alphabet, k);
  const std::size_t sigma = alphabet.size();
  Dfa dfa;
  dfa.alphabet = lockstepAlphabet(alphabet);
  dfa.initial = 0;
  std::vector<std::vector<State>> rows;
  for (std::size_t q = 0; q < tracker.numStates(); ++q) {
    rows.emplace_back(sigma * sigma, kNoState);
    for (Letter x = 0; x < sigma; ++x)
      for (Letter y = 0; y < sigma; ++y) {
        const int t = tracker.step(static_cast<int>(q), x, y);
        if (t != DiffTracker::kDead) rows[q][x * sigma + y] = static_cast<State>(t);
      }
  }
  dfa.numStates = rows.size();
  dfa.finals.assign(rows.size(), true);
  dfa.delta.reserve(rows.size() * sigma * sigma);
  for (const auto& row : rows) dfa.delta.insert(dfa.delta.end(), row.begin(), row.end());
  return dfa;
}

DiffTracker::DiffTracker(const TaggedAlphabet& alphabet, std::size_t k)
    : alphabet_(alphabet), k_(k) {
  intern({});
}

int DiffTracker::intern(std::pair<Word, Word> s) {
  auto [it, inserted] = index_.try_emplace(s, static_cast<int>(states_.size()));
  if (inserted) states_.push_back(std::move(s));
  return it->second;
}

const std::pair<Word, Word>& DiffTracker::pending(int state) const {
  require(state >= 0 && static_cast<std::size_t>(state) < states_.size(),
          "unknown difference-tracker state");
  return states_[static_cast<std::size_t>(state)];
}

int DiffTracker::step(int state, Letter xLetter, Letter yLetter) {
  if (state == kDead) return kDead;
  auto [u, v] = pending(state);
  // u holds the letters x still owes, v those y owes. A track's own letter
  // either pays off the front of its debt or extends the other track's debt.
  auto feed = [&](Word& owed, Word& ahead, Letter a) {
    if (!owed.empty() && alphabet_.role(owed.front()) == alphabet_.role(a)) {
      if (owed.front() != a) return false;
      owed.erase(owed.begin());
      return true;
    }
    require(ahead.empty() || alphabet_.role(ahead.front()) == alphabet_.role(a),
            "difference tracker lost its role invariant");
    ahead.push_back(a);
    return true;
  };
  if (!feed(u, v, xLetter)) return kDead;
  if (!feed(v, u, yLetter)) return kDead;
  require(u.size() == v.size(), "difference tracker lost its balance invariant");
  if (u.size() > k_) return kDead;
  return intern({std::move(u), std::move(v)});
}

}  // namespace syncrel
