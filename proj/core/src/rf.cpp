#include "rfgrowth/rf.hpp"

namespace rfg {

namespace {

// Visits freely reduced words in shortlex order: length by length, letters
// ordered a < a^-1 < b < b^-1 < ... at each slot.
void reduced_words_shortlex(int ngens, unsigned radius, const std::function<void(const Word&)>& visit) {
  const int letters = ngens * 2;
  std::function<void(Word&, unsigned)> fixed = [&](Word& w, unsigned togo) {
    if (togo == 0) {
      visit(w);
      return;
    }
    for (int l = 0; l < letters; ++l) {
      int gen = l / 2;
      int sign = l % 2 == 0 ? 1 : -1;
      const auto& runs = w.runs();
      // skip the letter cancelling against the current tail
      if (!runs.empty() && runs.back().gen == gen) {
        long long e = runs.back().exp;
        if ((e > 0 && sign < 0) || (e < 0 && sign > 0)) continue;
      }
      w.append(gen, sign);
      fixed(w, togo - 1);
      w.append(gen, -sign);
    }
  };
  for (unsigned len = 1; len <= radius; ++len) {
    Word w;
    fixed(w, len);
  }
}

}  // namespace

Ball ball(const Presentation& p, const WordProblemOracle& wp, unsigned radius) {
  if (radius < 1) throw DomainError("ball radius must be >= 1");
  Ball out;
  out.radius = radius;
  reduced_words_shortlex(p.ngens(), radius, [&](const Word& w) {
    if (wp.is_trivial(w)) return;  // the identity is excluded
    for (const Word& kept : out.elements) {
      // w = kept in Gamma iff w kept^-1 = 1
      if (wp.is_trivial(w * kept.inverse())) return;
    }
    out.elements.push_back(w);
  });
  return out;
}

RfResult rf_growth(const Presentation& p, const WordProblemOracle& wp, unsigned radius,
                   const MdqOptions& opts) {
  Ball b = ball(p, wp, radius);
  RfResult result;
  for (const Word& elem : b.elements) {
    RfDetail detail;
    detail.element = elem;
    auto found = minimal_detecting_quotient(p, elem, opts);
    if (found) {
      detail.min_order = found->order;
      detail.degree = found->hom.degree;
    }
    result.details.push_back(detail);
  }
  bool complete = true;
  unsigned long long worst = 0;
  const Word* witness = nullptr;
  for (const RfDetail& d : result.details) {
    if (!d.min_order) {
      complete = false;
      continue;
    }
    if (*d.min_order > worst) {
      worst = *d.min_order;
      witness = &d.element;
    }
  }
  if (complete && !result.details.empty()) {
    result.value = worst;
    result.witness = *witness;
    result.witness_order = worst;
  } else if (complete && result.details.empty()) {
    // Trivial group: nothing to detect; D(n) = 1 by convention of the order
    // of the trivial quotient.
    result.value = 1;
    result.witness_order = 1;
  }
  return result;
}

unsigned long long z_growth_oracle(unsigned n) {
  if (n < 1) throw DomainError("radius must be >= 1");
  unsigned long long best = 0;
  for (unsigned long long m = 1; m <= n; ++m) {
    unsigned long long q = 2;
    while (m % q == 0) ++q;
    best = std::max(best, q);
  }
  return best;
}

}  // namespace rfg
