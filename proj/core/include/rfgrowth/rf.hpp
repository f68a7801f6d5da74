#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfgrowth/fp.hpp"
#include "rfgrowth/words.hpp"

namespace rfg {

// B_{Gamma,X}(n) minus the identity: one shortlex-least representative per
// group element of X-length <= n, certified distinct by the word-problem
// oracle.
struct Ball {
  unsigned radius = 0;
  std::vector<Word> elements;
};

Ball ball(const Presentation& p, const WordProblemOracle& wp, unsigned radius);

struct RfDetail {
  Word element;
  std::optional<unsigned long long> min_order;
  int degree = 0;  // degree of the witnessing hom when found
};

struct RfResult {
  std::optional<unsigned long long> value;  // max of per-element minima; nullopt if any element undetected
  std::optional<Word> witness;              // element attaining the max
  unsigned long long witness_order = 0;
  std::vector<RfDetail> details;            // ball order
};

// D_{Gamma,X}(radius) as max-of-min over the ball, within the search caps.
RfResult rf_growth(const Presentation& p, const WordProblemOracle& wp, unsigned radius,
                   const MdqOptions& opts = {});

// Closed-form oracle for Gamma = Z: max over 1 <= m <= n of the least q >= 2
// with m mod q != 0 (quotients of Z are cyclic; Z/q detects m iff q does not
// divide m).
unsigned long long z_growth_oracle(unsigned n);

}  // namespace rfg
