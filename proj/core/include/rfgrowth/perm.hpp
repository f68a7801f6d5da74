#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rfgrowth/bigint.hpp"
#include "rfgrowth/errors.hpp"
#include "rfgrowth/words.hpp"

namespace rfg {

// Dense degrees beyond this are rejected; huge factors use ShiftSparsePerm.
inline constexpr int kDenseDegreeCap = 10000;

enum class Parity { even, odd };

// A permutation of {1..n}, stored 0-based internally. All operations are
// pure; values are immutable after construction.
class Perm {
 public:
  explicit Perm(int degree);

  // images[x] = image of x, both 0-based. Must be a bijection.
  static Perm from_images(std::vector<int32_t> images);
  // 1-based disjoint-cycle input, e.g. {{1,2,3},{5,6}}.
  static Perm from_cycles(int degree, const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(images_.size()); }
  int32_t operator()(int32_t x) const { return images_[static_cast<size_t>(x)]; }
  const std::vector<int32_t>& images() const { return images_; }

  bool is_identity() const;

  bool operator==(const Perm&) const = default;
  bool operator<(const Perm& rhs) const {
    return images_ < rhs.images_;  // callers compare equal degrees
  }

 private:
  std::vector<int32_t> images_;
};

// result(x) = a(b(x)): the right factor acts first.
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
// [a, b] = a b a^-1 b^-1; identity iff a and b commute.
Perm commutator(const Perm& a, const Perm& b);
// p^e, any sign, via cycle rotation (cost independent of |e|).
Perm pow(const Perm& p, long long e);

// The full cycle (1,2,...,n); requires odd n >= 5.
Perm cycle_alpha(int n);
// (1,2,3) embedded in degree n >= 3.
Perm three_cycle_beta(int n);

Parity parity(const Perm& p);
// Least m >= 1 with p^m = 1 (lcm of cycle lengths; exceeds 64 bits for
// large degrees, hence exact arithmetic).
Bigint order(const Perm& p);

// Nontrivial cycles, 1-based, each rotated to start at its least point,
// sorted by that point.
std::vector<std::vector<int>> cycles(const Perm& p);

// "(1,2,3)(5,6)"; the identity prints as "()". Whitespace-insensitive parse.
std::string format_cycles(const Perm& p);
Perm parse_cycles(const std::string& text, int degree);

// Words over {A = alpha_n^q, B = beta}. Text form: uppercase positive,
// lowercase inverse, e.g. "ABa" for A B A^-1.
using GenWord = Word;
inline constexpr int kGenA = 0;
inline constexpr int kGenB = 1;

GenWord parse_genword(const std::string& text);
std::string format_genword(const GenWord& w);

// Evaluates left-to-right as a composition where the rightmost letter acts
// first: eval(w1 w2) = eval(w1) o eval(w2).
Perm eval_genword(const GenWord& w, const Perm& a, const Perm& b);

// Constructive witness that <alpha_n^q, beta> = Alt(n): a word over {A, B}
// evaluating to target. Requires odd degree n in [5, kDenseDegreeCap], even
// target, gcd(q, n) = 1. The emitted word is freely reduced and its length
// is bounded by 12 n^2 (checked internally).
GenWord factor_in_alt(const Perm& target, long q);

}  // namespace rfg
