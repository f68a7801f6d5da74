#pragma once

// Shared test helpers: deterministic RNG and random algebra inputs. Oracle
// routines living here stay independent of the implementation paths they
// check.

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "rfgrowth/bigint.hpp"
#include "rfgrowth/fp.hpp"
#include "rfgrowth/perm.hpp"
#include "rfgrowth/words.hpp"

namespace rfgtest {

// splitmix64: tiny, seedable, stable across platforms.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t bound) { return next() % bound; }
};

inline rfg::Perm random_perm(int degree, Rng& rng) {
  std::vector<int32_t> img(static_cast<size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  for (size_t i = img.size(); i > 1; --i) std::swap(img[i - 1], img[rng.below(i)]);
  return rfg::Perm::from_images(std::move(img));
}

inline rfg::Perm random_even_perm(int degree, Rng& rng) {
  rfg::Perm p = random_perm(degree, rng);
  if (rfg::parity(p) == rfg::Parity::even) return p;
  // swapping two images composes with a transposition and flips parity
  std::vector<int32_t> img = p.images();
  std::swap(img[0], img[1]);
  return rfg::Perm::from_images(std::move(img));
}

inline rfg::Bigint random_bigint_below(const rfg::Bigint& bound, Rng& rng) {
  rfg::Bigint acc = 0;
  size_t bits = rfg::bit_length(bound) + 64;
  for (size_t produced = 0; produced < bits; produced += 32) {
    acc <<= 32;
    acc += static_cast<unsigned long>(rng.next() & 0xffffffffull);
  }
  return rfg::mod_floor(acc, bound);
}

// Constructive Schreier rewriting: walks w through the coset table and emits
// the visited Schreier elements t x rep(tx)^-1. If the walk returns to the
// identity coset, the product of the emitted factors freely equals w, which
// certifies w in <Schreier generators> independently of how the generator
// list itself was produced.
inline std::optional<std::vector<rfg::Word>> schreier_rewrite(const rfg::Presentation& p,
                                                              const rfg::KernelData& kd,
                                                              const rfg::Word& w) {
  using rfg::Perm;
  using rfg::Word;
  const auto& images = kd.hom.images;
  const int degree = kd.hom.degree;

  // Independent rep lookup, rebuilt from the stored rep words.
  std::vector<Perm> rep_perms;
  rep_perms.reserve(kd.coset_reps.size());
  for (const Word& t : kd.coset_reps) rep_perms.push_back(rfg::eval_word(t, images, degree));
  auto rep_of = [&](const Perm& g) -> const Word& {
    for (size_t i = 0; i < rep_perms.size(); ++i)
      if (rep_perms[i] == g) return kd.coset_reps[i];
    throw rfg::InternalError("schreier_rewrite: element outside the image");
  };

  std::vector<Word> factors;
  Word t;  // current coset representative (starts at the identity coset)
  Perm t_perm(degree);
  // walk letters of w left to right
  for (const rfg::Run& r : w.runs()) {
    long long steps = r.exp < 0 ? -r.exp : r.exp;
    int sign = r.exp < 0 ? -1 : 1;
    for (long long s = 0; s < steps; ++s) {
      Word letter = Word::generator(r.gen, sign);
      Perm next_perm = rfg::compose(t_perm, rfg::pow(images[static_cast<size_t>(r.gen)], sign));
      const Word& next_rep = rep_of(next_perm);
      // factor = t x rep(tx)^-1
      Word factor = t;
      factor.append(letter);
      factor.append(next_rep.inverse());
      if (!factor.empty()) factors.push_back(factor);
      t = next_rep;
      t_perm = next_perm;
    }
  }
  if (!t.empty()) return std::nullopt;  // w is not in the kernel subgroup
  return factors;
}

}  // namespace rfgtest
