#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rfgrowth/bigint.hpp"
#include "rfgrowth/errors.hpp"
#include "rfgrowth/perm.hpp"

namespace rfg {

// An element of Sym(Z/dZ) written as (global shift M) o (finite-support
// permutation), exact for arbitrarily large d. The represented map is
// x -> (M + sparse*(x)) mod d, where sparse* extends the finite part by the
// identity. Normal form is mandatory: the sparse part stores no fixed points
// and is kept sorted, so equality is structural and the identity test is
// exact. Residues are 0-based internally, 1-based at every I/O boundary.
class ShiftSparsePerm {
 public:
  using SparsePairs = std::vector<std::pair<Bigint, Bigint>>;

  static ShiftSparsePerm identity(const Bigint& modulus) { return from_shift(modulus, 0); }
  // Pure shift x -> x + m (mod d); d >= 5.
  static ShiftSparsePerm from_shift(const Bigint& modulus, const Bigint& m);
  // Finite permutation given by disjoint cycles of 1-based residues.
  static ShiftSparsePerm from_sparse(const Bigint& modulus, const std::vector<std::vector<Bigint>>& cycles);
  // 0-based mapping pairs; fixed points are dropped.
  static ShiftSparsePerm from_pairs(const Bigint& modulus, SparsePairs pairs);

  const Bigint& modulus() const { return d_; }
  const Bigint& shift() const { return shift_; }
  const SparsePairs& sparse() const { return sparse_; }
  size_t support_size() const { return sparse_.size(); }

  // Image of the 1-based point x in [1, d].
  Bigint apply(const Bigint& x) const;

  bool is_identity() const { return shift_ == 0 && sparse_.empty(); }

  bool operator==(const ShiftSparsePerm&) const = default;

 private:
  ShiftSparsePerm() = default;
  Bigint apply0(const Bigint& x) const;

  Bigint d_;
  Bigint shift_;
  SparsePairs sparse_;

  friend ShiftSparsePerm compose(const ShiftSparsePerm&, const ShiftSparsePerm&);
  friend ShiftSparsePerm inverse(const ShiftSparsePerm&);
  friend Perm to_dense(const ShiftSparsePerm&);
};

// result acts as a after b (b first); moduli must match.
ShiftSparsePerm compose(const ShiftSparsePerm& a, const ShiftSparsePerm& b);
ShiftSparsePerm inverse(const ShiftSparsePerm& e);

// Dense bridge for oracle checks; modulus must be <= kDenseDegreeCap.
Perm to_dense(const ShiftSparsePerm& e);

// Text form "d=<int>; shift=<int>; sparse=(x1>y1, x2>y2, ...)", 1-based.
std::string format_shift_sparse(const ShiftSparsePerm& e);
ShiftSparsePerm parse_shift_sparse(const std::string& text);

}  // namespace rfg
