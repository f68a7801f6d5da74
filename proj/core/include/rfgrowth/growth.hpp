#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rfgrowth/bigint.hpp"
#include "rfgrowth/errors.hpp"

namespace rfg {

// Values whose exact form would exceed this many bits raise GrowthOverflow.
// Exponential growth functions blow past any physical budget after very few
// construction levels; the guard turns that into a clean, reportable error.
inline constexpr unsigned long kGrowthBitBudget = 1ul << 24;

// A growth function f together with its monotone normalization
// F(n) = max(n, f(1), ..., f(n)). Every consumer goes through F; raw user
// tables may be non-monotone. All builtin kinds are nondecreasing, and table
// lookups use a running prefix maximum, so F never scans 1..n.
class GrowthFunction {
 public:
  enum class Kind { identity, poly, exp, table };

  static GrowthFunction identity();
  static GrowthFunction poly(unsigned degree);
  static GrowthFunction exponential(const Bigint& base);
  static GrowthFunction exp2() { return exponential(2); }
  // Table files: ASCII lines "n f(n)"; lookups between listed points use the
  // largest listed n' <= n (then the wrapper enforces F(n) >= n).
  static GrowthFunction from_table(std::vector<std::pair<Bigint, Bigint>> entries, std::string label);
  static GrowthFunction from_table_file(const std::string& path);

  // "identity" | "poly:<c>" | "exp2" | "table:<path>"
  static GrowthFunction parse(const std::string& spec);

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  // Raw f(n), n >= 1. May throw GrowthOverflow.
  Bigint raw(const Bigint& n) const;
  // The wrapper F(n) = max(n, f(1..n)).
  Bigint wrapped(const Bigint& n) const;

 private:
  GrowthFunction() = default;

  Kind kind_ = Kind::identity;
  std::string label_ = "identity";
  unsigned poly_degree_ = 1;
  Bigint exp_base_ = 2;
  std::vector<std::pair<Bigint, Bigint>> table_;       // sorted by n
  std::vector<Bigint> table_prefix_max_;
};

}  // namespace rfg
