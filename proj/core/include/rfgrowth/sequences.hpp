#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rfgrowth/bigint.hpp"
#include "rfgrowth/errors.hpp"
#include "rfgrowth/growth.hpp"

namespace rfg {

// The integer triple (p, q, d) truncated at level K, plus the lcm
// accumulators ell(k) = lcm(d(1), ..., d(k-1)). Invariants (the construction
// clauses, all checkable by verify_clauses):
//   (i)   p strictly increasing, odd, p(1) = 1
//   (ii)  q(k) odd and > 2
//   (iii) d(k) = p(k) q(k) + 2
//   (iv)  d(k) odd and d(k) > 2 F(4 p(k+1) + 4)
//   (v)   p(k+1) q(i) != +-1, +-2 (mod d(i)) for all i <= k
struct SequenceTable {
  unsigned K = 0;
  std::vector<Bigint> p;    // p(1..K+1)
  std::vector<Bigint> q;    // q(1..K)
  std::vector<Bigint> d;    // d(1..K)
  std::vector<Bigint> ell;  // ell(2..K); empty when K = 1

  const Bigint& p_at(unsigned k) const { return p.at(k - 1); }      // k in 1..K+1
  const Bigint& q_at(unsigned k) const { return q.at(k - 1); }      // k in 1..K
  const Bigint& d_at(unsigned k) const { return d.at(k - 1); }      // k in 1..K
  const Bigint& ell_at(unsigned k) const { return ell.at(k - 2); }  // k in 2..K
};

// Exact lcm of a nonempty list of positive integers.
Bigint lcm_accumulate(const std::vector<Bigint>& values);

// Runs the inductive construction: base case p(1)=1, p(2)=3,
// d(1) = 2F(16)+1, q(1) = 2F(16)-1; step ell = lcm(d(1..k-1)),
// q(k) = 2F(4p(k) + 40 ell + 4) + 1, d(k) = p(k)q(k) + 2, and p(k+1) the
// smallest of the five candidates p(k) + 2 ell j that avoids +-1, +-2 mod
// d(k). A candidate always exists; failure to find one aborts loudly.
// GrowthOverflow propagates when f outgrows the representable budget.
SequenceTable build_table(const GrowthFunction& f, unsigned K);

enum class Clause { i, ii, iii, iv, v };

std::string clause_name(Clause c);

struct ClauseCheck {
  Clause clause;
  unsigned k = 0;  // level being checked
  unsigned i = 0;  // inner index for clause (v), 0 otherwise
  bool pass = true;
  std::string detail;  // offending value on failure
};

struct ClauseReport {
  std::vector<ClauseCheck> checks;
  bool all_pass() const;
  std::vector<ClauseCheck> failures() const;
};

// Re-checks every clause of a table against F, independently of build_table.
ClauseReport verify_clauses(const SequenceTable& t, const GrowthFunction& f);

// JSON schema: {"K": int, "p": [str...], "q": [str...], "d": [str...],
// "ell": [str...]} with big integers as decimal strings.
nlohmann::ordered_json table_to_json(const SequenceTable& t);
SequenceTable table_from_json(const nlohmann::json& j);
nlohmann::ordered_json clause_report_to_json(const ClauseReport& r);

}  // namespace rfg
