#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rfgrowth/growth.hpp"
#include "rfgrowth/perm.hpp"
#include "rfgrowth/sequences.hpp"
#include "rfgrowth/shift_sparse.hpp"
#include "rfgrowth/words.hpp"

namespace rfg {

// Words over X = {s, t}. Text form: lowercase positive, uppercase inverse,
// with ^ powers, e.g. "s^69 t s^-69 t s^69 T s^-69 T".
using STWord = Word;
inline constexpr int kGenS = 0;
inline constexpr int kGenT = 1;

STWord parse_stword(const std::string& text);
std::string format_stword(const STWord& w);

// [s^p(k) t s^-p(k), t]: freely reduced, X-length exactly 4 p(k) + 4.
STWord witness_word(unsigned k, const SequenceTable& t);

// Evaluation of w under s -> shift by q(k) mod d(k), t -> (1,2,3).
ShiftSparsePerm project(const STWord& w, unsigned k, const SequenceTable& t);

// { k <= K : project(w, k) != 1 }, ascending.
std::vector<unsigned> detecting_factors(const STWord& w, const SequenceTable& t, unsigned workers = 1);

// A word lambda with project(lambda, k) = g; requires d(k) <= dense cap and
// g even of degree d(k). Constructive form of the conjugation argument.
STWord conjugation_witness(const Perm& g, unsigned k, const SequenceTable& t);

struct ClauseIvCheck {
  Bigint d_k;
  Bigint bound;  // 2 F(4 p(k+1) + 4)
  bool pass = false;
};

// Machine-checkable record that D(n) >= f(n): level k brackets n, the
// witness word lands in factor k alone, and clause (iv) supplies the order
// bound. |G_k| = d(k)!/2 is reported as a bit-length estimate only.
struct GrowthCertificate {
  Bigint n;
  unsigned k = 0;
  STWord witness;
  Bigint witness_length;
  std::vector<bool> detection_row;  // detection_row[i-1] = is_identity(project(witness, i))
  ClauseIvCheck clause_iv;
  std::string conclusion;
};

// Requires n >= 8 and a table deep enough that n < 4 p(K+1) + 4 (else
// TableTooShallow).
GrowthCertificate growth_certificate(const Bigint& n, const GrowthFunction& f, const SequenceTable& t);

// Recomputes every certificate field; any tampering fails with a reason.
bool validate_certificate(const GrowthCertificate& c, const GrowthFunction& f, const SequenceTable& t,
                          std::vector<std::string>* issues = nullptr);

nlohmann::ordered_json certificate_to_json(const GrowthCertificate& c);
GrowthCertificate certificate_from_json(const nlohmann::json& j);

// Approximate bit length of d!/2, for reporting only.
double half_factorial_bits_estimate(const Bigint& d);

}  // namespace rfg
