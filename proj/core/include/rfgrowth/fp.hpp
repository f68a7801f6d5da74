#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfgrowth/errors.hpp"
#include "rfgrowth/perm.hpp"
#include "rfgrowth/words.hpp"

namespace rfg {

// <X | R>: an ordered alphabet plus freely reduced, nonempty relators.
struct Presentation {
  std::vector<char> gen_names;  // single letters, lowercase; uppercase = inverse
  std::vector<Word> relators;

  int ngens() const { return static_cast<int>(gen_names.size()); }
  WordSyntax syntax() const { return WordSyntax{gen_names, /*lowercase_positive=*/true}; }
};

// File format: line "gens: a b", then lines "rel: <word>".
Presentation parse_presentation(const std::string& text);
Presentation parse_presentation_file(const std::string& path);

Word free_reduce(const Word& w);  // idempotent by representation
Word parse_fp_word(const Presentation& p, const std::string& text);
std::string format_fp_word(const Presentation& p, const Word& w);

// A degree-m tuple of generator images, i.e. a homomorphism F_X -> S_m.
// It extends to the presented group iff every relator dies.
struct FiniteHom {
  int degree = 1;
  std::vector<Perm> images;
};

Perm eval_word(const Word& w, const std::vector<Perm>& images, int degree);

// Degrees above this are rejected for full tuple enumeration.
inline constexpr int kEnumDegreeCap = 9;

// Visits every generator-image tuple in S_m^k in lexicographic order (first
// generator most significant, images ordered by their image vectors) for
// which every relator evaluates to the identity. Stops early when the
// visitor returns false.
void for_each_hom(const Presentation& p, int degree, const std::function<bool(const FiniteHom&)>& visit);
std::vector<FiniteHom> enumerate_homs(const Presentation& p, int degree);

// true iff all relators die under h: the relator-extension test for finitely
// presented groups.
bool extends_by_relators(const Presentation& p, const FiniteHom& h);

// Order of <images> by breadth-first closure, or nullopt once it exceeds cap.
std::optional<unsigned long long> image_order(const FiniteHom& h, unsigned long long cap);

// Schreier data for the kernel of F_X -> <images>: shortlex coset
// representatives (breadth-first over positive generator letters, identity
// first) and the Schreier generators t x rep(tx)^-1, reduced, trivial ones
// dropped. Requires image order <= 10^4.
struct KernelData {
  FiniteHom hom;
  std::vector<Word> coset_reps;
  std::vector<Word> schreier_gens;
};

KernelData schreier_kernel_generators(const Presentation& p, const FiniteHom& h);

// --- Oracles (the hypotheses of the index-counting extension test) ---

struct WordProblemOracle {
  virtual ~WordProblemOracle() = default;
  virtual bool is_trivial(const Word& w) const = 0;
  virtual std::string name() const = 0;
};

// One prepared membership query: fixes the subgroup generators once, then
// answers g-in-H for many g.
struct MembershipQuery {
  virtual ~MembershipQuery() = default;
  virtual bool contains(const Word& g) const = 0;
};

struct MembershipOracle {
  virtual ~MembershipOracle() = default;
  virtual std::unique_ptr<MembershipQuery> prepare(const std::vector<Word>& subgroup_gens) const = 0;
  virtual std::string name() const = 0;
};

// A target group Gamma presented only through its oracles, with the map
// F_X -> Gamma implied by generator order.
struct GammaSpec {
  int ngens = 1;
  std::shared_ptr<WordProblemOracle> word_problem;
  std::shared_ptr<MembershipOracle> membership;
};

// Reference oracle families.
GammaSpec make_integers_gamma();                                  // Z on one generator
GammaSpec make_finite_cyclic_gamma(unsigned long modulus);        // Z/m on one generator
GammaSpec make_free_abelian_gamma(int rank);                      // Z^r, rank <= 3
GammaSpec make_free_group_gamma(int ngens);                       // word problem only
GammaSpec make_perm_group_gamma(const std::vector<Perm>& images); // finite, by closure

// Named lookup for the CLI: integers | cyclic:<m> | free | free-abelian:<r>.
// Returns nothing when the name is unknown (callers map that to exit 4).
std::optional<GammaSpec> make_named_gamma(const std::string& name, int ngens);

// The index-counting extension test: computes Schreier data for h, then
// counts coset representatives t with pi(t) in <pi(R')> via the membership
// oracle. h extends to a homomorphism Gamma -> <images> iff exactly the
// identity coset lands inside.
bool extends_by_membership(const GammaSpec& gamma, const Presentation& p, const FiniteHom& h);

// --- Minimal detecting quotient search ---

struct MdqOptions {
  int max_degree = 7;
  unsigned long long max_order = 10000;  // closure cap; larger images are skipped
  unsigned workers = 1;
  bool prune_first_generator = true;     // cycle-type representatives only
  bool stop_when_degree_covers_best = true;
};

struct Detection {
  unsigned long long order = 0;
  FiniteHom hom;
};

// Minimum image order over homomorphisms of degree <= max_degree that kill
// all relators but not gamma, with a witnessing hom; nullopt when nothing
// within the caps detects.
std::optional<Detection> minimal_detecting_quotient(const Presentation& p, const Word& gamma,
                                                    const MdqOptions& opts = {});

nlohmann::ordered_json detection_to_json(const Presentation& p, const Word& gamma,
                                         const std::optional<Detection>& result);

}  // namespace rfg
