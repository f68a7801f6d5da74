#include <doctest.h>

#include "common.hpp"
#include "rfgrowth/neumann.hpp"

using namespace rfg;

namespace {

SequenceTable id_table() {
  static SequenceTable t = build_table(GrowthFunction::identity(), 3);
  return t;
}

// Independent route: pi_k([s^p(j) t s^-p(j), t]) is trivial iff
// p(j) q(k) stays away from +-1, +-2 mod d(k).
bool criterion_trivial(const SequenceTable& t, unsigned j, unsigned k) {
  Bigint m = mod_floor(t.p_at(j) * t.q_at(k), t.d_at(k));
  const Bigint& d = t.d_at(k);
  return !(m == 1 || m == 2 || m == d - 1 || m == d - 2);
}

}  // namespace

TEST_CASE("witness words have length 4p(k)+4 and the commutator shape") {
  SequenceTable t = id_table();
  CHECK(witness_word(1, t).length() == 8);
  CHECK(witness_word(2, t).length() == 16);
  CHECK(witness_word(3, t).length() == 280);
  STWord w = witness_word(1, t);
  CHECK(format_stword(w) == "s t S t s T S T");
  CHECK_THROWS_AS(witness_word(4, t), DomainError);
  CHECK_THROWS_AS(witness_word(0, t), DomainError);
}

TEST_CASE("s/t word parsing round trips") {
  STWord w = parse_stword("s^69 t s^-69 t s^69 T s^-69 T");
  CHECK(w.length() == 280);
  CHECK(parse_stword(format_stword(w)) == w);
  CHECK(parse_stword("sS").empty());
}

TEST_CASE("projection of the generators") {
  SequenceTable t = id_table();
  auto s1 = project(parse_stword("s"), 1, t);
  CHECK(s1 == ShiftSparsePerm::from_shift(33, 31));
  auto t1 = project(parse_stword("t"), 1, t);
  CHECK(t1 == ShiftSparsePerm::from_sparse(33, {{1, 2, 3}}));
  // t^3 = 1 in every factor
  CHECK(project(parse_stword("t^3"), 2, t).is_identity());
}

TEST_CASE("witness detection: diagonal at the paper criterion, both routes") {
  SequenceTable t = id_table();
  for (unsigned j = 1; j <= 3; ++j) {
    STWord w = witness_word(j, t);
    for (unsigned k = 1; k <= 3; ++k) {
      bool trivial = project(w, k, t).is_identity();
      CHECK(trivial == (j != k));
      CHECK(trivial == criterion_trivial(t, j, k));
    }
  }
}

TEST_CASE("detecting_factors") {
  SequenceTable t = id_table();
  CHECK(detecting_factors(STWord(), t).empty());
  CHECK(detecting_factors(parse_stword("t"), t) == std::vector<unsigned>{1, 2, 3});
  for (unsigned j = 1; j <= 3; ++j)
    CHECK(detecting_factors(witness_word(j, t), t) == std::vector<unsigned>{j});
  // worker count must not change results
  CHECK(detecting_factors(parse_stword("t"), t, 4) == std::vector<unsigned>{1, 2, 3});
}

TEST_CASE("projection is a homomorphism on random words") {
  SequenceTable t = id_table();
  rfgtest::Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    STWord w1, w2;
    for (int i = 0; i < 6; ++i) {
      w1.append(static_cast<int>(rng.below(2)), rng.below(2) ? 1 : -1);
      w2.append(static_cast<int>(rng.below(2)), rng.below(2) ? 1 : -1);
    }
    unsigned k = 1 + static_cast<unsigned>(rng.below(3));
    CHECK(project(w1 * w2, k, t) == compose(project(w1, k, t), project(w2, k, t)));
  }
}

TEST_CASE("projection agrees with dense evaluation in the first factor") {
  SequenceTable t = id_table();
  Perm s_dense = pow(cycle_alpha(33), 31);
  Perm t_dense = three_cycle_beta(33);
  rfgtest::Rng rng(55);
  for (int trial = 0; trial < 200; ++trial) {
    STWord w;
    for (int i = 0; i < 10; ++i) w.append(static_cast<int>(rng.below(2)), rng.below(2) ? 1 : -1);
    Perm dense(33);
    for (const Run& r : w.runs()) dense = compose(dense, pow(r.gen == kGenS ? s_dense : t_dense, r.exp));
    CHECK(to_dense(project(w, 1, t)) == dense);
  }
}

TEST_CASE("conjugation witness: trivial cases and random round trips") {
  SequenceTable t = id_table();
  CHECK(format_stword(conjugation_witness(three_cycle_beta(33), 1, t)) == "t");
  CHECK(format_stword(conjugation_witness(pow(cycle_alpha(33), 31), 1, t)) == "s");

  rfgtest::Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    Perm g = rfgtest::random_even_perm(33, rng);
    STWord lam = conjugation_witness(g, 1, t);
    CHECK(to_dense(project(lam, 1, t)) == g);
    CHECK(lam.length() <= 12ull * 33 * 33);
  }

  CHECK_THROWS_AS(conjugation_witness(Perm::from_cycles(33, {{1, 2}}), 1, t), DomainError);
  CHECK_THROWS_AS(conjugation_witness(three_cycle_beta(33), 3, t), DomainError);  // d(3) too large
}

TEST_CASE("growth certificates: bracket selection") {
  SequenceTable t = id_table();
  GrowthFunction f = GrowthFunction::identity();
  struct Case {
    long n;
    unsigned k;
  };
  for (Case c : {Case{8, 1}, Case{15, 1}, Case{16, 2}, Case{279, 2}, Case{280, 3}}) {
    GrowthCertificate cert = growth_certificate(c.n, f, t);
    CHECK(cert.k == c.k);
    CHECK(cert.witness_length == 4 * t.p_at(c.k) + 4);
    CHECK(cert.clause_iv.pass);
    CHECK(validate_certificate(cert, f, t));
  }
  CHECK_THROWS_AS(growth_certificate(7, f, t), DomainError);
  // table too shallow: K = 1 cannot cover n = 300
  SequenceTable t1 = build_table(f, 1);
  CHECK_THROWS_AS(growth_certificate(300, f, t1), TableTooShallow);
}

TEST_CASE("certificate n = 8 checks 33 > 2 F(16) = 32") {
  SequenceTable t = id_table();
  GrowthCertificate cert = growth_certificate(8, GrowthFunction::identity(), t);
  CHECK(cert.clause_iv.d_k == 33);
  CHECK(cert.clause_iv.bound == 32);
}

TEST_CASE("tampered certificates fail validation") {
  SequenceTable t = id_table();
  GrowthFunction f = GrowthFunction::identity();
  GrowthCertificate good = growth_certificate(16, f, t);
  CHECK(validate_certificate(good, f, t));

  SUBCASE("wrong level") {
    GrowthCertificate c = good;
    c.k = 1;
    CHECK(!validate_certificate(c, f, t));
  }
  SUBCASE("flipped detection entry") {
    GrowthCertificate c = good;
    c.detection_row[0] = !c.detection_row[0];
    CHECK(!validate_certificate(c, f, t));
  }
  SUBCASE("forged witness") {
    GrowthCertificate c = good;
    c.witness = parse_stword("s t S T");
    CHECK(!validate_certificate(c, f, t));
  }
  SUBCASE("forged bound") {
    GrowthCertificate c = good;
    c.clause_iv.bound = 1;
    CHECK(!validate_certificate(c, f, t));
  }
  SUBCASE("forged length") {
    GrowthCertificate c = good;
    c.witness_length += 2;
    std::vector<std::string> issues;
    CHECK(!validate_certificate(c, f, t, &issues));
    CHECK(!issues.empty());
  }
}

TEST_CASE("certificate JSON round trip") {
  SequenceTable t = id_table();
  GrowthFunction f = GrowthFunction::identity();
  GrowthCertificate cert = growth_certificate(280, f, t);
  auto j = certificate_to_json(cert);
  CHECK(j["n"] == 280);
  CHECK(j["k"] == 3);
  CHECK(j["witness_length"] == 280);
  CHECK(j["clause_iv"]["d_k"] == "1461144071");
  GrowthCertificate back = certificate_from_json(j);
  CHECK(validate_certificate(back, f, t));
  CHECK(back.witness == cert.witness);

  auto bad = j;
  bad["detection_row"][0] = true;
  CHECK(!validate_certificate(certificate_from_json(bad), f, t));
}

TEST_CASE("detection matrix also holds for poly:2 and for exp2 at K = 2") {
  GrowthFunction p2 = GrowthFunction::poly(2);
  SequenceTable tp = build_table(p2, 3);
  for (unsigned j = 1; j <= 3; ++j)
    for (unsigned k = 1; k <= 3; ++k)
      CHECK(project(witness_word(j, tp), k, tp).is_identity() == (j != k));

  GrowthFunction e2 = GrowthFunction::exp2();
  SequenceTable te = build_table(e2, 2);
  for (unsigned j = 1; j <= 2; ++j)
    for (unsigned k = 1; k <= 2; ++k)
      CHECK(project(witness_word(j, te), k, te).is_identity() == (j != k));
}
