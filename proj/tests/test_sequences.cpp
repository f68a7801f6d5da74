#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "rfgrowth/sequences.hpp"

using namespace rfg;

TEST_CASE("growth function parsing and the monotone wrapper") {
  GrowthFunction id = GrowthFunction::parse("identity");
  CHECK(id.wrapped(16) == 16);
  CHECK(id.raw(7) == 7);

  GrowthFunction p2 = GrowthFunction::parse("poly:2");
  CHECK(p2.raw(16) == 256);
  CHECK(p2.wrapped(1) == 1);  // max(1, 1^2)

  GrowthFunction e2 = GrowthFunction::parse("exp2");
  CHECK(e2.raw(16) == 65536);
  CHECK(e2.wrapped(3) == 8);

  CHECK_THROWS_AS(GrowthFunction::parse("cubic"), ParseError);
  CHECK_THROWS_AS(GrowthFunction::parse("table:does-not-exist.txt"), ParseError);
  CHECK_THROWS_AS(id.wrapped(0), DomainError);
}

TEST_CASE("table growth functions: step lookup, wrapper floor, non-monotone input") {
  std::string path = "growth_table_test.txt";
  {
    std::ofstream out(path);
    out << "1 10\n16 7\n100 50\n";
  }
  GrowthFunction t = GrowthFunction::from_table_file(path);
  CHECK(t.raw(1) == 10);
  CHECK(t.raw(16) == 7);     // raw table may dip
  CHECK(t.raw(17) == 7);     // step lookup under the next listed point
  CHECK(t.wrapped(16) == 16);  // F(n) >= n
  CHECK(t.wrapped(5) == 10);   // running max of earlier entries
  CHECK(t.wrapped(1000) == 1000);
  std::remove(path.c_str());
}

TEST_CASE("exponential values beyond the bit budget raise GrowthOverflow") {
  GrowthFunction e2 = GrowthFunction::exp2();
  CHECK_THROWS_AS(e2.raw(Bigint(1) << 60), GrowthOverflow);
  CHECK_THROWS_AS(e2.raw(pow_big(10, 40)), GrowthOverflow);
}

TEST_CASE("lcm_accumulate") {
  CHECK(lcm_accumulate({33}) == 33);
  CHECK(lcm_accumulate({33, 8021}) == 264693);
  CHECK(lcm_accumulate({6, 4}) == 12);
  CHECK_THROWS_AS(lcm_accumulate({}), DomainError);
  CHECK_THROWS_AS(lcm_accumulate({Bigint(0)}), DomainError);
}

TEST_CASE("identity table, K = 3: the reference construction values") {
  SequenceTable t = build_table(GrowthFunction::identity(), 3);
  CHECK(t.K == 3);
  CHECK(t.p_at(1) == 1);
  CHECK(t.p_at(2) == 3);
  CHECK(t.p_at(3) == 69);
  CHECK(t.p_at(4) == 529455);  // smallest candidate 69 + 2*264693*1
  CHECK(t.q_at(1) == 31);
  CHECK(t.q_at(2) == 2673);
  CHECK(t.q_at(3) == 21176001);
  CHECK(t.d_at(1) == 33);
  CHECK(t.d_at(2) == 8021);
  CHECK(t.d_at(3) == 1461144071);
  CHECK(t.ell_at(2) == 33);
  CHECK(t.ell_at(3) == 264693);
  CHECK(verify_clauses(t, GrowthFunction::identity()).all_pass());
}

TEST_CASE("identity table, K = 1 and K = 2 prefixes agree") {
  SequenceTable t1 = build_table(GrowthFunction::identity(), 1);
  CHECK(t1.p.size() == 2);
  CHECK(t1.ell.empty());
  CHECK(t1.d_at(1) == 33);
  SequenceTable t2 = build_table(GrowthFunction::identity(), 2);
  CHECK(t2.d_at(1) == 33);
  CHECK(t2.q_at(2) == 2673);
  CHECK(verify_clauses(t2, GrowthFunction::identity()).all_pass());
  CHECK_THROWS_AS(build_table(GrowthFunction::identity(), 0), DomainError);
}

TEST_CASE("poly:2 table, K = 3") {
  GrowthFunction f = GrowthFunction::poly(2);
  SequenceTable t = build_table(f, 3);
  CHECK(t.d_at(1) == 513);
  CHECK(t.q_at(1) == 511);
  CHECK(t.q_at(2) == 843454593);
  CHECK(t.d_at(2) == 2530363781);
  CHECK(t.p_at(3) == 1029);
  CHECK(t.ell_at(3) == parse_bigint("1298076619653"));
  CHECK(t.q_at(3) == parse_bigint("5392009314422921630398515201"));
  CHECK(t.d_at(3) == parse_bigint("5548377584541186357680072141831"));
  CHECK(t.p_at(4) == parse_bigint("2596153240335"));
  CHECK(verify_clauses(t, f).all_pass());
}

TEST_CASE("exp2 table, K = 2: sizes grow into the megabit range but stay exact") {
  GrowthFunction f = GrowthFunction::exp2();
  SequenceTable t = build_table(f, 2);
  CHECK(t.d_at(1) == 131073);
  CHECK(t.q_at(1) == 131071);
  CHECK(bit_length(t.q_at(2)) == 5242938);
  CHECK(t.d_at(2) == 3 * t.q_at(2) + 2);
  CHECK(t.p_at(3) == 262149);  // 3 + 2*131073, first candidate
  CHECK(verify_clauses(t, f).all_pass());
}

TEST_CASE("exp2 at K = 3 is not representable and fails loudly") {
  CHECK_THROWS_AS(build_table(GrowthFunction::exp2(), 3), GrowthOverflow);
}

TEST_CASE("build-time invariants: candidate window, coprimality, clause-v stability") {
  for (const char* spec : {"identity", "poly:2", "poly:3"}) {
    GrowthFunction f = GrowthFunction::parse(spec);
    SequenceTable t = build_table(f, 3);
    for (unsigned k = 2; k <= t.K; ++k) {
      const Bigint& ell = t.ell_at(k);
      // five candidates distinct mod d(k) because p(k) + 10 ell < d(k)
      CHECK(t.p_at(k) + 10 * ell < t.d_at(k));
      // gcd(q(k), d(k)) = 1
      CHECK(gcd(t.q_at(k), t.d_at(k)) == 1);
      // p(k+1) = p(k) mod d(i) for i < k: 2 ell j = 0 mod d(i)
      for (unsigned i = 1; i < k; ++i) CHECK(mod_floor(t.p_at(k + 1) - t.p_at(k), t.d_at(i)) == 0);
    }
    CHECK(gcd(t.q_at(1), t.d_at(1)) == 1);
    // monotone blowup
    for (unsigned k = 1; k < t.K; ++k) {
      CHECK(t.d_at(k) < t.d_at(k + 1));
      CHECK(t.p_at(k) < t.p_at(k + 1));
    }
  }
}

TEST_CASE("clause checker flags tampering with the offending value") {
  GrowthFunction f = GrowthFunction::identity();
  SequenceTable t = build_table(f, 3);

  SUBCASE("even d(1) breaks clause (iv) parity and clause (iii)") {
    t.d[0] = 34;
    ClauseReport r = verify_clauses(t, f);
    CHECK(!r.all_pass());
    bool iv_failed = false;
    for (const auto& c : r.failures())
      if (c.clause == Clause::iv && c.k == 1) iv_failed = true;
    CHECK(iv_failed);
  }

  SUBCASE("even p(3) breaks clause (i)") {
    t.p[2] = 68;
    ClauseReport r = verify_clauses(t, f);
    bool i_failed = false;
    for (const auto& c : r.failures())
      if (c.clause == Clause::i && c.k == 3) i_failed = true;
    CHECK(i_failed);
  }

  SUBCASE("p(3) congruent to a forbidden residue breaks clause (v)") {
    // residue 1 * q(2) inverse... choose p(3) with p(3) q(2) = 1 mod d(2):
    // p(3) = q(2)^-1 mod d(2)
    Bigint inv;
    mpz_invert(inv.get_mpz_t(), t.q_at(2).get_mpz_t(), t.d_at(2).get_mpz_t());
    t.p[2] = inv;
    ClauseReport r = verify_clauses(t, f);
    bool v_failed = false;
    for (const auto& c : r.failures())
      if (c.clause == Clause::v && c.i == 2) v_failed = true;
    CHECK(v_failed);
  }

  SUBCASE("shrunken d(2) breaks clause (iv)'s inequality") {
    t.d[1] = 35;
    ClauseReport r = verify_clauses(t, f);
    bool iv_failed = false;
    for (const auto& c : r.failures())
      if (c.clause == Clause::iv && c.k == 2 && !c.detail.empty()) iv_failed = true;
    CHECK(iv_failed);
  }
}

TEST_CASE("table JSON round trip matches the schema") {
  SequenceTable t = build_table(GrowthFunction::identity(), 3);
  nlohmann::ordered_json j = table_to_json(t);
  CHECK(j["K"] == 3);
  CHECK(j["p"].size() == 4);
  CHECK(j["q"].size() == 3);
  CHECK(j["d"].size() == 3);
  CHECK(j["ell"].size() == 2);
  CHECK(j["d"][2] == "1461144071");
  SequenceTable back = table_from_json(j);
  CHECK(back.K == t.K);
  CHECK(back.p == t.p);
  CHECK(back.q == t.q);
  CHECK(back.d == t.d);
  CHECK(back.ell == t.ell);

  nlohmann::json bad = j;
  bad["q"].erase(2);
  CHECK_THROWS_AS(table_from_json(bad), ParseError);
}
