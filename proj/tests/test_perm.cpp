#include <doctest.h>

#include <set>

#include "common.hpp"
#include "rfgrowth/perm.hpp"

using namespace rfg;

TEST_CASE("compose applies the right factor first") {
  Perm id5(5);
  Perm c123 = Perm::from_cycles(5, {{1, 2, 3}});
  CHECK(compose(id5, c123) == c123);

  // square of a 3-cycle
  CHECK(compose(c123, c123) == Perm::from_cycles(5, {{1, 3, 2}}));

  // alpha^m beta alpha^-m = (m+1, m+2, m+3), here m = 1, n = 5
  Perm a5 = cycle_alpha(5);
  CHECK(compose(a5, compose(c123, inverse(a5))) == Perm::from_cycles(5, {{2, 3, 4}}));

  CHECK_THROWS_AS(compose(Perm(4), Perm(5)), DomainError);
}

TEST_CASE("inverse") {
  CHECK(inverse(Perm(5)) == Perm(5));
  CHECK(inverse(Perm::from_cycles(5, {{1, 2, 3}})) == Perm::from_cycles(5, {{1, 3, 2}}));
  CHECK(inverse(cycle_alpha(7))(0) == 6);  // 1 -> 7, 0-based
  rfgtest::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    Perm p = rfgtest::random_perm(9, rng);
    CHECK(compose(p, inverse(p)).is_identity());
    CHECK(inverse(inverse(p)) == p);
  }
}

TEST_CASE("commutator and the commuting criterion") {
  Perm b7 = three_cycle_beta(7);
  Perm a7 = cycle_alpha(7);
  CHECK(commutator(compose(pow(a7, 3), compose(b7, pow(a7, -3))), b7).is_identity());

  Perm b5 = three_cycle_beta(5);
  Perm a5 = cycle_alpha(5);
  CHECK(!commutator(compose(a5, compose(b5, inverse(a5))), b5).is_identity());

  rfgtest::Rng rng(23);
  Perm p = rfgtest::random_perm(8, rng);
  CHECK(commutator(p, p).is_identity());
}

TEST_CASE("commuting criterion is exactly m not in {1,2,n-1,n-2} mod n, exhaustively to 101") {
  for (int n : {5, 7, 33, 101}) {
    Perm a = cycle_alpha(n);
    Perm b = three_cycle_beta(n);
    for (int m = 0; m < n; ++m) {
      bool commute = commutator(compose(pow(a, m), compose(b, pow(a, -m))), b).is_identity();
      bool bad = m == 1 || m == 2 || m == n - 1 || m == n - 2;
      CHECK(commute == !bad);
    }
  }
}

TEST_CASE("generators alpha and beta") {
  CHECK(cycle_alpha(5)(4) == 0);  // 5 -> 1
  CHECK(order(cycle_alpha(5)) == 5);
  CHECK(parity(cycle_alpha(7)) == Parity::even);
  CHECK_THROWS_AS(cycle_alpha(4), DomainError);
  CHECK_THROWS_AS(cycle_alpha(3), DomainError);

  CHECK(three_cycle_beta(5)(2) == 0);  // 3 -> 1
  Perm b33 = three_cycle_beta(33);
  for (int x = 3; x < 33; ++x) CHECK(b33(x) == x);
  CHECK(order(three_cycle_beta(9)) == 3);
  CHECK_THROWS_AS(three_cycle_beta(2), DomainError);
}

TEST_CASE("parity") {
  CHECK(parity(Perm(6)) == Parity::even);
  CHECK(parity(Perm::from_cycles(6, {{1, 2}})) == Parity::odd);
  CHECK(parity(pow(cycle_alpha(33), 31)) == Parity::even);
  rfgtest::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    Perm p = rfgtest::random_perm(10, rng);
    Perm q = rfgtest::random_perm(10, rng);
    bool even_prod = parity(compose(p, q)) == Parity::even;
    bool expect = (parity(p) == Parity::even) == (parity(q) == Parity::even);
    CHECK(even_prod == expect);
  }
}

TEST_CASE("order") {
  CHECK(order(Perm(5)) == 1);
  CHECK(order(cycle_alpha(5)) == 5);
  CHECK(order(Perm::from_cycles(5, {{1, 2}, {3, 4, 5}})) == 6);
}

TEST_CASE("cycle notation round trip") {
  CHECK(format_cycles(Perm(7)) == "()");
  Perm p = Perm::from_cycles(7, {{1, 2, 3}, {5, 6}});
  CHECK(format_cycles(p) == "(1,2,3)(5,6)");
  CHECK(parse_cycles("(1,2,3)(5,6)", 7) == p);
  CHECK(parse_cycles(" ( 1 , 2 , 3 ) ( 5 , 6 ) ", 7) == p);
  CHECK(parse_cycles("()", 7) == Perm(7));
  CHECK_THROWS_AS(parse_cycles("(1,2,2)", 5), DomainError);
  CHECK_THROWS_AS(parse_cycles("(1,2", 5), ParseError);
}

TEST_CASE("genword evaluation") {
  Perm a = pow(cycle_alpha(5), 1);
  Perm b = three_cycle_beta(5);
  CHECK(eval_genword(parse_genword("B"), a, b) == b);
  CHECK(eval_genword(parse_genword("ABa"), a, b) == Perm::from_cycles(5, {{2, 3, 4}}));
  CHECK(eval_genword(GenWord(), a, b).is_identity());
}

TEST_CASE("factor_in_alt: spec examples at degree 5") {
  Perm b5 = three_cycle_beta(5);
  Perm a5 = cycle_alpha(5);
  GenWord wb = factor_in_alt(b5, 1);
  CHECK(eval_genword(wb, a5, b5) == b5);
  CHECK(format_genword(wb) == "B");

  Perm t = Perm::from_cycles(5, {{2, 3, 4}});
  GenWord wt = factor_in_alt(t, 1);
  CHECK(eval_genword(wt, a5, b5) == t);
  CHECK(format_genword(wt) == "ABa");
}

TEST_CASE("factor_in_alt: preconditions") {
  CHECK_THROWS_AS(factor_in_alt(Perm::from_cycles(5, {{1, 2}}), 1), DomainError);   // odd perm
  CHECK_THROWS_AS(factor_in_alt(Perm(6), 1), DomainError);                          // even degree
  CHECK_THROWS_AS(factor_in_alt(Perm(33), 3), DomainError);                         // gcd(3, 33) != 1
}

TEST_CASE("factor_in_alt: random round trips at degree 33 with q = 31") {
  const int n = 33;
  const long q = 31;
  Perm a = pow(cycle_alpha(n), q);
  Perm b = three_cycle_beta(n);
  rfgtest::Rng rng(101);
  unsigned long long budget = 12ull * n * n;
  for (int trial = 0; trial < 100; ++trial) {
    Perm target = rfgtest::random_even_perm(n, rng);
    GenWord w = factor_in_alt(target, q);
    CHECK(eval_genword(w, a, b) == target);
    CHECK(w.length() <= budget);
  }
}

TEST_CASE("factor_in_alt: stress across degrees and shift amounts") {
  rfgtest::Rng rng(77);
  for (int n : {5, 7, 9, 101}) {
    std::vector<long> qs;
    for (long q = 1; q < n && qs.size() < 4; q += 2)
      if (std::gcd(q, static_cast<long>(n)) == 1) qs.push_back(q);
    qs.push_back(n - 2);  // q = -2 mod n, the construction's own shape
    for (long q : qs) {
      if (std::gcd(q, static_cast<long>(n)) != 1) continue;
      Perm a = pow(cycle_alpha(n), q);
      Perm b = three_cycle_beta(n);
      for (int trial = 0; trial < 6; ++trial) {
        Perm target = rfgtest::random_even_perm(n, rng);
        GenWord w = factor_in_alt(target, q);
        CHECK(eval_genword(w, a, b) == target);
        CHECK(w.length() <= 12ull * static_cast<unsigned long long>(n) * static_cast<unsigned long long>(n));
      }
      // adversarial shapes: a near-reversal (even by construction) and a big shift
      std::vector<int32_t> img(static_cast<size_t>(n));
      for (int x = 0; x < n; ++x) img[static_cast<size_t>(x)] = n - 1 - x;
      Perm rev = Perm::from_images(img);
      if (parity(rev) == Parity::odd) {
        std::swap(img[0], img[1]);
        rev = Perm::from_images(img);
      }
      GenWord wrev = factor_in_alt(rev, q);
      CHECK(eval_genword(wrev, a, b) == rev);
      Perm shift = pow(cycle_alpha(n), (n - 1) / 2);
      GenWord wshift = factor_in_alt(shift, q);
      CHECK(eval_genword(wshift, a, b) == shift);
      CHECK(wshift.length() <= static_cast<unsigned long long>(n));  // pure shifts are one A-run
    }
  }
}

TEST_CASE("factor_in_alt: freely reduced output") {
  rfgtest::Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Perm target = rfgtest::random_even_perm(33, rng);
    GenWord w = factor_in_alt(target, 31);
    const auto& runs = w.runs();
    for (size_t i = 0; i < runs.size(); ++i) {
      CHECK(runs[i].exp != 0);
      if (i > 0) CHECK(runs[i].gen != runs[i - 1].gen);
    }
  }
}
