#include "rfgrowth/sequences.hpp"

#include <algorithm>

namespace rfg {

Bigint lcm_accumulate(const std::vector<Bigint>& values) {
  if (values.empty()) throw DomainError("lcm of an empty list");
  Bigint acc = 1;
  for (const Bigint& v : values) {
    if (v < 1) throw DomainError("lcm requires positive integers, got " + to_decimal(v));
    acc = lcm(acc, v);
  }
  return acc;
}

namespace {

bool congruent_pm12(const Bigint& value, const Bigint& modulus, Bigint* residue = nullptr) {
  Bigint r = mod_floor(value, modulus);
  if (residue) *residue = r;
  return r == 1 || r == 2 || r == modulus - 1 || r == modulus - 2;
}

}  // namespace

SequenceTable build_table(const GrowthFunction& f, unsigned K) {
  if (K < 1) throw DomainError("truncation level K must be >= 1");
  SequenceTable t;
  t.K = K;

  const Bigint f16 = f.wrapped(16);
  t.p = {1, 3};
  t.q = {2 * f16 - 1};
  t.d = {2 * f16 + 1};
  // d(1) = 2F(16)+1 >= 33 makes p(2)q(1) = -6 mod d(1) safe automatically.
  if (t.d[0] < 33) throw InternalError("d(1) < 33; the F(16) >= 16 floor is broken");
  if (congruent_pm12(t.p[1] * t.q[0], t.d[0]))
    throw InternalError("base case violates clause (v)");

  Bigint running_lcm = t.d[0];
  for (unsigned k = 2; k <= K; ++k) {
    const Bigint& pk = t.p[k - 1];
    const Bigint ell = running_lcm;  // lcm of d(1..k-1)
    t.ell.push_back(ell);
    Bigint qk = 2 * f.wrapped(4 * pk + 40 * ell + 4) + 1;
    Bigint dk = pk * qk + 2;
    if (mod_floor(dk, 2) != 1) throw InternalError("d(k) came out even at k = " + std::to_string(k));
    if (gcd(qk, dk) != 1) throw InternalError("gcd(q(k), d(k)) != 1 at k = " + std::to_string(k));
    // The five candidates are distinct mod d(k) because p(k) + 10 ell < d(k).
    if (!(pk + 10 * ell < dk)) throw InternalError("candidate window reaches d(k) at k = " + std::to_string(k));
    t.q.push_back(qk);
    t.d.push_back(dk);

    Bigint next_p;
    bool found = false;
    for (int j = 1; j <= 5; ++j) {
      Bigint cand = pk + 2 * j * ell;
      if (!congruent_pm12(cand * qk, dk)) {
        next_p = cand;
        found = true;
        break;
      }
    }
    if (!found) throw InternalError("no valid p(k+1) among the five candidates at k = " + std::to_string(k));
    t.p.push_back(next_p);
    running_lcm = lcm(running_lcm, dk);
  }
  return t;
}

std::string clause_name(Clause c) {
  switch (c) {
    case Clause::i: return "i";
    case Clause::ii: return "ii";
    case Clause::iii: return "iii";
    case Clause::iv: return "iv";
    case Clause::v: return "v";
  }
  return "?";
}

bool ClauseReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ClauseCheck& c) { return c.pass; });
}

std::vector<ClauseCheck> ClauseReport::failures() const {
  std::vector<ClauseCheck> out;
  for (const ClauseCheck& c : checks)
    if (!c.pass) out.push_back(c);
  return out;
}

ClauseReport verify_clauses(const SequenceTable& t, const GrowthFunction& f) {
  ClauseReport report;
  auto add = [&](Clause c, unsigned k, unsigned i, bool pass, std::string detail) {
    report.checks.push_back({c, k, i, pass, pass ? std::string() : std::move(detail)});
  };

  if (t.p.size() != t.K + 1 || t.q.size() != t.K || t.d.size() != t.K ||
      t.ell.size() != (t.K >= 2 ? t.K - 1 : 0))
    throw DomainError("sequence table has inconsistent lengths for K = " + std::to_string(t.K));

  // (i) p strictly increasing, odd, p(1) = 1
  for (unsigned k = 1; k <= t.K + 1; ++k) {
    const Bigint& pk = t.p_at(k);
    bool ok = mod_floor(pk, 2) == 1;
    std::string why = ok ? "" : "p(" + std::to_string(k) + ") = " + to_decimal(pk) + " is even";
    if (ok && k == 1 && pk != 1) {
      ok = false;
      why = "p(1) = " + to_decimal(pk) + " != 1";
    }
    if (ok && k >= 2 && !(t.p_at(k - 1) < pk)) {
      ok = false;
      why = "p(" + std::to_string(k) + ") = " + to_decimal(pk) + " does not exceed p(" + std::to_string(k - 1) + ")";
    }
    add(Clause::i, k, 0, ok, std::move(why));
  }

  // (ii) q(k) odd and > 2
  for (unsigned k = 1; k <= t.K; ++k) {
    const Bigint& qk = t.q_at(k);
    bool ok = qk > 2 && mod_floor(qk, 2) == 1;
    add(Clause::ii, k, 0, ok, "q(" + std::to_string(k) + ") = " + to_decimal(qk));
  }

  // (iii) d(k) = p(k) q(k) + 2
  for (unsigned k = 1; k <= t.K; ++k) {
    Bigint expect = t.p_at(k) * t.q_at(k) + 2;
    bool ok = t.d_at(k) == expect;
    add(Clause::iii, k, 0, ok,
        "d(" + std::to_string(k) + ") = " + to_decimal(t.d_at(k)) + " != p q + 2 = " + to_decimal(expect));
  }

  // (iv) d(k) odd and greater than 2 F(4 p(k+1) + 4)
  for (unsigned k = 1; k <= t.K; ++k) {
    const Bigint& dk = t.d_at(k);
    bool ok = mod_floor(dk, 2) == 1;
    std::string why;
    if (!ok) {
      why = "d(" + std::to_string(k) + ") = " + to_decimal(dk) + " is even";
    } else {
      try {
        Bigint bound = 2 * f.wrapped(4 * t.p_at(k + 1) + 4);
        ok = dk > bound;
        if (!ok) why = "d(" + std::to_string(k) + ") = " + to_decimal(dk) + " <= " + to_decimal(bound);
      } catch (const GrowthOverflow& e) {
        ok = false;
        why = std::string("bound not representable: ") + e.what();
      }
    }
    add(Clause::iv, k, 0, ok, std::move(why));
  }

  // (v) p(k+1) q(i) != +-1, +-2 mod d(i) for i <= k
  for (unsigned k = 1; k <= t.K; ++k) {
    for (unsigned i = 1; i <= k; ++i) {
      Bigint residue;
      bool bad = congruent_pm12(t.p_at(k + 1) * t.q_at(i), t.d_at(i), &residue);
      add(Clause::v, k, i, !bad,
          "p(" + std::to_string(k + 1) + ") q(" + std::to_string(i) + ") = " + to_decimal(residue) +
              " mod d(" + std::to_string(i) + ")");
    }
  }

  return report;
}

nlohmann::ordered_json table_to_json(const SequenceTable& t) {
  auto strings = [](const std::vector<Bigint>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const Bigint& x : v) out.push_back(to_decimal(x));
    return out;
  };
  nlohmann::ordered_json j;
  j["K"] = t.K;
  j["p"] = strings(t.p);
  j["q"] = strings(t.q);
  j["d"] = strings(t.d);
  j["ell"] = strings(t.ell);
  return j;
}

SequenceTable table_from_json(const nlohmann::json& j) {
  auto parse_list = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_array()) throw ParseError(std::string("table JSON missing array '") + key + "'");
    std::vector<Bigint> out;
    for (const auto& item : j[key]) {
      if (!item.is_string()) throw ParseError(std::string("table JSON '") + key + "' entries must be decimal strings");
      out.push_back(parse_bigint(item.get<std::string>()));
    }
    return out;
  };
  if (!j.contains("K") || !j["K"].is_number_unsigned()) throw ParseError("table JSON missing unsigned 'K'");
  SequenceTable t;
  t.K = j["K"].get<unsigned>();
  if (t.K < 1) throw ParseError("table JSON has K < 1");
  t.p = parse_list("p");
  t.q = parse_list("q");
  t.d = parse_list("d");
  t.ell = parse_list("ell");
  if (t.p.size() != t.K + 1 || t.q.size() != t.K || t.d.size() != t.K ||
      t.ell.size() != (t.K >= 2 ? t.K - 1 : 0))
    throw ParseError("table JSON has inconsistent array lengths for K");
  return t;
}

nlohmann::ordered_json clause_report_to_json(const ClauseReport& r) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const ClauseCheck& c : r.checks) {
    nlohmann::ordered_json jc;
    jc["clause"] = clause_name(c.clause);
    jc["k"] = c.k;
    if (c.clause == Clause::v) jc["i"] = c.i;
    jc["pass"] = c.pass;
    if (!c.pass) jc["detail"] = c.detail;
    checks.push_back(std::move(jc));
  }
  nlohmann::ordered_json j;
  j["all_pass"] = r.all_pass();
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace rfg
