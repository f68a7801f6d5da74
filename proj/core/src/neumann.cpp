#include "rfgrowth/neumann.hpp"

#include <cmath>
#include <cstdio>

#include "rfgrowth/parallel.hpp"

namespace rfg {

namespace {
const WordSyntax kStSyntax{{'s', 't'}, /*lowercase_positive=*/true};

void check_level(unsigned k, const SequenceTable& t) {
  if (k < 1 || k > t.K) throw DomainError("level k = " + std::to_string(k) + " out of range 1.." + std::to_string(t.K));
}
}  // namespace

STWord parse_stword(const std::string& text) { return parse_word(text, kStSyntax); }

std::string format_stword(const STWord& w) { return format_word_runs(w, kStSyntax); }

STWord witness_word(unsigned k, const SequenceTable& t) {
  check_level(k, t);
  const Bigint& pk = t.p_at(k);
  if (!pk.fits_slong_p()) throw DomainError("witness word too long to materialize: p(k) = " + to_decimal(pk));
  long long p = pk.get_si();
  STWord w;
  w.append(kGenS, p);
  w.append(kGenT, 1);
  w.append(kGenS, -p);
  w.append(kGenT, 1);
  w.append(kGenS, p);
  w.append(kGenT, -1);
  w.append(kGenS, -p);
  w.append(kGenT, -1);
  return w;
}

ShiftSparsePerm project(const STWord& w, unsigned k, const SequenceTable& t) {
  check_level(k, t);
  const Bigint& d = t.d_at(k);
  const Bigint& q = t.q_at(k);
  ShiftSparsePerm acc = ShiftSparsePerm::identity(d);
  for (const Run& r : w.runs()) {
    ShiftSparsePerm factor = ShiftSparsePerm::identity(d);
    if (r.gen == kGenS) {
      factor = ShiftSparsePerm::from_shift(d, q * r.exp);
    } else if (r.gen == kGenT) {
      // t projects to the 3-cycle (1,2,3) in every factor, so t^e = t^(e mod 3).
      long e = static_cast<long>(((r.exp % 3) + 3) % 3);
      if (e == 1)
        factor = ShiftSparsePerm::from_sparse(d, {{1, 2, 3}});
      else if (e == 2)
        factor = ShiftSparsePerm::from_sparse(d, {{1, 3, 2}});
    } else {
      throw DomainError("s/t word uses a letter beyond {s, t}");
    }
    acc = compose(acc, factor);
  }
  return acc;
}

std::vector<unsigned> detecting_factors(const STWord& w, const SequenceTable& t, unsigned workers) {
  std::vector<char> detected(t.K, 0);
  parallel_for_index(t.K, workers, [&](size_t idx) {
    detected[idx] = !project(w, static_cast<unsigned>(idx + 1), t).is_identity();
  });
  std::vector<unsigned> out;
  for (unsigned k = 1; k <= t.K; ++k)
    if (detected[k - 1]) out.push_back(k);
  return out;
}

STWord conjugation_witness(const Perm& g, unsigned k, const SequenceTable& t) {
  check_level(k, t);
  const Bigint& d = t.d_at(k);
  if (d > kDenseDegreeCap) throw DomainError("d(k) = " + to_decimal(d) + " exceeds the dense factorization bound");
  if (g.degree() != d.get_si()) throw DomainError("witness target degree != d(k)");
  if (parity(g) == Parity::odd) throw DomainError("witness target must be even");
  long q = static_cast<long>(mod_floor(t.q_at(k), d).get_si());
  GenWord gw = factor_in_alt(g, q);
  // A = alpha^q(k) is exactly pi_k(s) and B = beta is pi_k(t): rename letters.
  STWord out;
  for (const Run& r : gw.runs()) out.append(r.gen == kGenA ? kGenS : kGenT, r.exp);
  return out;
}

double half_factorial_bits_estimate(const Bigint& d) {
  double x = d.get_d();
  if (x < 2) return 0.0;
  // lgamma(d+1)/ln 2 - 1 bits without materializing d!.
  return (std::lgamma(x + 1.0)) / std::log(2.0) - 1.0;
}

GrowthCertificate growth_certificate(const Bigint& n, const GrowthFunction& f, const SequenceTable& t) {
  if (n < 8) throw DomainError("certificates start at n = 8, got " + to_decimal(n));
  unsigned level = 0;
  for (unsigned k = 1; k <= t.K; ++k) {
    if (4 * t.p_at(k) + 4 <= n && n < 4 * t.p_at(k + 1) + 4) {
      level = k;
      break;
    }
  }
  if (level == 0)
    throw TableTooShallow("no level k <= K = " + std::to_string(t.K) + " brackets n = " + to_decimal(n) +
                          "; rebuild with larger K");

  GrowthCertificate cert;
  cert.n = n;
  cert.k = level;
  cert.witness = witness_word(level, t);
  cert.witness_length = 4 * t.p_at(level) + 4;
  cert.detection_row.resize(t.K);
  for (unsigned i = 1; i <= t.K; ++i)
    cert.detection_row[i - 1] = project(cert.witness, i, t).is_identity();
  cert.clause_iv.d_k = t.d_at(level);
  cert.clause_iv.bound = 2 * f.wrapped(4 * t.p_at(level + 1) + 4);
  cert.clause_iv.pass = cert.clause_iv.d_k > cert.clause_iv.bound;
  char bits[64];
  std::snprintf(bits, sizeof(bits), "%.4g", half_factorial_bits_estimate(cert.clause_iv.d_k));
  cert.conclusion = "D(" + to_decimal(n) + ") >= |G_" + std::to_string(level) + "| = d(" + std::to_string(level) +
                    ")!/2 (~" + bits + " bits) > d(" + std::to_string(level) + ")/2 >= F(4p(" +
                    std::to_string(level + 1) + ")+4) >= F(" + to_decimal(n) + ") >= f(" + to_decimal(n) + ")";
  return cert;
}

bool validate_certificate(const GrowthCertificate& c, const GrowthFunction& f, const SequenceTable& t,
                          std::vector<std::string>* issues) {
  std::vector<std::string> local;
  auto fail = [&](std::string why) { local.push_back(std::move(why)); };

  if (c.n < 8) fail("n < 8");
  if (c.k < 1 || c.k > t.K) {
    fail("level k out of range");
  } else {
    if (!(4 * t.p_at(c.k) + 4 <= c.n && c.n < 4 * t.p_at(c.k + 1) + 4))
      fail("bracketing 4p(k)+4 <= n < 4p(k+1)+4 fails");
    if (!(c.witness == witness_word(c.k, t))) fail("witness word is not [s^p(k) t s^-p(k), t]");
    if (c.witness_length != 4 * t.p_at(c.k) + 4) fail("witness_length != 4p(k)+4");
    Bigint actual_len(static_cast<unsigned long>(c.witness.length()));
    if (c.witness_length != actual_len) fail("stored witness has wrong letter count");

    if (c.detection_row.size() != t.K) {
      fail("detection_row length != K");
    } else {
      for (unsigned i = 1; i <= t.K; ++i) {
        bool trivial = project(c.witness, i, t).is_identity();
        if (c.detection_row[i - 1] != trivial) fail("detection_row[" + std::to_string(i) + "] does not match projection");
        if ((i == c.k) != !trivial) fail("witness is " + std::string(trivial ? "trivial" : "nontrivial") +
                                         " in factor " + std::to_string(i) + ", violating the diagonal pattern");
      }
    }

    Bigint bound = 2 * f.wrapped(4 * t.p_at(c.k + 1) + 4);
    if (c.clause_iv.d_k != t.d_at(c.k)) fail("clause_iv.d_k != d(k)");
    if (c.clause_iv.bound != bound) fail("clause_iv.bound != 2F(4p(k+1)+4)");
    if (!c.clause_iv.pass || !(c.clause_iv.d_k > c.clause_iv.bound)) fail("clause (iv) inequality fails");
  }

  if (issues) *issues = local;
  return local.empty();
}

namespace {
// Big integers print as JSON numbers while they fit and as decimal strings
// beyond that; d_k and bound are always strings (they outgrow doubles fast).
nlohmann::ordered_json json_int_or_string(const Bigint& v) {
  if (v >= 0 && v.fits_ulong_p()) return v.get_ui();
  return to_decimal(v);
}
}  // namespace

nlohmann::ordered_json certificate_to_json(const GrowthCertificate& c) {
  nlohmann::ordered_json j;
  j["n"] = json_int_or_string(c.n);
  j["k"] = c.k;
  j["witness"] = format_stword(c.witness);
  j["witness_length"] = json_int_or_string(c.witness_length);
  j["detection_row"] = c.detection_row;
  j["clause_iv"] = {{"d_k", to_decimal(c.clause_iv.d_k)},
                    {"bound", to_decimal(c.clause_iv.bound)},
                    {"pass", c.clause_iv.pass}};
  j["conclusion"] = c.conclusion;
  return j;
}

namespace {
Bigint bigint_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_bigint(v.get<std::string>());
  if (v.is_number_unsigned()) return Bigint(static_cast<unsigned long>(v.get<unsigned long long>()));
  if (v.is_number_integer()) return Bigint(static_cast<long>(v.get<long long>()));
  throw ParseError("expected integer or decimal string in JSON");
}
}  // namespace

GrowthCertificate certificate_from_json(const nlohmann::json& j) {
  GrowthCertificate c;
  try {
    c.n = bigint_from_json(j.at("n"));
    c.k = j.at("k").get<unsigned>();
    c.witness = parse_stword(j.at("witness").get<std::string>());
    c.witness_length = bigint_from_json(j.at("witness_length"));
    c.detection_row = j.at("detection_row").get<std::vector<bool>>();
    c.clause_iv.d_k = parse_bigint(j.at("clause_iv").at("d_k").get<std::string>());
    c.clause_iv.bound = parse_bigint(j.at("clause_iv").at("bound").get<std::string>());
    c.clause_iv.pass = j.at("clause_iv").at("pass").get<bool>();
    c.conclusion = j.value("conclusion", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad certificate JSON: ") + e.what());
  }
  return c;
}

}  // namespace rfg
