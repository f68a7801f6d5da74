#include "rfgrowth/shift_sparse.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace rfg {

namespace {

void check_modulus(const Bigint& d) {
  if (d < 5) throw DomainError("modulus must be >= 5, got " + to_decimal(d));
}

}  // namespace

ShiftSparsePerm ShiftSparsePerm::from_shift(const Bigint& modulus, const Bigint& m) {
  check_modulus(modulus);
  ShiftSparsePerm e;
  e.d_ = modulus;
  e.shift_ = mod_floor(m, modulus);
  return e;
}

ShiftSparsePerm ShiftSparsePerm::from_pairs(const Bigint& modulus, SparsePairs pairs) {
  check_modulus(modulus);
  std::map<Bigint, Bigint> normal;
  std::map<Bigint, int> value_count;
  for (auto& [x, y] : pairs) {
    Bigint x0 = mod_floor(x, modulus), y0 = mod_floor(y, modulus);
    if (x0 == y0) continue;
    if (!normal.emplace(x0, y0).second) throw DomainError("sparse part maps a point twice");
    ++value_count[y0];
  }
  ShiftSparsePerm e;
  e.d_ = modulus;
  e.shift_ = 0;
  e.sparse_.reserve(normal.size());
  for (auto& [x, y] : normal) {
    if (value_count[y] > 1) throw DomainError("sparse part is not injective");
    if (!normal.count(y)) throw DomainError("sparse support is not closed (key set != value set)");
    e.sparse_.emplace_back(x, y);
  }
  return e;
}

ShiftSparsePerm ShiftSparsePerm::from_sparse(const Bigint& modulus, const std::vector<std::vector<Bigint>>& cycles) {
  check_modulus(modulus);
  SparsePairs pairs;
  std::map<Bigint, bool> used;
  for (const auto& cyc : cycles) {
    for (const Bigint& pt : cyc) {
      if (pt < 1 || pt > modulus) throw DomainError("cycle point out of range: " + to_decimal(pt));
      if (used[pt]) throw DomainError("repeated point in sparse cycles: " + to_decimal(pt));
      used[pt] = true;
    }
    if (cyc.size() < 2) continue;
    for (size_t i = 0; i < cyc.size(); ++i) {
      // 1-based cycle entries, 0-based residues inside.
      pairs.emplace_back(cyc[i] - 1, cyc[(i + 1) % cyc.size()] - 1);
    }
  }
  return from_pairs(modulus, std::move(pairs));
}

Bigint ShiftSparsePerm::apply0(const Bigint& x) const {
  auto it = std::lower_bound(sparse_.begin(), sparse_.end(), x,
                             [](const auto& pair, const Bigint& key) { return pair.first < key; });
  const Bigint& sx = (it != sparse_.end() && it->first == x) ? it->second : x;
  return mod_floor(shift_ + sx, d_);
}

Bigint ShiftSparsePerm::apply(const Bigint& x) const {
  if (x < 1 || x > d_) throw DomainError("point out of range [1, d]: " + to_decimal(x));
  return apply0(x - 1) + 1;
}

ShiftSparsePerm compose(const ShiftSparsePerm& a, const ShiftSparsePerm& b) {
  if (a.d_ != b.d_)
    throw DomainError("modulus mismatch: " + to_decimal(a.d_) + " vs " + to_decimal(b.d_));
  const Bigint& d = a.d_;
  // a(b(x)) = M1 + M2 + tau(sigma2*(x)) with tau(y) = sigma1*(y + M2) - M2:
  // the sparse part of a conjugated by the shift -M2, then composed with b's.
  std::map<Bigint, Bigint> sigma2;
  for (const auto& [x, y] : b.sparse_) sigma2.emplace(x, y);
  std::map<Bigint, Bigint> tau;
  for (const auto& [x, y] : a.sparse_)
    tau.emplace(mod_floor(x - b.shift_, d), mod_floor(y - b.shift_, d));

  std::map<Bigint, Bigint> combined;
  auto add_point = [&](const Bigint& x) {
    if (combined.count(x)) return;
    auto it2 = sigma2.find(x);
    const Bigint& mid = it2 != sigma2.end() ? it2->second : x;
    auto it1 = tau.find(mid);
    const Bigint& out = it1 != tau.end() ? it1->second : mid;
    combined.emplace(x, out);
  };
  for (const auto& [x, y] : sigma2) add_point(x);
  for (const auto& [x, y] : tau) add_point(x);

  ShiftSparsePerm::SparsePairs pairs;
  pairs.reserve(combined.size());
  for (auto& [x, y] : combined) pairs.emplace_back(x, y);
  ShiftSparsePerm out = ShiftSparsePerm::from_pairs(d, std::move(pairs));
  out.shift_ = mod_floor(a.shift_ + b.shift_, d);
  return out;
}

ShiftSparsePerm inverse(const ShiftSparsePerm& e) {
  // e(x) = M + sigma(x), so e^-1(x) = sigma^-1(x - M): shift by -M with the
  // reversed pairs translated by +M.
  ShiftSparsePerm::SparsePairs pairs;
  pairs.reserve(e.sparse_.size());
  for (const auto& [x, y] : e.sparse_)
    pairs.emplace_back(mod_floor(y + e.shift_, e.d_), mod_floor(x + e.shift_, e.d_));
  ShiftSparsePerm out = ShiftSparsePerm::from_pairs(e.d_, std::move(pairs));
  out.shift_ = mod_floor(-e.shift_, e.d_);
  return out;
}

Perm to_dense(const ShiftSparsePerm& e) {
  if (e.d_ > kDenseDegreeCap) throw DomainError("modulus too large for dense form: " + to_decimal(e.d_));
  int n = static_cast<int>(e.d_.get_si());
  std::vector<int32_t> images(static_cast<size_t>(n));
  for (int32_t x = 0; x < n; ++x) images[static_cast<size_t>(x)] = static_cast<int32_t>(e.apply0(Bigint(x)).get_si());
  return Perm::from_images(std::move(images));
}

std::string format_shift_sparse(const ShiftSparsePerm& e) {
  std::string out = "d=" + to_decimal(e.modulus()) + "; shift=" + to_decimal(e.shift()) + "; sparse=(";
  bool first = true;
  for (const auto& [x, y] : e.sparse()) {
    if (!first) out += ", ";
    first = false;
    out += to_decimal(x + 1) + ">" + to_decimal(y + 1);
  }
  out += ")";
  return out;
}

namespace {

std::string expect_field(const std::string& text, size_t& i, const std::string& name) {
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (text.compare(i, name.size(), name) != 0 || i + name.size() >= text.size() || text[i + name.size()] != '=')
    throw ParseError("expected '" + name + "=' in: " + text);
  i += name.size() + 1;
  skip_ws();
  size_t start = i;
  while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '-')) ++i;
  if (start == i) throw ParseError("expected integer after '" + name + "=' in: " + text);
  std::string value = text.substr(start, i - start);
  auto skip_sep = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ';')) ++i;
  };
  skip_sep();
  return value;
}

}  // namespace

ShiftSparsePerm parse_shift_sparse(const std::string& text) {
  size_t i = 0;
  Bigint d = parse_bigint(expect_field(text, i, "d"));
  Bigint shift = parse_bigint(expect_field(text, i, "shift"));
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (text.compare(i, 7, "sparse=") != 0) throw ParseError("expected 'sparse=' in: " + text);
  i += 7;
  skip_ws();
  if (i >= text.size() || text[i] != '(') throw ParseError("expected '(' after sparse= in: " + text);
  ++i;
  ShiftSparsePerm::SparsePairs pairs;
  skip_ws();
  while (i < text.size() && text[i] != ')') {
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw ParseError("expected point in sparse list: " + text);
    Bigint x = parse_bigint(text.substr(start, i - start));
    skip_ws();
    if (i >= text.size() || text[i] != '>') throw ParseError("expected '>' in sparse pair: " + text);
    ++i;
    skip_ws();
    start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw ParseError("expected image in sparse pair: " + text);
    Bigint y = parse_bigint(text.substr(start, i - start));
    pairs.emplace_back(x - 1, y - 1);
    skip_ws();
    if (i < text.size() && text[i] == ',') {
      ++i;
      skip_ws();
    }
  }
  if (i >= text.size()) throw ParseError("unterminated sparse list in: " + text);
  ShiftSparsePerm out = ShiftSparsePerm::from_pairs(d, std::move(pairs));
  return compose(ShiftSparsePerm::from_shift(d, shift), out);
}

}  // namespace rfg
