#include "rfgrowth/growth.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rfg {

GrowthFunction GrowthFunction::identity() { return GrowthFunction(); }

GrowthFunction GrowthFunction::poly(unsigned degree) {
  if (degree < 1) throw DomainError("poly growth requires degree >= 1");
  GrowthFunction f;
  f.kind_ = Kind::poly;
  f.poly_degree_ = degree;
  f.label_ = "poly:" + std::to_string(degree);
  return f;
}

GrowthFunction GrowthFunction::exponential(const Bigint& base) {
  if (base < 2) throw DomainError("exponential growth requires base >= 2");
  GrowthFunction f;
  f.kind_ = Kind::exp;
  f.exp_base_ = base;
  f.label_ = base == 2 ? "exp2" : "exp" + to_decimal(base);
  return f;
}

GrowthFunction GrowthFunction::from_table(std::vector<std::pair<Bigint, Bigint>> entries, std::string label) {
  if (entries.empty()) throw DomainError("growth table must have at least one entry");
  std::sort(entries.begin(), entries.end());
  for (size_t i = 0; i + 1 < entries.size(); ++i)
    if (entries[i].first == entries[i + 1].first)
      throw ParseError("duplicate n in growth table: " + to_decimal(entries[i].first));
  for (const auto& [n, v] : entries) {
    if (n < 1) throw ParseError("growth table n must be >= 1, got " + to_decimal(n));
    if (v < 0) throw ParseError("growth table value must be >= 0");
  }
  GrowthFunction f;
  f.kind_ = Kind::table;
  f.label_ = std::move(label);
  f.table_ = std::move(entries);
  f.table_prefix_max_.reserve(f.table_.size());
  Bigint running = 0;
  for (const auto& [n, v] : f.table_) {
    running = std::max(running, v);
    f.table_prefix_max_.push_back(running);
  }
  return f;
}

GrowthFunction GrowthFunction::from_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open growth table file: " + path);
  std::vector<std::pair<Bigint, Bigint>> entries;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;  // blank line
    if (!(ls >> b) || (ls >> extra))
      throw ParseError("growth table line " + std::to_string(lineno) + " must be 'n f(n)': " + line);
    entries.emplace_back(parse_bigint(a), parse_bigint(b));
  }
  return from_table(std::move(entries), "table:" + path);
}

GrowthFunction GrowthFunction::parse(const std::string& spec) {
  if (spec == "identity") return identity();
  if (spec == "exp2") return exp2();
  if (spec.rfind("poly:", 0) == 0) {
    const std::string arg = spec.substr(5);
    if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad poly degree in growth spec: " + spec);
    return poly(static_cast<unsigned>(std::stoul(arg)));
  }
  if (spec.rfind("table:", 0) == 0) return from_table_file(spec.substr(6));
  throw ParseError("unknown growth function: " + spec +
                   " (expected identity | poly:<c> | exp2 | table:<path>)");
}

Bigint GrowthFunction::raw(const Bigint& n) const {
  if (n < 1) throw DomainError("growth functions are defined on n >= 1");
  switch (kind_) {
    case Kind::identity:
      return n;
    case Kind::poly: {
      unsigned long arg_bits = bit_length(n);
      if (arg_bits * static_cast<unsigned long>(poly_degree_) > kGrowthBitBudget)
        throw GrowthOverflow(label_ + "(" + to_decimal(n) + ") needs about " +
                             std::to_string(arg_bits * poly_degree_) + " bits; budget is " +
                             std::to_string(kGrowthBitBudget));
      Bigint r;
      mpz_pow_ui(r.get_mpz_t(), n.get_mpz_t(), poly_degree_);
      return r;
    }
    case Kind::exp: {
      if (!n.fits_ulong_p() || n.get_ui() * bit_length(exp_base_) > kGrowthBitBudget) {
        std::string need = n.fits_ulong_p() ? std::to_string(n.get_ui() * bit_length(exp_base_))
                                            : "about 2^" + std::to_string(bit_length(n));
        throw GrowthOverflow(label_ + "(" + to_decimal(n) + ") needs " + need +
                             " bits; budget is " + std::to_string(kGrowthBitBudget));
      }
      return pow_big(exp_base_, n.get_ui());
    }
    case Kind::table: {
      // Largest listed n' <= n, else 0; the wrapper supplies the n floor.
      auto it = std::upper_bound(table_.begin(), table_.end(), n,
                                 [](const Bigint& key, const auto& entry) { return key < entry.first; });
      if (it == table_.begin()) return 0;
      return (it - 1)->second;
    }
  }
  throw InternalError("unreachable growth kind");
}

Bigint GrowthFunction::wrapped(const Bigint& n) const {
  if (n < 1) throw DomainError("growth functions are defined on n >= 1");
  if (kind_ == Kind::table) {
    auto it = std::upper_bound(table_.begin(), table_.end(), n,
                               [](const Bigint& key, const auto& entry) { return key < entry.first; });
    if (it == table_.begin()) return n;
    const Bigint& prefix = table_prefix_max_[static_cast<size_t>(it - table_.begin()) - 1];
    return std::max(n, prefix);
  }
  // The builtin kinds are nondecreasing, so max(f(1..n)) = f(n).
  return std::max(n, raw(n));
}

}  // namespace rfg
