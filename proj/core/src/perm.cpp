#include "rfgrowth/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace rfg {

Perm::Perm(int degree) {
  if (degree < 1) throw DomainError("permutation degree must be >= 1");
  if (degree > kDenseDegreeCap) throw DomainError("dense degree cap exceeded: " + std::to_string(degree));
  images_.resize(static_cast<size_t>(degree));
  std::iota(images_.begin(), images_.end(), 0);
}

Perm Perm::from_images(std::vector<int32_t> images) {
  if (images.empty()) throw DomainError("permutation degree must be >= 1");
  if (images.size() > static_cast<size_t>(kDenseDegreeCap)) throw DomainError("dense degree cap exceeded");
  std::vector<bool> seen(images.size(), false);
  for (int32_t v : images) {
    if (v < 0 || static_cast<size_t>(v) >= images.size() || seen[static_cast<size_t>(v)])
      throw DomainError("image list is not a bijection");
    seen[static_cast<size_t>(v)] = true;
  }
  Perm p(static_cast<int>(images.size()));
  p.images_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  Perm p(degree);
  std::vector<bool> used(static_cast<size_t>(degree), false);
  for (const auto& cyc : cycles) {
    for (int pt : cyc) {
      if (pt < 1 || pt > degree) throw DomainError("cycle point out of range: " + std::to_string(pt));
      if (used[static_cast<size_t>(pt - 1)]) throw DomainError("repeated point in cycles: " + std::to_string(pt));
      used[static_cast<size_t>(pt - 1)] = true;
    }
    if (cyc.size() < 2) continue;
    for (size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i] - 1;
      int to = cyc[(i + 1) % cyc.size()] - 1;
      p.images_[static_cast<size_t>(from)] = to;
    }
  }
  return p;
}

bool Perm::is_identity() const {
  for (size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int32_t>(i)) return false;
  return true;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree())
    throw DomainError("degree mismatch: " + std::to_string(a.degree()) + " vs " + std::to_string(b.degree()));
  std::vector<int32_t> images(static_cast<size_t>(a.degree()));
  for (int32_t x = 0; x < a.degree(); ++x) images[static_cast<size_t>(x)] = a(b(x));
  return Perm::from_images(std::move(images));
}

Perm inverse(const Perm& p) {
  std::vector<int32_t> images(static_cast<size_t>(p.degree()));
  for (int32_t x = 0; x < p.degree(); ++x) images[static_cast<size_t>(p(x))] = x;
  return Perm::from_images(std::move(images));
}

Perm commutator(const Perm& a, const Perm& b) {
  return compose(compose(a, b), compose(inverse(a), inverse(b)));
}

Perm pow(const Perm& p, long long e) {
  int n = p.degree();
  std::vector<int32_t> images(static_cast<size_t>(n));
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::vector<int32_t> cyc;
  for (int32_t start = 0; start < n; ++start) {
    if (seen[static_cast<size_t>(start)]) continue;
    cyc.clear();
    int32_t x = start;
    do {
      seen[static_cast<size_t>(x)] = true;
      cyc.push_back(x);
      x = p(x);
    } while (x != start);
    long long len = static_cast<long long>(cyc.size());
    long long off = e % len;
    if (off < 0) off += len;
    for (size_t i = 0; i < cyc.size(); ++i)
      images[static_cast<size_t>(cyc[i])] = cyc[(i + static_cast<size_t>(off)) % cyc.size()];
  }
  return Perm::from_images(std::move(images));
}

Perm cycle_alpha(int n) {
  if (n < 5 || n % 2 == 0) throw DomainError("alpha requires odd degree >= 5, got " + std::to_string(n));
  std::vector<int32_t> images(static_cast<size_t>(n));
  for (int32_t x = 0; x < n; ++x) images[static_cast<size_t>(x)] = (x + 1) % n;
  return Perm::from_images(std::move(images));
}

Perm three_cycle_beta(int n) {
  if (n < 3) throw DomainError("beta requires degree >= 3, got " + std::to_string(n));
  return Perm::from_cycles(n, {{1, 2, 3}});
}

Parity parity(const Perm& p) {
  int n = p.degree();
  std::vector<bool> seen(static_cast<size_t>(n), false);
  int transpositions = 0;
  for (int32_t start = 0; start < n; ++start) {
    if (seen[static_cast<size_t>(start)]) continue;
    int len = 0;
    int32_t x = start;
    do {
      seen[static_cast<size_t>(x)] = true;
      ++len;
      x = p(x);
    } while (x != start);
    transpositions += len - 1;
  }
  return transpositions % 2 == 0 ? Parity::even : Parity::odd;
}

Bigint order(const Perm& p) {
  int n = p.degree();
  std::vector<bool> seen(static_cast<size_t>(n), false);
  Bigint result = 1;
  for (int32_t start = 0; start < n; ++start) {
    if (seen[static_cast<size_t>(start)]) continue;
    long len = 0;
    int32_t x = start;
    do {
      seen[static_cast<size_t>(x)] = true;
      ++len;
      x = p(x);
    } while (x != start);
    result = lcm(result, Bigint(len));
  }
  return result;
}

std::vector<std::vector<int>> cycles(const Perm& p) {
  int n = p.degree();
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::vector<std::vector<int>> out;
  for (int32_t start = 0; start < n; ++start) {
    if (seen[static_cast<size_t>(start)]) continue;
    std::vector<int> cyc;
    int32_t x = start;
    do {
      seen[static_cast<size_t>(x)] = true;
      cyc.push_back(x + 1);
      x = p(x);
    } while (x != start);
    if (cyc.size() > 1) out.push_back(std::move(cyc));
  }
  return out;
}

std::string format_cycles(const Perm& p) {
  auto cycs = cycles(p);
  if (cycs.empty()) return "()";
  std::string out;
  for (const auto& cyc : cycs) {
    out += '(';
    for (size_t i = 0; i < cyc.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(cyc[i]);
    }
    out += ')';
  }
  return out;
}

Perm parse_cycles(const std::string& text, int degree) {
  std::vector<std::vector<int>> cycs;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation: " + text);
    ++i;
    std::vector<int> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError("expected point in cycle notation: " + text);
      long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > kDenseDegreeCap) throw ParseError("cycle point too large: " + text);
        ++i;
      }
      cyc.push_back(static_cast<int>(v));
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_ws();
      }
    }
    if (i >= text.size()) throw ParseError("unterminated cycle in: " + text);
    ++i;  // ')'
    if (!cyc.empty()) cycs.push_back(std::move(cyc));
    skip_ws();
  }
  return Perm::from_cycles(degree, cycs);
}

namespace {
const WordSyntax kGenSyntax{{'A', 'B'}, /*lowercase_positive=*/false};
}

GenWord parse_genword(const std::string& text) { return parse_word(text, kGenSyntax); }

std::string format_genword(const GenWord& w) { return format_word_letters(w, kGenSyntax); }

Perm eval_genword(const GenWord& w, const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw DomainError("degree mismatch between generator images");
  Perm acc(a.degree());
  for (const Run& r : w.runs()) {
    if (r.gen != kGenA && r.gen != kGenB) throw DomainError("generator word uses letters beyond {A, B}");
    acc = compose(acc, pow(r.gen == kGenA ? a : b, r.exp));
  }
  return acc;
}

}  // namespace rfg
