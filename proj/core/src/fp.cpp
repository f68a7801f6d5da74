#include "rfgrowth/fp.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "rfgrowth/bigint.hpp"
#include "rfgrowth/parallel.hpp"

namespace rfg {

// ---------------------------------------------------------------- words & presentations

Word free_reduce(const Word& w) { return w; }  // the run representation is always reduced

Presentation parse_presentation(const std::string& text) {
  Presentation p;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  bool have_gens = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed;
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    trimmed = line.substr(a, b - a + 1);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    if (trimmed.rfind("gens:", 0) == 0) {
      if (have_gens) throw ParseError("duplicate 'gens:' line");
      std::istringstream gs(trimmed.substr(5));
      std::string tok;
      while (gs >> tok) {
        if (tok.size() != 1 || !std::islower(static_cast<unsigned char>(tok[0])))
          throw ParseError("generator names must be single lowercase letters, got '" + tok + "'");
        if (std::find(p.gen_names.begin(), p.gen_names.end(), tok[0]) != p.gen_names.end())
          throw ParseError(std::string("duplicate generator '") + tok[0] + "'");
        p.gen_names.push_back(tok[0]);
      }
      if (p.gen_names.empty()) throw ParseError("empty generator list");
      have_gens = true;
    } else if (trimmed.rfind("rel:", 0) == 0) {
      if (!have_gens) throw ParseError("'rel:' before 'gens:' at line " + std::to_string(lineno));
      Word r = parse_word(trimmed.substr(4), p.syntax());
      if (r.empty()) throw ParseError("trivial relator at line " + std::to_string(lineno));
      p.relators.push_back(std::move(r));
    } else {
      throw ParseError("unrecognized presentation line " + std::to_string(lineno) + ": " + trimmed);
    }
  }
  if (!have_gens) throw ParseError("presentation has no 'gens:' line");
  return p;
}

Presentation parse_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open presentation file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str());
}

Word parse_fp_word(const Presentation& p, const std::string& text) { return parse_word(text, p.syntax()); }

std::string format_fp_word(const Presentation& p, const Word& w) { return format_word_runs(w, p.syntax()); }

Perm eval_word(const Word& w, const std::vector<Perm>& images, int degree) {
  Perm acc(degree);
  for (const Run& r : w.runs()) {
    if (r.gen >= static_cast<int>(images.size())) throw DomainError("word uses a generator beyond the image tuple");
    acc = compose(acc, pow(images[static_cast<size_t>(r.gen)], r.exp));
  }
  return acc;
}

bool extends_by_relators(const Presentation& p, const FiniteHom& h) {
  if (static_cast<int>(h.images.size()) != p.ngens()) throw DomainError("image tuple size != generator count");
  for (const Word& r : p.relators)
    if (!eval_word(r, h.images, h.degree).is_identity()) return false;
  return true;
}

// ---------------------------------------------------------------- enumeration

namespace {

std::vector<Perm> all_perms_lex(int degree) {
  std::vector<int32_t> img(static_cast<size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(Perm::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace

void for_each_hom(const Presentation& p, int degree, const std::function<bool(const FiniteHom&)>& visit) {
  if (degree < 1) throw DomainError("hom degree must be >= 1");
  if (degree > kEnumDegreeCap) throw DomainError("hom enumeration degree cap is " + std::to_string(kEnumDegreeCap));
  const std::vector<Perm> perms = all_perms_lex(degree);
  const int k = p.ngens();
  std::vector<size_t> idx(static_cast<size_t>(k), 0);
  FiniteHom h;
  h.degree = degree;
  h.images.assign(static_cast<size_t>(k), Perm(degree));
  for (;;) {
    for (int g = 0; g < k; ++g) h.images[static_cast<size_t>(g)] = perms[idx[static_cast<size_t>(g)]];
    if (extends_by_relators(p, h)) {
      if (!visit(h)) return;
    }
    // odometer, last generator fastest
    int pos = k - 1;
    while (pos >= 0) {
      if (++idx[static_cast<size_t>(pos)] < perms.size()) break;
      idx[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

std::vector<FiniteHom> enumerate_homs(const Presentation& p, int degree) {
  std::vector<FiniteHom> out;
  for_each_hom(p, degree, [&](const FiniteHom& h) {
    out.push_back(h);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------- closure

namespace {

constexpr int kPackDegreeCap = 16;

uint64_t pack_perm(const Perm& p) {
  uint64_t key = 0;
  for (int i = 0; i < p.degree(); ++i) key |= static_cast<uint64_t>(p(i)) << (4 * i);
  return key;
}

}  // namespace

std::optional<unsigned long long> image_order(const FiniteHom& h, unsigned long long cap) {
  if (cap < 1) throw DomainError("closure cap must be >= 1");
  if (h.degree > kPackDegreeCap) throw DomainError("image_order supports degree <= 16");
  std::unordered_set<uint64_t> seen;
  std::vector<Perm> frontier;
  Perm id(h.degree);
  seen.insert(pack_perm(id));
  frontier.push_back(id);
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& g : frontier) {
      for (const Perm& gen : h.images) {
        Perm prod = compose(g, gen);
        if (seen.insert(pack_perm(prod)).second) {
          if (seen.size() > cap) return std::nullopt;
          next.push_back(std::move(prod));
        }
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

// ---------------------------------------------------------------- Schreier data

KernelData schreier_kernel_generators(const Presentation& p, const FiniteHom& h) {
  if (static_cast<int>(h.images.size()) != p.ngens()) throw DomainError("image tuple size != generator count");
  if (h.degree > kPackDegreeCap) throw DomainError("schreier_kernel_generators supports degree <= 16");
  constexpr size_t kMaxImage = 10000;

  std::unordered_map<uint64_t, size_t> ids;
  std::vector<Perm> elems;
  std::vector<Word> reps;
  elems.emplace_back(h.degree);
  reps.emplace_back();
  ids.emplace(pack_perm(elems[0]), 0);

  // Breadth-first over positive generator letters: reps come out shortlex.
  for (size_t at = 0; at < elems.size(); ++at) {
    Perm base = elems[at];
    Word base_rep = reps[at];
    for (int x = 0; x < p.ngens(); ++x) {
      Perm nxt = compose(base, h.images[static_cast<size_t>(x)]);
      uint64_t key = pack_perm(nxt);
      if (ids.count(key)) continue;
      if (elems.size() >= kMaxImage) throw DomainError("image order exceeds the Schreier cap of 10^4");
      ids.emplace(key, elems.size());
      elems.push_back(std::move(nxt));
      Word rep = base_rep;
      rep.append(x, 1);
      reps.push_back(std::move(rep));
    }
  }

  KernelData kd;
  kd.hom = h;
  kd.coset_reps = reps;
  std::set<Word, bool (*)(const Word&, const Word&)> seen_words(&shortlex_less);
  for (size_t ti = 0; ti < reps.size(); ++ti) {
    for (int x = 0; x < p.ngens(); ++x) {
      Perm target = compose(elems[ti], h.images[static_cast<size_t>(x)]);
      const Word& target_rep = reps[ids.at(pack_perm(target))];
      Word u = reps[ti];
      u.append(x, 1);
      u.append(target_rep.inverse());
      if (u.empty()) continue;
      if (seen_words.insert(u).second) kd.schreier_gens.push_back(std::move(u));
    }
  }
  return kd;
}

// ---------------------------------------------------------------- oracles

namespace {

std::vector<long long> exponent_vector(const Word& w, int ngens) {
  std::vector<long long> v(static_cast<size_t>(ngens), 0);
  for (const Run& r : w.runs()) {
    if (r.gen >= ngens) throw DomainError("word uses a generator beyond the oracle's rank");
    if (__builtin_add_overflow(v[static_cast<size_t>(r.gen)], r.exp, &v[static_cast<size_t>(r.gen)]))
      throw DomainError("exponent overflow in abelianization");
  }
  return v;
}

struct FreeAbelianWp final : WordProblemOracle {
  int rank;
  explicit FreeAbelianWp(int r) : rank(r) {}
  bool is_trivial(const Word& w) const override {
    auto v = exponent_vector(w, rank);
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
  }
  std::string name() const override { return rank == 1 ? "integers" : "free-abelian:" + std::to_string(rank); }
};

// Lattice membership by exact integer row echelon (unimodular row ops keep
// the row lattice intact).
struct LatticeQuery final : MembershipQuery {
  int rank;
  std::vector<std::vector<Bigint>> basis;  // echelon rows
  std::vector<int> pivot_col;

  LatticeQuery(int r, const std::vector<Word>& gens) : rank(r) {
    std::vector<std::vector<Bigint>> rows;
    for (const Word& g : gens) {
      auto v = exponent_vector(g, rank);
      std::vector<Bigint> row(v.begin(), v.end());
      rows.push_back(std::move(row));
    }
    int row_at = 0;
    for (int col = 0; col < rank; ++col) {
      // Euclid on the column below row_at until one nonzero entry remains.
      for (;;) {
        int min_row = -1;
        for (size_t i = static_cast<size_t>(row_at); i < rows.size(); ++i) {
          if (rows[i][static_cast<size_t>(col)] == 0) continue;
          if (min_row < 0 || abs(rows[i][static_cast<size_t>(col)]) <
                                 abs(rows[static_cast<size_t>(min_row)][static_cast<size_t>(col)]))
            min_row = static_cast<int>(i);
        }
        if (min_row < 0) break;
        std::swap(rows[static_cast<size_t>(row_at)], rows[static_cast<size_t>(min_row)]);
        bool cleared = true;
        for (size_t i = static_cast<size_t>(row_at) + 1; i < rows.size(); ++i) {
          if (rows[i][static_cast<size_t>(col)] == 0) continue;
          Bigint f = rows[i][static_cast<size_t>(col)] / rows[static_cast<size_t>(row_at)][static_cast<size_t>(col)];
          for (int c = 0; c < rank; ++c)
            rows[i][static_cast<size_t>(c)] -= f * rows[static_cast<size_t>(row_at)][static_cast<size_t>(c)];
          if (rows[i][static_cast<size_t>(col)] != 0) cleared = false;
        }
        if (cleared) break;
      }
      if (row_at < static_cast<int>(rows.size()) && rows[static_cast<size_t>(row_at)][static_cast<size_t>(col)] != 0) {
        if (rows[static_cast<size_t>(row_at)][static_cast<size_t>(col)] < 0)
          for (int c = 0; c < rank; ++c) rows[static_cast<size_t>(row_at)][static_cast<size_t>(c)] *= -1;
        basis.push_back(rows[static_cast<size_t>(row_at)]);
        pivot_col.push_back(col);
        ++row_at;
      }
    }
  }

  bool contains(const Word& g) const override {
    auto ev = exponent_vector(g, rank);
    std::vector<Bigint> v(ev.begin(), ev.end());
    for (size_t b = 0; b < basis.size(); ++b) {
      int col = pivot_col[b];
      if (v[static_cast<size_t>(col)] == 0) continue;
      Bigint rem = mod_floor(v[static_cast<size_t>(col)], basis[b][static_cast<size_t>(col)]);
      if (rem != 0) return false;
      Bigint f = v[static_cast<size_t>(col)] / basis[b][static_cast<size_t>(col)];
      for (int c = 0; c < rank; ++c) v[static_cast<size_t>(c)] -= f * basis[b][static_cast<size_t>(c)];
    }
    return std::all_of(v.begin(), v.end(), [](const Bigint& x) { return x == 0; });
  }
};

struct FreeAbelianMembership final : MembershipOracle {
  int rank;
  explicit FreeAbelianMembership(int r) : rank(r) {}
  std::unique_ptr<MembershipQuery> prepare(const std::vector<Word>& gens) const override {
    return std::make_unique<LatticeQuery>(rank, gens);
  }
  std::string name() const override { return "free-abelian:" + std::to_string(rank); }
};

struct CyclicWp final : WordProblemOracle {
  unsigned long modulus;
  explicit CyclicWp(unsigned long m) : modulus(m) {}
  bool is_trivial(const Word& w) const override {
    auto v = exponent_vector(w, 1);
    long long r = v[0] % static_cast<long long>(modulus);
    return r == 0;
  }
  std::string name() const override { return "cyclic:" + std::to_string(modulus); }
};

struct CyclicQuery final : MembershipQuery {
  unsigned long modulus;
  unsigned long sub_gcd;  // subgroup <sub_gcd> of Z/m
  bool contains(const Word& g) const override {
    auto v = exponent_vector(g, 1);
    long long r = v[0] % static_cast<long long>(modulus);
    if (r < 0) r += static_cast<long long>(modulus);
    return r % static_cast<long long>(sub_gcd) == 0;
  }
};

struct CyclicMembership final : MembershipOracle {
  unsigned long modulus;
  explicit CyclicMembership(unsigned long m) : modulus(m) {}
  std::unique_ptr<MembershipQuery> prepare(const std::vector<Word>& gens) const override {
    auto q = std::make_unique<CyclicQuery>();
    q->modulus = modulus;
    unsigned long long g = modulus;
    for (const Word& w : gens) {
      auto v = exponent_vector(w, 1);
      unsigned long long mag = v[0] < 0 ? static_cast<unsigned long long>(-(v[0] + 1)) + 1
                                        : static_cast<unsigned long long>(v[0]);
      g = std::gcd(g, mag % modulus);
    }
    q->sub_gcd = g == 0 ? modulus : static_cast<unsigned long>(g);
    return q;
  }
  std::string name() const override { return "cyclic:" + std::to_string(modulus); }
};

struct FreeGroupWp final : WordProblemOracle {
  bool is_trivial(const Word& w) const override { return w.empty(); }
  std::string name() const override { return "free"; }
};

struct PermGroupWp final : WordProblemOracle {
  std::vector<Perm> images;
  int degree;
  bool is_trivial(const Word& w) const override { return eval_word(w, images, degree).is_identity(); }
  std::string name() const override { return "perm-group"; }
};

struct PermGroupQuery final : MembershipQuery {
  const std::vector<Perm>* images;
  int degree;
  std::unordered_set<uint64_t> closure;
  bool contains(const Word& g) const override { return closure.count(pack_perm(eval_word(g, *images, degree))) > 0; }
};

struct PermGroupMembership final : MembershipOracle {
  std::vector<Perm> images;
  int degree;
  std::unique_ptr<MembershipQuery> prepare(const std::vector<Word>& gens) const override {
    auto q = std::make_unique<PermGroupQuery>();
    q->images = &images;
    q->degree = degree;
    std::vector<Perm> hgens;
    for (const Word& w : gens) hgens.push_back(eval_word(w, images, degree));
    FiniteHom h;
    h.degree = degree;
    h.images = hgens.empty() ? std::vector<Perm>{Perm(degree)} : std::move(hgens);
    // Reuse the closure walk; the packed keys are the membership set.
    std::vector<Perm> frontier{Perm(degree)};
    q->closure.insert(pack_perm(frontier[0]));
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (const Perm& g : frontier)
        for (const Perm& gen : h.images) {
          Perm prod = compose(g, gen);
          if (q->closure.insert(pack_perm(prod)).second) next.push_back(std::move(prod));
        }
      frontier = std::move(next);
    }
    return q;
  }
  std::string name() const override { return "perm-group"; }
};

}  // namespace

GammaSpec make_integers_gamma() {
  GammaSpec g;
  g.ngens = 1;
  g.word_problem = std::make_shared<FreeAbelianWp>(1);
  g.membership = std::make_shared<FreeAbelianMembership>(1);
  return g;
}

GammaSpec make_finite_cyclic_gamma(unsigned long modulus) {
  if (modulus < 1) throw DomainError("cyclic modulus must be >= 1");
  GammaSpec g;
  g.ngens = 1;
  g.word_problem = std::make_shared<CyclicWp>(modulus);
  g.membership = std::make_shared<CyclicMembership>(modulus);
  return g;
}

GammaSpec make_free_abelian_gamma(int rank) {
  if (rank < 1 || rank > 3) throw DomainError("free-abelian oracles cover rank 1..3");
  GammaSpec g;
  g.ngens = rank;
  g.word_problem = std::make_shared<FreeAbelianWp>(rank);
  g.membership = std::make_shared<FreeAbelianMembership>(rank);
  return g;
}

GammaSpec make_free_group_gamma(int ngens) {
  GammaSpec g;
  g.ngens = ngens;
  g.word_problem = std::make_shared<FreeGroupWp>();
  g.membership = nullptr;  // no membership procedure ships for free groups
  return g;
}

GammaSpec make_perm_group_gamma(const std::vector<Perm>& images) {
  if (images.empty()) throw DomainError("perm-group oracle needs at least one generator image");
  int degree = images[0].degree();
  if (degree > kPackDegreeCap) throw DomainError("perm-group oracle supports degree <= 16");
  for (const Perm& p : images)
    if (p.degree() != degree) throw DomainError("perm-group oracle images must share a degree");
  GammaSpec g;
  g.ngens = static_cast<int>(images.size());
  auto wp = std::make_shared<PermGroupWp>();
  wp->images = images;
  wp->degree = degree;
  auto mem = std::make_shared<PermGroupMembership>();
  mem->images = images;
  mem->degree = degree;
  g.word_problem = wp;
  g.membership = mem;
  return g;
}

std::optional<GammaSpec> make_named_gamma(const std::string& name, int ngens) {
  try {
    if (name == "integers" || name == "z") {
      if (ngens != 1) return std::nullopt;
      return make_integers_gamma();
    }
    if (name.rfind("cyclic:", 0) == 0) {
      if (ngens != 1) return std::nullopt;
      const std::string arg = name.substr(7);
      if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
      return make_finite_cyclic_gamma(std::stoul(arg));
    }
    if (name == "free") return make_free_group_gamma(ngens);
    if (name.rfind("free-abelian:", 0) == 0) {
      const std::string arg = name.substr(13);
      if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
      int rank = static_cast<int>(std::stoul(arg));
      if (rank != ngens) return std::nullopt;
      return make_free_abelian_gamma(rank);
    }
  } catch (const DomainError&) {
    return std::nullopt;
  }
  return std::nullopt;
}

bool extends_by_membership(const GammaSpec& gamma, const Presentation& p, const FiniteHom& h) {
  if (gamma.ngens != p.ngens()) throw DomainError("oracle rank != presentation generator count");
  if (!gamma.membership) throw DomainError("membership oracle unavailable for this group");
  KernelData kd = schreier_kernel_generators(p, h);
  auto query = gamma.membership->prepare(kd.schreier_gens);
  size_t count = 0;
  for (const Word& t : kd.coset_reps)
    if (query->contains(t)) ++count;
  return count == 1;
}

// ---------------------------------------------------------------- minimal detecting quotient

namespace {

// One permutation per cycle type of S_degree: cycles laid out longest first
// over consecutive points. Detection minima are conjugation-invariant, so
// restricting the first generator to class representatives is lossless.
std::vector<Perm> cycle_type_reps(int degree) {
  std::vector<Perm> out;
  std::vector<int> parts;
  auto emit = [&] {
    std::vector<int32_t> img(static_cast<size_t>(degree));
    std::iota(img.begin(), img.end(), 0);
    int base = 0;
    for (int len : parts) {
      for (int i = 0; i < len; ++i) img[static_cast<size_t>(base + i)] = base + (i + 1) % len;
      base += len;
    }
    out.push_back(Perm::from_images(std::move(img)));
  };
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      emit();
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      parts.push_back(part);
      rec(remaining - part, part);
      parts.pop_back();
    }
  };
  rec(degree, degree);
  return out;
}

struct TaskResult {
  bool found = false;
  unsigned long long order = 0;
  FiniteHom hom;
};

}  // namespace

std::optional<Detection> minimal_detecting_quotient(const Presentation& p, const Word& gamma,
                                                    const MdqOptions& opts) {
  if (gamma.empty()) throw DomainError("gamma must be a nonempty reduced word");
  if (gamma.max_gen() >= p.ngens()) throw DomainError("gamma uses a generator outside the presentation");
  if (opts.max_degree < 1 || opts.max_degree > kEnumDegreeCap)
    throw DomainError("max_degree must be in 1.." + std::to_string(kEnumDegreeCap));

  std::optional<Detection> best;
  for (int degree = 1; degree <= opts.max_degree; ++degree) {
    if (opts.stop_when_degree_covers_best && best &&
        best->order <= static_cast<unsigned long long>(degree))
      break;  // any smaller order already had a copy at a scanned degree

    const std::vector<Perm> all = all_perms_lex(degree);
    const std::vector<Perm> firsts = opts.prune_first_generator ? cycle_type_reps(degree) : all;
    // Orders at or above the incumbent can't improve the minimum.
    const unsigned long long degree_cap =
        best ? std::min(opts.max_order, best->order - 1) : opts.max_order;
    if (degree_cap == 0) break;

    const int k = p.ngens();
    std::vector<TaskResult> results(firsts.size());
    parallel_for_index(firsts.size(), opts.workers, [&](size_t task) {
      FiniteHom h;
      h.degree = degree;
      h.images.assign(static_cast<size_t>(k), Perm(degree));
      h.images[0] = firsts[task];
      TaskResult& local = results[task];
      unsigned long long local_cap = degree_cap;

      std::vector<size_t> idx(static_cast<size_t>(k > 1 ? k - 1 : 0), 0);
      for (;;) {
        for (int g = 1; g < k; ++g) h.images[static_cast<size_t>(g)] = all[idx[static_cast<size_t>(g - 1)]];
        if (extends_by_relators(p, h) && !eval_word(gamma, h.images, degree).is_identity()) {
          auto ord = image_order(h, local_cap);
          if (ord) {
            local.found = true;
            local.order = *ord;
            local.hom = h;
            if (*ord == 1) throw InternalError("trivial image cannot detect anything");
            local_cap = *ord - 1;
            if (local_cap == 0) return;
          }
        }
        if (k == 1) return;
        int pos = k - 2;
        while (pos >= 0) {
          if (++idx[static_cast<size_t>(pos)] < all.size()) break;
          idx[static_cast<size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) return;
      }
    });

    for (const TaskResult& r : results) {
      if (!r.found) continue;
      if (!best || r.order < best->order) best = Detection{r.order, r.hom};
    }
  }
  return best;
}

nlohmann::ordered_json detection_to_json(const Presentation& p, const Word& gamma,
                                         const std::optional<Detection>& result) {
  nlohmann::ordered_json j;
  j["element"] = format_fp_word(p, gamma);
  if (result) {
    j["min_order"] = result->order;
    j["degree"] = result->hom.degree;
    std::vector<std::string> images;
    for (const Perm& g : result->hom.images) images.push_back(format_cycles(g));
    j["images"] = images;
  } else {
    j["found"] = false;
  }
  return j;
}

}  // namespace rfg
