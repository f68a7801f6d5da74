#include <algorithm>
#include <numeric>
#include <vector>

#include "rfgrowth/perm.hpp"

namespace rfg {

namespace {

long mod_n(long v, long n) {
  long r = v % n;
  return r < 0 ? r + n : r;
}

// Representative of v mod n with minimal absolute value (n odd: unique).
long balanced(long v, long n) {
  long r = mod_n(v, n);
  return r > n / 2 ? r - n : r;
}

long circ_dist(long a, long b, long n) {
  long d = mod_n(a - b, n);
  return std::min(d, n - d);
}

// One conjugated 3-cycle move: rotates the entries at positions
// (w, w+1, w+2) mod n; dir=+1 sends the entry at w to w+1.
struct Move {
  long window;
  int dir;
};

struct SortState {
  long n;
  std::vector<long> arr;  // arr[x] = h(x); sorted when arr[x] == x
  std::vector<long> pos;  // pos[v] = x with arr[x] = v

  void apply(const Move& m) {
    long p0 = m.window, p1 = mod_n(m.window + 1, n), p2 = mod_n(m.window + 2, n);
    if (m.dir > 0) {
      long t = arr[p2];
      arr[p2] = arr[p1];
      arr[p1] = arr[p0];
      arr[p0] = t;
    } else {
      long t = arr[p0];
      arr[p0] = arr[p1];
      arr[p1] = arr[p2];
      arr[p2] = t;
    }
    pos[arr[p0]] = p0;
    pos[arr[p1]] = p1;
    pos[arr[p2]] = p2;
  }

  bool sorted() const {
    for (long x = 0; x < n; ++x)
      if (arr[x] != x) return false;
    return true;
  }

  long potential() const {
    long total = 0;
    for (long v = 0; v < n; ++v) total += circ_dist(pos[v], v, n);
    return total;
  }
};

// Selection sort with windows confined to [v, n-1]; complete on any even
// permutation (the final two slots must match by parity). Used directly for
// small degrees and as the endgame after the sweep phase.
void bubble_moves(SortState& st, std::vector<Move>& moves) {
  long n = st.n;
  for (long v = 0; v + 3 <= n; ++v) {
    long x = st.pos[v];
    while (x - v >= 2) {
      Move m{x - 2, +1};
      st.apply(m);
      moves.push_back(m);
      x -= 2;
    }
    if (x - v == 1) {
      Move m{v, -1};
      st.apply(m);
      moves.push_back(m);
    }
  }
  if (!st.sorted()) throw InternalError("factor_in_alt: endgame left a non-identity remainder");
}

// Carousel pass: visits all n windows in conjugation-depth order (one A step
// apart), applying whichever rotation strictly lowers the displacement
// potential. Cheap per pass (~2n letters after telescoping), so large degrees
// do the bulk of the sorting here. Returns the potential drop.
long sweep_moves(SortState& st, long q, std::vector<Move>& moves) {
  long n = st.n;
  long gained = 0;
  long w = 0;
  for (long m = 0; m < n; ++m, w = mod_n(w + q, n)) {
    long p[3] = {w, mod_n(w + 1, n), mod_n(w + 2, n)};
    long before = 0;
    for (long s : p) before += circ_dist(s, st.arr[s], n);
    long best_gain = 0;
    int best_dir = 0;
    for (int dir : {+1, -1}) {
      // entry at p[i] lands at p[(i+dir+3)%3]
      long after = 0;
      for (int i = 0; i < 3; ++i) after += circ_dist(p[(i + dir + 3) % 3], st.arr[p[i]], n);
      long gain = before - after;
      if (gain > best_gain) {
        best_gain = gain;
        best_dir = dir;
      }
    }
    if (best_dir != 0) {
      Move mv{w, best_dir};
      st.apply(mv);
      moves.push_back(mv);
      gained += best_gain;
    }
  }
  return gained;
}

}  // namespace

GenWord factor_in_alt(const Perm& target, long q) {
  long n = target.degree();
  if (n < 5 || n % 2 == 0) throw DomainError("factor_in_alt requires odd degree >= 5, got " + std::to_string(n));
  if (n > kDenseDegreeCap) throw DomainError("factor_in_alt degree bound exceeded: " + std::to_string(n));
  long q_eff = mod_n(q, n);
  if (std::gcd(q_eff, n) != 1) throw DomainError("factor_in_alt requires gcd(q, n) = 1");
  if (parity(target) == Parity::odd) throw DomainError("factor_in_alt requires an even permutation");

  // u = q^-1 mod n: the A-depth whose window starts one point further.
  long u = 0;
  for (long c = 0; c < n; ++c) {
    if (mod_n(c * q_eff, n) == 1) {
      u = c;
      break;
    }
  }

  SortState st;
  st.n = n;
  st.arr.resize(n);
  st.pos.resize(n);
  for (long x = 0; x < n; ++x) st.arr[x] = target(static_cast<int32_t>(x));

  // Peel off the best global rotation first: alpha^c = A^(c u mod n) costs
  // at most (n-1)/2 letters and absorbs shift-heavy targets outright.
  std::vector<long> delta_count(n, 0);
  for (long x = 0; x < n; ++x) ++delta_count[mod_n(st.arr[x] - x, n)];
  long shift_c = static_cast<long>(std::max_element(delta_count.begin(), delta_count.end()) - delta_count.begin());
  for (long x = 0; x < n; ++x) {
    st.arr[x] = mod_n(st.arr[x] - shift_c, n);
    st.pos[st.arr[x]] = x;
  }

  std::vector<Move> moves;
  if (!st.sorted()) {
    if (n > 96) {
      long budget = 3 * n;
      while (budget-- > 0) {
        if (sweep_moves(st, q_eff, moves) == 0) break;
        if (st.sorted()) break;
      }
    }
    if (!st.sorted()) bubble_moves(st, moves);
  }

  // target = alpha^shift_c o c_r o ... o c_1, so emit the rotation, then the
  // moves in reverse. Word::append telescopes the A-blocks between bricks.
  GenWord word;
  word.append(kGenA, balanced(shift_c * u, n));
  for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
    long depth = balanced(it->window * u, n);
    word.append(kGenA, depth);
    word.append(kGenB, it->dir);
    word.append(kGenA, -depth);
  }

  // A has order n and B order 3; folding exponents into balanced residues
  // only shortens the word and never changes its evaluation.
  for (bool changed = true; changed;) {
    changed = false;
    GenWord folded;
    for (const Run& r : word.runs()) {
      long e = r.gen == kGenA ? balanced(r.exp, n) : balanced(r.exp, 3);
      folded.append(r.gen, e);
    }
    if (!(folded == word)) {
      word = folded;
      changed = true;
    }
  }

  const Perm alpha_q = pow(cycle_alpha(static_cast<int>(n)), q_eff);
  const Perm beta = three_cycle_beta(static_cast<int>(n));
  if (!(eval_genword(word, alpha_q, beta) == target))
    throw InternalError("factor_in_alt: emitted word does not evaluate to the target");
  unsigned long long budget = 12ull * static_cast<unsigned long long>(n) * static_cast<unsigned long long>(n);
  if (word.length() > budget)
    throw InternalError("factor_in_alt: word length " + std::to_string(word.length()) +
                        " exceeds the 12 n^2 bound at n = " + std::to_string(n));
  return word;
}

}  // namespace rfg
