#include "rfgrowth/words.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace rfg {

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("word exponent overflow");
  return r;
}

}  // namespace

void Word::append(int gen, long long exp) {
  if (gen < 0) throw DomainError("negative generator index");
  if (exp == 0) return;
  if (!runs_.empty() && runs_.back().gen == gen) {
    long long merged = checked_add(runs_.back().exp, exp);
    runs_.pop_back();
    if (merged != 0) runs_.push_back({gen, merged});
    return;
  }
  runs_.push_back({gen, exp});
}

Word Word::inverse() const {
  Word w;
  w.runs_.reserve(runs_.size());
  for (auto it = runs_.rbegin(); it != runs_.rend(); ++it) {
    if (it->exp == std::numeric_limits<long long>::min()) throw DomainError("word exponent overflow");
    w.runs_.push_back({it->gen, -it->exp});
  }
  return w;
}

unsigned long long Word::length() const {
  unsigned long long total = 0;
  for (const Run& r : runs_) {
    unsigned long long mag =
        r.exp == std::numeric_limits<long long>::min()
            ? static_cast<unsigned long long>(std::numeric_limits<long long>::max()) + 1
            : static_cast<unsigned long long>(r.exp < 0 ? -r.exp : r.exp);
    if (__builtin_add_overflow(total, mag, &total)) throw DomainError("word length overflow");
  }
  return total;
}

int Word::max_gen() const {
  int top = -1;
  for (const Run& r : runs_) top = std::max(top, r.gen);
  return top;
}

namespace {

// Walks a word letter by letter without materializing it.
struct LetterWalk {
  const std::vector<Run>& runs;
  size_t i = 0;
  unsigned long long left = 0;

  explicit LetterWalk(const Word& w) : runs(w.runs()) {
    if (!runs.empty()) left = mag(runs[0].exp);
  }
  static unsigned long long mag(long long e) {
    return e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
  }
  bool done() const { return i >= runs.size(); }
  // (gen, sign) of the current letter
  std::pair<int, int> letter() const { return {runs[i].gen, runs[i].exp < 0 ? -1 : 1}; }
  void advance() {
    if (--left == 0) {
      ++i;
      if (i < runs.size()) left = mag(runs[i].exp);
    }
  }
};

}  // namespace

bool shortlex_less(const Word& a, const Word& b) {
  unsigned long long la = a.length(), lb = b.length();
  if (la != lb) return la < lb;
  LetterWalk wa(a), wb(b);
  while (!wa.done() && !wb.done()) {
    auto [ga, sa] = wa.letter();
    auto [gb, sb] = wb.letter();
    int ka = ga * 2 + (sa < 0 ? 1 : 0);
    int kb = gb * 2 + (sb < 0 ? 1 : 0);
    if (ka != kb) return ka < kb;
    wa.advance();
    wb.advance();
  }
  return false;
}

int WordSyntax::gen_of(char c, int* sign) const {
  for (size_t g = 0; g < gens.size(); ++g) {
    char pos = gens[g];
    char neg = lowercase_positive ? static_cast<char>(std::toupper(pos)) : static_cast<char>(std::tolower(pos));
    if (c == pos) {
      *sign = 1;
      return static_cast<int>(g);
    }
    if (c == neg) {
      *sign = -1;
      return static_cast<int>(g);
    }
  }
  return -1;
}

char WordSyntax::char_of(int gen, int sign) const {
  char pos = gens.at(static_cast<size_t>(gen));
  if (sign > 0) return pos;
  return lowercase_positive ? static_cast<char>(std::toupper(pos)) : static_cast<char>(std::tolower(pos));
}

Word parse_word(const std::string& text, const WordSyntax& syntax) {
  Word w;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  for (skip_ws(); i < text.size(); skip_ws()) {
    int sign = 0;
    int gen = syntax.gen_of(text[i], &sign);
    if (gen < 0) throw ParseError(std::string("unknown letter '") + text[i] + "' in word: " + text);
    ++i;
    long long exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip_ws();
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        ++i;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("malformed power in word: " + text);
      long long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        if (v > (std::numeric_limits<long long>::max() - 9) / 10) throw ParseError("power too large in word: " + text);
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      exp = neg ? -v : v;
    }
    w.append(gen, sign * exp);
  }
  return w;
}

std::string format_word_letters(const Word& w, const WordSyntax& syntax) {
  constexpr unsigned long long kMaxLetters = 1ull << 31;
  unsigned long long len = w.length();
  if (len > kMaxLetters) throw DomainError("word too long to print letter by letter");
  std::string out;
  out.reserve(static_cast<size_t>(len));
  for (const Run& r : w.runs()) {
    char c = syntax.char_of(r.gen, r.exp < 0 ? -1 : 1);
    unsigned long long mag = LetterWalk::mag(r.exp);
    out.append(static_cast<size_t>(mag), c);
  }
  return out;
}

std::string format_word_runs(const Word& w, const WordSyntax& syntax) {
  std::string out;
  for (const Run& r : w.runs()) {
    if (!out.empty()) out += ' ';
    if (r.exp == 1 || r.exp == -1) {
      out += syntax.char_of(r.gen, r.exp < 0 ? -1 : 1);
    } else {
      out += syntax.char_of(r.gen, 1);
      out += '^';
      out += std::to_string(r.exp);
    }
  }
  return out;
}

}  // namespace rfg
