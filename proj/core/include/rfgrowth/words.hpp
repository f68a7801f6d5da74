#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rfgrowth/errors.hpp"

namespace rfg {

// One maximal block x^e of a word, e != 0. Words store runs rather than
// letters so that power blocks like s^p(k) stay O(1) even when p(k) is large.
struct Run {
  int gen = 0;
  long long exp = 0;
  bool operator==(const Run&) const = default;
};

// A freely reduced word over an indexed generator alphabet. The run list is
// normalized: no zero exponents, adjacent runs use distinct generators. Two
// words are equal in the free group iff their run lists are equal.
class Word {
 public:
  Word() = default;

  static Word generator(int gen, long long exp = 1) {
    Word w;
    w.append(gen, exp);
    return w;
  }
  static Word from_runs(const std::vector<Run>& runs) {
    Word w;
    for (const Run& r : runs) w.append(r.gen, r.exp);
    return w;
  }

  // Multiply by x^e on the right, merging and cancelling at the boundary.
  void append(int gen, long long exp);
  void append(const Word& other) {
    for (const Run& r : other.runs_) append(r.gen, r.exp);
  }

  Word inverse() const;

  friend Word operator*(const Word& a, const Word& b) {
    Word w = a;
    w.append(b);
    return w;
  }

  bool empty() const { return runs_.empty(); }
  const std::vector<Run>& runs() const { return runs_; }

  // Letter count (the X-word-length), overflow-checked.
  unsigned long long length() const;

  // Largest generator index used; -1 for the empty word.
  int max_gen() const;

  bool operator==(const Word&) const = default;

 private:
  std::vector<Run> runs_;
};

// Letter order a < a^-1 < b < b^-1 < ...; shorter words first.
bool shortlex_less(const Word& a, const Word& b);

// Text conventions differ per front end: generator words print uppercase
// positive ("A B a"), while s/t-words and presentation words print lowercase
// positive with the opposite case meaning the inverse.
struct WordSyntax {
  std::vector<char> gens;        // positive character per generator, one alpha char each
  bool lowercase_positive = true;

  int gen_of(char c, int* sign) const;
  char char_of(int gen, int sign) const;
};

// Parses letters with optional ^<signed integer> powers; whitespace is
// ignored. Throws ParseError on unknown letters or malformed powers.
Word parse_word(const std::string& text, const WordSyntax& syntax);

// Plain letter string, e.g. "ABa". Refuses words longer than a sanity cap.
std::string format_word_letters(const Word& w, const WordSyntax& syntax);

// Power-block string, e.g. "s^69 t s^-69 t s^69 T s^-69 T" -> "s^69 t ...".
// Blocks with |exp| == 1 print as a bare letter.
std::string format_word_runs(const Word& w, const WordSyntax& syntax);

}  // namespace rfg
