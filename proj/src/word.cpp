#include "cvp/word.hpp"

#include <algorithm>

namespace cvp {

Word reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (int letter : w) {
    if (letter == 0) fail(errc::unknown_generator, "letter index 0 is not a generator");
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word cyclically_reduce(Word w) {
  w = reduce(std::move(w));
  size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(w.begin() + long(lo), w.begin() + long(hi));
}

namespace {

// Total order on letters: 1 < -1 < 2 < -2 < ...
inline int letter_rank(int letter) {
  int g = letter > 0 ? letter : -letter;
  return 2 * g + (letter < 0 ? 1 : 0);
}

bool word_less(const Word& a, const Word& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int ra = letter_rank(a[i]), rb = letter_rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return a.size() < b.size();
}

Word min_rotation(const Word& w) {
  Word best = w;
  Word rot = w;
  for (size_t i = 1; i < w.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (word_less(rot, best)) best = rot;
  }
  return best;
}

}  // namespace

bool ConjClass::operator<(const ConjClass& o) const {
  if (rep.size() != o.rep.size()) return rep.size() < o.rep.size();
  return word_less(rep, o.rep);
}

ConjClass canonical_class(const Word& w, bool unoriented) {
  Word c = cyclically_reduce(w);
  if (c.empty()) fail(errc::empty_word, "conjugacy class of the trivial word");
  Word best = min_rotation(c);
  if (unoriented) {
    Word inv = min_rotation(inverse_word(c));
    if (word_less(inv, best)) best = inv;
  }
  return ConjClass{best};
}

std::vector<ConjClass> enumerate_classes(int n_gens, int max_len, bool unoriented,
                                         std::uint64_t budget) {
  if (n_gens < 1 || max_len < 1) fail(errc::parameter_range, "enumerate_classes needs n_gens, max_len >= 1");

  std::vector<int> letters;
  for (int g = 1; g <= n_gens; ++g) {
    letters.push_back(g);
    letters.push_back(-g);
  }

  std::vector<ConjClass> out;
  std::uint64_t visited = 0;
  Word w;
  // Depth-first over cyclically reduced words; a word is kept when it equals
  // its own canonical representative, so each class appears exactly once.
  auto dfs = [&](auto&& self) -> void {
    for (int letter : letters) {
      if (!w.empty() && w.back() == -letter) continue;  // keep freely reduced
      w.push_back(letter);
      if (w.front() != -w.back()) {  // cyclically reduced candidate
        if (++visited > budget) fail(errc::budget_exceeded, "class enumeration budget exceeded");
        ConjClass c = canonical_class(w, unoriented);
        if (c.rep == w) out.push_back(c);
      }
      if (int(w.size()) < max_len) self(self);
      w.pop_back();
    }
  };
  dfs(dfs);
  std::sort(out.begin(), out.end());
  return out;
}

std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "e";
  std::string s;
  for (int letter : w) {
    int g = letter > 0 ? letter : -letter;
    if (size_t(g - 1) < names.size())
      s += names[size_t(g - 1)];
    else
      s += char('a' + (g - 1) % 26);
    if (letter < 0) s += "⁻¹";  // superscript -1
  }
  return s;
}

}  // namespace cvp
