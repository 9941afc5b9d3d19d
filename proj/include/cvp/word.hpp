#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "cvp/error.hpp"

namespace cvp {

// Word over a generator alphabet: signed 1-based indices, positive for a
// generator, negative for its inverse.
using Word = std::vector<int>;

Word reduce(Word w);
Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);

// Strips cancelling first/last pairs after free reduction.
Word cyclically_reduce(Word w);

// Canonical conjugacy representative in a free group: cyclically reduced,
// lexicographically least rotation; with `unoriented` also minimized over
// the inverse word. Letter order: 1 < -1 < 2 < -2 < ...
struct ConjClass {
  Word rep;
  bool operator==(const ConjClass& o) const { return rep == o.rep; }
  bool operator<(const ConjClass& o) const;
};

ConjClass canonical_class(const Word& w, bool unoriented = false);

// One representative per free-group conjugacy class of cyclically reduced
// length <= max_len, sorted, deterministic. Throws BudgetExceeded when the
// candidate count would pass `budget`.
std::vector<ConjClass> enumerate_classes(int n_gens, int max_len, bool unoriented = false,
                                         std::uint64_t budget = 100000000ull);

// Display form using generator names, inverses marked with a superscript -1
// (e.g. "ab⁻¹a"). Names fall back to a, b, c, ... when not supplied.
std::string word_to_string(const Word& w, const std::vector<std::string>& names = {});

}  // namespace cvp
