#pragma once

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rscensus/numeric.hpp"

namespace rsc {

using Exponent = std::uint32_t;

/// Exponent vector (b1, a1, ..., bk, ak) naming R^b1 S^a1 ... R^bk S^ak.
///
/// Words compare structurally; two different words may still evaluate to
/// the same matrix only if freeness fails, which is checked separately.
class Word {
 public:
  Word(std::vector<Exponent> betas, std::vector<Exponent> alphas);
  /// From the interleaved tuple b1, a1, b2, a2, ...
  static Word from_tuple(const std::vector<Exponent>& tuple);

  std::size_t k() const { return betas_.size(); }
  const std::vector<Exponent>& betas() const { return betas_; }
  const std::vector<Exponent>& alphas() const { return alphas_; }
  Exponent beta(std::size_t i) const { return betas_[i]; }
  Exponent alpha(std::size_t i) const { return alphas_[i]; }
  std::vector<Exponent> tuple() const;

  /// Only b1 and ak may be zero.
  bool is_canonical() const;
  bool in_lambda(Exponent max_exponent) const;
  /// Reduces to R^n or S^n (n >= 0), i.e. a single generator run or empty.
  bool is_pure_power() const;
  std::uint64_t alpha_sum() const;
  std::uint64_t beta_sum() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Exponent> betas_;
  std::vector<Exponent> alphas_;
};

/// `R^3 S^1 R^2 S^4` (every pair printed, zeros included).
std::string format_word(const Word& w);
/// `3,1,2,4`
std::string format_tuple(const Word& w);
/// Accepts either form. In the letter form a bare letter means exponent 1,
/// a leading S implies b1 = 0, a trailing R implies ak = 0, and repeated
/// letters add up.
Word parse_word(std::string_view text);

/// R = [3,1;0,1], S = [1,0;1,2].
Mat2 generator_r();
Mat2 generator_s();
/// R^n = [3^n, (3^n - 1)/2; 0, 1]
Mat2 r_power(Exponent n);
/// S^n = [1, 0; 2^n - 1, 2^n]
Mat2 s_power(Exponent n);

/// Exact product R^b1 S^a1 ... R^bk S^ak using closed-form powers.
Mat2 word_eval(const Word& w);

/// A = [a,u;0,1], B = [1,0;v,b] with a, b >= 2 and u, v >= 1.
struct GeneratorPair {
  Integer a{3}, u{1}, v{1}, b{2};

  static GeneratorPair defaults() { return {}; }
  bool is_default() const { return *this == GeneratorPair{}; }
  /// Throws InvalidArgument when the bounds above fail.
  void validate() const;
  static GeneratorPair parse(std::string_view text);  // "a,u,v,b"
  std::string to_string() const;

  friend bool operator==(const GeneratorPair&, const GeneratorPair&) = default;
};

Mat2 a_power(const GeneratorPair& g, Exponent n);
Mat2 b_power(const GeneratorPair& g, Exponent n);

/// B^b1 A^a1 ... B^bk A^ak. Note the B-first order: with the default pair
/// this reads S^b1 R^a1 ... .
Mat2 word_eval_general(const Word& w, const GeneratorPair& g);

/// |Lambda_{k,M}| = (M+1)^2 M^(2k-2).
Integer lambda_count(std::uint32_t k, Exponent max_exponent);

/// Enumerates Lambda_{k,M} lazily in lexicographic order of the exponent
/// tuple. Positions are mixed-radix ranks in that order, so any contiguous
/// index range is a valid sub-stream.
class LambdaBox {
 public:
  LambdaBox(std::uint32_t k, Exponent max_exponent);

  std::uint32_t k() const { return k_; }
  Exponent max_exponent() const { return max_; }
  /// Throws BudgetExceeded when the box does not fit in 64 bits.
  std::uint64_t size() const;

  Word at(std::uint64_t index) const;
  std::uint64_t index_of(const Word& w) const;

  /// Prefix blocks fix (b1, a1); each is a contiguous index range.
  std::uint64_t block_count() const;
  std::uint64_t block_size() const;

  class iterator {
   public:
    using value_type = Word;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    const Word& operator*() const { return *current_; }
    const Word* operator->() const { return &*current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    std::uint64_t index() const { return index_; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) {
      return it.index_ >= it.last_;
    }

   private:
    friend class LambdaBox;
    const LambdaBox* box_ = nullptr;
    std::uint64_t index_ = 0;
    std::uint64_t last_ = 0;
    std::vector<Exponent> digits_;
    std::optional<Word> current_;
  };

  /// Words with index in [first, last).
  iterator begin(std::uint64_t first, std::uint64_t last) const;
  iterator begin() const { return begin(0, size()); }
  std::default_sentinel_t end() const { return {}; }

  struct Range {
    const LambdaBox* box;
    std::uint64_t first, last;
    iterator begin() const { return box->begin(first, last); }
    std::default_sentinel_t end() const { return {}; }
  };
  Range slice(std::uint64_t first, std::uint64_t last) const { return {this, first, last}; }
  Range block(std::uint64_t b) const;

 private:
  Exponent digit_min(std::size_t pos) const;
  Exponent digit_radix(std::size_t pos) const;

  std::uint32_t k_;
  Exponent max_;
};

struct FreenessReport {
  bool free = true;
  std::uint64_t tuples = 0;             // across all lengths j <= k
  std::uint64_t reduced_words = 0;
  std::uint64_t distinct_matrices = 0;
  std::uint64_t top_tuples = 0;         // Lambda_{k,M} alone
  std::uint64_t top_distinct_matrices = 0;
  std::optional<std::pair<Word, Word>> collision;
};

/// Evaluates every word of Lambda_{j,M} for j <= k and checks that distinct
/// reduced words give distinct matrices. Throws BudgetExceeded when more
/// than `budget` tuples would be evaluated.
FreenessReport freeness_check(std::uint32_t k, Exponent max_exponent,
                              std::uint64_t budget = 10'000'000);

}  // namespace rsc
