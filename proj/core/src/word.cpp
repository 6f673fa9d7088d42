#include "rscensus/word.hpp"

#include <map>
#include <set>

#include "rscensus/error.hpp"

namespace rsc {

Word::Word(std::vector<Exponent> betas, std::vector<Exponent> alphas)
    : betas_(std::move(betas)), alphas_(std::move(alphas)) {
  if (betas_.empty() || betas_.size() != alphas_.size()) {
    throw Error(ErrorCode::InvalidArgument, "a word needs k >= 1 beta/alpha pairs");
  }
}

Word Word::from_tuple(const std::vector<Exponent>& tuple) {
  if (tuple.empty() || tuple.size() % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "exponent tuple must have even positive length");
  }
  std::vector<Exponent> betas, alphas;
  for (std::size_t i = 0; i < tuple.size(); i += 2) {
    betas.push_back(tuple[i]);
    alphas.push_back(tuple[i + 1]);
  }
  return Word(std::move(betas), std::move(alphas));
}

std::vector<Exponent> Word::tuple() const {
  std::vector<Exponent> out;
  out.reserve(2 * k());
  for (std::size_t i = 0; i < k(); ++i) {
    out.push_back(betas_[i]);
    out.push_back(alphas_[i]);
  }
  return out;
}

bool Word::is_canonical() const {
  for (std::size_t i = 0; i < k(); ++i) {
    if (i + 1 < k() && alphas_[i] == 0) return false;
    if (i > 0 && betas_[i] == 0) return false;
  }
  return true;
}

bool Word::in_lambda(Exponent max_exponent) const {
  if (!is_canonical()) return false;
  for (std::size_t i = 0; i < k(); ++i) {
    if (betas_[i] > max_exponent || alphas_[i] > max_exponent) return false;
  }
  return true;
}

bool Word::is_pure_power() const {
  int runs = 0;
  for (std::size_t i = 0; i < k(); ++i) runs += (betas_[i] > 0) + (alphas_[i] > 0);
  return runs <= 1;
}

std::uint64_t Word::alpha_sum() const {
  std::uint64_t s = 0;
  for (auto a : alphas_) s += a;
  return s;
}

std::uint64_t Word::beta_sum() const {
  std::uint64_t s = 0;
  for (auto b : betas_) s += b;
  return s;
}

Mat2 generator_r() { return Mat2{3, 1, 0, 1}; }
Mat2 generator_s() { return Mat2{1, 0, 1, 2}; }

Mat2 r_power(Exponent n) {
  Integer p = pow_ui(3, n);
  Integer top_right = (p - 1) / 2;
  return Mat2{std::move(p), std::move(top_right), 0, 1};
}

Mat2 s_power(Exponent n) {
  Integer p = pow_ui(2, n);
  Integer bottom_left = p - 1;
  return Mat2{1, 0, std::move(bottom_left), std::move(p)};
}

Mat2 word_eval(const Word& w) {
  Mat2 m = Mat2::identity();
  for (std::size_t i = 0; i < w.k(); ++i) {
    if (w.beta(i) > 0) m = m * r_power(w.beta(i));
    if (w.alpha(i) > 0) m = m * s_power(w.alpha(i));
  }
  return m;
}

void GeneratorPair::validate() const {
  if (a < 2 || b < 2 || u < 1 || v < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "generators need a, b >= 2 and u, v >= 1, got " + to_string());
  }
}

std::string GeneratorPair::to_string() const {
  return a.get_str() + "," + u.get_str() + "," + v.get_str() + "," + b.get_str();
}

Mat2 a_power(const GeneratorPair& g, Exponent n) {
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), g.a.get_mpz_t(), n);
  Integer top_right = g.u * (p - 1) / (g.a - 1);
  return Mat2{std::move(p), std::move(top_right), 0, 1};
}

Mat2 b_power(const GeneratorPair& g, Exponent n) {
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), g.b.get_mpz_t(), n);
  Integer bottom_left = g.v * (p - 1) / (g.b - 1);
  return Mat2{1, 0, std::move(bottom_left), std::move(p)};
}

Mat2 word_eval_general(const Word& w, const GeneratorPair& g) {
  Mat2 m = Mat2::identity();
  for (std::size_t i = 0; i < w.k(); ++i) {
    if (w.beta(i) > 0) m = m * b_power(g, w.beta(i));
    if (w.alpha(i) > 0) m = m * a_power(g, w.alpha(i));
  }
  return m;
}

Integer lambda_count(std::uint32_t k, Exponent max_exponent) {
  if (k < 1 || max_exponent < 1) {
    throw Error(ErrorCode::InvalidArgument, "lambda_count needs k >= 1 and M >= 1");
  }
  const Integer m1 = Integer(max_exponent) + 1;
  return m1 * m1 * pow_ui(max_exponent, 2 * (k - 1));
}

LambdaBox::LambdaBox(std::uint32_t k, Exponent max_exponent) : k_(k), max_(max_exponent) {
  if (k < 1 || max_exponent < 1) {
    throw Error(ErrorCode::InvalidArgument, "Lambda_{k,M} needs k >= 1 and M >= 1");
  }
}

Exponent LambdaBox::digit_min(std::size_t pos) const {
  return (pos == 0 || pos == 2 * k_ - 1) ? 0 : 1;
}

Exponent LambdaBox::digit_radix(std::size_t pos) const {
  return (pos == 0 || pos == 2 * k_ - 1) ? max_ + 1 : max_;
}

std::uint64_t LambdaBox::size() const {
  const Integer n = lambda_count(k_, max_);
  if (!n.fits_ulong_p()) {
    throw Error(ErrorCode::BudgetExceeded, "Lambda_{" + std::to_string(k_) + "," +
                                               std::to_string(max_) + "} has " + n.get_str() +
                                               " words");
  }
  return n.get_ui();
}

Word LambdaBox::at(std::uint64_t index) const {
  if (index >= size()) throw Error(ErrorCode::IndexOutOfRange, "word index past the box");
  std::vector<Exponent> digits(2 * k_);
  for (std::size_t pos = digits.size(); pos-- > 0;) {
    const Exponent radix = digit_radix(pos);
    digits[pos] = digit_min(pos) + static_cast<Exponent>(index % radix);
    index /= radix;
  }
  return Word::from_tuple(digits);
}

std::uint64_t LambdaBox::index_of(const Word& w) const {
  if (w.k() != k_ || !w.in_lambda(max_)) {
    throw Error(ErrorCode::InvalidArgument, format_tuple(w) + " is not in the box");
  }
  const auto digits = w.tuple();
  std::uint64_t index = 0;
  for (std::size_t pos = 0; pos < digits.size(); ++pos) {
    index = index * digit_radix(pos) + (digits[pos] - digit_min(pos));
  }
  return index;
}

std::uint64_t LambdaBox::block_count() const {
  return static_cast<std::uint64_t>(digit_radix(0)) * digit_radix(1);
}

std::uint64_t LambdaBox::block_size() const { return size() / block_count(); }

LambdaBox::Range LambdaBox::block(std::uint64_t b) const {
  if (b >= block_count()) throw Error(ErrorCode::IndexOutOfRange, "prefix block out of range");
  const std::uint64_t n = block_size();
  return slice(b * n, (b + 1) * n);
}

LambdaBox::iterator LambdaBox::begin(std::uint64_t first, std::uint64_t last) const {
  iterator it;
  it.box_ = this;
  it.index_ = first;
  it.last_ = std::min(last, size());
  if (it.index_ < it.last_) {
    Word w = at(first);
    it.digits_ = w.tuple();
    it.current_ = std::move(w);
  }
  return it;
}

LambdaBox::iterator& LambdaBox::iterator::operator++() {
  ++index_;
  if (index_ >= last_) {
    current_.reset();
    return *this;
  }
  for (std::size_t pos = digits_.size(); pos-- > 0;) {
    if (digits_[pos] < box_->max_) {
      ++digits_[pos];
      break;
    }
    digits_[pos] = box_->digit_min(pos);
  }
  current_ = Word::from_tuple(digits_);
  return *this;
}

namespace {

using ReducedWord = std::vector<std::pair<char, Exponent>>;

ReducedWord reduce(const Word& w) {
  ReducedWord runs;
  auto push = [&runs](char letter, Exponent e) {
    if (e == 0) return;
    if (!runs.empty() && runs.back().first == letter) {
      runs.back().second += e;
    } else {
      runs.emplace_back(letter, e);
    }
  };
  for (std::size_t i = 0; i < w.k(); ++i) {
    push('R', w.beta(i));
    push('S', w.alpha(i));
  }
  return runs;
}

}  // namespace

FreenessReport freeness_check(std::uint32_t k, Exponent max_exponent, std::uint64_t budget) {
  Integer total = 0;
  for (std::uint32_t j = 1; j <= k; ++j) total += lambda_count(j, max_exponent);
  if (total > Integer(static_cast<unsigned long>(budget))) {
    throw Error(ErrorCode::BudgetExceeded,
                "freeness check needs " + total.get_str() + " evaluations, budget " +
                    std::to_string(budget));
  }

  FreenessReport report;
  std::map<Mat2, std::pair<ReducedWord, Word>> seen;
  std::set<ReducedWord> reduced;
  std::set<Mat2> top;
  for (std::uint32_t j = 1; j <= k; ++j) {
    const LambdaBox box(j, max_exponent);
    for (const Word& w : box) {
      ++report.tuples;
      Mat2 m = word_eval(w);
      ReducedWord key = reduce(w);
      reduced.insert(key);
      if (j == k) {
        ++report.top_tuples;
        top.insert(m);
      }
      auto [it, inserted] = seen.try_emplace(std::move(m), key, w);
      if (!inserted && it->second.first != key && report.free) {
        report.free = false;
        report.collision.emplace(it->second.second, w);
      }
    }
  }
  report.reduced_words = reduced.size();
  report.distinct_matrices = seen.size();
  report.top_distinct_matrices = top.size();
  // Each distinct reduced word must own its own matrix.
  if (report.distinct_matrices != report.reduced_words) report.free = false;
  return report;
}

}  // namespace rsc
