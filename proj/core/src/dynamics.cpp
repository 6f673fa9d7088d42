#include "rscensus/dynamics.hpp"

#include <algorithm>
#include <numeric>

#include "parallel.hpp"
#include "rscensus/error.hpp"

namespace rsc {

namespace {

void require_nonnegative(const Rational& x) {
  if (x.sign() < 0) throw Error(ErrorCode::NegativeInput, "orbit point " + x.to_string());
}

Integer height(const Rational& x) { return x.num() + x.den(); }

const Mat2 kGenR{3, 1, 0, 1};
const Mat2 kGenS{1, 0, 1, 2};
const Mat2 kGenF{1, 1, 0, 1};
const Mat2 kGenG{1, 0, 1, 1};

}  // namespace

char to_char(Branch b) {
  switch (b) {
    case Branch::R: return 'R';
    case Branch::S: return 'S';
    case Branch::F: return 'F';
    case Branch::G: return 'G';
  }
  return '?';
}

std::string to_string(std::span<const Branch> word) {
  std::string out;
  for (Branch b : word) {
    if (!out.empty()) out += ' ';
    out += to_char(b);
  }
  return out;
}

std::pair<Rational, Branch> theta_step(const Rational& x) {
  require_nonnegative(x);
  if (x.num() >= x.den()) return {make_rational(x.num() - x.den(), 3 * x.den()), Branch::R};
  return {make_rational(2 * x.num(), x.den() - x.num()), Branch::S};
}

std::pair<Rational, Branch> phi_step(const Rational& x) {
  require_nonnegative(x);
  if (x.num() >= x.den()) return {make_rational(x.num() - x.den(), x.den()), Branch::F};
  return {make_rational(x.num(), x.den() - x.num()), Branch::G};
}

OrbitRecord orbit(const Rational& x, MapKind map, std::uint64_t step_cap) {
  require_nonnegative(x);
  OrbitRecord rec;
  rec.map = map;
  rec.points.push_back(x);
  std::uint64_t steps = 0;
  while (rec.points.back().sign() != 0 && steps < step_cap) {
    const Rational& current = rec.points.back();
    auto [next, branch] = map == MapKind::Theta ? theta_step(current) : phi_step(current);
    if (map == MapKind::Phi && height(next) >= height(current)) {
      throw Error(ErrorCode::InvariantViolation,
                  "p+q did not decrease along the phi-orbit at " + current.to_string());
    }
    rec.points.push_back(std::move(next));
    rec.branches.push_back(branch);
    ++steps;
  }
  rec.terminated = rec.points.back().sign() == 0;
  if (rec.terminated) rec.stopping_time = steps;
  return rec;
}

const Mat2& branch_generator(Branch b) {
  switch (b) {
    case Branch::R: return kGenR;
    case Branch::S: return kGenS;
    case Branch::F: return kGenF;
    case Branch::G: return kGenG;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown branch");
}

Rational replay_word(std::span<const Branch> word, const Rational& x) {
  Rational value = x;
  for (auto it = word.rbegin(); it != word.rend(); ++it) value = apply(branch_generator(*it), value);
  return value;
}

std::vector<Branch> orbit_to_word(const OrbitRecord& rec) {
  if (!rec.terminated) {
    throw Error(ErrorCode::NotTerminated,
                "orbit of " + rec.points.front().to_string() + " did not reach 0");
  }
  std::vector<Branch> word = rec.branches;
  if (replay_word(word) != rec.points.front()) {
    throw Error(ErrorCode::InvariantViolation,
                "word replay missed " + rec.points.front().to_string());
  }
  return word;
}

Mat2 word_product(std::span<const Branch> word) {
  Mat2 m = Mat2::identity();
  for (Branch b : word) m = m * branch_generator(b);
  return m;
}

Mat2 complete_to_sl2(const Integer& b, const Integer& d) {
  if (b < 1 || d < 1) {
    throw Error(ErrorCode::NegativeInput, "b and d must be positive");
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t());
  if (g != 1) {
    throw Error(ErrorCode::NotCoprime, "gcd(" + b.get_str() + "," + d.get_str() + ") = " + g.get_str());
  }
  // a d = 1 (mod b) with 1 <= a <= b; then c = (a d - 1) / b >= 0.
  Integer a = 1;
  if (b > 1) mpz_invert(a.get_mpz_t(), d.get_mpz_t(), b.get_mpz_t());
  Integer c = (a * d - 1) / b;
  return Mat2{a, b, c, d};
}

std::vector<Branch> sl2_factor(Mat2 m) {
  if (m.a < 0 || m.b < 0 || m.c < 0 || m.d < 0 || det(m) != 1) {
    throw Error(ErrorCode::NotFactorable, to_string(m) + " is not in SL2 with nonnegative entries");
  }
  std::vector<Branch> word;
  const Mat2 id = Mat2::identity();
  while (m != id) {
    if (m.a >= m.c && m.b >= m.d) {
      word.push_back(Branch::F);
      m.a -= m.c;
      m.b -= m.d;
    } else if (m.c >= m.a && m.d >= m.b) {
      word.push_back(Branch::G);
      m.c -= m.a;
      m.d -= m.b;
    } else {
      throw Error(ErrorCode::NotFactorable, "no dominant row in " + to_string(m));
    }
  }
  return word;
}

std::vector<Rational> reduced_fractions_by_height(std::uint64_t height_bound) {
  std::vector<Rational> out;
  for (std::uint64_t s = 1; s <= height_bound; ++s) {
    for (std::uint64_t p = 0; p < s; ++p) {
      const std::uint64_t q = s - p;
      if (std::gcd(p, q) != 1) continue;
      out.push_back(make_rational(Integer(static_cast<unsigned long>(p)),
                                  Integer(static_cast<unsigned long>(q))));
    }
  }
  return out;
}

SweepReport conjecture1_sweep(std::uint64_t height_bound, std::uint64_t step_cap,
                              const SweepOptions& options) {
  SweepReport report;
  report.height_bound = height_bound;
  report.step_cap = step_cap;

  const std::vector<Rational> starts = reduced_fractions_by_height(height_bound);
  report.total_tested = starts.size();

  // Chunks bound the number of live orbit records when on_orbit is set.
  constexpr std::size_t kChunk = 2048;
  const bool keep_orbits = static_cast<bool>(options.on_orbit);
  std::vector<OrbitRecord> records;
  for (std::size_t base = 0; base < starts.size(); base += kChunk) {
    const std::size_t n = std::min(kChunk, starts.size() - base);
    records.assign(n, OrbitRecord{});
    detail::parallel_for_index(n, options.threads, [&](std::size_t i) {
      OrbitRecord rec = orbit(starts[base + i], options.map, step_cap);
      if (!keep_orbits) {
        rec.points.erase(rec.points.begin() + 1, rec.points.end());
        rec.branches.clear();
      }
      records[i] = std::move(rec);
    });
    for (std::size_t i = 0; i < n; ++i) {
      const OrbitRecord& rec = records[i];
      const Rational& x = starts[base + i];
      SweepEntry entry{x.num(), x.den(),
                       rec.stopping_time.value_or(step_cap), rec.terminated};
      if (rec.terminated) {
        if (*rec.stopping_time > report.max_stopping_time) {
          report.max_stopping_time = *rec.stopping_time;
          report.argmax = x;
        }
        if (keep_orbits) options.on_orbit(rec);
      } else {
        report.all_terminated = false;
        report.nonterminated.push_back(x);
      }
      if (options.on_entry) options.on_entry(entry);
    }
  }
  return report;
}

}  // namespace rsc
