#include "verify.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "rscensus/error.hpp"
#include "rscensus/spectral.hpp"
#include "rscensus/word.hpp"

namespace rsc::cli {
namespace {

Word random_word(std::mt19937_64& rng, std::uint32_t k, Exponent lo_edge, Exponent lo_inner,
                 Exponent hi) {
  std::uniform_int_distribution<Exponent> edge(lo_edge, hi), inner(lo_inner, hi);
  std::vector<Exponent> t(2 * k);
  for (std::size_t p = 0; p < t.size(); ++p) {
    t[p] = (p == 0 || p + 1 == t.size()) ? edge(rng) : inner(rng);
  }
  return Word::from_tuple(t);
}

/// Runs `check` once per sample; it returns a witness on failure.
VerifyReport sampled(const std::string& property, std::uint64_t samples,
                     const std::function<std::optional<std::string>()>& check) {
  VerifyReport report;
  report.property = property;
  report.samples = samples;
  for (std::uint64_t i = 0; i < samples; ++i) {
    if (auto witness = check()) {
      ++report.failures;
      if (!report.first_failure_witness) report.first_failure_witness = std::move(witness);
    }
  }
  return report;
}

void require_subset_pair_size(std::uint32_t k) {
  if (k > kDefaultSubsetPairLimit) {
    throw Error(ErrorCode::InvalidArgument,
                "--k " + std::to_string(k) + " exceeds the subset-pair limit " +
                    std::to_string(kDefaultSubsetPairLimit));
  }
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed);
  const Exponent m = o.max_exponent;

  if (o.suite == "trace") {
    require_subset_pair_size(o.k);
    return sampled("trace_subsetpair == trace_fast == trace(word_eval)", o.samples, [&] {
      const Word w = random_word(rng, o.k, 0, 1, m);
      const Integer direct = trace(word_eval(w));
      const Integer subset = trace_subsetpair(w);
      const Integer fast = trace_fast(w);
      std::optional<std::string> witness;
      if (direct != subset || direct != fast) {
        witness = format_word(w) + " direct=" + direct.get_str() + " subset=" + subset.get_str() +
                  " fast=" + fast.get_str();
      }
      return witness;
    });
  }
  if (o.suite == "entries") {
    require_subset_pair_size(o.k);
    return sampled("entries_from_u(u_quantities(w)) == word_eval(w)", o.samples, [&] {
      const Word w = random_word(rng, o.k, 0, 1, m);
      const Mat2 direct = word_eval(w);
      const Mat2 via_u = entries_from_u(u_quantities(w));
      std::optional<std::string> witness;
      if (direct != via_u) {
        witness = format_word(w) + " direct=" + to_string(direct) + " via_u=" + to_string(via_u);
      }
      return witness;
    });
  }
  if (o.suite == "bounds") {
    return sampled("det <= 2^k tr <= prod (1+3^b)(1+2^a)", o.samples, [&] {
      const Word w = random_word(rng, o.k, 0, 1, m);
      const BoundsWitness b = bounds_check(w);
      std::optional<std::string> witness;
      if (!b.lhs_ok || !b.rhs_ok) {
        witness = format_word(w) + " det=" + b.det.get_str() +
                  " scaled_trace=" + b.scaled_trace.get_str() + " upper=" + b.upper.get_str();
      }
      return witness;
    });
  }
  if (o.suite == "freeness") {
    const FreenessReport f = freeness_check(o.k, m);
    VerifyReport report;
    report.property = "distinct reduced words give distinct matrices";
    report.samples = f.tuples;
    if (!f.free) {
      report.failures = 1;
      report.first_failure_witness = format_word(f.collision->first) + " == " +
                                     format_word(f.collision->second);
    }
    return report;
  }
  if (o.suite == "prefilter") {
    const NkCertificate cert = compute_nk(o.k);
    const Exponent lo = cert.n + 1;
    const Exponent hi = std::max<Exponent>(m, lo);
    return sampled("prefiltered words have no integer eigenvalues", o.samples, [&] {
      const Word w = random_word(rng, o.k, lo, lo, hi);
      std::optional<std::string> witness;
      if (prefilter_excludes(w, cert)) {
        const Mat2 mat = word_eval(w);
        if (integer_eigenvalues(mat)) witness = format_word(w) + " " + to_string(mat);
      }
      return witness;
    });
  }
  if (o.suite == "fixedpoint") {
    std::uniform_int_distribution<long> entry(-20, 20);
    return sampled("integer eigenvalues <=> rational fixed points", o.samples, [&] {
      Mat2 mat;
      do {
        mat = Mat2{entry(rng), entry(rng), entry(rng), entry(rng)};
      } while (mat.c == 0 && mat.d == 0);
      const auto eig = integer_eigenvalues(mat);
      const auto fp = rational_fixed_points(mat);
      bool ok;
      if (mat.c != 0) {
        ok = eig.has_value() == std::holds_alternative<FixedPoints>(fp);
      } else if (mat.a != mat.d) {
        ok = eig && std::holds_alternative<FixedPoints>(fp);
      } else if (mat.b != 0) {
        ok = eig && std::holds_alternative<NoFixedPoint>(fp);
      } else {
        ok = eig && std::holds_alternative<AllPointsFixed>(fp);
      }
      std::optional<std::string> witness;
      if (!ok) witness = to_string(mat);
      return witness;
    });
  }
  throw Error(ErrorCode::InvalidArgument, "unknown suite " + o.suite);
}

}  // namespace rsc::cli
