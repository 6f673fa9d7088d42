#include "rscensus/census.hpp"

#include <algorithm>
#include <random>

#include "parallel.hpp"
#include "rscensus/error.hpp"

namespace rsc {

namespace {

struct BlockResult {
  std::vector<OmegaMember> members;
  CensusStats stats;
};

BlockResult scan_block(const LambdaBox::Range& range, const NkCertificate& cert,
                       bool use_prefilter) {
  BlockResult out;
  for (const Word& w : range) {
    if (use_prefilter && prefilter_excludes(w, cert)) {
      ++out.stats.prefiltered;
      continue;
    }
    ++out.stats.exact_tests;
    Mat2 m = word_eval(w);
    if (auto eig = integer_eigenvalues(m)) {
      out.members.push_back(OmegaMember{w, std::move(m), std::move(*eig)});
    }
  }
  return out;
}

void check_budget(const LambdaBox& box, std::uint64_t budget) {
  const Integer n = lambda_count(box.k(), box.max_exponent());
  if (n > Integer(static_cast<unsigned long>(budget))) {
    throw Error(ErrorCode::BudgetExceeded, "|Lambda_{" + std::to_string(box.k()) + "," +
                                               std::to_string(box.max_exponent()) +
                                               "}| = " + n.get_str() + " exceeds budget " +
                                               std::to_string(budget));
  }
}

OmegaMember member_from_word(const Word& w) {
  Mat2 m = word_eval(w);
  auto eig = integer_eigenvalues(m);
  if (!eig) {
    throw Error(ErrorCode::CorruptCheckpoint,
                "recorded member " + format_tuple(w) + " has no integer eigenvalues");
  }
  return OmegaMember{w, std::move(m), std::move(*eig)};
}

}  // namespace

std::string DensityRow::mode() const {
  if (!sampled) return "exhaustive";
  return "sampled:" + std::to_string(sampled->sample_size) + ":" + std::to_string(sampled->seed);
}

CensusRunner::CensusRunner(std::uint32_t k, Exponent max_exponent, CensusOptions options)
    : k_(k),
      max_(max_exponent),
      options_(options),
      box_(k, max_exponent),
      cert_(compute_nk(k)),
      block_count_(0) {
  check_budget(box_, options_.budget);
  block_count_ = box_.block_count();
}

void CensusRunner::run(std::uint64_t max_blocks) {
  // Batches keep at most a few blocks per worker in flight.
  const std::uint64_t batch = std::max<std::uint64_t>(1, 4ull * std::max(options_.threads, 1u));
  std::uint64_t remaining = max_blocks;
  while (!done() && remaining > 0) {
    const std::uint64_t n = std::min({batch, remaining, block_count_ - next_block_});
    std::vector<BlockResult> results(n);
    detail::parallel_for_index(n, options_.threads, [&](std::size_t i) {
      results[i] = scan_block(box_.block(next_block_ + i), cert_, options_.use_prefilter);
    });
    for (auto& r : results) {
      std::move(r.members.begin(), r.members.end(), std::back_inserter(members_));
      stats_.exact_tests += r.stats.exact_tests;
      stats_.prefiltered += r.stats.prefiltered;
    }
    next_block_ += n;
    remaining -= n;
  }
}

DensityRow CensusRunner::finish() const {
  if (!done()) throw Error(ErrorCode::InvalidArgument, "census has unfinished blocks");
  DensityRow row;
  row.k = k_;
  row.max_exponent = max_;
  row.lambda_count = lambda_count(k_, max_);
  row.omega_count = static_cast<unsigned long>(members_.size());
  row.density = make_rational(row.omega_count, row.lambda_count);
  row.omega_members = members_;
  return row;
}

void CensusRunner::save(const std::filesystem::path& file) const {
  Checkpoint state;
  state.k = k_;
  state.max_exponent = max_;
  state.prefilter = options_.use_prefilter;
  state.next_block = next_block_;
  state.block_count = block_count_;
  state.exact_tests = stats_.exact_tests;
  state.prefiltered = stats_.prefiltered;
  for (const auto& m : members_) state.members.push_back(m.word);
  checkpoint_save(state, file);
}

CensusRunner CensusRunner::resume(const std::filesystem::path& file, std::uint32_t k,
                                  Exponent max_exponent, CensusOptions options) {
  const Checkpoint state = checkpoint_load(file);
  if (state.k != k || state.max_exponent != max_exponent ||
      state.prefilter != options.use_prefilter) {
    throw Error(ErrorCode::CorruptCheckpoint,
                "checkpoint was written for k=" + std::to_string(state.k) +
                    " M=" + std::to_string(state.max_exponent) +
                    " prefilter=" + (state.prefilter ? "on" : "off"));
  }
  CensusRunner runner(k, max_exponent, options);
  if (state.block_count != runner.block_count_ || state.next_block > runner.block_count_) {
    throw Error(ErrorCode::CorruptCheckpoint, "block cursor does not match the census");
  }
  runner.next_block_ = state.next_block;
  runner.stats_ = CensusStats{state.exact_tests, state.prefiltered};
  for (const Word& w : state.members) {
    if (!w.in_lambda(max_exponent) || w.k() != k) {
      throw Error(ErrorCode::CorruptCheckpoint, "member " + format_tuple(w) + " outside the box");
    }
    runner.members_.push_back(member_from_word(w));
  }
  return runner;
}

DensityRow census(std::uint32_t k, Exponent max_exponent, const CensusOptions& options) {
  CensusRunner runner(k, max_exponent, options);
  runner.run();
  return runner.finish();
}

DensityRow census_sampled(std::uint32_t k, Exponent max_exponent, std::uint64_t sample_size,
                          std::uint64_t seed, const CensusOptions& options) {
  if (k < 1 || max_exponent < 1 || sample_size < 1) {
    throw Error(ErrorCode::InvalidArgument, "sampled census needs k, M, sample size >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Exponent> edge(0, max_exponent);
  std::uniform_int_distribution<Exponent> inner(1, max_exponent);
  std::vector<Word> draws;
  draws.reserve(sample_size);
  std::vector<Exponent> tuple(2 * k);
  for (std::uint64_t s = 0; s < sample_size; ++s) {
    for (std::size_t pos = 0; pos < tuple.size(); ++pos) {
      tuple[pos] = (pos == 0 || pos + 1 == tuple.size()) ? edge(rng) : inner(rng);
    }
    draws.push_back(Word::from_tuple(tuple));
  }

  const NkCertificate cert = compute_nk(k);
  std::vector<std::optional<OmegaMember>> hits(draws.size());
  detail::parallel_for_index(draws.size(), options.threads, [&](std::size_t i) {
    if (options.use_prefilter && prefilter_excludes(draws[i], cert)) return;
    Mat2 m = word_eval(draws[i]);
    if (auto eig = integer_eigenvalues(m)) hits[i] = OmegaMember{draws[i], std::move(m), *eig};
  });

  DensityRow row;
  row.k = k;
  row.max_exponent = max_exponent;
  row.lambda_count = lambda_count(k, max_exponent);
  for (auto& h : hits) {
    if (h) row.omega_members.push_back(std::move(*h));
  }
  row.omega_count = static_cast<unsigned long>(row.omega_members.size());
  row.density = make_rational(row.omega_count, Integer(static_cast<unsigned long>(sample_size)));
  row.sampled = SampledMode{sample_size, seed};
  return row;
}

std::vector<SweepRow> density_sweep(std::uint32_t k, Exponent m_first, Exponent m_last,
                                    const CensusOptions& options,
                                    const std::function<void(const SweepRow&)>& sink) {
  if (m_first < 1 || m_first > m_last) {
    throw Error(ErrorCode::InvalidArgument, "M range must satisfy 1 <= first <= last");
  }
  const std::uint32_t nk = compute_nk(k).n;
  std::vector<SweepRow> rows;
  for (Exponent m = m_first; m <= m_last; ++m) {
    SweepRow r{census(k, m, options), nk, std::nullopt};
    if (m > nk) r.upper_bound = density_upper_bound(k, m, nk);
    if (sink) sink(r);
    rows.push_back(std::move(r));
  }
  return rows;
}

SearchResult search_counterexamples(std::uint32_t k, Exponent exp_max,
                                    const GeneratorPair& generators, std::uint64_t budget,
                                    unsigned threads) {
  generators.validate();
  SearchResult result;
  std::uint64_t left = budget;
  for (std::uint32_t j = 1; j <= k; ++j) {
    const LambdaBox box(j, exp_max);
    const std::uint64_t size = box.size();
    const std::uint64_t take = std::min(size, left);
    if (take < size) result.complete = false;
    const std::uint64_t block = box.block_size();
    const std::uint64_t blocks = (take + block - 1) / block;

    std::vector<std::vector<SearchHit>> found(blocks);
    std::vector<std::uint64_t> examined(blocks, 0);
    detail::parallel_for_index(blocks, threads, [&](std::size_t b) {
      const std::uint64_t first = b * block;
      for (const Word& w : box.slice(first, std::min(first + block, take))) {
        if (w.is_pure_power()) continue;
        ++examined[b];
        Mat2 m = word_eval_general(w, generators);
        if (auto eig = integer_eigenvalues(m)) {
          found[b].push_back(SearchHit{w, std::move(m), std::move(*eig)});
        }
      }
    });
    for (std::size_t b = 0; b < blocks; ++b) {
      result.examined += examined[b];
      std::move(found[b].begin(), found[b].end(), std::back_inserter(result.hits));
    }
    left -= take;
    if (left == 0) {
      if (j < k) result.complete = false;
      break;
    }
  }
  return result;
}

}  // namespace rsc
